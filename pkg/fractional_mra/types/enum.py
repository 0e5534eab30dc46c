from strenum import StrEnum
from enum import auto


def auto_str():
    # noinspection PyArgumentList
    return auto()


class AngleKind(StrEnum):
    generic = auto_str()
    identity = auto_str()
    parity = auto_str()


class Interpolation(StrEnum):
    bandlimited = auto_str()
    linear = auto_str()


class FunctionKind(StrEnum):
    # scaling prototypes
    haar = auto_str()
    shannon = auto_str()
    bspline = auto_str()
    filter_defined = auto_str()
    sampled = auto_str()

    # wavelet prototypes
    haar_wavelet = auto_str()
    mexican_hat = auto_str()
    shannon_wavelet = auto_str()
    gaussian = auto_str()

    # built from another descriptor
    orthonormalized = auto_str()
    modulus_variant = auto_str()
    filter_wavelet = auto_str()
    atom = auto_str()


class SignalKind(StrEnum):
    gaussian = auto_str()
    chirp = auto_str()
    rectangle = auto_str()
    hermite = auto_str()
    bandlimited_random = auto_str()


class GramMethod(StrEnum):
    time_quadrature = auto_str()
    frequency_quadrature = auto_str()


class FrftMethod(StrEnum):
    fast = auto_str()
    quadrature = auto_str()


class OutputFormat(StrEnum):
    json = auto_str()
    csv = auto_str()


class Command(StrEnum):
    frft = auto_str()
    validate = auto_str()
    orthonormalize = auto_str()
    gram = auto_str()
    framebounds = auto_str()
    report = auto_str()


__all__ = [
    'StrEnum', 'auto_str',
    'AngleKind', 'Interpolation', 'FunctionKind', 'SignalKind', 'GramMethod',
    'FrftMethod', 'OutputFormat', 'Command',
]
