import math
from functools import cached_property
from typing import *

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from fractional_mra.analysis_exception import SpecialAngleError
from fractional_mra.types.enum import AngleKind

ANGLE_EPS = 1e-9
"""|sin(alpha)| at or below this is a special angle (identity or parity)."""


class AngleParam(BaseModel):
    """
    Fractional Fourier transform order, in radians.

    The transform with order alpha has kernel

        C * exp(i (t^2 + u^2) cot(alpha) / 2 - i t u csc(alpha))

    with C = sqrt((1 - i cot(alpha)) / 2pi) on the principal branch.
    Orders where sin(alpha) vanishes are classified as identity (alpha = 0 mod 2pi)
    or parity (alpha = pi mod 2pi); the kernel is a delta there.
    """
    model_config = ConfigDict(frozen=True)

    alpha: float
    eps: float = ANGLE_EPS

    @field_validator('alpha')
    @classmethod
    def _check_finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError(f"alpha must be finite, got {value}")
        return value

    @cached_property
    def sin_alpha(self) -> float:
        return math.sin(self.alpha)

    @cached_property
    def cos_alpha(self) -> float:
        return math.cos(self.alpha)

    @cached_property
    def kind(self) -> AngleKind:
        if abs(self.sin_alpha) > self.eps:
            return AngleKind.generic
        if self.cos_alpha > 0:
            return AngleKind.identity
        return AngleKind.parity

    @property
    def is_generic(self) -> bool:
        return self.kind == AngleKind.generic

    @cached_property
    def cot_alpha(self) -> float:
        self.require_generic('cot_alpha')
        return self.cos_alpha / self.sin_alpha

    @cached_property
    def csc_alpha(self) -> float:
        self.require_generic('csc_alpha')
        return 1.0 / self.sin_alpha

    @cached_property
    def c_alpha(self) -> complex:
        self.require_generic('c_alpha')
        return complex(np.sqrt((1.0 - 1j * self.cot_alpha) / (2.0 * math.pi)))

    @property
    def rho(self) -> float:
        """Order in units of pi/2 (alpha = rho * pi / 2)."""
        return 2.0 * self.alpha / math.pi

    @property
    def reduced(self) -> float:
        """alpha mod 2pi in [0, 2pi)."""
        return math.fmod(math.fmod(self.alpha, 2.0 * math.pi) + 2.0 * math.pi, 2.0 * math.pi)

    @property
    def period(self) -> float:
        """Lattice period 2pi|sin(alpha)| of the periodization profile."""
        self.require_generic('period')
        return 2.0 * math.pi * abs(self.sin_alpha)

    @property
    def convention_constant(self) -> float:
        """Normalizing constant 1 / (2pi|sin(alpha)|) of the periodization profile."""
        return 1.0 / self.period

    @property
    def limit_constant(self) -> float:
        """|Theta(0)| of every orthonormal scaling function: (2pi|sin(alpha)|)^{-1/2}."""
        return math.sqrt(self.convention_constant)

    @property
    def tan_half(self) -> float:
        """tan(alpha/2) = csc(alpha) - cot(alpha)."""
        return math.tan(self.alpha / 2.0)

    def negated(self) -> 'AngleParam':
        return AngleParam(alpha=-self.alpha, eps=self.eps)

    def plus(self, other: Union['AngleParam', float]) -> 'AngleParam':
        return AngleParam(alpha=self.alpha + as_angle(other).alpha, eps=self.eps)

    def require_generic(self, operation: str):
        if self.kind != AngleKind.generic:
            raise SpecialAngleError(
                f"{operation} needs a generic angle; alpha={self.alpha!r} is {self.kind}"
            )

    def matches_chirp(self, rate: float) -> bool:
        """True when exp(-i rate t^2/2) is this angle's demodulation chirp."""
        if not self.is_generic:
            return False
        return abs(rate - self.cot_alpha) <= 1e-12 * max(1.0, abs(self.cot_alpha))

    def __str__(self):
        return f"alpha={self.alpha!r} ({self.kind})"


def as_angle(alpha: Union[AngleParam, float], eps: float = ANGLE_EPS) -> AngleParam:
    if isinstance(alpha, AngleParam):
        return alpha
    return AngleParam(alpha=float(alpha), eps=eps)
