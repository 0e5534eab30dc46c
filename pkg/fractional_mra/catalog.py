"""
Scaling functions, wavelets and test signals.

Every function is described by a :class:`FunctionDescriptor`. A descriptor has a
*classical profile* p and a chirp rate kappa; its value is

    phi(t) = p(t) * exp(-i kappa t^2 / 2)

with kappa = cot(alpha_built_for) for demodulated descriptors and 0 otherwise.
At any generic order alpha the same function is p_alpha(t) * exp(-i cot(alpha) t^2 / 2)
with the *alpha-profile* p_alpha = p * exp(i (cot(alpha) - kappa) t^2 / 2), and its
transform is

    Theta_alpha(u) = C_alpha exp(i u^2 cot(alpha) / 2) * p_alpha^(u csc(alpha))

where ^ is the classical (non-unitary) Fourier transform. Closed forms of p^ are used
whenever the chirp matches; everything else falls back to quadrature.
"""
import logging
import math
from functools import lru_cache
from typing import *

import numpy as np
from pydantic import Field, model_validator
from scipy.interpolate import BSpline
from scipy.special import eval_hermite, gammaln

from fractional_mra.analysis_exception import CatalogError, SpecError
from fractional_mra.frft_core import direct_fourier, frft_fast, interpolate_bandlimited
from fractional_mra.lattice import lattice_sum
from fractional_mra.types.angle import AngleParam, as_angle
from fractional_mra.types.atoms import AtomWarp
from fractional_mra.types.enum import FunctionKind, Interpolation, SignalKind
from fractional_mra.types.grid import (
    ComplexArray, ComplexScalar, NumericModel, SampledSignal, SpectrumTable, UniformGrid,
)

log = logging.getLogger(__name__)

MEXICAN_HAT_NORM = 2.0 / (math.sqrt(3.0) * math.pi ** 0.25)
PRODUCT_DEPTH = 40
PERIODIZATION_K = 512
COEFFICIENT_CUTOFF = 1e-14
SAMPLES_PER_UNIT = 128
INVERSE_BAND = 2.0 * math.pi * 32.0
INVERSE_POINTS = 1 << 15
SPECTRAL_PAD = 24.0

SCALING_KINDS = (FunctionKind.haar, FunctionKind.shannon, FunctionKind.bspline)
WAVELET_KINDS = (
    FunctionKind.haar_wavelet, FunctionKind.mexican_hat, FunctionKind.shannon_wavelet, FunctionKind.gaussian,
)
DERIVED_KINDS = (
    FunctionKind.orthonormalized, FunctionKind.modulus_variant, FunctionKind.filter_wavelet, FunctionKind.atom,
)

_DECAY_WINDOWS = {
    FunctionKind.gaussian: (-12.0, 12.0),
    FunctionKind.mexican_hat: (-12.0, 12.0),
    FunctionKind.shannon: (-256.0, 256.0),
    FunctionKind.shannon_wavelet: (-256.0, 256.0),
}


def _sinc(x):
    """sin(x) / x"""
    return np.sinc(np.asarray(x) / np.pi)


def _haar_fourier(omega: np.ndarray) -> np.ndarray:
    return np.exp(-0.5j * omega) * _sinc(0.5 * omega)


def _half_open(omega: np.ndarray, low: float, high: float) -> np.ndarray:
    return ((omega >= low) & (omega < high)).astype(complex)


@lru_cache(maxsize=None)
def _bspline_basis(order: int) -> BSpline:
    return BSpline.basis_element(np.arange(order + 1, dtype=float), extrapolate=False)


@lru_cache(maxsize=None)
def _bspline_autocorrelation(order: int) -> np.ndarray:
    """B_{2m}(m + n) for n = 0..m-1, the Fourier coefficients of the periodized |B_m^|^2."""
    basis = _bspline_basis(2 * order)
    return np.nan_to_num(basis(order + np.arange(order, dtype=float)))


def filter_indices(taps: np.ndarray, start: int) -> np.ndarray:
    return start + np.arange(len(taps))


def classical_filter(h: np.ndarray, start: int, rate: float) -> np.ndarray:
    """h_cl[n] = h[n] exp(i rate n^2 / 8), the chirp-free filter."""
    n = filter_indices(h, start)
    return np.asarray(h, dtype=complex) * np.exp(0.125j * rate * n * n)


def fractional_filter(h_cl: np.ndarray, start: int, rate: float) -> np.ndarray:
    """Inverse of :func:`classical_filter`."""
    n = filter_indices(h_cl, start)
    return np.asarray(h_cl, dtype=complex) * np.exp(-0.125j * rate * n * n)


def filter_symbol(h_cl: np.ndarray, start: int, omega) -> np.ndarray:
    """m(omega) = 2^{-1/2} sum_n h_cl[n] exp(-i n omega)."""
    omega = np.asarray(omega, dtype=float)
    values = np.zeros(omega.shape, dtype=complex)
    for n, tap in zip(filter_indices(h_cl, start), h_cl):
        if tap != 0:
            values += tap * np.exp(-1j * n * omega)
    return values / math.sqrt(2.0)


def alternating_flip(h_cl: np.ndarray, start: int) -> Tuple[np.ndarray, int]:
    """g[n] = (-1)^n conj(h[1 - n]); returns (taps, first index)."""
    last = start + len(h_cl) - 1
    g_start = 1 - last
    n = g_start + np.arange(len(h_cl))
    taps = np.conj(np.asarray(h_cl, dtype=complex)[::-1]) * np.where(n % 2 == 0, 1.0, -1.0)
    return taps, g_start


class FunctionDescriptor(NumericModel):
    """
    A scaling function or wavelet.

    Parameters by kind:

    * ``bspline``: ``order`` (m >= 2), support [0, m].
    * ``filter_defined``: fractional filter ``h`` with first index ``filter_start``.
    * ``sampled``: ``samples`` and ``interpolation``; never demodulated.
    * ``orthonormalized``, ``modulus_variant``, ``filter_wavelet``: built from ``base``
      at ``alpha_built_for`` (``filter_wavelet`` also carries ``h``).
    * ``atom``: ``base`` warped by ``warp``.
    """
    kind: FunctionKind
    alpha_built_for: AngleParam
    demodulated: bool = True
    order: Optional[int] = None
    h: Optional[ComplexArray] = None
    filter_start: int = 0
    samples: Optional[SampledSignal] = None
    interpolation: Interpolation = Interpolation.bandlimited
    base: Optional['FunctionDescriptor'] = None
    warp: Optional[AtomWarp] = None
    amplitude: ComplexScalar = 1.0 + 0.0j
    label: str = Field(default='')

    @model_validator(mode='after')
    def _check_parameters(self) -> 'FunctionDescriptor':
        if self.kind == FunctionKind.bspline:
            if self.order is None or self.order < 2:
                raise ValueError(f"bspline needs order >= 2, got {self.order}")
        if self.kind in (FunctionKind.filter_defined, FunctionKind.filter_wavelet):
            if self.h is None or self.h.shape[0] == 0:
                raise ValueError(f"{self.kind} needs a non-empty filter h")
            if not np.all(np.isfinite(self.h)):
                raise ValueError(f"{self.kind} filter has non-finite taps")
        if self.kind == FunctionKind.sampled:
            if self.samples is None:
                raise ValueError("sampled descriptor needs samples")
            if self.demodulated:
                raise ValueError("sampled descriptor holds the function itself and cannot be demodulated")
        if self.kind in DERIVED_KINDS and self.base is None:
            raise ValueError(f"{self.kind} needs a base descriptor")
        if self.kind == FunctionKind.atom and self.warp is None:
            raise ValueError("atom needs a warp")
        if self.demodulated and not self.alpha_built_for.is_generic:
            raise ValueError(f"demodulated descriptor needs a generic angle, got {self.alpha_built_for}")
        return self

    def __str__(self):
        return f"{self.name}[{self.alpha_built_for}]"

    @property
    def chirp_rate(self) -> float:
        if not self.demodulated:
            return 0.0
        return self.alpha_built_for.cot_alpha

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        if self.kind == FunctionKind.bspline:
            return f"bspline{self.order}"
        return str(self.kind)

    # ------------------------------------------------------------------
    # supports and sampling windows

    def time_support(self) -> Optional[Tuple[float, float]]:
        """Support of the classical profile when it is compact."""
        if self.kind in (FunctionKind.haar, FunctionKind.haar_wavelet):
            return 0.0, 1.0
        if self.kind == FunctionKind.bspline:
            return 0.0, float(self.order)
        if self.kind == FunctionKind.filter_defined:
            return float(self.filter_start), float(self.filter_start + len(self.h) - 1)
        if self.kind == FunctionKind.atom:
            inner = self.base.time_support()
            if inner is None:
                return None
            return self._warp_window(inner)
        if self.kind == FunctionKind.filter_wavelet and self._profile_route_is_exact():
            inner = self.base.time_support()
            if inner is None:
                return None
            last = self.filter_start + len(self.h) - 1
            return (inner[0] + 1 - last) / 2.0, (inner[1] + 1 - self.filter_start) / 2.0
        return None

    def effective_window(self) -> Tuple[float, float]:
        """Interval outside which the classical profile is negligible."""
        support = self.time_support()
        if support is not None:
            return support
        if self.kind in _DECAY_WINDOWS:
            return _DECAY_WINDOWS[self.kind]
        if self.kind == FunctionKind.sampled:
            return self.samples.grid.start, self.samples.grid.stop
        if self.kind == FunctionKind.atom:
            return self._warp_window(self.base.effective_window())
        if self.kind == FunctionKind.filter_wavelet:
            lo, hi = self.base.effective_window()
            reach = len(self.h)
            return (lo - reach) / 2.0, (hi + reach) / 2.0
        lo, hi = self.base.effective_window()
        return lo - SPECTRAL_PAD, hi + SPECTRAL_PAD

    def _warp_window(self, inner: Tuple[float, float]) -> Tuple[float, float]:
        return (inner[0] + self.warp.shift) / self.warp.scale, (inner[1] + self.warp.shift) / self.warp.scale

    def spectral_band(self) -> Optional[float]:
        """Half width of the classical spectrum when it is compact."""
        if self.kind == FunctionKind.shannon:
            return math.pi
        if self.kind == FunctionKind.shannon_wavelet:
            return 2.0 * math.pi
        if self.kind in (FunctionKind.orthonormalized, FunctionKind.modulus_variant):
            if self.base.alpha_built_for_matches(self.alpha_built_for):
                return self.base.spectral_band()
            return None
        if self.kind == FunctionKind.filter_wavelet:
            band = self.base.spectral_band() if self.base.alpha_built_for_matches(self.alpha_built_for) else None
            return None if band is None else 2.0 * band
        if self.kind == FunctionKind.atom:
            if not self.base.alpha_built_for_matches(self.warp.alpha):
                return None
            band = self.base.spectral_band()
            return None if band is None else band * self.warp.scale
        return None

    def alpha_built_for_matches(self, alpha: AngleParam) -> bool:
        """True when this descriptor carries the demodulation chirp of alpha."""
        return alpha.matches_chirp(self.chirp_rate)

    def sampling_grid(self, samples_per_unit: int = SAMPLES_PER_UNIT) -> UniformGrid:
        if self.kind == FunctionKind.sampled:
            return self.samples.grid
        lo, hi = self.effective_window()
        lo, hi = math.floor(lo) - 1.0, math.ceil(hi) + 1.0
        count = int(round((hi - lo) * samples_per_unit)) + 1
        return UniformGrid(start=lo, step=1.0 / samples_per_unit, count=count)

    # ------------------------------------------------------------------
    # time domain

    def profile(self, x) -> np.ndarray:
        """Classical profile p(x)."""
        x = np.asarray(x, dtype=float)
        return self.amplitude * self._core_profile(x)

    def evaluate(self, t) -> np.ndarray:
        """phi(t) = p(t) exp(-i kappa t^2 / 2)."""
        t = np.asarray(t, dtype=float)
        values = self.profile(t)
        rate = self.chirp_rate
        if rate != 0.0:
            values = values * np.exp(-0.5j * rate * t * t)
        return values

    def alpha_profile(self, x, alpha: AngleParam) -> np.ndarray:
        """p_alpha(x) = phi(x) exp(i cot(alpha) x^2 / 2)."""
        x = np.asarray(x, dtype=float)
        values = self.profile(x)
        if self.alpha_built_for_matches(alpha):
            return values
        return values * np.exp(0.5j * (alpha.cot_alpha - self.chirp_rate) * x * x)

    def _core_profile(self, x: np.ndarray) -> np.ndarray:
        kind = self.kind
        if kind == FunctionKind.haar:
            return ((x >= 0.0) & (x < 1.0)).astype(complex)
        if kind == FunctionKind.shannon:
            return np.sinc(x).astype(complex)
        if kind == FunctionKind.bspline:
            return np.nan_to_num(_bspline_basis(self.order)(x)).astype(complex)
        if kind == FunctionKind.haar_wavelet:
            return (((x >= 0.0) & (x < 0.5)).astype(float) - ((x >= 0.5) & (x < 1.0)).astype(float)).astype(complex)
        if kind == FunctionKind.mexican_hat:
            return (MEXICAN_HAT_NORM * (1.0 - x * x) * np.exp(-0.5 * x * x)).astype(complex)
        if kind == FunctionKind.shannon_wavelet:
            y = x - 0.5
            return (2.0 * np.sinc(2.0 * y) - np.sinc(y)).astype(complex)
        if kind == FunctionKind.gaussian:
            return np.exp(-0.5 * x * x).astype(complex)
        if kind == FunctionKind.sampled:
            if self.interpolation == Interpolation.linear:
                points = self.samples.points
                real = np.interp(x, points, self.samples.values.real, left=0.0, right=0.0)
                imag = np.interp(x, points, self.samples.values.imag, left=0.0, right=0.0)
                return real + 1j * imag
            return interpolate_bandlimited(self.samples, x)
        if kind == FunctionKind.atom:
            warp = self.warp
            return warp.gain * np.exp(1j * warp.phase) * self.base.alpha_profile(warp.scale * x - warp.shift, warp.alpha)
        if kind == FunctionKind.orthonormalized and self.base.time_support() is not None:
            coefficients, first = self._orthonormalizing_coefficients()
            values = np.zeros(x.shape, dtype=complex)
            for n, c in zip(first + np.arange(len(coefficients)), coefficients):
                values += c * self.base.alpha_profile(x - n, self.alpha_built_for)
            return values
        if kind == FunctionKind.filter_wavelet and self._profile_route_is_exact():
            g, g_start = alternating_flip(self._classical_taps(), self.filter_start)
            values = np.zeros(x.shape, dtype=complex)
            for n, tap in zip(g_start + np.arange(len(g)), g):
                values += tap * self.base.alpha_profile(2.0 * x - n, self.alpha_built_for)
            return math.sqrt(2.0) * values
        return self._inverse_fourier(x)

    def _profile_route_is_exact(self) -> bool:
        return self.base is not None and self.base.time_support() is not None

    def _inverse_fourier(self, x: np.ndarray) -> np.ndarray:
        """p(x) from p^ by the trapezoid rule on a truncated band."""
        band = self.spectral_band() or INVERSE_BAND
        grid = UniformGrid.symmetric(band, INVERSE_POINTS + 1)
        spectrum = self._core_fourier(grid.points) * grid.trapezoid_weights() / (2.0 * math.pi)
        # inverse transform is the forward sum at -x
        return direct_fourier(grid.points, spectrum, -x)

    # ------------------------------------------------------------------
    # frequency domain

    def profile_fourier(self, omega) -> np.ndarray:
        """Classical transform p^(omega) = int p(t) exp(-i omega t) dt."""
        omega = np.asarray(omega, dtype=float)
        return self.amplitude * self._core_fourier(omega)

    def alpha_profile_fourier(self, omega, alpha: AngleParam) -> np.ndarray:
        """Classical transform of the alpha-profile."""
        omega = np.asarray(omega, dtype=float)
        if self.alpha_built_for_matches(alpha):
            return self.profile_fourier(omega)
        grid = self.sampling_grid()
        weighted = self.alpha_profile(grid.points, alpha) * grid.trapezoid_weights()
        return direct_fourier(grid.points, weighted, omega)

    def theta(self, u, alpha: Union[AngleParam, float]) -> np.ndarray:
        """Theta_alpha(u), the order-alpha transform of this function at u."""
        alpha = as_angle(alpha)
        alpha.require_generic('theta')
        u = np.asarray(u, dtype=float)
        chirp = alpha.c_alpha * np.exp(0.5j * alpha.cot_alpha * u * u)
        return chirp * self.alpha_profile_fourier(u * alpha.csc_alpha, alpha)

    def has_closed_theta(self, alpha: AngleParam) -> bool:
        return self.alpha_built_for_matches(alpha) and self.kind != FunctionKind.sampled

    def _core_fourier(self, omega: np.ndarray) -> np.ndarray:
        kind = self.kind
        if kind == FunctionKind.haar:
            return _haar_fourier(omega)
        if kind == FunctionKind.shannon:
            return _half_open(omega, -math.pi, math.pi)
        if kind == FunctionKind.bspline:
            return _haar_fourier(omega) ** self.order
        if kind == FunctionKind.haar_wavelet:
            quarter = 0.25 * omega
            return 1j * np.exp(-0.5j * omega) * quarter * _sinc(quarter) ** 2
        if kind == FunctionKind.mexican_hat:
            return MEXICAN_HAT_NORM * math.sqrt(2.0 * math.pi) * omega * omega * np.exp(-0.5 * omega * omega)
        if kind == FunctionKind.shannon_wavelet:
            band = _half_open(omega, math.pi, 2.0 * math.pi) + _half_open(omega, -2.0 * math.pi, -math.pi)
            return np.exp(-0.5j * omega) * band
        if kind == FunctionKind.gaussian:
            return math.sqrt(2.0 * math.pi) * np.exp(-0.5 * omega * omega) + 0j
        if kind == FunctionKind.sampled:
            weighted = self.samples.values * self.samples.grid.trapezoid_weights()
            return direct_fourier(self.samples.points, weighted, omega)
        if kind == FunctionKind.filter_defined:
            taps = self._classical_taps()
            values = np.ones(omega.shape, dtype=complex)
            for level in range(1, PRODUCT_DEPTH + 1):
                values *= filter_symbol(taps, self.filter_start, omega / 2.0 ** level)
            return values
        if kind == FunctionKind.orthonormalized:
            alpha = self.alpha_built_for
            periodized = self.base.alpha_periodization(omega, alpha)
            return self.base.alpha_profile_fourier(omega, alpha) / np.sqrt(periodized)
        if kind == FunctionKind.modulus_variant:
            alpha = self.alpha_built_for
            u = omega * alpha.sin_alpha
            magnitude = np.abs(self.base.theta(u, alpha))
            return magnitude * np.exp(-0.5j * alpha.cot_alpha * u * u) / alpha.c_alpha
        if kind == FunctionKind.filter_wavelet:
            g, g_start = alternating_flip(self._classical_taps(), self.filter_start)
            half = omega / 2.0
            return filter_symbol(g, g_start, half) * self.base.alpha_profile_fourier(half, self.alpha_built_for)
        if kind == FunctionKind.atom:
            warp = self.warp
            inner = self.base.alpha_profile_fourier(omega / warp.scale, warp.alpha)
            return warp.gain * np.exp(1j * (warp.phase - omega * warp.shift / warp.scale)) * inner / warp.scale
        raise CatalogError(f"no transform for kind {kind}")

    def _classical_taps(self) -> np.ndarray:
        if self.kind == FunctionKind.filter_wavelet:
            rate = self.alpha_built_for.cot_alpha
        else:
            rate = self.chirp_rate
        return classical_filter(self.h, self.filter_start, rate)

    # ------------------------------------------------------------------
    # periodization

    def classical_periodization(self, omega) -> np.ndarray:
        """sum_k |p^(omega + 2 pi k)|^2 for the classical profile."""
        return self.alpha_periodization(omega, None)

    def alpha_periodization(self, omega, alpha: Optional[AngleParam],
                            truncation_k: int = PERIODIZATION_K) -> np.ndarray:
        """sum_k |p_alpha^(omega + 2 pi k)|^2; alpha None means the classical profile."""
        omega = np.asarray(omega, dtype=float)
        matching = alpha is None or self.alpha_built_for_matches(alpha)
        if matching:
            closed = self._closed_periodization(omega)
            if closed is not None:
                return abs(self.amplitude) ** 2 * closed

            def power(w):
                return np.abs(self.profile_fourier(w)) ** 2
        else:
            def power(w):
                return np.abs(self.alpha_profile_fourier(w, alpha)) ** 2

        band = self.spectral_band() if matching else None
        if band is not None:
            truncation_k = int(math.ceil(band / (2.0 * math.pi))) + 1
        reduced = np.mod(omega + math.pi, 2.0 * math.pi) - math.pi
        keys, inverse = np.unique(np.round(reduced, 12), return_inverse=True)
        sums, _ = lattice_sum(power, keys, 2.0 * math.pi, truncation_k, tail_completion=band is None)
        return sums[inverse].reshape(omega.shape)

    def _closed_periodization(self, omega: np.ndarray) -> Optional[np.ndarray]:
        if self.kind in (FunctionKind.haar, FunctionKind.shannon):
            return np.ones(omega.shape)
        if self.kind == FunctionKind.bspline:
            coefficients = _bspline_autocorrelation(self.order)
            values = np.full(omega.shape, coefficients[0])
            for n in range(1, len(coefficients)):
                values = values + 2.0 * coefficients[n] * np.cos(n * omega)
            return values
        return None

    def _orthonormalizing_coefficients(self, count: int = 512) -> Tuple[np.ndarray, int]:
        """Fourier coefficients c_n of P^{-1/2} = sum_n c_n exp(-i n omega), P the base periodization."""
        omega = 2.0 * math.pi * np.arange(count) / count
        inverse_root = 1.0 / np.sqrt(self.base.alpha_periodization(omega, self.alpha_built_for))
        coefficients = np.fft.ifft(inverse_root)
        coefficients = np.concatenate([coefficients[count // 2:], coefficients[:count // 2]])
        first = -(count // 2)
        significant = np.nonzero(np.abs(coefficients) >= COEFFICIENT_CUTOFF * np.abs(coefficients).max())[0]
        lo, hi = significant[0], significant[-1]
        return coefficients[lo:hi + 1], first + lo


FunctionDescriptor.model_rebuild()


class TestSignalSpec(NumericModel):
    """
    Parameters of a catalog test signal.

    * ``gaussian``: exp(-(t - center)^2 / (2 scale^2)).
    * ``chirp``: exp(i rate t^2 / 2) under the Gaussian window.
    * ``rectangle``: indicator of [start, stop).
    * ``hermite``: Hermite-Gauss function of ``order`` with width ``scale``, unit norm.
    * ``bandlimited_random``: Gaussian-windowed sum of ``components`` random tones with
      |frequency| in [low_band, band], reproducible from ``seed``. With ``alpha`` set the
      band is measured on that order's fractional frequency axis.
    """
    kind: SignalKind
    scale: float = Field(default=1.0, gt=0.0)
    center: float = 0.0
    rate: float = 0.0
    start: float = 0.0
    stop: float = 1.0
    order: int = Field(default=0, ge=0)
    seed: int = 0
    band: float = Field(default=4.0, gt=0.0)
    low_band: float = Field(default=0.0, ge=0.0)
    components: int = Field(default=16, ge=1)
    alpha: Optional[float] = None

    @model_validator(mode='after')
    def _check_ranges(self) -> 'TestSignalSpec':
        if self.kind == SignalKind.rectangle and self.stop <= self.start:
            raise ValueError(f"rectangle needs start < stop, got [{self.start}, {self.stop})")
        if self.kind == SignalKind.bandlimited_random and self.low_band >= self.band:
            raise ValueError(f"low_band {self.low_band} must be below band {self.band}")
        return self


def _gaussian_window(t: np.ndarray, center: float, scale: float) -> np.ndarray:
    return np.exp(-0.5 * ((t - center) / scale) ** 2)


def _hermite_function(x: np.ndarray, order: int) -> np.ndarray:
    log_norm = 0.5 * (order * math.log(2.0) + gammaln(order + 1) + 0.5 * math.log(math.pi))
    return eval_hermite(order, x) * np.exp(-0.5 * x * x - log_norm)


def _bandlimited_random(spec: TestSignalSpec, grid: UniformGrid) -> np.ndarray:
    t = grid.points
    band, low_band = spec.band, spec.low_band
    fractional = None
    if spec.alpha is not None:
        fractional = as_angle(spec.alpha)
        fractional.require_generic('bandlimited_random')
        band *= abs(fractional.csc_alpha)
        low_band *= abs(fractional.csc_alpha)
    nyquist = math.pi / grid.step
    if band > nyquist:
        raise SpecError(f"band {band:.6g} exceeds the grid Nyquist frequency {nyquist:.6g}")

    rng = np.random.default_rng(spec.seed)
    frequencies = rng.uniform(low_band, band, spec.components) * rng.choice([-1.0, 1.0], spec.components)
    amplitudes = (rng.standard_normal(spec.components) + 1j * rng.standard_normal(spec.components))
    amplitudes /= math.sqrt(2.0 * spec.components)
    tones = np.exp(1j * np.outer(t, frequencies)) @ amplitudes
    values = _gaussian_window(t, spec.center, spec.scale) * tones
    if fractional is not None:
        values = values * np.exp(-0.5j * fractional.cot_alpha * t * t)
    return values


def make_test_signal(spec: TestSignalSpec, grid: UniformGrid) -> SampledSignal:
    t = grid.points
    if spec.kind == SignalKind.gaussian:
        values = _gaussian_window(t, spec.center, spec.scale)
    elif spec.kind == SignalKind.chirp:
        values = _gaussian_window(t, spec.center, spec.scale) * np.exp(0.5j * spec.rate * t * t)
    elif spec.kind == SignalKind.rectangle:
        values = ((t >= spec.start) & (t < spec.stop)).astype(float)
    elif spec.kind == SignalKind.hermite:
        values = _hermite_function((t - spec.center) / spec.scale, spec.order) / math.sqrt(spec.scale)
    elif spec.kind == SignalKind.bandlimited_random:
        values = _bandlimited_random(spec, grid)
    else:
        raise SpecError(f"unknown test signal kind {spec.kind}")
    return SampledSignal(grid=grid, values=values)


_KIND_ALIASES = {
    'haar': (FunctionKind.haar, None),
    'shannon': (FunctionKind.shannon, None),
    'bspline': (FunctionKind.bspline, 2),
}


def parse_kind(kind: Union[str, FunctionKind], order: Optional[int] = None) -> Tuple[FunctionKind, Optional[int]]:
    """Accepts FunctionKind members and names such as 'bspline3'."""
    if isinstance(kind, FunctionKind):
        return kind, order
    name = str(kind).strip().lower().replace('-', '_')
    if name.startswith('bspline') and name[len('bspline'):].isdigit():
        return FunctionKind.bspline, int(name[len('bspline'):])
    try:
        return FunctionKind(name), order
    except ValueError:
        raise CatalogError(f"unknown function kind {kind!r}")


def make_scaling(kind: Union[str, FunctionKind], alpha: Union[AngleParam, float],
                 order: Optional[int] = None) -> FunctionDescriptor:
    """Classical scaling prototype times the demodulation chirp of alpha."""
    alpha = as_angle(alpha)
    alpha.require_generic('make_scaling')
    kind, order = parse_kind(kind, order)
    if kind not in SCALING_KINDS:
        raise CatalogError(f"{kind} is not a catalog scaling function")
    if kind == FunctionKind.bspline:
        order = 2 if order is None else order
        if order < 2:
            raise CatalogError(f"bspline order must be at least 2, got {order}")
    else:
        order = None
    return FunctionDescriptor(kind=kind, alpha_built_for=alpha, order=order)


def make_wavelet(kind: Union[str, FunctionKind], alpha: Union[AngleParam, float]) -> FunctionDescriptor:
    """Classical wavelet prototype times the demodulation chirp of alpha."""
    alpha = as_angle(alpha)
    alpha.require_generic('make_wavelet')
    kind, _ = parse_kind(kind)
    if kind not in WAVELET_KINDS:
        raise CatalogError(f"{kind} is not a catalog wavelet")
    return FunctionDescriptor(kind=kind, alpha_built_for=alpha)


def make_filter_scaling(h, alpha: Union[AngleParam, float], start: int = 0,
                        demodulated: bool = True) -> FunctionDescriptor:
    """Scaling function known through its fractional filter h[n], n = start, start+1, ..."""
    alpha = as_angle(alpha)
    alpha.require_generic('make_filter_scaling')
    h = np.asarray(h, dtype=complex)
    rate = alpha.cot_alpha if demodulated else 0.0
    total = classical_filter(h, start, rate).sum()
    if abs(total - math.sqrt(2.0)) > 1e-8:
        log.warning(f"filter taps sum to {total:.6g}, not sqrt(2); the product transform will not be normalized")
    return FunctionDescriptor(
        kind=FunctionKind.filter_defined, alpha_built_for=alpha, h=h, filter_start=start, demodulated=demodulated,
    )


def make_sampled(signal: SampledSignal, interpolation: Union[str, Interpolation] = Interpolation.bandlimited,
                 label: str = '') -> FunctionDescriptor:
    if np.abs(signal.values).max() > 0:
        edge = max(abs(signal.values[0]), abs(signal.values[-1])) / np.abs(signal.values).max()
        if edge >= 1e-10:
            log.warning(f"sampled function is {edge:.3e} of its peak at the grid edge; support may be cut")
    return FunctionDescriptor(
        kind=FunctionKind.sampled,
        alpha_built_for=AngleParam(alpha=math.pi / 2.0),
        demodulated=False,
        samples=signal,
        interpolation=Interpolation(interpolation),
        label=label,
    )


def scaled(phi: FunctionDescriptor, factor: complex) -> FunctionDescriptor:
    return phi.model_copy(update={'amplitude': complex(phi.amplitude * factor)})


def eval_function(phi: FunctionDescriptor, t):
    values = phi.evaluate(t)
    if np.ndim(values) == 0:
        return complex(values)
    return values


def frft_of_scaling(phi: FunctionDescriptor, alpha: Union[AngleParam, float], out: UniformGrid) -> SpectrumTable:
    """Theta_alpha on ``out``: closed form when available, else the fast transform of samples."""
    alpha = as_angle(alpha)
    alpha.require_generic('frft_of_scaling')
    if phi.has_closed_theta(alpha):
        return SpectrumTable(grid=out, values=phi.theta(out.points, alpha), alpha=alpha)
    grid = phi.sampling_grid()
    log.debug(f"frft_of_scaling {phi}: sampling on {grid}")
    signal = SampledSignal(grid=grid, values=phi.evaluate(grid.points))
    return frft_fast(signal, alpha, out=out)
