import logging
import math
import warnings
from typing import *

import numpy as np
from pydantic import Field, model_validator
from scipy.fft import next_fast_len

from fractional_mra.analysis_exception import CoverageError, TruncationWarning
from fractional_mra.catalog import FunctionDescriptor
from fractional_mra.frft_core import chirp_z
from fractional_mra.types.angle import AngleParam, as_angle
from fractional_mra.types.atoms import AtomWarp, FractionalAtomIndex
from fractional_mra.types.enum import FunctionKind, GramMethod
from fractional_mra.types.grid import ComplexArray, NumericModel, SampledSignal, UniformGrid

log = logging.getLogger(__name__)

DEFAULT_ORDER = 8
SUPPORT_PAD = 2.0
TIME_SAMPLES_PER_UNIT = 1024
BAND_PERIODS = 128
POINTS_PER_PERIOD = 64
DECAY_TOL = 1e-8
HERMITIAN_TOL = 1e-10
SIGNIFICANT = 1e-13

RIGHT_ANGLE = AngleParam(alpha=math.pi / 2.0)


class GramMatrix(NumericModel):
    """G[n, m] = <phi_{alpha,0,n}, phi_{alpha,0,m}> for n, m = -order..order."""
    order: int = Field(ge=0)
    entries: ComplexArray
    method: GramMethod
    alpha: AngleParam
    warnings: Tuple[str, ...] = ()

    @model_validator(mode='after')
    def _check_entries(self) -> 'GramMatrix':
        size = 2 * self.order + 1
        if self.entries.shape != (size, size):
            raise ValueError(f"Gram entries have shape {self.entries.shape}, expected {(size, size)}")
        scale = max(1.0, float(np.abs(self.entries).max()))
        asymmetry = float(np.abs(self.entries - self.entries.conj().T).max())
        if asymmetry > HERMITIAN_TOL * scale:
            raise ValueError(f"Gram matrix is not Hermitian: defect {asymmetry:.3e}")
        diagonal = float(np.abs(np.diag(self.entries).imag).max())
        if diagonal > HERMITIAN_TOL * scale:
            raise ValueError(f"Gram diagonal is not real: imaginary part {diagonal:.3e}")
        return self

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.order, self.order + 1)

    def moduli(self) -> np.ndarray:
        return np.abs(self.entries)

    def identity_defect(self) -> float:
        return float(np.abs(self.entries - np.eye(self.entries.shape[0])).max())

    def entry(self, n: int, m: int) -> complex:
        return complex(self.entries[n + self.order, m + self.order])


def warped_atom(phi: FunctionDescriptor, warp: AtomWarp, label: str) -> FunctionDescriptor:
    return FunctionDescriptor(
        kind=FunctionKind.atom,
        alpha_built_for=warp.alpha,
        demodulated=warp.chirped,
        base=phi,
        warp=warp,
        label=label,
    )


def chirp_translate(phi: FunctionDescriptor, n: int, alpha: Union[AngleParam, float]) -> FunctionDescriptor:
    """phi(t - n) exp(-i (t n + n^2) cot(alpha))."""
    alpha = as_angle(alpha)
    alpha.require_generic('chirp_translate')
    return warped_atom(phi, AtomWarp.chirp_translate(n, alpha), f"{phi.name}_0,{n}")


def dilate_translate(phi: FunctionDescriptor, j: int, k: int, alpha: Union[AngleParam, float]) -> FunctionDescriptor:
    """2^{j/2} phi(2^j t - k) exp(-i/2 [t^2 - (2^{-j} k)^2 - (2^j t - k)^2] cot(alpha))."""
    alpha = as_angle(alpha)
    alpha.require_generic('dilate_translate')
    return warped_atom(phi, AtomWarp.dilate_translate(j, k, alpha), f"{phi.name}_{j},{k}")


def demodulate(phi: FunctionDescriptor, alpha: Union[AngleParam, float]) -> FunctionDescriptor:
    """g(t) = phi(t) exp(i cot(alpha) t^2 / 2)."""
    alpha = as_angle(alpha)
    alpha.require_generic('demodulate')
    if phi.alpha_built_for_matches(alpha):
        if not phi.demodulated:
            return phi
        return phi.model_copy(update={'demodulated': False})
    return warped_atom(phi, AtomWarp.demodulation(alpha), f"{phi.name}_demodulated")


def _time_gram(phi: FunctionDescriptor, alpha: AngleParam, order: int,
               samples_per_unit: int) -> Tuple[np.ndarray, Tuple[str, ...]]:
    lo, hi = phi.time_support()
    lo = math.floor(lo - order - SUPPORT_PAD)
    hi = math.ceil(hi + order + SUPPORT_PAD)
    grid = UniformGrid(start=lo, step=1.0 / samples_per_unit, count=int((hi - lo) * samples_per_unit) + 1)
    t = grid.points
    rows = np.stack([chirp_translate(phi, n, alpha).evaluate(t) for n in range(-order, order + 1)])
    log.debug(f"time Gram for {phi}: {rows.shape[0]} atoms on {grid}")
    notes = ()
    peak = np.abs(rows).max()
    edge = max(np.abs(rows[:, 0]).max(), np.abs(rows[:, -1]).max())
    if peak > 0 and edge > DECAY_TOL * peak:
        notes = (f"atoms of {phi} do not vanish at the quadrature window edge ({edge / peak:.3e} of peak)",)
    weighted = rows * grid.trapezoid_weights()
    return weighted @ rows.conj().T, notes


def fractional_gram_from_theta(phi: FunctionDescriptor, alpha: Union[AngleParam, float],
                               order: int = DEFAULT_ORDER,
                               band_periods: int = BAND_PERIODS,
                               points_per_period: int = POINTS_PER_PERIOD) -> GramMatrix:
    """
    Gram matrix from |Theta_alpha|^2:

        G[n, m] = exp(-3i (n^2 - m^2) cot / 2) * int |Theta(u)|^2 exp(-i (n - m) u csc) du

    integrated over u = omega sin(alpha) with the midpoint rule on a grid aligned with 2pi.
    """
    alpha = as_angle(alpha)
    alpha.require_generic('fractional_gram_from_theta')
    step = 2.0 * math.pi / points_per_period
    band = phi.spectral_band() if phi.alpha_built_for_matches(alpha) else None
    # an exact spectral band holds all of |Theta|^2, whatever its value at the edge
    band_limited = band is not None
    if not band_limited:
        band = 2.0 * math.pi * band_periods
    count = int(round(2.0 * band / step))
    omega = -band + step * (np.arange(count) + 0.5)
    power = np.abs(phi.theta(omega * alpha.sin_alpha, alpha)) ** 2
    notes = ()
    peak = power.max()
    edge = max(power[0], power[-1])
    if not band_limited and peak > 0 and edge > DECAY_TOL * peak:
        notes = (f"|Theta|^2 of {phi} is {edge / peak:.3e} of its peak at the band edge {band:.4g}",)

    lags = np.arange(-2 * order, 2 * order + 1)
    weight = abs(alpha.sin_alpha) * step
    by_lag = np.exp(-1j * np.outer(lags, omega)) @ power * weight
    n = np.arange(-order, order + 1)
    difference = n[:, np.newaxis] - n[np.newaxis, :]
    phase = np.exp(-1.5j * alpha.cot_alpha * (n[:, np.newaxis] ** 2 - n[np.newaxis, :] ** 2))
    entries = phase * by_lag[difference + 2 * order]
    log.debug(f"frequency Gram for {phi}: {count} points over |omega| < {band:.4g}")
    for note in notes:
        warnings.warn(note, TruncationWarning, stacklevel=2)
    return GramMatrix(
        order=order, entries=entries, method=GramMethod.frequency_quadrature, alpha=alpha, warnings=notes,
    )


def gram_matrix(phi: FunctionDescriptor, alpha: Union[AngleParam, float], N: int = DEFAULT_ORDER,
                method: Optional[GramMethod] = None,
                samples_per_unit: int = TIME_SAMPLES_PER_UNIT) -> GramMatrix:
    """
    Gram matrix of the fractional translates phi_{alpha,0,n}, |n| <= N.

    Compactly supported functions are integrated in time over the union of the
    supports padded by two units; others on the fractional frequency axis.
    """
    alpha = as_angle(alpha)
    alpha.require_generic('gram_matrix')
    if method is None:
        method = GramMethod.time_quadrature if phi.time_support() is not None else GramMethod.frequency_quadrature
    if method == GramMethod.frequency_quadrature:
        return fractional_gram_from_theta(phi, alpha, N)
    if phi.time_support() is None:
        raise CoverageError(f"time quadrature needs a compactly supported function, got {phi}")
    entries, notes = _time_gram(phi, alpha, N, samples_per_unit)
    for note in notes:
        warnings.warn(note, TruncationWarning, stacklevel=2)
    return GramMatrix(order=N, entries=entries, method=method, alpha=alpha, warnings=notes)


def classical_gram(g: FunctionDescriptor, N: int = DEFAULT_ORDER, method: Optional[GramMethod] = None) -> GramMatrix:
    """Gram matrix of plain integer translates g(t - n)."""
    return gram_matrix(g, RIGHT_ANGLE, N, method=method)


class DyadicCoefficients(NumericModel):
    """<f, phi_{alpha,j,k}> for k = k_min..k_min + len(values) - 1 at one scale j."""
    j: int
    k_min: int
    values: ComplexArray
    outside_energy: float = 0.0
    warnings: Tuple[str, ...] = ()

    @property
    def k(self) -> np.ndarray:
        return self.k_min + np.arange(self.values.shape[0])

    @property
    def energy(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))

    def index(self, k: int) -> FractionalAtomIndex:
        return FractionalAtomIndex(j=self.j, k=k)


class DemodulatedSpectrum(object):
    """
    Classical transform of g = f exp(i cot(alpha) t^2 / 2) for a sampled f.

    Holds the trapezoid-weighted samples of g and evaluates its transform on
    uniform frequency grids with a chirp-z sum.
    """

    def __init__(self, f: SampledSignal, alpha: AngleParam):
        self.alpha = alpha
        self.grid = f.grid
        t = f.grid.points
        self.weighted = f.values * np.exp(0.5j * alpha.cot_alpha * t * t) * f.grid.trapezoid_weights()
        magnitude = np.abs(f.values)
        significant = np.nonzero(magnitude > SIGNIFICANT * magnitude.max())[0]
        if significant.shape[0] == 0:
            significant = np.array([0, f.grid.count - 1])
        self.time_window = (float(t[significant[0]]), float(t[significant[-1]]))
        self.warnings: Tuple[str, ...] = ()
        self.band = self._find_band()

    def _find_band(self) -> float:
        count = next_fast_len(4 * self.grid.count)
        spectrum = np.abs(np.fft.fft(self.weighted, n=count))
        frequency = np.abs(2.0 * math.pi * np.fft.fftfreq(count, d=self.grid.step))
        peak = spectrum.max()
        if peak == 0.0:
            return 0.0
        significant = spectrum > SIGNIFICANT * peak
        nyquist_share = spectrum[np.argmax(frequency)] / peak
        if nyquist_share > 1e-6:
            note = (f"demodulated signal is {nyquist_share:.3e} of its peak at the Nyquist frequency; "
                    f"the grid step {self.grid.step!r} does not resolve it")
            warnings.warn(note, TruncationWarning, stacklevel=3)
            self.warnings = (note,)
        return float(min(frequency[significant].max() + 4.0 * math.pi / (count * self.grid.step),
                         math.pi / self.grid.step))

    def evaluate(self, start: float, step: float, count: int) -> np.ndarray:
        return chirp_z(self.weighted, self.grid.start, self.grid.step, start, step, count)

    def energy(self) -> float:
        values = self.weighted / self.grid.trapezoid_weights()
        return float(np.sum(self.grid.trapezoid_weights() * np.abs(values) ** 2))


def dyadic_coefficients(spectrum: DemodulatedSpectrum, phi: FunctionDescriptor, j: int,
                        k_min: int, k_max: int) -> DyadicCoefficients:
    """
    Coefficients <f, 2^{j/2} p(2^j t - k) exp(-i cot (t^2 - 4^{-j} k^2) / 2)> for k_min <= k <= k_max,
    p the alpha-profile of phi.

    With H(w) = g^(w) 2^{-j/2} conj(p^(2^{-j} w)) the coefficients are the Fourier
    coefficients of H periodized with period 2pi 2^j; they are read off one inverse
    FFT whose length covers every translate that meets the signal, so the requested
    range is free of wrap-around and the energy outside it is measured.
    """
    alpha = spectrum.alpha
    scale = 2.0 ** j
    period = 2.0 * math.pi * scale
    lo, hi = phi.effective_window()
    t_lo, t_hi = spectrum.time_window
    span_lo = min(k_min, int(math.floor(scale * t_lo - hi)))
    span_hi = max(k_max, int(math.ceil(scale * t_hi - lo)))
    length = next_fast_len(2 * (span_hi - span_lo + 1))

    band = spectrum.band
    profile_band = phi.spectral_band() if phi.alpha_built_for_matches(alpha) else None
    if profile_band is not None:
        band = min(band, profile_band * scale)
    step = period / length
    q_lo = int(math.floor(-band / step))
    q_hi = int(math.ceil(band / step))
    q = np.arange(q_lo, q_hi + 1)
    omega = q * step

    values_g = spectrum.evaluate(q_lo * step, step, q.shape[0])
    atom_spectrum = phi.alpha_profile_fourier(omega / scale, alpha)
    folded_values = values_g * np.conj(atom_spectrum) * scale ** -0.5
    slots = np.mod(q, length)
    periodized = (np.bincount(slots, weights=folded_values.real, minlength=length)
                  + 1j * np.bincount(slots, weights=folded_values.imag, minlength=length))
    coefficients = scale * np.fft.ifft(periodized)

    k = np.arange(k_min, k_max + 1)
    picked = coefficients[np.mod(k, length)]
    chirp_phase = np.exp(-0.5j * alpha.cot_alpha * k * k / (scale * scale))
    total = float(np.sum(np.abs(coefficients) ** 2))
    inside = float(np.sum(np.abs(picked) ** 2))
    return DyadicCoefficients(
        j=j, k_min=k_min, values=picked * chirp_phase,
        outside_energy=max(total - inside, 0.0), warnings=spectrum.warnings,
    )


def inner_products(f: SampledSignal, atoms: Sequence[FunctionDescriptor]) -> np.ndarray:
    """
    <f, atom> for each atom, computed as <g, P> on the classical frequency axis, where
    atom = P exp(-i cot t^2 / 2) and g = f exp(i cot t^2 / 2) for the atom's own order.
    """
    results = np.empty(len(atoms), dtype=complex)
    spectra: Dict[float, DemodulatedSpectrum] = {}
    for index, atom in enumerate(atoms):
        alpha = atom.alpha_built_for if atom.demodulated else RIGHT_ANGLE
        spectrum = spectra.get(alpha.alpha)
        if spectrum is None:
            spectrum = spectra[alpha.alpha] = DemodulatedSpectrum(f, alpha)
        lo, hi = atom.effective_window()
        t_lo, t_hi = spectrum.time_window
        extent = max(hi, t_hi) - min(lo, t_lo)
        step = math.pi / max(extent, 1.0)
        band = spectrum.band
        count = int(math.ceil(2.0 * band / step)) + 1
        omega = -band + step * np.arange(count)
        values_g = spectrum.evaluate(-band, step, count)
        weights = np.full(count, step)
        weights[0] *= 0.5
        weights[-1] *= 0.5
        results[index] = np.sum(values_g * np.conj(atom.profile_fourier(omega)) * weights) / (2.0 * math.pi)
    return results
