"""
Fractional wavelet transform.

Atoms of a wavelet psi at order alpha apply the demodulation chirp to the
alpha-profile p of psi:

    psi_{alpha,a,b}(t) = a^{-1/2} p((t - b) / a) exp(-i cot(alpha) (t^2 - b^2) / 2)
    psi_{alpha,j,k}(t) = a0^{j/2} p(a0^j t - k b0) exp(-i cot(alpha) (t^2 - (k b0 a0^{-j})^2) / 2)

so every inner product with a signal f is a classical one with f exp(i cot(alpha) t^2 / 2).
"""
import logging
import math
import warnings
from typing import *

import numpy as np
from pydantic import Field, model_validator
from scipy.integrate import trapezoid

from fractional_mra.analysis_exception import CoverageError, SpecError, TruncationWarning
from fractional_mra.catalog import FunctionDescriptor, TestSignalSpec, make_test_signal
from fractional_mra.fractional_systems import DemodulatedSpectrum, dyadic_coefficients, warped_atom
from fractional_mra.frft_core import EDGE_TOL, edge_decay_message
from fractional_mra.types.angle import AngleParam, as_angle
from fractional_mra.types.atoms import AtomWarp, FractionalAtomIndex
from fractional_mra.types.enum import FunctionKind, SignalKind
from fractional_mra.types.grid import ComplexArray, NumericModel, RealArray, SampledSignal, UniformGrid

log = logging.getLogger(__name__)

ADMISSIBILITY_DELTA = 1e-4
ADMISSIBILITY_BAND = 2.0 * math.pi * 1024.0
POINTS_PER_DECADE = 256
REFINEMENTS = 3
DIVERGENCE_TOL = 1e-3
DIVERGENCE_JUMP = 0.1

FRAME_J_RANGE = (-6, 8)
FRAME_K_RANGE = (-256, 256)
FRAME_TRIALS = 20
FRAME_BAND = 8.0
FRAME_LOW_BAND = 1.0
FRAME_WINDOW = 2.0
FRAME_HALF_WIDTH = 24.0
FRAME_STEP = 1.0 / 32.0
FRAME_COMPONENTS = 16
COVERAGE_TOL = 1e-2
COVERAGE_POINTS = 2048

NORM_SAMPLES_PER_UNIT = 128
NORM_FREQUENCY_POINTS = 1 << 14
_BLOCK_ELEMENTS = 1 << 22


class WaveletAtomGrid(NumericModel):
    """Index set j_min..j_max, k_min..k_max of a discrete wavelet system with lattice a0, b0."""
    alpha: AngleParam
    j_min: int
    j_max: int
    k_min: int
    k_max: int
    a0: float = Field(default=2.0, gt=1.0)
    b0: float = Field(default=1.0, gt=0.0)

    @model_validator(mode='after')
    def _check_ranges(self) -> 'WaveletAtomGrid':
        if self.j_max < self.j_min:
            raise ValueError(f"empty scale range [{self.j_min}, {self.j_max}]")
        if self.k_max < self.k_min:
            raise ValueError(f"empty translate range [{self.k_min}, {self.k_max}]")
        return self

    @classmethod
    def default(cls, alpha: Union[AngleParam, float]) -> 'WaveletAtomGrid':
        return cls(
            alpha=as_angle(alpha),
            j_min=FRAME_J_RANGE[0], j_max=FRAME_J_RANGE[1],
            k_min=FRAME_K_RANGE[0], k_max=FRAME_K_RANGE[1],
        )

    @property
    def j_values(self) -> np.ndarray:
        return np.arange(self.j_min, self.j_max + 1)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.j_max - self.j_min + 1, self.k_max - self.k_min + 1

    @property
    def is_dyadic(self) -> bool:
        return self.a0 == 2.0 and self.b0 == 1.0

    def indices(self) -> Iterator[FractionalAtomIndex]:
        for j in range(self.j_min, self.j_max + 1):
            for k in range(self.k_min, self.k_max + 1):
                yield FractionalAtomIndex(j=j, k=k)

    def warp(self, j: int, k: int) -> AtomWarp:
        if self.is_dyadic:
            return AtomWarp.dilate_translate(j, k, self.alpha)
        scale = self.a0 ** j
        shift = k * self.b0
        return AtomWarp(
            alpha=self.alpha,
            gain=math.sqrt(scale),
            scale=scale,
            shift=shift,
            phase=0.5 * self.alpha.cot_alpha * (shift / scale) ** 2,
        )


class FrameEstimate(NumericModel):
    """
    Empirical frame bounds: min and max over the trial signals of
    sum_{j,k} |<f, psi_{alpha,j,k}>|^2 / ||f||^2.

    These are inner estimates from finitely many signals on a truncated lattice,
    not bounds.
    """
    A_hat: float = Field(gt=0.0)
    B_hat: float
    per_signal_ratios: RealArray
    trials: int = Field(ge=1)
    seed: int
    outside_fraction: float = 0.0
    warnings: Tuple[str, ...] = ()

    @model_validator(mode='after')
    def _check_bounds(self) -> 'FrameEstimate':
        if self.B_hat < self.A_hat:
            raise ValueError(f"B_hat {self.B_hat} is below A_hat {self.A_hat}")
        if self.per_signal_ratios.shape != (self.trials,):
            raise ValueError(f"{self.per_signal_ratios.shape[0]} ratios for {self.trials} trials")
        return self

    @property
    def ratio(self) -> float:
        return self.B_hat / self.A_hat


class AdmissibilityEstimate(NumericModel):
    """
    Admissibility constant with its refinement history.

    ``estimates[i]`` integrates down to ``deltas[i]``; ``value`` is infinite when the
    estimates keep growing as the lower cut shrinks.
    """
    value: float
    divergent: bool
    deltas: RealArray
    estimates: RealArray
    upper: float


class CwtTable(NumericModel):
    """W[a_i, b_j] = <f, psi_{alpha,a_i,b_j}>."""
    alpha: AngleParam
    a: RealArray
    b: RealArray
    values: ComplexArray
    warnings: Tuple[str, ...] = ()

    @model_validator(mode='after')
    def _check_table(self) -> 'CwtTable':
        if self.values.shape != (self.a.shape[0], self.b.shape[0]):
            raise ValueError(f"table has shape {self.values.shape}, grids give {(self.a.shape[0], self.b.shape[0])}")
        return self

    def peak(self) -> Tuple[float, float]:
        """(a, b) of the largest coefficient modulus."""
        i, j = np.unravel_index(np.argmax(np.abs(self.values)), self.values.shape)
        return float(self.a[i]), float(self.b[j])

    def rows(self) -> Iterator[Tuple[float, float, float, float]]:
        for i, a in enumerate(self.a):
            for j, b in enumerate(self.b):
                value = self.values[i, j]
                yield float(a), float(b), float(value.real), float(value.imag)


def _log_band_integral(power: Callable[[np.ndarray], np.ndarray], lo: float, hi: float,
                       points_per_decade: int) -> float:
    """int_lo^hi power(xi) dxi / xi on a uniform grid in log(xi)."""
    count = max(2, int(math.ceil(points_per_decade * math.log10(hi / lo)))) + 1
    s = np.linspace(math.log(lo), math.log(hi), count)
    return float(trapezoid(power(np.exp(s)), s))


def admissibility(psi: FunctionDescriptor, alpha: Union[AngleParam, float], delta: float = ADMISSIBILITY_DELTA,
                  points_per_decade: int = POINTS_PER_DECADE, refinements: int = REFINEMENTS,
                  divergence_tol: float = DIVERGENCE_TOL,
                  divergence_jump: float = DIVERGENCE_JUMP) -> AdmissibilityEstimate:
    """
    C = int |F_alpha{exp(-i (t - xi)^2 cot / 2) psi}(xi)|^2 / |xi| dxi
      = |C_alpha|^2 int |p^(xi tan(alpha/2))|^2 / |xi| dxi

    integrated over delta <= |xi| <= upper, then again with the lower cut halved
    ``refinements`` times. Divergent when a halving raises the estimate by more than
    ``divergence_jump``, or when the last raise stays above ``divergence_tol``
    without shrinking against the first.
    """
    alpha = as_angle(alpha)
    alpha.require_generic('admissibility')
    tau = alpha.tan_half
    weight = abs(alpha.c_alpha) ** 2
    band = psi.spectral_band() if psi.alpha_built_for_matches(alpha) else None
    upper = (band if band is not None else ADMISSIBILITY_BAND) / abs(tau)
    if upper <= delta:
        raise SpecError(f"admissibility band {upper:.4g} lies below the cut {delta:.4g}")

    def power(xi: np.ndarray) -> np.ndarray:
        scaled = xi * tau
        return weight * (np.abs(psi.alpha_profile_fourier(scaled, alpha)) ** 2
                         + np.abs(psi.alpha_profile_fourier(-scaled, alpha)) ** 2)

    deltas = [delta]
    estimates = [_log_band_integral(power, delta, upper, points_per_decade)]
    for _ in range(refinements):
        lower = deltas[-1] / 2.0
        estimates.append(estimates[-1] + _log_band_integral(power, lower, deltas[-1], points_per_decade))
        deltas.append(lower)

    final = max(estimates[-1], 1e-300)
    raises = np.diff(estimates) / final
    divergent = bool(raises.shape[0] > 0 and (
        raises.max() > divergence_jump or (raises[-1] > divergence_tol and raises[-1] > 0.5 * raises[0])
    ))
    value = math.inf if divergent else estimates[-1]
    log.info(f"admissibility of {psi} at {alpha}: {value:.6g} (raises {', '.join(f'{r:.2e}' for r in raises)})")
    return AdmissibilityEstimate(
        value=value, divergent=divergent, deltas=deltas, estimates=estimates, upper=upper,
    )


def continuous_atom(psi: FunctionDescriptor, a: float, b: float, alpha: Union[AngleParam, float]) -> FunctionDescriptor:
    """psi_{alpha,a,b}"""
    alpha = as_angle(alpha)
    alpha.require_generic('continuous_atom')
    if a <= 0:
        raise SpecError(f"scale a must be positive, got {a}")
    return warped_atom(psi, AtomWarp.continuous(a, b, alpha), f"{psi.name}_a={a:g},b={b:g}")


def cwt(f: SampledSignal, psi: FunctionDescriptor, alpha: Union[AngleParam, float],
        a_grid: Sequence[float], b_grid: Sequence[float], edge_tol: float = EDGE_TOL) -> CwtTable:
    """Continuous fractional wavelet transform of f by trapezoid quadrature on f's grid."""
    alpha = as_angle(alpha)
    alpha.require_generic('cwt')
    a = np.asarray(a_grid, dtype=float).ravel()
    b = np.asarray(b_grid, dtype=float).ravel()
    if a.shape[0] == 0 or b.shape[0] == 0:
        raise SpecError("cwt needs non-empty scale and translation grids")
    if np.any(a <= 0):
        raise SpecError(f"scales must be positive, got min {a.min()!r}")

    notes = ()
    message = edge_decay_message(f, edge_tol)
    if message is not None:
        warnings.warn(message, TruncationWarning, stacklevel=2)
        notes = (message,)

    cot = alpha.cot_alpha
    t = f.points
    g = f.values * np.exp(0.5j * cot * t * t) * f.grid.trapezoid_weights()
    block = max(1, _BLOCK_ELEMENTS // t.shape[0])
    values = np.empty((a.shape[0], b.shape[0]), dtype=complex)
    for i, scale in enumerate(a):
        for first in range(0, b.shape[0], block):
            shifts = b[first:first + block]
            x = (t[np.newaxis, :] - shifts[:, np.newaxis]) / scale
            values[i, first:first + block] = np.conj(psi.alpha_profile(x, alpha)) @ g
        values[i] *= scale ** -0.5
    values *= np.exp(-0.5j * cot * b * b)[np.newaxis, :]
    log.debug(f"cwt of f on {f.grid} with {psi}: {a.shape[0]} scales x {b.shape[0]} translations")
    return CwtTable(alpha=alpha, a=a, b=b, values=values, warnings=notes)


def discrete_atoms(psi: FunctionDescriptor, alpha: Union[AngleParam, float],
                   grid: WaveletAtomGrid) -> List[FunctionDescriptor]:
    """Atoms psi_{alpha,j,k} in j-major order over the grid."""
    alpha = as_angle(alpha)
    alpha.require_generic('discrete_atoms')
    if not grid.alpha.matches_chirp(alpha.cot_alpha):
        raise SpecError(f"atom grid is for {grid.alpha}, not {alpha}")
    return [
        warped_atom(psi, grid.warp(index.j, index.k), f"{psi.name}_{index.j},{index.k}")
        for index in grid.indices()
    ]


def atom_norm(atom: FunctionDescriptor, samples_per_unit: int = NORM_SAMPLES_PER_UNIT,
              frequency_points: int = NORM_FREQUENCY_POINTS) -> float:
    """
    L2 norm of a warped atom by quadrature.

    Band-limited atoms are integrated on a half-open frequency grid aligned with the
    band; all others in time on the base profile's sampling grid mapped through the warp.
    """
    if atom.kind != FunctionKind.atom:
        raise SpecError(f"atom_norm needs a warped atom, got {atom}")
    band = atom.spectral_band()
    if band is not None:
        step = 2.0 * band / frequency_points
        omega = -band + step * np.arange(frequency_points)
        energy = np.sum(np.abs(atom.profile_fourier(omega)) ** 2) * step / (2.0 * math.pi)
        return float(math.sqrt(energy))
    warp = atom.warp
    base_grid = atom.base.sampling_grid(samples_per_unit)
    t = (base_grid.points + warp.shift) / warp.scale
    energy = np.sum(np.abs(atom.evaluate(t)) ** 2) * base_grid.step / warp.scale
    return float(math.sqrt(energy))


def atom_norms(psi: FunctionDescriptor, alpha: Union[AngleParam, float], grid: WaveletAtomGrid) -> np.ndarray:
    """Norms of the discrete atoms, shaped (j, k) over the grid."""
    norms = np.array([atom_norm(atom) for atom in discrete_atoms(psi, alpha, grid)])
    return norms.reshape(grid.shape)


def _check_spectral_coverage(psi: FunctionDescriptor, alpha: AngleParam, grid: WaveletAtomGrid,
                             low_band: float, band: float, coverage_tol: float):
    """The scale range must hold the test band: the end scales carry at most coverage_tol of the sum."""
    csc = abs(alpha.csc_alpha)
    omega = np.linspace(max(low_band, 1e-3) * csc, band * csc, COVERAGE_POINTS)
    omega = np.concatenate([-omega, omega])
    terms = np.stack([
        np.abs(psi.alpha_profile_fourier(omega / 2.0 ** j, alpha)) ** 2 for j in grid.j_values
    ])
    total = terms.sum(axis=0)
    if np.any(total <= 0.0):
        raise CoverageError(f"scales [{grid.j_min}, {grid.j_max}] leave part of the band [{low_band}, {band}] uncovered")
    edge_share = float(((terms[0] + terms[-1]) / total).max()) if terms.shape[0] > 1 else 1.0
    if edge_share > coverage_tol:
        raise CoverageError(
            f"scales [{grid.j_min}, {grid.j_max}] cut the test band: the end scales carry "
            f"{edge_share:.3e} > {coverage_tol:.1e} of the coverage"
        )


def frame_ratio(psi: FunctionDescriptor, alpha: Union[AngleParam, float], trials: int = FRAME_TRIALS,
                seed: int = 0, grid: Optional[WaveletAtomGrid] = None, band: float = FRAME_BAND,
                low_band: float = FRAME_LOW_BAND, window: float = FRAME_WINDOW,
                half_width: float = FRAME_HALF_WIDTH, step: float = FRAME_STEP,
                components: int = FRAME_COMPONENTS, coverage_tol: float = COVERAGE_TOL) -> FrameEstimate:
    """
    Empirical frame bounds of the discrete system over seeded band-limited test signals.

    Each trial draws its own seed from ``seed``; the signals are band-limited on the
    order-alpha frequency axis to |u| in [low_band, band] under a Gaussian window of
    width ``window``.
    """
    alpha = as_angle(alpha)
    alpha.require_generic('frame_ratio')
    if grid is None:
        grid = WaveletAtomGrid.default(alpha)
    if not grid.alpha.matches_chirp(alpha.cot_alpha):
        raise SpecError(f"atom grid is for {grid.alpha}, not {alpha}")
    if not grid.is_dyadic:
        raise SpecError(f"frame_ratio needs the dyadic lattice a0=2, b0=1, got a0={grid.a0}, b0={grid.b0}")
    if trials < 1:
        raise SpecError(f"trials must be positive, got {trials}")
    _check_spectral_coverage(psi, alpha, grid, low_band, band, coverage_tol)

    time_grid = UniformGrid.symmetric(half_width, int(round(2.0 * half_width / step)) + 1)
    children = np.random.SeedSequence(seed).spawn(trials)
    ratios = np.empty(trials)
    worst_outside = 0.0
    notes: Tuple[str, ...] = ()
    for trial, child in enumerate(children):
        spec = TestSignalSpec(
            kind=SignalKind.bandlimited_random, seed=int(child.generate_state(1)[0]), band=band,
            low_band=low_band, scale=window, components=components, alpha=alpha.alpha,
        )
        f = make_test_signal(spec, time_grid)
        energy = f.norm() ** 2
        spectrum = DemodulatedSpectrum(f, alpha)
        notes += spectrum.warnings
        captured = 0.0
        outside = 0.0
        for j in grid.j_values:
            coefficients = dyadic_coefficients(spectrum, psi, int(j), grid.k_min, grid.k_max)
            captured += coefficients.energy
            outside += coefficients.outside_energy
        share = outside / energy
        if share > coverage_tol:
            raise CoverageError(
                f"trial {trial}: translates [{grid.k_min}, {grid.k_max}] miss {share:.3e} of the signal energy"
            )
        worst_outside = max(worst_outside, share)
        ratios[trial] = captured / energy
        log.debug(f"frame trial {trial}: ratio {ratios[trial]:.8f}, outside share {share:.2e}")

    estimate = FrameEstimate(
        A_hat=float(ratios.min()), B_hat=float(ratios.max()), per_signal_ratios=ratios, trials=trials,
        seed=seed, outside_fraction=worst_outside, warnings=tuple(dict.fromkeys(notes)),
    )
    log.info(f"frame estimate for {psi} at {alpha}: A_hat {estimate.A_hat:.6f}, B_hat {estimate.B_hat:.6f}")
    return estimate


def wavelet_from_filter(h, phi_on: FunctionDescriptor, alpha: Union[AngleParam, float],
                        start: int = 0) -> FunctionDescriptor:
    """
    Wavelet of the fractional filter h (first index ``start``) of phi_on:
    classical taps g[n] = (-1)^n conj(h_cl[1 - n]) applied to the alpha-profile of phi_on.
    """
    alpha = as_angle(alpha)
    alpha.require_generic('wavelet_from_filter')
    return FunctionDescriptor(
        kind=FunctionKind.filter_wavelet,
        alpha_built_for=alpha,
        base=phi_on,
        h=np.asarray(h, dtype=complex),
        filter_start=start,
        label=f"{phi_on.name}_wavelet",
    )
