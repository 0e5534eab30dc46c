"""
Fractional Fourier transform on uniform grids.

Two evaluation paths share one discretization (trapezoid weights on the input grid):

* :func:`frft_quadrature` forms the kernel matrix literally, O(N*M). It is the oracle.
* :func:`frft_fast` factors the kernel as chirp, scaled Fourier sum, chirp and evaluates
  the scaled sum with a Bluestein (chirp-z) convolution, O((N+M) log(N+M)).
"""
import logging
import math
import warnings
from typing import *

import numpy as np
from scipy.signal import fftconvolve

from fractional_mra.analysis_exception import AliasError, TruncationWarning
from fractional_mra.types.angle import AngleParam, as_angle
from fractional_mra.types.enum import AngleKind
from fractional_mra.types.grid import SampledSignal, SpectrumTable, UniformGrid

log = logging.getLogger(__name__)

EDGE_TOL = 1e-8
FAST_TOL = 1e-6

# Largest kernel block formed at once by the quadrature and resampling paths.
_BLOCK_ELEMENTS = 1 << 22


def kernel_eval(t, u, alpha: Union[AngleParam, float]):
    """
    Kernel value C * exp(i (t^2 + u^2) cot / 2 - i t u csc).

    t and u broadcast against each other. Raises SpecialAngleError at
    identity and parity angles where the kernel is a delta.
    """
    alpha = as_angle(alpha)
    alpha.require_generic('kernel_eval')
    t = np.asarray(t, dtype=float)
    u = np.asarray(u, dtype=float)
    cot = alpha.cot_alpha
    csc = alpha.csc_alpha
    value = alpha.c_alpha * np.exp(1j * ((t * t + u * u) * (0.5 * cot) - t * u * csc))
    if value.ndim == 0:
        return complex(value)
    return value


def edge_decay_message(f: SampledSignal, edge_tol: float = EDGE_TOL) -> Optional[str]:
    """Message describing an edge-decay violation, None when f decays at both ends."""
    magnitude = np.abs(f.values)
    peak = magnitude.max()
    if peak == 0.0:
        return None
    width = max(1, f.grid.count // 100)
    edge = max(magnitude[:width].max(), magnitude[-width:].max())
    if edge > edge_tol * peak:
        return (
            f"signal does not decay at the grid edges: edge/peak = {edge / peak:.3e} "
            f"> edge_tol {edge_tol:.1e} on {f.grid}"
        )
    return None


def _edge_warnings(f: SampledSignal, edge_tol: float) -> Tuple[str, ...]:
    message = edge_decay_message(f, edge_tol)
    if message is None:
        return ()
    warnings.warn(message, TruncationWarning, stacklevel=3)
    return (message,)


def check_alias(grid: UniformGrid, out: UniformGrid, alpha: AngleParam):
    """
    Raise AliasError if the chirped integrand changes phase by more than pi between samples.

    The local frequency of exp(i t^2 cot/2 - i t u csc) is t cot - u csc, largest at a corner
    of the (t, u) box.
    """
    cot = alpha.cot_alpha
    csc = alpha.csc_alpha
    rate = max(
        abs(t * cot - u * csc)
        for t in (grid.start, grid.stop)
        for u in (out.start, out.stop)
    )
    increment = rate * grid.step
    if increment > math.pi:
        raise AliasError(
            f"grid too coarse for the chirp at alpha={alpha.alpha!r}: step {grid.step!r} "
            f"gives a phase increment of {increment:.4f} > pi per sample"
        )


def chirp_z(values: np.ndarray, t_start: float, t_step: float,
            w_start: float, w_step: float, w_count: int) -> np.ndarray:
    """
    Sums  sum_j values[j] * exp(-i w_k t_j)  for t_j = t_start + j t_step and
    w_k = w_start + k w_step, k in 0..w_count-1, by Bluestein's convolution.

    w_step may be negative.
    """
    values = np.asarray(values, dtype=complex)
    n = values.shape[-1]
    j = np.arange(n)
    k = np.arange(w_count)
    rate = t_step * w_step
    # t_j w_k = t0 w0 + t0 dw k + w0 dt j + dt dw jk, and jk = (j^2 + k^2 - (k-j)^2) / 2
    pre = values * np.exp(-1j * (w_start * t_step * j + 0.5 * rate * j * j))
    m = np.arange(-(n - 1), w_count)
    kernel = np.exp(0.5j * rate * m * m).reshape((1,) * (values.ndim - 1) + (m.shape[0],))
    full = fftconvolve(pre, kernel, axes=-1)
    middle = full[..., n - 1:n - 1 + w_count]
    post = np.exp(-1j * (t_start * w_start + t_start * w_step * k + 0.5 * rate * k * k))
    return middle * post


def _special_angle_table(f: SampledSignal, alpha: AngleParam, out: Optional[UniformGrid]) -> SpectrumTable:
    if alpha.kind == AngleKind.identity:
        grid, values = f.grid, f.values.copy()
    else:
        grid, values = f.grid.mirrored(), f.values[::-1].copy()
    table = SampledSignal(grid=grid, values=values)
    if out is not None and not out.is_close(grid):
        table = resample(table, out)
    return SpectrumTable(grid=table.grid, values=table.values, alpha=alpha)


def frft_quadrature(f: SampledSignal, alpha: Union[AngleParam, float], out: UniformGrid,
                    edge_tol: float = EDGE_TOL) -> SpectrumTable:
    """Trapezoid rule for the transform integral, evaluated kernel entry by kernel entry."""
    alpha = as_angle(alpha)
    if not alpha.is_generic:
        return _special_angle_table(f, alpha, out)
    notes = _edge_warnings(f, edge_tol)
    t = f.grid.points
    weighted = f.grid.trapezoid_weights() * f.values
    u = out.points
    rows = max(1, _BLOCK_ELEMENTS // t.shape[0])
    values = np.empty(u.shape[0], dtype=complex)
    for begin in range(0, u.shape[0], rows):
        block = u[begin:begin + rows]
        values[begin:begin + rows] = kernel_eval(t[np.newaxis, :], block[:, np.newaxis], alpha) @ weighted
    return SpectrumTable(grid=out, values=values, alpha=alpha, warnings=notes)


def frft_fast(f: SampledSignal, alpha: Union[AngleParam, float], out: Optional[UniformGrid] = None,
              edge_tol: float = EDGE_TOL) -> SpectrumTable:
    """
    Fast transform of f onto ``out`` (default: the input grid).

    Agrees with :func:`frft_quadrature` to rounding error; raises AliasError when the
    input grid cannot resolve the kernel chirp.
    """
    alpha = as_angle(alpha)
    if not alpha.is_generic:
        return _special_angle_table(f, alpha, out)
    if out is None:
        out = f.grid
    check_alias(f.grid, out, alpha)
    notes = _edge_warnings(f, edge_tol)

    cot = alpha.cot_alpha
    csc = alpha.csc_alpha
    t = f.grid.points
    u = out.points
    chirped = f.grid.trapezoid_weights() * f.values * np.exp(0.5j * cot * t * t)
    log.debug(f"frft_fast {alpha}: {f.grid.count} -> {out.count} points")
    middle = chirp_z(chirped, f.grid.start, f.grid.step, out.start * csc, out.step * csc, out.count)
    values = alpha.c_alpha * np.exp(0.5j * cot * u * u) * middle
    return SpectrumTable(grid=out, values=values, alpha=alpha, warnings=notes)


def ifrft(F: SpectrumTable, alpha: Union[AngleParam, float, None] = None,
          out: Optional[UniformGrid] = None) -> SampledSignal:
    """Inverse transform, the transform of order -alpha (conjugate kernel)."""
    alpha = F.alpha if alpha is None else as_angle(alpha)
    table = frft_fast(F.as_signal(), alpha.negated(), out=out)
    return table.as_signal()


def resample(signal: SampledSignal, grid: UniformGrid) -> SampledSignal:
    """Bandlimited (Whittaker-Shannon) interpolation of signal onto grid."""
    if grid.is_close(signal.grid):
        return SampledSignal(grid=grid, values=signal.values)
    return SampledSignal(grid=grid, values=interpolate_bandlimited(signal, grid.points))


def interpolate_bandlimited(signal: SampledSignal, x) -> np.ndarray:
    """Whittaker-Shannon sum of the samples at arbitrary points x (any shape)."""
    x = np.asarray(x, dtype=float)
    target = x.ravel()
    source = signal.grid.points
    rows = max(1, _BLOCK_ELEMENTS // source.shape[0])
    values = np.empty(target.shape[0], dtype=complex)
    for begin in range(0, target.shape[0], rows):
        block = target[begin:begin + rows]
        weights = np.sinc((block[:, np.newaxis] - source[np.newaxis, :]) / signal.grid.step)
        values[begin:begin + rows] = weights @ signal.values
    return values.reshape(x.shape)


def direct_fourier(points: np.ndarray, weighted: np.ndarray, omega) -> np.ndarray:
    """sum_j weighted[j] exp(-i omega t_j) at arbitrary omega (any shape)."""
    omega = np.asarray(omega, dtype=float)
    target = omega.ravel()
    rows = max(1, _BLOCK_ELEMENTS // points.shape[0])
    values = np.empty(target.shape[0], dtype=complex)
    for begin in range(0, target.shape[0], rows):
        block = target[begin:begin + rows]
        values[begin:begin + rows] = np.exp(-1j * block[:, np.newaxis] * points[np.newaxis, :]) @ weighted
    return values.reshape(omega.shape)


def frft_compose(f: SampledSignal, alphas: Sequence[Union[AngleParam, float]]) -> SpectrumTable:
    """Apply successive transforms, resampling each stage back onto the input grid."""
    if not alphas:
        raise ValueError("frft_compose needs at least one order")
    current = f
    total = None
    table = None
    for alpha in alphas:
        alpha = as_angle(alpha)
        table = frft_fast(current, alpha)
        total = alpha if total is None else total.plus(alpha)
        current = resample(table.as_signal(), f.grid)
    return SpectrumTable(grid=current.grid, values=current.values, alpha=total, warnings=table.warnings)


def signal_norm(x: Union[SampledSignal, SpectrumTable]) -> float:
    """Trapezoid L2 norm."""
    return x.norm()
