"""Truncated lattice sums of decaying positive terms, with power-law tail completion."""
import logging
from typing import *

import numpy as np

log = logging.getLogger(__name__)

_MIN_EXPONENT = 1.05
_MAX_EXPONENT = 64.0
_BLOCK_ELEMENTS = 1 << 20


def _one_sided_tail(last: np.ndarray, prev: np.ndarray,
                    x_last: np.ndarray, x_prev: np.ndarray,
                    x_mid: np.ndarray, spacing: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Tail sum over k > K of terms fitted as A * x(k)^-p with x(k) = x0 + spacing * k.

    The sum is the integral from K + 1/2 plus the leading midpoint correction
    g'(K + 1/2) / 24. Returns (tail, |correction|); zero where no power law fits.
    """
    tail = np.zeros_like(last)
    correction = np.zeros_like(last)
    with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
        usable = (last > 0.0) & (prev > last) & (x_prev > 0.0) & (x_last > x_prev)
        exponent = np.where(usable, np.log(prev / last) / np.log(x_last / x_prev), 0.0)
        usable &= (exponent > _MIN_EXPONENT) & (exponent <= _MAX_EXPONENT)
        p = np.where(usable, exponent, 2.0)
        amplitude = last * x_last ** p
        integral = amplitude * x_mid ** (1.0 - p) / (spacing * (p - 1.0))
        midpoint = p * amplitude * spacing / (24.0 * x_mid ** (p + 1.0))
        tail = np.where(usable, integral - midpoint, 0.0)
        correction = np.where(usable, midpoint, 0.0)
    return tail, correction


def complete_lattice_sum(terms: np.ndarray, base: np.ndarray, period: float,
                         tail_completion: bool = True) -> Tuple[np.ndarray, np.ndarray]:
    """
    Sum lattice terms ``terms[k + K, i] = T(base[i] + k * period)`` for k = -K..K.

    ``base`` holds points with |base| < period. When ``tail_completion`` is on and
    K >= 2, the terms beyond +-K are estimated from the power law through the last
    two terms on each side. Returns (sums, tail correction size) per base point.
    """
    terms = np.asarray(terms, dtype=float)
    base = np.asarray(base, dtype=float)
    truncation = (terms.shape[0] - 1) // 2
    sums = terms.sum(axis=0)
    correction = np.zeros_like(sums)
    if not tail_completion or truncation < 2:
        return sums, correction

    k_last = truncation
    k_prev = truncation - 1
    upper, upper_correction = _one_sided_tail(
        terms[-1], terms[-2],
        base + k_last * period, base + k_prev * period,
        base + (k_last + 0.5) * period, period,
    )
    lower, lower_correction = _one_sided_tail(
        terms[0], terms[1],
        k_last * period - base, k_prev * period - base,
        (k_last + 0.5) * period - base, period,
    )
    return sums + upper + lower, upper_correction + lower_correction


def lattice_sum(function: Callable[[np.ndarray], np.ndarray], base: np.ndarray, period: float,
                truncation: int, tail_completion: bool = True) -> Tuple[np.ndarray, np.ndarray]:
    """Evaluate ``function`` on the lattice base + k * period, |k| <= truncation, and sum."""
    base = np.asarray(base, dtype=float).ravel()
    offsets = period * np.arange(-truncation, truncation + 1)
    columns = max(1, _BLOCK_ELEMENTS // offsets.shape[0])
    sums = np.empty_like(base)
    correction = np.empty_like(base)
    for begin in range(0, base.shape[0], columns):
        block = base[begin:begin + columns]
        terms = function(block[np.newaxis, :] + offsets[:, np.newaxis])
        sums[begin:begin + columns], correction[begin:begin + columns] = complete_lattice_sum(
            terms, block, period, tail_completion=tail_completion
        )
    return sums, correction
