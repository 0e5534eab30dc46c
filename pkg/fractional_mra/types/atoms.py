import math
from typing import *

from pydantic import BaseModel, ConfigDict, Field, field_validator

from fractional_mra.types.angle import AngleParam


class FractionalAtomIndex(BaseModel):
    model_config = ConfigDict(frozen=True)

    j: int
    k: int

    def __str__(self):
        return f"({self.j}, {self.k})"


class AtomWarp(BaseModel):
    """
    Affine warp plus chirp turning a base profile p into an atom

        gain * exp(i phase) * p(scale * t - shift) * exp(-i cot(alpha) t^2 / 2)

    where p is the base descriptor's profile at ``alpha``.
    With ``chirped`` false the trailing chirp is omitted.
    """
    model_config = ConfigDict(frozen=True)

    alpha: AngleParam
    gain: float = 1.0
    scale: float = Field(default=1.0, gt=0.0)
    shift: float = 0.0
    phase: float = 0.0
    chirped: bool = True

    @field_validator('gain', 'shift', 'phase')
    @classmethod
    def _check_finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError(f"warp parameters must be finite, got {value}")
        return value

    @classmethod
    def chirp_translate(cls, n: int, alpha: AngleParam) -> 'AtomWarp':
        # phi(t-n) exp(-i(tn+n^2)c) = p(t-n) exp(-ict^2/2) exp(-3in^2c/2)
        return cls(alpha=alpha, shift=float(n), phase=-1.5 * n * n * alpha.cot_alpha)

    @classmethod
    def dilate_translate(cls, j: int, k: int, alpha: AngleParam) -> 'AtomWarp':
        # 2^{j/2} p(2^j t - k) exp(-ic(t^2 - 4^{-j} k^2)/2)
        return cls(
            alpha=alpha,
            gain=2.0 ** (j / 2.0),
            scale=2.0 ** j,
            shift=float(k),
            phase=0.5 * alpha.cot_alpha * k * k * 4.0 ** (-j),
        )

    @classmethod
    def continuous(cls, a: float, b: float, alpha: AngleParam) -> 'AtomWarp':
        # a^{-1/2} p((t-b)/a) exp(-ic(t^2 - b^2)/2)
        return cls(
            alpha=alpha,
            gain=a ** -0.5,
            scale=1.0 / a,
            shift=b / a,
            phase=0.5 * alpha.cot_alpha * b * b,
        )

    @classmethod
    def demodulation(cls, alpha: AngleParam) -> 'AtomWarp':
        return cls(alpha=alpha, chirped=False)
