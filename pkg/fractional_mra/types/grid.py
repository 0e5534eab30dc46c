import math
from typing import *

import numpy as np
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, field_validator, model_validator
from typing_extensions import Annotated

from fractional_mra.types.angle import AngleParam


def _frozen_array(value: Any, dtype) -> np.ndarray:
    array = np.array(value, dtype=dtype)
    if array.ndim == 0:
        array = array.reshape(1)
    array.setflags(write=False)
    return array


def _complex_array(value: Any) -> np.ndarray:
    return _frozen_array(value, complex)


def _real_array(value: Any) -> np.ndarray:
    return _frozen_array(value, float)


def _complex_scalar(value: Any) -> complex:
    value = complex(value)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError(f"complex value must be finite, got {value}")
    return value


# Validated copies; the stored arrays are read-only.
ComplexArray = Annotated[np.ndarray, BeforeValidator(_complex_array)]
RealArray = Annotated[np.ndarray, BeforeValidator(_real_array)]
ComplexScalar = Annotated[complex, BeforeValidator(_complex_scalar)]


class NumericModel(BaseModel):
    """Base for immutable numerical result types holding numpy arrays."""
    model_config = ConfigDict(
        arbitrary_types_allowed=True,
        frozen=True,
    )


class UniformGrid(NumericModel):
    """Points start + i * step for i in 0..count-1."""
    start: float
    step: float = Field(gt=0.0)
    count: int = Field(ge=2)

    @field_validator('start', 'step')
    @classmethod
    def _check_finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError(f"grid parameters must be finite, got {value}")
        return value

    @classmethod
    def symmetric(cls, half_width: float, count: int) -> 'UniformGrid':
        """count points spanning [-half_width, half_width] inclusive."""
        return cls(start=-half_width, step=2.0 * half_width / (count - 1), count=count)

    @classmethod
    def over_period(cls, period: float, count: int, start: float = 0.0) -> 'UniformGrid':
        """count points covering [start, start + period), right end excluded."""
        return cls(start=start, step=period / count, count=count)

    @property
    def points(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.count)

    @property
    def stop(self) -> float:
        """Last grid point (included)."""
        return self.start + self.step * (self.count - 1)

    @property
    def span(self) -> float:
        return self.step * (self.count - 1)

    @property
    def max_abs(self) -> float:
        return max(abs(self.start), abs(self.stop))

    def trapezoid_weights(self) -> np.ndarray:
        weights = np.full(self.count, self.step)
        weights[0] *= 0.5
        weights[-1] *= 0.5
        return weights

    def mirrored(self) -> 'UniformGrid':
        """Grid of the negated points, in increasing order."""
        return UniformGrid(start=-self.stop, step=self.step, count=self.count)

    def is_close(self, other: 'UniformGrid', rel_tol: float = 1e-12) -> bool:
        if self.count != other.count:
            return False
        scale = max(self.max_abs, other.max_abs, self.step)
        return (
            abs(self.step - other.step) <= rel_tol * self.step
            and abs(self.start - other.start) <= rel_tol * scale
        )

    def __str__(self):
        return f"UniformGrid(start={self.start!r}, step={self.step!r}, count={self.count})"


class SampledSignal(NumericModel):
    """Complex samples on a uniform time grid."""
    grid: UniformGrid
    values: ComplexArray

    @model_validator(mode='after')
    def _check_values(self) -> 'SampledSignal':
        if self.values.ndim != 1 or self.values.shape[0] != self.grid.count:
            raise ValueError(
                f"values has shape {self.values.shape} but grid has {self.grid.count} points"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("signal values must be finite")
        return self

    @property
    def points(self) -> np.ndarray:
        return self.grid.points

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.grid.trapezoid_weights() * np.abs(self.values) ** 2)))

    def scaled(self, factor: complex) -> 'SampledSignal':
        return SampledSignal(grid=self.grid, values=self.values * factor)


class SpectrumTable(NumericModel):
    """
    Complex samples on a uniform fractional-frequency grid.

    ``warnings`` carries the messages of numerical warnings raised while
    the table was computed (truncation at the input edges, for example).
    """
    grid: UniformGrid
    values: ComplexArray
    alpha: AngleParam
    warnings: Tuple[str, ...] = ()

    @model_validator(mode='after')
    def _check_values(self) -> 'SpectrumTable':
        if self.values.ndim != 1 or self.values.shape[0] != self.grid.count:
            raise ValueError(
                f"values has shape {self.values.shape} but grid has {self.grid.count} points"
            )
        return self

    @property
    def points(self) -> np.ndarray:
        return self.grid.points

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.grid.trapezoid_weights() * np.abs(self.values) ** 2)))

    def interpolate(self, u: np.ndarray) -> np.ndarray:
        """Linear interpolation of the complex values, zero outside the grid."""
        u = np.asarray(u, dtype=float)
        points = self.points
        real = np.interp(u, points, self.values.real, left=0.0, right=0.0)
        imag = np.interp(u, points, self.values.imag, left=0.0, right=0.0)
        return real + 1j * imag

    def as_signal(self) -> SampledSignal:
        return SampledSignal(grid=self.grid, values=self.values)
