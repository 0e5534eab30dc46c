from typing import *

from auto_all import public
from pydantic import Field, model_validator

from fractional_mra.settings.analysis_section import AnalysisSection
from fractional_mra.types.enum import FrftMethod
from fractional_mra.types.path_types import AutoCreateDirectoryPath


@public
class FrftSettings(AnalysisSection):
    edge_tol: float = Field(default=1e-8, gt=0.0)
    """
    Largest |f| at the grid edges, relative to the peak, before a TruncationWarning.
    """
    fast_tol: float = Field(default=1e-6, gt=0.0)
    """
    Relative agreement required between the fast and the quadrature transform when ``verify`` is set.
    """
    angle_eps: float = Field(default=1e-9, gt=0.0)
    """
    |sin(alpha)| at or below this is treated as a special angle.
    """
    method: FrftMethod = FrftMethod.fast
    verify: bool = False


@public
class AnalysisSettings(AnalysisSection):
    grid_per_period: int = Field(default=4096, ge=16)
    truncation_k: int = Field(default=512, ge=1)
    gram_order: int = Field(default=8, ge=0)
    tol: float = Field(default=1e-3, gt=0.0)
    residual_tol: float = Field(default=1e-3, gt=0.0)
    monotone_tol: float = Field(default=1e-6, ge=0.0)
    monotone_fraction: float = Field(default=0.99, gt=0.0, le=1.0)
    limit_j_max: int = Field(default=12, ge=1)
    limit_u_samples: List[float] = [-5.0, -2.0, -1.0, 1.0, 2.0, 5.0]
    inconsistency_factor: float = Field(default=10.0, ge=1.0)

    @model_validator(mode='after')
    def _validate_analysis(self):
        if self.grid_per_period % 2:
            raise ValueError(f"{self.full_item_name('grid_per_period')} must be even, got {self.grid_per_period}")
        if not self.limit_u_samples:
            raise ValueError(f"{self.full_item_name('limit_u_samples')} must not be empty")
        return self


@public
class FrameSettings(AnalysisSection):
    j_min: int = -6
    j_max: int = 8
    k_min: int = -256
    k_max: int = 256
    trials: int = Field(default=20, ge=1)
    band: float = Field(default=8.0, gt=0.0)
    low_band: float = Field(default=1.0, gt=0.0)
    window: float = Field(default=2.0, gt=0.0)
    delta: float = Field(default=1e-4, gt=0.0)
    divergence_tol: float = Field(default=1e-3, gt=0.0)
    coverage_tol: float = Field(default=1e-2, gt=0.0)

    @model_validator(mode='after')
    def _validate_frame(self):
        if self.j_min > self.j_max:
            raise ValueError(f"{self.full_item_name('j_min')} {self.j_min} exceeds j_max {self.j_max}")
        if self.k_min > self.k_max:
            raise ValueError(f"{self.full_item_name('k_min')} {self.k_min} exceeds k_max {self.k_max}")
        if self.low_band >= self.band:
            raise ValueError(f"{self.full_item_name('low_band')} {self.low_band} must be below band {self.band}")
        return self


@public
class OutputSettings(AnalysisSection):
    significant_digits: int = Field(default=17, ge=1, le=17)
    output_folder: Optional[AutoCreateDirectoryPath] = None
    """
    Relative ``--out`` paths are placed here when set.
    """
    grid_n: int = 4096
    """
    Points of the default signal grid; a power of two, at least 256.
    """
    domain_half_width: float = Field(default=16.0, gt=0.0)

    @model_validator(mode='after')
    def _validate_output(self):
        n = self.grid_n
        if n < 256 or n & (n - 1):
            raise ValueError(f"{self.full_item_name('grid_n')} must be a power of two >= 256, got {n}")
        return self
