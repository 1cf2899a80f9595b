"""Configuration data models for growthindex."""

import math
from typing import Any

from pydantic import BaseModel, Field, field_validator

SUITE_NAMES = (
    "alpha_fn",
    "beta_fn",
    "alpha_seq",
    "beta_seq",
    "duality",
    "legendre",
    "counterexample",
    "all",
)


class EstimatorSettings(BaseModel):
    """Numerical knobs shared by every estimator and checker.

    Attributes:
        tolerance: Absolute tolerance for index equalities
        windows: Number of log-doubling tail windows
        points_per_decade: Grid density for function grids
        max_window_points: Cap on grid points inside one window
        xmax: Largest argument at which evaluators are trusted
        pmax: Tabulation horizon for sequences
        lambda_exponents: λ is searched over 2^1..2^lambda_exponents
        k_search_exponents: Battery ratio conditions search k up to 2^this
        epsilon_exponents: Almost-monotone conditions search ε over 2^-1..2^-this
        theta: θ used for the "for every θ" battery conditions
        constant_search_exponents: Constants C, H, K are searched over 2^0..2^this
        sum_exact_limit: Integer sums are exact up to this index
        sum_extension: Tail sums are integrated numerically up to this index
        quad_rel_tol: Relative tolerance of adaptive quadrature
        associated_log_cap: Cap on log t for associated functions
    """

    model_config = {"frozen": True, "populate_by_name": True}

    tolerance: float = 0.05
    windows: int = 4
    points_per_decade: int = Field(256, alias="points-per-decade")
    max_window_points: int = Field(2048, alias="max-window-points")
    xmax: float = 1e12
    pmax: int = 4096
    lambda_exponents: int = Field(20, alias="lambda-exponents")
    k_search_exponents: int = Field(16, alias="k-search-exponents")
    epsilon_exponents: int = Field(12, alias="epsilon-exponents")
    theta: float = 0.5
    constant_search_exponents: int = Field(40, alias="constant-search-exponents")
    sum_exact_limit: int = Field(65536, alias="sum-exact-limit")
    sum_extension: float = Field(1e9, alias="sum-extension")
    quad_rel_tol: float = Field(1e-6, alias="quad-rel-tol")
    associated_log_cap: float = Field(1e4, alias="associated-log-cap")

    @field_validator("tolerance")
    @classmethod
    def check_tolerance(cls, v: float) -> float:
        """Tolerance must lie in (0, 0.5)."""
        if not 0 < v < 0.5:
            raise ValueError("tolerance must lie in (0, 0.5)")
        return v

    @field_validator("xmax")
    @classmethod
    def check_xmax(cls, v: float) -> float:
        """The evaluation ceiling must be at least 1e3."""
        if not v >= 1e3:
            raise ValueError("xmax must be at least 1e3")
        return v

    @field_validator("pmax")
    @classmethod
    def check_pmax(cls, v: int) -> int:
        """The tabulation horizon must be at least 16."""
        if v < 16:
            raise ValueError("pmax must be at least 16")
        return v

    @field_validator("windows")
    @classmethod
    def check_windows(cls, v: int) -> int:
        """Trend rules need at least three windows."""
        if v < 3:
            raise ValueError("windows must be at least 3")
        return v

    @field_validator("theta")
    @classmethod
    def check_theta(cls, v: float) -> float:
        if not 0 < v < 1:
            raise ValueError("theta must lie in (0, 1)")
        return v

    @property
    def log_xmax(self) -> float:
        return math.log(self.xmax)


class RunConfig(BaseModel):
    """A CLI run: what to analyze and where to write results."""

    model_config = {"populate_by_name": True}

    command: str = ""
    family: str = ""
    input: str = ""
    out: str = ""
    plot: str = ""
    suite: str = "all"
    settings: EstimatorSettings = Field(default_factory=EstimatorSettings)

    @field_validator("suite")
    @classmethod
    def check_suite(cls, v: str) -> str:
        """Suite must be a known verification suite."""
        if v not in SUITE_NAMES:
            raise ValueError(f"unknown suite {v!r}; available: {', '.join(SUITE_NAMES)}")
        return v

    @field_validator("settings", mode="before")
    @classmethod
    def normalize_settings(cls, v: Any) -> Any:
        """Treat an empty settings block as defaults."""
        if v is None:
            return {}
        return v


class SuiteCase(BaseModel):
    """One family run by a verification suite.

    Attributes:
        family: Family spec string, e.g. ``gevrey_fn:s=0.5``
        parameters: Battery parameters tested against the family
        expected: Known index values keyed by index name
    """

    model_config = {"frozen": True}

    family: str
    parameters: tuple[float, ...] = ()
    expected: dict[str, float] = Field(default_factory=dict)
