"""Sampled graphs, hulls and vectorized extremization shared by the conjugates."""

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any, Literal

import numpy as np
from numpy.typing import ArrayLike

from growthindex.core.errors import ConstructionError
from growthindex.weights.function import EvaluableFunction

type Objective = Callable[[np.ndarray], np.ndarray]

MIN_POINTS = 512
GOLDEN_STEPS = 64
CENSOR_FRACTION = 0.01
CONVEXITY_SLACK = 1e-9
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Extremum:
    """Values of a sampled supremum or infimum with its extremizers.

    Attributes:
        value: The extremal values, one per target
        argument: Where each extremum is attained
        censored: Whether the extremizer sits on an artificial grid boundary
    """

    value: np.ndarray
    argument: np.ndarray
    censored: np.ndarray

    @property
    def any_censored(self) -> bool:
        return bool(np.any(self.censored))


@dataclass(frozen=True, eq=False)
class SampledGraph:
    """A function sampled on a strictly increasing grid.

    Attributes:
        x: Abscissae, strictly increasing
        y: Finite values
        mode: ``linear`` or ``step`` interpolation between samples
        domain: Where the interesting limit sits, ``at_zero`` or ``at_infinity``
        censored: Samples whose extremizer touched a grid boundary
        name: Label used in reports and exports
    """

    x: np.ndarray
    y: np.ndarray
    mode: Literal["linear", "step"] = "linear"
    domain: Literal["at_zero", "at_infinity"] = "at_infinity"
    censored: np.ndarray | None = None
    name: str = ""
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        x = np.array(self.x, dtype=float)
        y = np.array(self.y, dtype=float)
        if x.ndim != 1 or x.shape != y.shape or x.size < 2:
            raise ConstructionError(f"{self.name}: graph needs matching one-dimensional samples")
        if np.any(np.diff(x) <= 0):
            raise ConstructionError(f"{self.name}: abscissae must be strictly increasing")
        if not np.all(np.isfinite(y)):
            raise ConstructionError(f"{self.name}: values must be finite")
        censored = (
            np.zeros(x.size, dtype=bool)
            if self.censored is None
            else np.array(self.censored, dtype=bool)
        )
        for arr in (x, y, censored):
            arr.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "censored", censored)

    def __call__(self, x: ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.mode == "step":
            index = np.clip(np.searchsorted(self.x, x, side="right") - 1, 0, self.x.size - 1)
            return self.y[index]
        return np.interp(x, self.x, self.y)

    @property
    def trusted(self) -> np.ndarray:
        """Mask of samples that are not censored."""
        return ~self.censored

    def rows(self) -> list[tuple[float, float, bool]]:
        """(x, y, censored) rows for CSV export."""
        return [
            (float(a), float(b), bool(c))
            for a, b, c in zip(self.x, self.y, self.censored, strict=True)
        ]


def log_grid(lo: float, hi: float, points: int = MIN_POINTS) -> np.ndarray:
    """Uniform grid in log x between log-arguments lo and hi."""
    return np.linspace(lo, hi, max(points, MIN_POINTS))


def sample(
    f: EvaluableFunction,
    lo: float,
    hi: float,
    points: int = MIN_POINTS,
    domain: Literal["at_zero", "at_infinity"] = "at_infinity",
) -> SampledGraph:
    """Sample f at geometric abscissae e^lo .. e^hi.

    Values where f vanishes are recorded as 0.
    """
    s = log_grid(lo, hi, points)
    with np.errstate(over="ignore"):
        y = np.exp(f.profile(s))
    return SampledGraph(
        x=np.exp(s),
        y=y,
        mode="step" if f.is_step else "linear",
        domain=domain,
        name=f.name,
    )


def _cross(o: tuple[float, float], a: tuple[float, float], b: tuple[float, float]) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _chain(x: np.ndarray, y: np.ndarray, upper: bool) -> np.ndarray:
    hull: list[int] = []
    for i in range(x.size):
        point = (float(x[i]), float(y[i]))
        while len(hull) >= 2:
            o = (float(x[hull[-2]]), float(y[hull[-2]]))
            a = (float(x[hull[-1]]), float(y[hull[-1]]))
            turn = _cross(o, a, point)
            if (turn >= 0) if upper else (turn <= 0):
                hull.pop()
            else:
                break
        hull.append(i)
    return np.array(hull, dtype=np.int64)


def upper_hull(x: ArrayLike, y: ArrayLike) -> np.ndarray:
    """Indices of the vertices of the upper concave hull (monotone chain)."""
    return _chain(np.asarray(x, dtype=float), np.asarray(y, dtype=float), upper=True)


def lower_hull(x: ArrayLike, y: ArrayLike) -> np.ndarray:
    """Indices of the vertices of the lower convex hull (monotone chain)."""
    return _chain(np.asarray(x, dtype=float), np.asarray(y, dtype=float), upper=False)


def hull_graph(graph: SampledGraph, upper: bool) -> tuple[SampledGraph, np.ndarray]:
    """The concave majorant (upper) or convex minorant of a graph's samples.

    Returns:
        The hull evaluated at the graph's abscissae and the mask of contact
        points, the hull vertices where it touches the samples
    """
    trusted = graph.trusted
    x, y = graph.x[trusted], graph.y[trusted]
    vertices = (upper_hull if upper else lower_hull)(x, y)
    values = np.interp(graph.x, x[vertices], y[vertices])
    contacts = np.zeros(graph.x.size, dtype=bool)
    contacts[np.flatnonzero(trusted)[vertices]] = True
    hull = SampledGraph(
        x=graph.x,
        y=values,
        domain=graph.domain,
        censored=graph.censored,
        name=f"{'majorant' if upper else 'minorant'}({graph.name})",
    )
    return hull, contacts


def is_convex(x: ArrayLike, y: ArrayLike, slack: float = CONVEXITY_SLACK) -> bool:
    """Whether samples lie on a convex graph, up to a relative slack."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 3:
        return True
    slopes = np.diff(y) / np.diff(x)
    scale = np.maximum(1.0, np.abs(slopes[1:]))
    return bool(np.all(np.diff(slopes) >= -slack * scale))


def golden_max(
    objective: Objective, lo: np.ndarray, hi: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized golden-section search for maxima of unimodal brackets.

    ``objective`` receives one abscissa per bracket and returns one value per
    bracket.

    Returns:
        The maximizers and the maximal values
    """
    a = np.array(lo, dtype=float)
    b = np.array(hi, dtype=float)
    for _ in range(GOLDEN_STEPS):
        c = b - _INVPHI * (b - a)
        d = a + _INVPHI * (b - a)
        left = np.nan_to_num(objective(c), nan=-math.inf) >= np.nan_to_num(
            objective(d), nan=-math.inf
        )
        b = np.where(left, d, b)
        a = np.where(left, a, c)
    best = (a + b) / 2.0
    return best, objective(best)


def grid_extremum(
    values: Callable[[np.ndarray], np.ndarray],
    refine: Objective | None,
    grid: np.ndarray,
    targets: int,
    maximize: bool,
    low_edge: bool = False,
    chunk: int = 256,
) -> Extremum:
    """Extremize over a shared grid, then refine each target by golden section.

    Args:
        values: Maps a slice of target indices to the objective matrix on the grid
        refine: Objective for golden refinement, receiving one abscissa per
            target, or None
        grid: Shared abscissae, increasing
        targets: Number of targets
        maximize: Supremum when True, infimum otherwise
        low_edge: Also flag extremizers near the lower grid end as censored
        chunk: Targets per matrix block
    """
    sign = 1.0 if maximize else -1.0
    index = np.empty(targets, dtype=np.int64)
    best = np.empty(targets)
    for start in range(0, targets, chunk):
        rows = np.arange(start, min(start + chunk, targets))
        block = sign * np.nan_to_num(values(rows), nan=-math.inf)
        j = np.argmax(block, axis=1)
        index[rows] = j
        best[rows] = block[np.arange(rows.size), j]
    argument = grid[index]
    if refine is not None:
        lo = grid[np.maximum(index - 1, 0)]
        hi = grid[np.minimum(index + 1, grid.size - 1)]
        x, v = golden_max(lambda u: sign * refine(u), lo, hi)
        better = np.nan_to_num(v, nan=-math.inf) > best
        argument = np.where(better, x, argument)
        best = np.where(better, v, best)
    span = grid[-1] - grid[0]
    censored = argument >= grid[-1] - CENSOR_FRACTION * span
    if low_edge:
        censored |= argument <= grid[0] + CENSOR_FRACTION * span
    return Extremum(value=sign * best, argument=argument, censored=censored)
