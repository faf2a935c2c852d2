"""
Closed-form bounds for the maximum labeling-walk length M(P_m x P_n).

upper_bound applies the per-axis multiset maximum to the row and column
coordinates separately; lower_target is the value r attained by the explicit
constructions. They differ by at most one.
"""

from enum import Enum
from typing import Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from gridwalk.grid_core import DimsError, GridDims, Labeling, axis_lengths


class Exactness(str, Enum):
    EXACT = "Exact"
    INTERVAL = "TwoPointInterval"


class TheoremStatus(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: int
    n: int
    lower_target: int
    upper: int
    exactness: Exactness
    case: str

    @model_validator(mode="after")
    def _consistent(self):
        gap = self.upper - self.lower_target
        if gap not in (0, 1):
            raise ValueError(f"upper - lower_target must be 0 or 1, got {gap}")
        if (gap == 0) != (self.exactness is Exactness.EXACT):
            raise ValueError(f"exactness {self.exactness.value} disagrees with gap {gap}")
        return self

    @property
    def dims(self) -> GridDims:
        return GridDims(self.m, self.n)

    @property
    def is_exact(self) -> bool:
        return self.exactness is Exactness.EXACT

    def describe(self) -> str:
        if self.is_exact:
            return f"exact M={self.lower_target}"
        return f"r={self.lower_target} upper={self.upper} interval"


def axis_term(copies: int, range_: int) -> int:
    """2*m*floor(n/2)*ceil(n/2) - [n even] for m copies of 1..n."""
    if copies < 1 or range_ < 1:
        raise DimsError(f"axis_term needs positive arguments, got ({copies}, {range_})")
    half_down = range_ // 2
    half_up = range_ - half_down
    return 2 * copies * half_down * half_up - (1 if range_ % 2 == 0 else 0)


def upper_bound(dims: GridDims) -> int:
    m, n = dims
    # row coordinates are n copies of [m], column coordinates m copies of [n]
    return axis_term(n, m) + axis_term(m, n)


def classify(dims: GridDims) -> Tuple[str, GridDims]:
    """Name the case and orient the dims the way that case is stated.

    single-row/two-row put the short side first, odd-even puts the odd side
    first; the other cases keep the given orientation.
    """
    m, n = dims
    short, long_ = min(m, n), max(m, n)
    if m == 1 and n == 1:
        return "trivial", dims
    if short == 1:
        return "single-row", GridDims(1, long_)
    if short == 2:
        return "two-row", GridDims(2, long_)
    if m % 2 == 0 and n % 2 == 0:
        return "even-even", dims
    if m % 2 == 1 and n % 2 == 1:
        return "odd-odd", dims
    if m % 2 == 1:
        return "odd-even", dims
    return "odd-even", GridDims(n, m)


def lower_target(dims: GridDims) -> int:
    case, (m, n) = classify(dims)
    if case == "trivial":
        return 0
    if case == "single-row":
        return n * n // 2 - 1
    if case == "two-row":
        return (n + 1) ** 2 - 4
    half_total = m * n * (m + n) // 2
    if case == "even-even":
        return half_total - 3
    if case == "odd-odd":
        return half_total - (m + n) // 2 - 1
    return half_total - n // 2 - 1


def theorem_status(dims: GridDims) -> TheoremStatus:
    case, _ = classify(dims)
    lower = lower_target(dims)
    upper = upper_bound(dims)
    return TheoremStatus(
        m=dims.m,
        n=dims.n,
        lower_target=lower,
        upper=upper,
        exactness=Exactness.EXACT if upper == lower else Exactness.INTERVAL,
        case=case,
    )


def mcneil(n: int) -> int:
    if n < 2:
        raise DimsError(f"McNeil's conjecture is stated for n >= 2, got {n}")
    if n % 2 == 0:
        return n ** 3 - 3
    return n ** 3 - n - 1


def axis_deficit(labeling: Labeling) -> Tuple[int, int]:
    """How far each coordinate of the walk falls short of its axis term."""
    m, n = labeling.dims
    row_part, col_part = axis_lengths(labeling)
    return axis_term(n, m) - row_part, axis_term(m, n) - col_part
