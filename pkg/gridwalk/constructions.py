"""
Explicit labelings whose walk length meets the lower target r.

Each grid shape gets its own fill rule. The rules place odd and even labels
in opposite halves so that almost every step of the walk crosses the grid,
and put the few non-crossing steps next to the centre lines.
"""

import logging
from typing import Callable, Dict, List, NamedTuple, Tuple

import numpy as np

from gridwalk.bounds import classify, lower_target
from gridwalk.grid_core import GridDims, GridError, Labeling, transpose, walk_length


log = logging.getLogger("gridwalk.constructions")


class ConstructionError(GridError):
    pass


class IdentityViolation(AssertionError):
    def __init__(self, dims, achieved, target, construction=None):
        source = construction.name if construction else "construction"
        message = f"{source} for {dims} has length {achieved}, expected {target}"
        if construction:
            message += f" = {construction.target}"
        super().__init__(message)
        self.dims = dims
        self.achieved = achieved
        self.target = target
        self.construction = construction


class MultisetSequence(NamedTuple):
    copies: int
    range: int
    values: Tuple[int, ...]

    @property
    def variation(self) -> int:
        return sequence_variation(self.values)


def sequence_variation(values) -> int:
    return int(np.abs(np.diff(np.asarray(values, dtype=np.int64))).sum())


# =============================
# FILL HELPERS
# =============================

def _fill(labels: np.ndarray, cells: List[Tuple[int, int]], first: int, step: int = 2):
    """Write first, first+step, ... into `cells` (0-based) in order."""
    for q, (i, j) in enumerate(cells):
        labels[i, j] = first + step * q


def _reverse_row_major(rows, cols) -> List[Tuple[int, int]]:
    return [(i, j) for i in reversed(rows) for j in reversed(cols)]


def _check_min(name, value, low):
    if value < low:
        raise ConstructionError(f"{name} must be >= {low}, got {value}")


def _check_parity(name, value, odd):
    if (value % 2 == 1) != odd:
        raise ConstructionError(f"{name} must be {'odd' if odd else 'even'}, got {value}")


# =============================
# SINGLE ROW
# =============================

def _path_positions(n: int) -> List[int]:
    # zigzag between the low and high halves, entering and leaving near the middle
    h = n // 2
    if n % 2 == 0:
        seq = []
        for q in range(h):
            seq += [h - q, 2 * h - q]
        return seq
    seq = [h + 1]
    for q in range(1, h + 1):
        seq += [2 * h + 2 - q, q]
    return seq


def construct_path(n: int) -> Labeling:
    _check_min("n", n, 1)
    labels = np.zeros((1, n), dtype=np.int64)
    for t, pos in enumerate(_path_positions(n), start=1):
        labels[0, pos - 1] = t
    return Labeling(GridDims(1, n), labels, check=False)


# =============================
# TWO ROWS, ODD WIDTH
# =============================

def construct_2xn_odd(n: int) -> Labeling:
    _check_min("n", n, 3)
    _check_parity("n", n, odd=True)
    h = n // 2
    top = [n - 1 - 2 * c for c in range(h)] + [n + 1, 2 * n] + [n + 3 + 2 * c for c in range(h - 1)]
    bottom = [2 * n - 1 - 2 * c for c in range(h)] + [1 + 2 * c for c in range(h + 1)]
    return Labeling(GridDims(2, n), [top, bottom], check=False)


# =============================
# EVEN x EVEN
# =============================

def construct_even_even(m: int, n: int) -> Labeling:
    """Quadrant scheme.

    Odd labels 1..r-1 fill the top-left quadrant backwards from (m/2, n/2),
    odd labels r+1..mn-1 fill the top-right quadrant bottom-up, and every odd
    label t is followed by t+1 at its cell shifted by (m/2, +-n/2) into the
    diagonally opposite quadrant.
    """
    for name, v in (("m", m), ("n", n)):
        _check_min(name, v, 2)
        _check_parity(name, v, odd=False)
    a, b = m // 2, n // 2
    r = m * n // 2
    labels = np.zeros((m, n), dtype=np.int64)

    q = 0
    for i, j in _reverse_row_major(range(a), range(b)):
        labels[i, j] = 2 * q + 1
        labels[i + a, j + b] = 2 * q + 2
        q += 1

    q = 0
    for i in reversed(range(a)):
        for j in range(b, n):
            labels[i, j] = r + 1 + 2 * q
            labels[i + a, j - b] = r + 2 + 2 * q
            q += 1

    return Labeling(GridDims(m, n), labels, check=False)


# =============================
# ODD x ODD
# =============================

def construct_odd_odd(m: int, n: int) -> Labeling:
    """Block scheme around the centre cell, which carries mn.

    Left block (width (n-1)/2, rows up to the middle) takes odd 1..r-1, right
    block (rows from the middle down) takes even 2..r, the middle column
    alternates top and bottom for r+1..r+m-1, then the two small corner blocks
    take r+m..mn-1.
    """
    for name, v in (("m", m), ("n", n)):
        _check_min(name, v, 3)
        _check_parity(name, v, odd=True)
    k, h = m // 2, n // 2
    r = (m + 1) * (n - 1) // 2
    labels = np.zeros((m, n), dtype=np.int64)

    _fill(labels, _reverse_row_major(range(k + 1), range(h)), 1)
    _fill(labels, _reverse_row_major(range(k, m), range(h + 1, n)), 2)
    for q in range(k):
        labels[q, h] = r + 1 + 2 * q
        labels[k + 1 + q, h] = r + 2 + 2 * q
    _fill(labels, _reverse_row_major(range(k), range(h + 1, n)), r + m)
    _fill(labels, _reverse_row_major(range(k + 1, m), range(h)), r + m + 1)
    labels[k, h] = m * n

    return Labeling(GridDims(m, n), labels, check=False)


# =============================
# ODD x EVEN
# =============================

def construct_odd_even(m: int, n: int) -> Labeling:
    _check_min("m", m, 3)
    _check_parity("m", m, odd=True)
    _check_min("n", n, 4)
    _check_parity("n", n, odd=False)
    k, b = m // 2, n // 2
    r = (m + 1) * n // 2 - 3
    labels = np.zeros((m, n), dtype=np.int64)

    # regions meet on the middle row k: 1 at (k, b-1), mn at (k, b), r+1 at (k, b+1)
    top_left = [(i, j) for i in range(k) for j in range(b)] + [(k, j) for j in range(1, b)]
    bottom_right = [(k, j) for j in range(b + 1, n)] + [(i, j) for i in range(k + 1, m) for j in range(b, n)]
    bottom_left = [(k, 0)] + [(i, j) for i in range(k + 1, m) for j in range(b)]
    top_right = [(i, j) for i in range(k) for j in reversed(range(b, n))] + [(k, b)]

    _fill(labels, top_left[::-1], 1)
    _fill(labels, bottom_right[::-1], 2)
    _fill(labels, bottom_left[::-1], r + 2)
    _fill(labels, top_right, r + 3)

    return Labeling(GridDims(m, n), labels, check=False)


# =============================
# DISPATCH
# =============================

def construct_optimal(dims: GridDims) -> Labeling:
    case, oriented = classify(dims)
    m, n = dims

    if case in ("trivial", "single-row"):
        labeling = construct_path(oriented.n)
    elif case == "two-row":
        if oriented.n % 2 == 0:
            return construct_even_even(m, n)
        labeling = construct_2xn_odd(oriented.n)
    elif case == "even-even":
        return construct_even_even(m, n)
    elif case == "odd-odd":
        return construct_odd_odd(m, n)
    else:
        labeling = construct_odd_even(oriented.m, oriented.n)

    if labeling.dims != dims:
        labeling = transpose(labeling)
    return labeling


class Construction(NamedTuple):
    name: str
    applies: Callable[[GridDims], bool]
    target: str


CONSTRUCTIONS: Dict[str, Construction] = {
    "path": Construction("construct_path", lambda d: min(d) == 1, "floor(n^2/2) - 1"),
    "2xn-odd": Construction(
        "construct_2xn_odd", lambda d: min(d) == 2 and max(d) % 2 == 1, "(n+1)^2 - 4"
    ),
    "even-even": Construction(
        "construct_even_even", lambda d: d.m % 2 == 0 and d.n % 2 == 0, "mn(m+n)/2 - 3"
    ),
    "odd-odd": Construction(
        "construct_odd_odd", lambda d: min(d) >= 3 and d.m % 2 == 1 and d.n % 2 == 1, "mn(m+n)/2 - (m+n)/2 - 1"
    ),
    "odd-even": Construction(
        "construct_odd_even", lambda d: min(d) >= 3 and (d.m + d.n) % 2 == 1, "mn(m+n)/2 - n/2 - 1"
    ),
}


def construction_for(dims: GridDims) -> Construction:
    for construction in CONSTRUCTIONS.values():
        if construction.applies(dims):
            return construction
    raise ConstructionError(f"no construction registered for {dims}")


def check_identity(dims: GridDims) -> Labeling:
    """Build the labeling for `dims` and insist it reaches lower_target."""
    labeling = construct_optimal(dims)
    achieved = walk_length(labeling)
    target = lower_target(dims)
    if achieved != target:
        construction = construction_for(dims)
        log.error(f"identity violation dims={dims} construction={construction.name} achieved={achieved} target={target}")
        raise IdentityViolation(dims, achieved, target, construction)
    return labeling


# =============================
# MULTISET SEQUENCES
# =============================

def construct_multiset_sequence(m: int, n: int) -> MultisetSequence:
    """Arrange m copies of 1..n to maximise the sum of absolute differences.

    The lower half and the upper half of the sorted values are interleaved,
    with the middle values placed at the two ends. A single copy of an odd
    range is the 1D zigzag.
    """
    _check_min("m", m, 1)
    _check_min("n", n, 1)
    if n == 1:
        return MultisetSequence(m, n, (1,) * m)
    if m == 1 and n % 2 == 1:
        return MultisetSequence(m, n, tuple(_path_positions(n)))

    values = sorted(v for v in range(1, n + 1) for _ in range(m))
    total = m * n
    if total % 2 == 0:
        low = values[: total // 2][::-1]
        high = values[total // 2:][::-1]
        seq = [v for pair in zip(low, high) for v in pair]
    else:
        # low half is one longer and supplies both ends
        low = values[: (total + 1) // 2][::-1]
        high = values[(total + 1) // 2:][::-1]
        low = low[1:] + low[:1]
        seq = [v for pair in zip(low, high) for v in pair] + [low[-1]]
    return MultisetSequence(m, n, tuple(seq))
