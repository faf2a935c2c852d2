"""
Grid values and the labeling-walk evaluator.

A labeling assigns 1..mn to the cells of the m x n grid; reading the cells in
label order gives a walk whose length is the sum of Manhattan distances
between consecutive cells. Cells are 1-based in every public signature.
"""

import operator
import re
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np


MAX_CELLS = 2 ** 31

INT64_MIN = -(2 ** 63)
INT64_MAX = 2 ** 63 - 1

_INT_TOKEN = re.compile(r"^[+-]?[0-9]+$")


# =============================
# ERRORS
# =============================

class GridError(ValueError):
    pass


class DimsError(GridError):
    pass


class ShapeError(GridError):
    pass


class PermutationError(GridError):
    def __init__(self, message, duplicates=(), missing=(), unexpected=()):
        super().__init__(message)
        self.duplicates = tuple(duplicates)
        self.missing = tuple(missing)
        self.unexpected = tuple(unexpected)


class ParseError(GridError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class TokenError(ParseError):
    pass


class RaggedRowsError(ParseError):
    pass


# =============================
# VALUE TYPES
# =============================

class _Dims(NamedTuple):
    m: int
    n: int


class GridDims(_Dims):
    """Shape of P_m x P_n: m rows, n columns."""

    __slots__ = ()

    def __new__(cls, m, n):
        if isinstance(m, bool) or isinstance(n, bool):
            raise DimsError(f"grid dimensions must be integers, got {m!r} x {n!r}")
        try:
            # index() accepts int and numpy integers, never floats or strings
            m, n = operator.index(m), operator.index(n)
        except TypeError:
            raise DimsError(f"grid dimensions must be integers, got {m!r} x {n!r}") from None
        if m < 1 or n < 1:
            raise DimsError(f"grid dimensions must be positive, got {m} x {n}")
        if m * n > MAX_CELLS:
            raise DimsError(f"grid {m} x {n} has more than 2^31 cells")
        return super().__new__(cls, m, n)

    @property
    def cell_count(self) -> int:
        return self.m * self.n

    def transposed(self) -> "GridDims":
        return GridDims(self.n, self.m)

    def canonical(self) -> "GridDims":
        return self if self.m <= self.n else self.transposed()

    def cells(self) -> List["Cell"]:
        return [Cell(i, j) for i in range(1, self.m + 1) for j in range(1, self.n + 1)]

    def __str__(self):
        return f"{self.m}x{self.n}"


class Cell(NamedTuple):
    i: int
    j: int

    def within(self, dims: GridDims) -> bool:
        return 1 <= self.i <= dims.m and 1 <= self.j <= dims.n


class Violation(NamedTuple):
    kind: str  # "shape" or "permutation"
    message: str
    duplicates: Tuple[int, ...] = ()
    missing: Tuple[int, ...] = ()
    unexpected: Tuple[int, ...] = ()


class Labeling:
    """Read-only m x n matrix whose entries are exactly 1..mn."""

    __slots__ = ("dims", "labels")

    def __init__(self, dims: GridDims, labels, check: bool = True):
        try:
            arr = np.array(labels, dtype=np.int64)
        except (TypeError, ValueError, OverflowError) as e:
            raise ShapeError(f"labels are not a rectangular integer matrix: {e}") from None
        if check:
            problem = validate(arr, dims)
            if problem is not None:
                _raise_violation(problem)
        arr.setflags(write=False)
        self.dims = dims
        self.labels = arr

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Labeling":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ShapeError("labeling needs at least one row and one column")
        width = len(rows[0])
        for idx, row in enumerate(rows, start=1):
            if len(row) != width:
                raise ShapeError(f"row {idx} has {len(row)} entries, expected {width}")
        return cls(GridDims(len(rows), width), rows)

    @property
    def m(self) -> int:
        return self.dims.m

    @property
    def n(self) -> int:
        return self.dims.n

    def at(self, cell: Cell) -> int:
        return int(self.labels[cell.i - 1, cell.j - 1])

    def tolist(self) -> List[List[int]]:
        return self.labels.tolist()

    def __eq__(self, other):
        if not isinstance(other, Labeling):
            return NotImplemented
        return self.dims == other.dims and np.array_equal(self.labels, other.labels)

    def __hash__(self):
        return hash((self.dims, self.labels.tobytes()))

    def __repr__(self):
        return f"Labeling({self.dims}, {self.tolist()})"


class Walk(NamedTuple):
    """Cells in label order: cells[t-1] is the cell labeled t."""

    dims: GridDims
    cells: Tuple[Cell, ...]


# =============================
# VALIDATION
# =============================

def validate(labels, dims: Optional[GridDims] = None) -> Optional[Violation]:
    """Return None when `labels` is a bijection onto 1..mn, else a Violation.

    Shape problems are reported before (and instead of) permutation problems.
    """
    if isinstance(labels, Labeling):
        dims = dims or labels.dims
        labels = labels.labels
    try:
        arr = np.asarray(labels, dtype=np.int64)
    except (TypeError, ValueError, OverflowError) as e:
        return Violation("shape", f"labels are not a rectangular integer matrix: {e}")

    if arr.ndim != 2 or arr.size == 0:
        return Violation("shape", f"labels must be a non-empty 2-D matrix, got shape {arr.shape}")
    if dims is not None and arr.shape != (dims.m, dims.n):
        return Violation("shape", f"labels have shape {arr.shape[0]}x{arr.shape[1]}, expected {dims}")

    total = arr.size
    flat = arr.ravel()
    inside = (flat >= 1) & (flat <= total)
    unexpected = sorted(set(int(v) for v in flat[~inside]))
    counts = np.bincount(flat[inside], minlength=total + 1)[1:]
    duplicates = [int(v) + 1 for v in np.flatnonzero(counts > 1)]
    missing = [int(v) + 1 for v in np.flatnonzero(counts == 0)]

    if not (duplicates or missing or unexpected):
        return None

    parts = []
    if duplicates:
        parts.append(f"duplicate {_short(duplicates)}")
    if missing:
        parts.append(f"missing {_short(missing)}")
    if unexpected:
        parts.append(f"out of range {_short(unexpected)}")
    return Violation(
        "permutation",
        f"labels are not a permutation of 1..{total}: " + ", ".join(parts),
        tuple(duplicates),
        tuple(missing),
        tuple(unexpected),
    )


def _short(values, limit=8):
    shown = ", ".join(str(v) for v in values[:limit])
    return shown + (", ..." if len(values) > limit else "")


def _raise_violation(problem: Violation):
    if problem.kind == "shape":
        raise ShapeError(problem.message)
    raise PermutationError(problem.message, problem.duplicates, problem.missing, problem.unexpected)


# =============================
# WALK EVALUATION
# =============================

def manhattan(a: Cell, b: Cell) -> int:
    return abs(a.i - b.i) + abs(a.j - b.j)


def walk_order(labeling: Labeling) -> np.ndarray:
    """0-based row-major cell indices sorted by label."""
    flat = labeling.labels.ravel()
    order = np.empty(flat.size, dtype=np.int64)
    order[flat - 1] = np.arange(flat.size, dtype=np.int64)
    return order


def inverse_walk(labeling: Labeling) -> Walk:
    n = labeling.n
    cells = tuple(Cell(int(k) // n + 1, int(k) % n + 1) for k in walk_order(labeling))
    return Walk(labeling.dims, cells)


def labeling_from_walk(walk: Walk) -> Labeling:
    dims = walk.dims
    if len(walk.cells) != dims.cell_count:
        raise PermutationError(f"walk visits {len(walk.cells)} cells, grid {dims} has {dims.cell_count}")
    labels = np.zeros((dims.m, dims.n), dtype=np.int64)
    for t, cell in enumerate(walk.cells, start=1):
        if not cell.within(dims):
            raise ShapeError(f"cell {tuple(cell)} lies outside {dims}")
        if labels[cell.i - 1, cell.j - 1]:
            raise PermutationError(f"walk visits {tuple(cell)} twice")
        labels[cell.i - 1, cell.j - 1] = t
    return Labeling(dims, labels, check=False)


def axis_lengths(labeling: Labeling) -> Tuple[int, int]:
    """Row-coordinate and column-coordinate parts of the walk length."""
    order = walk_order(labeling)
    rows, cols = np.divmod(order, labeling.n)
    return int(np.abs(np.diff(rows)).sum()), int(np.abs(np.diff(cols)).sum())


def walk_length(labeling: Labeling) -> int:
    row_part, col_part = axis_lengths(labeling)
    return row_part + col_part


# =============================
# SYMMETRIES AND STOCK LABELINGS
# =============================

def transpose(labeling: Labeling) -> Labeling:
    return Labeling(labeling.dims.transposed(), labeling.labels.T, check=False)


def reverse_labels(labeling: Labeling) -> Labeling:
    return Labeling(labeling.dims, labeling.dims.cell_count + 1 - labeling.labels, check=False)


def row_major(dims: GridDims) -> Labeling:
    labels = np.arange(1, dims.cell_count + 1, dtype=np.int64).reshape(dims.m, dims.n)
    return Labeling(dims, labels, check=False)


def random_labeling(dims: GridDims, rng: np.random.Generator) -> Labeling:
    labels = (rng.permutation(dims.cell_count) + 1).reshape(dims.m, dims.n)
    return Labeling(dims, labels, check=False)


# =============================
# TEXT FORMAT
# =============================

def format_labeling(labeling: Labeling) -> str:
    return "".join(" ".join(str(v) for v in row) + "\n" for row in labeling.tolist())


def parse_labeling(text: str) -> Labeling:
    """Parse m lines of n integers; any whitespace run separates tokens."""
    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens:
            continue
        row = []
        for tok in tokens:
            if not _INT_TOKEN.match(tok):
                raise TokenError(f"not a base-10 integer: {tok!r}", line=lineno)
            value = int(tok)
            if not INT64_MIN <= value <= INT64_MAX:
                raise TokenError(f"integer out of 64-bit range: {tok!r}", line=lineno)
            row.append(value)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise RaggedRowsError(f"row has {len(row)} entries, expected {width}", line=lineno)
        rows.append(row)

    if not rows:
        raise ParseError("no labeling rows found")
    return Labeling(GridDims(len(rows), width), rows)
