"""
Exact maximum walk length on small grids.

solve_exact is a subset dynamic program over (visited set, last cell) states:
the best walk through a set ending at v extends the best walk through the set
minus v by one Manhattan step. States are processed one popcount layer at a
time; inside a layer the target cells are independent and fan out over a
thread pool. brute_force and multiset_brute_force enumerate everything and
serve as oracles.
"""

import itertools
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
import psutil
from pydantic import BaseModel, ConfigDict

from gridwalk import config
from gridwalk.bounds import Exactness, lower_target, mcneil, theorem_status, upper_bound
from gridwalk.grid_core import GridDims, GridError, Labeling, walk_length


log = logging.getLogger("gridwalk.solver")

BRUTE_FORCE_MAX_CELLS = 9
MULTISET_MAX_CELLS = 10

# walk totals stay below 2^14 for N <= 22, so this marks "no such state"
UNREACHED = -(1 << 14)


class SizeGuardError(GridError):
    pass


class CapExceededError(GridError):
    def __init__(self, cells, cap, estimated_bytes, reason=None):
        reason = reason or f"{cells} cells exceeds the solver cap of {cap}"
        super().__init__(f"{reason}; the DP table would need about {_human_bytes(estimated_bytes)}")
        self.cells = cells
        self.cap = cap
        self.estimated_bytes = estimated_bytes


class Method(str, Enum):
    DP = "BitmaskDP"
    BRUTE_FORCE = "BruteForce"


@dataclass(frozen=True)
class SolveResult:
    dims: GridDims
    optimum: int
    witness: Labeling
    method: Method
    elapsed: float


def _human_bytes(n: int) -> str:
    for unit in ("B", "KB", "MB", "GB", "TB"):
        if n < 1024 or unit == "TB":
            return f"{n:.0f} {unit}" if unit == "B" else f"{n:.1f} {unit}"
        n /= 1024


def dp_table_bytes(cells: int) -> int:
    return (1 << cells) * cells * np.dtype(np.int16).itemsize


def estimated_bytes(cells: int) -> int:
    # table plus one int64 mask index and popcount per subset
    return dp_table_bytes(cells) + (1 << cells) * 17


def distance_matrix(dims: GridDims) -> np.ndarray:
    """Manhattan distances between row-major cell indices, as int16."""
    rows, cols = np.divmod(np.arange(dims.cell_count), dims.n)
    dist = np.abs(rows[:, None] - rows[None, :]) + np.abs(cols[:, None] - cols[None, :])
    return dist.astype(np.int16)


def _popcount_layers(cells: int) -> List[np.ndarray]:
    masks = np.arange(1 << cells, dtype=np.int64)
    popcount = np.zeros(masks.size, dtype=np.int8)
    for b in range(cells):
        popcount += ((masks >> b) & 1).astype(np.int8)
    order = np.argsort(popcount, kind="stable")
    edges = np.concatenate(([0], np.cumsum(np.bincount(popcount, minlength=cells + 1))))
    return [order[edges[k]:edges[k + 1]].astype(np.int64) for k in range(cells + 1)]


def _extend_layer(dp: np.ndarray, masks: np.ndarray, values: np.ndarray, dist: np.ndarray, v: int):
    bit = 1 << v
    free = (masks & bit) == 0
    if not free.any():
        return
    best = (values[free] + dist[v]).max(axis=1)
    dp[masks[free] | bit, v] = best


def _backtrack(dp: np.ndarray, dist: np.ndarray, cells: int) -> List[int]:
    """Rebuild one optimal walk, preferring the lowest cell index on ties."""
    mask = (1 << cells) - 1
    v = int(np.argmax(dp[mask]))
    path = [v]
    while mask != 1 << v:
        prev = mask ^ (1 << v)
        scores = dp[prev] + dist[v]
        u = int(np.argmax(scores == dp[mask, v]))
        path.append(u)
        mask, v = prev, u
    path.reverse()
    return path


def _labeling_from_order(dims: GridDims, order) -> Labeling:
    labels = np.empty(dims.cell_count, dtype=np.int64)
    labels[np.asarray(order, dtype=np.int64)] = np.arange(1, dims.cell_count + 1)
    return Labeling(dims, labels.reshape(dims.m, dims.n))


def _check_result(result: SolveResult):
    lower, upper = lower_target(result.dims), upper_bound(result.dims)
    if walk_length(result.witness) != result.optimum:
        raise AssertionError(f"witness for {result.dims} does not evaluate to {result.optimum}")
    if not lower <= result.optimum <= upper:
        raise AssertionError(f"optimum {result.optimum} for {result.dims} lies outside [{lower}, {upper}]")


def solve_exact(dims: GridDims, cell_cap: Optional[int] = None, workers: Optional[int] = None) -> SolveResult:
    cells = dims.cell_count
    cap = config.CELL_CAP if cell_cap is None else int(cell_cap)
    if cap > config.HARD_CAP:
        log.warning(f"cell cap {cap} lowered to the hard ceiling {config.HARD_CAP}")
        cap = config.HARD_CAP
    workers = config.WORKERS if workers is None else max(1, int(workers))

    need = estimated_bytes(cells)
    if cells > cap:
        raise CapExceededError(cells, cap, need)
    available = psutil.virtual_memory().available
    if need > available:
        raise CapExceededError(cells, cap, need, reason=f"only {_human_bytes(available)} of memory is available")

    log.info(f"solving dims={dims} cells={cells} table={_human_bytes(dp_table_bytes(cells))} workers={workers}")
    t0 = time.perf_counter()

    dist = distance_matrix(dims)
    dp = np.full((1 << cells, cells), UNREACHED, dtype=np.int16)
    start = np.arange(cells)
    dp[np.left_shift(1, start), start] = 0

    layers = _popcount_layers(cells)
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="dp-layer") as pool:
        for k in range(1, cells):
            masks = layers[k]
            values = dp[masks]
            # each target cell writes its own column, so the order of completion is irrelevant
            list(pool.map(lambda v: _extend_layer(dp, masks, values, dist, v), range(cells)))

    order = _backtrack(dp, dist, cells)
    optimum = int(dp[(1 << cells) - 1, order[-1]])
    result = SolveResult(dims, optimum, _labeling_from_order(dims, order), Method.DP, time.perf_counter() - t0)
    _check_result(result)
    log.info(f"solved dims={dims} optimum={optimum} elapsed={result.elapsed:.3f}s")
    return result


# =============================
# ORACLES
# =============================

def _scan_permutations(dims: GridDims) -> Tuple[int, Tuple[int, ...]]:
    cells = dims.cell_count
    if cells > BRUTE_FORCE_MAX_CELLS:
        raise SizeGuardError(f"brute force is limited to {BRUTE_FORCE_MAX_CELLS} cells, {dims} has {cells}")
    if cells == 1:
        return 0, (0,)
    perms = np.array(list(itertools.permutations(range(cells))), dtype=np.int8)
    dist = distance_matrix(dims)
    totals = dist[perms[:, :-1], perms[:, 1:]].sum(axis=1, dtype=np.int64)
    best = int(np.argmax(totals))
    return int(totals[best]), tuple(int(c) for c in perms[best])


def brute_force(dims: GridDims) -> int:
    return _scan_permutations(dims)[0]


def solve_brute_force(dims: GridDims) -> SolveResult:
    t0 = time.perf_counter()
    optimum, order = _scan_permutations(dims)
    result = SolveResult(dims, optimum, _labeling_from_order(dims, order), Method.BRUTE_FORCE, time.perf_counter() - t0)
    _check_result(result)
    return result


def multiset_brute_force(m: int, n: int) -> int:
    """Largest sum of |s[i+1] - s[i]| over all distinct orders of m copies of 1..n."""
    if m < 1 or n < 1:
        raise SizeGuardError(f"multiset oracle needs positive arguments, got ({m}, {n})")
    total = m * n
    if total > MULTISET_MAX_CELLS:
        raise SizeGuardError(f"multiset oracle is limited to {MULTISET_MAX_CELLS} values, got {m} x {n}")

    counts = [0] + [m] * n
    best = 0

    def extend(last, remaining, acc):
        nonlocal best
        if remaining == 0:
            best = max(best, acc)
            return
        for v in range(1, n + 1):
            if counts[v]:
                counts[v] -= 1
                extend(v, remaining - 1, acc + abs(v - last))
                counts[v] += 1

    for first in range(1, n + 1):
        counts[first] -= 1
        extend(first, total - 1, 0)
        counts[first] += 1
    return best


# =============================
# INTERVAL RESOLUTION
# =============================

class IntervalResolution(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: int
    n: int
    lower_target: int
    upper_bound: int
    exactness: Exactness
    optimum: int
    endpoint: str
    conjecture: Optional[int] = None
    conjecture_match: Optional[bool] = None
    method: Method
    witness: List[List[int]]
    elapsed: float

    @property
    def dims(self) -> GridDims:
        return GridDims(self.m, self.n)

    def describe(self) -> str:
        lines = [f"{self.m}x{self.n}: M={self.optimum}, equals {self.endpoint}"]
        if self.exactness is Exactness.EXACT:
            lines.append(f"  exact case confirmed: r={self.lower_target}")
        else:
            lines.append(f"  interval {{{self.lower_target}, {self.upper_bound}}}")
        if self.conjecture is not None:
            verdict = "match" if self.conjecture_match else "MISMATCH"
            lines.append(f"  McNeil conjecture {self.conjecture}: {verdict}")
        return "\n".join(lines) + "\n"


def resolve_interval(dims: GridDims, cell_cap: Optional[int] = None, workers: Optional[int] = None) -> IntervalResolution:
    status = theorem_status(dims)
    result = solve_exact(dims, cell_cap=cell_cap, workers=workers)
    if result.optimum == status.lower_target:
        endpoint = "r"
    elif result.optimum == status.lower_target + 1:
        endpoint = "r+1"
    else:
        raise AssertionError(f"optimum {result.optimum} for {dims} is neither r nor r+1")

    conjecture = mcneil(dims.m) if dims.m == dims.n and dims.m >= 2 else None
    return IntervalResolution(
        m=dims.m,
        n=dims.n,
        lower_target=status.lower_target,
        upper_bound=status.upper,
        exactness=status.exactness,
        optimum=result.optimum,
        endpoint=endpoint,
        conjecture=conjecture,
        conjecture_match=None if conjecture is None else conjecture == result.optimum,
        method=result.method,
        witness=result.witness.tolist(),
        elapsed=result.elapsed,
    )
