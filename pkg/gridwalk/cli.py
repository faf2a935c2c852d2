"""
gridwalk command line.

    python -m gridwalk bounds 4 4
    python -m gridwalk construct 3 4 --out grid.txt
    python -m gridwalk eval grid.txt --axes
    python -m gridwalk solve 4 4 --cache results/cache.json
    python -m gridwalk sweep 1..6 1..6 --format csv --solve
    python -m gridwalk compare-oeis b179094.txt
    python -m gridwalk compare-oeis --fetch

Exit codes: 0 ok, 2 bad input, 3 construction misses its closed form,
4 instance too large for the solver.
"""

import argparse
import csv
import io
import logging
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import List, NamedTuple, Optional

from gridwalk import config
from gridwalk.bounds import mcneil, theorem_status
from gridwalk.constructions import IdentityViolation, check_identity, construct_optimal, construction_for
from gridwalk.exact_solver import CapExceededError, SizeGuardError, resolve_interval, solve_exact
from gridwalk.grid_core import GridDims, GridError, axis_lengths, format_labeling, parse_labeling, walk_length
from gridwalk.reference_data import CacheError, compare_with_conjecture, fetch_bfile, load_cache, parse_bfile, save_cache


log = logging.getLogger("gridwalk.cli")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_IDENTITY = 3
EXIT_RESOURCE = 4

SWEEP_COLUMNS = ["m", "n", "lower", "upper", "exact", "solved", "construct_len", "conjecture"]

_RANGE = re.compile(r"^\s*(\d+)\s*\.\.\s*(\d+)\s*$")


class UsageError(GridError):
    pass


# =============================
# HELPERS
# =============================

def parse_range(text: str) -> range:
    """'a..b' inclusive; a single integer is a one-element range."""
    if text.strip().isdigit():
        a = b = int(text)
    else:
        match = _RANGE.match(text)
        if not match:
            raise UsageError(f"range must look like a..b, got {text!r}")
        a, b = int(match.group(1)), int(match.group(2))
    if a < 1:
        raise UsageError(f"range {text!r} must start at 1 or more")
    if a > b:
        raise UsageError(f"range {text!r} is empty")
    return range(a, b + 1)


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror or e}") from None
    except UnicodeDecodeError as e:
        raise UsageError(f"{path} is not UTF-8 text: byte {e.start} cannot be decoded") from None


def _write_text(path: str, text: str):
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror or e}") from None


# =============================
# COMMANDS
# =============================

def cmd_bounds(args) -> int:
    status = theorem_status(GridDims(args.m, args.n))
    print(status.describe())
    return EXIT_OK


def cmd_construct(args) -> int:
    dims = GridDims(args.m, args.n)
    labeling = construct_optimal(dims)
    length = walk_length(labeling)
    target = theorem_status(dims).lower_target
    summary = f"length={length} target={target}"

    if args.out:
        _write_text(args.out, format_labeling(labeling))
        print(summary)
    else:
        sys.stdout.write(format_labeling(labeling))
        print(summary, file=sys.stderr)

    if length != target:
        raise IdentityViolation(dims, length, target, construction_for(dims))
    return EXIT_OK


def cmd_eval(args) -> int:
    labeling = parse_labeling(_read_text(args.path))
    if args.axes:
        row_part, col_part = axis_lengths(labeling)
        print(f"{row_part + col_part} rows={row_part} cols={col_part}")
    else:
        print(walk_length(labeling))
    return EXIT_OK


def cmd_solve(args) -> int:
    dims = GridDims(args.m, args.n)
    cache_path = args.cache or config.CACHE_PATH
    cache = load_cache(cache_path)

    resolution = resolve_interval(dims, cell_cap=args.cap, workers=args.workers)
    sys.stdout.write(resolution.describe())

    cache.record(dims, resolution.optimum, resolution.method.value)
    save_cache(cache_path, cache)
    return EXIT_OK


class SweepRow(NamedTuple):
    m: int
    n: int
    lower: int
    upper: int
    exact: bool
    solved: Optional[int]
    construct_len: int
    conjecture: Optional[int]

    def cells(self) -> List[str]:
        return [
            str(self.m),
            str(self.n),
            str(self.lower),
            str(self.upper),
            "true" if self.exact else "false",
            "" if self.solved is None else str(self.solved),
            str(self.construct_len),
            "" if self.conjecture is None else str(self.conjecture),
        ]


def sweep_row(dims: GridDims, solve: bool, cap: int) -> SweepRow:
    status = theorem_status(dims)
    construct_len = walk_length(check_identity(dims))
    solved = None
    if solve:
        if dims.cell_count <= cap:
            solved = solve_exact(dims, cell_cap=cap, workers=1).optimum
        else:
            log.info(f"sweep skips solving dims={dims} cells={dims.cell_count} cap={cap}")
    conjecture = mcneil(dims.m) if dims.m == dims.n and dims.m >= 2 else None
    return SweepRow(dims.m, dims.n, status.lower_target, status.upper, status.is_exact, solved, construct_len, conjecture)


def render_sweep(rows: List[SweepRow], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        for row in rows:
            writer.writerow(row.cells())
        return buf.getvalue()

    widths = [max(len(col), *(len(row.cells()[k]) for row in rows)) for k, col in enumerate(SWEEP_COLUMNS)]
    lines = ["  ".join(col.ljust(w) for col, w in zip(SWEEP_COLUMNS, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row.cells(), widths)).rstrip())
    return "\n".join(lines) + "\n"


def cmd_sweep(args) -> int:
    m_range = parse_range(args.mrange)
    n_range = parse_range(args.nrange)
    cap = min(config.CELL_CAP if args.cap is None else args.cap, config.HARD_CAP)
    grid = [GridDims(m, n) for m in m_range for n in n_range]

    with ThreadPoolExecutor(max_workers=args.workers, thread_name_prefix="sweep") as pool:
        rows = list(pool.map(lambda d: sweep_row(d, args.solve, cap), grid))
    rows.sort(key=lambda row: (row.m, row.n))

    sys.stdout.write(render_sweep(rows, args.format))
    return EXIT_OK


def cmd_compare_oeis(args) -> int:
    if args.fetch:
        table = fetch_bfile(args.fetch)
    elif args.path:
        table = parse_bfile(_read_text(args.path))
    else:
        raise UsageError("compare-oeis needs a b-file path or --fetch")
    cache = load_cache(args.cache or config.CACHE_PATH)
    comparison = compare_with_conjecture(table, solved=cache.square_optima())
    sys.stdout.write(comparison.describe())
    return EXIT_OK


# =============================
# PARSER
# =============================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS so a subcommand does not reset a value given before it
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS, help="thread pool size")
    common.add_argument("--log-level", default=argparse.SUPPRESS, help="DEBUG, INFO, WARNING or ERROR")

    parser = argparse.ArgumentParser(prog="gridwalk", description="Maximum labeling walks on grid graphs", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common], help="closed-form lower target and upper bound")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("construct", parents=[common], help="print the explicit labeling")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("eval", parents=[common], help="walk length of a labeling file")
    p.add_argument("path")
    p.add_argument("--axes", action="store_true", help="also print the row and column parts")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("solve", parents=[common], help="exact optimum by subset DP")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--cache", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", parents=[common], help="bounds and constructions over ranges")
    p.add_argument("mrange")
    p.add_argument("nrange")
    p.add_argument("--format", choices=["table", "csv"], default="table")
    p.add_argument("--solve", action="store_true")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare-oeis", parents=[common], help="compare a b-file with McNeil's conjecture")
    p.add_argument("path", nargs="?", default=None)
    p.add_argument("--fetch", nargs="?", const=config.BFILE_URL, default=None, metavar="URL",
                   help="download the b-file instead of reading PATH")
    p.add_argument("--cache", default=None)
    p.set_defaults(func=cmd_compare_oeis)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT

    config.setup_logging(getattr(args, "log_level", None))
    args.workers = max(1, getattr(args, "workers", config.WORKERS))

    try:
        return args.func(args)
    except IdentityViolation as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IDENTITY
    except (CapExceededError, SizeGuardError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (GridError, CacheError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
