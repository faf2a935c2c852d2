#!/usr/bin/env python3
"""
Result Analyzer - summarise the latest interval resolution run
"""

import glob
import json
from collections import defaultdict

from gridwalk import config
from gridwalk.bounds import classify
from gridwalk.grid_core import GridDims


def load_results(results_dir=None):
    """Load resolution_results.json from the most recent timestamped directory."""
    results_dir = results_dir or config.RESULTS_DIR
    timestamp_dirs = sorted(glob.glob(f"{results_dir}/[0-9]*_[0-9]*"))
    if not timestamp_dirs:
        return None, None

    latest_dir = timestamp_dirs[-1]
    try:
        with open(f"{latest_dir}/resolution_results.json") as f:
            return latest_dir, json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        print(f"WARNING: cannot read results in {latest_dir}: {e}")
        return latest_dir, None


def group_by_case(results):
    """case -> endpoint -> list of 'mxn' labels."""
    grouped = defaultdict(lambda: defaultdict(list))
    for entry in results:
        dims = GridDims(entry["m"], entry["n"])
        case, _ = classify(dims)
        grouped[case][entry["endpoint"]].append(str(dims))
    return grouped


def print_report(results):
    print("\n" + "="*80)
    print("  ENDPOINTS BY CASE")
    print("="*80 + "\n")

    print(f"{'Case':<14} {'Endpoint':<10} {'Grids'}")
    print("-" * 80)
    for case, endpoints in sorted(group_by_case(results).items()):
        for endpoint, grids in sorted(endpoints.items()):
            print(f"{case:<14} {endpoint:<10} {', '.join(grids)}")

    squares = [e for e in results if e.get("conjecture") is not None]
    print("\n" + "="*80)
    print("  McNEIL CONJECTURE")
    print("="*80 + "\n")
    if not squares:
        print("No square grids in this run.")
    for e in squares:
        verdict = "match" if e["conjecture_match"] else "MISMATCH"
        print(f"n={e['m']:<4} M={e['optimum']:<8} conjecture={e['conjecture']:<8} {verdict}")


def main():
    latest_dir, results = load_results()
    if results is None:
        print("ERROR: No results found. Run demo.py first.")
        return
    print(f"Loading results from: {latest_dir}")
    print_report(results)


if __name__ == "__main__":
    main()
