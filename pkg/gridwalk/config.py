"""
Runtime configuration and logging setup for gridwalk.

Every knob is read once from the environment, with a default. CLI flags
override these values.
"""

import logging
import os
import sys

from pythonjsonlogger import jsonlogger


# =============================
# CONFIG
# =============================

def getenv(name, default):
    return os.getenv(name, default)


# Subset DP needs 2^N * N 16-bit cells; 22 cells is ~185 MB, 23 would be ~386 MB
HARD_CAP = 22
CELL_CAP = min(int(getenv("GRIDWALK_CELL_CAP", "20")), HARD_CAP)

WORKERS = max(1, int(getenv("GRIDWALK_WORKERS", "4")))

CACHE_PATH = getenv("GRIDWALK_CACHE", "results/cache.json")
RESULTS_DIR = getenv("GRIDWALK_RESULTS_DIR", "results")

LOG_LEVEL = getenv("GRIDWALK_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = getenv("GRIDWALK_LOG_FORMAT", "plain").lower()

BFILE_URL = getenv("GRIDWALK_BFILE_URL", "https://oeis.org/A179094/b179094.txt")
FETCH_TIMEOUT = float(getenv("GRIDWALK_FETCH_TIMEOUT", "10"))

PLAIN_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"


def setup_logging(level=None, fmt=None):
    """Install a single stderr handler on the gridwalk logger tree.

    Data goes to stdout, so logging must never write there.
    """
    level = (level or LOG_LEVEL).upper()
    fmt = (fmt or LOG_FORMAT).lower()

    handler = logging.StreamHandler(sys.stderr)
    if fmt == "json":
        handler.setFormatter(jsonlogger.JsonFormatter(PLAIN_FORMAT))
    else:
        handler.setFormatter(logging.Formatter(PLAIN_FORMAT))

    root = logging.getLogger("gridwalk")
    for h in list(root.handlers):
        root.removeHandler(h)
    root.addHandler(handler)
    root.setLevel(level)
    root.propagate = False
    return root
