"""
Reference data: OEIS b-files and the local cache of solved instances.

b-file lines are "index value"; '#' comments and blank lines are ignored.
The cache is a versioned JSON document holding one record per grid, keyed by
the orientation with m <= n.
"""

import json
import logging
import os
import re
from datetime import datetime, timezone
from typing import Dict, Iterator, List, Optional

import requests
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator
from tenacity import retry, retry_if_exception_type, stop_after_attempt, wait_fixed

from gridwalk import config
from gridwalk.bounds import lower_target, mcneil, upper_bound
from gridwalk.grid_core import GridDims, GridError, ParseError


log = logging.getLogger("gridwalk.reference")

CACHE_VERSION = 1

_INT_TOKEN = re.compile(r"^[+-]?[0-9]+$")


class BFileError(ParseError):
    pass


class DuplicateIndexError(BFileError):
    pass


class FetchError(GridError):
    pass


class CacheError(GridError):
    pass


class CacheIOError(CacheError):
    pass


class CacheFormatError(CacheError):
    pass


class CacheValidationError(CacheFormatError):
    pass


# =============================
# B-FILES
# =============================

class SequenceTable(BaseModel):
    model_config = ConfigDict(frozen=True)

    entries: Dict[int, int] = {}

    @field_validator("entries")
    @classmethod
    def _valid_entries(cls, entries):
        for index, value in entries.items():
            if index < 1:
                raise ValueError(f"index {index} is below 1")
            if value < 0:
                raise ValueError(f"value {value} at index {index} is negative")
        return dict(sorted(entries.items()))

    def __len__(self):
        return len(self.entries)


def parse_bfile(text: str) -> SequenceTable:
    entries: Dict[int, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) != 2 or not all(_INT_TOKEN.match(t) for t in tokens):
            raise BFileError(f"expected 'index value', got {stripped!r}", line=lineno)
        index, value = int(tokens[0]), int(tokens[1])
        if index < 1:
            raise BFileError(f"index {index} is below 1", line=lineno)
        if value < 0:
            raise BFileError(f"value {value} is negative", line=lineno)
        if index in entries:
            raise DuplicateIndexError(f"index {index} appears more than once", line=lineno)
        entries[index] = value
    return SequenceTable(entries=entries)


def render_bfile(table: SequenceTable) -> str:
    return "".join(f"{index} {value}\n" for index, value in table.entries.items())


@retry(
    stop=stop_after_attempt(3),
    wait=wait_fixed(2),
    retry=retry_if_exception_type(requests.RequestException),
    reraise=True,
)
def _download(url: str, timeout: float) -> str:
    r = requests.get(url, timeout=timeout)
    r.raise_for_status()
    return r.text


def fetch_bfile(url: Optional[str] = None, timeout: Optional[float] = None) -> SequenceTable:
    url = url or config.BFILE_URL
    log.info(f"fetching b-file url={url}")
    try:
        text = _download(url, timeout or config.FETCH_TIMEOUT)
    except requests.RequestException as e:
        log.error(f"b-file download failed url={url} error={e}")
        raise FetchError(f"cannot download {url}: {e}") from e
    return parse_bfile(text)


# =============================
# CONJECTURE COMPARISON
# =============================

class ComparisonRow(BaseModel):
    n: int
    value: int
    conjecture: int
    match: bool
    solved: Optional[int] = None


class ConjectureComparison(BaseModel):
    rows: List[ComparisonRow] = []
    skipped: List[int] = []

    @property
    def matches(self) -> int:
        return sum(1 for row in self.rows if row.match)

    @property
    def mismatches(self) -> int:
        return len(self.rows) - self.matches

    def describe(self) -> str:
        lines = []
        for row in self.rows:
            verdict = "match" if row.match else "MISMATCH"
            line = f"n={row.n} value={row.value} conjecture={row.conjecture} {verdict}"
            if row.solved is not None:
                line += f" solved={row.solved} {'agrees' if row.solved == row.value else 'DISAGREES'}"
            lines.append(line)
        for index in self.skipped:
            lines.append(f"n={index} skipped (conjecture starts at n=2)")
        lines.append(f"{self.matches}/{len(self.rows)} match, {self.mismatches} mismatch")
        return "\n".join(lines) + "\n"


def compare_with_conjecture(table: SequenceTable, solved: Optional[Dict[int, int]] = None) -> ConjectureComparison:
    """Compare each a(n), n >= 2, with McNeil's value; `solved` maps n to an exact n x n optimum."""
    solved = solved or {}
    rows, skipped = [], []
    for index in sorted(table.entries):
        value = table.entries[index]
        if index < 2:
            skipped.append(index)
            continue
        expected = mcneil(index)
        rows.append(ComparisonRow(n=index, value=value, conjecture=expected, match=value == expected, solved=solved.get(index)))
    return ConjectureComparison(rows=rows, skipped=skipped)


# =============================
# RESULTS CACHE
# =============================

class CacheRecord(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    m: int
    n: int
    optimum: int
    method: str
    timestamp: str

    @field_validator("m", "n")
    @classmethod
    def _positive(cls, v):
        if v < 1:
            raise ValueError("grid dimensions must be positive")
        return v

    @property
    def dims(self) -> GridDims:
        return GridDims(self.m, self.n)


class ResultsCache:
    """In-memory view of the cache file; one record per canonical dims."""

    def __init__(self, records=(), status="new"):
        self.status = status
        self._records: Dict[GridDims, CacheRecord] = {}
        for rec in records:
            self.add(rec)

    def add(self, rec: CacheRecord):
        key = rec.dims.canonical()
        if (rec.m, rec.n) != tuple(key):
            rec = rec.model_copy(update={"m": key.m, "n": key.n})
        if key in self._records:
            raise CacheValidationError(f"more than one record for {key}")
        _check_sandwich(rec)
        self._records[key] = rec

    def record(self, dims: GridDims, optimum: int, method: str, timestamp: Optional[str] = None) -> CacheRecord:
        key = dims.canonical()
        stamp = timestamp or datetime.now(timezone.utc).isoformat(timespec="seconds")
        rec = CacheRecord(m=key.m, n=key.n, optimum=optimum, method=str(method), timestamp=stamp)
        _check_sandwich(rec)
        self._records[key] = rec
        return rec

    def lookup(self, dims: GridDims) -> Optional[CacheRecord]:
        return self._records.get(dims.canonical())

    def square_optima(self) -> Dict[int, int]:
        return {key.m: rec.optimum for key, rec in self._records.items() if key.m == key.n}

    def __iter__(self) -> Iterator[CacheRecord]:
        for key in sorted(self._records):
            yield self._records[key]

    def __len__(self):
        return len(self._records)

    def __eq__(self, other):
        if not isinstance(other, ResultsCache):
            return NotImplemented
        return list(self) == list(other)

    def to_document(self) -> dict:
        return {"version": CACHE_VERSION, "records": [rec.model_dump() for rec in self]}


def _check_sandwich(rec: CacheRecord):
    dims = rec.dims
    lower, upper = lower_target(dims), upper_bound(dims)
    if not lower <= rec.optimum <= upper:
        raise CacheValidationError(f"record for {dims} has optimum {rec.optimum} outside [{lower}, {upper}]")


def load_cache(path: str) -> ResultsCache:
    if not os.path.exists(path):
        log.info(f"cache not found path={path}")
        return ResultsCache(status="not found")
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise CacheIOError(f"cannot read cache {path}: {e}") from e
    except UnicodeDecodeError as e:
        raise CacheFormatError(f"cache {path} is not UTF-8: byte {e.start} cannot be decoded") from e

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise CacheFormatError(f"cache {path} is not valid JSON: {e}") from e
    if not isinstance(doc, dict) or not isinstance(doc.get("records"), list):
        raise CacheFormatError(f"cache {path} must be an object with a 'records' list")
    if doc.get("version") != CACHE_VERSION:
        raise CacheFormatError(f"cache {path} has version {doc.get('version')!r}, expected {CACHE_VERSION}")

    records = []
    for pos, item in enumerate(doc["records"]):
        try:
            records.append(CacheRecord.model_validate(item))
        except ValidationError as e:
            raise CacheFormatError(f"cache {path} record {pos} is malformed: {e}") from e
    cache = ResultsCache(records, status="loaded")
    log.info(f"cache loaded path={path} records={len(cache)}")
    return cache


def save_cache(path: str, cache: ResultsCache):
    text = json.dumps(cache.to_document(), indent=2) + "\n"
    directory = os.path.dirname(path)
    tmp = path + ".tmp"
    try:
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(tmp, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp, path)
    except OSError as e:
        raise CacheIOError(f"cannot write cache {path}: {e}") from e
    log.info(f"cache saved path={path} records={len(cache)}")
