"""Exhaustive enumeration and exact counting of ASM symmetry classes.

Two engines live here:

* plain ASMs are generated row by row through their partial-column-sum
  vectors, bitmask encoded: row i of the matrix is s_i - s_{i-1} where
  s_i is a 0/1 vector with i ones, and validity of the row is exactly
  the condition that prefix sums of the difference stay in {0,1}.
  Counting runs on the same transition graph by memoized recursion, so
  no matrix is ever materialized.

* symmetric classes (half-turn, quarter-turn, quasi-quarter-turn) walk
  the matrix cell by cell in scan order.  Each rotation orbit is decided
  at its first cell; later orbit cells are forced, which confines the
  search to a fundamental domain.  For the quasi class the four central
  cells are branched over the two legal patterns.

Counts are arbitrary-precision integers.  Sizes above MAX_SIZE are
refused up front.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .asm import Asm, CenterPattern, validate

log = logging.getLogger(__name__)

MAX_SIZE = 12


class SymClass(Enum):
    PLAIN = "plain"
    HT = "ht"
    QT = "qt"
    QQT = "qqt"
    QQT_NEG = "qqt-neg"
    QQT_POS = "qqt-pos"


class SizeCapError(ValueError):
    pass


class ClassSizeError(ValueError):
    pass


@dataclass(frozen=True)
class CountRecord:
    sym_class: SymClass
    n: int
    count: int
    split: Optional[Tuple[int, int]] = None  # (neg, pos) for the quasi class

    def __post_init__(self) -> None:
        if self.count < 0:
            raise ValueError("negative count")
        if self.split is not None and sum(self.split) != self.count:
            raise ValueError("split does not sum to count")


def _check_size(sym_class: SymClass, n: int) -> None:
    if n < 1:
        raise ClassSizeError(f"size must be positive, got {n}")
    if n > MAX_SIZE:
        raise SizeCapError(f"size {n} exceeds the enumeration cap {MAX_SIZE}")
    if sym_class in (SymClass.QQT, SymClass.QQT_NEG, SymClass.QQT_POS) and n % 4 != 2:
        raise ClassSizeError(f"quasi-quarter-turn class needs size = 2 mod 4, got {n}")


# ---------------------------------------------------------------------------
# Plain engine: bitmask partial-sum rows.
# ---------------------------------------------------------------------------


def _row_successors(n: int, mask: int) -> List[int]:
    """Masks with one extra bit whose difference row is a valid ASM row."""
    out: List[int] = []

    def rec(j: int, cur: int, p: int) -> None:
        if j == n:
            if p == 1:
                out.append(cur)
            return
        old = (mask >> j) & 1
        for b in (0, 1):
            q = p + b - old
            if 0 <= q <= 1:
                rec(j + 1, cur | (b << j), q)

    rec(0, 0, 0)
    return out


class _PlainEngine:
    def __init__(self, n: int) -> None:
        self.n = n
        self._succ: Dict[int, List[int]] = {}

    def successors(self, mask: int) -> List[int]:
        s = self._succ.get(mask)
        if s is None:
            s = _row_successors(self.n, mask)
            self._succ[mask] = s
        return s

    def count_from(self, mask: int) -> int:
        full = (1 << self.n) - 1
        memo: Dict[int, int] = {full: 1}

        def rec(m: int) -> int:
            c = memo.get(m)
            if c is None:
                c = sum(rec(m2) for m2 in self.successors(m))
                memo[m] = c
            return c

        return rec(mask)

    def iter_matrices(self, first_mask: Optional[int] = None) -> Iterator[Asm]:
        n = self.n
        full = (1 << n) - 1
        rows: List[Tuple[int, ...]] = []

        def rec(mask: int) -> Iterator[Asm]:
            if len(rows) == n:
                yield Asm(tuple(rows))
                return
            for m2 in self.successors(mask):
                if len(rows) == 0 and first_mask is not None and m2 != first_mask:
                    continue
                rows.append(tuple(((m2 >> j) & 1) - ((mask >> j) & 1) for j in range(n)))
                yield from rec(m2)
                rows.pop()

        assert full == (1 << n) - 1
        yield from rec(0)


# ---------------------------------------------------------------------------
# Symmetric engine: scan-order search over a fundamental domain.
# ---------------------------------------------------------------------------


def _qt_image(n: int, i: int, j: int) -> Tuple[int, int]:
    """0-based version of the quarter-turn relation (i,j) -> (j, n+1-i)."""
    return j, n - 1 - i


def _orbits(n: int, sym_class: SymClass) -> Tuple[List[List[Tuple[int, int]]], Dict[Tuple[int, int], int]]:
    """Rotation orbits in scan order plus a cell -> orbit index map."""
    orbit_of: Dict[Tuple[int, int], int] = {}
    orbits: List[List[Tuple[int, int]]] = []
    for i in range(n):
        for j in range(n):
            if (i, j) in orbit_of:
                continue
            cell = (i, j)
            orbit = [cell]
            cur = cell
            while True:
                if sym_class is SymClass.HT:
                    cur = (n - 1 - cur[0], n - 1 - cur[1])
                else:
                    cur = _qt_image(n, *cur)
                if cur == cell:
                    break
                orbit.append(cur)
            idx = len(orbits)
            orbits.append(orbit)
            for c in orbit:
                orbit_of[c] = idx
    return orbits, orbit_of


_QQT_PATTERNS = {
    CenterPattern.NEG: ((0, -1), (-1, 0)),
    CenterPattern.POS: ((1, 0), (0, 1)),
}


def _iter_symmetric(
    n: int,
    sym_class: SymClass,
    materialize: bool,
    prefix: Optional[Sequence[int]] = None,
) -> Iterator[Tuple[Optional[Asm], Optional[CenterPattern]]]:
    """DFS over the fundamental domain.

    Yields (matrix or None, center pattern or None) per solution; with
    materialize=False the matrix slot is None (pure counting).  `prefix`
    optionally pins the values of the first len(prefix) cells in scan
    order (used to split the search tree across workers).
    """
    quasi = sym_class in (SymClass.QQT, SymClass.QQT_NEG, SymClass.QQT_POS)
    rot_class = SymClass.QT if quasi else sym_class
    _, orbit_of = _orbits(n, rot_class)

    central: frozenset = frozenset()
    if quasi:
        c = n // 2 - 1
        central = frozenset({(c, c), (c, c + 1), (c + 1, c), (c + 1, c + 1)})

    grid = [[0] * n for _ in range(n)]
    assigned_orbit_value: Dict[int, int] = {}
    col_sum = [0] * n
    pattern_choice: List[Optional[CenterPattern]] = [None]

    if sym_class is SymClass.QQT_NEG:
        allowed_patterns = [CenterPattern.NEG]
    elif sym_class is SymClass.QQT_POS:
        allowed_patterns = [CenterPattern.POS]
    else:
        allowed_patterns = [CenterPattern.NEG, CenterPattern.POS]

    def candidates(i: int, j: int) -> Sequence[int]:
        if quasi and (i, j) in central:
            c = n // 2 - 1
            if pattern_choice[0] is None:
                return ()  # handled by the pattern branch below
            return (_QQT_PATTERNS[pattern_choice[0]][i - c][j - c],)
        orb = orbit_of[(i, j)]
        if orb in assigned_orbit_value:
            return (assigned_orbit_value[orb],)
        return (-1, 0, 1)

    def rec(pos: int, row_sum: int) -> Iterator[Tuple[Optional[Asm], Optional[CenterPattern]]]:
        if pos == n * n:
            mat = Asm(tuple(tuple(row) for row in grid)) if materialize else None
            yield mat, pattern_choice[0]
            return
        i, j = divmod(pos, n)
        if j == 0:
            row_sum = 0

        if quasi and (i, j) in central and pattern_choice[0] is None:
            for pat in allowed_patterns:
                pattern_choice[0] = pat
                yield from rec(pos, row_sum)
            pattern_choice[0] = None
            return

        for v in candidates(i, j):
            if prefix is not None and pos < len(prefix) and v != prefix[pos]:
                continue
            r = row_sum + v
            if not 0 <= r <= 1 or (j == n - 1 and r != 1):
                continue
            cs = col_sum[j] + v
            if not 0 <= cs <= 1 or (i == n - 1 and cs != 1):
                continue
            orb = orbit_of[(i, j)]
            fresh = not quasi or (i, j) not in central
            first_of_orbit = fresh and orb not in assigned_orbit_value
            grid[i][j] = v
            col_sum[j] = cs
            if first_of_orbit:
                assigned_orbit_value[orb] = v
            yield from rec(pos + 1, r)
            if first_of_orbit:
                del assigned_orbit_value[orb]
            col_sum[j] = cs - v
            grid[i][j] = 0

    yield from rec(0, 0)


# ---------------------------------------------------------------------------
# Public API.
# ---------------------------------------------------------------------------


def enumerate_class(sym_class: SymClass, n: int) -> Iterator[Asm]:
    """Stream every matrix of the class exactly once."""
    _check_size(sym_class, n)
    if sym_class is SymClass.PLAIN:
        yield from _PlainEngine(n).iter_matrices()
        return
    for mat, _pattern in _iter_symmetric(n, sym_class, materialize=True):
        assert mat is not None
        yield mat


def _count_worker(args: Tuple[str, int, Tuple[int, ...]]) -> Tuple[int, int, int]:
    cls_value, n, prefix = args
    sym_class = SymClass(cls_value)
    neg = pos = total = 0
    for _, pat in _iter_symmetric(n, sym_class, materialize=False, prefix=prefix):
        total += 1
        if pat is CenterPattern.NEG:
            neg += 1
        elif pat is CenterPattern.POS:
            pos += 1
    return total, neg, pos


def _plain_count_worker(args: Tuple[int, int]) -> int:
    n, first_mask = args
    eng = _PlainEngine(n)
    return sum(eng.count_from(m) for m in eng.successors(0) if m == first_mask)


def count_class(sym_class: SymClass, n: int, jobs: int = 1) -> CountRecord:
    """Count the class without materializing matrices."""
    _check_size(sym_class, n)
    if sym_class is SymClass.PLAIN:
        if jobs > 1:
            eng = _PlainEngine(n)
            tasks = [(n, m) for m in eng.successors(0)]
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                total = sum(ex.map(_plain_count_worker, tasks))
        else:
            total = _PlainEngine(n).count_from(0)
        return CountRecord(sym_class, n, total)

    if jobs > 1:
        prefixes = _first_row_prefixes(sym_class, n)
        tasks = [(sym_class.value, n, p) for p in prefixes]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_count_worker, tasks))
        total = sum(p[0] for p in parts)
        neg = sum(p[1] for p in parts)
        pos = sum(p[2] for p in parts)
    else:
        total, neg, pos = _count_worker((sym_class.value, n, ()))
    split = (neg, pos) if sym_class in (SymClass.QQT, SymClass.QQT_NEG, SymClass.QQT_POS) else None
    return CountRecord(sym_class, n, total, split)


def _first_row_prefixes(sym_class: SymClass, n: int) -> List[Tuple[int, ...]]:
    """All consistent assignments of the first matrix row, for work splitting."""
    out: List[Tuple[int, ...]] = []
    seen: set = set()
    for mat, _ in _iter_symmetric(n, sym_class, materialize=True):
        row = mat.entries[0]
        if row not in seen:
            seen.add(row)
            out.append(row)
    # Fall back to a single empty prefix when the class is empty.
    return out or [()]


def neg_center_count_ht(n: int) -> Tuple[int, int]:
    """(matrices with central entry -1, total) over half-turn ASMs of odd size."""
    if n % 2 != 1:
        raise ClassSizeError("central entry needs odd size")
    c = n // 2
    neg = total = 0
    for mat in enumerate_class(SymClass.HT, n):
        total += 1
        if mat.entries[c][c] == -1:
            neg += 1
    return neg, total


# ---------------------------------------------------------------------------
# Persistent count cache: one JSON object per line.
# ---------------------------------------------------------------------------

CACHE_ENV = "ICEASM_CACHE"


def _record_to_json(rec: CountRecord) -> str:
    obj = {"class": rec.sym_class.value, "n": rec.n, "count": str(rec.count)}
    if rec.split is not None:
        obj["split"] = [str(rec.split[0]), str(rec.split[1])]
    return json.dumps(obj, sort_keys=True)


def _record_from_json(line: str) -> CountRecord:
    obj = json.loads(line)
    split = obj.get("split")
    return CountRecord(
        SymClass(obj["class"]),
        int(obj["n"]),
        int(obj["count"]),
        (int(split[0]), int(split[1])) if split is not None else None,
    )


class CountCache:
    """Append-only JSONL cache of count records."""

    def __init__(self, path: Optional[str] = None) -> None:
        self.path = path or os.environ.get(CACHE_ENV) or "counts.jsonl"
        self._records: Dict[Tuple[SymClass, int], CountRecord] = {}
        self._load()

    def _load(self) -> None:
        if not os.path.exists(self.path):
            return
        with open(self.path, "r", encoding="ascii") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = _record_from_json(line)
                except (ValueError, KeyError, json.JSONDecodeError) as exc:
                    log.warning("%s:%d: skipping corrupt cache line (%s)", self.path, lineno, exc)
                    continue
                self._records[(rec.sym_class, rec.n)] = rec

    def lookup(self, sym_class: SymClass, n: int) -> Optional[CountRecord]:
        return self._records.get((sym_class, n))

    def store(self, rec: CountRecord) -> None:
        key = (rec.sym_class, rec.n)
        old = self._records.get(key)
        if old == rec:
            return
        if old is not None and old.count != rec.count:
            log.warning("cache %s: replacing %s with %s", self.path, old, rec)
        self._records[key] = rec
        with open(self.path, "a", encoding="ascii") as fh:
            fh.write(_record_to_json(rec) + "\n")

    def counts(self) -> Dict[Tuple[SymClass, int], CountRecord]:
        return dict(self._records)


def cached_count(sym_class: SymClass, n: int, cache: Optional[CountCache] = None,
                 jobs: int = 1) -> CountRecord:
    if cache is not None:
        hit = cache.lookup(sym_class, n)
        if hit is not None:
            return hit
    rec = count_class(sym_class, n, jobs=jobs)
    if cache is not None:
        cache.store(rec)
    return rec
