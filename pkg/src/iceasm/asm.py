"""Alternating sign matrices: validation, symmetries, and the ice bijection.

Matrices are stored 0-based as tuples of tuples; helper accessors take the
1-based indices used in all docstrings.  A square {-1,0,1} matrix is an ASM
iff every row- and column-prefix sum lies in {0,1} and every full line sums
to 1.

The quarter-turn relation used throughout is

    M[i][j] == M[j][n+1-i]      (1-based),

i.e. invariance under rotation by 90 degrees.  An ASM of size 4N+2 is
quasi-invariant (class "qqt") when the relation holds outside the four
central cells and those four cells form (0,-1,-1,0) or (1,0,0,1).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence, Tuple

Matrix = Tuple[Tuple[int, ...], ...]


class AsmError(ValueError):
    pass


class CenterPattern(Enum):
    NEG = "neg"     # (0, -1, -1, 0)
    POS = "pos"     # (1, 0, 0, 1)
    OTHER = "other"


@dataclass(frozen=True)
class Asm:
    entries: Matrix

    @property
    def n(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> int:
        """1-based accessor."""
        return self.entries[i - 1][j - 1]

    def rows(self) -> Matrix:
        return self.entries

    def __str__(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.entries)


def validate(matrix: Sequence[Sequence[int]]) -> Asm:
    """Check the ASM conditions, naming the offending line on failure."""
    n = len(matrix)
    if n == 0:
        raise AsmError("empty matrix")
    rows = []
    for i, row in enumerate(matrix):
        if len(row) != n:
            raise AsmError(f"row {i + 1} has length {len(row)}, want {n}")
        rows.append(tuple(int(v) for v in row))
    for i, row in enumerate(rows):
        s = 0
        for j, v in enumerate(row):
            if v not in (-1, 0, 1):
                raise AsmError(f"entry ({i + 1},{j + 1}) = {v} not in {{-1,0,1}}")
            s += v
            if s not in (0, 1):
                raise AsmError(f"row {i + 1}: prefix sum {s} outside {{0,1}} at column {j + 1}")
        if s != 1:
            raise AsmError(f"row {i + 1} sums to {s}, want 1")
    for j in range(n):
        s = 0
        for i in range(n):
            s += rows[i][j]
            if s not in (0, 1):
                raise AsmError(f"column {j + 1}: prefix sum {s} outside {{0,1}} at row {i + 1}")
        if s != 1:
            raise AsmError(f"column {j + 1} sums to {s}, want 1")
    return Asm(tuple(rows))


def quarter_rotate(m: Asm) -> Asm:
    """Rotate by 90 degrees: output (i,j) = input (j, n+1-i), 1-based.

    The result is always a sign matrix but need not be an ASM; callers
    re-validate when they need one.
    """
    n = m.n
    e = m.entries
    return Asm(tuple(tuple(e[j][n - 1 - i] for j in range(n)) for i in range(n)))


def half_rotate(m: Asm) -> Asm:
    n = m.n
    e = m.entries
    return Asm(tuple(tuple(e[n - 1 - i][n - 1 - j] for j in range(n)) for i in range(n)))


def center_pattern(m: Asm) -> CenterPattern:
    """Classify the four central entries of a size-(4N+2) matrix."""
    n = m.n
    if n % 4 != 2:
        raise AsmError(f"center pattern needs size = 2 mod 4, got {n}")
    c = n // 2 - 1  # 0-based index of row/col 2N+1
    quad = (m.entries[c][c], m.entries[c][c + 1],
            m.entries[c + 1][c], m.entries[c + 1][c + 1])
    if quad == (0, -1, -1, 0):
        return CenterPattern.NEG
    if quad == (1, 0, 0, 1):
        return CenterPattern.POS
    return CenterPattern.OTHER


@dataclass(frozen=True)
class SymmetryInfo:
    is_ht: bool
    is_qt: bool
    qqt_pattern: Optional[CenterPattern]  # None unless a genuine quasi-QT matrix


def classify_symmetries(m: Asm) -> SymmetryInfo:
    n = m.n
    e = m.entries
    is_ht = all(e[n - 1 - i][n - 1 - j] == e[i][j] for i in range(n) for j in range(n))
    rot = quarter_rotate(m)
    is_qt = rot.entries == e

    qqt: Optional[CenterPattern] = None
    if n % 4 == 2:
        c = n // 2 - 1
        central = {(c, c), (c, c + 1), (c + 1, c), (c + 1, c + 1)}
        outside_ok = all(
            rot.entries[i][j] == e[i][j]
            for i in range(n) for j in range(n)
            if (i, j) not in central
        )
        if outside_ok:
            pat = center_pattern(m)
            if pat is not CenterPattern.OTHER:
                qqt = pat
    return SymmetryInfo(is_ht=is_ht, is_qt=is_qt, qqt_pattern=qqt)


# ---------------------------------------------------------------------------
# The bijection with square-ice orientations under domain wall boundaries.
#
# Edge conventions (rows indexed 1..n top to bottom, columns 1..n left to
# right, stored 0-based):
#   h_right[i][j], j = 0..n : the horizontal edge of row i+1 between columns
#       j and j+1 (j = 0 is the left boundary stub) points toward larger
#       column index.
#   v_down[i][j], i = 0..n : the vertical edge of column j+1 between rows i
#       and i+1 points toward larger row index.
# Domain wall: horizontal boundary stubs point into the grid, vertical
# boundary stubs point out.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FullIceState:
    n: int
    h_right: Tuple[Tuple[bool, ...], ...]  # n rows, n+1 edges each
    v_down: Tuple[Tuple[bool, ...], ...]   # n+1 rows, n edges each

    def vertex_in_edges(self, i: int, j: int) -> Tuple[bool, bool, bool, bool]:
        """(east_in, north_in, west_in, south_in) at 0-based vertex (i, j)."""
        west_in = self.h_right[i][j]
        east_in = not self.h_right[i][j + 1]
        north_in = self.v_down[i][j]
        south_in = not self.v_down[i + 1][j]
        return east_in, north_in, west_in, south_in


class IceError(ValueError):
    pass


def check_ice_invariants(s: FullIceState) -> None:
    n = s.n
    for i in range(n):
        if not s.h_right[i][0]:
            raise IceError(f"left stub of row {i + 1} must point into the grid")
        if s.h_right[i][n]:
            raise IceError(f"right stub of row {i + 1} must point into the grid")
    for j in range(n):
        if s.v_down[0][j]:
            raise IceError(f"top stub of column {j + 1} must point out of the grid")
        if not s.v_down[n][j]:
            raise IceError(f"bottom stub of column {j + 1} must point out of the grid")
    for i in range(n):
        for j in range(n):
            if sum(s.vertex_in_edges(i, j)) != 2:
                raise IceError(f"vertex ({i + 1},{j + 1}) violates the two-in two-out rule")


def ice_orientation(m: Asm) -> FullIceState:
    """Lift an ASM to its square-ice orientation via prefix sums."""
    n = m.n
    e = m.entries
    h_right = []
    for i in range(n):
        s = 0
        row = [True]  # prefix sum 0 at the left boundary
        for j in range(n):
            s += e[i][j]
            row.append(s == 0)
        h_right.append(tuple(row))
    v_down = [tuple(False for _ in range(n))]
    sums = [0] * n
    for i in range(n):
        row = []
        for j in range(n):
            sums[j] += e[i][j]
            row.append(sums[j] == 1)
        v_down.append(tuple(row))
    return FullIceState(n, tuple(h_right), tuple(v_down))


def asm_from_ice(s: FullIceState) -> Asm:
    """Inverse of ice_orientation; checks the ice invariants first."""
    check_ice_invariants(s)
    n = s.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(int(s.h_right[i][j]) - int(s.h_right[i][j + 1]))
        rows.append(row)
    return validate(rows)
