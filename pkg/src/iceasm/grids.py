"""The five ice-grid families and their partition functions.

Geometry convention: crossings sit at (p, h) = (column position, height),
both 1-based, heights increasing upward; slot 0=E, 1=N, 2=W, 3=S.  Every
crossing is the intersection of a horizontal half-line (parameter
`rowvar`) and a vertical half-line (`colvar`) and carries the quotient
rowvar/colvar as its parameter, normalized per icegraph.

Families (n is the ASM size):

* dwbc, n=N       - N x N grid, rows x1..xN (bottom up), columns
                    x(N+1)..x(2N); horizontal stubs in, vertical out.

* ht, n=2N        - left half of the 2N x 2N grid: 2N rows x N columns.
                    Rows r and 2N+1-r are one bent line (plain U-turn arcs
                    on the right); the innermost pair carries x (row N)
                    and y (row N+1), the split sitting on its arc.

* ht, n=2N+1      - N full columns plus the lower half of the middle
                    column (y, rightmost); row pairs h and 2N+2-h bent
                    through plain right arcs; the middle row (x) turns
                    into the y column through a plain corner at the
                    rotation center (weight 1, flow-through).

* qt, n=4N or 4N+2 - one quadrant (m = n/2): every line enters as row h,
                    U-turns through a degree-2 dot (the 90-degree fold
                    forces both cut edges out or both in), and descends
                    as column h.  The innermost line is split into x
                    (row m) and y (column m); at the quadrant corner it
                    passes through a dot when m is even and through a
                    plain corner when m is odd.

The `lift` rule stored on each edge maps a full-grid ice state of the
matching symmetric ASM to this graph's orientation bit, giving a second,
independent way to produce the state set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .asm import FullIceState, ice_orientation
from .counting import SymClass, enumerate_class
from .cyclo import CycloRational, OMEGA
from .icegraph import (EdgeSpec, GraphSpec, VertexKind, VertexSpec,
                       enumerate_states, state_weight_poly, state_weight_value)
from .laurent import LaurentPoly

E, N, W, S = 0, 1, 2, 3


@dataclass(frozen=True)
class GridSpec:
    family: str
    size: int
    graph: GraphSpec
    names: Tuple[str, ...]
    sym_class: SymClass
    central_edge: Optional[int]          # edge whose orientation defines the split
    tags: Optional[Dict[str, bool]]      # tag name -> required orientation bit
    x_slot: Optional[int]                # variable slot of the split line's x half
    y_slot: Optional[int]


class _Builder:
    def __init__(self, arity: int, names: Sequence[str]) -> None:
        self.arity = arity
        self.names = tuple(names)
        self.vertices: List[VertexSpec] = []
        self.edges: List[EdgeSpec] = []
        self.vmap: Dict[object, int] = {}

    def crossing(self, key: object, row_slot: int, col_slot: int) -> int:
        exps = [0] * self.arity
        exps[row_slot] += 1
        exps[col_slot] -= 1
        vid = len(self.vertices)
        self.vertices.append(VertexSpec(VertexKind.CROSSING, tuple(exps)))
        self.vmap[key] = vid
        return vid

    def dot(self, key: object) -> int:
        vid = len(self.vertices)
        self.vertices.append(VertexSpec(VertexKind.DOT))
        self.vmap[key] = vid
        return vid

    def edge(self, a, b, fixed=None, tag="", lift=None) -> int:
        def resolve(end):
            if end is None:
                return None
            key, slot = end
            return (self.vmap[key], slot)

        self.edges.append(EdgeSpec(resolve(a), resolve(b), fixed, tag, lift))
        return len(self.edges) - 1

    def graph(self) -> GraphSpec:
        return GraphSpec(self.arity, self.vertices, self.edges, self.names)


def _names(k: int, with_xy: bool) -> Tuple[str, ...]:
    base = ["a"] + [f"x{i}" for i in range(1, k + 1)]
    if with_xy:
        base += ["x", "y"]
    return tuple(base)


# ---------------------------------------------------------------------------
# Builders.
# ---------------------------------------------------------------------------


def build_dwbc(n_param: int) -> GridSpec:
    n = n_param
    names = _names(2 * n, with_xy=False)
    b = _Builder(len(names), names)
    for h in range(1, n + 1):
        for p in range(1, n + 1):
            b.crossing((p, h), row_slot=h, col_slot=n + p)
    for h in range(1, n + 1):
        b.edge(((1, h), W), None, fixed=False, tag=f"w{h}", lift=("h", n - h, 0, True))
        for p in range(1, n):
            b.edge(((p, h), E), ((p + 1, h), W), lift=("h", n - h, p, False))
        b.edge(((n, h), E), None, fixed=False, tag=f"e{h}", lift=("h", n - h, n, False))
    for p in range(1, n + 1):
        b.edge(((p, 1), S), None, fixed=True, tag=f"s{p}", lift=("v", n, p - 1, False))
        for h in range(1, n):
            b.edge(((p, h), N), ((p, h + 1), S), lift=("v", n - h, p - 1, True))
        b.edge(((p, n), N), None, fixed=True, tag=f"n{p}", lift=("v", 0, p - 1, True))
    return GridSpec("dwbc", n, b.graph(), names, SymClass.PLAIN, None, None, None, None)


def build_ht_even(n_param: int) -> GridSpec:
    big = n_param  # half-turn ASM size 2N
    n2 = big // 2  # N
    n = big
    names = _names(big - 1, with_xy=True)
    x_slot, y_slot = big, big + 1

    def rowvar(h: int) -> int:
        if h <= n2 - 1:
            return h
        if h == n2:
            return x_slot
        if h == n2 + 1:
            return y_slot
        return big + 1 - h

    b = _Builder(len(names), names)
    for h in range(1, big + 1):
        for p in range(1, n2 + 1):
            b.crossing((p, h), row_slot=rowvar(h), col_slot=n2 - 1 + p)
    central = None
    for h in range(1, big + 1):
        b.edge(((1, h), W), None, fixed=False, lift=("h", n - h, 0, True))
        for p in range(1, n2):
            b.edge(((p, h), E), ((p + 1, h), W), lift=("h", n - h, p, False))
    for h in range(1, n2 + 1):
        eid = b.edge(((n2, h), E), ((n2, big + 1 - h), E), lift=("h", n - h, n2, False))
        if h == n2:
            central = eid
    for p in range(1, n2 + 1):
        b.edge(((p, 1), S), None, fixed=True, lift=("v", n, p - 1, False))
        for h in range(1, big):
            b.edge(((p, h), N), ((p, h + 1), S), lift=("v", n - h, p - 1, True))
        b.edge(((p, big), N), None, fixed=True, lift=("v", 0, p - 1, True))
    return GridSpec("ht", big, b.graph(), names, SymClass.HT, central,
                    {"up": True, "down": False}, x_slot, y_slot)


def build_ht_odd(n_param: int) -> GridSpec:
    big = n_param           # half-turn ASM size 2N+1
    half = big // 2         # N  (0 allowed: the single-cell matrix)
    n = big
    names = _names(big - 1, with_xy=True)
    x_slot, y_slot = big, big + 1

    if half == 0:
        edges = [EdgeSpec(None, None, fixed=True, tag="line", lift=("h", 0, 0, False))]
        graph = GraphSpec(len(names), [], edges, names)
        return GridSpec("ht", 1, graph, names, SymClass.HT, 0,
                        {"downright": True, "upleft": False}, x_slot, y_slot)

    def rowvar(h: int) -> int:
        if h <= half:
            return h
        if h == half + 1:
            return x_slot
        return big + 1 - h

    def colvar(p: int) -> int:
        return half + p if p <= half else y_slot

    b = _Builder(len(names), names)
    for p in range(1, half + 1):
        for h in range(1, big + 1):
            b.crossing((p, h), row_slot=rowvar(h), col_slot=colvar(p))
    for h in range(1, half + 1):
        b.crossing((half + 1, h), row_slot=rowvar(h), col_slot=y_slot)

    for h in range(1, big + 1):
        b.edge(((1, h), W), None, fixed=False, lift=("h", n - h, 0, True))
        pmax = half + 1 if h <= half else half
        for p in range(1, pmax):
            b.edge(((p, h), E), ((p + 1, h), W), lift=("h", n - h, p, False))
    for h in range(1, half + 1):
        b.edge(((half + 1, h), E), ((half, big + 1 - h), E),
               lift=("h", n - h, half + 1, False))
    central = b.edge(((half, half + 1), E), ((half + 1, half), N),
                     lift=("h", half, half, False))
    for p in range(1, half + 1):
        b.edge(((p, 1), S), None, fixed=True, lift=("v", n, p - 1, False))
        for h in range(1, big):
            b.edge(((p, h), N), ((p, h + 1), S), lift=("v", n - h, p - 1, True))
        b.edge(((p, big), N), None, fixed=True, lift=("v", 0, p - 1, True))
    b.edge(((half + 1, 1), S), None, fixed=True, lift=("v", n, half, False))
    for h in range(1, half):
        b.edge(((half + 1, h), N), ((half + 1, h + 1), S), lift=("v", n - h, half, True))
    return GridSpec("ht", big, b.graph(), names, SymClass.HT, central,
                    {"downright": True, "upleft": False}, x_slot, y_slot)


def build_qt(n_param: int) -> GridSpec:
    big = n_param  # ASM size, 4N or 4N+2
    m = big // 2   # quadrant side
    n = big
    names = _names(m - 1, with_xy=True)
    x_slot, y_slot = m, m + 1

    def rowvar(h: int) -> int:
        return h if h <= m - 1 else x_slot

    def colvar(p: int) -> int:
        return p if p <= m - 1 else y_slot

    b = _Builder(len(names), names)
    for p in range(1, m + 1):
        for h in range(1, m + 1):
            if p == m and h == m:
                continue
            b.crossing((p, h), row_slot=rowvar(h), col_slot=colvar(p))

    for h in range(1, m + 1):
        b.edge(((1, h), W), None, fixed=False, lift=("h", n - h, 0, True))
        pmax = m if h <= m - 1 else m - 1
        for p in range(1, pmax):
            b.edge(((p, h), E), ((p + 1, h), W), lift=("h", n - h, p, False))
    # U-turn arcs of the 90-degree fold: one reversal dot per line.
    for h in range(1, m):
        b.dot(("arc", h))
        b.edge(((m, h), E), (("arc", h), 0), lift=("h", n - h, m, False))
        b.edge((("arc", h), 1), ((h, m), N), lift=("v", m, h - 1, False))
    if m % 2 == 0:
        b.dot("center")
        central = b.edge(((m - 1, m), E), ("center", 0), lift=("h", m, m - 1, False))
        b.edge(("center", 1), ((m, m - 1), N), lift=("v", m + 1, m - 1, False))
        tags = {"conv": True, "div": False}
        sym = SymClass.QT
    else:
        central = b.edge(((m - 1, m), E), ((m, m - 1), N), lift=("h", m, m - 1, False))
        tags = {"downright": True, "upleft": False}
        sym = SymClass.QQT
    for p in range(1, m + 1):
        b.edge(((p, 1), S), None, fixed=True, lift=("v", n, p - 1, False))
        hmax = m - 1 if p <= m - 1 else m - 2
        for h in range(1, hmax + 1):
            b.edge(((p, h), N), ((p, h + 1), S), lift=("v", n - h, p - 1, True))
    return GridSpec("qt", big, b.graph(), names, sym, central, tags, x_slot, y_slot)


def build_grid(family: str, size: int) -> GridSpec:
    """Construct a family instance; sizes must match the family parity."""
    if size < 1:
        raise ValueError("size must be positive")
    if family == "dwbc":
        return build_dwbc(size)
    if family == "ht":
        return build_ht_even(size) if size % 2 == 0 else build_ht_odd(size)
    if family == "qt":
        if size % 2 != 0 or size < 4:
            raise ValueError(f"qt family needs even size >= 4, got {size}")
        return build_qt(size)
    raise ValueError(f"unknown family {family!r} (want dwbc, ht, or qt)")


# ---------------------------------------------------------------------------
# States: backtracking engine and the ASM-lift engine.
# ---------------------------------------------------------------------------


def grid_states(spec: GridSpec) -> Iterator[Tuple[bool, ...]]:
    yield from enumerate_states(spec.graph)


def _lift_bit(s: FullIceState, rule) -> bool:
    kind, i, j, flip = rule
    bit = s.h_right[i][j] if kind == "h" else s.v_down[i][j]
    return bit != flip


def asm_lifted_states(spec: GridSpec) -> Iterator[Tuple[bool, ...]]:
    """States obtained by restricting lifted symmetric ASMs to the domain."""
    for mat in enumerate_class(spec.sym_class, spec.size):
        full = ice_orientation(mat)
        bits = []
        for e in spec.graph.edges:
            assert e.lift is not None, "family edge without a lift rule"
            bit = _lift_bit(full, e.lift)
            if e.fixed is not None and bit != e.fixed:
                raise AssertionError("lifted state contradicts a fixed boundary edge")
            bits.append(bit)
        yield tuple(bits)


def state_tag(spec: GridSpec, state: Sequence[bool]) -> str:
    if spec.central_edge is None or spec.tags is None:
        raise ValueError(f"family {spec.family} has no central split")
    bit = state[spec.central_edge]
    for name, want in spec.tags.items():
        if bit == want:
            return name
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# Partition functions.
# ---------------------------------------------------------------------------


def partition_function(
    spec: GridSpec,
    values: Optional[Mapping[int, CycloRational]] = None,
    tag: Optional[str] = None,
    omega: bool = False,
) -> LaurentPoly | CycloRational:
    """Sum of state weights, optionally restricted to one central-edge tag.

    Symbolic by default (generic a in slot 0); `omega=True` specializes
    a to exp(i*pi/3) afterwards.  With `values` (slot -> nonzero field
    element, slot 0 = a) the sum is evaluated exactly instead.
    """
    want: Optional[bool] = None
    if tag is not None:
        if spec.tags is None or tag not in spec.tags:
            raise ValueError(f"unknown central tag {tag!r} for family {spec.family}")
        want = spec.tags[tag]
    eff: Dict[int, CycloRational] = dict(values) if values else {}
    if omega:
        eff.setdefault(0, OMEGA)
    if len(eff) == spec.graph.arity:
        total_v = CycloRational(0)
        for st in enumerate_states(spec.graph):
            if want is not None and st[spec.central_edge] != want:
                continue
            total_v = total_v + state_weight_value(spec.graph, st, eff)
        return total_v
    total = LaurentPoly.zero(spec.graph.arity, spec.names)
    for st in enumerate_states(spec.graph):
        if want is not None and st[spec.central_edge] != want:
            continue
        total = total + state_weight_poly(spec.graph, st, eff or None)
    return total


def all_ones_values(spec: GridSpec, a: CycloRational = OMEGA) -> Dict[int, CycloRational]:
    vals = {0: a}
    for slot in range(1, spec.graph.arity):
        vals[slot] = CycloRational(1)
    return vals


def state_count(spec: GridSpec) -> int:
    return sum(1 for _ in enumerate_states(spec.graph))
