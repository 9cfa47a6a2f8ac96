"""Generic square-ice graphs: orientation states and exact partition functions.

A graph has two vertex kinds:

* CROSSING - degree 4, slots 0..3 in counterclockwise order (for grid
  vertices: 0=E, 1=N, 2=W, 3=S).  Ice rule: exactly two incident edges
  point in.  Each crossing carries a parameter monomial `param0`,
  normalized to the angle between slots 0 and 1; moving a parameter to
  an adjacent angle inverts it, so only this normalization is needed.

* DOT - degree 2, both edges point toward it or both away (weight 1).
  A dot placed on a line forces the line's running orientation to
  reverse there.

Weights of a crossing, with u = param0 and a the global parameter:

  in-slots opposite {0,2} or {1,3}          -> sigma(a^2)
  in-slots adjacent {j, j+1}, j odd         -> sigma(a*u)
  in-slots adjacent {j, j+1}, j even        -> sigma(a/u)

(The adjacent-pair rule encodes the usual six-vertex table: the angle
between the two in-edges and the angle between the two out-edges take
the inverted parameter, the two mixed angles take it as is.)

Edges join (vertex, slot) endpoints; an endpoint of None is an open
boundary end.  Orientation of an edge is a boolean: True means directed
from endpoint `a` to endpoint `b`.  Builders place boundary ends at `b`,
so True on a stub means "points out of the graph".
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .cyclo import CycloRational
from .laurent import LaurentPoly

Endpoint = Optional[Tuple[int, int]]  # (vertex id, slot) or None for a boundary end


class VertexKind(Enum):
    CROSSING = "crossing"
    DOT = "dot"


@dataclass(frozen=True)
class VertexSpec:
    kind: VertexKind
    param0: Optional[Tuple[int, ...]] = None  # exponent vector, crossings only


# Lift rules translate a full-grid ice state into an orientation bit:
# ("h", i, j, flip) -> h_right[i][j] xor flip;  ("v", i, j, flip) likewise.
LiftRule = Tuple[str, int, int, bool]


@dataclass(frozen=True)
class EdgeSpec:
    a: Endpoint
    b: Endpoint
    fixed: Optional[bool] = None
    tag: str = ""
    lift: Optional[LiftRule] = None


class GraphSpec:
    """Immutable ice graph; adjacency is derived once at construction."""

    def __init__(self, arity: int, vertices: Sequence[VertexSpec],
                 edges: Sequence[EdgeSpec], names: Optional[Sequence[str]] = None) -> None:
        self.arity = arity
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self.names = tuple(names) if names is not None else None
        slots: List[List[Optional[Tuple[int, bool]]]] = []
        for v in self.vertices:
            nslots = 4 if v.kind is VertexKind.CROSSING else 2
            slots.append([None] * nslots)
        for eid, e in enumerate(self.edges):
            for end, is_a in ((e.a, True), (e.b, False)):
                if end is None:
                    continue
                vid, slot = end
                if slots[vid][slot] is not None:
                    raise ValueError(f"slot {slot} of vertex {vid} used twice")
                slots[vid][slot] = (eid, is_a)
        for vid, ss in enumerate(slots):
            if any(s is None for s in ss):
                raise ValueError(f"vertex {vid} has unwired slots")
        # incident[vid] = ((edge id, edge points AWAY from vid when True), ...) by slot
        self.incident: Tuple[Tuple[Tuple[int, bool], ...], ...] = tuple(
            tuple(s for s in ss if s is not None) for ss in slots
        )

    def free_edges(self) -> List[int]:
        return [i for i, e in enumerate(self.edges) if e.fixed is None]

    def with_fixed(self, overrides: Mapping[int, bool]) -> "GraphSpec":
        edges = [
            replace(e, fixed=overrides[i]) if i in overrides else e
            for i, e in enumerate(self.edges)
        ]
        return GraphSpec(self.arity, self.vertices, edges, self.names)

    def boundary_edges(self) -> Dict[str, int]:
        out = {}
        for i, e in enumerate(self.edges):
            if (e.a is None or e.b is None) and e.tag:
                out[e.tag] = i
        return out


class _Conflict(Exception):
    pass


class _Search:
    """Backtracking orientation search with unit propagation."""

    def __init__(self, g: GraphSpec) -> None:
        self.g = g
        self.orient: List[Optional[bool]] = [e.fixed for e in g.edges]
        # Per vertex, count of (in, out, unassigned).
        self.in_count = [0] * len(g.vertices)
        self.out_count = [0] * len(g.vertices)
        self.unassigned = [len(inc) for inc in g.incident]
        self.trail: List[int] = []
        for eid, o in enumerate(self.orient):
            if o is not None:
                self._register(eid, o)

    def _register(self, eid: int, o: bool) -> None:
        # Counts are updated for both endpoints before any conflict is
        # raised, so an undo after _Conflict stays symmetric.
        e = self.g.edges[eid]
        for end, is_a in ((e.a, True), (e.b, False)):
            if end is None:
                continue
            vid, _ = end
            outgoing = o if is_a else not o
            if outgoing:
                self.out_count[vid] += 1
            else:
                self.in_count[vid] += 1
            self.unassigned[vid] -= 1
        for end in (e.a, e.b):
            if end is not None:
                self._check_vertex(end[0])

    def _unregister(self, eid: int) -> None:
        o = self.orient[eid]
        assert o is not None
        e = self.g.edges[eid]
        for end, is_a in ((e.a, True), (e.b, False)):
            if end is None:
                continue
            vid, _ = end
            outgoing = o if is_a else not o
            if outgoing:
                self.out_count[vid] -= 1
            else:
                self.in_count[vid] -= 1
            self.unassigned[vid] += 1

    def _check_vertex(self, vid: int) -> None:
        kind = self.g.vertices[vid].kind
        if kind is VertexKind.CROSSING:
            if self.in_count[vid] > 2 or self.out_count[vid] > 2:
                raise _Conflict
        else:
            if self.in_count[vid] == 1 and self.out_count[vid] == 1:
                raise _Conflict

    def _forced_moves(self, vid: int) -> List[Tuple[int, bool]]:
        kind = self.g.vertices[vid].kind
        moves = []
        if self.unassigned[vid] == 0:
            return moves
        force_out: Optional[bool] = None
        if kind is VertexKind.CROSSING:
            if self.in_count[vid] == 2:
                force_out = True
            elif self.out_count[vid] == 2:
                force_out = False
        else:
            if self.in_count[vid] == 1:
                force_out = False
            elif self.out_count[vid] == 1:
                force_out = True
        if force_out is None:
            return moves
        for eid, away in self.g.incident[vid]:
            if self.orient[eid] is None:
                moves.append((eid, away if force_out else not away))
        return moves

    def _assign(self, eid: int, o: bool) -> None:
        """Assign one edge and propagate all consequences (trail-recorded)."""
        queue = [(eid, o)]
        while queue:
            cur, val = queue.pop()
            known = self.orient[cur]
            if known is not None:
                if known != val:
                    raise _Conflict
                continue
            self.orient[cur] = val
            self.trail.append(cur)
            self._register(cur, val)
            e = self.g.edges[cur]
            for end in (e.a, e.b):
                if end is None:
                    continue
                queue.extend(self._forced_moves(end[0]))

    def _undo_to(self, mark: int) -> None:
        while len(self.trail) > mark:
            eid = self.trail.pop()
            self._unregister(eid)
            self.orient[eid] = None

    def states(self) -> Iterator[Tuple[bool, ...]]:
        order = [i for i in range(len(self.g.edges)) if self.orient[i] is None]

        def rec(idx: int) -> Iterator[Tuple[bool, ...]]:
            while idx < len(order) and self.orient[order[idx]] is not None:
                idx += 1
            if idx == len(order):
                yield tuple(o for o in self.orient)  # type: ignore[misc]
                return
            eid = order[idx]
            for val in (True, False):
                mark = len(self.trail)
                try:
                    self._assign(eid, val)
                except _Conflict:
                    self._undo_to(mark)
                    continue
                yield from rec(idx + 1)
                self._undo_to(mark)

        # Initial propagation of fixed edges' consequences.
        mark = len(self.trail)
        try:
            for vid in range(len(self.g.vertices)):
                for m_eid, m_val in self._forced_moves(vid):
                    self._assign(m_eid, m_val)
        except _Conflict:
            self._undo_to(mark)
            return
        yield from rec(0)
        self._undo_to(mark)


def enumerate_states(g: GraphSpec) -> Iterator[Tuple[bool, ...]]:
    """All complete orientations satisfying the ice and dot rules."""
    yield from _Search(g).states()


def _in_slots(g: GraphSpec, state: Sequence[bool], vid: int) -> Tuple[int, ...]:
    slots = []
    for slot, (eid, away) in enumerate(g.incident[vid]):
        outgoing = state[eid] if away else not state[eid]
        if not outgoing:
            slots.append(slot)
    return tuple(slots)


def crossing_weight_monomial(g: GraphSpec, state: Sequence[bool], vid: int) -> Tuple[int, ...]:
    """Exponent vector m of the sigma argument: weight is sigma(monomial(m))."""
    v = g.vertices[vid]
    assert v.kind is VertexKind.CROSSING and v.param0 is not None
    ins = _in_slots(g, state, vid)
    if ins in ((0, 2), (1, 3)):
        m = [0] * g.arity
        m[0] = 2
        return tuple(m)
    j = ins[0] if ins != (0, 3) else 3  # adjacent pair {j, j+1 mod 4}
    sign = 1 if j % 2 == 1 else -1
    m = [sign * e for e in v.param0]
    m[0] += 1
    return tuple(m)


def state_weight_poly(g: GraphSpec, state: Sequence[bool],
                      values: Optional[Mapping[int, CycloRational]] = None) -> LaurentPoly:
    """Product of sigma factors as a Laurent polynomial (generic a in slot 0).

    Slots appearing in `values` are evaluated into the coefficients, so a
    partial assignment yields an exact polynomial in the remaining
    variables only.
    """
    one = CycloRational(1)
    factors = []
    for vid, v in enumerate(g.vertices):
        if v.kind is not VertexKind.CROSSING:
            continue
        m = crossing_weight_monomial(g, state, vid)
        if values:
            coeff = one
            residual = list(m)
            for slot, k in enumerate(m):
                if k and slot in values:
                    coeff = coeff * values[slot] ** k
                    residual[slot] = 0
            m = tuple(residual)
            hi = {m: coeff}
            lo = {tuple(-e for e in m): coeff.inverse()}
        else:
            hi = {m: one}
            lo = {tuple(-e for e in m): one}
        f: dict = dict(hi)
        for e, c in lo.items():
            acc = f.get(e)
            s = -c if acc is None else acc - c
            if s:
                f[e] = s
            else:
                f.pop(e, None)
        factors.append(f)
    if not factors:
        return LaurentPoly.const(g.arity, 1, g.names)
    while len(factors) > 1:  # balanced product keeps intermediates small
        nxt = []
        for i in range(0, len(factors) - 1, 2):
            fa, fb = factors[i], factors[i + 1]
            out: dict = {}
            for e1, c1 in fa.items():
                for e2, c2 in fb.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    acc = out.get(e)
                    s = c1 * c2 if acc is None else acc + c1 * c2
                    if s:
                        out[e] = s
                    else:
                        out.pop(e, None)
            nxt.append(out)
        if len(factors) % 2:
            nxt.append(factors[-1])
        factors = nxt
    return LaurentPoly(g.arity, factors[0], g.names)


def state_weight_value(g: GraphSpec, state: Sequence[bool],
                       values: Mapping[int, CycloRational]) -> CycloRational:
    """Exact numeric weight; `values` maps every slot (incl. 0 = a) to units."""
    total = CycloRational(1)
    for vid, v in enumerate(g.vertices):
        if v.kind is not VertexKind.CROSSING:
            continue
        m = crossing_weight_monomial(g, state, vid)
        arg = CycloRational(1)
        for slot, k in enumerate(m):
            if k:
                arg = arg * values[slot] ** k
        total = total * (arg - arg.inverse())
    return total


def graph_partition_function(
    g: GraphSpec,
    boundary: Optional[Mapping[str, bool]] = None,
    values: Optional[Mapping[int, CycloRational]] = None,
) -> LaurentPoly | CycloRational:
    """Sum of state weights; an empty sum is 0.

    `boundary` assigns free boundary stubs by tag (True = out of the
    graph).  With `values` the result is an exact field element,
    otherwise a Laurent polynomial with generic a.
    """
    if boundary:
        tags = g.boundary_edges()
        g = g.with_fixed({tags[t]: o for t, o in boundary.items()})
    if values is not None:
        total_v = CycloRational(0)
        for st in enumerate_states(g):
            total_v = total_v + state_weight_value(g, st, values)
        return total_v
    total = LaurentPoly.zero(g.arity, g.names)
    for st in enumerate_states(g):
        total = total + state_weight_poly(g, st)
    return total


def insert_bivalent(g: GraphSpec, edge_id: int) -> GraphSpec:
    """Subdivide an edge with a pair of degree-2 vertices; Z is unchanged.

    A single dot would force the flow through the edge to reverse; the
    pair reverses twice, so states correspond one to one with the
    original graph's and every weight is the same.
    """
    e = g.edges[edge_id]
    vertices = list(g.vertices)
    d1 = len(vertices)
    vertices.append(VertexSpec(VertexKind.DOT))
    d2 = len(vertices)
    vertices.append(VertexSpec(VertexKind.DOT))
    # Segment orientations match the original on both outer pieces (the
    # middle piece runs backwards), so the fixed bit and any boundary tag
    # stay with the segment that keeps the boundary end.
    edges = list(g.edges)
    edges[edge_id] = EdgeSpec(e.a, (d1, 0), fixed=e.fixed,
                              tag=e.tag if e.a is None else "")
    edges.append(EdgeSpec((d1, 1), (d2, 0)))
    edges.append(EdgeSpec((d2, 1), e.b, tag=e.tag if e.b is None else ""))
    return GraphSpec(g.arity, vertices, edges, g.names)
