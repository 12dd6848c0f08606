"""Ribbon graphs with boundary stubs.

A ribbon graph here is a graph together with a counterclockwise cyclic
order of the halfedges around every vertex.  Edges come in two kinds:
internal edges are twin pairs of halfedges, external edges are single
unpaired halfedges (boundary stubs).  The thickening of such a graph is
an oriented surface with boundary; `boundary_walks` computes its
boundary circles and `surface_invariants` its genus.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

PLAIN = "plain"
SINGULAR = "singular"
VERTEX_KINDS = (PLAIN, SINGULAR)


class InvalidGraphError(ValueError):
    """An operation was handed a graph that fails validation."""


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def rotate_to_min(seq: Iterable[str]) -> tuple[str, ...]:
    """Canonical representative of a cyclic word: start at the smallest entry."""
    seq = tuple(seq)
    if not seq:
        return seq
    k = seq.index(min(seq))
    return seq[k:] + seq[:k]


class RibbonGraph:
    """Immutable halfedge structure with a cyclic order at each vertex.

    ``cyclic`` maps each vertex id to the counterclockwise ordering of
    its incident halfedges; membership in a cyclic list is what assigns
    a halfedge to its vertex.  ``twin`` pairs the two halfedges of every
    internal edge and omits external halfedges entirely.

    The constructor only rejects structurally meaningless input (a
    halfedge listed twice, an asymmetric twin table).  Semantic rules,
    loops, valency-1 vertices, connectivity and the marked-point
    condition, are reported by `validate_graph` instead so that callers
    can inspect broken graphs.
    """

    def __init__(
        self,
        cyclic: Mapping[str, Iterable[str]],
        twin: Mapping[str, str],
        vertex_kind: Optional[Mapping[str, str]] = None,
        vertex_label: Optional[Mapping[str, str]] = None,
    ):
        vertex_kind = dict(vertex_kind or {})
        vertex_label = dict(vertex_label or {})
        self._cyclic: dict[str, tuple[str, ...]] = {}
        self._at: dict[str, str] = {}
        for v in cyclic:
            ring = [str(h) for h in cyclic[v]]
            for h in ring:
                if h in self._at:
                    raise ValueError("halfedge {!r} listed more than once".format(h))
                self._at[h] = str(v)
            self._cyclic[str(v)] = rotate_to_min(ring)
        self._twin = {str(h): str(t) for h, t in twin.items()}
        for h, t in self._twin.items():
            if h not in self._at:
                raise ValueError("twin table mentions unknown halfedge {!r}".format(h))
            if t not in self._at:
                raise ValueError("twin table mentions unknown halfedge {!r}".format(t))
            if self._twin.get(t) != h:
                raise ValueError("twin table is not symmetric at {!r}".format(h))
        for v, kind in vertex_kind.items():
            if v not in self._cyclic:
                raise ValueError("vertex kind given for unknown vertex {!r}".format(v))
            if kind not in VERTEX_KINDS:
                raise ValueError("unknown vertex kind {!r}".format(kind))
        for v in vertex_label:
            if v not in self._cyclic:
                raise ValueError("label given for unknown vertex {!r}".format(v))
        self._kind = {v: vertex_kind.get(v, PLAIN) for v in self._cyclic}
        self._label = dict(vertex_label)
        self._vertices = tuple(sorted(self._cyclic))
        self._halfedges = tuple(sorted(self._at))
        # successor and predecessor in the cyclic order, precomputed
        self._next: dict[str, str] = {}
        self._prev: dict[str, str] = {}
        for ring in self._cyclic.values():
            n = len(ring)
            for i, h in enumerate(ring):
                self._next[h] = ring[(i + 1) % n]
                self._prev[h] = ring[(i - 1) % n]
        self._key = (
            tuple(
                (v, self._cyclic[v], self._kind[v], self._label.get(v))
                for v in self._vertices
            ),
            tuple(sorted(self._twin.items())),
        )
        self._report: Optional[ValidationReport] = None

    # -- basic accessors ------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def halfedges(self) -> tuple[str, ...]:
        return self._halfedges

    def has_vertex(self, v: str) -> bool:
        return v in self._cyclic

    def has_halfedge(self, h: str) -> bool:
        return h in self._at

    def cyclic(self, v: str) -> tuple[str, ...]:
        return self._cyclic[v]

    def at_vertex(self, h: str) -> str:
        return self._at[h]

    def valency(self, v: str) -> int:
        return len(self._cyclic[v])

    def kind(self, v: str) -> str:
        return self._kind[v]

    def label(self, v: str) -> Optional[str]:
        return self._label.get(v)

    def twin_of(self, h: str) -> Optional[str]:
        return self._twin.get(h)

    def is_external(self, h: str) -> bool:
        return h not in self._twin

    def ext_twin(self, h: str) -> str:
        """The twin involution extended to fix external halfedges."""
        return self._twin.get(h, h)

    def ccw_next(self, h: str) -> str:
        return self._next[h]

    def cw_next(self, h: str) -> str:
        return self._prev[h]

    # -- edges ------------------------------------------------------------

    def edge_of(self, h: str) -> str:
        # the edge key is the smaller of the (at most two) halfedge ids
        t = self._twin.get(h)
        return h if t is None or h <= t else t

    def halfedges_of(self, e: str) -> tuple[str, ...]:
        if e not in self._at or self.edge_of(e) != e:
            raise ValueError("unknown edge {!r}".format(e))
        t = self._twin.get(e)
        return (e,) if t is None or t == e else (e, t)

    def edges(self) -> tuple[str, ...]:
        return tuple(sorted({self.edge_of(h) for h in self._halfedges}))

    def internal_edges(self) -> tuple[str, ...]:
        return tuple(e for e in self.edges() if not self.is_external(e))

    def external_edges(self) -> tuple[str, ...]:
        return tuple(e for e in self.edges() if self.is_external(e))

    def is_edge(self, e: str) -> bool:
        return e in self._at and self.edge_of(e) == e

    # -- equality ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, RibbonGraph) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return "RibbonGraph({} vertices, {} edges)".format(
            len(self._vertices), len(self.edges())
        )

    # -- validation (cached) -----------------------------------------------

    def validation_report(self) -> ValidationReport:
        if self._report is None:
            self._report = validate_graph(self)
        return self._report


def corner_permutation(g: RibbonGraph) -> dict[str, str]:
    """The face-traversal permutation: follow the extended twin, then
    take one counterclockwise step.  Its orbits are the boundary walks."""
    return {h: g.ccw_next(g.ext_twin(h)) for h in g.halfedges}


def _corner_orbits(g: RibbonGraph) -> list[tuple[str, ...]]:
    perm = corner_permutation(g)
    seen: set[str] = set()
    orbits = []
    for start in g.halfedges:
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        h = perm[start]
        while h != start:
            orbit.append(h)
            seen.add(h)
            h = perm[h]
        orbits.append(tuple(orbit))
    return orbits


def _connected(g: RibbonGraph) -> bool:
    if not g.vertices:
        return True
    todo = [g.vertices[0]]
    seen = {g.vertices[0]}
    while todo:
        v = todo.pop()
        for h in g.cyclic(v):
            t = g.twin_of(h)
            if t is None:
                continue
            w = g.at_vertex(t)
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(g.vertices)


def validate_graph(g: RibbonGraph) -> ValidationReport:
    """Report every violated graph invariant; an empty report means valid.

    Downstream operations refuse graphs whose report is non-empty.
    """
    violations = []
    if not g.vertices:
        violations.append("graph is empty")
    for h in g.halfedges:
        if g.twin_of(h) == h:
            violations.append("twin has a fixed point: {}".format(h))
    for e in g.internal_edges():
        pair = g.halfedges_of(e)
        if len(pair) == 2 and g.at_vertex(pair[0]) == g.at_vertex(pair[1]):
            violations.append(
                "loop: edge {} has both halfedges at vertex {}".format(
                    e, g.at_vertex(pair[0])
                )
            )
    for v in g.vertices:
        n = g.valency(v)
        if n == 0:
            violations.append("isolated vertex: {}".format(v))
        elif n == 1:
            violations.append("valency-1 vertex: {}".format(v))
    if g.vertices and not _connected(g):
        violations.append("graph is not connected")
    for orbit in _corner_orbits(g):
        if not any(g.is_external(h) for h in orbit):
            violations.append(
                "boundary walk without external halfedge (through {})".format(
                    min(orbit)
                )
            )
    return ValidationReport(tuple(violations))


def require_valid(g: RibbonGraph) -> None:
    report = g.validation_report()
    if not report.ok:
        raise InvalidGraphError("; ".join(report.violations))


@dataclass(frozen=True)
class BoundaryWalk:
    """One boundary circle of the thickened surface.

    ``halfedges`` is the orbit of the corner permutation, rotated to
    start at its smallest member.  Every visit of an external halfedge
    is one marked point on this circle.
    """

    halfedges: tuple[str, ...]
    externals: tuple[str, ...]

    @property
    def marked_points(self) -> int:
        return len(self.externals)


def boundary_walks(g: RibbonGraph) -> list[BoundaryWalk]:
    require_valid(g)
    walks = []
    for orbit in _corner_orbits(g):
        orbit = rotate_to_min(orbit)
        externals = tuple(h for h in orbit if g.is_external(h))
        walks.append(BoundaryWalk(orbit, externals))
    walks.sort(key=lambda w: w.halfedges[0])
    return walks


@dataclass(frozen=True)
class SurfaceInvariants:
    genus: int
    boundary: tuple[int, ...]  # marked-point counts, largest first


def surface_invariants(g: RibbonGraph) -> SurfaceInvariants:
    walks = boundary_walks(g)
    # external stubs retract onto their vertex, so the homotopy type is
    # carried by the internal edges alone
    chi = len(g.vertices) - len(g.internal_edges())
    b = len(walks)
    doubled_genus = 2 - b - chi
    if doubled_genus < 0 or doubled_genus % 2 != 0:
        raise RuntimeError(
            "internal consistency failure: 2g = {} for V - E = {}, b = {}".format(
                doubled_genus, chi, b
            )
        )
    counts = tuple(sorted((w.marked_points for w in walks), reverse=True))
    return SurfaceInvariants(doubled_genus // 2, counts)


def dual(g: RibbonGraph) -> RibbonGraph:
    """The same graph with every cyclic order reversed.  Involutive."""
    require_valid(g)
    return RibbonGraph(
        {v: tuple(reversed(g.cyclic(v))) for v in g.vertices},
        {h: g.twin_of(h) for h in g.halfedges if not g.is_external(h)},
        {v: g.kind(v) for v in g.vertices},
        {v: g.label(v) for v in g.vertices if g.label(v) is not None},
    )


@dataclass(frozen=True)
class Subgraph:
    """A vertex-induced piece of an ambient graph.

    Halfedge ids are shared with the ambient graph, so the ambient map
    is the identity on ids.  ``cut_halfedges`` lists, in sorted order,
    the halfedges whose edge is external here but internal in the
    ambient graph; these are exactly the gluing sites.
    """

    graph: RibbonGraph
    ambient: RibbonGraph
    vertices: tuple[str, ...]
    cut_halfedges: tuple[str, ...]

    def ambient_edge_of(self, sub_edge: str) -> str:
        return self.ambient.edge_of(sub_edge)


def subgraph(g: RibbonGraph, vertices: Iterable[str]) -> Subgraph:
    require_valid(g)
    keep = sorted(set(vertices))
    if not keep:
        raise ValueError("vertex set must be non-empty")
    for v in keep:
        if not g.has_vertex(v):
            raise ValueError("unknown vertex {!r}".format(v))
    kept_set = set(keep)
    cyclic = {v: g.cyclic(v) for v in keep}
    kept_halfedges = {h for v in keep for h in g.cyclic(v)}
    twin = {}
    for h in kept_halfedges:
        t = g.twin_of(h)
        if t is not None and g.at_vertex(t) in kept_set:
            twin[h] = t
    sub = RibbonGraph(
        cyclic,
        twin,
        {v: g.kind(v) for v in keep},
        {v: g.label(v) for v in keep if g.label(v) is not None},
    )
    report = validate_graph(sub)
    if not report.ok:
        raise InvalidGraphError(
            "induced subgraph is not a valid ribbon graph: "
            + "; ".join(report.violations)
        )
    cuts = tuple(
        sorted(h for h in kept_halfedges if sub.is_external(h) and not g.is_external(h))
    )
    return Subgraph(sub, g, tuple(keep), cuts)
