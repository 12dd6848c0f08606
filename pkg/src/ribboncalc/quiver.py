"""Ice quivers, quiver morphisms and amalgamation along a ribbon graph.

An ice quiver is a finite quiver with a frozen flag on vertices and
arrows.  Frozen arrows must join frozen vertices; the frozen arrows
split the frozen vertices into frozen components, and those components
are the gluing interfaces of the amalgamation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .graph import RibbonGraph, ValidationReport, require_valid


@dataclass(frozen=True)
class QuiverVertex:
    id: str
    frozen: bool = False
    label: Optional[str] = None


@dataclass(frozen=True)
class QuiverArrow:
    id: str
    src: str
    dst: str
    frozen: bool = False


class IceQuiver:
    def __init__(self, vertices: Iterable[QuiverVertex], arrows: Iterable[QuiverArrow]):
        self._vertices = tuple(sorted(vertices, key=lambda v: v.id))
        self._arrows = tuple(sorted(arrows, key=lambda a: a.id))
        self._by_id = {v.id: v for v in self._vertices}
        if len(self._by_id) != len(self._vertices):
            raise ValueError("duplicate vertex id")
        seen = set()
        for a in self._arrows:
            if a.id in seen:
                raise ValueError("duplicate arrow id {!r}".format(a.id))
            seen.add(a.id)
            for end in (a.src, a.dst):
                if end not in self._by_id:
                    raise ValueError(
                        "arrow {!r} uses unknown vertex {!r}".format(a.id, end)
                    )
            if a.frozen:
                if not (self._by_id[a.src].frozen and self._by_id[a.dst].frozen):
                    raise ValueError(
                        "frozen arrow {!r} must join frozen vertices".format(a.id)
                    )

    @property
    def vertices(self) -> tuple[QuiverVertex, ...]:
        return self._vertices

    @property
    def arrows(self) -> tuple[QuiverArrow, ...]:
        return self._arrows

    def vertex(self, vid: str) -> QuiverVertex:
        return self._by_id[vid]

    def has_vertex(self, vid: str) -> bool:
        return vid in self._by_id

    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self._vertices)

    def arrow(self, aid: str) -> QuiverArrow:
        for a in self._arrows:
            if a.id == aid:
                return a
        raise KeyError(aid)

    def frozen_vertex_ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self._vertices if v.frozen)

    def frozen_components(self) -> tuple[frozenset[str], ...]:
        """Connected components of the frozen vertices under frozen arrows."""
        parent = {v: v for v in self.frozen_vertex_ids()}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self._arrows:
            if a.frozen:
                ra, rb = find(a.src), find(a.dst)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        groups: dict[str, set[str]] = {}
        for v in parent:
            groups.setdefault(find(v), set()).add(v)
        return tuple(
            frozenset(groups[r]) for r in sorted(groups)
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IceQuiver)
            and self._vertices == other._vertices
            and self._arrows == other._arrows
        )

    def __hash__(self) -> int:
        return hash((self._vertices, self._arrows))

    def __repr__(self) -> str:
        return "IceQuiver({} vertices, {} arrows)".format(
            len(self._vertices), len(self._arrows)
        )


@dataclass(frozen=True)
class QuiverMorphism:
    """A vertex-injective quiver map that may send arrows to zero.

    ``arrow_map`` values are target arrow ids, or None for zero.
    Distinct arrows may share a non-zero image.
    """

    source: IceQuiver
    target: IceQuiver
    vertex_map: Mapping[str, str]
    arrow_map: Mapping[str, Optional[str]]


def validate_morphism(m: QuiverMorphism) -> ValidationReport:
    violations = []
    vmap = dict(m.vertex_map)
    for v in m.source.vertex_ids():
        if v not in vmap:
            violations.append("vertex {} has no image".format(v))
        elif not m.target.has_vertex(vmap[v]):
            violations.append("vertex {} maps to unknown vertex {}".format(v, vmap[v]))
    images = [vmap[v] for v in sorted(vmap) if m.target.has_vertex(vmap.get(v, ""))]
    if len(set(images)) != len(images):
        violations.append("vertex map is not injective")
    target_arrows = {a.id: a for a in m.target.arrows}
    for a in m.source.arrows:
        if a.id not in m.arrow_map:
            violations.append("arrow {} has no image".format(a.id))
            continue
        image = m.arrow_map[a.id]
        if image is None:
            continue
        if image not in target_arrows:
            violations.append("arrow {} maps to unknown arrow {}".format(a.id, image))
            continue
        ta = target_arrows[image]
        if ta.src != vmap.get(a.src) or ta.dst != vmap.get(a.dst):
            violations.append(
                "arrow {} does not respect endpoints under the vertex map".format(a.id)
            )
    return ValidationReport(tuple(violations))


@dataclass(frozen=True)
class AmalgamationDiagram:
    """Gluing data over a ribbon graph.

    Each vertex carries a local quiver, each edge an interface quiver,
    and each halfedge a morphism from its edge's interface into its
    vertex's quiver.  At every vertex the incident interfaces must land
    on pairwise disjoint frozen components, one per halfedge.
    """

    graph: RibbonGraph
    vertex_quivers: Mapping[str, IceQuiver]
    edge_quivers: Mapping[str, IceQuiver]
    incidences: Mapping[str, QuiverMorphism]


def _validate_diagram(d: AmalgamationDiagram) -> None:
    g = d.graph
    require_valid(g)
    for v in g.vertices:
        if v not in d.vertex_quivers:
            raise ValueError("vertex {} has no quiver".format(v))
    for e in g.edges():
        if e not in d.edge_quivers:
            raise ValueError("edge {} has no interface quiver".format(e))
    for h in g.halfedges:
        if h not in d.incidences:
            raise ValueError("dangling incidence: halfedge {} has no morphism".format(h))
        m = d.incidences[h]
        if m.source != d.edge_quivers[g.edge_of(h)]:
            raise ValueError(
                "incidence at {} does not start from the edge quiver".format(h)
            )
        if m.target != d.vertex_quivers[g.at_vertex(h)]:
            raise ValueError(
                "incidence at {} does not land in the vertex quiver".format(h)
            )
        report = validate_morphism(m)
        if not report.ok:
            raise ValueError(
                "invalid incidence at {}: {}".format(h, "; ".join(report.violations))
            )
    for v in g.vertices:
        q = d.vertex_quivers[v]
        components = set(q.frozen_components())
        claimed: set[str] = set()
        for h in g.cyclic(v):
            image = frozenset(d.incidences[h].vertex_map.values())
            if image not in components:
                raise ValueError(
                    "incidence at {} does not cover a frozen component of {}".format(
                        h, v
                    )
                )
            if image & claimed:
                raise ValueError(
                    "overlapping frozen components at vertex {}".format(v)
                )
            claimed |= image
        uncovered = set(q.frozen_vertex_ids()) - claimed
        if uncovered:
            raise ValueError(
                "frozen vertices {} of the quiver at {} lie in no interface image".format(
                    sorted(uncovered), v
                )
            )


def _qualified(owner: str, local: str) -> str:
    return "{}.{}".format(owner, local)


def amalgamate(
    d: AmalgamationDiagram, edge_order: Optional[Sequence[str]] = None
) -> IceQuiver:
    """Glue the vertex quivers along the interface quivers.

    Vertices identified across internal edges melt into one mutable
    vertex named by the smallest qualified id in its class.  Interfaces
    on external edges stay frozen, frozen arrows included.  Interface
    arrows of an internal edge survive, unfrozen, exactly when both
    incidences keep them non-zero.

    ``edge_order`` optionally fixes the processing order of the internal
    edges; the result does not depend on it.
    """
    _validate_diagram(d)
    g = d.graph
    internal = g.internal_edges()
    if edge_order is None:
        edge_order = internal
    else:
        if sorted(edge_order) != sorted(internal):
            raise ValueError("edge_order must enumerate the internal edges")

    parent: dict[str, str] = {}
    origin: dict[str, tuple[str, str]] = {}
    for v in g.vertices:
        for q in d.vertex_quivers[v].vertex_ids():
            qid = _qualified(v, q)
            parent[qid] = qid
            origin[qid] = (v, q)

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: str, b: str) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            # the smaller id wins so the outcome ignores processing order
            parent[max(ra, rb)] = min(ra, rb)

    for e in edge_order:
        h1, h2 = g.halfedges_of(e)
        m1, m2 = d.incidences[h1], d.incidences[h2]
        v1, v2 = g.at_vertex(h1), g.at_vertex(h2)
        for x in d.edge_quivers[e].vertex_ids():
            union(_qualified(v1, m1.vertex_map[x]), _qualified(v2, m2.vertex_map[x]))

    frozen_ids: set[str] = set()
    for h in g.halfedges:
        if g.is_external(h):
            v = g.at_vertex(h)
            for image in d.incidences[h].vertex_map.values():
                frozen_ids.add(_qualified(v, image))

    class_members: dict[str, list[str]] = {}
    for q in parent:
        class_members.setdefault(find(q), []).append(q)

    vertices = []
    for rep, members in class_members.items():
        v_owner, local = origin[rep]
        original = d.vertex_quivers[v_owner].vertex(local)
        vertices.append(
            QuiverVertex(
                rep,
                frozen=any(m in frozen_ids for m in members),
                label=original.label,
            )
        )

    arrows = []
    for v in g.vertices:
        for a in d.vertex_quivers[v].arrows:
            src = find(_qualified(v, a.src))
            dst = find(_qualified(v, a.dst))
            if not a.frozen:
                arrows.append(QuiverArrow(_qualified(v, a.id), src, dst, False))
            elif _qualified(v, a.src) in frozen_ids:
                # frozen arrows live inside one frozen component, so the
                # source tells whether the component is an external one
                arrows.append(QuiverArrow(_qualified(v, a.id), src, dst, True))
    for e in internal:
        h1, h2 = g.halfedges_of(e)
        m1, m2 = d.incidences[h1], d.incidences[h2]
        v1 = g.at_vertex(h1)
        target1 = {a.id: a for a in m1.target.arrows}
        for a in d.edge_quivers[e].arrows:
            i1 = m1.arrow_map.get(a.id)
            i2 = m2.arrow_map.get(a.id)
            if i1 is None or i2 is None:
                continue
            image = target1[i1]
            src = find(_qualified(v1, image.src))
            dst = find(_qualified(v1, image.dst))
            arrows.append(QuiverArrow(_qualified(e, a.id), src, dst, False))

    return IceQuiver(vertices, arrows)


def mutable_part(q: IceQuiver) -> IceQuiver:
    """Drop frozen vertices, their arrows, and all frozen flags."""
    keep = {v.id for v in q.vertices if not v.frozen}
    return IceQuiver(
        [QuiverVertex(v.id, False, v.label) for v in q.vertices if v.id in keep],
        [
            QuiverArrow(a.id, a.src, a.dst, False)
            for a in q.arrows
            if a.src in keep and a.dst in keep
        ],
    )


def _signature(q: IceQuiver) -> dict[str, tuple]:
    out_nf: dict[str, int] = {}
    in_nf: dict[str, int] = {}
    out_f: dict[str, int] = {}
    in_f: dict[str, int] = {}
    for a in q.arrows:
        if a.frozen:
            out_f[a.src] = out_f.get(a.src, 0) + 1
            in_f[a.dst] = in_f.get(a.dst, 0) + 1
        else:
            out_nf[a.src] = out_nf.get(a.src, 0) + 1
            in_nf[a.dst] = in_nf.get(a.dst, 0) + 1
    return {
        v.id: (
            v.frozen,
            out_nf.get(v.id, 0),
            in_nf.get(v.id, 0),
            out_f.get(v.id, 0),
            in_f.get(v.id, 0),
        )
        for v in q.vertices
    }


def _multiplicities(q: IceQuiver) -> dict[tuple[str, str, bool], int]:
    mult: dict[tuple[str, str, bool], int] = {}
    for a in q.arrows:
        key = (a.src, a.dst, a.frozen)
        mult[key] = mult.get(key, 0) + 1
    return mult


def quivers_isomorphic(q1: IceQuiver, q2: IceQuiver) -> bool:
    """Exact isomorphism test respecting frozen flags and multiplicities.

    Labels are decoration and do not constrain the matching.  Plain
    backtracking with degree-signature pruning; intended for the small
    quivers this package produces (up to a few dozen vertices).
    """
    if len(q1.vertices) != len(q2.vertices) or len(q1.arrows) != len(q2.arrows):
        return False
    sig1, sig2 = _signature(q1), _signature(q2)
    by_sig: dict[tuple, list[str]] = {}
    for v, s in sig2.items():
        by_sig.setdefault(s, []).append(v)
    if sorted(sig1.values()) != sorted(sig2.values()):
        return False
    mult1, mult2 = _multiplicities(q1), _multiplicities(q2)
    order = sorted(sig1, key=lambda v: (len(by_sig[sig1[v]]), v))
    assignment: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v: str, w: str) -> bool:
        for u, x in assignment.items():
            for frozen in (False, True):
                if mult1.get((v, u, frozen), 0) != mult2.get((w, x, frozen), 0):
                    return False
                if mult1.get((u, v, frozen), 0) != mult2.get((x, w, frozen), 0):
                    return False
        for frozen in (False, True):
            if mult1.get((v, v, frozen), 0) != mult2.get((w, w, frozen), 0):
                return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in by_sig[sig1[v]]:
            if w in used or not consistent(v, w):
                continue
            assignment[v] = w
            used.add(w)
            if search(i + 1):
                return True
            del assignment[v]
            used.remove(w)
        return False

    return search(0)


def _gvquote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(q: IceQuiver) -> str:
    """Deterministic DOT text: frozen vertices are boxes, frozen arrows
    are dashed."""
    lines = ["digraph {"]
    for v in q.vertices:
        shape = "box" if v.frozen else "ellipse"
        attrs = "shape={}".format(shape)
        if v.label is not None:
            attrs += ' label={}'.format(_gvquote("{} ({})".format(v.id, v.label)))
        lines.append("  {} [{}];".format(_gvquote(v.id), attrs))
    for a in q.arrows:
        suffix = " [style=dashed]" if a.frozen else ""
        lines.append(
            "  {} -> {}{};".format(_gvquote(a.src), _gvquote(a.dst), suffix)
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
