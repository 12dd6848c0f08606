"""Clockwise and counterclockwise trajectories.

A trajectory enters the graph along an edge, repeatedly turns onto the
neighbouring edge at the vertex it is heading into, and stops as soon
as it runs out along an external edge.  The whole engine is iteration
of the corner permutation from `ribboncalc.graph`: the successive out
halfedges of a clockwise trajectory are successive iterates of that
permutation, which is why these walks always terminate on valid graphs
(every orbit meets an external halfedge) and why reversing every cyclic
order swaps the two orientations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

from .graph import RibbonGraph, require_valid

CW = "cw"
CCW = "ccw"
ORIENTATIONS = (CW, CCW)


@dataclass(frozen=True)
class HalfedgeRef:
    id: str


@dataclass(frozen=True)
class EdgeRef:
    id: str


@dataclass(frozen=True)
class VertexRef:
    id: str


SourceRef = Union[HalfedgeRef, EdgeRef, VertexRef]
TargetRef = Union[HalfedgeRef, EdgeRef]


@dataclass(frozen=True)
class Itinerary:
    """One directed trajectory.

    ``edges`` is the visited edge sequence e_1 .. e_m with e_1 the edge
    of the start halfedge and e_m the terminal external edge.  The walk
    turns at ``turns[i-1]`` when moving from e_i to e_(i+1), entering
    that vertex along ``entries[i-1]`` and leaving along
    ``out_halfedges[i]``.
    """

    start: str
    orient: str
    out_halfedges: tuple[str, ...]
    edges: tuple[str, ...]
    turns: tuple[str, ...]
    entries: tuple[str, ...]
    terminal: str

    @property
    def length(self) -> int:
        return len(self.edges)


def _step(g: RibbonGraph, h: str, orient: str) -> str:
    t = g.ext_twin(h)
    return g.ccw_next(t) if orient == CW else g.cw_next(t)


def _require_orient(orient: str) -> None:
    if orient not in ORIENTATIONS:
        raise ValueError("orientation must be 'cw' or 'ccw', got {!r}".format(orient))


@lru_cache(maxsize=65536)
def _itinerary(g: RibbonGraph, h: str, orient: str) -> Itinerary:
    out = [h]
    limit = 2 * len(g.halfedges) + 2
    while True:
        nxt = _step(g, out[-1], orient)
        out.append(nxt)
        if g.is_external(nxt):
            break
        if len(out) > limit:  # unreachable on a valid graph
            raise RuntimeError("trajectory from {} did not terminate".format(h))
    edges = tuple(g.edge_of(x) for x in out)
    turns = tuple(g.at_vertex(x) for x in out[1:])
    entries = tuple(g.ext_twin(x) for x in out[:-1])
    return Itinerary(h, orient, tuple(out), edges, turns, entries, edges[-1])


def itinerary(g: RibbonGraph, h: str, orient: str = CW) -> Itinerary:
    """Walk from halfedge ``h`` until the first outward external edge.

    An internal start heads toward the vertex of its twin; an external
    start heads inward, toward its own vertex.  The result always has
    at least two edges and at most 2 * (number of edges) of them.
    """
    require_valid(g)
    _require_orient(orient)
    if not g.has_halfedge(h):
        raise ValueError("unknown halfedge {!r}".format(h))
    return _itinerary(g, h, orient)


def terminal_external(g: RibbonGraph, h: str, orient: str = CW) -> str:
    return itinerary(g, h, orient).terminal


def web_trajectory(g: RibbonGraph, v: str, orient: str = CW) -> dict[str, Itinerary]:
    """One trajectory per halfedge at ``v``, keyed in cyclic order."""
    require_valid(g)
    _require_orient(orient)
    if not g.has_vertex(v):
        raise ValueError("unknown vertex {!r}".format(v))
    return {h: itinerary(g, h, orient) for h in g.cyclic(v)}


def curve_trajectory(g: RibbonGraph, e: str, orient: str = CW) -> tuple[Itinerary, Itinerary]:
    """The two trajectories leaving an internal edge, in halfedge order."""
    require_valid(g)
    _require_orient(orient)
    if not g.is_edge(e):
        raise ValueError("unknown edge {!r}".format(e))
    pair = g.halfedges_of(e)
    if len(pair) != 2:
        raise ValueError("curve trajectory needs internal edge, got {!r}".format(e))
    return itinerary(g, pair[0], orient), itinerary(g, pair[1], orient)


@dataclass(frozen=True)
class TrajectoryHit:
    """One visit of a trajectory prefix to the target.

    ``index`` is the 1-based prefix length; index 1 with ``constant``
    set is the degenerate visit that never leaves the source.  The full
    itinerary rides along so that transport words can be built without
    walking the graph again.
    """

    source: str
    index: int
    target_kind: str  # "edge" or "halfedge"
    target: str
    constant: bool
    itinerary: Itinerary = field(repr=False)


def _hit_key(hit: TrajectoryHit):
    return (hit.source, hit.index, not hit.constant)


def _hits_on_edge(itin: Itinerary, f: str) -> list[TrajectoryHit]:
    return [
        TrajectoryHit(itin.start, i, "edge", f, i == 1, itin)
        for i, e in enumerate(itin.edges, start=1)
        if e == f
    ]


def _hits_on_halfedge(itin: Itinerary, hp: str) -> list[TrajectoryHit]:
    hits = []
    if hp == itin.start:
        # the constant visit: stand on the source and apply nothing
        hits.append(TrajectoryHit(itin.start, 1, "halfedge", hp, True, itin))
    for i in range(1, itin.length):
        if itin.entries[i - 1] == hp:
            hits.append(TrajectoryHit(itin.start, i, "halfedge", hp, False, itin))
    return hits


def _source_halfedges(g: RibbonGraph, source: SourceRef) -> tuple[str, ...]:
    if isinstance(source, HalfedgeRef):
        if not g.has_halfedge(source.id):
            raise ValueError("unknown halfedge {!r}".format(source.id))
        return (source.id,)
    if isinstance(source, EdgeRef):
        if not g.is_edge(source.id):
            raise ValueError("unknown edge {!r}".format(source.id))
        return g.halfedges_of(source.id)
    if isinstance(source, VertexRef):
        if not g.has_vertex(source.id):
            raise ValueError("unknown vertex {!r}".format(source.id))
        return g.cyclic(source.id)
    raise TypeError("source must be a halfedge, edge or vertex reference")


def trajectory_counts(
    g: RibbonGraph, source: SourceRef, target: TargetRef, orient: str = CW
) -> tuple[TrajectoryHit, ...]:
    """All prefix indices at which trajectories from ``source`` meet ``target``.

    Edge targets are hit whenever the visited edge matches, the terminal
    index included.  Halfedge targets are hit when the walk enters the
    target's vertex along it, terminal index excluded, plus the constant
    visit when the target is the source halfedge itself.  For an
    internal source edge and the same edge as target, the two constant
    visits are one and the same curve, so only one is kept.
    """
    require_valid(g)
    _require_orient(orient)
    starts = _source_halfedges(g, source)
    if isinstance(target, EdgeRef):
        if not g.is_edge(target.id):
            raise ValueError("unknown edge {!r}".format(target.id))
        hits = [h for s in starts for h in _hits_on_edge(_itinerary(g, s, orient), target.id)]
    elif isinstance(target, HalfedgeRef):
        if not g.has_halfedge(target.id):
            raise ValueError("unknown halfedge {!r}".format(target.id))
        hits = [h for s in starts for h in _hits_on_halfedge(_itinerary(g, s, orient), target.id)]
    else:
        raise TypeError("target must be an edge or halfedge reference")
    if (
        isinstance(source, EdgeRef)
        and isinstance(target, EdgeRef)
        and source.id == target.id
        and len(starts) == 2
    ):
        hits = [h for h in hits if not (h.constant and h.source == starts[1])]
    hits.sort(key=_hit_key)
    return tuple(hits)
