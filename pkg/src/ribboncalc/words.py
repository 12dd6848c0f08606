"""Formal functor words and evaluation decompositions.

Words are built from four kinds of atoms: the identity, the generator
F[h] attached to a halfedge (from the stalk at its vertex to the stalk
at its edge), and the left and right adjoints of that generator.  A
decomposition is a finite formal sum of words; nothing is evaluated in
any category, the content is exactly which words appear and how often.

Side L pairs clockwise trajectories with left adjoints, side R pairs
counterclockwise trajectories with right adjoints.  Either side on a
graph matches the other side on the dual graph.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional, Union

from .graph import (
    RibbonGraph,
    SINGULAR,
    Subgraph,
    boundary_walks,
    require_valid,
)
from .trajectory import (
    CCW,
    CW,
    EdgeRef,
    HalfedgeRef,
    TrajectoryHit,
    VertexRef,
    itinerary,
    trajectory_counts,
)

ID = "id"
GEN = "gen"
GEN_L = "genL"
GEN_R = "genR"

SIDES = ("L", "R")


@dataclass(frozen=True)
class Atom:
    kind: str
    halfedge: Optional[str] = None

    def __str__(self) -> str:
        if self.kind == ID:
            return "Id"
        suffix = {GEN: "", GEN_L: "^L", GEN_R: "^R"}[self.kind]
        return "F[{}]{}".format(self.halfedge, suffix)


ID_ATOM = Atom(ID)

ObjectRef = Union[EdgeRef, VertexRef]


@dataclass(frozen=True)
class FunctorWord:
    """A composite of atoms, leftmost atom applied last."""

    atoms: tuple[Atom, ...]
    source: Optional[ObjectRef] = None
    target: Optional[ObjectRef] = None

    @property
    def is_identity(self) -> bool:
        return self.atoms == (ID_ATOM,)

    def __str__(self) -> str:
        return " ".join(str(a) for a in self.atoms)


def _chain(*groups) -> tuple[Atom, ...]:
    atoms = tuple(a for group in groups for a in group if a.kind != ID)
    return atoms or (ID_ATOM,)


def _adjoint_kind(orient: str) -> str:
    return GEN_L if orient == CW else GEN_R


def transport_word(hit: TrajectoryHit, orient: str) -> FunctorWord:
    """The word a trajectory prefix transports along.

    Reading right to left: enter the first turning vertex through the
    adjoint atom of the entry halfedge, leave it through the generator
    of the out halfedge, and so on.  Prefix length 1 transports nothing.
    """
    itin = hit.itinerary
    if orient != itin.orient:
        raise ValueError(
            "hit was computed from {} trajectories, not {}".format(itin.orient, orient)
        )
    src = EdgeRef(itin.edges[0])
    if hit.constant or hit.index == 1:
        return FunctorWord((ID_ATOM,), src, src)
    adj = _adjoint_kind(orient)
    atoms = []
    for j in range(hit.index - 1, 0, -1):
        atoms.append(Atom(GEN, itin.out_halfedges[j]))
        atoms.append(Atom(adj, itin.entries[j - 1]))
    return FunctorWord(tuple(atoms), src, EdgeRef(itin.edges[hit.index - 1]))


@dataclass(frozen=True)
class Marker:
    """Extra structure on subgraph summands.

    kind "ev": the summand arises through the named cut halfedge.
    kind "res": the plain restriction summand at the named object.
    """

    kind: str
    ref: str


@dataclass(frozen=True)
class Summand:
    word: FunctorWord
    source_halfedge: Optional[str]
    index: int
    constant: bool
    marker: Optional[Marker]
    possibly_zero: bool


@dataclass(frozen=True)
class Decomposition:
    source: Optional[ObjectRef]  # None for subgraph decompositions
    target: ObjectRef
    side: str
    summands: tuple[Summand, ...]

    def word_multiset(self) -> Counter:
        return Counter(s.word.atoms for s in self.summands)


def _possibly_zero(g: RibbonGraph, atoms: tuple[Atom, ...]) -> bool:
    # conservative: any atom sitting at a singular vertex may die in a
    # stalk where the relevant composite vanishes
    return any(
        a.halfedge is not None and g.kind(g.at_vertex(a.halfedge)) == SINGULAR
        for a in atoms
    )


def _summand_key(s: Summand):
    rank = 0 if s.source_halfedge is None else 1
    atoms = tuple((a.kind, a.halfedge or "") for a in s.word.atoms)
    return (rank, s.source_halfedge or "", s.index, not s.constant, atoms)


def _require_side(side: str) -> None:
    if side not in SIDES:
        raise ValueError("side must be 'L' or 'R', got {!r}".format(side))


def _make_summand(g, atoms, source, target, hit=None, marker=None) -> Summand:
    word = FunctorWord(atoms, source, target)
    return Summand(
        word,
        hit.source if hit is not None else None,
        hit.index if hit is not None else 0,
        hit.constant if hit is not None else False,
        marker,
        _possibly_zero(g, atoms),
    )


def decompose(
    g: RibbonGraph, target: ObjectRef, source: ObjectRef, side: str = "L"
) -> Decomposition:
    """Decompose an evaluation of an induced object into functor words.

    Each summand is the transport word of one trajectory hit, completed
    with a generator atom when the source is a vertex and an adjoint
    atom when the target is a vertex.  When source and target are the
    same vertex the constant diagonal hits are replaced by a single
    identity summand.
    """
    require_valid(g)
    _require_side(side)
    orient = CW if side == "L" else CCW
    adj = _adjoint_kind(orient)
    summands: list[Summand] = []

    if isinstance(source, EdgeRef):
        if isinstance(target, EdgeRef):
            for hit in trajectory_counts(g, source, target, orient):
                w = transport_word(hit, orient)
                summands.append(
                    _make_summand(g, w.atoms, source, target, hit=hit)
                )
        elif isinstance(target, VertexRef):
            if not g.has_vertex(target.id):
                raise ValueError("unknown vertex {!r}".format(target.id))
            for hp in g.cyclic(target.id):
                for hit in trajectory_counts(g, source, HalfedgeRef(hp), orient):
                    w = transport_word(hit, orient)
                    atoms = _chain((Atom(adj, hp),), w.atoms)
                    summands.append(
                        _make_summand(g, atoms, source, target, hit=hit)
                    )
        else:
            raise TypeError("target must be an edge or vertex reference")
    elif isinstance(source, VertexRef):
        if isinstance(target, EdgeRef):
            for hit in trajectory_counts(g, source, target, orient):
                w = transport_word(hit, orient)
                atoms = _chain(w.atoms, (Atom(GEN, hit.source),))
                summands.append(_make_summand(g, atoms, source, target, hit=hit))
        elif isinstance(target, VertexRef):
            if not g.has_vertex(target.id):
                raise ValueError("unknown vertex {!r}".format(target.id))
            diagonal = source.id == target.id
            for hp in g.cyclic(target.id):
                for hit in trajectory_counts(g, source, HalfedgeRef(hp), orient):
                    if diagonal and hit.constant:
                        continue
                    w = transport_word(hit, orient)
                    atoms = _chain((Atom(adj, hp),), w.atoms, (Atom(GEN, hit.source),))
                    summands.append(_make_summand(g, atoms, source, target, hit=hit))
            if diagonal:
                summands.append(_make_summand(g, (ID_ATOM,), source, target))
        else:
            raise TypeError("target must be an edge or vertex reference")
    else:
        raise TypeError("source must be an edge or vertex reference")

    summands.sort(key=_summand_key)
    return Decomposition(source, target, side, tuple(summands))


def decompose_subgraph(
    g: RibbonGraph, sub: Subgraph, target: ObjectRef, side: str = "L"
) -> Decomposition:
    """Decompose an evaluation of the induction from a subgraph.

    Every non-trivial summand travels through one of the cut halfedges
    and carries an "ev" marker naming it.  Objects that the subgraph
    already sees contribute one plain restriction summand, marked "res".
    Constant diagonal visits at a kept vertex are covered by the
    restriction summand, so they are dropped.
    """
    require_valid(g)
    _require_side(side)
    if sub.ambient != g:
        raise ValueError("subgraph belongs to a different ambient graph")
    orient = CW if side == "L" else CCW
    adj = _adjoint_kind(orient)
    summands: list[Summand] = []

    def add_cut_hits(target_ref, vertex_atom=None, skip=(), drop_constants=False):
        for cut in sub.cut_halfedges:
            if cut in skip:
                continue
            for hit in trajectory_counts(g, HalfedgeRef(cut), target_ref, orient):
                if drop_constants and hit.constant:
                    continue
                w = transport_word(hit, orient)
                atoms = w.atoms if vertex_atom is None else _chain((vertex_atom,), w.atoms)
                summands.append(
                    _make_summand(
                        g, atoms, None, target, hit=hit, marker=Marker("ev", cut)
                    )
                )

    if isinstance(target, EdgeRef):
        if not g.is_edge(target.id):
            raise ValueError("unknown edge {!r}".format(target.id))
        preimages = [
            k for k in sub.graph.edges() if sub.ambient_edge_of(k) == target.id
        ]
        if len(preimages) == 1:
            fp = preimages[0]
            summands.append(
                _make_summand(g, (ID_ATOM,), None, target, marker=Marker("res", fp))
            )
            skip = (fp,) if fp in sub.cut_halfedges else ()
            add_cut_hits(target, skip=skip)
        else:
            # no preimage, or the edge was severed into two cut stubs;
            # either way every summand comes through a cut
            add_cut_hits(target)
    elif isinstance(target, VertexRef):
        if not g.has_vertex(target.id):
            raise ValueError("unknown vertex {!r}".format(target.id))
        kept = target.id in sub.vertices
        if kept:
            summands.append(
                _make_summand(
                    g, (ID_ATOM,), None, target, marker=Marker("res", target.id)
                )
            )
        for hp in g.cyclic(target.id):
            add_cut_hits(HalfedgeRef(hp), vertex_atom=Atom(adj, hp), drop_constants=kept)
    else:
        raise TypeError("target must be an edge or vertex reference")

    summands.sort(key=_summand_key)
    return Decomposition(None, target, side, tuple(summands))


def check_unit_split(g: RibbonGraph, x: ObjectRef, side: str = "L") -> bool:
    """True when the self-decomposition of ``x`` contains the identity
    word exactly once."""
    dec = decompose(g, x, x, side)
    return sum(1 for s in dec.summands if s.word.is_identity) == 1


def _external_support(g: RibbonGraph, x: ObjectRef, orient: str) -> Counter:
    counts: Counter = Counter()
    for f in g.external_edges():
        hits = trajectory_counts(g, x, EdgeRef(f), orient)
        if hits:
            counts[f] = len(hits)
    return counts


def twist_rotation_check(g: RibbonGraph, x: ObjectRef) -> bool:
    """Compare the two orientations of the decomposition of ``x`` over
    the external edges.

    Returns True when rotating every counterclockwise hit one marked
    point forward along its boundary walk reproduces the clockwise
    hits.  This always holds when ``x`` is an edge; webs at asymmetric
    vertices can fail it honestly.
    """
    require_valid(g)
    succ: dict[str, str] = {}
    for walk in boundary_walks(g):
        ext = walk.externals
        for i, h in enumerate(ext):
            succ[h] = ext[(i + 1) % len(ext)]
    cw_support = _external_support(g, x, CW)
    ccw_support = _external_support(g, x, CCW)
    rotated = Counter()
    for f, n in ccw_support.items():
        rotated[succ[f]] += n
    return rotated == cw_support


def word_typechecks(g: RibbonGraph, word: FunctorWord) -> bool:
    """Verify that adjacent atoms meet on matching objects.

    Generators map the stalk at a halfedge's vertex to the stalk at its
    edge; adjoints go back.  The identity word typechecks between any
    equal endpoints.
    """
    if word.is_identity:
        return word.source == word.target or word.source is None
    cur = word.source
    for atom in reversed(word.atoms):
        if atom.kind == ID:
            return False  # identity atoms never appear inside composites
        v = VertexRef(g.at_vertex(atom.halfedge))
        e = EdgeRef(g.edge_of(atom.halfedge))
        if atom.kind == GEN:
            expect, out = v, e
        else:
            expect, out = e, v
        if cur is not None and cur != expect:
            return False
        cur = out
    return word.target is None or cur == word.target
