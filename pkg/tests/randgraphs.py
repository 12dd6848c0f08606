"""Seeded generator of valid ribbon graphs for randomized suites.

Builds a random spanning tree, sprinkles extra internal edges and
boundary stubs, shuffles every cyclic order, then patches any boundary
walk that misses its external halfedge.  Retries until `validate_graph`
is happy, which takes one or two attempts in practice.
"""

import random

from ribboncalc import RibbonGraph, corner_permutation, validate_graph

# weighted toward small graphs; 12 is the documented ceiling
_SIZES = (1, 1, 1, 2, 2, 2, 3, 3, 4, 4, 5, 6, 8, 12)


def random_graph(rng: random.Random, max_vertices: int = 12) -> RibbonGraph:
    while True:
        n = min(rng.choice(_SIZES), max_vertices)
        g = _attempt(rng, n)
        if g is not None and validate_graph(g).ok:
            return g


def _attempt(rng: random.Random, n: int) -> RibbonGraph | None:
    dotted = rng.random() < 0.1
    names = ["v.{}".format(i) if dotted else "v{}".format(i) for i in range(n)]
    at: dict[str, list[str]] = {v: [] for v in names}
    twin: dict[str, str] = {}
    serial = 0

    def stub(v: str) -> None:
        nonlocal serial
        at[v].append("s{}".format(serial))
        serial += 1

    def join(u: str, w: str) -> None:
        nonlocal serial
        a, b = "e{}a".format(serial), "e{}b".format(serial)
        serial += 1
        at[u].append(a)
        at[w].append(b)
        twin[a] = b
        twin[b] = a

    for i in range(1, n):
        join(names[rng.randrange(i)], names[i])
    if n >= 2:
        for _ in range(rng.randint(0, n)):
            u, w = rng.sample(names, 2)
            join(u, w)
    for v in names:
        while len(at[v]) < 2:
            stub(v)
    for _ in range(rng.randint(0, 3)):
        stub(rng.choice(names))

    for v in names:
        rng.shuffle(at[v])
    kinds = {}
    labels = {}
    for v in names:
        if rng.random() < 0.15:
            kinds[v] = "singular"
            labels[v] = "puncture"

    for _ in range(20):
        g = RibbonGraph(at, twin, kinds, labels)
        starved = _walks_without_externals(g)
        if not starved:
            return g
        for h in starved:
            v = g.at_vertex(h)
            at[v].insert(at[v].index(h) + 1, "s{}".format(serial))
            serial += 1
    return None


def _walks_without_externals(g: RibbonGraph) -> list[str]:
    perm = corner_permutation(g)
    seen: set[str] = set()
    starved = []
    for start in g.halfedges:
        if start in seen:
            continue
        h = start
        has_external = False
        while h not in seen:
            seen.add(h)
            if g.is_external(h):
                has_external = True
            h = perm[h]
        if not has_external:
            starved.append(start)
    return starved
