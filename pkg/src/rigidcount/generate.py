"""Henneberg constructions, small Laman corpora and random calligraphs."""

from __future__ import annotations

import itertools
import random
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from .graph import Edge, MarkedGraph, _edge, is_calligraph, is_minimally_rigid

EdgeSet = Set[Edge]


def _vertices(edges: Iterable[Edge]) -> List[int]:
    return sorted({v for e in edges for v in e})


def henneberg_one(edges: EdgeSet, u: int, w: int) -> EdgeSet:
    """Add a fresh vertex joined to u and w."""
    new = max(_vertices(edges)) + 1
    return set(edges) | {_edge(new, u), _edge(new, w)}


def henneberg_two(edges: EdgeSet, removed: Edge, x: int) -> EdgeSet:
    """Subdivide ``removed`` by a fresh vertex that is also joined to x."""
    u, w = removed
    if x in (u, w):
        raise ValueError("the third neighbour must differ from the subdivided edge")
    new = max(_vertices(edges)) + 1
    out = set(edges)
    out.remove(_edge(u, w))
    return out | {_edge(new, u), _edge(new, w), _edge(new, x)}


def random_henneberg_step(edges: EdgeSet, rng: random.Random, kind: Optional[int] = None) -> EdgeSet:
    vs = _vertices(edges)
    if kind is None:
        kind = rng.choice((1, 2))
    if kind == 1:
        u, w = rng.sample(vs, 2)
        return henneberg_one(edges, u, w)
    e = rng.choice(sorted(edges))
    x = rng.choice([v for v in vs if v not in e])
    return henneberg_two(edges, e, x)


def random_laman_edges(n: int, rng: random.Random) -> EdgeSet:
    edges: EdgeSet = {(0, 1), (0, 2), (1, 2)}
    while len(_vertices(edges)) < n:
        edges = random_henneberg_step(edges, rng)
    return edges


def marked(edges: Iterable[Edge], marked_edge: Optional[Edge] = None) -> MarkedGraph:
    """Relabel so that ``marked_edge`` (default: the least edge) becomes {1,2}.

    The remaining vertices are numbered 0, 3, 4, ... in ascending order.
    """
    edges = sorted(_edge(*e) for e in edges)
    u, w = marked_edge if marked_edge is not None else edges[0]
    rest = [v for v in _vertices(edges) if v not in (u, w)]
    labels = [0] + list(range(3, len(rest) + 2))
    mapping = {u: 1, w: 2, **dict(zip(rest, labels))}
    return MarkedGraph([(mapping[a], mapping[b]) for a, b in edges])


def _unmarked_key(edges: Sequence[Edge]) -> Tuple[Edge, ...]:
    vs = _vertices(edges)
    best = None
    for perm in itertools.permutations(range(len(vs))):
        m = dict(zip(vs, perm))
        code = tuple(sorted(_edge(m[a], m[b]) for a, b in edges))
        if best is None or code < best:
            best = code
    return best


def laman_corpus(max_vertices: int) -> List[MarkedGraph]:
    """Every minimally rigid graph on 3..max_vertices vertices, up to isomorphism.

    Built by all Henneberg I/II moves from the triangle. Keys are brute-force
    canonical forms, so keep ``max_vertices`` small (7 is already slow).
    """
    level = {_unmarked_key([(0, 1), (0, 2), (1, 2)])}
    out = list(level)
    for _ in range(3, max_vertices):
        nxt = set()
        for edges in level:
            es = set(edges)
            vs = _vertices(es)
            for u, w in itertools.combinations(vs, 2):
                nxt.add(_unmarked_key(sorted(henneberg_one(es, u, w))))
            for e in sorted(es):
                for x in vs:
                    if x not in e:
                        nxt.add(_unmarked_key(sorted(henneberg_two(es, e, x))))
        level = nxt
        out.extend(sorted(level))
    return [marked(e) for e in out]


def random_calligraph(n: int, rng: random.Random, tries: int = 1000) -> MarkedGraph:
    """A random calligraph on n vertices: a Laman graph minus one edge, marked.

    Rejection sampling; the result always passes ``is_calligraph``.
    """
    for _ in range(tries):
        edges = random_laman_edges(n, rng)
        edges.remove(rng.choice(sorted(edges)))
        mark = rng.choice(sorted(edges))
        g = marked(edges, mark)
        if 0 in g.vertices and is_calligraph(g):
            return g
    raise RuntimeError(f"no calligraph on {n} vertices after {tries} attempts")


def random_rigid(n: int, rng: random.Random) -> MarkedGraph:
    g = marked(random_laman_edges(n, rng))
    assert is_minimally_rigid(g)
    return g
