"""Marked graphs, rigidity predicates, calligraphic splits and canonical keys."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

Edge = Tuple[int, int]


class GraphError(ValueError):
    """Malformed graph input."""


class PreconditionError(ValueError):
    """An operation was called on a graph outside its domain."""


def _edge(u: int, v: int) -> Edge:
    if u == v:
        raise GraphError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class MarkedGraph:
    """Simple graph on nonnegative integers containing the marked edge {1,2}."""

    vertices: FrozenSet[int]
    edges: FrozenSet[Edge]

    def __init__(self, edges: Iterable[Sequence[int]], vertices: Iterable[int] = ()):
        es = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u < 0 or v < 0:
                raise GraphError("vertex labels must be nonnegative")
            es.add(_edge(u, v))
        vs = set(int(v) for v in vertices)
        for u, v in es:
            vs.update((u, v))
        if (1, 2) not in es:
            raise GraphError("the marked edge {1,2} is missing")
        object.__setattr__(self, "vertices", frozenset(vs))
        object.__setattr__(self, "edges", frozenset(es))

    # -- basic queries ------------------------------------------------------
    def __len__(self):
        return len(self.vertices)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def adjacency(self) -> Dict[int, set]:
        adj = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def has_edge(self, u: int, v: int) -> bool:
        return _edge(u, v) in self.edges

    # -- constructions ------------------------------------------------------
    def union(self, other: "MarkedGraph") -> "MarkedGraph":
        return MarkedGraph(self.edges | other.edges, self.vertices | other.vertices)

    def add_edges(self, edges: Iterable[Sequence[int]]) -> "MarkedGraph":
        return MarkedGraph(list(self.edges) + [tuple(e) for e in edges], self.vertices)

    def remove_vertex(self, v: int) -> "MarkedGraph":
        return MarkedGraph(
            [e for e in self.edges if v not in e], self.vertices - {v}
        )

    def remove_edge(self, e: Sequence[int]) -> "MarkedGraph":
        return MarkedGraph(self.edges - {_edge(*e)}, self.vertices)

    def relabel(self, mapping: Dict[int, int]) -> "MarkedGraph":
        return MarkedGraph(
            [(mapping[u], mapping[v]) for u, v in self.edges],
            [mapping[v] for v in self.vertices],
        )

    def induced(self, keep: Iterable[int]) -> "MarkedGraph":
        keep = set(keep)
        return MarkedGraph(
            [e for e in self.edges if e[0] in keep and e[1] in keep], keep
        )

    def fresh_vertex(self) -> int:
        return max(self.vertices) + 1

    # -- serialisation -------------------------------------------------------
    def to_json(self) -> dict:
        return {"vertices": sorted(self.vertices), "edges": [list(e) for e in self.sorted_edges()]}

    def to_text(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.sorted_edges())

    def __repr__(self):
        body = " ".join(f"{u}{'-'}{v}" for u, v in self.sorted_edges())
        return f"MarkedGraph({body})"


def graph(*edges: Sequence[int]) -> MarkedGraph:
    """Shorthand constructor: ``graph((0,1), (1,2))``."""
    return MarkedGraph(edges)


def parse_text(text: str) -> MarkedGraph:
    """Parse one ``u v`` pair per line; ``#`` starts a comment."""
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise GraphError(f"line {lineno}: {exc}") from None
    return MarkedGraph(edges)


def parse_json(data) -> MarkedGraph:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or "edges" not in data:
        raise GraphError("JSON graph needs an 'edges' list")
    try:
        edges = [(int(u), int(v)) for u, v in data["edges"]]
        vertices = [int(v) for v in data.get("vertices", [])]
    except (TypeError, ValueError) as exc:
        raise GraphError(f"bad JSON graph: {exc}") from None
    return MarkedGraph(edges, vertices)


def parse_graph(text: str) -> MarkedGraph:
    """Detect JSON or edge-list text."""
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_text(text)


# -- base calligraphs ---------------------------------------------------------

L = MarkedGraph([(0, 1), (1, 2)])
R = MarkedGraph([(0, 2), (1, 2)])


def C(v: int) -> MarkedGraph:
    """The calligraph C_v: vertex v joined to 0, 1 and 2."""
    return MarkedGraph([(v, 0), (v, 1), (v, 2), (1, 2)])


# -- rigidity -------------------------------------------------------------------

def pebble_game(vertices: Iterable[int], edges: Iterable[Edge], k: int = 2, l: int = 3):
    """Run the (k,l)-pebble game; return (independent edges, rejected edges)."""
    pebbles = {v: k for v in vertices}
    out: Dict[int, List[int]] = {v: [] for v in pebbles}
    accepted, rejected = [], []

    def find_pebble(root, blocked):
        # DFS along directed edges for a vertex with a free pebble; reverse path.
        seen = set(blocked) | {root}
        stack = [(root, iter(out[root]))]
        parent = {}
        while stack:
            node, it = stack[-1]
            for nxt in it:
                if nxt in seen:
                    continue
                seen.add(nxt)
                parent[nxt] = node
                if pebbles[nxt] > 0:
                    cur = nxt
                    while cur != root:
                        p = parent[cur]
                        out[p].remove(cur)
                        out[cur].append(p)
                        cur = p
                    pebbles[nxt] -= 1
                    pebbles[root] += 1
                    return True
                stack.append((nxt, iter(out[nxt])))
                break
            else:
                stack.pop()
        return False

    for u, v in edges:
        while pebbles[u] + pebbles[v] < l + 1:
            if pebbles[u] < k and find_pebble(u, (v,)):
                continue
            if pebbles[v] < k and find_pebble(v, (u,)):
                continue
            break
        if pebbles[u] + pebbles[v] >= l + 1:
            if pebbles[u] == 0:
                u, v = v, u
            pebbles[u] -= 1
            out[u].append(v)
            accepted.append((u, v))
        else:
            rejected.append((u, v))
    return accepted, rejected


def laman_defect(g: MarkedGraph) -> Optional[str]:
    """Describe why ``g`` is not minimally rigid, or None if it is."""
    n, m = len(g.vertices), len(g.edges)
    if m != 2 * n - 3:
        return f"edge count {m} differs from 2|V|-3 = {2 * n - 3}"
    _, rejected = pebble_game(g.vertices, g.sorted_edges())
    if rejected:
        u, v = rejected[0]
        return f"edge {{{u},{v}}} lies in an overbraced subgraph with |E(H)| > 2|V(H)|-3"
    return None


def is_minimally_rigid(g: MarkedGraph) -> bool:
    return laman_defect(g) is None


def glue_C(g: MarkedGraph) -> MarkedGraph:
    return g.union(C(g.fresh_vertex()))


def is_calligraph(g: MarkedGraph) -> bool:
    return 0 in g.vertices and is_minimally_rigid(glue_C(g))


# -- degree-2 reduction -----------------------------------------------------------

def strip_degree2(g: MarkedGraph, keep: Iterable[int] = (1, 2)) -> Tuple[MarkedGraph, int]:
    """Remove degree-2 vertices outside ``keep`` until none remain.

    Returns the reduced graph and the number of removals. Never goes below
    three vertices.
    """
    keep = set(keep) | {1, 2}
    count = 0
    adj = g.adjacency()
    alive = set(g.vertices)
    changed = True
    while changed and len(alive) > 3:
        changed = False
        for v in sorted(alive):
            if v in keep or len(adj[v]) != 2:
                continue
            for w in adj[v]:
                adj[w].discard(v)
            del adj[v]
            alive.discard(v)
            count += 1
            changed = True
            break
    if not count:
        return g, 0
    return g.induced(alive), count


# -- connectivity -------------------------------------------------------------------

def is_connected(vertices: Iterable[int], edges: Iterable[Edge]) -> bool:
    vertices = set(vertices)
    if not vertices:
        return True
    return len(components(vertices, edges)) == 1


def components(vertices: Iterable[int], edges: Iterable[Edge]) -> List[List[int]]:
    vertices = set(vertices)
    adj = {v: [] for v in vertices}
    for u, v in edges:
        if u in adj and v in adj:
            adj[u].append(v)
            adj[v].append(u)
    comps, seen = [], set()
    for s in sorted(vertices):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def is_3_connected(g: MarkedGraph) -> bool:
    """Brute force: no vertex pair (or single vertex) disconnects the graph."""
    vs = sorted(g.vertices)
    if len(vs) < 4:
        return False
    edges = list(g.edges)
    for a, b in itertools.combinations(vs, 2):
        rest = set(vs) - {a, b}
        if not is_connected(rest, [e for e in edges if a not in e and b not in e]):
            return False
    return True


def is_thin(g: MarkedGraph) -> bool:
    if not is_calligraph(g):
        raise PreconditionError("is_thin expects a calligraph")
    full = g.union(L).union(R)
    if not is_3_connected(full):
        return False
    n = len(full.vertices)
    for e in full.sorted_edges():
        rest = [f for f in full.sorted_edges() if f != e]
        if len(rest) != 2 * n - 3 or pebble_game(full.vertices, rest)[1]:
            return False
    return True


# -- calligraphic splits ------------------------------------------------------------

@dataclass(frozen=True)
class CalligraphicSplit:
    left: MarkedGraph
    right: MarkedGraph
    relabeled: MarkedGraph
    mapping: Tuple[Tuple[int, int], ...]  # original label -> new label

    @property
    def nontrivial(self) -> bool:
        n = len(self.relabeled.vertices)
        return n - 2 >= len(self.left.vertices) >= len(self.right.vertices)


def split_relabeling(g: MarkedGraph, edge: Edge, vertex: int) -> Dict[int, int]:
    a, b = sorted(edge)
    mapping = {a: 1, b: 2, vertex: 0}
    nxt = 3
    for v in sorted(g.vertices):
        if v not in mapping:
            mapping[v] = nxt
            nxt += 1
    return mapping


def splits_at(h: MarkedGraph) -> Iterator[Tuple[MarkedGraph, MarkedGraph]]:
    """All calligraphic splits of ``h`` along its marking, larger side first.

    Components of the subgraph on v(h) minus {0,1,2} are distributed over the two
    sides; edges {0,1} and {0,2} may go to either side.
    """
    core = {0, 1, 2}
    rest = h.vertices - core
    comps = components(rest, [e for e in h.edges if e[0] not in core and e[1] not in core])
    if len(comps) < 2:
        return
    floating = [e for e in ((0, 1), (0, 2)) if e in h.edges]
    k = len(comps)
    # comps[0] always sits on the first side; this avoids listing mirror images.
    for mask in range(1, 2 ** (k - 1)):
        side_a = set(comps[0])
        side_b = set()
        for i in range(1, k):
            (side_b if mask >> (i - 1) & 1 else side_a).update(comps[i])
        for assign in itertools.product((0, 1), repeat=len(floating)):
            ea = [e for e in h.edges if e not in floating and (e[0] in side_a or e[1] in side_a)]
            eb = [e for e in h.edges if e not in floating and (e[0] in side_b or e[1] in side_b)]
            for e, s in zip(floating, assign):
                (ea if s == 0 else eb).append(e)
            A = MarkedGraph(ea + [(1, 2)], side_a | core)
            B = MarkedGraph(eb + [(1, 2)], side_b | core)
            if len(A.vertices) < len(B.vertices):
                A, B = B, A
            if is_calligraph(A) and is_calligraph(B):
                yield A, B


def candidate_seeds(g: MarkedGraph, prefer_marking: bool = True) -> Iterator[Tuple[Edge, int]]:
    if prefer_marking and 0 in g.vertices:
        yield (1, 2), 0
    for e in g.sorted_edges():
        for v in sorted(g.vertices):
            if v not in e:
                yield e, v


def find_split(
    g: MarkedGraph, prefer_marking: bool = True, skip: int = 0
) -> Optional[CalligraphicSplit]:
    """First non-trivial calligraphic split over (edge, vertex) candidates.

    With ``prefer_marking`` the existing marking (edge {1,2}, vertex 0) is tried
    before the lexicographic scan. ``skip`` drops that many hits, which lets
    callers compare different splits of the same graph.
    """
    if not is_minimally_rigid(g):
        raise PreconditionError("find_split expects a minimally rigid graph")
    adj = g.adjacency()
    if any(len(adj[v]) == 2 for v in g.vertices if v not in (1, 2)) and len(g.vertices) > 3:
        raise PreconditionError("find_split expects a graph without removable degree-2 vertices")
    n = len(g.vertices)
    if n < 7:
        return None
    for edge, vertex in candidate_seeds(g, prefer_marking):
        mapping = split_relabeling(g, edge, vertex)
        h = g.relabel(mapping)
        for A, B in splits_at(h):
            if len(B.vertices) >= 5 and n - 2 >= len(A.vertices):
                if skip:
                    skip -= 1
                    continue
                return CalligraphicSplit(A, B, h, tuple(sorted(mapping.items())))
    return None


# -- canonical form ---------------------------------------------------------------------

MAX_CANONICAL_VERTICES = 64


def _refine(adj: Dict[int, set], colors: Dict[int, int]) -> Dict[int, int]:
    """Colour refinement to a stable partition; colours stay ordered canonically."""
    while True:
        sigs = {
            v: (colors[v], tuple(sorted(colors[w] for w in adj[v])))
            for v in colors
        }
        ranking = {s: i for i, s in enumerate(sorted(set(sigs.values())))}
        new = {v: ranking[sigs[v]] for v in colors}
        if len(set(new.values())) == len(set(colors.values())):
            return new
        colors = new


def canonical_form(g: MarkedGraph) -> Tuple[bytes, Dict[int, int]]:
    """Canonical key and a labeling realising it.

    The key is invariant under relabeling vertices outside {0,1,2} and under the
    swap 1<->2; vertex 0 is fixed when present. The returned map sends original
    labels to canonical positions; position of 1 tells whether a swap occurred.
    """
    if len(g.vertices) > MAX_CANONICAL_VERTICES:
        raise PreconditionError(f"canonical form limited to {MAX_CANONICAL_VERTICES} vertices")
    adj = g.adjacency()
    init = {}
    for v in g.vertices:
        init[v] = 0 if v == 0 else 1 if v in (1, 2) else 2
    # Make the initial colour ids order-preserving and contiguous.
    present = sorted(set(init.values()))
    init = {v: present.index(c) for v, c in init.items()}
    has0 = 0 in g.vertices
    best: Optional[Tuple[tuple, Dict[int, int]]] = None

    def encode(order: Dict[int, int]) -> tuple:
        return tuple(sorted(tuple(sorted((order[u], order[v]))) for u, v in g.edges))

    def search(colors):
        nonlocal best
        colors = _refine(adj, colors)
        ncol = len(set(colors.values()))
        if ncol == len(colors):
            code = encode(colors)
            if best is None or code < best[0]:
                best = (code, dict(colors))
            return
        cells: Dict[int, List[int]] = {}
        for v, c in colors.items():
            cells.setdefault(c, []).append(v)
        target = min(c for c, vs in cells.items() if len(vs) > 1)
        for v in sorted(cells[target]):
            # Individualise v: it keeps colour ``target``, the rest shift up.
            nc = {}
            for w, c in colors.items():
                if c > target or (c == target and w != v):
                    nc[w] = 2 * c + 1
                else:
                    nc[w] = 2 * c
            search(nc)

    search(init)
    code, order = best
    header = (len(g.vertices), int(has0))
    key = json.dumps([header, code], separators=(",", ":")).encode()
    return key, order


def canonical_key(g: MarkedGraph) -> bytes:
    return canonical_form(g)[0]


def is_swapped(g: MarkedGraph, order: Dict[int, int]) -> bool:
    """True when the canonical labeling places vertex 2 before vertex 1."""
    return order[2] < order[1]


def marked_isomorphic(g: MarkedGraph, h: MarkedGraph) -> bool:
    """Brute-force marked isomorphism (fix 0, {1,2} setwise); for testing."""
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return False
    if (0 in g.vertices) != (0 in h.vertices):
        return False
    core = [v for v in (0,) if v in g.vertices]
    gr = sorted(g.vertices - {0, 1, 2})
    hr = sorted(h.vertices - {0, 1, 2})
    for ends in ((1, 2), (2, 1)):
        for perm in itertools.permutations(hr):
            m = {c: c for c in core}
            m[1], m[2] = ends
            m.update(zip(gr, perm))
            if {_edge(m[u], m[v]) for u, v in g.edges} == h.edges:
                return True
    return False
