"""Class arithmetic and the mutually recursive counting algorithms.

``get_class`` solves for the class of a calligraph from three realization
counts; ``get_nor`` counts realizations by degree-2 reduction, calligraphic
splits and, as a last resort, the algebraic oracle.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, NamedTuple, Optional

from .graph import (
    C,
    MarkedGraph,
    PreconditionError,
    canonical_form,
    find_split,
    is_calligraph,
    is_minimally_rigid,
    is_swapped,
    strip_degree2,
)

log = logging.getLogger(__name__)

CACHE_FORMAT = "rigidcount-cache"
CACHE_VERSION = 1


class ClassVector(NamedTuple):
    a: int
    b: int
    c: int

    def __mul__(self, other):  # type: ignore[override]
        if isinstance(other, ClassVector):
            return class_product(self, other)
        return NotImplemented

    def swapped(self) -> "ClassVector":
        return ClassVector(self.a, self.c, self.b)

    def scaled(self, m: int) -> "ClassVector":
        return ClassVector(self.a * m, self.b * m, self.c * m)


def class_product(u, v) -> int:
    return 2 * (u[0] * v[0] - u[1] * v[1] - u[2] * v[2])


BASE_CLASSES = {
    "L": ClassVector(1, 1, 0),
    "R": ClassVector(1, 0, 1),
    "C": ClassVector(2, 0, 0),
}


def base_class(kind: str) -> ClassVector:
    return BASE_CLASSES[kind]


def glue(g: MarkedGraph, kind: str) -> MarkedGraph:
    """G with L, R or a fresh C_v attached."""
    if kind == "L":
        return g.add_edges([(0, 1)])
    if kind == "R":
        return g.add_edges([(0, 2)])
    if kind == "C":
        return g.union(C(g.fresh_vertex()))
    raise ValueError(f"unknown glue kind {kind!r}")


class ResourceError(RuntimeError):
    """The oracle cannot handle a leaf of the recursion."""

    def __init__(self, message: str, graph: Optional[MarkedGraph] = None):
        super().__init__(message)
        self.graph = graph


class InconsistencyError(AssertionError):
    """A divisibility or sign invariant of the recursion failed."""


@dataclass
class TraceNode:
    graph: MarkedGraph
    method: str
    value: object
    children: List["TraceNode"] = field(default_factory=list)
    label: Optional[str] = None

    def to_json(self) -> dict:
        value = list(self.value) if isinstance(self.value, tuple) else self.value
        out = {
            "graph": [list(e) for e in self.graph.sorted_edges()],
            "method": self.method,
            "value": value,
            "children": [c.to_json() for c in self.children],
        }
        if self.label:
            out["label"] = self.label
        return out

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


class CountResult(NamedTuple):
    count: int
    trace: Optional[TraceNode]


def _default_oracle(g: MarkedGraph, seed: int, budget: Optional[int]) -> int:
    from .oracle import count_realizations_oracle

    return count_realizations_oracle(g, seed=seed, budget=budget)


class Engine:
    """Memoising evaluator for getNoR/getClass.

    ``oracle(g, seed, budget)`` counts realizations of an unsplittable leaf.
    """

    def __init__(
        self,
        oracle: Optional[Callable[[MarkedGraph, int, Optional[int]], int]] = None,
        max_oracle_vertices: int = 7,
        seed: int = 0,
        budget: Optional[int] = None,
        trace: bool = False,
        memoize: bool = True,
        cache_path: Optional[str] = None,
        jobs: int = 1,
        prefer_marking: bool = True,
    ):
        self.oracle = oracle or _default_oracle
        self.max_oracle_vertices = max_oracle_vertices
        self.seed = seed
        self.budget = budget
        self.trace = trace
        self.memoize = memoize
        self.cache_path = cache_path
        self.jobs = jobs
        self.prefer_marking = prefer_marking
        self.memo: Dict[str, object] = {}
        self.nodes: Dict[str, TraceNode] = {}
        self.oracle_calls = 0
        if cache_path:
            self.load_cache(cache_path)

    # -- cache ------------------------------------------------------------
    def load_cache(self, path: str) -> None:
        if not os.path.exists(path):
            return
        try:
            with open(path) as fh:
                data = json.load(fh)
            if data.get("format") != CACHE_FORMAT or data.get("version") != CACHE_VERSION:
                raise ValueError("version mismatch")
            entries = data["entries"]
            for k, v in entries.items():
                self.memo[k] = ClassVector(*v) if isinstance(v, list) else int(v)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            log.warning("ignoring cache %s: %s", path, exc)

    def save_cache(self, path: Optional[str] = None) -> None:
        path = path or self.cache_path
        if not path:
            return
        entries = {k: list(v) if isinstance(v, tuple) else v for k, v in sorted(self.memo.items())}
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump({"format": CACHE_FORMAT, "version": CACHE_VERSION, "entries": entries}, fh)
        os.replace(tmp, path)

    # -- memo helpers ----------------------------------------------------------
    @staticmethod
    def _key(role: str, canon: bytes) -> str:
        return role + ":" + canon.decode()

    def _lookup(self, key: str):
        if not self.memoize:
            return None
        return self.memo.get(key)

    # -- getNoR -------------------------------------------------------------------
    def get_nor(self, g: MarkedGraph) -> CountResult:
        if not is_minimally_rigid(g):
            raise PreconditionError("get_nor expects a minimally rigid graph")
        if self.jobs > 1:
            self.prefetch_leaves(g)
        node = self._nor(g)
        return CountResult(node.value, node if self.trace else None)

    def _nor(self, g: MarkedGraph) -> TraceNode:
        canon, _ = canonical_form(g)
        key = self._key("nor", canon)
        hit = self._lookup(key)
        if hit is not None:
            node = self.nodes.get(key)
            return node if node is not None else TraceNode(g, "memo", hit)
        node = self._nor_uncached(g)
        if node.value <= 0:
            raise InconsistencyError(f"nonpositive count for {g}")
        if len(g.vertices) >= 3 and node.value % 2:
            raise InconsistencyError(f"odd count {node.value} for {g}")
        if self.memoize:
            self.memo[key] = node.value
            if self.trace:
                self.nodes[key] = node
        return node

    def _nor_uncached(self, g: MarkedGraph) -> TraceNode:
        if len(g.vertices) == 2:
            return TraceNode(g, "base", 1)
        reduced, k = strip_degree2(g)
        if not k:
            g = remark_degree2(g)
            reduced, k = strip_degree2(g)
        if k:
            child = self._nor(reduced)
            return TraceNode(g, "degree2", child.value * 2 ** k, [child])
        split = find_split(g, prefer_marking=self.prefer_marking)
        if split is not None:
            ca = self._class(split.left)
            cb = self._class(split.right)
            value = class_product(ca.value, cb.value)
            return TraceNode(split.relabeled, "split", value, [ca, cb])
        return TraceNode(g, "oracle", self._run_oracle(g))

    def _run_oracle(self, g: MarkedGraph) -> int:
        if len(g.vertices) > self.max_oracle_vertices:
            raise ResourceError(
                f"unsplittable leaf with {len(g.vertices)} vertices exceeds the oracle bound "
                f"{self.max_oracle_vertices}",
                g,
            )
        self.oracle_calls += 1
        return self.oracle(g, self.seed, self.budget)

    # -- getClass -------------------------------------------------------------------
    def get_class(self, g: MarkedGraph) -> ClassVector:
        if not is_calligraph(g):
            raise PreconditionError("get_class expects a calligraph")
        if self.jobs > 1:
            self.prefetch_leaves(g, calligraph=True)
        return self._class(g).value

    def class_trace(self, g: MarkedGraph) -> TraceNode:
        if not is_calligraph(g):
            raise PreconditionError("get_class expects a calligraph")
        return self._class(g)

    def _class(self, g: MarkedGraph) -> TraceNode:
        canon, order = canonical_form(g)
        key = self._key("class", canon)
        swap = is_swapped(g, order)
        hit = self._lookup(key)
        if hit is not None:
            value = ClassVector(*hit)
            value = value.swapped() if swap else value
            node = self.nodes.get(key)
            if node is not None and node.value == value:
                return node
            return TraceNode(g, "memo", value)
        node = self._class_uncached(g)
        cls = node.value
        if not (cls.a >= cls.b >= 0 and cls.a >= cls.c >= 0):
            raise InconsistencyError(f"class {cls} violates a>=b>=0, a>=c>=0 for {g}")
        if self.memoize:
            stored = cls.swapped() if swap else cls
            self.memo[key] = stored
            if self.trace:
                self.nodes[key] = node
        return node

    def _class_uncached(self, g: MarkedGraph) -> TraceNode:
        gl, gr = glue(g, "L"), glue(g, "R")
        rigid_l, rigid_r = is_minimally_rigid(gl), is_minimally_rigid(gr)
        if not rigid_l and not rigid_r:
            raise InconsistencyError(f"neither G+L nor G+R is minimally rigid for {g}")
        if not rigid_l:
            child = self._nor(gr)
            m = _half(child.value, g)
            return TraceNode(g, "class", ClassVector(m, m, 0), [child])
        if not rigid_r:
            child = self._nor(gl)
            m = _half(child.value, g)
            return TraceNode(g, "class", ClassVector(m, 0, m), [child])
        nl, nr, nc = self._nor(gl), self._nor(gr), self._nor(glue(g, "C"))
        if nc.value % 4:
            raise InconsistencyError(f"c(G+C)={nc.value} not divisible by 4 for {g}")
        a = nc.value // 4
        b = a - _half(nl.value, g)
        c = a - _half(nr.value, g)
        return TraceNode(g, "class", ClassVector(a, b, c), [nl, nr, nc])

    # -- parallel leaf evaluation ----------------------------------------------------
    def plan_leaves(self, g: MarkedGraph, calligraph: bool = False) -> Dict[str, MarkedGraph]:
        """Unsplittable leaves the recursion will send to the oracle (no arithmetic)."""
        leaves: Dict[str, MarkedGraph] = {}
        seen = set()

        def nor(h):
            canon, _ = canonical_form(h)
            key = self._key("nor", canon)
            if key in seen or self._lookup(key) is not None:
                return
            seen.add(key)
            if len(h.vertices) == 2:
                return
            reduced, k = strip_degree2(h)
            if not k:
                h = remark_degree2(h)
                reduced, k = strip_degree2(h)
            if k:
                return nor(reduced)
            split = find_split(h, prefer_marking=self.prefer_marking)
            if split is not None:
                cls(split.left)
                cls(split.right)
                return
            leaves[key] = h

        def cls(h):
            canon, _ = canonical_form(h)
            key = self._key("class", canon)
            if key in seen or self._lookup(key) is not None:
                return
            seen.add(key)
            gl, gr = glue(h, "L"), glue(h, "R")
            rl, rr = is_minimally_rigid(gl), is_minimally_rigid(gr)
            if not rl:
                nor(gr)
            elif not rr:
                nor(gl)
            else:
                nor(gl)
                nor(gr)
                nor(glue(h, "C"))

        (cls if calligraph else nor)(g)
        return leaves

    def prefetch_leaves(self, g: MarkedGraph, calligraph: bool = False) -> None:
        leaves = self.plan_leaves(g, calligraph)
        if not leaves:
            return
        for h in leaves.values():
            if len(h.vertices) > self.max_oracle_vertices:
                self._run_oracle(h)  # raises the resource error
        keys = list(leaves)
        graphs = [leaves[k] for k in keys]
        with ProcessPoolExecutor(max_workers=self.jobs) as pool:
            futures = [pool.submit(self.oracle, h, self.seed, self.budget) for h in graphs]
            values = [f.result() for f in futures]
        self.oracle_calls += len(values)
        for k, h, v in zip(keys, graphs, values):
            self.memo[k] = v
            if self.trace:
                self.nodes[k] = TraceNode(h, "oracle", v)


def _half(value: int, g: MarkedGraph) -> int:
    if value % 2:
        raise InconsistencyError(f"odd count {value} where an even one is required for {g}")
    return value // 2


def remark_degree2(g: MarkedGraph) -> MarkedGraph:
    """Move the marking away from a degree-2 endpoint of {1,2}.

    The count does not depend on which edge is marked, so when only vertex 1 or
    2 has degree 2 the graph is relabeled to put the mark on an edge avoiding it.
    """
    if len(g.vertices) <= 3:
        return g
    adj = g.adjacency()
    low = [v for v in (1, 2) if len(adj[v]) == 2]
    if not low:
        return g
    for u, v in g.sorted_edges():
        if u in low or v in low:
            continue
        mapping = {u: 1, v: 2, 1: u, 2: v} if {u, v}.isdisjoint((1, 2)) else None
        if mapping is None:
            # The edge shares one endpoint with {1,2}; a transposition suffices.
            shared = ({u, v} & {1, 2}).pop()
            other = v if u == shared else u
            free = ({1, 2} - {shared}).pop()
            mapping = {other: free, free: other}
        full = {w: mapping.get(w, w) for w in g.vertices}
        return g.relabel(full)
    return g


def get_class(g: MarkedGraph, **kwargs) -> ClassVector:
    return Engine(**kwargs).get_class(g)


def get_nor(g: MarkedGraph, **kwargs) -> CountResult:
    return Engine(**kwargs).get_nor(g)
