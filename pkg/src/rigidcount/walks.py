"""Walks on a calligraph, the Delta reduction and tau-polynomials.

A walk is a tuple of vertex labels whose consecutive pairs are edges of
E = e(G) minus the marked edge {1,2}. A sign labeling assigns +1 or -1 to each
edge of E and +1 to every edge through 0. The tau-polynomial of a walk is an
affine linear form in a_i, b_i (i not in {1,2}) after the substitutions a_0=0,
(a_1,b_1)=(0,0), (a_2,b_2)=(-1,0). Ideals of such forms are handled by exact
row reduction over the rationals.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .graph import Edge, MarkedGraph, _edge

Walk = Tuple[int, ...]
SignLabeling = Dict[Edge, int]
# A linear form maps variable names to coefficients; the key "1" holds the constant.
Linear = Dict[str, Fraction]
ONE = "1"

FOUR_IDEALS = ("<0>", "<1>", "<b0>", "<b0+1>")


class WalkError(ValueError):
    """A walk operation was undefined or a structural claim failed."""


# -- walks --------------------------------------------------------------------------

def edge_set(g: MarkedGraph) -> FrozenSet[Edge]:
    return frozenset(e for e in g.edges if e != (1, 2))


def inner_vertices(g: MarkedGraph) -> List[int]:
    return sorted(v for v in g.vertices if v not in (1, 2))


def is_walk(w: Sequence[int], E: FrozenSet[Edge]) -> bool:
    if not w:
        return False
    return all(a != b and _edge(a, b) in E for a, b in zip(w, w[1:]))


def walk_str(w: Walk) -> str:
    if all(0 <= v < 10 for v in w):
        return "".join(map(str, w))
    return "(" + ",".join(map(str, w)) + ")"


def parse_walk(text: str) -> Walk:
    text = text.strip()
    if text.startswith("("):
        return tuple(int(t) for t in text.strip("()").split(","))
    return tuple(int(ch) for ch in text)


def concat(r: Walk, s: Walk) -> Walk:
    return tuple(r[:-1]) + tuple(s)


def neg(r: Walk) -> Walk:
    return tuple(reversed(r))


def walk_plus(r: Walk, s: Walk, E: FrozenSet[Edge]) -> Walk:
    """The first of r.s, r.(-s), (-r).s, (-r).(-s) that joins up into a walk.

    Joining means the last vertex of the left walk is the first of the right
    one, so the dropped vertex reappears and the tau-polynomials add up.
    """
    for left, right in ((r, s), (r, neg(s)), (neg(r), s), (neg(r), neg(s))):
        if left[-1] == right[0]:
            w = concat(left, right)
            if is_walk(w, E):
                return w
    raise WalkError(f"{walk_str(r)} + {walk_str(s)} is undefined")


def walk_key(w: Walk):
    return (len(w), tuple(w))


def walk_max(ws: Iterable[Walk]) -> Walk:
    ws = list(ws)
    if not ws:
        raise WalkError("max of an empty walk set")
    return max(ws, key=walk_key)


def touching(L: Iterable[Walk], v: int) -> List[Walk]:
    return [w for w in L if w[0] == v or w[-1] == v]


def delta_v(L: Iterable[Walk], v: int, E: FrozenSet[Edge]) -> FrozenSet[Walk]:
    L = frozenset(L)
    Lv = touching(L, v)
    if not Lv:
        return L
    through0 = [w for w in Lv if w[0] == 0 or w[-1] == 0]
    if not through0:
        raise WalkError(f"no walk joins 0 and {v}; Delta_{v} is undefined")
    rho = walk_max(through0)
    rest = L.difference(Lv)
    return rest | {walk_plus(rho, s, E) for s in Lv if s != rho}


def kind(w: Walk) -> Optional[str]:
    ends = (w[0], w[-1])
    return {(0, 1): "western", (0, 2): "eastern", (0, 0): "round"}.get(ends)


def initial_walks(g: MarkedGraph, rng: Optional[random.Random] = None) -> FrozenSet[Walk]:
    """One oriented walk per edge of E.

    Edges through 0 always start at 0. Other edges run from the smaller label
    unless ``rng`` is given, in which case the orientation is random.
    """
    out = set()
    for u, w in sorted(edge_set(g)):
        if u == 0 or rng is None or rng.random() < 0.5:
            out.add((u, w))
        else:
            out.add((w, u))
    return frozenset(out)


def is_initial(L: Iterable[Walk], E: FrozenSet[Edge]) -> bool:
    L = list(L)
    if len(L) != len(E) or any(len(w) != 2 for w in L):
        return False
    return {_edge(*w) for w in L} == set(E)


def find_route(g: MarkedGraph) -> Walk:
    """Depth-first walk from 0 through every vertex other than 1 and 2.

    Backtracking steps are recorded, so consecutive entries are always edges.
    Neighbours are visited in ascending order.
    """
    E = edge_set(g)
    adj: Dict[int, List[int]] = {v: [] for v in inner_vertices(g)}
    for u, w in E:
        if u in adj and w in adj:
            adj[u].append(w)
            adj[w].append(u)
    if 0 not in adj:
        raise WalkError("vertex 0 is missing")
    route = [0]
    seen = {0}

    def dfs(v):
        for w in sorted(adj[v]):
            if w not in seen:
                seen.add(w)
                route.append(w)
                dfs(w)
                if len(seen) < len(adj):
                    route.append(v)

    dfs(0)
    if len(seen) != len(adj):
        raise WalkError(f"vertices {sorted(set(adj) - seen)} are not reachable from 0 avoiding 1 and 2")
    while len(route) > 1 and route[-1] in route[:-1]:
        route.pop()
    return tuple(route)


def apply_route(L: Iterable[Walk], route: Walk, E: FrozenSet[Edge]) -> List[Tuple[int, FrozenSet[Walk]]]:
    """The chain (v, Delta_v(...)) along the route, starting with (0, L)."""
    L = frozenset(L)
    chain = [(route[0], L)]
    for v in route[1:]:
        if v == 0:
            continue
        L = delta_v(L, v, E)
        chain.append((v, L))
    return chain


# -- sign labelings --------------------------------------------------------------------

def check_labeling(tau: SignLabeling, E: FrozenSet[Edge]) -> None:
    if set(tau) != set(E):
        raise WalkError("a sign labeling needs exactly one sign per edge of E")
    for e, s in tau.items():
        if s not in (1, -1):
            raise WalkError(f"sign {s} on {e} is not +1 or -1")
        if 0 in e and s != 1:
            raise WalkError(f"edge {e} contains 0 and must be positive")


def random_labeling(g: MarkedGraph, rng: random.Random) -> SignLabeling:
    return {e: 1 if 0 in e else rng.choice((1, -1)) for e in sorted(edge_set(g))}


def sign(tau: SignLabeling, u: int, w: int) -> int:
    return tau[_edge(u, w)]


# -- linear forms ------------------------------------------------------------------

def _a(v: int) -> Linear:
    if v in (0, 1):
        return {}
    if v == 2:
        return {ONE: Fraction(-1)}
    return {f"a{v}": Fraction(1)}


def _b(v: int) -> Linear:
    if v in (1, 2):
        return {}
    return {f"b{v}": Fraction(1)}


def _add(f: Linear, g: Linear, k=1) -> Linear:
    out = dict(f)
    for name, c in g.items():
        out[name] = out.get(name, Fraction(0)) + k * c
        if out[name] == 0:
            del out[name]
    return out


def phi(tau: SignLabeling, i: int, j: int) -> Linear:
    s = sign(tau, i, j)
    f = _add(_a(i), _a(j), -1)
    return _add(f, _add(_b(i), _b(j), -1), s)


def tau_poly(w: Walk, tau: SignLabeling) -> Linear:
    f: Linear = {}
    for i, j in zip(w, w[1:]):
        f = _add(f, phi(tau, i, j))
    return f


def chi(w: Walk, tau: SignLabeling) -> List[int]:
    """Values of chi along the walk, position by position."""
    r = len(w) - 1
    out = [0] * len(w)
    for i in range(1, r):
        out[i] = sign(tau, w[i], w[i + 1]) - sign(tau, w[i - 1], w[i])
    return out


def flip_form(w: Walk, tau: SignLabeling) -> Linear:
    """b0 + sum chi(v) b_v + eps, the predicted form of a western/eastern tau_w."""
    if kind(w) not in ("western", "eastern"):
        raise WalkError(f"{walk_str(w)} is neither western nor eastern")
    f: Linear = {"b0": Fraction(1)}
    for v, x in zip(w, chi(w, tau)):
        if x:
            f = _add(f, _b(v), x)
    if w[-1] == 2:
        f = _add(f, {ONE: Fraction(1)})
    return f


def format_linear(f: Linear) -> str:
    if not f:
        return "0"

    def order(name):
        if name == ONE:
            return (2, 0)
        return (0 if name[0] == "a" else 1, int(name[1:]))

    parts = []
    for name in sorted(f, key=order):
        c = f[name]
        mag = abs(c)
        body = str(mag) if name == ONE else (name if mag == 1 else f"{mag}*{name}")
        parts.append(("-" if c < 0 else "+", body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, body in parts[1:]:
        text += f" {s} {body}"
    return text


def parse_linear(text: str) -> Linear:
    """Inverse of ``format_linear`` (accepts 'b0 - 2*b3 + 1' style input)."""
    f: Linear = {}
    tokens = text.replace("-", " - ").replace("+", " + ").split()
    s = 1
    for tok in tokens:
        if tok in "+-":
            s = 1 if tok == "+" else -1
            continue
        if "*" in tok:
            c, name = tok.split("*")
            f = _add(f, {name: Fraction(c)}, s)
        elif tok[0].isalpha():
            f = _add(f, {tok: Fraction(1)}, s)
        elif tok != "0":
            f = _add(f, {ONE: Fraction(tok)}, s)
        s = 1
    return f


# -- row reduction -----------------------------------------------------------------------

def variable_order(g: MarkedGraph, route: Optional[Walk] = None) -> List[str]:
    """a-variables along the route, then b-variables along it, b0 last."""
    seq: List[int] = []
    for v in (route or ()) + tuple(inner_vertices(g)):
        if v not in seq:
            seq.append(v)
    avars = [f"a{v}" for v in seq if v != 0]
    bvars = [f"b{v}" for v in seq if v != 0]
    return avars + bvars + ["b0"]


def rref(forms: Iterable[Linear], order: Sequence[str]) -> List[Linear]:
    """Reduced row echelon basis of the span; the unit ideal becomes [{1: 1}]."""
    cols = list(order) + [ONE]
    index = {c: i for i, c in enumerate(cols)}
    rows = []
    for f in forms:
        for name in f:
            if name not in index:
                raise WalkError(f"variable {name} is not in the elimination order")
        rows.append([f.get(c, Fraction(0)) for c in cols])
    pivots: List[int] = []
    r = 0
    for col in range(len(cols)):
        sel = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        p = rows[r][col]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                k = rows[i][col]
                rows[i] = [x - k * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if pivots and pivots[-1] == len(cols) - 1:
        return [{ONE: Fraction(1)}]
    return [{c: x for c, x in zip(cols, row) if x != 0} for row in rows[:r]]


def eliminate(forms: Iterable[Linear], drop: Iterable[str], order: Sequence[str]) -> List[Linear]:
    """Basis of the ideal intersected with the ring without the ``drop`` variables."""
    drop = set(drop)
    order = [c for c in order if c in drop] + [c for c in order if c not in drop]
    basis = rref(forms, order)
    return [f for f in basis if not drop.intersection(f)]


def same_ideal(f: Iterable[Linear], g: Iterable[Linear], order: Sequence[str]) -> bool:
    return _canon(rref(f, order)) == _canon(rref(g, order))


def _canon(rows: List[Linear]):
    return sorted(tuple(sorted(r.items())) for r in rows)


def ideal_forms(L: Iterable[Walk], tau: SignLabeling) -> List[Linear]:
    return [tau_poly(w, tau) for w in sorted(L, key=walk_key)]


# -- the checks -------------------------------------------------------------------------

def eliminate_b0(g: MarkedGraph, L: Iterable[Walk], tau: SignLabeling) -> str:
    """The elimination ideal I_tau(L) meet C[b0], as one of FOUR_IDEALS."""
    E = edge_set(g)
    L = list(L)
    if not is_initial(L, E):
        raise WalkError("eliminate_b0 needs an initial walk set")
    check_labeling(tau, E)
    order = variable_order(g)
    drop = [c for c in order if c != "b0"]
    basis = eliminate(ideal_forms(L, tau), drop, order)
    if not basis:
        return "<0>"
    if basis == [{ONE: Fraction(1)}]:
        return "<1>"
    if len(basis) == 1:
        f = basis[0]
        if f == {"b0": Fraction(1)}:
            return "<b0>"
        if f == {"b0": Fraction(1), ONE: Fraction(1)}:
            return "<b0+1>"
    raise WalkError(f"elimination ideal {[format_linear(f) for f in basis]} is none of {FOUR_IDEALS}")


def cross_check_delta(
    g: MarkedGraph, L: Iterable[Walk], tau: SignLabeling, route: Walk
) -> List[Tuple[int, bool]]:
    """Compare I(Delta_v(L)) with I(L) meet A-hat(v) at each route step."""
    E = edge_set(g)
    order = variable_order(g, route)
    out = []
    chain = apply_route(L, route, E)
    for (_, before), (v, after) in zip(chain, chain[1:]):
        lhs = ideal_forms(after, tau)
        rhs = eliminate(ideal_forms(before, tau), [f"a{v}"], order)
        out.append((v, same_ideal(lhs, rhs, order)))
    return out


def path_to(g: MarkedGraph, start: int, target: int) -> Walk:
    """A shortest walk in E from start to target (breadth first, ascending labels)."""
    E = edge_set(g)
    adj: Dict[int, List[int]] = {}
    for u, w in E:
        adj.setdefault(u, []).append(w)
        adj.setdefault(w, []).append(u)
    prev = {start: None}
    queue = [start]
    for v in queue:
        if v == target:
            break
        for w in sorted(adj.get(v, ())):
            if w not in prev:
                prev[w] = v
                queue.append(w)
    if target not in prev:
        raise WalkError(f"no walk from {start} to {target}")
    out = [target]
    while out[-1] != start:
        out.append(prev[out[-1]])
    return tuple(reversed(out))


def round_as_difference(g: MarkedGraph, w: Walk) -> Tuple[Walk, Walk]:
    """Walks (x, y), both western or both eastern, with tau_w = tau_x - tau_y.

    Split w at an interior position k and append a walk pi from w_k to 1:
    x = w[:k+1] . pi and y = (-w[k:]) . pi. When 1 is unreachable, pi ends at 2.
    """
    if kind(w) != "round":
        raise WalkError(f"{walk_str(w)} is not round")
    for target in (1, 2):
        for k in range(1, len(w) - 1):
            try:
                pi = path_to(g, w[k], target)
            except WalkError:
                continue
            return concat(w[: k + 1], pi), concat(neg(w[k:]), pi)
    raise WalkError(f"no interior vertex of {walk_str(w)} reaches 1 or 2")


def positive_component(g: MarkedGraph, tau: SignLabeling) -> FrozenSet[int]:
    """Vertices joined to 0 by positively signed edges."""
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for e, s in tau.items():
            if s == 1 and v in e:
                w = e[0] if e[1] == v else e[1]
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return frozenset(seen)


def shifted(f: Linear, K: FrozenSet[int]) -> Linear:
    """Substitute b_v -> b_v + b0/2 for v in K minus 0."""
    out = dict(f)
    for v in K:
        if v == 0:
            continue
        c = f.get(f"b{v}")
        if c:
            out = _add(out, {"b0": c / 2})
    return out


def final_generators(g: MarkedGraph, L: Iterable[Walk], tau: SignLabeling, route: Walk) -> List[Walk]:
    """Western and eastern walks generating I(L) meet B.

    Round walks of the final Delta set are replaced by their two western
    walks from ``round_as_difference``.
    """
    E = edge_set(g)
    final = apply_route(L, route, E)[-1][1]
    out = set()
    for w in final:
        k = kind(w)
        if k is None:
            raise WalkError(f"{walk_str(w)} is neither western, eastern nor round")
        if k == "round":
            out.update(round_as_difference(g, w))
        else:
            out.add(w)
    return sorted(out, key=walk_key)


def verify_labeling(
    g: MarkedGraph, tau: SignLabeling, L: Optional[Iterable[Walk]] = None, route: Optional[Walk] = None
) -> dict:
    """Run every check on one (calligraph, labeling) pair and report the outcome."""
    E = edge_set(g)
    check_labeling(tau, E)
    L = frozenset(L if L is not None else initial_walks(g))
    route = route or find_route(g)
    order = variable_order(g, route)
    chain = apply_route(L, route, E)
    final = chain[-1][1]
    steps = cross_check_delta(g, L, tau, route)
    kinds_ok = all(kind(w) is not None for w in final)
    gens = final_generators(g, L, tau, route)
    flips_ok = all(tau_poly(w, tau) == flip_form(w, tau) for w in gens)
    rounds_ok = True
    for w in final:
        if kind(w) == "round":
            x, y = round_as_difference(g, w)
            rounds_ok &= kind(x) == kind(y) and kind(x) in ("western", "eastern")
            rounds_ok &= _add(tau_poly(x, tau), tau_poly(y, tau), -1) == tau_poly(w, tau)
    # the final set generates the same ideal as the western/eastern generators
    gens_ok = same_ideal(ideal_forms(final, tau), ideal_forms(gens, tau), order)
    ideal = eliminate_b0(g, L, tau)
    K = positive_component(g, tau)
    positive_walk = 1 in K or 2 in K
    shift_ok = True
    if 1 not in K and 2 not in K:
        shift_ok = all("b0" not in shifted(tau_poly(w, tau), K) for w in gens)
    return {
        "route": list(route),
        "chain": [{"vertex": v, "walks": sorted(map(walk_str, S), key=lambda s: (len(s), s))} for v, S in chain],
        "delta_steps": [{"vertex": v, "ok": ok} for v, ok in steps],
        "final_kinds_ok": kinds_ok,
        "flip_ok": flips_ok,
        "round_difference_ok": rounds_ok,
        "generators_ok": gens_ok,
        "positive_walk": bool(positive_walk),
        "shift_ok": shift_ok,
        "ideal": ideal,
        "ok": all(ok for _, ok in steps) and kinds_ok and flips_ok and rounds_ok and gens_ok and shift_ok,
    }


def property_sweep(samples: int, max_vertices: int = 8, seed: int = 0) -> List[dict]:
    """Random (calligraph, labeling) pairs with every check evaluated.

    Calligraphs whose vertices other than 1 and 2 are not all reachable from 0
    without passing 1 or 2 admit no route and are resampled.
    """
    from .generate import random_calligraph

    rng = random.Random(seed)
    out = []
    while len(out) < samples:
        n = rng.randint(4, max_vertices)
        g = random_calligraph(n, rng)
        try:
            route = find_route(g)
        except WalkError:
            continue
        tau = random_labeling(g, rng)
        L = initial_walks(g, rng)
        rep = verify_labeling(g, tau, L, route)
        rep["graph"] = [list(e) for e in g.sorted_edges()]
        rep["labeling"] = {f"{u}-{w}": s for (u, w), s in sorted(tau.items())}
        out.append(rep)
    return out
