"""Base points of coupler-curve series and the operator calculus behind them.

Families of plane curves are single polynomials in (x, y) whose remaining
variables are parameters (edge lengths). Coefficients live in Q(i). A point
is a base point when every coefficient polynomial, viewed as a function of
the parameters, vanishes there.

Two layers are provided:

* chart and blowup maps (gamma_i, alpha, beta) acting on a single family,
  used to read off cyclic, 1-centric and 2-centric base points directly;
* the operators on edge polynomials (H, F, M, N, G, T and B) whose eight
  conditions certify that a small calligraph is centric.

Elimination runs through the lexicographic Buchberger engine, so only small
calligraphs are in reach.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import sympy

from .classes import ClassVector
from .graph import MarkedGraph, _edge
from .groebner import BudgetExceeded, buchberger
from .polynomial import GaussianRational, I, Poly, PolyRing

Point = Tuple[GaussianRational, GaussianRational]
ZERO = GaussianRational(0)
CYCLIC = ((ZERO, I), (ZERO, -I))


class Inconclusive(Exception):
    """A computation could not be certified (budget, or points outside Q(i))."""


def gq(value) -> GaussianRational:
    return GaussianRational.coerce(value)


def pt(x, y) -> Point:
    return (gq(x), gq(y))


def fmt_point(p: Point) -> str:
    return f"({p[0]!r}, {p[1]!r})"


# -- families: multiplicity, alpha, beta, charts ------------------------------------

def translate(f: Poly, p: Point, x: str = "x0", y: str = "y0") -> Poly:
    ring = f.ring
    return f.subs({x: ring.gen(x) + p[0], y: ring.gen(y) + p[1]})


def multiplicity_at(f: Poly, p: Point, x: str = "x0", y: str = "y0") -> int:
    """Order of vanishing of the family at p, uniformly in the parameters."""
    g = translate(f, p, x, y)
    if g.is_zero():
        raise ValueError("the zero family has no multiplicity")
    return min(sum(k) for k in g.coefficients_in([x, y]))


def alpha(f: Poly, p: Point, m: int, x: str = "x0", y: str = "y0") -> Poly:
    ring = f.ring
    X, Y = ring.gen(x), ring.gen(y)
    g = f.subs({x: X + p[0], y: Y * X + p[1]})
    return g.div_monomial(x, m)


def beta(f: Poly, p: Point, m: int, x: str = "x0", y: str = "y0") -> Poly:
    ring = f.ring
    X, Y = ring.gen(x), ring.gen(y)
    g = f.subs({x: X * Y + p[0], y: Y + p[1]})
    return g.div_monomial(y, m)


def homogenize(f: Poly, x: str = "x0", y: str = "y0", z=("z0", "z1", "z2")) -> Poly:
    """Homogenize in (x, y) and rename: z0 is the new variable, z1=x, z2=y."""
    ring = f.ring
    ix, iy = ring.index(x), ring.index(y)
    iz = [ring.index(n) for n in z]
    d = f.degree_in([x, y])
    out = {}
    for m, c in f.terms.items():
        e = list(m)
        a, b = e[ix], e[iy]
        e[ix] = e[iy] = 0
        e[iz[0]] += d - a - b
        e[iz[1]] += a
        e[iz[2]] += b
        out[tuple(e)] = c
    return Poly(ring, out)


def gamma_charts(h: Poly, x: str = "x0", y: str = "y0", z=("z0", "z1", "z2")) -> Tuple[Poly, Poly, Poly]:
    """(h(1,x,y), h(x,1,y), h(y,x,1)) for h homogeneous in z."""
    degs = {sum(m[h.ring.index(n)] for n in z) for m in h.terms}
    if len(degs) > 1:
        raise ValueError("polynomial is not homogeneous in the chart variables")
    X, Y = h.ring.gen(x), h.ring.gen(y)
    z0, z1, z2 = z
    return (
        h.subs({z0: 1, z1: X, z2: Y}),
        h.subs({z0: X, z1: 1, z2: Y}),
        h.subs({z0: Y, z1: X, z2: 1}),
    )


# -- solving coefficient systems -------------------------------------------------------

_SX, _SY = sympy.symbols("x y")


def _coef_to_sympy(c):
    c = gq(c)
    return sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(
        c.im.numerator, c.im.denominator
    )


def _sympy_to_coef(v) -> GaussianRational:
    re, im = sympy.Rational(sympy.re(v)), sympy.Rational(sympy.im(v))
    return GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def _to_sympy(f: Poly, names: Dict[str, object]):
    expr = 0
    for m, c in f.terms.items():
        t = _coef_to_sympy(c)
        for n, e in zip(f.ring.names, m):
            if e:
                if n not in names:
                    raise ValueError(f"unexpected variable {n}")
                t *= names[n] ** e
        expr += t
    return expr


def _univariate_roots(polys: Sequence, var) -> Optional[List[GaussianRational]]:
    """Common roots in Q(i) of univariate sympy expressions; None if all vanish."""
    g = None
    for p in polys:
        P = sympy.Poly(p, var, domain=sympy.QQ_I)
        if P.is_zero:
            continue
        g = P if g is None else g.gcd(P)
    if g is None:
        return None
    if g.degree() <= 0:
        return []
    roots = []
    for fac, _ in g.factor_list()[1]:
        if fac.degree() != 1:
            raise Inconclusive(f"factor {fac.as_expr()} has no roots in Q(i)")
        a, b = fac.all_coeffs()
        roots.append(_sympy_to_coef(sympy.nsimplify(-b / a)))
    return sorted(set(roots), key=lambda r: (r.re, r.im))


def coefficient_system(f: Poly, params: Sequence[str]) -> List[Poly]:
    """The polynomials c_alpha(x, y) of f with respect to the parameter monomials."""
    return list(f.coefficients_in(list(params)).values())


def base_points_of(
    f: Poly, t: Union[str, int] = "x0", x: str = "x0", y: str = "y0", params: Optional[Sequence[str]] = None
) -> List[Point]:
    """Base points of f inside V(t); t is x, y or 0 for the whole plane.

    Raises Inconclusive when some coordinate is not in Q(i) or the base locus
    is a curve.
    """
    if params is None:
        params = [n for n in f.ring.names if n not in (x, y)]
    coefs = coefficient_system(f, params)
    names = {x: _SX, y: _SY}
    exprs = [sympy.expand(_to_sympy(c, names)) for c in coefs]
    if t == x or t == y:
        on, free = (_SX, _SY) if t == x else (_SY, _SX)
        roots = _univariate_roots([e.subs(on, 0) for e in exprs], free)
        if roots is None:
            raise Inconclusive(f"the whole line V({t}) consists of base points")
        return [(ZERO, r) if t == x else (r, ZERO) for r in roots]
    if t != 0:
        raise ValueError("t must be x, y or 0")
    ring = PolyRing((x, y))
    reduced = [ring.convert(_restrict(c, (x, y))) for c in coefs]
    reduced = [c for c in reduced if not c.is_zero()]
    if not reduced:
        raise Inconclusive("every point is a base point")
    gb = buchberger(reduced, "lex")
    if gb.is_unit():
        return []
    # lex with x > y: the last basis element is univariate in y
    last = [p for p in gb if set(p.variables()) <= {y}]
    if not last:
        raise Inconclusive("the base locus is not finite")
    ys = _univariate_roots([_to_sympy(p, {y: _SY}) for p in last], _SY)
    out = []
    for r in ys or []:
        sub = [sympy.expand(_to_sympy(p, {x: _SX, y: _SY}).subs(_SY, _coef_to_sympy(r))) for p in gb]
        xs = _univariate_roots(sub, _SX)
        if xs is None:
            raise Inconclusive("the base locus is not finite")
        out.extend((a, r) for a in xs)
    return sorted(out, key=lambda p: (p[0].re, p[0].im, p[1].re, p[1].im))


def _restrict(f: Poly, keep: Sequence[str]) -> Poly:
    ring = PolyRing(tuple(keep))
    idx = [f.ring.index(n) for n in keep]
    out: Dict[tuple, object] = {}
    for m, c in f.terms.items():
        if any(e for k, e in enumerate(m) if k not in idx):
            raise ValueError("polynomial involves variables outside the target ring")
        key = tuple(m[k] for k in idx)
        out[key] = out.get(key, 0) + c
    return Poly(ring, out)


# -- series analysis ---------------------------------------------------------------

@dataclass(frozen=True)
class BasePointRecord:
    point: Point
    multiplicity: int
    chart: str  # affine, gamma1, gamma2
    lineage: Tuple[Point, ...] = ()
    kind: str = "other"  # cyclic, one-centric, two-centric, other

    def to_json(self) -> dict:
        return {
            "point": [repr(self.point[0]), repr(self.point[1])],
            "multiplicity": self.multiplicity,
            "chart": self.chart,
            "lineage": [[repr(a), repr(b)] for a, b in self.lineage],
            "kind": self.kind,
        }


@dataclass
class SeriesReport:
    records: List[BasePointRecord] = field(default_factory=list)
    meets_infinity_at_cyclic_only: bool = False

    @property
    def centric(self) -> bool:
        return self.meets_infinity_at_cyclic_only and all(r.kind != "other" for r in self.records)

    def multiplicity(self, kind: str) -> int:
        ms = {r.multiplicity for r in self.records if r.kind == kind}
        if len(ms) > 1:
            raise ValueError(f"conjugate {kind} base points have different multiplicities {ms}")
        return ms.pop() if ms else 0

    def to_json(self) -> dict:
        return {
            "centric": self.centric,
            "meets_infinity_at_cyclic_only": self.meets_infinity_at_cyclic_only,
            "records": [r.to_json() for r in self.records],
        }


def _near_points(f: Poly, p: Point, m: int, x: str, y: str, params) -> Tuple[List[Point], List[Point]]:
    a = base_points_of(alpha(f, p, m, x, y), x, x, y, params)
    b = [q for q in base_points_of(beta(f, p, m, x, y), x, x, y, params) if q == (ZERO, ZERO)]
    return a, b


def analyze_series(f: Poly, x: str = "x0", y: str = "y0", params: Optional[Sequence[str]] = None) -> SeriesReport:
    """Base points of the series of projective closures of the family f.

    f must be square free with no monomial factor in x or y. Infinitely near
    points are followed two levels deep over the cyclic points and one level
    elsewhere.
    """
    ring = f.ring
    if params is None:
        params = [n for n in ring.names if n not in (x, y, "z0", "z1", "z2")]
    if f.monomial_factor_exponent(x) or f.monomial_factor_exponent(y):
        raise ValueError("the family has a monomial factor")
    zring = PolyRing(tuple(ring.names) + tuple(n for n in ("z0", "z1", "z2") if n not in ring.names))
    fz = zring.convert(f)
    h = homogenize(fz, x, y)
    g0, g1, g2 = (zring.convert(c) for c in gamma_charts(h, x, y))
    rep = SeriesReport()

    def add(point, mult, chart, lineage, kind):
        rep.records.append(BasePointRecord(point, mult, chart, tuple(lineage), kind))

    for p in base_points_of(g0, 0, x, y, params):
        add(p, multiplicity_at(g0, p, x, y), "affine", (), "other")
    for p in base_points_of(g1, x, x, y, params):
        m = multiplicity_at(g1, p, x, y)
        cyclic = p in CYCLIC
        add(p, m, "gamma1", (), "cyclic" if cyclic else "other")
        near_a, near_b = _near_points(g1, p, m, x, y, params)
        for q in near_a:
            fa = alpha(g1, p, m, x, y)
            n = multiplicity_at(fa, q, x, y)
            if cyclic and q == (ZERO, ZERO):
                kind = "one-centric"
            elif cyclic and q == (ZERO, -p[1]):
                kind = "two-centric"
            else:
                kind = "other"
            add(q, n, "gamma1", (p,), kind)
            deeper_a, deeper_b = _near_points(fa, q, n, x, y, params)
            for r in deeper_a + deeper_b:
                add(r, multiplicity_at(alpha(fa, q, n, x, y), r, x, y) if r in deeper_a
                    else multiplicity_at(beta(fa, q, n, x, y), r, x, y), "gamma1", (p, q), "other")
        for q in near_b:
            add(q, multiplicity_at(beta(g1, p, m, x, y), q, x, y), "gamma1", (p,), "other")
    if (ZERO, ZERO) in base_points_of(g2, x, x, y, params):
        add((ZERO, ZERO), multiplicity_at(g2, (ZERO, ZERO), x, y), "gamma2", (), "other")
    # the curves meet z0=0 only at the cyclic points iff h(0,z1,z2) is a power of z1^2+z2^2
    at_inf = h.subs({"z0": 0})
    circle = zring.gen("z1") ** 2 + zring.gen("z2") ** 2
    k = at_inf.degree_in(["z1", "z2"])
    ok = k % 2 == 0 and not at_inf.is_zero()
    if ok:
        try:
            q = at_inf.exact_div(circle ** (k // 2)) if k else at_inf
            ok = q.degree_in(["z1", "z2"]) == 0
        except ArithmeticError:
            ok = False
    rep.meets_infinity_at_cyclic_only = ok
    return rep


def pseudo_class_from_series(f: Poly, m: int, x: str = "x0", y: str = "y0", params=None) -> ClassVector:
    rep = analyze_series(f, x, y, params)
    if not rep.centric:
        raise Inconclusive("the series is not centric; the pseudo class is undefined")
    return ClassVector(
        m * rep.multiplicity("cyclic"), m * rep.multiplicity("one-centric"), m * rep.multiplicity("two-centric")
    )


# -- the polynomial ring of a calligraph -----------------------------------------------------

def length_name(e: Tuple[int, int]) -> str:
    a, b = max(e), min(e)
    return f"l{a}{b}" if a < 10 and b < 10 else f"l{a}_{b}"


class CalligraphRing:
    """Variables x_i, y_i (i not 1, 2) and l_e, in the elimination order.

    The order is l_e ascending by (max, min) endpoint, below x_0 < y_0 < x_3 <
    y_3 < ...; the ring lists variables from largest to smallest.
    """

    def __init__(self, g: MarkedGraph, extra: Sequence[str] = ()):
        self.graph = g
        self.E = sorted((e for e in g.edges if e != (1, 2)), key=lambda e: (max(e), min(e)))
        self.V = sorted(v for v in g.vertices if v not in (1, 2))
        if 0 not in self.V:
            raise ValueError("a calligraph needs vertex 0")
        self.lengths = [length_name(e) for e in self.E]
        coords = []
        for v in self.V:
            coords += [f"x{v}", f"y{v}"]
        ascending = self.lengths + coords
        self.ring = PolyRing(tuple(reversed(ascending)) + tuple(extra))
        self.S = set(self.lengths) | {"x0", "y0"}

    def gen(self, name: str) -> Poly:
        return self.ring.gen(name)

    def coord(self, v: int) -> Tuple[Poly, Poly]:
        if v == 1:
            return self.ring.zero(), self.ring.zero()
        if v == 2:
            return self.ring.one(), self.ring.zero()
        return self.gen(f"x{v}"), self.gen(f"y{v}")

    def mu(self, e: Tuple[int, int]) -> Poly:
        (xi, yi), (xj, yj) = self.coord(e[0]), self.coord(e[1])
        return (xi - xj) ** 2 + (yi - yj) ** 2 - self.gen(length_name(e)) ** 2

    def mu_all(self) -> List[Poly]:
        return [self.mu(e) for e in self.E]

    def in_S(self, f: Poly) -> bool:
        return set(f.variables()) <= self.S


# -- operators on single polynomials -----------------------------------------------------

def hat_H(f: Poly, r: str = "x0") -> Poly:
    """Homogenize in (x0, y0) against z0, then set r=1 and rename z0 to r."""
    ring = f.ring
    ix, iy = ring.index("x0"), ring.index("y0")
    ir = ring.index(r)
    d = f.degree_in(["x0", "y0"])
    out: Dict[tuple, object] = {}
    for m, c in f.terms.items():
        e = list(m)
        z = d - e[ix] - e[iy]
        e[ir] = 0
        e[ir] += z
        key = tuple(e)
        out[key] = out.get(key, 0) + c
    return Poly(ring, out)


def hat_F(f: Poly, r: str) -> Poly:
    return f.remove_monomial_factor(r)


def hat_M(f: Poly, c=I) -> Poly:
    ring = f.ring
    return f.subs({"y0": ring.gen("x0") * ring.gen("y0") + c})


def hat_N(f: Poly, c=I) -> Poly:
    ring = f.ring
    return f.subs({"y0": ring.gen("y0") + c, "x0": ring.gen("x0") * ring.gen("y0")})


def strip(f: Poly) -> Poly:
    """F_y0 after F_x0."""
    return hat_F(hat_F(f, "x0"), "y0")


def op_H(f: Poly, r: str = "x0") -> Poly:
    return strip(hat_H(f, r))


def op_M(f: Poly, c=I) -> Poly:
    return strip(hat_M(f, c))


def op_N(f: Poly, c=I) -> Poly:
    return strip(hat_N(f, c)).swap("x0", "y0")


def hat_ops(f: Poly, which: str, arg=None) -> Poly:
    if which == "H_r":
        return hat_H(f, arg or "x0")
    if which == "F_r":
        return hat_F(f, arg or "x0")
    if which == "M_c":
        return hat_M(f, I if arg is None else arg)
    if which == "N_c":
        return hat_N(f, I if arg is None else arg)
    raise ValueError(f"unknown operator {which}")


def substitute_T(f: Poly, s: Poly, lengths: Iterable[str]) -> Poly:
    ring = f.ring
    mapping = {"x0": ring.gen("x0") * s}
    for n in lengths:
        mapping[n] = ring.gen(n) * s
    return f.subs(mapping)


# -- operators on polynomial sets ---------------------------------------------------------

@dataclass
class Elimination:
    """The eliminant set hat-G(P) and its stripped version G(P)."""

    hat: List[Poly]
    stripped: List[Poly]
    steps: int = 0


def op_G(cr: CalligraphRing, P: Sequence[Poly], budget: Optional[int] = None) -> Elimination:
    P = [p for p in P if not p.is_zero()]
    try:
        gb = buchberger(P, "lex", budget=budget)
    except BudgetExceeded as exc:
        raise Inconclusive(f"elimination exceeded its budget: {exc}") from None
    hat = [p for p in gb if cr.in_S(p)]
    stripped = []
    for p in hat:
        q = strip(p)
        if q not in stripped:
            stripped.append(q)
    return Elimination(hat, stripped, gb.stats.get("steps", 0) if isinstance(gb.stats, dict) else 0)


def op_B(cr: CalligraphRing, P: Sequence[Poly], t: Union[str, int] = "x0") -> List[Point]:
    """Union of the base points in V(t) of the members of P that lie in S."""
    out = set()
    for f in P:
        if cr.in_S(f):
            out.update(base_points_of(f, t, "x0", "y0", cr.lengths))
    return sorted(out, key=lambda p: (p[0].re, p[0].im, p[1].re, p[1].im))


@dataclass
class TResult:
    polys: List[Poly]
    s: Poly
    U: List[GaussianRational]


def op_T(cr: CalligraphRing, P: Sequence[Poly], budget: Optional[int] = None) -> TResult:
    G = op_G(cr, P, budget)
    if len(G.stripped) != 1:
        raise Inconclusive(f"expected one eliminant before T, found {len(G.stripped)}")
    U = [p[1] for p in op_B(cr, G.stripped)]
    ring = cr.ring
    s = ring.gen("x0")
    for u in U:
        s = s * (ring.gen("y0") - u)
    return TResult([substitute_T(f, s, cr.lengths) for f in P], s, U)


def composite_ops(cr: CalligraphRing, P: Sequence[Poly], which: str, arg=None, budget=None) -> List[Poly]:
    if which == "G":
        return op_G(cr, P, budget).stripped
    if which == "H_r":
        return [op_H(f, arg or "x0") for f in P]
    if which == "M_c":
        return [op_M(f, I if arg is None else arg) for f in P]
    if which == "N_c":
        return [op_N(f, I if arg is None else arg) for f in P]
    if which == "T":
        return op_T(cr, P, budget).polys
    raise ValueError(f"unknown operator {which}")


# -- Table of operator images ---------------------------------------------------------

EDGE_KINDS = ("contains0", "neither", "contains1", "contains2")
ROWS = {
    1: "mu",
    2: "H.mu",
    3: "H_y0.mu",
    4: "T.M.H.mu",
    5: "T.N.H.mu",
    6: "T.M_c.M.H.mu",
    7: "T.N_c.M.H.mu",
}


def _table_ring() -> PolyRing:
    return PolyRing(("xi", "yi", "xj", "yj", "x0", "y0", "s", "c", "l"))


def _table_edge(ring: PolyRing, kind: str):
    xi, yi = ring.gen("xi"), ring.gen("yi")
    other = {
        "contains0": (ring.gen("x0"), ring.gen("y0")),
        "neither": (ring.gen("xj"), ring.gen("yj")),
        "contains1": (ring.zero(), ring.zero()),
        "contains2": (ring.one(), ring.zero()),
    }[kind]
    if kind == "contains0":
        # the table writes the 0-vertex first
        return (other[0] - xi) ** 2 + (other[1] - yi) ** 2 - ring.gen("l") ** 2
    return (xi - other[0]) ** 2 + (yi - other[1]) ** 2 - ring.gen("l") ** 2


def table_expected(kind: str, row: int) -> Poly:
    R = _table_ring()
    xi, yi, xj, yj, x0, y0, s, c, l = R.gens()
    i = R.constant(I)
    f = {
        1: (x0 - xi) ** 2 + (y0 - yi) ** 2 - l ** 2,
        2: (1 - xi * x0) ** 2 + (y0 - yi * x0) ** 2 - l ** 2 * x0 ** 2,
        3: (x0 - xi * y0) ** 2 + (1 - yi * y0) ** 2 - l ** 2 * y0 ** 2,
        4: (xi - i * y0 + i * yi) * (-2 + x0 * s * (xi + i * y0 - i * yi)) - x0 * l ** 2 * s ** 3,
        5: (1 + i * xi * y0 - yi * y0) * (2 * i + x0 * s * (1 - i * xi * y0 - yi * y0)) - y0 ** 2 * x0 * l ** 2 * s ** 3,
        6: 2 * i * (c + i * xi - yi)
        + x0 * s * (c ** 2 + xi ** 2 + 2 * i * y0 - 2 * c * yi + yi ** 2 + x0 * y0 * s * (2 * c - 2 * yi + y0 * x0 * s))
        - x0 * l ** 2 * s ** 3,
        7: (c + i * xi + x0 * s - yi) * (2 * i + y0 * x0 * s * (c - i * xi + x0 * s - yi)) - y0 * x0 * l ** 2 * s ** 3,
    }
    base = {
        "neither": ((xi - xj) ** 2 + (yi - yj) ** 2, 1),
        "contains1": (xi ** 2 + yi ** 2, 1),
        "contains2": ((xi - 1) ** 2 + yi ** 2, 1),
    }
    if kind == "contains0":
        return f[row]
    q, _ = base[kind]
    return q - l ** 2 * (s ** 2 if row >= 4 else 1)


def table_compute(kind: str, row: int) -> Poly:
    """Apply the row's operators to the edge polynomial, with s and c symbolic."""
    R = _table_ring()
    f = _table_edge(R, kind)
    c = R.gen("c")
    T = lambda g: substitute_T(g, R.gen("s"), ["l"])  # noqa: E731
    if row == 1:
        return f
    if row == 2:
        return op_H(f)
    if row == 3:
        return op_H(f, "y0")
    if row == 4:
        return T(op_M(op_H(f)))
    if row == 5:
        return T(op_N(op_H(f)))
    if row == 6:
        return T(op_M(op_M(op_H(f)), c))
    if row == 7:
        return T(op_N(op_M(op_H(f)), c))
    raise ValueError(f"no row {row}")


def check_table1(kind: str, row: int) -> Tuple[bool, Poly]:
    """(equal, difference) between the computed image and the tabulated one."""
    if kind not in EDGE_KINDS:
        raise ValueError(f"edge kind must be one of {EDGE_KINDS}")
    diff = table_compute(kind, row) - table_expected(kind, row)
    return diff.is_zero(), diff


# -- centricity -----------------------------------------------------------------------

@dataclass
class ConditionResult:
    number: int
    c: Optional[GaussianRational]
    holds: Optional[bool]  # None when inconclusive
    witness: List[Point] = field(default_factory=list)
    note: str = ""
    s_divides: Optional[bool] = None

    def to_json(self) -> dict:
        return {
            "condition": self.number,
            "c": None if self.c is None else repr(self.c),
            "status": {True: "holds", False: "fails", None: "inconclusive"}[self.holds],
            "base_points": [[repr(a), repr(b)] for a, b in self.witness],
            "note": self.note,
            "s_divides_eliminant": self.s_divides,
        }


@dataclass
class CentricVerdict:
    conditions: List[ConditionResult]

    @property
    def status(self) -> str:
        if any(r.holds is None for r in self.conditions):
            return "inconclusive"
        return "centric" if all(r.holds for r in self.conditions) else "not-certified"

    def to_json(self) -> dict:
        return {"verdict": self.status, "conditions": [r.to_json() for r in self.conditions]}


def _after_T(cr: CalligraphRing, P: List[Poly], budget) -> Tuple[List[Point], bool]:
    """B.G.T(P), plus whether s divides the eliminant of hat-G.T(P)."""
    t = op_T(cr, P, budget)
    G = op_G(cr, t.polys, budget)
    divides = True
    for f in G.hat:
        try:
            f.exact_div(t.s)
        except ArithmeticError:
            divides = False
    return op_B(cr, G.stripped), divides


def check_centric(g: MarkedGraph, budget: Optional[int] = None, cs=(ZERO, I)) -> CentricVerdict:
    """Evaluate the eight sufficient conditions for centricity.

    Each condition is evaluated independently; a condition whose elimination
    runs out of budget, or whose base points leave Q(i), is inconclusive.
    """
    cr = CalligraphRing(g)
    mu = cr.mu_all()
    H = [op_H(f) for f in mu]
    MH = [op_M(f) for f in H]
    out: List[ConditionResult] = []

    def run(number, c, fn):
        try:
            holds, witness, note, sdiv = fn()
            out.append(ConditionResult(number, c, holds, witness, note, sdiv))
        except Inconclusive as exc:
            out.append(ConditionResult(number, c, None, [], str(exc)))

    target = cr.ring.one() + cr.gen("y0") ** 2

    def c1():
        restricted = [f.subs({"x0": 0}) for f in H]
        return target in restricted, [], "", None

    def c2():
        pts = op_B(cr, op_G(cr, mu, budget).stripped, 0)
        return not pts, pts, "", None

    def c3():
        pts = op_B(cr, op_G(cr, H, budget).stripped)
        return set(pts) <= set(CYCLIC), pts, "", None

    def c4():
        pts = op_B(cr, op_G(cr, [op_H(f, "y0") for f in mu], budget).stripped)
        return (ZERO, ZERO) not in pts, pts, "", None

    def c5():
        pts, sdiv = _after_T(cr, MH, budget)
        return set(pts) <= {(ZERO, ZERO), (ZERO, -I)}, pts, "", sdiv

    def c6():
        pts, sdiv = _after_T(cr, [op_N(f) for f in H], budget)
        return (ZERO, ZERO) not in pts, pts, "", sdiv

    run(1, None, c1)
    run(2, None, c2)
    run(3, None, c3)
    run(4, None, c4)
    run(5, None, c5)
    run(6, None, c6)
    for c in cs:
        def c7(c=c):
            pts, sdiv = _after_T(cr, [op_M(f, c) for f in MH], budget)
            return not pts, pts, "", sdiv

        def c8(c=c):
            pts, sdiv = _after_T(cr, [op_N(f, c) for f in MH], budget)
            return (ZERO, ZERO) not in pts, pts, "", sdiv

        run(7, c, c7)
        run(8, c, c8)
    out.sort(key=lambda r: (r.number, repr(r.c)))
    return CentricVerdict(out)


# -- the coupler family of a small calligraph --------------------------------------------

def coupler_family(g: MarkedGraph, budget: Optional[int] = None) -> Tuple[CalligraphRing, Poly]:
    """The single eliminant hat-G(mu(E)), i.e. the family of coupler curves."""
    cr = CalligraphRing(g)
    G = op_G(cr, cr.mu_all(), budget)
    if len(G.hat) != 1:
        raise Inconclusive(f"expected a single eliminant, found {len(G.hat)}")
    return cr, G.hat[0]


def pseudo_class_small(g: MarkedGraph, m: int, budget: Optional[int] = None) -> ClassVector:
    """(m a, m b, m c) from the multiplicities at cyclic and centric base points."""
    if m <= 0:
        raise ValueError("the coupler multiplicity must be positive")
    cr, f = coupler_family(g, budget)
    return pseudo_class_from_series(_family_ring(cr, f), m, params=cr.lengths)


def _family_ring(cr: CalligraphRing, f: Poly) -> Poly:
    ring = PolyRing(("x0", "y0") + tuple(cr.lengths))
    return ring.convert(_restrict(f, ("x0", "y0") + tuple(cr.lengths)))


def series_report(g: MarkedGraph, budget: Optional[int] = None) -> SeriesReport:
    cr, f = coupler_family(g, budget)
    return analyze_series(_family_ring(cr, f), params=cr.lengths)


# -- linear pieces over the line x0 = 0 ------------------------------------------------------

def vertical_projections(g: MarkedGraph) -> List[str]:
    """Projections to y0 of the linear pieces of V(T.M.H.mu(E) + x0).

    At x0 = 0 every edge polynomial splits into linear factors; each choice of
    factors (a sign labeling) is a linear space whose image under the
    projection to y0 is reported as 'line', 'y0=0', 'y0=-i' or 'empty'.
    """
    from itertools import product

    from .walks import ONE, rref

    E = [e for e in sorted(g.edges) if e != (1, 2)]
    free = [e for e in E if 0 not in e]
    V = sorted(v for v in g.vertices if v not in (0, 1, 2))
    order = [n for v in V for n in (f"x{v}", f"y{v}")] + ["y0"]
    i = I

    def coord(v):
        if v == 1:
            return {}, {}
        if v == 2:
            return {ONE: gq(1)}, {}
        return {f"x{v}": gq(1)}, {f"y{v}": gq(1)}

    def lin(*parts):
        out: Dict[str, GaussianRational] = {}
        for k, form in parts:
            for n, c in form.items():
                out[n] = out.get(n, ZERO) + k * c
        return {n: c for n, c in out.items() if c}

    results = []
    for signs in product((1, -1), repeat=len(free)):
        tau = dict(zip(free, signs))
        forms = []
        for e in E:
            if 0 in e:
                v = e[0] if e[1] == 0 else e[1]
                xv, yv = coord(v)
                # x_v - i y0 + i y_v
                forms.append(lin((gq(1), xv), (-i, {"y0": gq(1)}), (i, yv)))
            else:
                (xa, ya), (xb, yb) = coord(e[0]), coord(e[1])
                s = gq(tau[e])
                forms.append(lin((gq(1), xa), (gq(-1), xb), (s * i, ya), (-s * i, yb)))
        basis = rref(forms, order)
        if basis == [{ONE: gq(1)}] or basis == [{ONE: 1}]:
            results.append("empty")
            continue
        only = [f for f in basis if set(f) <= {"y0", ONE}]
        if not only:
            results.append("line")
        else:
            f = only[0]
            root = -gq(f.get(ONE, ZERO)) / gq(f["y0"])
            results.append("y0=0" if root == ZERO else "y0=-i" if root == -I else f"y0={root!r}")
    return results


# -- the relations read off a single eliminant -------------------------------------------

def _is_power_of(f: Poly, base: Poly) -> bool:
    """f = const * base^k for some k >= 0."""
    if f.is_zero():
        return False
    while f.variables():
        try:
            f = f.exact_div(base)
        except ArithmeticError:
            return False
    return True


def eliminant_relations(g: MarkedGraph, budget: Optional[int] = None) -> Dict[str, object]:
    """The six base-point relations of the eliminant family f = hat-G(mu(E)).

    The first relation asks for (hat-H f)|x0=0 to be a power of 1+y0^2 up to a
    constant: for a degree-2k family that is what containing 1+y0^2 means.
    """
    cr, f = coupler_family(g, budget)
    ring = cr.ring
    one_plus = ring.one() + ring.gen("y0") ** 2
    hf = hat_H(f)
    B = lambda P, t="x0": op_B(cr, P, t)  # noqa: E731
    rel = {
        "restriction": _is_power_of(hf.subs({"x0": 0}), one_plus),
        "affine": B([f], 0),
        "gamma1": B([hf]),
        "gamma2": B([hat_H(f, "y0")]),
        "alpha": B([hat_F(hat_M(hf), "x0")]),
        "beta": B([hat_F(hat_N(hf), "y0")]),
    }
    rel["holds"] = (
        rel["restriction"]
        and rel["affine"] == []
        and set(rel["gamma1"]) == set(CYCLIC)
        and (ZERO, ZERO) not in rel["gamma2"]
        and rel["alpha"] == []
        and (ZERO, ZERO) not in rel["beta"]
    )
    return rel


def circle_pair(l30: str = "l30", l31: str = "l31", l32: str = "l32") -> Poly:
    """Product of the circles of radius l30 about (c_x, +-c_y), c_y^2 = l31^2 - c_x^2.

    The product only involves c_y^2, so it is a polynomial.
    """
    ring = PolyRing(("x0", "y0", l30, l31, l32))
    X, Y, a, b, c = ring.gens()
    cx = (b ** 2 - c ** 2 + 1) * Fraction(1, 2)
    cy2 = b ** 2 - cx ** 2
    q = (X - cx) ** 2 + Y ** 2 + cy2 - a ** 2
    return q ** 2 - 4 * Y ** 2 * cy2


def matches_up_to_scalar(f: Poly, h: Poly) -> bool:
    if f.is_zero() or h.is_zero():
        return f.is_zero() and h.is_zero()
    m = next(iter(h.terms))
    if m not in f.terms:
        return False
    return (f * h.terms[m] - h * f.terms[m]).is_zero()
