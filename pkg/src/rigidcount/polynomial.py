"""Sparse multivariate polynomials with exact coefficients.

Coefficients are :class:`fractions.Fraction` (rationals), :class:`GaussianRational`
(rationals adjoined with ``i``) or plain integers reduced modulo a prime.
Polynomials are immutable maps from exponent tuples to nonzero coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Monomial = Tuple[int, ...]


class GaussianRational:
    """An element ``re + im*i`` of the field Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def coerce(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value, 0)
        if isinstance(value, complex):
            raise TypeError("floating point complex numbers are not exact")
        if isinstance(value, Rational):
            return GaussianRational(Fraction(value), 0)
        return NotImplemented

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*I"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}*I)"


I = GaussianRational(0, 1)


def _normalize(value, modulus):
    if modulus is not None:
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, modulus) % modulus
        return value % modulus
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, GaussianRational) and value.im == 0:
        return value.re
    return value


class PolyRing:
    """A polynomial ring over a list of named variables.

    ``modulus`` selects the prime field GF(p); ``None`` means characteristic
    zero with rational or Gaussian-rational coefficients.
    """

    def __init__(self, names: Sequence[str], modulus: int | None = None):
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.modulus = modulus
        self._index = {n: i for i, n in enumerate(self.names)}

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.names, self.modulus))

    def __repr__(self):
        field = "QQ(i)" if self.modulus is None else f"GF({self.modulus})"
        return f"PolyRing({', '.join(self.names)}; {field})"

    def index(self, name: str) -> int:
        return self._index[name]

    @property
    def zero_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def gen(self, name: str) -> "Poly":
        exps = [0] * self.nvars
        exps[self._index[name]] = 1
        return Poly(self, {tuple(exps): self.one_coeff})

    def gens(self) -> Tuple["Poly", ...]:
        return tuple(self.gen(n) for n in self.names)

    @property
    def one_coeff(self):
        return 1 if self.modulus is not None else Fraction(1)

    def constant(self, value) -> "Poly":
        value = _normalize(value, self.modulus)
        if not value:
            return Poly(self, {})
        return Poly(self, {self.zero_monomial: value})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.constant(1)

    def from_terms(self, terms: Iterable[Tuple[Monomial, object]]) -> "Poly":
        acc: Dict[Monomial, object] = {}
        for mon, coef in terms:
            acc[mon] = acc.get(mon, 0) + coef
        return Poly(self, acc)

    def convert(self, f: "Poly") -> "Poly":
        """Re-embed ``f`` into this ring by matching variable names."""
        if f.ring == self:
            return f
        pos = [self._index[n] for n in f.ring.names]
        out = {}
        for mon, c in f.terms.items():
            e = [0] * self.nvars
            for k, p in zip(mon, pos):
                e[p] += k
            out[tuple(e)] = c
        return Poly(self, out)


class Poly:
    """Immutable sparse polynomial."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, object]):
        self.ring = ring
        mod = ring.modulus
        clean = {}
        for mon, c in terms.items():
            c = _normalize(c, mod)
            if c:
                clean[mon] = c
        self.terms = clean
        self._hash = None

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        """Division by a scalar only; see :meth:`exact_div` for polynomials."""
        if isinstance(other, Poly):
            if other.is_constant():
                other = other.constant_term()
            else:
                return self.exact_div(other)
        mod = self.ring.modulus
        if mod is not None:
            inv = pow(_normalize(other, mod), -1, mod)
            return Poly(self.ring, {m: c * inv for m, c in self.terms.items()})
        return Poly(self.ring, {m: c / other for m, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            other = self.ring.constant(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self):
        return self.terms.get(self.ring.zero_monomial, 0)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree(self, name: str) -> int:
        k = self.ring.index(name)
        return max((m[k] for m in self.terms), default=-1)

    def degree_in(self, names: Iterable[str]) -> int:
        idx = [self.ring.index(n) for n in names]
        return max((sum(m[k] for k in idx) for m in self.terms), default=-1)

    def variables(self) -> Tuple[str, ...]:
        used = set()
        for m in self.terms:
            used.update(k for k, e in enumerate(m) if e)
        return tuple(self.ring.names[k] for k in sorted(used))

    def monomial_factor_exponent(self, name: str) -> int:
        """Largest ``d`` with ``name**d`` dividing the polynomial."""
        if not self.terms:
            return 0
        k = self.ring.index(name)
        return min(m[k] for m in self.terms)

    def coefficients_in(self, names: Sequence[str]) -> Dict[Monomial, "Poly"]:
        """Split into coefficient polynomials with respect to ``names``.

        Returns a map from exponent tuples over ``names`` to polynomials in the
        remaining variables (kept in the same ring).
        """
        idx = [self.ring.index(n) for n in names]
        out: Dict[Monomial, Dict[Monomial, object]] = {}
        for m, c in self.terms.items():
            key = tuple(m[k] for k in idx)
            rest = list(m)
            for k in idx:
                rest[k] = 0
            out.setdefault(key, {})[tuple(rest)] = c
        return {k: Poly(self.ring, v) for k, v in out.items()}

    # -- transformations ---------------------------------------------------
    def subs(self, mapping: Mapping[str, object]) -> "Poly":
        """Simultaneously substitute polynomials (or scalars) for variables."""
        ring = self.ring
        targets = {ring.index(n): ring.constant(v) if not isinstance(v, Poly) else v
                   for n, v in mapping.items()}
        powers: Dict[Tuple[int, int], Poly] = {}

        def power(k, e):
            key = (k, e)
            if key not in powers:
                powers[key] = targets[k] ** e
            return powers[key]

        result: Dict[Monomial, object] = {}
        for m, c in self.terms.items():
            kept = tuple(0 if k in targets else e for k, e in enumerate(m))
            term = Poly(ring, {kept: c})
            for k, e in enumerate(m):
                if e and k in targets:
                    term = term * power(k, e)
            for mm, cc in term.terms.items():
                result[mm] = result.get(mm, 0) + cc
        return Poly(ring, result)

    def swap(self, a: str, b: str) -> "Poly":
        ia, ib = self.ring.index(a), self.ring.index(b)
        out = {}
        for m, c in self.terms.items():
            e = list(m)
            e[ia], e[ib] = e[ib], e[ia]
            out[tuple(e)] = c
        return Poly(self.ring, out)

    def div_monomial(self, name: str, power: int) -> "Poly":
        """Exact division by ``name**power``; raises if not divisible."""
        k = self.ring.index(name)
        out = {}
        for m, c in self.terms.items():
            if m[k] < power:
                raise ArithmeticError(f"{name}^{power} does not divide the polynomial")
            e = list(m)
            e[k] -= power
            out[tuple(e)] = c
        return Poly(self.ring, out)

    def remove_monomial_factor(self, name: str) -> "Poly":
        return self.div_monomial(name, self.monomial_factor_exponent(name))

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Exact polynomial division, raising ``ArithmeticError`` on a remainder."""
        from .groebner import MonomialOrder

        order = MonomialOrder("lex", self.ring.nvars)
        q, r = divide(self, [divisor], order)
        if r:
            raise ArithmeticError("division leaves a nonzero remainder")
        return q[0]

    def conjugate(self) -> "Poly":
        if self.ring.modulus is not None:
            return self
        out = {}
        for m, c in self.terms.items():
            out[m] = c.conjugate() if isinstance(c, GaussianRational) else c
        return Poly(self.ring, out)

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate at a full assignment of all variables present."""
        total = 0
        vals = [point.get(n) for n in self.ring.names]
        for m, c in self.terms.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    if v is None:
                        raise KeyError("missing value for a variable")
                    t = t * v ** e
            total = total + t
        return _normalize(total, self.ring.modulus) if self.ring.modulus else total

    def monic(self, order) -> "Poly":
        if not self.terms:
            return self
        lc = self.terms[order.leading_monomial(self.terms)]
        return self / lc

    # -- printing ----------------------------------------------------------
    def __repr__(self):
        if not self.terms:
            return "0"
        from .groebner import MonomialOrder

        order = MonomialOrder("grevlex", self.ring.nvars)
        parts = []
        for m in order.sorted(self.terms):
            c = self.terms[m]
            mon = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(self.ring.names, m) if e
            )
            if not mon:
                parts.append(repr(c) if isinstance(c, GaussianRational) else str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                cs = repr(c) if isinstance(c, GaussianRational) else str(c)
                parts.append(f"{cs}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")


def divide(f: Poly, divisors: Sequence[Poly], order):
    """Multivariate division with remainder; returns (quotients, remainder)."""
    ring = f.ring
    mod = ring.modulus
    quotients = [dict() for _ in divisors]
    leads = []
    for g in divisors:
        lm = order.leading_monomial(g.terms)
        leads.append((lm, g.terms[lm]))
    p = dict(f.terms)
    remainder = {}
    while p:
        m = order.leading_monomial(p)
        c = p[m]
        for k, (lm, lc) in enumerate(leads):
            if all(a >= b for a, b in zip(m, lm)):
                q = tuple(a - b for a, b in zip(m, lm))
                factor = c * pow(lc, -1, mod) % mod if mod else c / lc
                quotients[k][q] = quotients[k].get(q, 0) + factor
                for gm, gc in divisors[k].terms.items():
                    mm = tuple(a + b for a, b in zip(q, gm))
                    v = p.get(mm, 0) - factor * gc
                    if mod:
                        v %= mod
                    if v:
                        p[mm] = v
                    else:
                        p.pop(mm, None)
                break
        else:
            remainder[m] = c
            del p[m]
    return [Poly(ring, q) for q in quotients], Poly(ring, remainder)
