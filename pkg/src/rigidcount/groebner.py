"""Buchberger's algorithm with sugar selection and Gebauer-Moeller pair pruning.

Monomials are packed into Python integers so that integer comparison agrees
with the monomial order, monomial multiplication is integer addition and
divisibility is a single borrow test. Coefficients are exact: either integers
modulo a prime or rationals / Gaussian rationals.
"""

from __future__ import annotations

import heapq
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .polynomial import Monomial, Poly, PolyRing

FIELD_BITS = 12
FIELD_MAX = (1 << (FIELD_BITS - 1)) - 1  # guard bit stays clear
FULL_REDUCTION = True


class BudgetExceeded(RuntimeError):
    """Raised when a Groebner computation runs past its step budget."""


class MonomialOrder:
    """Graded reverse lexicographic or lexicographic order on ``nvars`` variables.

    Variable 0 is the largest variable in both orders.
    """

    def __init__(self, name: str, nvars: int):
        if name not in ("grevlex", "lex"):
            raise ValueError(f"unsupported monomial order {name!r}")
        self.name = name
        self.n = nvars
        W = FIELD_BITS
        self.low_mask = (1 << (W * nvars)) - 1
        self.guard = sum(1 << (W * k + W - 1) for k in range(nvars))
        self.complement = sum(FIELD_MAX << (W * k) for k in range(nvars))

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.name, self.n) == (other.name, other.n)

    def __hash__(self):
        return hash((self.name, self.n))

    # -- tuple interface ---------------------------------------------------
    def sort_key(self, m: Monomial):
        if self.name == "lex":
            return m
        return (sum(m),) + tuple(-e for e in reversed(m))

    def leading_monomial(self, terms) -> Monomial:
        return max(terms, key=self.sort_key)

    def sorted(self, monomials: Iterable[Monomial]) -> List[Monomial]:
        return sorted(monomials, key=self.sort_key, reverse=True)

    # -- packed interface ----------------------------------------------------
    def encode(self, m: Monomial) -> int:
        W = FIELD_BITS
        if max(m, default=0) > FIELD_MAX:
            raise OverflowError("exponent too large for packed monomials")
        if self.name == "lex":
            key = 0
            for e in m:
                key = (key << W) | e
            return key
        key = sum(m)
        for k in range(self.n - 1, -1, -1):
            key = (key << W) | (FIELD_MAX - m[k])
        return key

    def decode(self, key: int) -> Monomial:
        W, mask = FIELD_BITS, (1 << FIELD_BITS) - 1
        if self.name == "lex":
            out = []
            for _ in range(self.n):
                out.append(key & mask)
                key >>= W
            return tuple(reversed(out))
        return tuple(FIELD_MAX - ((key >> (W * k)) & mask) for k in range(self.n))

    def divides(self, a: int, b: int) -> bool:
        """Whether packed monomial ``a`` divides packed monomial ``b``."""
        if self.name == "lex":
            return ((b | self.guard) - a) & self.guard == self.guard
        lm = self.low_mask
        return (((a & lm) | self.guard) - (b & lm)) & self.guard == self.guard

    def lcm(self, a: Monomial, b: Monomial) -> Monomial:
        return tuple(x if x > y else y for x, y in zip(a, b))

    def degree(self, key: int) -> int:
        if self.name == "grevlex":
            return key >> (FIELD_BITS * self.n)
        return sum(self.decode(key))


class _Element:
    """A basis element in packed form: monomials descending, coefficients aligned."""

    __slots__ = ("mons", "coefs", "lm", "exp", "support", "sugar")

    def __init__(self, mons, coefs, exp, sugar):
        self.mons = mons
        self.coefs = coefs
        self.lm = mons[0]
        self.exp = exp
        self.support = sum(1 << k for k, e in enumerate(exp) if e)
        self.sugar = sugar


class GroebnerBasis:
    """Reduced Groebner basis with its ring and order."""

    def __init__(self, polys: List[Poly], order: MonomialOrder, ring: PolyRing, stats=None):
        self.polys = polys
        self.order = order
        self.ring = ring
        self.stats = stats or {}

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def leading_monomials(self) -> List[Monomial]:
        return [self.order.leading_monomial(p.terms) for p in self.polys]

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant()

    def is_zero_dimensional(self) -> bool:
        if self.is_unit():
            return True
        lms = self.leading_monomials()
        n = self.ring.nvars
        for k in range(n):
            if not any(m[k] > 0 and sum(m) == m[k] for m in lms):
                return False
        return True

    def standard_monomials(self, limit: Optional[int] = None) -> List[Monomial]:
        """Monomials outside the leading-term ideal (finite for zero-dim ideals)."""
        if not self.is_zero_dimensional():
            raise ValueError("ideal is not zero-dimensional")
        if self.is_unit():
            return []
        lms = self.leading_monomials()
        n = self.ring.nvars
        bound = [min(m[k] for m in lms if m[k] > 0 and sum(m) == m[k]) for k in range(n)]
        out = []

        def rec(k, prefix):
            if k == n:
                m = tuple(prefix)
                if not any(all(a <= b for a, b in zip(l, m)) for l in lms):
                    out.append(m)
                    if limit is not None and len(out) > limit:
                        raise BudgetExceeded("too many standard monomials")
                return
            for e in range(bound[k]):
                prefix.append(e)
                # prune: if prefix alone is already divisible, deeper ones are too
                m = tuple(prefix) + (0,) * (n - k - 1)
                if any(all(a <= b for a, b in zip(l, m)) for l in lms):
                    prefix.pop()
                    break
                rec(k + 1, prefix)
                prefix.pop()

        rec(0, [])
        return out

    def count_standard_monomials(self) -> int:
        return len(self.standard_monomials())

    def reduce(self, f: Poly) -> Poly:
        """Normal form of ``f`` modulo the basis."""
        from .polynomial import divide

        if not self.polys:
            return f
        _, r = divide(f, self.polys, self.order)
        return r

    def contains(self, f: Poly) -> bool:
        return self.reduce(f).is_zero()


class _Engine:
    def __init__(self, order: MonomialOrder, modulus: Optional[int], budget: Optional[int]):
        self.order = order
        self.p = modulus
        self.budget = budget
        self.steps = 0
        self.reducers: List[_Element] = []
        self.lm_cache: Dict[int, Optional[_Element]] = {}

    # -- coefficient helpers -------------------------------------------------
    def inv(self, c):
        if self.p is not None:
            return pow(c, -1, self.p)
        return 1 / c

    def tick(self, n=1):
        self.steps += n
        if self.budget is not None and self.steps > self.budget:
            raise BudgetExceeded(f"Groebner step budget {self.budget} exceeded")

    # -- packing ----------------------------------------------------------------
    def pack(self, f: Poly) -> Tuple[List[int], list]:
        enc = self.order.encode
        items = sorted(((enc(m), c) for m, c in f.terms.items()), reverse=True)
        return [m for m, _ in items], [c for _, c in items]

    def make(self, mons, coefs, sugar) -> _Element:
        # normalise to a monic element
        lc = coefs[0]
        if lc != 1:
            inv = self.inv(lc)
            if self.p is not None:
                p = self.p
                coefs = [c * inv % p for c in coefs]
            else:
                coefs = [c * inv for c in coefs]
        return _Element(mons, coefs, self.order.decode(mons[0]), sugar)

    # -- reduction ----------------------------------------------------------------
    def find_reducer(self, m: int) -> Optional[_Element]:
        cache = self.lm_cache
        if m in cache:
            return cache[m]
        divides = self.order.divides
        found = None
        for g in self.reducers:
            if divides(g.lm, m):
                found = g
                break
        cache[m] = found
        return found

    def add_reducer(self, g: _Element) -> None:
        self.reducers.append(g)
        # cached misses may now be reducible
        self.lm_cache = {m: r for m, r in self.lm_cache.items() if r is not None}

    def reduce(self, terms: Dict[int, object], full: bool = True):
        """Reduce a packed polynomial (dict) by the current reducers.

        Returns descending (mons, coefs) of the normal form.
        """
        p = self.p
        heap = [-m for m in terms]
        heapq.heapify(heap)
        out_m, out_c = [], []
        steps = 0
        find = self.find_reducer
        while heap:
            m = -heapq.heappop(heap)
            c = terms.pop(m, None)
            if c is None:
                continue
            g = find(m)
            if g is None:
                out_m.append(m)
                out_c.append(c)
                if not full:
                    # keep the remaining terms untouched
                    rest = sorted(terms.items(), reverse=True)
                    out_m.extend(k for k, _ in rest)
                    out_c.extend(v for _, v in rest)
                    break
                continue
            steps += 1
            shift = m - g.lm
            gm, gc = g.mons, g.coefs
            if p is not None:
                for k in range(1, len(gm)):
                    mm = gm[k] + shift
                    v = terms.get(mm)
                    if v is None:
                        terms[mm] = (-c * gc[k]) % p
                        heapq.heappush(heap, -mm)
                    else:
                        v = (v - c * gc[k]) % p
                        if v:
                            terms[mm] = v
                        else:
                            del terms[mm]
            else:
                for k in range(1, len(gm)):
                    mm = gm[k] + shift
                    v = terms.get(mm)
                    if v is None:
                        terms[mm] = -c * gc[k]
                        heapq.heappush(heap, -mm)
                    else:
                        v = v - c * gc[k]
                        if v:
                            terms[mm] = v
                        else:
                            del terms[mm]
        self.tick(steps)
        return out_m, out_c

    def spoly(self, f: _Element, g: _Element) -> Dict[int, object]:
        lcm = self.order.encode(self.order.lcm(f.exp, g.exp))
        sf, sg = lcm - f.lm, lcm - g.lm
        p = self.p
        terms: Dict[int, object] = {}
        for m, c in zip(f.mons[1:], f.coefs[1:]):
            terms[m + sf] = c
        for m, c in zip(g.mons[1:], g.coefs[1:]):
            mm = m + sg
            v = terms.get(mm, 0) - c
            if p is not None:
                v %= p
            if v:
                terms[mm] = v
            else:
                terms.pop(mm, None)
        return terms


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _divides_exp(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def buchberger(
    gens: Sequence[Poly],
    order: str = "grevlex",
    budget: Optional[int] = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    The coefficient field is the ring's: GF(p) when it has a modulus, otherwise
    Q or Q(i). ``budget`` caps the number of reduction steps.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("buchberger needs at least one nonzero generator")
    ring = gens[0].ring
    if any(g.ring != ring for g in gens):
        raise ValueError("generators live in different rings")
    mo = MonomialOrder(order, ring.nvars)
    eng = _Engine(mo, ring.modulus, budget)
    deg = mo.degree

    basis: List[_Element] = []  # every element ever added, by index
    active: List[int] = []  # indices of non-redundant elements
    pairs: List[Tuple[int, int, int, int]] = []  # heap of (sugar, lcm key, i, j)

    def pair_entry(i, j):
        f, g = basis[i], basis[j]
        lcm = mo.lcm(f.exp, g.exp)
        key = mo.encode(lcm)
        sugar = max(f.sugar - deg(f.lm), g.sugar - deg(g.lm)) + sum(lcm)
        return (sugar, key, i, j)

    def update(h_idx):
        nonlocal pairs, active
        h = basis[h_idx]
        cand = [(g, mo.lcm(h.exp, basis[g].exp)) for g in active]
        chosen = []
        for pos, (g, l1) in enumerate(cand):
            if _coprime(h.exp, basis[g].exp):
                chosen.append((g, l1, True))
                continue
            later = any(_divides_exp(l2, l1) for _, l2 in cand[pos + 1:])
            earlier = any(_divides_exp(l2, l1) for _, l2, _ in chosen)
            if not later and not earlier:
                chosen.append((g, l1, False))
        survivors = []
        for entry in pairs:
            _, _, i, j = entry
            fi, fj = basis[i], basis[j]
            lij = mo.lcm(fi.exp, fj.exp)
            if (
                _divides_exp(h.exp, lij)
                and mo.lcm(fi.exp, h.exp) != lij
                and mo.lcm(fj.exp, h.exp) != lij
            ):
                continue
            survivors.append(entry)
        for g, _, cp in chosen:
            if not cp:
                survivors.append(pair_entry(g, h_idx))
        heapq.heapify(survivors)
        pairs = survivors
        active = [g for g in active if not _divides_exp(h.exp, basis[g].exp)] + [h_idx]

    # seed with the interreduced generators, smallest leading monomial first
    start = []
    for f in gens:
        mons, coefs = eng.pack(f)
        start.append(eng.make(mons, coefs, max(deg(m) for m in mons)))
    start.sort(key=lambda e: e.lm)
    for e in start:
        mons, coefs = eng.reduce(dict(zip(e.mons, e.coefs)))
        if not mons:
            continue
        e = eng.make(mons, coefs, e.sugar)
        if deg(e.lm) == 0:
            return _unit(ring, mo, eng)
        basis.append(e)
        eng.add_reducer(e)
        update(len(basis) - 1)

    npairs = nzero = 0
    while pairs:
        sugar, _, i, j = heapq.heappop(pairs)
        npairs += 1
        terms = eng.spoly(basis[i], basis[j])
        if not terms:
            nzero += 1
            continue
        mons, coefs = eng.reduce(terms, full=FULL_REDUCTION)
        if not mons:
            nzero += 1
            continue
        h = eng.make(mons, coefs, sugar)
        if deg(h.lm) == 0:
            return _unit(ring, mo, eng)
        basis.append(h)
        eng.add_reducer(h)
        update(len(basis) - 1)

    # minimal basis, then interreduce tails
    lead = [basis[i] for i in active]
    lead = [
        g for g in lead
        if not any(o is not g and _divides_exp(o.exp, g.exp) for o in lead)
    ]
    lead.sort(key=lambda e: e.lm)
    eng.reducers = list(lead)
    eng.lm_cache = {}
    reduced = []
    for g in lead:
        others = [o for o in lead if o is not g]
        eng.reducers = others
        eng.lm_cache = {}
        tail_m, tail_c = eng.reduce(dict(zip(g.mons[1:], g.coefs[1:])))
        mons = [g.lm] + tail_m
        coefs = [g.coefs[0]] + tail_c
        reduced.append((mons, coefs))
    polys = []
    for mons, coefs in reduced:
        polys.append(Poly(ring, {mo.decode(m): c for m, c in zip(mons, coefs)}))
    polys.sort(key=lambda f: mo.sort_key(mo.leading_monomial(f.terms)))
    return GroebnerBasis(polys, mo, ring, {"steps": eng.steps, "elements": len(basis), "pairs": npairs, "zero": nzero})


def _unit(ring: PolyRing, mo: MonomialOrder, eng: _Engine) -> GroebnerBasis:
    return GroebnerBasis([ring.one()], mo, ring, {"steps": eng.steps})


def spolynomial_check(gb: GroebnerBasis) -> bool:
    """Verify that every S-polynomial of basis pairs reduces to zero."""
    from .polynomial import divide

    polys = gb.polys
    mo = gb.order
    for a in range(len(polys)):
        for b in range(a + 1, len(polys)):
            f, g = polys[a], polys[b]
            lf, lg = mo.leading_monomial(f.terms), mo.leading_monomial(g.terms)
            lcm = mo.lcm(lf, lg)
            mf = tuple(x - y for x, y in zip(lcm, lf))
            mg = tuple(x - y for x, y in zip(lcm, lg))
            ring = f.ring
            s = Poly(ring, {mf: f.terms[lf] ** -1 if ring.modulus is None else pow(f.terms[lf], -1, ring.modulus)}) * f
            s = s - Poly(ring, {mg: g.terms[lg] ** -1 if ring.modulus is None else pow(g.terms[lg], -1, ring.modulus)}) * g
            _, r = divide(s, polys, mo)
            if r:
                return False
    return True
