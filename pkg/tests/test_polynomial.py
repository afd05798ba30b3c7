import random
from fractions import Fraction

import sympy

from rigidcount.groebner import buchberger, spolynomial_check
from rigidcount.polynomial import GaussianRational, I, PolyRing


def to_sympy(f, syms):
    out = 0
    for m, c in f.terms.items():
        c = GaussianRational.coerce(c)
        t = sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)
        for s, e in zip(syms, m):
            t *= s ** e
        out += t
    return sympy.expand(out)


def random_poly(R, rng, terms=4, deg=2, gaussian=False):
    f = R.zero()
    for _ in range(terms):
        m = R.one()
        for g in R.gens():
            m = m * g ** rng.randint(0, deg)
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        f = f + m * (GaussianRational(c, rng.randint(-2, 2)) if gaussian else c)
    return f


def test_gaussian_field_axioms():
    rng = random.Random(0)
    vals = [GaussianRational(Fraction(rng.randint(-9, 9), rng.randint(1, 5)), rng.randint(-4, 4)) for _ in range(20)]
    for a, b, c in zip(vals, vals[1:], vals[2:]):
        assert (a + b) * c == a * c + b * c
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        assert a.conjugate().conjugate() == a
        if b:
            assert (a / b) * b == a
    assert I * I == -1


def test_poly_arithmetic_against_sympy():
    rng = random.Random(1)
    R = PolyRing(("x", "y", "z"))
    syms = sympy.symbols("x y z")
    for _ in range(20):
        f, g = random_poly(R, rng, gaussian=True), random_poly(R, rng, gaussian=True)
        assert to_sympy(f * g + f ** 2 - g, syms) == sympy.expand(to_sympy(f, syms) * to_sympy(g, syms) + to_sympy(f, syms) ** 2 - to_sympy(g, syms))


def test_subs_is_simultaneous():
    R = PolyRing(("x", "y"))
    x, y = R.gens()
    assert (x + 2 * y).subs({"x": y, "y": x}) == y + 2 * x
    assert (x * y ** 2).swap("x", "y") == y * x ** 2


def test_monomial_factor_and_exact_division():
    R = PolyRing(("x", "y"))
    x, y = R.gens()
    f = x ** 3 * (y + 1)
    assert f.monomial_factor_exponent("x") == 3
    assert f.remove_monomial_factor("x") == y + 1
    assert (f * (x - y)).exact_div(x - y) == f


def test_reduced_basis_matches_sympy():
    rng = random.Random(2)
    R = PolyRing(("x", "y", "z"))
    syms = sympy.symbols("x y z")
    for order, sorder in (("grevlex", "grevlex"), ("lex", "lex")):
        for _ in range(6):
            gens = [random_poly(R, rng, terms=3) for _ in range(3)]
            gb = buchberger(gens, order)
            assert spolynomial_check(gb)
            ref = sympy.groebner([to_sympy(g, syms) for g in gens], *syms, order=sorder)
            mine = sorted(sympy.srepr(sympy.expand(to_sympy(p, syms))) for p in gb)
            theirs = sorted(sympy.srepr(sympy.expand(p)) for p in ref.exprs)
            assert mine == theirs


def test_modular_basis_counts_solutions():
    R = PolyRing(("x", "y"), 101)
    x, y = R.gens()
    gb = buchberger([x ** 2 - 2, y ** 3 - x], "grevlex")
    assert gb.is_zero_dimensional() and gb.count_standard_monomials() == 6
