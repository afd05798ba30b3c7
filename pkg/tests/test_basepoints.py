import sympy
import pytest

from rigidcount import catalog
from rigidcount.basepoints import (
    CYCLIC,
    EDGE_KINDS,
    CalligraphRing,
    Inconclusive,
    ZERO,
    alpha,
    analyze_series,
    base_points_of,
    beta,
    check_centric,
    check_table1,
    circle_pair,
    composite_ops,
    coupler_family,
    eliminant_relations,
    gamma_charts,
    hat_F,
    hat_H,
    hat_M,
    hat_N,
    matches_up_to_scalar,
    multiplicity_at,
    op_T,
    pseudo_class_small,
    pt,
    series_report,
    vertical_projections,
)
from rigidcount.polynomial import I, PolyRing

from test_polynomial import to_sympy


@pytest.fixture
def fam():
    R = PolyRing(("x0", "y0", "l"))
    x, y, l = R.gens()
    return R, x, y, l, (1 - x) ** 2 + y ** 2 - l ** 2 * x ** 2


def test_multiplicities(fam):
    R, x, y, l, f = fam
    assert multiplicity_at(f, pt(0, I)) == 1
    assert multiplicity_at(f, pt(1, 0)) == 0
    assert multiplicity_at(x * y, pt(0, 0)) == 2


def test_alpha_beta_of_the_r_family(fam):
    R, x, y, l, f = fam
    p = pt(0, I)
    assert alpha(f, p, 1) == -2 + x + 2 * I * y + x * y ** 2 - l ** 2 * x
    assert beta(f, p, 1) == 2 * I - 2 * x + y + x ** 2 * y - l ** 2 * x ** 2 * y
    assert alpha(x ** 2 + y ** 2, pt(0, 0), 2) == 1 + y ** 2


def test_alpha_against_sympy_substitution(fam):
    R, x, y, l, f = fam
    X, Y, Lm = sympy.symbols("x0 y0 l")
    F = to_sympy(f, (X, Y, Lm))
    ref = sympy.expand(sympy.cancel(F.subs({X: X, Y: Y * X + sympy.I}, simultaneous=True) / X))
    assert to_sympy(alpha(f, pt(0, I), 1), (X, Y, Lm)) == ref


def test_infinitely_near_points_of_the_r_family(fam):
    R, x, y, l, f = fam
    p, q = pt(0, I), pt(0, -I)
    a = alpha(f, p, 1)
    assert base_points_of(a, "x0") == [q]
    assert multiplicity_at(a, q) == 1
    assert base_points_of(alpha(a, q, 1), 0) == []
    assert base_points_of(beta(a, q, 1), 0) == []
    # conjugate point
    assert base_points_of(alpha(f, pt(0, -I), 1), "x0") == [pt(0, I)]


def test_base_points_of_a_linear_family():
    R = PolyRing(("x0", "y0", "l"))
    x, y, l = R.gens()
    assert base_points_of(l * x + y, 0) == [pt(0, 0)]


def test_irrational_base_points_are_inconclusive():
    R = PolyRing(("x0", "y0", "l"))
    x, y, l = R.gens()
    with pytest.raises(Inconclusive):
        base_points_of(l * x + y ** 2 - 2, "x0")


def test_gamma_charts_of_the_circle_pencil():
    R = PolyRing(("x0", "y0", "z0", "z1", "z2", "l"))
    x, y, z0, z1, z2, l = R.gens()
    h = (z1 - z0) ** 2 + z2 ** 2 - l ** 2 * z0 ** 2
    g0, g1, g2 = gamma_charts(h)
    assert g0 == (x - 1) ** 2 + y ** 2 - l ** 2
    assert g1 == (1 - x) ** 2 + y ** 2 - l ** 2 * x ** 2
    assert g2 == (x - y) ** 2 + 1 - l ** 2 * y ** 2
    assert gamma_charts(z0) == (R.one(), x, y)
    assert gamma_charts(z1 ** 2 + z2 ** 2)[0] == x ** 2 + y ** 2
    with pytest.raises(ValueError):
        gamma_charts(z0 + z1 ** 2)


def test_hat_operators_on_an_edge_through_0():
    cr = CalligraphRing(catalog.get("R"))
    x, y, l = cr.gen("x0"), cr.gen("y0"), cr.gen("l20")
    f0 = cr.mu((0, 2))
    assert f0 == (x - 1) ** 2 + y ** 2 - l ** 2
    assert hat_H(f0) == (1 - x) ** 2 + y ** 2 - l ** 2 * x ** 2
    # the drawn f2 has x0 and y0 swapped in the length term; the definition gives y0
    assert hat_H(f0, "y0") == (x - y) ** 2 + 1 - l ** 2 * y ** 2
    assert hat_F(hat_M(hat_H(f0)), "x0") == -2 + x + 2 * I * y + x * y ** 2 - l ** 2 * x
    assert hat_F(hat_N(hat_H(f0)), "y0") == 2 * I - 2 * x + y + x ** 2 * y - l ** 2 * x ** 2 * y
    assert hat_F(x ** 3 * (y + 1), "x0") == y + 1


def test_m_h_images_for_h():
    cr = CalligraphRing(catalog.get("H"))
    g = cr.gen
    x0, y0 = g("x0"), g("y0")
    out = dict(zip(cr.E, composite_ops(cr, [composite_ops(cr, [f], "H_r")[0] for f in cr.mu_all()], "M_c")))
    for v in (3, 4):
        xv, yv = g(f"x{v}"), g(f"y{v}")
        expected = (xv - I * y0 + I * yv) * (-2 + x0 * (xv + I * y0 - I * yv)) - x0 * g(f"l{v}0") ** 2
        assert out[(0, v)] == expected
    assert out[(1, 3)] == g("x3") ** 2 + g("y3") ** 2 - g("l31") ** 2


def test_t_without_base_points_squares_x0():
    cr = CalligraphRing(catalog.get("R"))
    x, y, l = cr.gen("x0"), cr.gen("y0"), cr.gen("l20")
    t = op_T(cr, [x + l])
    assert t.U == [] and t.s == x
    assert t.polys == [x ** 2 + l * x]


@pytest.mark.parametrize("kind", EDGE_KINDS)
@pytest.mark.parametrize("row", range(1, 8))
def test_table_rows(kind, row):
    ok, diff = check_table1(kind, row)
    assert ok, diff


def test_c3_eliminant_is_a_pair_of_circles():
    cr, f = coupler_family(catalog.get("C3"))
    assert set(f.variables()) <= {"x0", "y0", "l30", "l31", "l32"}
    h = circle_pair()
    assert matches_up_to_scalar(h.ring.convert(_restrict(f, h.ring.names)), h)


def _restrict(f, names):
    from rigidcount.basepoints import _restrict as r

    return r(f, names)


def test_c3_relations():
    rel = eliminant_relations(catalog.get("C3"))
    assert rel["restriction"]
    assert rel["affine"] == []
    assert set(rel["gamma1"]) == set(CYCLIC)
    assert pt(0, 0) not in rel["gamma2"]
    assert rel["alpha"] == []
    assert pt(0, 0) not in rel["beta"]


def test_l_is_centric_by_charts_but_one_literal_condition_fails():
    # T turns the base-point-free alpha_q(alpha_p) of the circle pencil about the
    # origin into a family through (0,0); the chart analysis is unaffected
    assert series_report(catalog.get("L")).centric
    v = check_centric(catalog.get("L"))
    failing = [(r.number, r.c, r.witness) for r in v.conditions if not r.holds]
    assert failing == [(7, ZERO, [pt(0, 0)])]
    assert v.status == "not-certified"


@pytest.mark.parametrize("name", ["C3", "R"])
def test_centric_small_calligraphs(name):
    v = check_centric(catalog.get(name))
    assert v.status == "centric", v.to_json()
    assert {(r.number, repr(r.c)) for r in v.conditions} >= {(k, "None") for k in range(1, 7)}


@pytest.mark.parametrize("name,m,expected", [("R", 1, (1, 0, 1)), ("C3", 1, (2, 0, 0)), ("L", 1, (1, 1, 0))])
def test_pseudo_class(name, m, expected):
    from rigidcount.classes import get_class

    assert pseudo_class_small(catalog.get(name), m) == expected == get_class(catalog.get(name))


def test_series_records_are_conjugation_closed():
    for name in ("R", "L", "C3"):
        rep = series_report(catalog.get(name))
        assert rep.centric
        pts = {(r.point, r.multiplicity, r.kind) for r in rep.records}
        assert pts == {((a.conjugate(), b.conjugate()), m, k) for (a, b), m, k in pts}
        for r in rep.records:
            if r.kind == "cyclic":
                assert r.chart == "gamma1" and r.point in CYCLIC


def test_centric_budget_is_inconclusive_not_centric():
    v = check_centric(catalog.get("C3"), budget=1)
    assert v.status == "inconclusive"


@pytest.mark.parametrize("name", ["C3", "L", "R", "H", "W"])
def test_linear_pieces_project_to_allowed_sets(name):
    for piece in vertical_projections(catalog.get(name)):
        assert piece in ("line", "y0=0", "y0=-i", "empty")
