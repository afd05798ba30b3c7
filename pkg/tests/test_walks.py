import random
from fractions import Fraction

import pytest
import sympy

from rigidcount import catalog
from rigidcount.generate import random_calligraph
from rigidcount.walks import (
    FOUR_IDEALS,
    ONE,
    WalkError,
    apply_route,
    chi,
    cross_check_delta,
    delta_v,
    edge_set,
    eliminate_b0,
    find_route,
    flip_form,
    ideal_forms,
    initial_walks,
    kind,
    neg,
    parse_linear,
    parse_walk,
    property_sweep,
    random_labeling,
    round_as_difference,
    tau_poly,
    verify_labeling,
    walk_max,
    walk_plus,
    walk_str,
)

W = catalog.get("W")
E = edge_set(W)
TAU = dict(catalog.W_SIGNS)
LAMBDA0 = frozenset(map(parse_walk, "03 06 32 34 36 41 45 46 56".split()))


def ws(text):
    return frozenset(map(parse_walk, text.split()))


def sympy_b0_ideal(forms):
    """Independent elimination: lex Groebner basis with b0 smallest."""
    names = sorted({n for f in forms for n in f if n != ONE}, key=lambda n: (n == "b0", n))
    syms = sympy.symbols(names)
    table = dict(zip(names, syms))
    exprs = [sum(sympy.Rational(c.numerator, c.denominator) * (1 if n == ONE else table[n]) for n, c in f.items()) for f in forms]
    exprs = [e for e in exprs if e != 0]
    if not exprs:
        return "<0>"
    gb = sympy.groebner(exprs, *syms, order="lex")
    if list(gb.exprs) == [1]:
        return "<1>"
    b0 = table.get("b0")
    only = [p for p in gb.exprs if p.free_symbols <= {b0}]
    if not only:
        return "<0>"
    (p,) = only
    return {b0: "<b0>", b0 + 1: "<b0+1>"}.get(sympy.expand(p), str(p))


def test_plus_and_negation():
    assert walk_plus(parse_walk("034"), parse_walk("45"), E) == parse_walk("0345")
    assert neg(parse_walk("034")) == parse_walk("430")
    with pytest.raises(WalkError):
        walk_plus(parse_walk("032"), parse_walk("56"), E)


def test_maximum_is_length_then_lexicographic():
    assert walk_max(ws("06 032 036 0341 0346 03456")) == parse_walk("03456")
    assert walk_max(ws("036 034")) == parse_walk("036")


def test_delta_examples():
    assert delta_v(ws("06 032 036 0341 0346 03456"), 6, E) == ws("032 0341 034560 0345630 03456430")
    assert delta_v(ws("03 32"), 5, E) == ws("03 32")


def test_example_chain():
    chain = apply_route(LAMBDA0, (0, 3, 4, 5, 6), E)
    expected = [
        "03 06 32 34 36 41 45 46 56",
        "06 41 45 46 56 032 034 036",
        "06 56 032 036 0341 0345 0346",
        "06 032 036 0341 0346 03456",
        "032 0341 034560 0345630 03456430",
    ]
    assert [v for v, _ in chain] == [0, 3, 4, 5, 6]
    assert [S for _, S in chain] == [ws(t) for t in expected]
    assert all(kind(w) for w in chain[-1][1])


@pytest.mark.parametrize(
    "walk,form",
    [
        ("032", "b0 - 2*b3 + 1"),
        ("034", "-a4 + b0 - 2*b3 + b4"),
        ("036", "-a6 + b0 - b6"),
        ("03456430", "2*b4 - 2*b6"),
        ("03645641", "b0 + 2*b4 - 4*b6"),
    ],
)
def test_tau_polynomials(walk, form):
    assert tau_poly(parse_walk(walk), TAU) == parse_linear(form)


def test_tau_of_an_edge_to_1():
    assert tau_poly((0, 1), {(0, 1): 1}) == parse_linear("b0")


def test_delta_matches_elimination_along_the_example_route():
    assert all(ok for _, ok in cross_check_delta(W, LAMBDA0, TAU, (0, 3, 4, 5, 6)))


def test_example_ideal_against_sympy():
    assert eliminate_b0(W, LAMBDA0, TAU) == sympy_b0_ideal(ideal_forms(LAMBDA0, TAU)) == "<1>"


@pytest.mark.parametrize(
    "signs,expected",
    [({}, "<1>"), ({(2, 3): -1}, "<b0>"), ({(1, 3): -1}, "<b0+1>"), ({(1, 3): -1, (2, 3): -1}, "<1>")],
)
def test_c3_labelings(signs, expected):
    g = catalog.get("C3")
    tau = {e: signs.get(e, 1) for e in edge_set(g)}
    L = initial_walks(g)
    assert eliminate_b0(g, L, tau) == sympy_b0_ideal(ideal_forms(L, tau)) == expected


def test_non_initial_set_is_rejected():
    with pytest.raises(WalkError):
        eliminate_b0(W, ws("03 06"), TAU)


def test_flip_form_and_chi_on_western_walks():
    for w in ("0341", "032", "03645641"):
        w = parse_walk(w)
        assert flip_form(w, TAU) == tau_poly(w, TAU)
        assert len(chi(w, TAU)) > 0


def test_round_walk_as_difference():
    w = parse_walk("03456430")
    x, y = round_as_difference(W, w)
    assert kind(x) == kind(y) in ("western", "eastern")
    diff = dict(tau_poly(x, TAU))
    for n, c in tau_poly(y, TAU).items():
        diff[n] = diff.get(n, Fraction(0)) - c
    assert {n: c for n, c in diff.items() if c} == tau_poly(w, TAU)


def test_route_of_the_example_graph():
    route = find_route(W)
    assert route[0] == 0 and set(route) == {v for v in W.vertices if v not in (1, 2)}


def test_random_labelings_against_sympy():
    rng = random.Random(11)
    done = 0
    while done < 40:
        g = random_calligraph(rng.randint(4, 7), rng)
        try:
            find_route(g)
        except WalkError:
            continue
        tau = random_labeling(g, rng)
        L = initial_walks(g, rng)
        assert eliminate_b0(g, L, tau) == sympy_b0_ideal(ideal_forms(L, tau))
        done += 1


def test_verify_labeling_report():
    rep = verify_labeling(W, TAU, LAMBDA0, (0, 3, 4, 5, 6))
    assert rep["ok"] and rep["ideal"] in FOUR_IDEALS
    assert rep["chain"][-1]["walks"] == ["032", "0341", "034560", "0345630", "03456430"]


def test_small_sweep():
    reps = property_sweep(25, max_vertices=7, seed=3)
    assert all(r["ok"] for r in reps)
    assert all(r["ideal"] in FOUR_IDEALS for r in reps)
    for r in reps:
        if not r["positive_walk"]:
            assert r["ideal"] in ("<0>", "<1>")


def test_walk_strings():
    assert walk_str((0, 3, 12)) == "(0,3,12)"
    assert parse_walk("(0,3,12)") == (0, 3, 12)
