import itertools
import random

import pytest
import sympy

from rigidcount import catalog
from rigidcount.generate import laman_corpus, marked, random_laman_edges
from rigidcount.groebner import BudgetExceeded, buchberger
from rigidcount.oracle import (
    DegenerateSystem,
    OracleBudgetExceeded,
    count_once,
    count_realizations_oracle,
    realization_system,
    sample_lengths,
)
from rigidcount.polynomial import PolyRing


def sympy_count(g, seed=0):
    """Solutions of the pinned system via sympy's Groebner basis (independent path)."""
    omega2 = sample_lengths(g, seed)
    free = sorted(g.vertices - {1, 2})
    sym = {v: sympy.symbols(f"x{v} y{v}") for v in free}
    pos = {1: (0, 0), 2: (1, 0), **sym}
    eqs = [
        (pos[a][0] - pos[b][0]) ** 2 + (pos[a][1] - pos[b][1]) ** 2 - sympy.Rational(omega2[(a, b)].numerator, omega2[(a, b)].denominator)
        for a, b in g.sorted_edges()
        if (a, b) != (1, 2)
    ]
    gens = [s for v in free for s in sym[v]]
    gb = sympy.groebner(eqs, *gens, order="grevlex")
    leads = [sympy.Poly(p, *gens).monoms(order="grevlex")[0] for p in gb.exprs]
    bound = max(max(m) for m in leads) + 1
    count = 0
    for mono in itertools.product(range(bound), repeat=len(gens)):
        if not any(all(a >= b for a, b in zip(mono, lm)) for lm in leads):
            count += 1
    return count


@pytest.mark.parametrize("name,expected", [("triangle", 2), ("C3L", 4)])
def test_warm_up_counts_against_sympy(name, expected):
    g = catalog.get(name)
    assert sympy_count(g) == expected
    assert count_realizations_oracle(g) == expected


def test_five_vertex_graph_against_sympy():
    g = laman_corpus(5)[-1]
    assert count_realizations_oracle(g) == sympy_count(g)


def test_modular_isotropic_matches_exact_rational_path():
    for g in laman_corpus(6)[:9]:
        exact = count_realizations_oracle(g, modulus=None, isotropic=False, engine="python")
        assert count_realizations_oracle(g) == exact


def test_numba_kernel_matches_python_engine():
    rng = random.Random(5)
    for _ in range(5):
        g = marked(random_laman_edges(6, rng))
        assert count_once(g, 1, engine="python") == count_once(g, 1, engine="kernel")


def test_realization_system_shape():
    g = catalog.get("C3L")
    eqs = realization_system(g, sample_lengths(g, 0))
    assert len(eqs) == len(g.edges) - 1
    assert all(f.total_degree() == 2 for f in eqs)


def test_flexible_graph_is_degenerate():
    g = catalog.get("C3")  # 4 vertices, 4 edges: one degree of freedom
    with pytest.raises(DegenerateSystem):
        count_realizations_oracle(g)


def test_budget_exhaustion_is_reported():
    g = laman_corpus(6)[-1]
    with pytest.raises(OracleBudgetExceeded):
        count_realizations_oracle(g, budget=1, engine="python")


def test_seed_independence_small():
    g = laman_corpus(6)[-2]
    assert len({count_realizations_oracle(g, seed=s) for s in range(3)}) == 1


def test_buchberger_budget():
    R = PolyRing(("x", "y"))
    x, y = R.gens()
    with pytest.raises(BudgetExceeded):
        buchberger([x ** 3 - y, y ** 3 - x * y - 1, x * y ** 2 - 2], budget=1)
