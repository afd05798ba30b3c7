import json
import random

import pytest

from rigidcount import catalog
from rigidcount.classes import (
    ClassVector,
    Engine,
    InconsistencyError,
    ResourceError,
    class_product,
    get_class,
    get_nor,
    glue,
)
from rigidcount.generate import random_rigid
from rigidcount.graph import C, L, R, PreconditionError


def test_class_product_formula_and_symmetry():
    assert class_product((2, 0, 0), (1, 1, 0)) == 4
    assert class_product((1, 1, 0), (1, 0, 1)) == 2
    for u, v in [((6, 2, 2), (2, 0, 0)), ((3, 1, 0), (5, 2, 4))]:
        assert class_product(u, v) == class_product(v, u) == 2 * (u[0] * v[0] - u[1] * v[1] - u[2] * v[2])


def test_base_classes():
    assert get_class(L) == (1, 1, 0)
    assert get_class(R) == (1, 0, 1)
    assert get_class(C(3)) == (2, 0, 0)


def test_glue_shapes():
    h = catalog.get("H")
    assert glue(h, "L").has_edge(0, 1)
    assert glue(h, "R").has_edge(0, 2)
    assert len(glue(h, "C").vertices) == len(h.vertices) + 1


def test_warm_up_counts():
    assert get_nor(catalog.get("triangle")).count == 2
    assert get_nor(catalog.get("C3L")).count == 4


def test_mirror_swaps_b_and_c():
    g = catalog.get("G2L1")
    a, b, c = get_class(g, max_oracle_vertices=8)
    m = get_class(g.relabel({v: {1: 2, 2: 1}.get(v, v) for v in g.vertices}), max_oracle_vertices=8)
    assert m == (a, c, b)


def test_class_via_axiom_a2():
    # [H] * [C_v] = c(H u C_v) counted independently by the engine
    h = catalog.get("H")
    cls = get_class(h)
    assert cls == (6, 2, 2)
    assert class_product(cls, (2, 0, 0)) == get_nor(glue(h, "C")).count == 24


def test_resource_error_names_the_leaf():
    with pytest.raises(ResourceError) as err:
        get_nor(catalog.get("V"), max_oracle_vertices=4)
    assert err.value.graph is not None


def test_preconditions():
    with pytest.raises(PreconditionError):
        get_nor(catalog.get("H"))
    with pytest.raises(PreconditionError):
        get_class(catalog.get("triangle"))


def test_trace_tree_and_memo():
    e = Engine(trace=True)
    res = e.get_nor(catalog.get("U"))
    assert res.count == 112
    methods = {n.method for n in res.trace.walk()}
    assert "degree2" in methods
    calls = e.oracle_calls
    assert e.get_nor(catalog.get("U")).count == 112
    assert e.oracle_calls == calls


def test_cache_round_trip_and_corrupt_cache(tmp_path, caplog):
    path = tmp_path / "cache.json"
    e = Engine(cache_path=str(path))
    e.get_class(catalog.get("H"))
    e.save_cache()
    warm = Engine(cache_path=str(path))
    assert warm.get_class(catalog.get("H")) == (6, 2, 2)
    assert warm.oracle_calls == 0
    path.write_text("{not json")
    cold = Engine(cache_path=str(path))
    assert cold.get_class(catalog.get("H")) == (6, 2, 2)
    path.write_text(json.dumps({"format": "rigidcount-cache", "version": 99, "entries": {}}))
    assert Engine(cache_path=str(path)).memo == {}


def test_inconsistent_oracle_is_caught():
    with pytest.raises(InconsistencyError):
        Engine(oracle=lambda g, seed, budget: 3).get_nor(catalog.get("C3L"))


def test_class_vector_swapped():
    assert ClassVector(5, 1, 2).swapped() == (5, 2, 1)


def test_count_independent_of_split_choice():
    rng = random.Random(11)
    for _ in range(6):
        g = random_rigid(rng.randint(8, 10), rng)
        perm = sorted(g.vertices - {0, 1, 2})
        shuffled = perm[:]
        rng.shuffle(shuffled)
        h = g.relabel({0: 0, 1: 1, 2: 2, **dict(zip(perm, shuffled))})
        counts = {
            Engine(max_oracle_vertices=8).get_nor(g).count,
            Engine(max_oracle_vertices=8, prefer_marking=False).get_nor(g).count,
            Engine(max_oracle_vertices=8, prefer_marking=False).get_nor(h).count,
        }
        assert len(counts) == 1
