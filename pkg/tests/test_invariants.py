import itertools
from fractions import Fraction

import pytest

from rigidcount import catalog
from rigidcount.graph import L, R, C
from rigidcount.invariants import (
    coupler_degree,
    enumerate_partitions,
    genus_bound,
    intersection_count,
    multiplicity_status,
    report,
)


def brute_partitions(cls, m, n, degree=None):
    total = tuple(x // m for x in cls)
    triples = [
        (a, b, c)
        for a in range(1, total[0] + 1)
        for b in range(0, min(a, total[1]) + 1)
        for c in range(0, min(a, total[2]) + 1)
        if degree is None or 2 * a == degree
    ]
    out = set()
    for combo in itertools.combinations_with_replacement(triples, n):
        if tuple(map(sum, zip(*combo))) == total:
            out.add(tuple(sorted(combo, reverse=True)))
    return sorted(out, reverse=True)


@pytest.mark.parametrize("cls,n,deg", [((6, 2, 2), 2, 6), ((6, 2, 2), 2, None), ((5, 1, 3), 3, None), ((8, 4, 2), 2, 8)])
def test_partitions_match_brute_force(cls, n, deg):
    assert enumerate_partitions(cls, 1, n, deg) == brute_partitions(cls, 1, n, deg)


def test_h_partitions_and_genus_filter():
    h = catalog.get("H")
    rep = report(h, (6, 2, 2), n=2, degrees=[6, 6], n_sing=3)
    assert rep.degree == 12
    assert [p.parts for p in rep.survivors] == [((3, 1, 1), (3, 1, 1))]
    assert rep.survivors[0].genus_bounds == (1, 1)
    listed = {p.parts for p in rep.partitions}
    for pair in [((3, 2, 2), (3, 0, 0)), ((3, 2, 0), (3, 0, 2)), ((3, 1, 2), (3, 1, 0)), ((3, 1, 1), (3, 1, 1))]:
        assert pair in listed


def test_genus_bound_values():
    assert genus_bound((3, 1, 1)) == 4
    assert genus_bound((3, 1, 1), 3) == 1
    assert genus_bound((17, 0, 0)) == 256
    assert genus_bound((2, 0, 0)) == 1


def test_multiplicity_statuses():
    assert multiplicity_status(catalog.get("H"), (6, 2, 2)).m == 1
    st = multiplicity_status(L, (1, 1, 0))
    assert st.known and st.reason in ("P3-left", "P3-right")
    assert multiplicity_status(R, (1, 0, 1)).known


def test_coupler_degree_and_intersections():
    assert coupler_degree((6, 2, 2), 1) == 12
    assert coupler_degree((272, 0, 0), 1) == 544
    assert intersection_count((6, 2, 2), 1, (2, 0, 0), 1) == 24
    assert intersection_count((1, 1, 0), 2, (1, 0, 1), 1) == 1
    assert intersection_count((1, 1, 0), 4, (1, 0, 0), 1) == Fraction(1, 2)
    with pytest.raises(ValueError):
        coupler_degree((3, 1, 1), 4)


def test_equal_degree_hypothesis_for_f():
    rep = report(catalog.get("F"), (272, 0, 0), n=16, equal_degrees=True)
    assert rep.degree == 544
    assert all(d == 34 for p in rep.partitions for d in p.degrees)
    assert rep.partitions[0].genus_bounds[0] == 256


def test_report_json_is_plain():
    rep = report(C(3), (2, 0, 0), others=[("L", (1, 1, 0), 1)])
    js = rep.to_json()
    assert js["degree"] == 4 and js["intersections"][0]["count"] == 4
