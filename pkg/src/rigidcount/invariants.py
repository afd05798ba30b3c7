"""Coupler-curve invariants derived from the class of a calligraph.

Everything here is arithmetic on class vectors plus two graph predicates
(thinness and minimal rigidity of the L/R gluings).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple, Union

from .classes import ClassVector, InconsistencyError, class_product, glue
from .graph import MarkedGraph, is_minimally_rigid, is_thin

Triple = Tuple[int, int, int]


@dataclass(frozen=True)
class MultiplicityStatus:
    """Coupler multiplicity: known with a reason, or unknown with candidates.

    Candidates are the divisors of gcd(a, b, c). They are not authoritative;
    the multiplicity only has to be among them.
    """

    known: bool
    m: Optional[int] = None
    reason: Optional[str] = None  # thin, P3-left, P3-right
    candidates: Tuple[int, ...] = ()

    def to_json(self) -> dict:
        if self.known:
            return {"status": "known", "m": self.m, "reason": self.reason}
        return {"status": "unknown", "candidates": list(self.candidates), "authoritative": False}


def _divisors(n: int) -> Tuple[int, ...]:
    n = abs(n)
    if n == 0:
        return ()
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return tuple(sorted(set(small + [n // d for d in small])))


def multiplicity_status(g: MarkedGraph, cls: Sequence[int]) -> MultiplicityStatus:
    a, b, c = cls
    if is_thin(g):
        return MultiplicityStatus(True, 1, "thin")
    if not is_minimally_rigid(glue(g, "L")):
        if not (a == b and c == 0):
            raise InconsistencyError(f"G+L is not minimally rigid but the class is {tuple(cls)}")
        return MultiplicityStatus(True, a, "P3-left")
    if not is_minimally_rigid(glue(g, "R")):
        if not (a == c and b == 0):
            raise InconsistencyError(f"G+R is not minimally rigid but the class is {tuple(cls)}")
        return MultiplicityStatus(True, a, "P3-right")
    return MultiplicityStatus(False, candidates=_divisors(gcd(gcd(a, b), c)))


def coupler_degree(cls: Sequence[int], m: int) -> int:
    a = cls[0]
    if m <= 0 or (2 * a) % m:
        raise ValueError(f"multiplicity {m} does not divide 2a = {2 * a}")
    return 2 * a // m


def genus_bound(alpha: Sequence[int], n_sing: int = 0) -> int:
    """Upper bound on the geometric genus of a component with class part alpha."""
    a, b, c = alpha
    return a * (a - 2) - b * (b - 1) - c * (c - 1) + 1 - n_sing


def _parts(total: Triple, degree: Optional[int]):
    A, B, C = total
    a_values = range(1, A + 1) if degree is None else ([degree // 2] if degree % 2 == 0 else [])
    for a in a_values:
        if a > A:
            continue
        for b in range(min(a, B), -1, -1):
            for c in range(min(a, C), -1, -1):
                yield (a, b, c)


def enumerate_partitions(
    cls: Sequence[int],
    m: int,
    n: int,
    degrees: Optional[Union[int, Sequence[int]]] = None,
    limit: int = 100000,
) -> List[Tuple[Triple, ...]]:
    """Class partitions of cls/m into n parts, up to permutation of the parts.

    ``degrees`` fixes 2*alpha_i0 per part (a single int applies to every part).
    Parts are listed in descending lexicographic order inside each partition,
    and partitions in descending lexicographic order.
    """
    if any(x % m for x in cls):
        raise ValueError(f"multiplicity {m} does not divide {tuple(cls)}")
    total = tuple(x // m for x in cls)
    if isinstance(degrees, int):
        degrees = [degrees] * n
    if degrees is not None:
        if len(degrees) != n:
            raise ValueError("need one degree per part")
        degrees = sorted(degrees, reverse=True)
    out: List[Tuple[Triple, ...]] = []

    def rec(k: int, remaining: Triple, prefix: List[Triple], bound: Optional[Triple]):
        if len(out) > limit:
            raise ValueError(f"more than {limit} partitions; fix the part degrees")
        if k == n:
            if remaining == (0, 0, 0):
                out.append(tuple(prefix))
            return
        deg = None if degrees is None else degrees[k]
        same_degree = degrees is None or k == 0 or degrees[k] == degrees[k - 1]
        for part in _parts(remaining, deg):
            if bound is not None and same_degree and part > bound:
                continue
            rest = tuple(r - p for r, p in zip(remaining, part))
            if rest[0] < n - k - 1:
                continue  # every later part needs a >= 1
            prefix.append(part)
            rec(k + 1, rest, prefix, part)
            prefix.pop()

    rec(0, total, [], None)
    return sorted(out, reverse=True)


def intersection_count(
    cls1: Sequence[int], m1: int, cls2: Sequence[int], m2: int
) -> Union[int, Fraction]:
    """|T n T'| from the product of classes; a Fraction signals non-integrality."""
    value = Fraction(class_product(cls1, cls2), m1 * m2)
    return int(value) if value.denominator == 1 else value


@dataclass
class PartitionReport:
    parts: Tuple[Triple, ...]
    degrees: Tuple[int, ...]
    genus_bounds: Tuple[int, ...]

    @property
    def feasible(self) -> bool:
        return all(g >= 0 for g in self.genus_bounds)

    def to_json(self) -> dict:
        return {
            "parts": [list(p) for p in self.parts],
            "degrees": list(self.degrees),
            "genus_bounds": list(self.genus_bounds),
            "feasible": self.feasible,
        }


@dataclass
class CouplerReport:
    cls: ClassVector
    multiplicity: MultiplicityStatus
    degree: Optional[int]
    partitions: List[PartitionReport] = field(default_factory=list)
    intersections: List[dict] = field(default_factory=list)

    @property
    def survivors(self) -> List[PartitionReport]:
        return [p for p in self.partitions if p.feasible]

    def to_json(self) -> dict:
        return {
            "class": list(self.cls),
            "multiplicity": self.multiplicity.to_json(),
            "degree": self.degree,
            "partitions": [p.to_json() for p in self.partitions],
            "intersections": self.intersections,
        }


def report(
    g: MarkedGraph,
    cls: Sequence[int],
    n: Optional[int] = None,
    degrees: Optional[Union[int, Sequence[int]]] = None,
    equal_degrees: bool = False,
    n_sing: int = 0,
    others: Sequence[Tuple[str, Sequence[int], int]] = (),
) -> CouplerReport:
    """Assemble the invariants of a calligraph with known class.

    ``n`` is the number of components, which has to come from outside (for
    instance a drawing). ``equal_degrees`` splits the total degree evenly.
    ``n_sing`` is a lower bound on the singular points of every component.
    ``others`` lists (name, class, multiplicity) to intersect with.
    """
    cls = ClassVector(*cls)
    status = multiplicity_status(g, cls)
    degree = coupler_degree(cls, status.m) if status.known else None
    rep = CouplerReport(cls, status, degree)
    if n is not None:
        if not status.known:
            raise ValueError("partitions need a known multiplicity")
        if equal_degrees:
            if degree % n:
                raise ValueError(f"degree {degree} does not split into {n} equal parts")
            degrees = degree // n
        for parts in enumerate_partitions(cls, status.m, n, degrees):
            rep.partitions.append(
                PartitionReport(
                    parts,
                    tuple(2 * p[0] for p in parts),
                    tuple(genus_bound(p, n_sing) for p in parts),
                )
            )
    for name, other, m2 in others:
        if status.known:
            value = intersection_count(cls, status.m, other, m2)
            rep.intersections.append(
                {"with": name, "count": str(value) if isinstance(value, Fraction) else value,
                 "integral": not isinstance(value, Fraction)}
            )
    return rep
