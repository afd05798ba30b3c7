"""Exact realization counting by Groebner-basis quotient dimension.

The distance equations are pinned by (x1,y1)=(0,0) and (x2,y2)=(1,0). For
speed the counting path rewrites them in isotropic coordinates
u = x + iy, w = x - iy, where each equation becomes (u_i-u_j)(w_i-w_j) = w(e)^2
with rational coefficients; the change of coordinates is linear and invertible
over C, so the number of solutions is unchanged.
"""

from __future__ import annotations

import hashlib
import random
from fractions import Fraction
from typing import Dict, List, Optional

from .graph import Edge, MarkedGraph
from .groebner import BudgetExceeded, GroebnerBasis, MonomialOrder, buchberger
from .polynomial import Poly, PolyRing

DEFAULT_PRIME = 2147483647  # 2^31 - 1
ATTEMPTS = 4


class OracleError(RuntimeError):
    """Base class for oracle failures."""


class NonGenericSampling(OracleError):
    """Counts from different length samples kept disagreeing."""


class DegenerateSystem(OracleError):
    """The system is not zero-dimensional: not rigid, or degenerate lengths."""


class OracleBudgetExceeded(OracleError):
    """The Groebner computation ran past its budget."""


def derive_seed(seed: int, *salt) -> int:
    data = repr((seed,) + salt).encode()
    return int.from_bytes(hashlib.sha256(data).digest()[:8], "big")


def sample_lengths(g: MarkedGraph, seed: int) -> Dict[Edge, Fraction]:
    """Random squared lengths k/m, k in [1,97], m in [1,13]; the marked edge gets 1."""
    rng = random.Random(derive_seed(seed, "lengths"))
    out = {}
    for e in g.sorted_edges():
        if e == (1, 2):
            out[e] = Fraction(1)
        else:
            out[e] = Fraction(rng.randint(1, 97), rng.randint(1, 13))
    return out


def _free_vertices(g: MarkedGraph) -> List[int]:
    return sorted(g.vertices - {1, 2})


def realization_system(g: MarkedGraph, omega2: Dict[Edge, Fraction]) -> List[Poly]:
    """Pinned distance equations (x_i-x_j)^2 + (y_i-y_j)^2 - w(e)^2 over Q."""
    free = _free_vertices(g)
    names = []
    for v in free:
        names += [f"x{v}", f"y{v}"]
    ring = PolyRing(names)
    coords = {1: (ring.constant(0), ring.constant(0)), 2: (ring.constant(1), ring.constant(0))}
    for v in free:
        coords[v] = (ring.gen(f"x{v}"), ring.gen(f"y{v}"))
    eqs = []
    for e in g.sorted_edges():
        if e == (1, 2):
            continue
        if e not in omega2:
            raise KeyError(f"missing length for edge {e}")
        (xa, ya), (xb, yb) = coords[e[0]], coords[e[1]]
        eqs.append((xa - xb) ** 2 + (ya - yb) ** 2 - omega2[e])
    return eqs


def isotropic_system(
    g: MarkedGraph, omega2: Dict[Edge, Fraction], modulus: Optional[int] = DEFAULT_PRIME
) -> List[Poly]:
    """The same equations in u = x+iy, w = x-iy, optionally reduced mod a prime.

    Variables come in (u, w) pairs per vertex, low-degree vertices first; this
    order keeps the grevlex computation noticeably smaller on larger graphs.
    """
    adj = g.adjacency()
    free = sorted(_free_vertices(g), key=lambda v: (len(adj[v]), v))
    names = [name for v in free for name in (f"u{v}", f"w{v}")]
    ring = PolyRing(names, modulus)
    coords = {1: (ring.constant(0), ring.constant(0)), 2: (ring.constant(1), ring.constant(1))}
    for v in free:
        coords[v] = (ring.gen(f"u{v}"), ring.gen(f"w{v}"))
    eqs = []
    for e in g.sorted_edges():
        if e == (1, 2):
            continue
        (ua, wa), (ub, wb) = coords[e[0]], coords[e[1]]
        eqs.append((ua - ub) * (wa - wb) - omega2[e])
    return eqs


def _kernel_available() -> bool:
    try:
        from . import _gbkernel  # noqa: F401
    except ImportError:  # numba missing
        return False
    return True


def count_solutions(eqs: List[Poly], budget: Optional[int] = None, engine: str = "auto") -> int:
    """Quotient dimension of the ideal of ``eqs``.

    ``engine`` is "kernel" (compiled, prime field only), "python", or "auto".
    """
    if not eqs:
        return 1
    ring = eqs[0].ring
    if engine == "auto":
        engine = "kernel" if ring.modulus is not None and _kernel_available() else "python"
    if engine == "kernel":
        if ring.modulus is None:
            raise ValueError("the compiled kernel needs a prime modulus")
        from ._gbkernel import groebner_modp

        try:
            status, _, basis = groebner_modp([f.terms for f in eqs], ring.nvars, ring.modulus, budget or 0)
        except OverflowError:
            return count_solutions(eqs, budget, "python")
        if status == 1:
            raise OracleBudgetExceeded(f"kernel budget of {budget} row operations exceeded")
        if status == 2:
            return 0  # unit ideal: no solutions
        gb = GroebnerBasis([Poly(ring, b) for b in basis], MonomialOrder("grevlex", ring.nvars), ring)
    else:
        try:
            gb = buchberger(eqs, "grevlex", budget=budget)
        except BudgetExceeded as exc:
            raise OracleBudgetExceeded(str(exc)) from None
    if not gb.is_zero_dimensional():
        raise DegenerateSystem("system is not zero-dimensional")
    return gb.count_standard_monomials()


def count_once(
    g: MarkedGraph,
    seed: int,
    budget: Optional[int] = None,
    modulus: Optional[int] = DEFAULT_PRIME,
    isotropic: bool = True,
    engine: str = "auto",
) -> int:
    omega2 = sample_lengths(g, seed)
    if isotropic:
        eqs = isotropic_system(g, omega2, modulus)
    else:
        eqs = realization_system(g, omega2)
        if modulus is not None:
            ring = PolyRing(eqs[0].ring.names, modulus) if eqs else None
            eqs = [Poly(ring, f.terms) for f in eqs]
    return count_solutions(eqs, budget, engine)


def count_realizations_oracle(
    g: MarkedGraph,
    seed: int = 0,
    budget: Optional[int] = None,
    modulus: Optional[int] = DEFAULT_PRIME,
    isotropic: bool = True,
    attempts: int = ATTEMPTS,
    engine: str = "auto",
) -> int:
    """Number of complex realizations at generic lengths.

    Two independently derived length samples must agree; on disagreement fresh
    pairs are drawn up to ``attempts`` times.
    """
    if len(g.vertices) == 2:
        return 1
    seen = []
    for attempt in range(attempts):
        s1 = derive_seed(seed, "first", attempt)
        s2 = derive_seed(seed, "second", attempt)
        try:
            a = count_once(g, s1, budget, modulus, isotropic, engine)
            b = count_once(g, s2, budget, modulus, isotropic, engine)
        except DegenerateSystem:
            seen.append(None)
            continue
        if a == b:
            return a
        seen.append((a, b))
    if all(s is None for s in seen):
        raise DegenerateSystem("positive-dimensional for every sample: graph not rigid or lengths degenerate")
    raise NonGenericSampling(f"sample counts kept disagreeing: {seen}")
