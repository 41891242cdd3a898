"""Brute-force reference computations.

These avoid fans, double description and linear programming so that
agreement with the main solvers is independent evidence.  Only
``lattice_multiplier`` borrows the candidate rays, since it tests the
defining inequality pointwise rather than solving for generators.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .asymptotic import FiniteStage
from .functions import ValFun, candidate_rays
from .geometry import as_rational
from .ideals import MonomialIdeal, combine, minimal_exponents, minimalize

PARTITION_CAP = 12


def _value(phi: ValFun, alpha) -> Fraction:
    best = None
    for atom in phi.atoms:
        s = Fraction(0)
        for c, a in atom:
            s -= c * min(sum(x * y for x, y in zip(alpha, g)) for g in a.gens)
        best = s if best is None else max(best, s)
    return best


def _ratio(phi, q, alpha, variant):
    val = _value(phi, alpha)
    num = {"abs": abs(val), "plus": val, "minus": -val}[variant]
    den = sum(alpha) + min(sum(x * y for x, y in zip(alpha, g)) for g in q.gens)
    return Fraction(num) / den


def grid_points(n: int, max_denominator: int):
    """Nonzero ``p >= 0`` in ``Z^n`` with ``|p|_1 <= max_denominator``."""
    for total in range(1, max_denominator + 1):
        for cut in itertools.combinations(range(total + n - 1), n - 1):
            prev, p = -1, []
            for c in cut:
                p.append(c - prev - 1)
                prev = c
            p.append(total + n - 2 - prev)
            yield tuple(p)


def grid_norm_witness(phi: ValFun, q: MonomialIdeal | None = None, variant: str = "abs",
                      max_denominator: int = 10) -> tuple[Fraction, tuple]:
    """Best ratio over simplex points whose coordinates share a denominator ``<= max_denominator``."""
    if max_denominator < 1:
        raise ValueError("max_denominator must be positive")
    if q is None:
        q = MonomialIdeal.unit(phi.n)
    best = None
    for p in grid_points(phi.n, max_denominator):
        r = _ratio(phi, q, p, variant)
        if best is None or r > best[0]:
            best = (r, p)
    return best


def grid_norm(phi: ValFun, q: MonomialIdeal | None = None, variant: str = "abs",
              max_denominator: int = 10) -> Fraction:
    return grid_norm_witness(phi, q, variant, max_denominator)[0]


def lattice_multiplier(phi: ValFun, t, box: int, closed: bool = False) -> set[tuple]:
    """Every ``beta`` in ``[0, box]^n`` with ``<u, beta + 1> + t phi(u) > 0`` on all candidate rays."""
    if box < 1:
        raise ValueError("box must be positive")
    t = as_rational(t)
    rays = candidate_rays(phi)
    slopes = [(u, t * _value(phi, u)) for u in rays]
    out = set()
    for beta in itertools.product(range(box + 1), repeat=phi.n):
        ok = True
        for u, s in slopes:
            lhs = sum(x * (y + 1) for x, y in zip(u, beta)) + s
            if lhs < 0 or (lhs == 0 and not closed):
                ok = False
                break
        if ok:
            out.add(beta)
    return out


def box_ideal_points(ideal: MonomialIdeal, box: int) -> set[tuple]:
    """Exponents of ``ideal`` inside ``[0, box]^n``."""
    return {b for b in itertools.product(range(box + 1), repeat=ideal.n) if ideal.contains_monomial(b)}


def lattice_region(n: int, constraints, box: int, strict: bool = False) -> set[tuple]:
    """Points of ``[0, box]^n`` satisfying ``<u, beta> >= b`` (or ``>``) for every ``(u, b)``."""
    out = set()
    for beta in itertools.product(range(box + 1), repeat=n):
        vals = [(sum(x * y for x, y in zip(u, beta)), Fraction(b)) for u, b in constraints]
        if all(v > b if strict else v >= b for v, b in vals):
            out.add(beta)
    return out


def _partitions(m: int, largest: int):
    if m == 0:
        yield ()
        return
    for k in range(min(m, largest), 0, -1):
        for rest in _partitions(m - k, k):
            yield (k,) + rest


def partition_term(S: FiniteStage, m: int) -> MonomialIdeal:
    """``sum over partitions of m into parts <= d`` of the corresponding stage products."""
    if m < 1:
        raise ValueError("m must be positive")
    if m > PARTITION_CAP:
        raise ValueError(f"partition oracle is capped at m <= {PARTITION_CAP}")
    n = S.n
    exps = []
    for parts in _partitions(m, len(S.stages)):
        prod = MonomialIdeal.unit(n)
        for k in parts:
            prod = combine(prod, S.stages[k - 1], "product")
        exps.extend(prod.gens)
    return minimalize(minimal_exponents(exps), n)
