"""Multiplier ideals, jumping numbers and envelopes on the monomial slice."""

from __future__ import annotations

import math
from fractions import Fraction

from .functions import (
    ValFun,
    candidate_rays,
    evaluate,
    is_convex_nonpositive,
    norm,
    pointwise_max,
)
from .geometry import Polyhedron, as_rational, dot, minkowski_scale_sum
from .ideals import MonomialIdeal, combine, ideal_of_region, minimalize, newton_polyhedron


class NotQpshError(ValueError):
    pass


def multiplier_ideal(phi: ValFun, t=1, closed: bool = False) -> MonomialIdeal | None:
    """``J(t phi)`` (or ``J_-(t phi)`` when ``closed``) as a monomial ideal.

    A monomial ``x^beta`` belongs iff ``<u, beta> + A(u) + t phi(u) > 0``
    (``>= 0`` when closed) for every candidate ray ``u``.  ``None`` signals
    the zero ideal, which cannot occur on the monomial slice but is kept as
    an explicit outcome.
    """
    t = as_rational(t)
    if t < 0:
        raise ValueError("t must be nonnegative")
    n = phi.n
    if t == 0:
        return MonomialIdeal.unit(n)
    cons = []
    for u in candidate_rays(phi):
        cons.append((u, -sum(u) - t * evaluate(phi, u)))
    return ideal_of_region(n, cons, strict=not closed)


def multiplier_ideal_of_product(terms, t=1) -> MonomialIdeal:
    """``J(prod a_j^{t c_j})`` via the interior of ``sum t c_j P(a_j)`` shifted by ``(1,...,1)``."""
    t = as_rational(t)
    terms = [(as_rational(c), a) for c, a in terms]
    if any(c <= 0 for c, _ in terms):
        raise ValueError("coefficients must be positive")
    n = terms[0][1].n
    if t == 0:
        return MonomialIdeal.unit(n)
    Q = minkowski_scale_sum([(t * c, newton_polyhedron(a)) for c, a in terms])
    cons = [(u, b - sum(u)) for u, b in Q.inequalities]
    return ideal_of_region(n, cons, strict=True)


def _require_qpsh(phi: ValFun) -> None:
    if not is_qpsh(phi):
        raise NotQpshError("function is not qpsh on the monomial slice")


def _bounded_values(u, cap):
    """All ``sum_{u_i > 0} u_i m_i`` with integers ``m_i >= 1`` not exceeding ``cap``."""
    support = [x for x in u if x > 0]
    out = set()

    def rec(i, acc):
        if i == len(support):
            out.add(acc)
            return
        m = 1
        while acc + support[i] * m + sum(support[i + 1:]) <= cap:
            rec(i + 1, acc + support[i] * m)
            m += 1

    if sum(support) <= cap:
        rec(0, 0)
    return out


def jumping_numbers(phi: ValFun, t_max) -> list[Fraction]:
    """All ``0 < t <= t_max`` with ``J_-(t phi) != J(t phi)``."""
    t_max = as_rational(t_max)
    if t_max <= 0:
        raise ValueError("t_max must be positive")
    _require_qpsh(phi)
    candidates = set()
    for u in candidate_rays(phi):
        slope = -evaluate(phi, u)
        if slope <= 0:
            continue
        for val in _bounded_values(u, t_max * slope):
            candidates.add(Fraction(val) / slope)
    jumps = []
    for t in sorted(candidates):
        if multiplier_ideal(phi, t, closed=True) != multiplier_ideal(phi, t):
            jumps.append(t)
    return jumps


def envelope_ideal(phi: ValFun, m: int = 1) -> MonomialIdeal | None:
    """Largest ideal ``a`` with ``log|a| <= m phi``; ``None`` for the zero ideal."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    cons = [(u, -m * evaluate(phi, u)) for u in candidate_rays(phi)]
    return ideal_of_region(phi.n, cons, strict=False)


def envelope_polyhedron(phi: ValFun) -> Polyhedron:
    """``{x >= 0 : <u, x> >= -phi(u)}``, whose negated support function is the envelope."""
    return Polyhedron.from_inequalities([(u, -evaluate(phi, u)) for u in candidate_rays(phi)], phi.n)


def function_of_body(P: Polyhedron) -> ValFun:
    """``alpha -> -support_min(P, alpha)`` as a max of monomial atoms."""
    atoms = []
    for q in P.vertices:
        m = math.lcm(*(Fraction(x).denominator for x in q))
        beta = tuple(int(x * m) for x in q)
        atoms.append(((Fraction(1, m), minimalize([beta], P.dim)),))
    return ValFun(P.dim, tuple(atoms))


def qpsh_envelope(phi: ValFun) -> ValFun:
    """Largest qpsh function below ``phi`` (convex, nonpositive, piecewise linear)."""
    return function_of_body(envelope_polyhedron(phi))


def is_qpsh(phi: ValFun) -> bool:
    """``phi`` equals its qpsh envelope.

    Agreement on the candidate rays is checked together with the exact
    convexity test; the ray check alone cannot see a concave fold across a
    two-dimensional wall when ``n >= 3``.
    """
    if not is_convex_nonpositive(phi):
        return False
    env = qpsh_envelope(phi)
    return all(evaluate(env, u) == evaluate(phi, u) for u in candidate_rays(phi))


def maximal_ideal_truncation(phi: ValFun, q: MonomialIdeal | None = None):
    """``(p, max{phi, p log|m|})`` with ``p > k / (lam' - lam)``.

    Here ``1/lam = ||phi||_q``, ``k`` is least with ``m^k q`` inside
    ``J(lam phi)`` and ``1/lam' = ||phi||_{m^k q}``.  Requires
    ``(J(lam phi) : q)`` to be primary to the maximal ideal.
    """
    n = phi.n
    if q is None:
        q = MonomialIdeal.unit(n)
    value = norm(phi, q, "minus").value
    if value <= 0:
        raise ValueError("norm vanishes")
    lam = 1 / value
    J = multiplier_ideal(phi, lam)
    colon = combine(J, q, "colon")
    for i in range(n):
        if not any(all(g[j] == 0 for j in range(n) if j != i) for g in colon.gens):
            raise ValueError("(J : q) is not primary to the maximal ideal")
    m = MonomialIdeal.maximal(n)
    k = 0
    while not J.contains(combine(combine(m, None, "power", k), q, "product")):
        k += 1
    lam2 = 1 / norm(phi, combine(combine(m, None, "power", k), q, "product"), "minus").value
    if lam2 <= lam:
        raise AssertionError("expected a strictly larger threshold")
    p = math.floor(k / (lam2 - lam)) + 1
    return p, pointwise_max(phi, ValFun.log(m, p))


def satisfies_lower_bound(phi: ValFun, t) -> bool:
    """``t phi <= log|J(t phi)|`` on every candidate ray."""
    J = multiplier_ideal(phi, t)
    rays = candidate_rays(pointwise_max(phi, ValFun.log(J)))
    return all(as_rational(t) * evaluate(phi, u) <= -min(dot(u, g) for g in J.gens) for u in rays)
