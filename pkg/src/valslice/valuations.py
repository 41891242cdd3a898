"""Monomial valuations at the origin of affine n-space."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import dot, integer_direction, rvec
from .ideals import MonomialIdeal, localize, minimalize


@dataclass(frozen=True)
class MonomialValuation:
    """``val_alpha``: a polynomial goes to the least ``<alpha, beta>`` over its monomials.

    The center is the coordinate subspace cut out by the variables with
    positive weight.  ``alpha = 0`` is the trivial valuation.
    """

    alpha: tuple

    def __post_init__(self):
        object.__setattr__(self, "alpha", rvec(self.alpha))
        if not self.alpha:
            raise ValueError("empty weight vector")
        if any(a < 0 for a in self.alpha):
            raise ValueError("weights must be nonnegative")

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def is_trivial(self) -> bool:
        return not any(self.alpha)

    def scaled(self, t) -> "MonomialValuation":
        return MonomialValuation(tuple(Fraction(t) * a for a in self.alpha))

    def primitive_ray(self) -> tuple:
        return integer_direction(self.alpha)

    def __call__(self, target) -> Fraction:
        return evaluate(self, target)


def evaluate(v: MonomialValuation, target) -> Fraction:
    """Value on a monomial (exponent vector) or on a monomial ideal."""
    if isinstance(target, MonomialIdeal):
        if target.n != v.n:
            raise ValueError("dimension mismatch")
        return min(dot(v.alpha, g) for g in target.gens)
    beta = tuple(target)
    if len(beta) != v.n:
        raise ValueError("dimension mismatch")
    return dot(v.alpha, beta)


def log_discrepancy(v: MonomialValuation) -> Fraction:
    """A(val_alpha) = sum of the weights (coordinate hyperplanes, K_{Y/X} = 0)."""
    return sum(v.alpha, Fraction(0))


def ord_at_origin(a: MonomialIdeal) -> int:
    return min(sum(g) for g in a.gens)


def center_ideal(v: MonomialValuation) -> MonomialIdeal:
    """Ideal of the center: the variables with positive weight."""
    if v.is_trivial:
        raise ValueError("trivial valuation has no proper center")
    return minimalize([tuple(int(j == i) for j in range(v.n)) for i in range(v.n) if v.alpha[i] > 0], v.n)


@dataclass(frozen=True)
class IzumiReport:
    lower_ok: bool
    upper_ok: bool
    lower_margin: Fraction  # v(a) - v(m_xi) * ord_xi(a)
    upper_margin: Fraction  # A(v) * ord_xi(a) - v(a)
    order: int


def izumi_check(v: MonomialValuation, a: MonomialIdeal) -> IzumiReport:
    """Check ``v(m_xi) ord_xi(a) <= v(a) <= A(v) ord_xi(a)`` exactly.

    ``ord_xi`` is the order along the center, computed after inverting the
    variables of weight zero.
    """
    if v.is_trivial:
        raise ValueError("Izumi bounds need a nontrivial valuation")
    if a.n != v.n:
        raise ValueError("dimension mismatch")
    zero = [i for i, x in enumerate(v.alpha) if x == 0]
    order = ord_at_origin(localize(a, zero))
    value = evaluate(v, a)
    vm = evaluate(v, center_ideal(v))
    lower = value - vm * order
    upper = log_discrepancy(v) * order - value
    return IzumiReport(lower >= 0, upper >= 0, lower, upper, order)


def coordinate_rays(n: int) -> list[tuple]:
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def as_valuation(x) -> MonomialValuation:
    return x if isinstance(x, MonomialValuation) else MonomialValuation(tuple(x))


def weights(x) -> Sequence:
    return x.alpha if isinstance(x, MonomialValuation) else rvec(x)
