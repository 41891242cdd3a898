"""Graded sequences of monomial ideals and the subadditive system ``t -> J(t phi)``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .functions import ValFun, evaluate, norm
from .geometry import Polyhedron, as_rational, integer_direction, support_min
from .ideals import MonomialIdeal, combine, ideal_of_region, newton_polyhedron
from .multiplier import NotQpshError, function_of_body, is_qpsh, multiplier_ideal
from .valuations import MonomialValuation, as_valuation, log_discrepancy


class GradedSystem:
    """Base for the three exactly solvable presentations of a graded sequence."""

    n: int

    def term(self, m: int) -> MonomialIdeal:
        if m < 1:
            raise ValueError("graded terms are indexed from 1")
        return _term(self, m)

    def _compute(self, m: int) -> MonomialIdeal:
        raise NotImplementedError


@dataclass(frozen=True)
class Powers(GradedSystem):
    ideal: MonomialIdeal

    @property
    def n(self) -> int:
        return self.ideal.n

    def _compute(self, m):
        return combine(self.ideal, None, "power", m)


@dataclass(frozen=True)
class FiniteStage(GradedSystem):
    """Generated in degrees ``1..d``; higher terms are sums of stage products.

    Construction checks ``a_k a_l`` inside ``a_{k+l}`` for ``k + l <= d``.
    """

    stages: tuple

    def __post_init__(self):
        stages = tuple(self.stages)
        object.__setattr__(self, "stages", stages)
        if not stages:
            raise ValueError("need at least one stage")
        n = stages[0].n
        if any(s.n != n for s in stages):
            raise ValueError("stages have different dimensions")
        d = len(stages)
        for k in range(1, d + 1):
            for l in range(k, d + 1 - k):
                prod = combine(stages[k - 1], stages[l - 1], "product")
                if not stages[k + l - 1].contains(prod):
                    raise ValueError(f"stages {k} and {l} violate the graded containment")

    @property
    def n(self) -> int:
        return self.stages[0].n

    def _compute(self, m):
        d = len(self.stages)
        if m <= d:
            result = self.stages[m - 1]
        else:
            result = None
        for k in range(1, min(m - 1, d) + 1):
            piece = combine(self.stages[k - 1], self.term(m - k), "product")
            result = piece if result is None else combine(result, piece, "sum")
        return result


@dataclass(frozen=True)
class ValuationIdeals(GradedSystem):
    """``a_m = {f : w(f) >= m * scale}``."""

    weight: MonomialValuation
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "weight", as_valuation(self.weight))
        object.__setattr__(self, "scale", as_rational(self.scale))
        if self.weight.is_trivial:
            raise ValueError("weight must be nontrivial")
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    @property
    def n(self) -> int:
        return self.weight.n

    def _compute(self, m):
        alpha = self.weight.alpha
        direction = integer_direction(alpha)
        i = next(j for j, x in enumerate(direction) if x)
        factor = alpha[i] / direction[i]
        return ideal_of_region(self.n, [(direction, m * self.scale / factor)], strict=False)


@lru_cache(maxsize=4096)
def _term(system: GradedSystem, m: int) -> MonomialIdeal:
    return system._compute(m)


def term(S: GradedSystem, m: int) -> MonomialIdeal:
    return S.term(m)


@lru_cache(maxsize=256)
def limit_body(S: GradedSystem) -> Polyhedron:
    """Exact ``closure of the union of (1/m) P(a_m)``."""
    if isinstance(S, Powers):
        return newton_polyhedron(S.ideal)
    if isinstance(S, FiniteStage):
        pts = []
        for k in range(1, len(S.stages) + 1):
            pts.extend(tuple(Fraction(x, k) for x in g) for g in S.term(k).gens)
        return Polyhedron.from_points(pts, S.n)
    if isinstance(S, ValuationIdeals):
        return Polyhedron.from_inequalities([(S.weight.alpha, S.scale)], S.n)
    raise TypeError(f"unsupported graded system {type(S).__name__}")


def asym_value(S: GradedSystem, v) -> Fraction:
    """``v(a_.) = inf_m v(a_m) / m``."""
    alpha = as_valuation(v).alpha
    if len(alpha) != S.n:
        raise ValueError("dimension mismatch")
    return support_min(limit_body(S), alpha)


def asym_multiplier_ideal(S: GradedSystem, t) -> MonomialIdeal:
    """Monomials ``x^beta`` with ``beta + 1`` in the interior of ``t * limit_body(S)``."""
    t = as_rational(t)
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return MonomialIdeal.unit(S.n)
    cons = [(u, t * b - sum(u)) for u, b in limit_body(S).inequalities]
    return ideal_of_region(S.n, cons, strict=True)


def to_valfun(S: GradedSystem) -> ValFun:
    """``log|a_.|`` as a max of single-monomial atoms over the vertices of the limit body."""
    return function_of_body(limit_body(S))


@dataclass(frozen=True)
class SubadditiveSystem:
    """``b_t = J(t phi)`` for a qpsh ``phi``."""

    source: ValFun

    def __post_init__(self):
        if not is_qpsh(self.source):
            raise NotQpshError("source function must be qpsh")

    def __call__(self, t) -> MonomialIdeal:
        return multiplier_ideal(self.source, t)

    def violations(self, pairs) -> list[tuple]:
        """Pairs ``(s, t)`` where ``b_{s+t}`` is not inside ``b_s b_t``."""
        bad = []
        for s, t in pairs:
            s, t = as_rational(s), as_rational(t)
            if not combine(self(s), self(t), "product").contains(self(s + t)):
                bad.append((s, t))
        return bad


@dataclass(frozen=True)
class GrowthMargin:
    t: Fraction
    alpha: tuple
    gap: Fraction  # (1/t) log|b_t|(v) - phi(v)
    bound: Fraction  # A(v) / t

    @property
    def ok(self) -> bool:
        return 0 <= self.gap < self.bound


def controlled_growth_check(phi: ValFun, t_list, v_list) -> list[GrowthMargin]:
    """Margins of ``0 <= (1/t) log|J(t phi)|(v) - phi(v) < A(v)/t``."""
    if not is_qpsh(phi):
        raise NotQpshError("controlled growth needs a qpsh function")
    out = []
    for t in t_list:
        t = as_rational(t)
        if t <= 0:
            raise ValueError("t must be positive")
        J = multiplier_ideal(phi, t)
        for v in v_list:
            v = as_valuation(v)
            if v.is_trivial:
                raise ValueError("trivial valuation")
            gap = -v(J) / t - evaluate(phi, v.alpha)
            out.append(GrowthMargin(t, v.alpha, gap, log_discrepancy(v) / t))
    return out


def approximation_error(phi: ValFun, t) -> Fraction:
    """``|| (1/t) log|J(t phi)| - phi ||``, which is below ``1/t``."""
    t = as_rational(t)
    if t <= 0:
        raise ValueError("t must be positive")
    if not is_qpsh(phi):
        raise NotQpshError("approximation needs a qpsh function")
    J = multiplier_ideal(phi, t)
    return norm(phi - ValFun.log(J, 1 / t), None, "abs").value
