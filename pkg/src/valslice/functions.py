"""Valuative functions on the monomial slice and their norms.

A ``ValFun`` is a finite maximum of *atoms*; an atom is a rational linear
combination of ideal functions ``log|a|``, where ``log|a|(v) = -v(a)``.  On
monomial valuations such a function is continuous, homogeneous and piecewise
linear on the common refinement of the normal fans of the Newton polyhedra
involved, further cut by the hyperplanes where two atoms tie.  All extrema
below are taken over the rays of that subdivision.

Soundness rests on one assumption, used throughout the package: for data
built from monomial ideals, suprema over all valuations are attained on
monomial valuations, because monomial ideals have toric log resolutions
whose exceptional divisors are monomial valuations.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .geometry import (
    _int_row,
    cone_rays,
    dot,
    integer_direction,
    minkowski_scale_sum,
    exact_lp,
    rank,
    as_rational,
)
from .ideals import MonomialIdeal, newton_polyhedron
from .valuations import MonomialValuation, coordinate_rays, weights

VARIANTS = ("abs", "plus", "minus")


@dataclass(frozen=True)
class ValFun:
    """``phi(alpha) = max_k sum_j c_kj * log|a_kj|(alpha)``."""

    n: int
    atoms: tuple  # ((Fraction, MonomialIdeal), ...) per atom

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("a valuative function needs at least one atom")
        canon = []
        for atom in self.atoms:
            merged: dict[MonomialIdeal, Fraction] = {}
            for c, ideal in atom:
                if ideal.n != self.n:
                    raise ValueError("ideal dimension does not match function dimension")
                if ideal.is_unit:
                    continue
                merged[ideal] = merged.get(ideal, Fraction(0)) + as_rational(c)
            terms = tuple((c, a) for a, c in merged.items() if c != 0)
            if not terms:
                terms = ((Fraction(1), MonomialIdeal.unit(self.n)),)
            if terms not in canon:
                canon.append(terms)
        object.__setattr__(self, "atoms", tuple(canon))

    def __str__(self):
        def term(c, a):
            if a.is_unit:
                return "0"
            return f"log|{a}|" if c == 1 else f"{c}*log|{a}|"

        def atom_str(atom):
            out = term(*atom[0])
            for c, a in atom[1:]:
                out += f" - {term(-c, a)}" if c < 0 else f" + {term(c, a)}"
            return out

        parts = [atom_str(atom) for atom in self.atoms]
        return parts[0] if len(parts) == 1 else "max(" + ", ".join(parts) + ")"

    @classmethod
    def log(cls, ideal: MonomialIdeal, c=1) -> "ValFun":
        return cls(ideal.n, (((as_rational(c), ideal),),))

    @classmethod
    def combination(cls, terms: Iterable[tuple]) -> "ValFun":
        terms = [(as_rational(c), a) for c, a in terms]
        return cls(terms[0][1].n, (tuple(terms),))

    @classmethod
    def zero(cls, n: int) -> "ValFun":
        return cls.log(MonomialIdeal.unit(n))

    @property
    def is_single_atom(self) -> bool:
        return len(self.atoms) == 1

    def is_ideal_function(self) -> bool:
        return self.is_single_atom and all(c > 0 for c, _ in self.atoms[0])

    def ideals(self) -> list[MonomialIdeal]:
        seen = []
        for atom in self.atoms:
            for _, a in atom:
                if a not in seen and not a.is_unit:
                    seen.append(a)
        return seen

    def scaled(self, t) -> "ValFun":
        t = as_rational(t)
        if t < 0:
            raise ValueError("only nonnegative rescaling keeps the max-of-atoms form")
        if t == 0:
            return ValFun.zero(self.n)
        return ValFun(self.n, tuple(tuple((c * t, a) for c, a in atom) for atom in self.atoms))

    def __add__(self, other: "ValFun") -> "ValFun":
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        return ValFun(self.n, tuple(f + g for f in self.atoms for g in other.atoms))

    def __neg__(self) -> "ValFun":
        if not self.is_single_atom:
            raise ValueError("negating a max of several atoms leaves the representable class")
        return ValFun(self.n, (tuple((-c, a) for c, a in self.atoms[0]),))

    def __sub__(self, other: "ValFun") -> "ValFun":
        return self + (-other)

    def __call__(self, alpha) -> Fraction:
        return evaluate(self, alpha)


def _atom_value(atom, alpha) -> Fraction:
    total = Fraction(0)
    for c, a in atom:
        total -= c * min(dot(alpha, g) for g in a.corners)
    return total


def evaluate(phi: ValFun, alpha) -> Fraction:
    alpha = weights(alpha)
    if len(alpha) != phi.n:
        raise ValueError("dimension mismatch")
    return max(_atom_value(atom, alpha) for atom in phi.atoms)


def pointwise_max(phi: ValFun, psi: ValFun) -> ValFun:
    if phi.n != psi.n:
        raise ValueError("dimension mismatch")
    return ValFun(phi.n, phi.atoms + psi.atoms)


# ---------------------------------------------------------------------------
# linearity fan


@dataclass(frozen=True)
class Cell:
    """A full-dimensional cone on which ``phi`` and the norm denominator are linear."""

    rays: tuple
    form: tuple  # phi(alpha) = <form, alpha> on the cell
    denominator: tuple  # A(alpha) + v_q(alpha) = <denominator, alpha>


def _argmin_gen(ideal: MonomialIdeal, alpha) -> tuple:
    return min(ideal.gens, key=lambda g: (dot(alpha, g), g))


@lru_cache(maxsize=2048)
def linearity_cells(phi: ValFun, q: MonomialIdeal) -> tuple:
    n = phi.n
    if q.n != n:
        raise ValueError("dimension mismatch")
    polys = [newton_polyhedron(a) for a in phi.ideals()]
    if not q.is_unit:
        polys.append(newton_polyhedron(q))
    if not polys:
        polys = [newton_polyhedron(MonomialIdeal.unit(n))]
    total = minkowski_scale_sum([(1, P) for P in polys])
    coords = [list(e) for e in coordinate_rays(n)]
    cells = []
    for w in total.vertices:
        rows = [_int_row([x - y for x, y in zip(w2, w)]) for w2 in total.vertices if w2 != w]
        rows = [r for r in rows if any(r)] + coords
        rays = cone_rays(rows, n)
        if rank(rays) < n:
            continue
        inner = tuple(sum(r[i] for r in rays) for i in range(n))
        forms = []
        for atom in phi.atoms:
            form = [Fraction(0)] * n
            for c, a in atom:
                g = _argmin_gen(a, inner)
                for i in range(n):
                    form[i] -= c * g[i]
            forms.append(tuple(form))
        gq = _argmin_gen(q, inner)
        den = tuple(1 + x for x in gq)
        if len(forms) == 1:
            cells.append(Cell(tuple(rays), forms[0], den))
            continue
        for k, fk in enumerate(forms):
            extra = [_int_row([x - y for x, y in zip(fk, fl)]) for l, fl in enumerate(forms) if l != k]
            sub = cone_rays(rows + [r for r in extra if any(r)], n)
            if sub and rank(sub) == n:
                cells.append(Cell(tuple(sub), fk, den))
    return tuple(cells)


@lru_cache(maxsize=2048)
def _candidate_rays(phi: ValFun, q: MonomialIdeal) -> tuple:
    rays = set(coordinate_rays(phi.n))
    for cell in linearity_cells(phi, q):
        rays.update(cell.rays)
    return tuple(sorted(rays))


def candidate_rays(phi: ValFun, q: MonomialIdeal | None = None) -> list[tuple]:
    """Primitive rays on which every linear-fractional extremum of ``phi`` is attained.

    For a single atom these are exactly the facet normals of the Minkowski sum
    of all Newton polyhedra involved (coordinate rays included).  With several
    atoms the rays where atoms tie inside a cone are added.
    """
    if q is None:
        q = MonomialIdeal.unit(phi.n)
    if q.n != phi.n:
        raise ValueError("dimension mismatch")
    return list(_candidate_rays(phi, q))


# ---------------------------------------------------------------------------
# norms


@dataclass(frozen=True)
class NormReport:
    value: Fraction
    witness: MonomialValuation
    witness_is_divisorial: bool = True


def _numerator(phi: ValFun, u, variant: str) -> Fraction:
    val = evaluate(phi, u)
    if variant == "plus":
        return val
    if variant == "minus":
        return -val
    if variant == "abs":
        return abs(val)
    raise ValueError(f"unknown norm variant {variant!r}")


def ratio(phi: ValFun, q: MonomialIdeal, u, variant: str = "abs") -> Fraction:
    """``|phi(u)| / (A(u) + u(q))`` (or the signed variants) at a nonzero weight vector."""
    u = weights(u)
    den = sum(u, Fraction(0)) + min(dot(u, g) for g in q.gens)
    if den == 0:
        raise ValueError("the trivial valuation is excluded")
    return _numerator(phi, u, variant) / den


def norm(phi: ValFun, q: MonomialIdeal | None = None, variant: str = "abs",
         cross_check: bool = False) -> NormReport:
    """Exact ``sup_v num(phi(v)) / (A(v) + v(q))`` over nontrivial monomial valuations.

    With ``cross_check`` the LP formulation is solved as well and must agree.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown norm variant {variant!r}")
    if q is None:
        q = MonomialIdeal.unit(phi.n)
    best = None
    for u in candidate_rays(phi, q):
        r = ratio(phi, q, u, variant)
        if best is None or r > best[0]:
            best = (r, u)
    report = NormReport(best[0], MonomialValuation(best[1]))
    if cross_check:
        other = norm_lp(phi, q, variant)
        if other.value != report.value:
            raise AssertionError(
                f"norm mismatch: rays give {report.value}, LP gives {other.value}")
    return report


def _branch_lp(n, positive, negative, q, atoms_terms):
    """Maximise ``min_k h_k(alpha)`` on ``A(alpha) + alpha(q) = 1``.

    ``atoms_terms[k]`` lists ``(d, ideal)`` with ``h_k = sum d * v(ideal)``.
    Ideals with a positive coefficient somewhere get an auxiliary variable
    bounded by each generator; ideals with a negative coefficient are
    linearised by branching over the generator achieving the minimum, as is
    ``q``.
    """
    aux = {a: n + i for i, a in enumerate(positive)}
    s_col = n + len(positive)
    width = s_col + 1
    best = None
    branch_ideals = list(negative)
    choices = [a.gens for a in branch_ideals]
    for gq in q.gens:
        for picks in itertools.product(*choices):
            chosen = dict(zip(branch_ideals, picks))
            cons = []
            for i in range(n):
                row = [0] * width
                row[i] = 1
                cons.append((row, ">=", 0))
            for g in q.gens:
                if g != gq:
                    row = [g[i] - gq[i] for i in range(n)] + [0] * (width - n)
                    cons.append((row, ">=", 0))
            for a, g0 in chosen.items():
                for g in a.gens:
                    if g != g0:
                        row = [g[i] - g0[i] for i in range(n)] + [0] * (width - n)
                        cons.append((row, ">=", 0))
            for a, col in aux.items():
                for g in a.gens:
                    row = [g[i] for i in range(n)] + [0] * (width - n)
                    row[col] = -1
                    cons.append((row, ">=", 0))
            norm_row = [1 + gq[i] for i in range(n)] + [0] * (width - n)
            cons.append((norm_row, "=", 1))
            for terms in atoms_terms:
                row = [Fraction(0)] * width
                for d, a in terms:
                    if d > 0:
                        row[aux[a]] += d
                    else:
                        g0 = chosen[a]
                        for i in range(n):
                            row[i] += d * g0[i]
                row[s_col] -= 1
                cons.append((row, ">=", 0))
            obj = [0] * width
            obj[s_col] = 1
            res = exact_lp(obj, cons)
            if res.status == "infeasible":
                continue
            if res.status != "optimal":
                raise AssertionError("norm LP unexpectedly unbounded")
            alpha = res.witness[:n]
            key = (res.value, tuple(-x for x in integer_direction(alpha)))
            if best is None or key > best[0]:
                best = (key, res.value, alpha)
    return best


def norm_lp(phi: ValFun, q: MonomialIdeal | None = None, variant: str = "abs") -> NormReport:
    """Second, independent exact solver for ``norm`` based on linear programming."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown norm variant {variant!r}")
    if q is None:
        q = MonomialIdeal.unit(phi.n)
    n = phi.n
    if variant == "abs":
        p = norm_lp(phi, q, "plus")
        m = norm_lp(phi, q, "minus")
        return m if m.value >= p.value else p

    def solve(atom_list):
        positive, negative = [], []
        for terms in atom_list:
            for d, a in terms:
                if a.is_unit:
                    continue
                target = positive if d > 0 else negative
                if a not in target:
                    target.append(a)
        cleaned = [[(d, a) for d, a in terms if not a.is_unit] for terms in atom_list]
        return _branch_lp(n, positive, negative, q, cleaned)

    if variant == "minus":
        found = solve([[(c, a) for c, a in atom] for atom in phi.atoms])
    else:
        found = None
        for atom in phi.atoms:
            cand = solve([[(-c, a) for c, a in atom]])
            if cand is not None and (found is None or cand[0] > found[0]):
                found = cand
    _, value, alpha = found
    return NormReport(value, MonomialValuation(integer_direction(alpha)))


def lct(phi: ValFun, q: MonomialIdeal | None = None):
    """Reciprocal of the minus-norm; ``math.inf`` when that norm vanishes."""
    value = norm(phi, q, "minus").value
    if value <= 0:
        return math.inf
    return 1 / value


def norm_equiv_constant(q: MonomialIdeal) -> Fraction:
    """``C`` with ``||phi||_q <= ||phi|| <= C ||phi||_q`` for every ``phi``."""
    return 1 + norm(ValFun.log(q), None, "minus").value


def is_convex_nonpositive(phi: ValFun) -> bool:
    """Exact test that ``phi <= 0`` and ``phi`` is convex on the orthant.

    A piecewise linear function is convex iff each linear piece stays below
    the function; both sides are linear on every cell, so it suffices to
    compare them on the candidate rays.
    """
    unit = MonomialIdeal.unit(phi.n)
    rays = candidate_rays(phi, unit)
    values = {u: evaluate(phi, u) for u in rays}
    if any(v > 0 for v in values.values()):
        return False
    for cell in linearity_cells(phi, unit):
        for u in rays:
            if dot(cell.form, u) > values[u]:
                return False
    return True
