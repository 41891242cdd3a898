"""Monomial ideals as antichains of exponent vectors."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .geometry import Polyhedron, hull_with_orthant


def _divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimal_exponents(exponents: Iterable[Sequence[int]]) -> tuple:
    pts = sorted({tuple(int(x) for x in e) for e in exponents}, key=lambda e: (sum(e), e))
    keep: list[tuple] = []
    for e in pts:
        if not any(_divides(k, e) for k in keep):
            keep.append(e)
    return tuple(sorted(keep))


@dataclass(frozen=True)
class MonomialIdeal:
    """Nonzero monomial ideal in ``n`` variables.

    ``gens`` is the minimal generating set in lexicographic order, so two
    ideals are equal exactly when their fields are.  The zero ideal has no
    representation; callers use ``None`` for it.
    """

    n: int
    gens: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one variable")
        if not self.gens:
            raise ValueError("empty generator list")
        for g in self.gens:
            if len(g) != self.n:
                raise ValueError(f"generator {g} does not have length {self.n}")
            if any(x < 0 for x in g):
                raise ValueError(f"negative exponent in {g}")
        if minimal_exponents(self.gens) != self.gens:
            raise ValueError("generators are not a sorted antichain; use minimalize()")

    @cached_property
    def corners(self) -> tuple:
        """Generators that are vertices of the Newton polyhedron.

        Monomial valuations attain their minimum over the ideal at one of
        these, so large ideals are evaluated through this shorter list.
        """
        if len(self.gens) <= 32:
            return self.gens
        return tuple(tuple(int(x) for x in v) for v in newton_polyhedron(self).vertices)

    @classmethod
    def _from_antichain(cls, n: int, gens) -> "MonomialIdeal":
        """Skip validation for generators already known to be minimal."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "gens", tuple(sorted(gens)))
        return obj

    @classmethod
    def unit(cls, n: int) -> "MonomialIdeal":
        return cls(n, ((0,) * n,))

    @classmethod
    def maximal(cls, n: int) -> "MonomialIdeal":
        return minimalize([tuple(int(i == j) for j in range(n)) for i in range(n)])

    @property
    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.n,)

    def contains_monomial(self, beta: Sequence[int]) -> bool:
        return any(_divides(g, beta) for g in self.gens)

    def contains(self, other: "MonomialIdeal") -> bool:
        return all(self.contains_monomial(g) for g in other.gens)

    def __add__(self, other):
        return combine(self, other, "sum")

    def __mul__(self, other):
        return combine(self, other, "product")

    def __pow__(self, k: int):
        return combine(self, None, "power", k)

    def __and__(self, other):
        return combine(self, other, "intersection")

    def __str__(self):
        names = "xyzwuv" if self.n <= 6 else None

        def mono(g):
            if not any(g):
                return "1"
            parts = []
            for i, e in enumerate(g):
                if e:
                    v = names[i] if names else f"x{i + 1}"
                    parts.append(v if e == 1 else f"{v}^{e}")
            return "*".join(parts)

        return "(" + ", ".join(mono(g) for g in sorted(self.gens, reverse=True)) + ")"


def minimalize(exponents: Iterable[Sequence[int]], n: int | None = None) -> MonomialIdeal:
    pts = [tuple(e) for e in exponents]
    if not pts:
        raise ValueError("empty generator list")
    if n is None:
        n = len(pts[0])
    for e in pts:
        if len(e) != n:
            raise ValueError("exponent vectors of unequal length")
        if any(int(x) != x for x in e):
            raise ValueError(f"non-integer exponent in {e}")
        if any(x < 0 for x in e):
            raise ValueError(f"negative exponent in {e}")
    return MonomialIdeal._from_antichain(n, minimal_exponents(pts))


def monomial(beta: Sequence[int]) -> MonomialIdeal:
    return minimalize([tuple(beta)])


def combine(a: MonomialIdeal, b: MonomialIdeal | None, op: str, k: int = 0) -> MonomialIdeal:
    """Sum, product, power, intersection or colon of monomial ideals."""
    if op == "power":
        if k < 0:
            raise ValueError("negative power")
        result = MonomialIdeal.unit(a.n)
        for _ in range(k):
            result = combine(result, a, "product")
        return result
    if b is None or a.n != b.n:
        raise ValueError("dimension mismatch")
    if op == "sum":
        return minimalize(a.gens + b.gens, a.n)
    if op == "product":
        return minimalize([tuple(x + y for x, y in zip(g, h)) for g in a.gens for h in b.gens], a.n)
    if op == "intersection":
        return minimalize([tuple(max(x, y) for x, y in zip(g, h)) for g in a.gens for h in b.gens], a.n)
    if op == "colon":
        result = None
        for h in b.gens:
            quot = minimalize([tuple(max(x - y, 0) for x, y in zip(g, h)) for g in a.gens], a.n)
            result = quot if result is None else combine(result, quot, "intersection")
        return result
    raise ValueError(f"unknown operation {op!r}")


@lru_cache(maxsize=1024)
def newton_polyhedron(a: MonomialIdeal) -> Polyhedron:
    return hull_with_orthant(a.gens, a.n)


def lattice_ideal(n: int, constraints: Sequence[tuple], bounds: Sequence[int]) -> MonomialIdeal | None:
    """Monomial ideal of all ``beta >= 0`` with ``<u, beta> >= T`` for every ``(u, T)``.

    ``u`` are nonnegative integer vectors and ``T`` integers.  ``bounds[i]``
    must bound coordinate ``i`` of every minimal generator; the last
    coordinate is solved for directly, so only the first ``n - 1`` bounds are
    enumerated.  Returns ``None`` when no monomial qualifies (zero ideal).
    """
    cons = [(tuple(u), int(T)) for u, T in constraints if T > 0]
    head = [range(int(b) + 1) for b in bounds[:-1]]
    INF = math.inf
    last: dict[tuple, float] = {}
    for prefix in itertools.product(*head):
        need = 0
        for u, T in cons:
            s = sum(x * y for x, y in zip(u, prefix))
            if s >= T:
                continue
            if u[-1] == 0:
                need = INF
                break
            need = max(need, -((s - T) // u[-1]))  # ceil((T - s) / u_last)
        last[prefix] = need
    gens = []
    for prefix, need in last.items():
        if need is INF:
            continue
        minimal = True
        for i, x in enumerate(prefix):
            if x > 0:
                below = prefix[:i] + (x - 1,) + prefix[i + 1:]
                if last[below] <= need:
                    minimal = False
                    break
        if minimal:
            gens.append(prefix + (int(need),))
    if not gens:
        return None
    # need() is nonincreasing in the prefix, so the staircase test above
    # already leaves an antichain
    return MonomialIdeal._from_antichain(n, gens)


def box_bounds(P: Polyhedron) -> list[int]:
    """Coordinate bounds for minimal lattice points of ``P``: ceil of max vertex coordinate."""
    return [math.ceil(max(v[i] for v in P.vertices)) for i in range(P.dim)]


def ideal_of_region(n: int, constraints: Sequence[tuple], strict: bool) -> MonomialIdeal | None:
    """Monomial ideal of lattice points with ``<u, beta> > b`` (or ``>=``) for all ``(u, b)``."""
    ints = []
    for u, b in constraints:
        b = Fraction(b)
        T = math.floor(b) + 1 if strict else math.ceil(b)
        ints.append((tuple(u), T))
    live = [(u, T) for u, T in ints if T > 0]
    if not live:
        return MonomialIdeal.unit(n)
    for u, T in live:
        if not any(u):
            return None
    region = Polyhedron.from_inequalities(live, n)
    return lattice_ideal(n, live, box_bounds(region))


@lru_cache(maxsize=1024)
def integral_closure(a: MonomialIdeal) -> MonomialIdeal:
    P = newton_polyhedron(a)
    return ideal_of_region(a.n, P.inequalities, strict=False)


def localize(a: MonomialIdeal, inverted: Iterable[int]) -> MonomialIdeal:
    """Invert the coordinates in ``inverted`` (0-based) and drop them."""
    inv = set(inverted)
    if any(i < 0 or i >= a.n for i in inv):
        raise ValueError("coordinate index out of range")
    keep = [i for i in range(a.n) if i not in inv]
    if not keep:
        raise ValueError("localization would leave no variables")
    return minimalize([tuple(g[i] for i in keep) for g in a.gens], len(keep))
