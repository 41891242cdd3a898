"""Exact polyhedral primitives over the rationals.

Everything here works with ``fractions.Fraction`` and Python integers; there is
no floating point anywhere.  Polyhedra are restricted to the kind that shows up
for monomial data: convex sets in Q^n whose recession cone is the nonnegative
orthant.  Both the inequality and the vertex description are kept, and the
double description method converts between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence

MAX_DIM = 6

Vector = tuple  # tuple of int or Fraction


class DimensionCapError(ValueError):
    """Raised for ambient dimensions above ``MAX_DIM``."""


def as_rational(x) -> Fraction:
    """Coerce int, Fraction or a ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        text = x.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            if int(den) == 0:
                raise ZeroDivisionError(f"zero denominator in {x!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rvec(xs: Iterable) -> tuple:
    return tuple(as_rational(x) for x in xs)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence[int]) -> tuple:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in v)
    return tuple(v)


def integer_direction(v: Sequence) -> tuple:
    """Positive rescaling of a rational vector to a primitive integer vector."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])


def _check_dim(dim: int) -> None:
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    if dim > MAX_DIM:
        raise DimensionCapError(f"dimension {dim} exceeds the cap {MAX_DIM}")


# ---------------------------------------------------------------------------
# double description


def cone_rays(rows: Sequence[Sequence[int]], dim: int) -> list[tuple]:
    """Extreme rays of the pointed cone ``{y : <row, y> >= 0 for all rows}``.

    Rows must be integer vectors.  Rays come back as primitive integer vectors
    in lexicographic order.  Raises ``ValueError`` if the cone has a lineality
    space.
    """
    lin = [tuple(1 if i == j else 0 for i in range(dim)) for j in range(dim)]
    rays: list[tuple[tuple, int]] = []  # (vector, bitmask of tight rows)
    for k, a in enumerate(rows):
        bit = 1 << k
        pivot = None
        for idx, l in enumerate(lin):
            d = dot(a, l)
            if d != 0:
                pivot = idx
                break
        if pivot is not None:
            l0 = lin[pivot]
            d0 = dot(a, l0)
            if d0 < 0:
                l0 = tuple(-x for x in l0)
                d0 = -d0
            new_lin = []
            for idx, l in enumerate(lin):
                if idx == pivot:
                    continue
                d = dot(a, l)
                v = primitive([d0 * x - d * y for x, y in zip(l, l0)]) if d else l
                new_lin.append(v)
            new_rays = []
            for r, mask in rays:
                d = dot(a, r)
                v = primitive([d0 * x - d * y for x, y in zip(r, l0)]) if d else r
                new_rays.append((v, mask | bit))
            new_rays.append((primitive(l0), bit - 1))
            lin = new_lin
            rays = new_rays
            continue

        pos, neg, out = [], [], []
        for r, mask in rays:
            d = dot(a, r)
            if d > 0:
                pos.append((r, mask, d))
                out.append((r, mask))
            elif d < 0:
                neg.append((r, mask, d))
            else:
                out.append((r, mask | bit))
        if not neg:
            rays = out
            continue
        need = dim - len(lin) - 2
        for rp, mp, dp in pos:
            for rn, mn, dn in neg:
                common = mp & mn
                if common.bit_count() < need:
                    continue
                adjacent = True
                for r, m in rays:
                    if r is rp or r is rn:
                        continue
                    if m & common == common:
                        adjacent = False
                        break
                if adjacent:
                    v = primitive([dp * x - dn * y for x, y in zip(rn, rp)])
                    out.append((v, common | bit))
        rays = out
    if lin:
        raise ValueError("cone is not pointed")
    return sorted({r for r, _ in rays})


def _int_row(row: Sequence) -> list[int]:
    return list(integer_direction(row)) if any(row) else [0] * len(row)


def rank(vectors: Sequence[Sequence]) -> int:
    """Rank over Q by Gaussian elimination."""
    m = [[Fraction(x) for x in v] for v in vectors]
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


# ---------------------------------------------------------------------------
# polyhedra with orthant recession cone


@dataclass(frozen=True)
class Polyhedron:
    """``conv(vertices) + R^n_{>=0}``, equivalently ``<normal, x> >= offset``.

    Normals are primitive nonnegative integer vectors, sorted; vertices are
    sorted tuples of Fractions.  Use the constructors, not ``__init__``.
    """

    dim: int
    inequalities: tuple  # ((normal, offset), ...)
    vertices: tuple

    @staticmethod
    def from_points(points: Iterable[Sequence], dim: int) -> "Polyhedron":
        pts = sorted({rvec(p) for p in points})
        if not pts:
            raise ValueError("empty point list")
        for p in pts:
            if len(p) != dim:
                raise ValueError(f"point {p} does not have dimension {dim}")
            if any(x < 0 for x in p):
                raise ValueError(f"point {p} has a negative entry")
        _check_dim(dim)
        if len(pts) > 64:
            pts = _hull_support(pts, dim)
        return _hull(tuple(pts), dim)

    @staticmethod
    def from_inequalities(ineqs: Iterable, dim: int) -> "Polyhedron":
        """Polyhedron ``{x >= 0 : <u, x> >= b}``; every ``u`` must be >= 0."""
        _check_dim(dim)
        rows = []
        for u, b in ineqs:
            u = rvec(u)
            if len(u) != dim:
                raise ValueError("normal of wrong dimension")
            if any(x < 0 for x in u):
                raise ValueError("inequality normals must be nonnegative")
            rows.append(_int_row(list(u) + [-as_rational(b)]))
        for i in range(dim):
            rows.append([1 if j == i else 0 for j in range(dim + 1)])
        rows.append([0] * dim + [1])
        verts = []
        for r in cone_rays(rows, dim + 1):
            if r[-1] > 0:
                verts.append(tuple(Fraction(x, r[-1]) for x in r[:-1]))
        if not verts:
            raise ValueError("empty polyhedron")
        return Polyhedron.from_points(verts, dim)

    def contains(self, x: Sequence) -> bool:
        x = rvec(x)
        return all(dot(u, x) >= b for u, b in self.inequalities)

    def interior_contains(self, x: Sequence) -> bool:
        x = rvec(x)
        return all(dot(u, x) > b for u, b in self.inequalities)

    def scaled(self, c) -> "Polyhedron":
        c = as_rational(c)
        if c <= 0:
            raise ValueError("scale must be positive")
        return Polyhedron(
            self.dim,
            tuple((u, b * c) for u, b in self.inequalities),
            tuple(tuple(x * c for x in v) for v in self.vertices),
        )

    def vertices_from_inequalities(self) -> tuple:
        """Vertices recomputed from the inequality list alone (independent DD)."""
        rows = [_int_row(list(u) + [-b]) for u, b in self.inequalities]
        rows.append([0] * self.dim + [1])
        verts = set()
        for r in cone_rays(rows, self.dim + 1):
            if r[-1] > 0:
                verts.add(tuple(Fraction(x, r[-1]) for x in r[:-1]))
            elif any(x < 0 for x in r):
                raise AssertionError("recession direction outside the orthant")
        return tuple(sorted(verts))


def _hull_support(pts: list, dim: int) -> list:
    """Subset of ``pts`` with the same hull, found by adding facet minimisers."""
    den = lcm(*(x.denominator for p in pts for x in p))
    scaled = [tuple(int(x * den) for x in p) for p in pts]

    def argmin(u):
        return min(range(len(pts)), key=lambda k: (sum(a * b for a, b in zip(u, scaled[k])), scaled[k]))

    chosen = {argmin(tuple(int(i == j) for j in range(dim))) for i in range(dim)}
    chosen.add(argmin((1,) * dim))
    while True:
        P = _hull(tuple(sorted(pts[k] for k in chosen)), dim)
        fresh = set()
        for u, b in P.inequalities:
            k = argmin(u)
            if sum(a * c for a, c in zip(u, scaled[k])) < b * den:
                fresh.add(k)
        if not fresh:
            return sorted(pts[k] for k in chosen)
        chosen |= fresh


@lru_cache(maxsize=4096)
def _hull(pts: tuple, dim: int) -> Polyhedron:
    # polar cone in (a, b): <a, p> - b >= 0 for all points, a >= 0
    rows = [_int_row(list(p) + [Fraction(-1)]) for p in pts]
    for i in range(dim):
        rows.append([1 if j == i else 0 for j in range(dim + 1)])
    rays = [r for r in cone_rays(rows, dim + 1) if any(r[:-1])]
    ineqs = []
    for r in rays:
        g = 0
        for x in r[:-1]:
            g = gcd(g, x)
        ineqs.append((tuple(x // g for x in r[:-1]), Fraction(r[-1], g)))
    ineqs.sort()
    verts = []
    for p, row in zip(pts, rows):
        # integer test: the ray is tight at p exactly when it is orthogonal to p's row
        tight = [r[:-1] for r in rays if dot(r, row) == 0]
        if len(tight) >= dim and rank(tight) == dim:
            verts.append(p)
    return Polyhedron(dim, tuple(ineqs), tuple(verts))


def hull_with_orthant(points: Iterable[Sequence[int]], dim: int) -> Polyhedron:
    """Convex hull of integer points plus the nonnegative orthant."""
    pts = [tuple(p) for p in points]
    if not pts:
        raise ValueError("empty point list")
    for p in pts:
        if len(p) != dim:
            raise ValueError(f"point {p} does not have dimension {dim}")
        if any(int(x) != x or x < 0 for x in p):
            raise ValueError(f"point {p} is not a nonnegative integer vector")
    return Polyhedron.from_points(pts, dim)


def minkowski_scale_sum(terms: Iterable[tuple]) -> Polyhedron:
    """``sum_j c_j P_j`` for coefficients ``c_j >= 0``."""
    terms = [(as_rational(c), P) for c, P in terms]
    if not terms:
        raise ValueError("no terms")
    dim = terms[0][1].dim
    if any(P.dim != dim for _, P in terms):
        raise ValueError("dimension mismatch")
    if any(c < 0 for c, _ in terms):
        raise ValueError("negative coefficient")
    live = [(c, P) for c, P in terms if c > 0]
    if not live:
        raise ValueError("all coefficients are zero")
    acc = [tuple(live[0][0] * x for x in v) for v in live[0][1].vertices]
    for c, P in live[1:]:
        pts = {tuple(a + c * b for a, b in zip(v, w)) for v in acc for w in P.vertices}
        acc = list(Polyhedron.from_points(pts, dim).vertices)
    return Polyhedron.from_points(acc, dim)


def support_min(P: Polyhedron, alpha: Sequence) -> Fraction:
    """``min_{x in P} <alpha, x>`` for ``alpha >= 0``."""
    alpha = rvec(alpha)
    if len(alpha) != P.dim:
        raise ValueError("dimension mismatch")
    if any(a < 0 for a in alpha):
        raise ValueError("weight vector has a negative entry")
    return min(dot(alpha, v) for v in P.vertices)


def support_min_lp(P: Polyhedron, alpha: Sequence) -> Fraction:
    """Same quantity as ``support_min`` but solved from the inequalities."""
    alpha = rvec(alpha)
    if any(a < 0 for a in alpha):
        raise ValueError("weight vector has a negative entry")
    res = exact_lp([-a for a in alpha], [(u, ">=", b) for u, b in P.inequalities])
    if res.status != "optimal":
        raise AssertionError(f"unexpected LP status {res.status}")
    return -res.value


def facet_normals(P: Polyhedron) -> list[tuple]:
    return sorted({u for u, _ in P.inequalities})


def in_generator_hull(P: Polyhedron, x: Sequence) -> bool:
    """Membership through the vertex description: ``x = sum l_i v_i + r``."""
    x = rvec(x)
    k = len(P.vertices)
    # variables: lambda_1..lambda_k (all nonnegative); r = x - sum l_i v_i >= 0
    cons = []
    for i in range(P.dim):
        cons.append(([v[i] for v in P.vertices], "<=", x[i]))
    cons.append(([1] * k, "=", 1))
    res = exact_lp([0] * k, cons, nonneg=True)
    return res.status == "optimal"


# ---------------------------------------------------------------------------
# exact simplex


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "unbounded" | "infeasible"
    value: Fraction | None = None
    witness: tuple | None = None


def exact_lp(objective, constraints, nonneg: bool = False, maximize: bool = True) -> LPResult:
    """Optimise a linear objective exactly with the two-phase simplex method.

    ``constraints`` is a list of ``(coefficients, rel, rhs)`` with ``rel`` one
    of ``">="``, ``"="``, ``"<="``.  Variables are free unless ``nonneg``.
    Bland's rule is used for both entering and leaving variables, so the
    result (witness included) is deterministic.
    """
    c = rvec(objective)
    n = len(c)
    cons = []
    for coeffs, rel, rhs in constraints:
        coeffs = rvec(coeffs)
        if len(coeffs) != n:
            raise ValueError("constraint dimension does not match objective")
        if rel not in (">=", "=", "<="):
            raise ValueError(f"unknown relation {rel!r}")
        cons.append((coeffs, rel, as_rational(rhs)))
    if not maximize:
        c = tuple(-x for x in c)

    # structural columns
    if nonneg:
        def expand(v):
            return list(v)
        ncols = n
        cost = list(c)
    else:
        def expand(v):
            return list(v) + [-x for x in v]
        ncols = 2 * n
        cost = list(c) + [-x for x in c]

    rows, rels, rhs = [], [], []
    for coeffs, rel, b in cons:
        row = expand(coeffs)
        if b < 0:
            row = [-x for x in row]
            b = -b
            rel = {">=": "<=", "<=": ">=", "=": "="}[rel]
        rows.append(row)
        rels.append(rel)
        rhs.append(b)
    m = len(rows)
    n_slack = sum(1 for r in rels if r != "=")
    n_art = sum(1 for r in rels if r != "<=")
    width = ncols + n_slack + n_art
    table = []
    basis = []
    s_idx, a_idx = ncols, ncols + n_slack
    art_cols = set()
    for row, rel, b in zip(rows, rels, rhs):
        full = row + [Fraction(0)] * (n_slack + n_art) + [b]
        if rel == "<=":
            full[s_idx] = Fraction(1)
            basis.append(s_idx)
            s_idx += 1
        else:
            if rel == ">=":
                full[s_idx] = Fraction(-1)
                s_idx += 1
            full[a_idx] = Fraction(1)
            basis.append(a_idx)
            art_cols.add(a_idx)
            a_idx += 1
        table.append([Fraction(x) for x in full])

    def pivot(r, col):
        pv = table[r][col]
        table[r] = [x / pv for x in table[r]]
        for i in range(len(table)):
            if i != r and table[i][col] != 0:
                f = table[i][col]
                table[i] = [x - f * y for x, y in zip(table[i], table[r])]
        basis[r] = col

    def optimise(costs, allowed):
        # returns "optimal" or "unbounded"
        while True:
            reduced = []
            for j in range(width):
                if j not in allowed or j in basis:
                    continue
                z = sum(costs[basis[i]] * table[i][j] for i in range(len(table)))
                if costs[j] - z > 0:
                    reduced.append(j)
            if not reduced:
                return "optimal"
            col = min(reduced)
            best = None
            for i in range(len(table)):
                a = table[i][col]
                if a > 0:
                    ratio = table[i][-1] / a
                    key = (ratio, basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            pivot(best[1], col)

    all_cols = set(range(width))
    if art_cols:
        phase1 = [Fraction(0)] * width
        for j in art_cols:
            phase1[j] = Fraction(-1)
        optimise(phase1, all_cols)
        infeas = sum(table[i][-1] for i in range(len(table)) if basis[i] in art_cols)
        if infeas > 0:
            return LPResult("infeasible")
        i = 0
        while i < len(table):
            if basis[i] in art_cols:
                col = next((j for j in range(width) if j not in art_cols and table[i][j] != 0), None)
                if col is None:
                    del table[i]
                    del basis[i]
                    continue
                pivot(i, col)
            i += 1
    full_cost = cost + [Fraction(0)] * (n_slack + n_art)
    status = optimise(full_cost, all_cols - art_cols)
    if status == "unbounded":
        return LPResult("unbounded")
    y = [Fraction(0)] * width
    for i, b in enumerate(basis):
        y[b] = table[i][-1]
    x = y[:n] if nonneg else [y[j] - y[n + j] for j in range(n)]
    value = dot(rvec(objective), x)
    return LPResult("optimal", value, tuple(x))
