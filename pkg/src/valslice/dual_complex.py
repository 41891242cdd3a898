"""Abstract dual complexes of log-smooth models, stellar blowups and retractions.

A model records its prime divisors with discrepancies ``a_i``, the face
poset of the dual complex, integer orders of tracked ideals along each
divisor and, for blowups, the parent model plus the pullback matrix
``m[i][j] = ord_{D'_j}(pullback of D_i)``.  Toric models additionally carry
the primitive ray of each divisor and the monomial ideals being tracked, so
that the resolved flags can be recomputed after each subdivision.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import as_rational, dot
from .ideals import MonomialIdeal


@dataclass(frozen=True)
class Tracked:
    ord: tuple  # order along each divisor, in divisor order
    resolved: bool


def close_faces(faces, ids) -> frozenset:
    """Downward closure of ``faces`` (without the empty face) plus all singletons."""
    out = {frozenset([i]) for i in ids}
    for f in faces:
        f = frozenset(f)
        for k in range(1, len(f) + 1):
            out.update(frozenset(c) for c in itertools.combinations(sorted(f), k))
    return frozenset(out)


@dataclass(frozen=True, eq=False)
class DualComplexModel:
    """A model ``(Y, D)`` seen through its dual complex.

    The raw constructor accepts any data satisfying the invariants, including
    divisors whose discrepancy lies strictly above the toroidal value.
    """

    ids: tuple
    discrepancies: tuple
    faces: frozenset
    tracked: tuple = ()  # sorted (name, Tracked) pairs
    parent: "DualComplexModel | None" = None
    pullback: tuple | None = None  # rows: parent divisors, columns: own divisors
    rays: tuple | None = None
    toric_ideals: tuple = ()  # sorted (name, MonomialIdeal) pairs
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ids = tuple(self.ids)
        object.__setattr__(self, "ids", ids)
        object.__setattr__(self, "discrepancies", tuple(int(a) for a in self.discrepancies))
        if len(set(ids)) != len(ids):
            raise ValueError("divisor ids must be distinct")
        if len(self.discrepancies) != len(ids):
            raise ValueError("one discrepancy per divisor")
        if any(a < 0 for a in self.discrepancies):
            raise ValueError("discrepancies must be nonnegative")
        object.__setattr__(self, "_index", {d: k for k, d in enumerate(ids)})
        faces = frozenset(frozenset(f) for f in self.faces)
        for f in faces:
            if not f or not f <= set(ids):
                raise ValueError(f"face {sorted(f)} uses unknown divisors")
        if close_faces(faces, ids) != faces:
            raise ValueError("faces must be downward closed and contain every singleton")
        object.__setattr__(self, "faces", faces)
        tracked = tuple(sorted(dict(self.tracked).items()))
        for name, t in tracked:
            if len(t.ord) != len(ids) or any(int(x) != x or x < 0 for x in t.ord):
                raise ValueError(f"tracked ideal {name!r} needs a nonnegative integer order per divisor")
        object.__setattr__(self, "tracked", tracked)
        object.__setattr__(self, "toric_ideals", tuple(sorted(dict(self.toric_ideals).items())))
        if (self.parent is None) != (self.pullback is None):
            raise ValueError("parent and pullback matrix come together")
        if self.parent is not None:
            self._check_pullback()

    def _check_pullback(self):
        par, m = self.parent, self.pullback
        if len(m) != len(par.ids) or any(len(row) != len(self.ids) for row in m):
            raise ValueError("pullback matrix has the wrong shape")
        for j, a in enumerate(self.discrepancies):
            need = sum(m[i][j] * (1 + par.discrepancies[i]) for i in range(len(par.ids)))
            if 1 + a < need:
                raise ValueError(f"divisor {self.ids[j]} violates the log-discrepancy pullback inequality")

    def index(self, divisor) -> int:
        try:
            return self._index[divisor]
        except KeyError:
            raise ValueError(f"unknown divisor {divisor!r}") from None

    def discrepancy(self, divisor) -> int:
        return self.discrepancies[self.index(divisor)]

    def tracked_ideal(self, name) -> Tracked:
        for key, t in self.tracked:
            if key == name:
                return t
        raise ValueError(f"ideal {name!r} is not tracked on this model")

    def maximal_faces(self) -> list[tuple]:
        maxi = [f for f in self.faces if not any(f < g for g in self.faces)]
        return sorted(tuple(sorted(f, key=self.index)) for f in maxi)

    def ancestors(self):
        M = self.parent
        while M is not None:
            yield M
            M = M.parent


def _ideal_order(ideal: MonomialIdeal, ray) -> int:
    return min(dot(ray, g) for g in ideal.gens)


def _is_resolved(ideal: MonomialIdeal, rays, faces) -> bool:
    """``val_alpha(ideal)`` is linear on every maximal cone of the fan."""
    for face in faces:
        rs = [rays[i] for i in face]
        mins = [_ideal_order(ideal, r) for r in rs]
        if not any(all(dot(r, g) == v for r, v in zip(rs, mins)) for g in ideal.gens):
            return False
    return True


def _toric_tracked(ideals, rays, index, faces):
    maximal = [f for f in faces if not any(f < g for g in faces)]
    idx_faces = [[index[d] for d in f] for f in maximal]
    out = {}
    for name, ideal in ideals:
        ords = tuple(_ideal_order(ideal, r) for r in rays)
        out[name] = Tracked(ords, _is_resolved(ideal, rays, idx_faces))
    return out


def toric_model(n: int, ideals: dict | None = None) -> DualComplexModel:
    """Affine ``n``-space with its coordinate hyperplanes ``D1..Dn``."""
    ids = tuple(f"D{i + 1}" for i in range(n))
    rays = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    faces = close_faces([ids], ids)
    ideals = tuple(sorted((ideals or {}).items()))
    for _, a in ideals:
        if a.n != n:
            raise ValueError("dimension mismatch")
    index = {d: k for k, d in enumerate(ids)}
    tracked = _toric_tracked(ideals, rays, index, faces)
    return DualComplexModel(ids, (0,) * n, faces, tuple(tracked.items()), rays=rays, toric_ideals=ideals)


def _fresh_id(ids) -> str:
    k = len(ids) + 1
    while f"E{k}" in ids:
        k += 1
    return f"E{k}"


def blowup(M: DualComplexModel, face) -> DualComplexModel:
    """Stellar subdivision of the dual complex at ``face`` (at least two divisors)."""
    sigma = frozenset(face)
    if len(sigma) < 2:
        raise ValueError("blowups need a face with at least two divisors")
    if sigma not in M.faces:
        raise ValueError(f"{sorted(sigma)} is not a face of the model")
    E = _fresh_id(M.ids)
    ids = M.ids + (E,)
    cols = [M.index(i) for i in sigma]
    a_E = sum(1 + M.discrepancies[c] for c in cols) - 1
    faces = {f for f in M.faces if not sigma <= f}
    for f in M.faces:
        if sigma <= f:
            for k in range(len(f)):
                for sub in itertools.combinations(sorted(f), k):
                    if not sigma <= set(sub):
                        faces.add(frozenset(sub) | {E})
    faces = frozenset(faces)
    r = len(M.ids)
    pullback = tuple(tuple(int(i == j) for j in range(r)) + (int(i in cols),) for i in range(r))
    rays = None
    if M.rays is not None:
        rays = M.rays + (tuple(sum(M.rays[c][k] for c in cols) for k in range(len(M.rays[0]))),)
        index = {d: k for k, d in enumerate(ids)}
        tracked = _toric_tracked(M.toric_ideals, rays, index, faces)
        extra = {name: t for name, t in M.tracked if name not in tracked}
    else:
        tracked, extra = {}, dict(M.tracked)
    for name, t in extra.items():
        # a lower bound unless the ideal was already resolved
        tracked[name] = Tracked(t.ord + (sum(t.ord[c] for c in cols),), t.resolved)
    return DualComplexModel(ids, M.discrepancies + (a_E,), faces, tuple(tracked.items()), M, pullback,
                            rays, M.toric_ideals)


@dataclass(frozen=True)
class QMPoint:
    """Quasi-monomial valuation: positive weights on the divisors of a face."""

    model: DualComplexModel
    face: tuple
    weights: tuple

    def __post_init__(self):
        if len(self.face) != len(self.weights) or not self.face:
            raise ValueError("one weight per divisor of a nonempty face")
        pairs = sorted(zip(self.face, (as_rational(w) for w in self.weights)), key=lambda p: self.model.index(p[0]))
        if frozenset(self.face) not in self.model.faces or len(set(self.face)) != len(self.face):
            raise ValueError(f"{list(self.face)} is not a face of the model")
        if any(w <= 0 for _, w in pairs):
            raise ValueError("weights must be strictly positive")
        object.__setattr__(self, "face", tuple(p[0] for p in pairs))
        object.__setattr__(self, "weights", tuple(p[1] for p in pairs))

    def values(self) -> tuple:
        """``v(D_i)`` for every divisor of the model."""
        out = [Fraction(0)] * len(self.model.ids)
        for d, w in zip(self.face, self.weights):
            out[self.model.index(d)] = w
        return tuple(out)

    def alpha(self) -> tuple:
        """Weight vector of the monomial valuation (toric models only)."""
        if self.model.rays is None:
            raise ValueError("model carries no toric data")
        vals = self.values()
        n = len(self.model.rays[0])
        return tuple(sum(v * r[k] for v, r in zip(vals, self.model.rays)) for k in range(n))


def log_discrepancy(p: QMPoint) -> Fraction:
    return sum((w * (1 + p.model.discrepancy(d)) for d, w in zip(p.face, p.weights)), Fraction(0))


def eval_ideal(p: QMPoint, name) -> tuple[Fraction, bool]:
    """Value on a tracked ideal and whether it is exact (otherwise a lower bound)."""
    t = p.model.tracked_ideal(name)
    vals = p.values()
    return sum((v * o for v, o in zip(vals, t.ord)), Fraction(0)), t.resolved


def retract(p: QMPoint, M: DualComplexModel) -> QMPoint:
    """Point of ``M`` with the same values on the divisors of ``M``."""
    vals = list(p.values())
    model = p.model
    while model is not M:
        if model.parent is None:
            raise ValueError("target is not an ancestor of the point's model")
        m = model.pullback
        vals = [sum((m[i][j] * vals[j] for j in range(len(vals))), Fraction(0)) for i in range(len(m))]
        model = model.parent
    face = tuple(d for d, v in zip(M.ids, vals) if v > 0)
    if frozenset(face) not in M.faces:
        raise ValueError("retracted support is not a face of the target model")
    return QMPoint(M, face, tuple(v for v in vals if v > 0))


def chain_matrix(child: DualComplexModel, ancestor: DualComplexModel) -> tuple:
    """Product of pullback matrices from ``ancestor`` down to ``child``."""
    mats = []
    model = child
    while model is not ancestor:
        if model.parent is None:
            raise ValueError("not an ancestor")
        mats.append(model.pullback)
        model = model.parent
    result = None
    for m in reversed(mats):
        if result is None:
            result = m
        else:
            result = tuple(tuple(sum(result[i][k] * m[k][j] for k in range(len(m)))
                                 for j in range(len(m[0]))) for i in range(len(result)))
    if result is None:
        r = len(child.ids)
        result = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
    return result


@dataclass(frozen=True)
class ComplexNormReport:
    value: Fraction
    witness: str


def norm_on_complex(M: DualComplexModel, coeffs, q=None) -> ComplexNormReport:
    """``max_E sum c_j ord_E(a_j) / (A(ord_E) + ord_E(q))`` over the divisors ``E`` of ``M``."""
    terms = [(as_rational(c), name) for c, name in coeffs]
    if any(c <= 0 for c, _ in terms):
        raise ValueError("coefficients must be positive")
    names = [name for _, name in terms] + ([q] if q is not None else [])
    for name in names:
        if not M.tracked_ideal(name).resolved:
            raise ValueError(f"ideal {name!r} is not resolved on this model")
    best = None
    for k, d in enumerate(M.ids):
        num = sum((c * M.tracked_ideal(name).ord[k] for c, name in terms), Fraction(0))
        den = 1 + M.discrepancies[k] + (M.tracked_ideal(q).ord[k] if q is not None else 0)
        val = num / den
        if best is None or val > best[0]:
            best = (val, d)
    return ComplexNormReport(*best)
