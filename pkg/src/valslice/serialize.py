"""JSON interchange with exact rationals written as ``"p/q"`` strings."""

from __future__ import annotations

import warnings
from fractions import Fraction

from .asymptotic import FiniteStage, GradedSystem, Powers, ValuationIdeals
from .dual_complex import DualComplexModel, QMPoint, Tracked, close_faces, toric_model
from .functions import ValFun
from .geometry import Polyhedron
from .ideals import MonomialIdeal, minimal_exponents
from .valuations import MonomialValuation


class ParseError(ValueError):
    """Malformed input (bad JSON shape or an unparsable rational)."""


class NonMinimalGenerators(UserWarning):
    pass


def _fail(path, msg):
    raise ParseError(f"{path}: {msg}")


def parse_rational(x, path="$") -> Fraction:
    if isinstance(x, bool):
        _fail(path, "expected a rational")
    if isinstance(x, int):
        return Fraction(x)
    if not isinstance(x, str):
        _fail(path, "rationals are integers or strings 'p/q'")
    try:
        return Fraction(x.strip())
    except (ValueError, ZeroDivisionError):
        _fail(path, f"cannot read {x!r} as a rational")


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _expect(obj, kind, path):
    if not isinstance(obj, kind):
        _fail(path, f"expected {kind.__name__ if isinstance(kind, type) else 'value'}")
    return obj


def _int(x, path) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        _fail(path, "expected an integer")
    return x


def parse_ideal(obj, path="$") -> MonomialIdeal:
    _expect(obj, dict, path)
    if "n" not in obj or "gens" not in obj:
        _fail(path, "an ideal needs keys 'n' and 'gens'")
    n = _int(obj["n"], f"{path}.n")
    gens = _expect(obj["gens"], list, f"{path}.gens")
    rows = []
    for k, g in enumerate(gens):
        _expect(g, list, f"{path}.gens[{k}]")
        rows.append(tuple(_int(x, f"{path}.gens[{k}][{i}]") for i, x in enumerate(g)))
    if not rows:
        raise ValueError("empty generator list")
    if n < 1:
        raise ValueError("need at least one variable")
    for g in rows:
        if len(g) != n:
            raise ValueError(f"generator {list(g)} does not have length {n}")
        if any(x < 0 for x in g):
            raise ValueError(f"negative exponent in {list(g)}")
    minimal = minimal_exponents(rows)
    if len(minimal) != len(set(rows)):
        warnings.warn(f"{path}: generators were not minimal and have been reduced", NonMinimalGenerators)
    return MonomialIdeal(n, minimal)


def format_ideal(a: MonomialIdeal | None, n: int | None = None) -> dict:
    if a is None:
        return {"n": n, "gens": [], "zero": True}
    return {"n": a.n, "gens": [list(g) for g in sorted(a.gens, reverse=True)]}


def parse_valfun(obj, path="$") -> ValFun:
    _expect(obj, dict, path)
    if "n" not in obj or "atoms" not in obj:
        _fail(path, "a function needs keys 'n' and 'atoms'")
    n = _int(obj["n"], f"{path}.n")
    atoms = []
    for k, atom in enumerate(_expect(obj["atoms"], list, f"{path}.atoms")):
        terms = []
        for j, term in enumerate(_expect(atom, list, f"{path}.atoms[{k}]")):
            p = f"{path}.atoms[{k}][{j}]"
            _expect(term, dict, p)
            if "c" not in term or "ideal" not in term:
                _fail(p, "a term needs keys 'c' and 'ideal'")
            ideal = parse_ideal(term["ideal"], f"{p}.ideal")
            if ideal.n != n:
                raise ValueError(f"{p}.ideal: dimension {ideal.n} differs from {n}")
            terms.append((parse_rational(term["c"], f"{p}.c"), ideal))
        atoms.append(tuple(terms))
    if not atoms:
        _fail(f"{path}.atoms", "need at least one atom")
    return ValFun(n, tuple(atoms))


def format_valfun(phi: ValFun) -> dict:
    return {
        "n": phi.n,
        "atoms": [[{"c": format_rational(c), "ideal": format_ideal(a)} for c, a in atom] for atom in phi.atoms],
    }


def parse_vector(obj, path="$") -> tuple:
    return tuple(parse_rational(x, f"{path}[{i}]") for i, x in enumerate(_expect(obj, list, path)))


def format_vector(v) -> list:
    return [format_rational(x) for x in v]


def parse_valuation(obj, path="$") -> MonomialValuation:
    if isinstance(obj, dict):
        if "alpha" not in obj:
            _fail(path, "a valuation needs key 'alpha'")
        return MonomialValuation(parse_vector(obj["alpha"], f"{path}.alpha"))
    return MonomialValuation(parse_vector(obj, path))


def format_valuation(v: MonomialValuation) -> dict:
    return {"alpha": format_vector(v.alpha)}


def parse_graded(obj, path="$") -> GradedSystem:
    _expect(obj, dict, path)
    kind = obj.get("kind")
    if kind == "powers":
        return Powers(parse_ideal(obj.get("ideal"), f"{path}.ideal"))
    if kind == "finite_stage":
        stages = _expect(obj.get("stages"), list, f"{path}.stages")
        return FiniteStage(tuple(parse_ideal(s, f"{path}.stages[{k}]") for k, s in enumerate(stages)))
    if kind == "valuation_ideals":
        alpha = parse_valuation(obj.get("alpha"), f"{path}.alpha")
        return ValuationIdeals(alpha, parse_rational(obj.get("scale", 1), f"{path}.scale"))
    _fail(f"{path}.kind", f"unknown graded system kind {kind!r}")


def format_graded(S: GradedSystem) -> dict:
    if isinstance(S, Powers):
        return {"kind": "powers", "ideal": format_ideal(S.ideal)}
    if isinstance(S, FiniteStage):
        return {"kind": "finite_stage", "stages": [format_ideal(s) for s in S.stages]}
    return {"kind": "valuation_ideals", "alpha": format_vector(S.weight.alpha), "scale": format_rational(S.scale)}


def format_polyhedron(P: Polyhedron) -> dict:
    return {
        "dim": P.dim,
        "inequalities": [{"normal": list(u), "offset": format_rational(b)} for u, b in P.inequalities],
        "vertices": [format_vector(v) for v in P.vertices],
    }


def parse_model(obj, path="$") -> DualComplexModel:
    """Raw model, or ``{"toric": {"n": 2, "ideals": {...}}}`` for affine space."""
    _expect(obj, dict, path)
    if "toric" in obj:
        spec = _expect(obj["toric"], dict, f"{path}.toric")
        n = _int(spec.get("n"), f"{path}.toric.n")
        ideals = _expect(spec.get("ideals", {}), dict, f"{path}.toric.ideals")
        return toric_model(n, {k: parse_ideal(v, f"{path}.toric.ideals.{k}") for k, v in ideals.items()})
    divs = _expect(obj.get("divisors"), list, f"{path}.divisors")
    ids, disc = [], []
    for k, d in enumerate(divs):
        _expect(d, dict, f"{path}.divisors[{k}]")
        ident = d.get("id")
        if not isinstance(ident, str):
            _fail(f"{path}.divisors[{k}].id", "expected a string")
        ids.append(ident)
        disc.append(_int(d.get("a", 0), f"{path}.divisors[{k}].a"))
    faces = []
    for k, f in enumerate(_expect(obj.get("faces", []), list, f"{path}.faces")):
        faces.append(tuple(_expect(f, list, f"{path}.faces[{k}]")))
    for f in faces:
        if not set(f) <= set(ids):
            raise ValueError(f"face {list(f)} uses unknown divisors")
    tracked = {}
    for name, t in _expect(obj.get("tracked", {}), dict, f"{path}.tracked").items():
        p = f"{path}.tracked.{name}"
        _expect(t, dict, p)
        ords = tuple(_int(x, f"{p}.ord[{i}]") for i, x in enumerate(_expect(t.get("ord"), list, f"{p}.ord")))
        resolved = t.get("resolved", False)
        if not isinstance(resolved, bool):
            _fail(f"{p}.resolved", "expected a boolean")
        tracked[name] = Tracked(ords, resolved)
    return DualComplexModel(tuple(ids), tuple(disc), close_faces(faces, ids), tuple(tracked.items()))


def format_model(M: DualComplexModel) -> dict:
    out = {
        "divisors": [{"id": d, "a": a} for d, a in zip(M.ids, M.discrepancies)],
        "faces": [list(f) for f in M.maximal_faces()],
        "tracked": {name: {"ord": list(t.ord), "resolved": t.resolved} for name, t in M.tracked},
    }
    if M.rays is not None:
        out["rays"] = {d: list(r) for d, r in zip(M.ids, M.rays)}
    return out


def parse_point(obj, model: DualComplexModel, path="$") -> QMPoint:
    _expect(obj, dict, path)
    face = _expect(obj.get("face"), list, f"{path}.face")
    return QMPoint(model, tuple(face), parse_vector(obj.get("weights"), f"{path}.weights"))


def format_point(p: QMPoint) -> dict:
    return {"face": list(p.face), "weights": format_vector(p.weights)}
