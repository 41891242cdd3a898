"""Command-line interface: exact JSON in, exact JSON out.

Exit codes: 0 success, 1 oracle mismatch, 2 malformed input or usage,
3 domain error raised by a computation.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction

from . import asymptotic, dual_complex, functions, multiplier, oracles
from .functions import ValFun
from .ideals import MonomialIdeal
from .serialize import (
    ParseError,
    format_ideal,
    format_model,
    format_point,
    format_polyhedron,
    format_rational,
    format_valfun,
    format_vector,
    format_graded,
    parse_graded,
    parse_ideal,
    parse_model,
    parse_point,
    parse_rational,
    parse_valfun,
    parse_valuation,
)
from .valuations import MonomialValuation, izumi_check

COMMANDS = ("lct", "norm", "mult", "jump", "envelope", "qpsh-check", "graded", "subadd-check", "complex", "izumi")
JSON_FLAGS = ("fn", "ideal", "q", "system", "alpha", "pairs", "model", "blowups", "point", "eval", "norm")
TEXT_FLAGS = ("t", "t_max", "m", "variant")
ORACLE_DENOMINATOR_CAP = 40


class OracleMismatch(RuntimeError):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="valslice", description=__doc__)
    parser.add_argument("command", choices=COMMANDS)
    for name in JSON_FLAGS + TEXT_FLAGS:
        parser.add_argument("--" + name.replace("_", "-"), dest=name)
    parser.add_argument("--closed", action="store_true", help="use the closed multiplier ideal J_-")
    parser.add_argument("--oracle", action="store_true", help="rerun the brute-force oracle and compare")
    parser.add_argument("--pretty", action="store_true", help="indented output")
    parser.add_argument("--json", action="store_true", help="compact JSON output (default)")
    return parser


def _gather(args) -> dict:
    """Inputs from flags, falling back to a JSON object on standard input."""
    data = {}
    for name in JSON_FLAGS:
        text = getattr(args, name)
        if text is not None:
            try:
                data[name] = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ParseError(f"--{name.replace('_', '-')}: malformed JSON ({exc.msg})") from None
    for name in TEXT_FLAGS:
        if getattr(args, name) is not None:
            data[name] = getattr(args, name)
    if args.closed:
        data["closed"] = True
    if not data and not sys.stdin.isatty():
        text = sys.stdin.read()
        if text.strip():
            try:
                payload = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ParseError(f"stdin: malformed JSON ({exc.msg})") from None
            if not isinstance(payload, dict):
                raise ParseError("stdin: expected a JSON object")
            data = {k.replace("-", "_"): v for k, v in payload.items()}
    return data


def _need(data, key):
    if key not in data:
        raise ParseError(f"missing input '{key}'")
    return data[key]


def _function(data) -> ValFun:
    if "fn" in data:
        return parse_valfun(data["fn"], "fn")
    if "ideal" in data:
        return ValFun.log(parse_ideal(data["ideal"], "ideal"))
    raise ParseError("missing input 'fn' (or 'ideal')")


def _optional_ideal(data, key, n) -> MonomialIdeal:
    if data.get(key) is None:
        return MonomialIdeal.unit(n)
    return parse_ideal(data[key], key)


def _check(cond, msg):
    if not cond:
        raise OracleMismatch(msg)


def _oracle_norm(phi, q, variant, report):
    bound = sum(report.witness.alpha)
    if bound <= ORACLE_DENOMINATOR_CAP:
        grid = oracles.grid_norm(phi, q, variant, int(bound))
        _check(grid == report.value, f"grid norm {grid} differs from {report.value}")
    grid = oracles.grid_norm(phi, q, variant, min(int(bound), ORACLE_DENOMINATOR_CAP))
    _check(grid <= report.value, f"grid norm {grid} exceeds {report.value}")


def _oracle_ideal(points_fn, ideal, n):
    box = max(max(g) for g in ideal.gens) + 1 if ideal is not None else 3
    expected = points_fn(box)
    got = oracles.box_ideal_points(ideal, box) if ideal is not None else set()
    _check(expected == got, "lattice oracle disagrees with the computed ideal")


def cmd_lct(data, oracle):
    phi = _function(data)
    q = _optional_ideal(data, "q", phi.n)
    report = functions.norm(phi, q, "minus")
    if oracle:
        _oracle_norm(phi, q, "minus", report)
    value = "inf" if report.value <= 0 else format_rational(1 / report.value)
    return {"lct": value, "witness": format_vector(report.witness.alpha)}


def cmd_norm(data, oracle):
    phi = _function(data)
    q = _optional_ideal(data, "q", phi.n)
    variant = data.get("variant", "abs")
    report = functions.norm(phi, q, variant)
    if oracle:
        _oracle_norm(phi, q, variant, report)
    return {"norm": format_rational(report.value), "variant": variant,
            "witness": format_vector(report.witness.alpha)}


def cmd_mult(data, oracle):
    phi = _function(data)
    t = parse_rational(_need(data, "t"), "t")
    closed = bool(data.get("closed", False))
    J = multiplier.multiplier_ideal(phi, t, closed=closed)
    if oracle:
        _oracle_ideal(lambda box: oracles.lattice_multiplier(phi, t, box, closed), J, phi.n)
    return format_ideal(J, phi.n)


def cmd_jump(data, oracle):
    phi = _function(data)
    jumps = multiplier.jumping_numbers(phi, parse_rational(_need(data, "t_max"), "t_max"))
    if oracle:
        for t in jumps:
            J = multiplier.multiplier_ideal(phi, t)
            Jc = multiplier.multiplier_ideal(phi, t, closed=True)
            box = max(max(g) for g in J.gens) + 1
            _check(oracles.lattice_multiplier(phi, t, box) != oracles.lattice_multiplier(phi, t, box, True),
                   f"oracle sees no jump at {t}")
            _check(Jc.contains(J), "closed ideal does not contain the open one")
    return {"jumps": [format_rational(t) for t in jumps]}


def cmd_envelope(data, oracle):
    phi = _function(data)
    if data.get("m") is None:
        env = multiplier.qpsh_envelope(phi)
        if oracle:
            for p in oracles.grid_points(phi.n, 8):
                _check(env(p) <= min(phi(p), 0), f"envelope exceeds the function at {p}")
        return format_valfun(env)
    m = int(parse_rational(data["m"], "m"))
    a = multiplier.envelope_ideal(phi, m)
    if oracle:
        cons = [(u, -m * phi(u)) for u in functions.candidate_rays(phi)]
        _oracle_ideal(lambda box: oracles.lattice_region(phi.n, cons, box), a, phi.n)
    return format_ideal(a, phi.n)


def cmd_qpsh_check(data, oracle):
    phi = _function(data)
    verdict = multiplier.is_qpsh(phi)
    if oracle and verdict:
        pts = list(oracles.grid_points(phi.n, 4))
        for p in pts:
            _check(phi(p) <= 0, f"positive value at {p}")
            for r in pts:
                s = tuple(x + y for x, y in zip(p, r))
                _check(phi(s) <= phi(p) + phi(r), f"convexity fails at {p}, {r}")
    return {"qpsh": verdict}


def cmd_graded(data, oracle):
    S = parse_graded(_need(data, "system"), "system")
    out = {"system": format_graded(S), "body": format_polyhedron(asymptotic.limit_body(S)),
           "function": format_valfun(asymptotic.to_valfun(S))}
    if data.get("m") is not None:
        m = int(parse_rational(data["m"], "m"))
        term = S.term(m)
        if oracle and isinstance(S, asymptotic.FiniteStage) and m <= oracles.PARTITION_CAP:
            _check(oracles.partition_term(S, m) == term, "partition oracle disagrees with the graded term")
        out["term"] = format_ideal(term)
    if data.get("alpha") is not None:
        v = parse_valuation(data["alpha"], "alpha")
        value = asymptotic.asym_value(S, v)
        if oracle:
            for m in range(1, 9):
                _check(v(S.term(m)) / m >= value, f"term {m} falls below the asymptotic value")
        out["value"] = format_rational(value)
    if data.get("t") is not None:
        t = parse_rational(data["t"], "t")
        J = asymptotic.asym_multiplier_ideal(S, t)
        if oracle:
            _check(J == multiplier.multiplier_ideal(asymptotic.to_valfun(S), t),
                   "asymptotic multiplier ideal disagrees with the ray criterion")
        out["multiplier"] = format_ideal(J)
    return out


def cmd_subadd_check(data, oracle):
    phi = _function(data)
    if data.get("pairs") is None:
        steps = [Fraction(1, 2), Fraction(1), Fraction(3, 2)]
        pairs = [(s, t) for s in steps for t in steps]
    else:
        pairs = [(parse_rational(s, f"pairs[{k}][0]"), parse_rational(t, f"pairs[{k}][1]"))
                 for k, (s, t) in enumerate(data["pairs"])]
    system = asymptotic.SubadditiveSystem(phi)
    bad = system.violations(pairs)
    if oracle:
        for s, t in pairs:
            J = system(s + t)
            box = max(max(g) for g in J.gens) + 1
            _check(oracles.lattice_multiplier(phi, s + t, box) == oracles.box_ideal_points(J, box),
                   f"lattice oracle disagrees at t = {s + t}")
    return {"checked": len(pairs), "violations": [[format_rational(s), format_rational(t)] for s, t in bad]}


def cmd_complex(data, oracle):
    base = parse_model(_need(data, "model"), "model")
    M = base
    for k, face in enumerate(data.get("blowups") or []):
        if not isinstance(face, list):
            raise ParseError(f"blowups[{k}]: expected a list of divisor ids")
        M = dual_complex.blowup(M, face)
    out = {"model": format_model(M)}
    if data.get("point") is not None:
        p = parse_point(data["point"], M, "point")
        out["point"] = format_point(p)
        out["log_discrepancy"] = format_rational(dual_complex.log_discrepancy(p))
        values = {}
        for name in data.get("eval") or [name for name, _ in M.tracked]:
            value, exact = dual_complex.eval_ideal(p, name)
            values[name] = {"value": format_rational(value), "exact": exact}
            if oracle and M.rays is not None and exact:
                ideal = dict(M.toric_ideals).get(name)
                if ideal is not None:
                    _check(MonomialValuation(p.alpha())(ideal) == value, f"toric value of {name} disagrees")
        out["values"] = values
        r = dual_complex.retract(p, base)
        out["retraction"] = {"point": format_point(r), "log_discrepancy": format_rational(dual_complex.log_discrepancy(r))}
    if data.get("norm") is not None:
        spec = data["norm"]
        if not isinstance(spec, dict):
            raise ParseError("norm: expected an object")
        coeffs = [(parse_rational(c.get("c"), f"norm.coeffs[{k}].c"), c.get("ideal"))
                  for k, c in enumerate(spec.get("coeffs", []))]
        report = dual_complex.norm_on_complex(M, coeffs, spec.get("q"))
        if oracle and M.rays is not None:
            ideals = dict(M.toric_ideals)
            phi = ValFun.combination([(c, ideals[name]) for c, name in coeffs])
            q = ideals[spec["q"]] if spec.get("q") is not None else None
            exact = functions.norm(phi, q, "minus").value
            _check(exact == report.value, f"complex norm {report.value} differs from {exact}")
        out["norm"] = {"value": format_rational(report.value), "witness": report.witness}
    return out


def cmd_izumi(data, oracle):
    v = parse_valuation(_need(data, "alpha"), "alpha")
    a = parse_ideal(_need(data, "ideal"), "ideal")
    rep = izumi_check(v, a)
    if oracle:
        direct = min(sum(x * y for x, y in zip(v.alpha, g)) for g in a.gens)
        _check(rep.upper_margin == sum(v.alpha) * rep.order - direct, "direct valuation disagrees")
    return {"lower_ok": rep.lower_ok, "upper_ok": rep.upper_ok, "lower_margin": format_rational(rep.lower_margin),
            "upper_margin": format_rational(rep.upper_margin), "order": rep.order}


HANDLERS = {
    "lct": cmd_lct, "norm": cmd_norm, "mult": cmd_mult, "jump": cmd_jump, "envelope": cmd_envelope,
    "qpsh-check": cmd_qpsh_check, "graded": cmd_graded, "subadd-check": cmd_subadd_check,
    "complex": cmd_complex, "izumi": cmd_izumi,
}


def dispatch(command: str, data: dict, oracle: bool = False) -> dict:
    if command not in HANDLERS:
        raise ParseError(f"unknown command {command!r}")
    return HANDLERS[command](data, oracle)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            data = _gather(args)
            result = dispatch(args.command, data, args.oracle)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OracleMismatch as exc:
        print(f"oracle mismatch: {exc}", file=sys.stderr)
        return 1
    except (KeyError, TypeError, AttributeError) as exc:
        print(f"error: malformed input ({exc})", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if args.pretty:
        text = json.dumps(result, indent=2)
    else:
        text = json.dumps(result, separators=(",", ":"))
    print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
