"""Acceptance criteria 1-10, one test each, each recording a PASS/FAIL line."""

import itertools
import json
import random
import subprocess
import sys
import time
from fractions import Fraction as F

from valslice.asymptotic import approximation_error, controlled_growth_check
from valslice.dual_complex import (
    QMPoint,
    chain_matrix,
    log_discrepancy,
    norm_on_complex,
    retract,
    toric_model,
)
from valslice.functions import ValFun, candidate_rays, lct, norm
from valslice.ideals import MonomialIdeal, combine, minimalize
from valslice.multiplier import (
    is_qpsh,
    jumping_numbers,
    multiplier_ideal,
    multiplier_ideal_of_product,
    qpsh_envelope,
)
from valslice.oracles import grid_norm
from valslice.sampling import (
    random_blowups,
    random_ideal,
    random_ideal_function,
    random_qpsh,
    random_rational,
    random_valfun,
    random_weight,
)
from valslice.valuations import MonomialValuation, izumi_check

from conftest import ACCEPTANCE

SEED = 314159
PER_LCT_SECONDS = 1.0
NORM_SUITE_SECONDS = 60.0
SUITE_SECONDS = 300.0
GRID_DENOMINATOR = 20
ELAPSED = []


def record(k, ok, detail, seconds):
    ELAPSED.append(seconds)
    line = f"ACCEPTANCE {k}: {'PASS' if ok else 'FAIL'} - {detail} ({seconds:.1f}s)"
    ACCEPTANCE.append(line)
    print(line)
    assert ok, line


def test_criterion_01_lct_values():
    t0 = time.perf_counter()
    results, slowest = [], 0.0

    def timed(fn):
        nonlocal slowest
        s = time.perf_counter()
        out = fn()
        slowest = max(slowest, time.perf_counter() - s)
        return out

    for n in range(1, 5):
        results.append(timed(lambda: lct(ValFun.log(MonomialIdeal.maximal(n)))) == n)
    a = minimalize([(2, 0), (0, 3)])
    rep = timed(lambda: norm(ValFun.log(a), None, "minus"))
    results.append(1 / rep.value == F(5, 6) and rep.witness.alpha == (3, 2))
    results.append(timed(lambda: lct(ValFun.log(a), minimalize([(1, 0)]))) == F(4, 3))
    ok = all(results) and slowest < PER_LCT_SECONDS
    record(1, ok, f"{sum(results)}/{len(results)} exact values, slowest {slowest:.3f}s < {PER_LCT_SECONDS}s",
           time.perf_counter() - t0)


def test_criterion_02_norm_vs_grid_oracle():
    t0 = time.perf_counter()
    rng = random.Random(SEED + 2)
    below = equal_needed = equal_ok = 0
    for k in range(200):
        n = rng.randint(1, 3)
        phi = random_valfun(rng, n, max_atoms=2, max_ideals=3, max_exp=6)
        variant = ("abs", "plus", "minus")[k % 3]
        rep = norm(phi, None, variant)
        grid = grid_norm(phi, None, variant, GRID_DENOMINATOR)
        below += grid <= rep.value
        if sum(rep.witness.alpha) <= GRID_DENOMINATOR:
            equal_needed += 1
            equal_ok += grid == rep.value
    seconds = time.perf_counter() - t0
    ok = below == 200 and equal_ok == equal_needed and seconds < NORM_SUITE_SECONDS
    record(2, ok, f"grid <= exact in {below}/200, equality in {equal_ok}/{equal_needed} small-witness cases",
           seconds)


def test_criterion_03_dual_characterisation_and_jumps():
    t0 = time.perf_counter()
    rng = random.Random(SEED + 3)
    agree = 0
    for _ in range(200):
        phi = random_ideal_function(rng, rng.randint(1, 3), max_ideals=3, max_exp=6)
        t = random_rational(rng, 3, 6)
        agree += multiplier_ideal(phi, t) == multiplier_ideal_of_product(phi.atoms[0], t)
    jumps = jumping_numbers(ValFun.log(minimalize([(2, 0), (0, 3)])), F(3, 2))
    ok = agree == 200 and jumps == [F(5, 6), F(7, 6), F(4, 3), F(3, 2)]
    record(3, ok, f"ray = Minkowski interior in {agree}/200, jumps {[str(j) for j in jumps]}",
           time.perf_counter() - t0)


def test_criterion_04_norm_biconditional():
    t0 = time.perf_counter()
    rng = random.Random(SEED + 4)
    good = 0
    delta = F(1, 1000)
    for k in range(200):
        n = rng.randint(1, 3)
        phi = random_qpsh(rng, n)
        q = random_ideal(rng, n, 3, 2)
        value = norm(phi, q, "minus").value
        threshold = 1 / value if value else F(1)
        jumps = jumping_numbers(phi, F(3, 2)) or [threshold]
        anchor = (threshold, rng.choice(jumps), random_rational(rng))[k % 3]
        lam = max(anchor + rng.choice((-delta, 0, delta)), delta)
        good += multiplier_ideal(phi, lam).contains(q) == (lam * value < 1)
    record(4, good == 200, f"biconditional exact in {good}/200 triples", time.perf_counter() - t0)


def test_criterion_05_subadditivity():
    t0 = time.perf_counter()
    rng = random.Random(SEED + 5)
    steps = (F(1, 2), F(1), F(3, 2))
    violations = checked = 0
    for _ in range(100):
        phi = random_qpsh(rng, rng.randint(1, 3))
        for s, t in itertools.product(steps, steps):
            checked += 1
            prod = combine(multiplier_ideal(phi, s), multiplier_ideal(phi, t), "product")
            violations += not prod.contains(multiplier_ideal(phi, s + t))
    record(5, violations == 0, f"{violations} violations in {checked} checks", time.perf_counter() - t0)


def test_criterion_06_approximation():
    t0 = time.perf_counter()
    rng = random.Random(SEED + 6)
    bound_fail, strict_fail, growth_fail, example = 0, 0, 0, None
    for _ in range(50):
        n = rng.randint(1, 3)
        phi = random_qpsh(rng, n)
        errs = [approximation_error(phi, 2 ** k) for k in range(6)]
        bound_fail += any(e >= F(1, 2 ** k) for k, e in enumerate(errs))
        stalls = [k for k in range(5) if errs[k] != 0 and not errs[k + 1] < errs[k]]
        if stalls:
            strict_fail += 1
            if example is None:
                example = (phi, [str(e) for e in errs])
        pairs = [(random_rational(rng, 8, 4), random_weight(rng, n)) for _ in range(20)]
        margins = [m for t, v in pairs for m in controlled_growth_check(phi, [t], [v])]
        growth_fail += not all(m.ok for m in margins)
    ok = bound_fail == 0 and strict_fail == 0 and growth_fail == 0
    detail = (f"bound error < 2^-k failed for {bound_fail}/50, strict decrease failed for {strict_fail}/50, "
              f"controlled growth failed for {growth_fail}/50")
    if example is not None:
        detail += f"; first stall: errors {', '.join(example[1])} for {example[0]}"
    record(6, ok, detail, time.perf_counter() - t0)


def test_criterion_07_envelope_fixed_point():
    t0 = time.perf_counter()
    rng = random.Random(SEED + 7)
    good = 0
    for k in range(100):
        n = rng.randint(1, 3)
        phi = random_valfun(rng, n) if k % 2 else random_qpsh(rng, n)
        env = qpsh_envelope(phi)
        again = qpsh_envelope(env)
        rays = sorted(set(candidate_rays(phi)) | set(candidate_rays(env)))
        idempotent = all(again(u) == env(u) for u in rays)
        below = all(env(u) <= phi(u) for u in rays)
        fixes = all(env(u) == phi(u) for u in rays)
        good += idempotent and below and fixes == is_qpsh(phi)
    x, y, m = minimalize([(1, 0)]), minimalize([(0, 1)]), minimalize([(1, 0), (0, 1)])
    worked = qpsh_envelope(ValFun.combination([(1, x), (1, y), (-1, m)])) == ValFun.log(minimalize([(1, 1)]))
    record(7, good == 100 and worked, f"{good}/100 random cases, worked example {'exact' if worked else 'wrong'}",
           time.perf_counter() - t0)


def test_criterion_08_izumi():
    t0 = time.perf_counter()
    rng = random.Random(SEED + 8)
    good = 0
    for _ in range(500):
        n = rng.randint(1, 4)
        alpha = tuple(F(rng.randint(0, 12), rng.randint(1, 4)) for _ in range(n))
        if not any(alpha):
            alpha = (F(1),) + alpha[1:]
        rep = izumi_check(MonomialValuation(alpha), random_ideal(rng, n, 6, 3))
        good += rep.lower_ok and rep.upper_ok
    record(8, good == 500, f"both inequalities in {good}/500 pairs", time.perf_counter() - t0)


def test_criterion_09_dual_complex():
    t0 = time.perf_counter()
    rng = random.Random(SEED + 9)
    chain_ok = mono_ok = points = 0
    compared = norm_ok = 0
    for _ in range(100):
        n = rng.randint(2, 3)
        tracked = {f"a{k}": random_ideal(rng, n, 4, 2) for k in range(3)}
        tracked["p"] = minimalize([random_weight(rng, n, 3)])
        chain = random_blowups(rng, toric_model(n, tracked), rng.randint(1, 4))
        top = chain[-1]
        law = all(
            tuple(tuple(sum(chain_matrix(chain[k], chain[i])[a][b] * chain_matrix(chain[j], chain[k])[b][c]
                            for b in range(len(chain[k].ids))) for c in range(len(chain[j].ids)))
                  for a in range(len(chain[i].ids))) == chain_matrix(chain[j], chain[i])
            for i in range(len(chain)) for k in range(i, len(chain)) for j in range(k, len(chain)))
        for _ in range(4):
            face = rng.choice(sorted(sorted(f) for f in top.faces))
            p = QMPoint(top, tuple(face), tuple(F(rng.randint(1, 9), rng.randint(1, 3)) for _ in face))
            points += 1
            law = law and all(retract(retract(p, mid), base) == retract(p, base)
                              for i, mid in enumerate(chain) for base in chain[: i + 1])
            mono_ok += all(log_discrepancy(retract(p, M)) <= log_discrepancy(p) for M in chain)
        chain_ok += law
        resolved = [name for name, t in top.tracked if t.resolved]
        if resolved:
            coeffs = [(F(rng.randint(1, 6), rng.randint(1, 3)), name) for name in resolved]
            phi = ValFun.combination([(c, tracked[name]) for c, name in coeffs])
            for q in [None] + resolved:
                compared += 1
                exact = norm(phi, tracked[q] if q else None, "minus").value
                norm_ok += norm_on_complex(top, coeffs, q).value == exact
    ok = chain_ok == 100 and mono_ok == points and norm_ok == compared and compared > 0
    record(9, ok, f"chain law {chain_ok}/100 chains, A-monotone {mono_ok}/{points} points, "
                  f"complex norm = slice norm {norm_ok}/{compared}", time.perf_counter() - t0)


IDEAL = '{"n":2,"gens":[[2,0],[0,3]]}'
FN = '{"n":2,"atoms":[[{"c":"1","ideal":%s}]]}' % IDEAL
CLI_CASES = [
    ["lct", "--ideal", IDEAL],
    ["norm", "--fn", FN, "--variant", "minus", "--q", '{"n":2,"gens":[[1,0]]}'],
    ["mult", "--fn", FN, "--t", "5/6"],
    ["jump", "--fn", FN, "--t-max", "3/2"],
    ["envelope", "--fn", FN],
    ["qpsh-check", "--fn", FN],
    ["graded", "--system", '{"kind":"finite_stage","stages":[{"n":2,"gens":[[1,0]]},{"n":2,"gens":[[2,0],[0,1]]}]}',
     "--m", "4", "--alpha", '["1","2"]', "--t", "3"],
    ["subadd-check", "--fn", FN],
    ["complex", "--model", '{"toric":{"n":2,"ideals":{"a":%s}}}' % IDEAL,
     "--blowups", '[["D1","D2"],["D1","E3"],["E3","E4"]]', "--point", '{"face":["D1","E4"],"weights":["1","2"]}',
     "--norm", '{"coeffs":[{"c":"1","ideal":"a"}]}'],
    ["izumi", "--alpha", '["1","2"]', "--ideal", IDEAL],
]


def test_criterion_10_determinism_and_runtime():
    t0 = time.perf_counter()
    stable = 0
    for argv in CLI_CASES:
        outs = [subprocess.run([sys.executable, "-m", "valslice.cli", *argv, "--oracle"], capture_output=True,
                               check=True).stdout for _ in range(3)]
        json.loads(outs[0])
        stable += outs[0] == outs[1] == outs[2]
    seconds = time.perf_counter() - t0
    total = sum(ELAPSED) + seconds
    ok = stable == len(CLI_CASES) and total < SUITE_SECONDS
    record(10, ok, f"{stable}/{len(CLI_CASES)} commands byte-identical over 3 runs, "
                   f"acceptance suite {total:.1f}s < {SUITE_SECONDS:.0f}s", seconds)
