"""Seeded random instances for property suites and experiments."""

from __future__ import annotations

import random
from fractions import Fraction

from .dual_complex import DualComplexModel, blowup
from .functions import ValFun
from .ideals import MonomialIdeal, minimalize

COEFFICIENTS = tuple(Fraction(p, q) for p, q in [(1, 3), (1, 2), (2, 3), (1, 1), (3, 2), (2, 1)])


def random_ideal(rng: random.Random, n: int, max_exp: int = 6, max_gens: int = 3) -> MonomialIdeal:
    """Nonzero proper-or-unit monomial ideal with small exponents (unit ideal is rare)."""
    k = rng.randint(1, max_gens)
    gens = [tuple(rng.randint(0, max_exp) for _ in range(n)) for _ in range(k)]
    if all(not any(g) for g in gens):
        gens[0] = tuple(int(i == rng.randrange(n)) for i in range(n))
    return minimalize(gens, n)


def random_weight(rng: random.Random, n: int, top: int = 6) -> tuple:
    while True:
        w = tuple(rng.randint(0, top) for _ in range(n))
        if any(w):
            return w


def random_valfun(rng: random.Random, n: int, max_atoms: int = 2, max_ideals: int = 3,
                  max_exp: int = 6, signed: bool = True) -> ValFun:
    """Max of up to ``max_atoms`` combinations; at most ``max_ideals`` ideals in total."""
    atoms_n = rng.randint(1, max_atoms)
    budget = rng.randint(atoms_n, max(atoms_n, max_ideals))
    sizes = [1] * atoms_n
    for _ in range(budget - atoms_n):
        sizes[rng.randrange(atoms_n)] += 1
    atoms = []
    for size in sizes:
        terms = []
        for _ in range(size):
            c = rng.choice(COEFFICIENTS)
            if signed and rng.random() < 0.3:
                c = -c
            terms.append((c, random_ideal(rng, n, max_exp)))
        atoms.append(tuple(terms))
    return ValFun(n, tuple(atoms))


def random_ideal_function(rng: random.Random, n: int, max_ideals: int = 3, max_exp: int = 6) -> ValFun:
    """``sum c_j log|a_j|`` with ``c_j > 0``."""
    k = rng.randint(1, max_ideals)
    return ValFun.combination([(rng.choice(COEFFICIENTS), random_ideal(rng, n, max_exp)) for _ in range(k)])


def random_qpsh(rng: random.Random, n: int, max_atoms: int = 2, max_ideals: int = 3, max_exp: int = 6) -> ValFun:
    """Max of ideal functions, which is convex and nonpositive."""
    atoms_n = rng.randint(1, max_atoms)
    per = max(1, max_ideals // atoms_n)
    atoms = []
    for _ in range(atoms_n):
        atoms.extend(random_ideal_function(rng, n, per, max_exp).atoms)
    return ValFun(n, tuple(atoms))


def random_blowups(rng: random.Random, M: DualComplexModel, length: int) -> list[DualComplexModel]:
    """Chain ``[M, M_1, ..., M_length]`` of stellar blowups at random faces."""
    chain = [M]
    for _ in range(length):
        faces = sorted((sorted(f) for f in chain[-1].faces if len(f) >= 2))
        if not faces:
            break
        chain.append(blowup(chain[-1], rng.choice(faces)))
    return chain


def random_rational(rng: random.Random, top: int = 3, den: int = 6) -> Fraction:
    return Fraction(rng.randint(1, top * den), rng.randint(1, den))
