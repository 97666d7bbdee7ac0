"""Seeded random ideals: up to 3 variables, 3 generators, degree 3, coefficients in [-9, 9]."""

import random

from parcont.poly import Polynomial, VariableContext

NAMES = ("x", "y", "z")


def random_ideal(rng: random.Random):
    nv = rng.randint(1, 3)
    ctx = VariableContext(NAMES[:nv])
    gens = []
    while not gens:
        for _ in range(rng.randint(1, 3)):
            coeffs = {}
            for _ in range(rng.randint(1, 5)):
                e = [0] * nv
                for _ in range(rng.randint(0, 3)):
                    e[rng.randrange(nv)] += 1
                coeffs[tuple(e)] = rng.randint(-9, 9)
            p = Polynomial.from_dict(ctx, coeffs)
            if not p.is_zero():
                gens.append(p)
    return ctx, gens


def random_ideals(count: int, seed: int = 0):
    rng = random.Random(seed)
    return [random_ideal(rng) for _ in range(count)]


def random_combination(ctx, gens, rng: random.Random):
    total = ctx.zero()
    for g in gens:
        c = Polynomial.from_dict(
            ctx,
            {tuple(rng.randint(0, 2) for _ in range(ctx.nvars)): rng.randint(-5, 5) for _ in range(3)},
        )
        total = total + c * g
    return total
