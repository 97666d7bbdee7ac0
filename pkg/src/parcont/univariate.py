"""Dense univariate polynomials over Q (coefficient lists, lowest degree first)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from parcont.poly import Polynomial, VariableContext

Dense = list[Fraction]

# beyond this, exhaustive divisor enumeration for the rational-root test is too slow
_MAX_TRIAL = 10**14


def to_dense(f: Polynomial) -> Dense:
    used = f.support()
    if len(used) > 1:
        raise ValueError(f"{f} is not univariate")
    if f.is_zero():
        return []
    i = used.pop() if used else 0
    deg = max(e[i] for e, _ in f.terms)
    out = [Fraction(0)] * (deg + 1)
    for e, c in f.terms:
        out[e[i]] += c
    return out


def from_dense(coeffs: Dense, context: VariableContext, var: str) -> Polynomial:
    i = context.index(var)
    n = context.nvars
    acc = {}
    for k, c in enumerate(coeffs):
        if c:
            acc[tuple(k if j == i else 0 for j in range(n))] = c
    return Polynomial.from_dict(context, acc)


def trim(a: Dense) -> Dense:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a: Dense) -> int:
    return len(trim(a)) - 1


def derivative(a: Dense) -> Dense:
    return trim([k * c for k, c in enumerate(a)][1:])


def divmod_dense(a: Dense, b: Dense) -> tuple[Dense, Dense]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        factor = r[-1] / lead
        q[shift] = factor
        for k, c in enumerate(b):
            r[k + shift] -= factor * c
        r = trim(r)
    return q, r


def monic(a: Dense) -> Dense:
    a = trim(a)
    if not a:
        return a
    return [c / a[-1] for c in a]


def gcd_dense(a: Dense, b: Dense) -> Dense:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_dense(a, b)[1]
    return monic(a)


def squarefree_part(a: Dense) -> Dense:
    g = gcd_dense(a, derivative(a))
    return monic(divmod_dense(a, g)[0])


def evaluate(a: Dense, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def _integer_coeffs(a: Dense) -> list[int]:
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    return [int(c * den) for c in a]


def rational_roots(a: Dense) -> list[Fraction]:
    """Distinct rational roots, ascending."""
    a = trim(a)
    if len(a) <= 1:
        return []
    roots = set()
    k = 0
    while a[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
        a = a[k:]
    ints = _integer_coeffs(a)
    a0, an = ints[0], ints[-1]
    if len(a) > 1:
        if abs(a0) <= _MAX_TRIAL and abs(an) <= _MAX_TRIAL:
            for u in _divisors(a0):
                for v in _divisors(an):
                    for r in (Fraction(u, v), Fraction(-u, v)):
                        if r not in roots and evaluate(a, r) == 0:
                            roots.add(r)
        else:
            roots.update(_rational_roots_numeric(a, an))
    return sorted(roots)


def _rational_roots_numeric(a: Dense, an: int) -> set[Fraction]:
    import numpy as np

    approx = np.roots([float(c) for c in reversed(a)])
    found = set()
    for z in approx:
        if abs(z.imag) > 1e-6 * max(1.0, abs(z)):
            continue
        r = Fraction(float(z.real)).limit_denominator(abs(an))
        if evaluate(a, r) == 0:
            found.add(r)
    return found


def gcd_free_basis(polys: list[Dense]) -> list[Dense]:
    """Pairwise coprime monic polynomials with the same combined zero set."""
    basis = [monic(p) for p in polys if degree(p) > 0]
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                g = gcd_dense(basis[i], basis[j])
                if degree(g) > 0:
                    a = monic(divmod_dense(basis[i], g)[0])
                    b = monic(divmod_dense(basis[j], g)[0])
                    rest = [p for k, p in enumerate(basis) if k not in (i, j)]
                    basis = rest + [p for p in (g, a, b) if degree(p) > 0]
                    changed = True
                    break
            if changed:
                break
    return basis


def split_rational_linear(p: Dense) -> list[Dense]:
    """Split off ``x - r`` for every rational root ``r`` of a squarefree ``p``."""
    out = []
    for r in rational_roots(p):
        lin = [-r, Fraction(1)]
        out.append(lin)
        p = divmod_dense(p, lin)[0]
    if degree(p) > 0:
        out.append(monic(p))
    return out
