"""Discriminants, standard monomials and generic regular-zero counts."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from parcont import univariate as uv
from parcont.arith import format_rational
from parcont.groebner import GroebnerBasis, canonical
from parcont.ideals import (
    FamilySpec,
    SaturationResult,
    check_generic_regularity,
    random_parameter_point,
    sample_generic_point,
    saturate_family,
    specialize_basis,
    specialize_saturated,
)
from parcont.poly import Monomial, Polynomial


class PositiveDimensional(ValueError):
    pass


@dataclass(frozen=True)
class StandardMonomialSet:
    monomials: tuple[Monomial, ...]

    @property
    def count(self) -> int:
        return len(self.monomials)


def standard_monomials(G: GroebnerBasis) -> StandardMonomialSet:
    """Monomials outside the leading-term ideal of a zero-dimensional x-only basis."""
    ctx = G.context
    if ctx.p_vars:
        raise ValueError("standard monomials are counted in the x-variables only")
    if G.is_one():
        return StandardMonomialSet(())
    n = ctx.nvars
    leads = G.leading_exponents()
    bounds = []
    for i in range(n):
        pure = [lm[i] for lm in leads if lm[i] and not any(lm[:i] + lm[i + 1 :])]
        if not pure:
            raise PositiveDimensional("positive-dimensional ideal")
        bounds.append(min(pure))

    def standard(e):
        return not any(all(a <= b for a, b in zip(lm, e)) for lm in leads)

    found = []
    frontier = [(0,) * n]
    seen = set(frontier)
    while frontier:
        nxt = []
        for e in frontier:
            if not standard(e):
                continue
            found.append(e)
            for i in range(n):
                e2 = e[:i] + (e[i] + 1,) + e[i + 1 :]
                if e2[i] < bounds[i] and e2 not in seen:
                    seen.add(e2)
                    nxt.append(e2)
        frontier = nxt
    found.sort()
    return StandardMonomialSet(tuple(Monomial(ctx, e) for e in found))


def regular_zero_count(F: FamilySpec, q) -> int:
    G = specialize_saturated(F, q)
    try:
        return standard_monomials(G).count
    except PositiveDimensional as exc:
        # regular zeros are isolated, so this means the engine is broken
        raise RuntimeError(f"internal inconsistency: saturated ideal at {q} is positive-dimensional") from exc


@dataclass
class DiscriminantReport:
    raw_factors: list[Polynomial]
    raw_product: Polynomial
    squarefree_factors: list[Polynomial] | None
    generic_count: int
    regular: bool = True
    generic_point: dict = field(default_factory=dict)
    diagnostic: str = ""

    def to_dict(self) -> dict:
        return {
            "regular": self.regular,
            "raw_factors": [str(f) for f in self.raw_factors],
            "raw_product": str(self.raw_product),
            "squarefree_factors": None
            if self.squarefree_factors is None
            else [str(f) for f in self.squarefree_factors],
            "generic_count": self.generic_count,
            "generic_point": {k: format_rational(v) for k, v in self.generic_point.items()},
            "diagnostic": self.diagnostic,
        }


def discriminant(F: FamilySpec, sat: SaturationResult | None = None, seed: int = 0) -> DiscriminantReport:
    """Product of the parameter leading coefficients of the augmented basis."""
    if sat is None:
        sat = saturate_family(F)
    pctx = F.context.params_only()
    if not check_generic_regularity(sat):
        return DiscriminantReport(
            [], pctx.zero(), None, 0, regular=False,
            diagnostic="saturated ideal meets the parameter ring: no regular zeros for generic parameters",
        )
    factors: list[Polynomial] = []
    for c, _ in sat.parameter_leading_coeffs:
        if c.is_constant():
            continue
        c = canonical(c)
        if c not in factors:
            factors.append(c)
    product = pctx.one()
    for c in factors:
        product = product * c
    squarefree = None
    if len(F.p_vars) == 1:
        squarefree = squarefree_factors(factors, pctx)
    rng = random.Random(seed)
    q = sample_generic_point(sat, rng)
    Gq = specialize_basis(sat, q)
    count = standard_monomials(Gq).count
    return DiscriminantReport(factors, product, squarefree, count, True, q)


def squarefree_factors(factors: list[Polynomial], pctx) -> list[Polynomial]:
    """Coprime squarefree factors of a one-parameter discriminant, rational roots split off."""
    var = pctx.p_vars[0]
    parts = [uv.squarefree_part(uv.to_dense(f)) for f in factors]
    out = []
    for p in uv.gcd_free_basis(parts):
        out.extend(uv.split_rational_linear(p))
    polys = [canonical(uv.from_dense(p, pctx, var)) for p in out]
    polys.sort(key=lambda f: (f.degree(), f.terms))
    return polys


def points_on_factor(f: Polynomial, rng: random.Random, tries: int = 3) -> list[dict[str, Fraction]]:
    """Rational points on ``f = 0`` found along random axis-parallel lines."""
    pctx = f.context
    points = []
    for var in sorted(f.variables_used()):
        others = [p for p in pctx.p_vars if p != var]
        for _ in range(tries if others else 1):
            fixed = {p: Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for p in others}
            line = _restrict_to_line(f, fixed, var)
            if uv.degree(line) < 1:
                continue
            for r in uv.rational_roots(line):
                q = dict(fixed)
                q[var] = r
                points.append({p: q[p] for p in pctx.p_vars})
    return points


def _restrict_to_line(f: Polynomial, fixed: dict, var: str):
    i = f.context.index(var)
    idx = [(j, fixed[name]) for j, name in enumerate(f.context.variables) if name != var]
    dense: dict[int, Fraction] = {}
    for e, c in f.terms:
        v = c
        for j, val in idx:
            if e[j]:
                v *= val ** e[j]
        dense[e[i]] = dense.get(e[i], 0) + v
    if not dense:
        return []
    return uv.trim([dense.get(k, Fraction(0)) for k in range(max(dense) + 1)])


@dataclass
class TheoremCheck:
    generic_count: int
    off_discriminant: list[tuple[dict, int]]
    on_discriminant: list[tuple[dict, int]]
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        def pt(q):
            return {k: format_rational(v) for k, v in q.items()}

        return {
            "generic_count": self.generic_count,
            "off_discriminant": [{"q": pt(q), "count": n} for q, n in self.off_discriminant],
            "on_discriminant": [{"q": pt(q), "count": n} for q, n in self.on_discriminant],
            "violations": self.violations,
            "ok": self.ok,
        }


def _count_task(args):
    F, q = args
    return regular_zero_count(F, q)


def verify_continuation_theorem(
    F: FamilySpec, trials: int, seed: int = 0, jobs: int = 1, report: DiscriminantReport | None = None
) -> TheoremCheck:
    """Check that the regular-zero count is N off the discriminant and at most N on it."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    sat = saturate_family(F)
    if report is None:
        report = discriminant(F, sat, seed=seed)
    N = report.generic_count
    rng = random.Random(seed)
    off = []
    if report.regular:
        for _ in range(trials):
            off.append(sample_generic_point(sat, rng))
    else:
        off = [random_parameter_point(F.p_vars, rng) for _ in range(trials)]
    on = []
    factors = report.squarefree_factors if report.squarefree_factors is not None else report.raw_factors
    for f in factors:
        on.extend(points_on_factor(f, rng))
    points = off + on
    if jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            counts = list(pool.map(_count_task, [(F, q) for q in points]))
    else:
        counts = [regular_zero_count(F, q) for q in points]
    off_res = list(zip(off, counts[: len(off)]))
    on_res = list(zip(on, counts[len(off) :]))
    violations = []
    for q, n in off_res:
        if n != N:
            violations.append(f"off the discriminant at {_fmt_point(q)}: count {n} != N = {N}")
    for q, n in on_res:
        if n > N:
            violations.append(f"on the discriminant at {_fmt_point(q)}: count {n} exceeds N = {N}")
    return TheoremCheck(N, off_res, on_res, violations)


def _fmt_point(q):
    return ", ".join(f"{k}={format_rational(v)}" for k, v in q.items())
