"""Jacobian determinant, saturation and specialization of parameterized ideals.

For a square family ``F(x; p)`` with Jacobian determinant ``h`` the
saturation ``I : <h>^oo`` is computed by adjoining ``y`` above every other
variable and eliminating it from ``I + <1 - y*h>``.  Specializing the
resulting basis at a parameter point is only trusted when no parameter
leading coefficient of the augmented basis vanishes there.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from parcont.arith import as_rational
from parcont.groebner import GroebnerBasis, buchberger, canonical, intersect_with_subring, normal_form
from parcont.poly import (
    Polynomial,
    VariableContext,
    block_leading_coefficient,
    evaluate,
    evaluate_parameters,
    partial_derivative,
)

ParameterPoint = Mapping[str, Fraction]


class SaturationByZero(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    context: VariableContext
    polynomials: tuple[Polynomial, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "polynomials", tuple(self.polynomials))
        if self.context.has_aux:
            raise ValueError("family context must not include the auxiliary variable")
        if len(self.polynomials) != len(self.context.x_vars):
            raise ValueError(
                f"nonsquare system: {len(self.polynomials)} polynomials in {len(self.context.x_vars)} variables"
            )
        for f in self.polynomials:
            if f.context != self.context:
                raise ValueError("family polynomials must share the family context")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"f{i + 1}" for i in range(len(self.polynomials))))

    @property
    def x_vars(self):
        return self.context.x_vars

    @property
    def p_vars(self):
        return self.context.p_vars

    def specialize(self, q: ParameterPoint) -> list[Polynomial]:
        return [evaluate_parameters(f, q) for f in self.polynomials]


@dataclass(frozen=True)
class SaturationResult:
    augmented_basis: GroebnerBasis
    saturated_basis: GroebnerBasis
    # (c_i(p) in the parameter-only context, index into augmented_basis)
    parameter_leading_coeffs: tuple[tuple[Polynomial, int], ...]
    jacobian: Polynomial | None = None


@dataclass(frozen=True)
class GuardFailure:
    """Returned by :func:`specialize_basis` when a leading coefficient vanishes at q."""

    coefficient: Polynomial
    index: int
    point: dict = field(default_factory=dict)

    def __bool__(self):
        return False

    def __str__(self):
        return f"leading coefficient {self.coefficient} of augmented element {self.index} vanishes"


def jacobian_determinant(F: FamilySpec) -> Polynomial:
    rows = [[partial_derivative(f, v) for v in F.x_vars] for f in F.polynomials]
    return _det(rows, F.context)


def _det(rows: list[list[Polynomial]], ctx: VariableContext) -> Polynomial:
    # cofactor expansion along the first row; n is tiny
    n = len(rows)
    if n == 0:
        return ctx.one()
    if n == 1:
        return rows[0][0]
    total = ctx.zero()
    for j, entry in enumerate(rows[0]):
        if entry.is_zero():
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = entry * _det(minor, ctx)
        total = total - term if j % 2 else total + term
    return total


def saturate(I_gens: Sequence[Polynomial], h: Polynomial) -> SaturationResult:
    """Groebner bases of ``I + <1 - y*h>`` and of ``I : <h>^oo``."""
    if h.is_zero():
        raise SaturationByZero("saturation by zero")
    ctx = h.context
    aug_ctx = ctx.with_aux()
    y = aug_ctx.var(aug_ctx.aux_name)
    gens = [f.embed(aug_ctx) for f in I_gens]
    gens.append(aug_ctx.one() - y * h.embed(aug_ctx))
    aug = buchberger(gens)
    keep = ctx.variables
    sat = intersect_with_subring(aug, keep)
    pctx = ctx.params_only()
    coeffs = []
    for i, g in enumerate(aug.elements):
        _, c = block_leading_coefficient(g)
        coeffs.append((c.embed(pctx), i))
    return SaturationResult(aug, sat, tuple(coeffs), h)


def saturate_family(F: FamilySpec) -> SaturationResult:
    return saturate(F.polynomials, jacobian_determinant(F))


def check_generic_regularity(sat: SaturationResult) -> bool:
    """False when some saturated-basis element involves parameters only."""
    nb = sat.saturated_basis.context.n_block
    for g in sat.saturated_basis.elements:
        if all(not any(e[:nb]) for e, _ in g.terms):
            return False
    return True


def _check_point(ctx: VariableContext, q: ParameterPoint) -> dict[str, Fraction]:
    missing = [p for p in ctx.p_vars if p not in q]
    if missing:
        raise KeyError(f"no value for parameter(s) {', '.join(missing)}")
    return {p: as_rational(q[p]) for p in ctx.p_vars}


def specialize_saturated(F: FamilySpec, q: ParameterPoint) -> GroebnerBasis:
    """Reduced basis of ``I_q : <h_q>^oo`` computed from scratch at ``q``."""
    q = _check_point(F.context, q)
    xctx = F.context.x_only()
    h_q = evaluate_parameters(jacobian_determinant(F), q)
    gens = [evaluate_parameters(f, q) for f in F.polynomials]
    if h_q.is_zero():
        # every zero of F(x; q) is singular
        return GroebnerBasis(xctx, (xctx.one(),))
    return saturate(gens, h_q).saturated_basis


def guard(sat: SaturationResult, q: ParameterPoint) -> GuardFailure | None:
    for c, i in sat.parameter_leading_coeffs:
        if evaluate(c, q) == 0:
            return GuardFailure(c, i, dict(q))
    return None


def specialize_basis(sat: SaturationResult, q: ParameterPoint) -> GroebnerBasis | GuardFailure:
    """Evaluate the saturated basis at ``q`` when the leading-coefficient guard holds."""
    ctx = sat.saturated_basis.context
    q = _check_point(ctx, q)
    failure = guard(sat, q)
    if failure is not None:
        return failure
    xctx = ctx.x_only()
    out = []
    for g in sat.saturated_basis.elements:
        gq = evaluate_parameters(g, q)
        if gq.is_zero():
            continue
        out.append(canonical(gq))
    if any(g.is_constant() for g in out):
        return GroebnerBasis(xctx, (xctx.one(),))
    out.sort(key=lambda g: g.terms[0][0])
    return GroebnerBasis(xctx, tuple(out))


def contained_after_specialization(sat: SaturationResult, q: ParameterPoint, target: GroebnerBasis) -> bool:
    """phi_q(I : J^oo) is always inside I_q : J_q^oo."""
    q = _check_point(sat.saturated_basis.context, q)
    for g in sat.saturated_basis.elements:
        gq = evaluate_parameters(g, q)
        if not normal_form(gq, target).is_zero():
            return False
    return True


def random_parameter_point(
    p_vars: Sequence[str], rng: random.Random, num_bound: int = 10**4, den_bound: int = 10**3
) -> dict[str, Fraction]:
    return {p: Fraction(rng.randint(-num_bound, num_bound), rng.randint(1, den_bound)) for p in p_vars}


def sample_generic_point(sat: SaturationResult, rng: random.Random, max_tries: int = 100) -> dict[str, Fraction]:
    """Random rational point avoiding every parameter leading coefficient."""
    p_vars = sat.saturated_basis.context.p_vars
    for _ in range(max_tries):
        q = random_parameter_point(p_vars, rng)
        if guard(sat, q) is None:
            return q
    raise RuntimeError(f"no generic parameter point found in {max_tries} samples")
