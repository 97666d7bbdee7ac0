"""Sparse multivariate polynomials over Q in lexicographic order.

A polynomial lives in a :class:`VariableContext` which fixes the variable
order ``y > x_1 > ... > x_n > p_1 > ... > p_k`` (``y`` only when the
auxiliary variable is switched on).  Monomials are exponent tuples laid out
in that order, so Python tuple comparison *is* the lex order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from parcont.arith import as_rational, format_rational

# exponents are meant to fit a machine word; anything larger is a runaway computation
MAX_EXPONENT = 2**31 - 1

Exponents = tuple[int, ...]


class ContextMismatch(ValueError):
    pass


@dataclass(frozen=True)
class VariableContext:
    x_vars: tuple[str, ...]
    p_vars: tuple[str, ...] = ()
    has_aux: bool = False
    aux_name: str = "y"

    def __post_init__(self):
        object.__setattr__(self, "x_vars", tuple(self.x_vars))
        object.__setattr__(self, "p_vars", tuple(self.p_vars))
        names = list(self.x_vars) + list(self.p_vars)
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be distinct: {names}")
        if self.has_aux and self.aux_name in names:
            raise ValueError(f"auxiliary variable {self.aux_name!r} clashes with a declared name")

    @property
    def variables(self) -> tuple[str, ...]:
        head = (self.aux_name,) if self.has_aux else ()
        return head + self.x_vars + self.p_vars

    @property
    def nvars(self) -> int:
        return len(self.x_vars) + len(self.p_vars) + (1 if self.has_aux else 0)

    @property
    def n_block(self) -> int:
        """Number of leading variables forming the {y} + x block."""
        return len(self.x_vars) + (1 if self.has_aux else 0)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def with_aux(self) -> VariableContext:
        if self.has_aux:
            return self
        name = self.aux_name
        taken = set(self.x_vars) | set(self.p_vars)
        while name in taken:
            name += "_"
        return VariableContext(self.x_vars, self.p_vars, True, name)

    def without_aux(self) -> VariableContext:
        return VariableContext(self.x_vars, self.p_vars)

    def x_only(self) -> VariableContext:
        """Context after substituting values for every parameter (aux flag kept)."""
        return VariableContext(self.x_vars, (), self.has_aux, self.aux_name)

    def params_only(self) -> VariableContext:
        return VariableContext((), self.p_vars)

    def var(self, name: str) -> Polynomial:
        i = self.index(name)
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, ((exps, Fraction(1)),))

    def const(self, c) -> Polynomial:
        c = as_rational(c)
        if c == 0:
            return Polynomial(self, ())
        return Polynomial(self, (((0,) * self.nvars, c),))

    def zero(self) -> Polynomial:
        return Polynomial(self, ())

    def one(self) -> Polynomial:
        return self.const(1)

    def __str__(self):
        return " > ".join(self.variables)


@dataclass(frozen=True, order=False)
class Monomial:
    context: VariableContext
    exponents: Exponents

    def __post_init__(self):
        if len(self.exponents) != self.context.nvars:
            raise ValueError("exponent vector length does not match the context")
        if any(e < 0 for e in self.exponents):
            raise ValueError("negative exponent")

    def divides(self, other: Monomial) -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other: Monomial) -> Monomial:
        _check_same(self.context, other.context)
        return Monomial(self.context, _mono_mul(self.exponents, other.exponents))

    def __lt__(self, other: Monomial) -> bool:
        return lex_compare(self, other) < 0

    def __gt__(self, other: Monomial) -> bool:
        return lex_compare(self, other) > 0

    def __str__(self):
        return format_monomial(self.exponents, self.context.variables) or "1"


@dataclass(frozen=True)
class Term:
    coefficient: Fraction
    monomial: Monomial

    def __post_init__(self):
        if self.coefficient == 0:
            raise ValueError("a term has a nonzero coefficient")


def lex_compare(m1: Monomial, m2: Monomial) -> int:
    """-1, 0 or 1 as ``m1`` is smaller, equal or larger in the lex order."""
    _check_same(m1.context, m2.context)
    a, b = m1.exponents, m2.exponents
    return (a > b) - (a < b)


def _check_same(c1: VariableContext, c2: VariableContext):
    if c1 is not c2 and c1 != c2:
        raise ContextMismatch(f"context mismatch: [{c1}] vs [{c2}]")


def _mono_mul(a: Exponents, b: Exponents) -> Exponents:
    out = tuple(x + y for x, y in zip(a, b))
    if out and max(out) > MAX_EXPONENT:
        raise OverflowError("exponent overflow")
    return out


def format_monomial(exps: Exponents, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` is strictly descending in lex order."""

    __slots__ = ("context", "terms", "_hash")

    def __init__(self, context: VariableContext, terms: tuple = ()):
        # callers guarantee canonical form; use from_dict for arbitrary input
        self.context = context
        self.terms = terms
        self._hash = None

    @classmethod
    def from_dict(cls, context: VariableContext, coeffs: Mapping[Exponents, object]) -> Polynomial:
        items = []
        n = context.nvars
        for exps, c in coeffs.items():
            if c == 0:
                continue
            if len(exps) != n:
                raise ValueError("exponent vector length does not match the context")
            if min(exps, default=0) < 0:
                raise ValueError("negative exponent")
            if max(exps, default=0) > MAX_EXPONENT:
                raise OverflowError("exponent overflow")
            items.append((tuple(exps), as_rational(c)))
        items.sort(reverse=True, key=lambda t: t[0])
        return cls(context, tuple(items))

    @classmethod
    def from_terms(cls, context: VariableContext, pairs: Iterable[tuple[object, Exponents]]) -> Polynomial:
        acc: dict[Exponents, Fraction] = {}
        for c, exps in pairs:
            exps = tuple(exps)
            acc[exps] = acc.get(exps, Fraction(0)) + as_rational(c)
        return cls.from_dict(context, acc)

    def to_dict(self) -> dict[Exponents, Fraction]:
        return dict(self.terms)

    # -- basic queries ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(self.terms[0][0]))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms[0][1] if self.terms else Fraction(0)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return Monomial(self.context, self.terms[0][0])

    def leading_coefficient(self) -> Fraction:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0][1]

    def support(self) -> set[int]:
        """Indices of variables that occur."""
        used = set()
        for exps, _ in self.terms:
            used.update(i for i, e in enumerate(exps) if e)
        return used

    def variables_used(self) -> set[str]:
        names = self.context.variables
        return {names[i] for i in self.support()}

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e, _ in self.terms)
        i = self.context.index(var)
        return max(e[i] for e, _ in self.terms)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            _check_same(self.context, other.context)
            return other
        return self.context.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self.terms)
        for e, c in other.terms:
            v = acc.get(e)
            if v is None:
                acc[e] = c
            else:
                v += c
                if v:
                    acc[e] = v
                else:
                    del acc[e]
        return _from_clean_dict(self.context, acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.context, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_rational(other)
            if c == 0:
                return self.context.zero()
            return Polynomial(self.context, tuple((e, v * c) for e, v in self.terms))
        _check_same(self.context, other.context)
        if not self.terms or not other.terms:
            return self.context.zero()
        _check_degree_sum(self, other)
        acc: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return _from_clean_dict(self.context, {e: c for e, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.context.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_term(self, coeff: Fraction, exps: Exponents) -> Polynomial:
        """Multiply by a single term; order is preserved because lex is multiplicative."""
        if coeff == 0:
            return self.context.zero()
        return Polynomial(self.context, tuple((_mono_mul(e, exps), c * coeff) for e, c in self.terms))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.context == other.context and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.context, self.terms))
        return self._hash

    # -- conversions -----------------------------------------------------

    def embed(self, context: VariableContext) -> Polynomial:
        """Re-express in another context by variable name; every used variable must exist there."""
        if context == self.context:
            return self
        src = self.context.variables
        used = self.support()
        mapping = []
        for i, name in enumerate(src):
            if name in context.variables:
                mapping.append((i, context.index(name)))
            elif i in used:
                raise ContextMismatch(f"variable {name!r} does not exist in [{context}]")
        n = context.nvars
        acc = {}
        for e, c in self.terms:
            out = [0] * n
            for i, j in mapping:
                out[j] = e[i]
            acc[tuple(out)] = c
        return Polynomial.from_dict(context, acc)

    def primitive(self) -> Polynomial:
        """Scale to integer coefficients with content 1 and positive leading coefficient."""
        if not self.terms:
            return self
        from parcont.arith import content, lcm_of_denominators

        coeffs = [c for _, c in self.terms]
        den = lcm_of_denominators(coeffs)
        ints = [int(c * den) for c in coeffs]
        g = content(ints)
        if ints[0] < 0:
            g = -g
        return Polynomial(self.context, tuple((e, Fraction(v // g)) for (e, _), v in zip(self.terms, ints)))

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        return self * (1 / self.terms[0][1])

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _from_clean_dict(context, acc) -> Polynomial:
    return Polynomial(context, tuple(sorted(acc.items(), reverse=True, key=lambda t: t[0])))


def _check_degree_sum(f: Polynomial, g: Polynomial):
    n = f.context.nvars
    for i in range(n):
        if max(e[i] for e, _ in f.terms) + max(e[i] for e, _ in g.terms) > MAX_EXPONENT:
            raise OverflowError("exponent overflow")


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    names = f.context.variables
    out = []
    for k, (e, c) in enumerate(f.terms):
        mono = format_monomial(e, names)
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


# ---------------------------------------------------------------------------
# operations on polynomials


def leading_term(f: Polynomial) -> Term:
    return Term(f.leading_coefficient(), f.leading_monomial())


def block_leading_coefficient(f: Polynomial, block: Iterable[str] | None = None) -> tuple[Monomial, Polynomial]:
    """Split off the lex-greatest block part of ``f``.

    ``block`` must be a prefix of the variable order (by default the
    ``{y} + x`` block).  Returns ``(m, c)`` with ``m`` the greatest block
    monomial appearing in ``f`` and ``c`` the polynomial in the remaining
    variables multiplying it, so every term of ``f - c*m`` has a strictly
    smaller block part.  ``c`` is expressed in the same context as ``f``.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no leading term")
    ctx = f.context
    if block is None:
        nb = ctx.n_block
    else:
        names = set(block)
        nb = len(names)
        if set(ctx.variables[:nb]) != names:
            raise ValueError(f"block {sorted(names)} is not a leading segment of [{ctx}]")
    head = f.terms[0][0][:nb]
    coeff_terms = []
    for e, c in f.terms:
        if e[:nb] != head:
            break
        coeff_terms.append(((0,) * nb + e[nb:], c))
    mono = Monomial(ctx, head + (0,) * (ctx.nvars - nb))
    return mono, Polynomial(ctx, tuple(coeff_terms))


def divide(f: Polynomial, divisors: Sequence[Polynomial]) -> tuple[list[Polynomial], Polynomial]:
    """Multivariate division: ``f = sum(q_i * g_i) + r``.

    The leading term of the running dividend is reduced first, trying the
    divisors in list order; terms no divisor leading term divides move to
    the remainder.
    """
    ctx = f.context
    for g in divisors:
        _check_same(ctx, g.context)
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
    leads = [(g.terms[0][0], g.terms[0][1]) for g in divisors]
    quotients: list[dict] = [{} for _ in divisors]
    remainder: dict[Exponents, Fraction] = {}
    p = dict(f.terms)
    while p:
        lm = max(p)
        lc = p[lm]
        for i, (gm, gc) in enumerate(leads):
            if all(a >= b for a, b in zip(lm, gm)):
                shift = tuple(a - b for a, b in zip(lm, gm))
                factor = lc / gc
                quotients[i][shift] = quotients[i].get(shift, 0) + factor
                for e, c in divisors[i].terms:
                    e2 = tuple(a + b for a, b in zip(e, shift))
                    v = p.get(e2, 0) - factor * c
                    if v:
                        p[e2] = v
                    else:
                        p.pop(e2, None)
                break
        else:
            remainder[lm] = lc
            del p[lm]
    qs = [Polynomial.from_dict(ctx, q) for q in quotients]
    return qs, Polynomial.from_dict(ctx, remainder)


def partial_derivative(f: Polynomial, var: str) -> Polynomial:
    i = f.context.index(var)
    acc = {}
    for e, c in f.terms:
        if e[i]:
            e2 = e[:i] + (e[i] - 1,) + e[i + 1 :]
            acc[e2] = c * e[i]
    return _from_clean_dict(f.context, acc)


def evaluate_parameters(f: Polynomial, q: Mapping[str, object]) -> Polynomial:
    """Substitute values for every parameter; the result lives in ``context.x_only()``."""
    ctx = f.context
    missing = [p for p in ctx.p_vars if p not in q]
    if missing:
        raise KeyError(f"no value for parameter(s) {', '.join(missing)}")
    values = [as_rational(q[p]) for p in ctx.p_vars]
    nb = ctx.n_block
    target = ctx.x_only()
    acc: dict[Exponents, Fraction] = {}
    for e, c in f.terms:
        v = c
        for val, k in zip(values, e[nb:]):
            if k:
                v *= val**k
        if v:
            head = e[:nb]
            acc[head] = acc.get(head, 0) + v
    return Polynomial.from_dict(target, acc)


def evaluate(f: Polynomial, point: Mapping[str, object]) -> Fraction:
    """Exact value at a point assigning every variable of the context."""
    values = []
    for name in f.context.variables:
        if name not in point:
            raise KeyError(f"no value for variable {name!r}")
        values.append(as_rational(point[name]))
    total = Fraction(0)
    for e, c in f.terms:
        v = c
        for val, k in zip(values, e):
            if k:
                v *= val**k
        total += v
    return total
