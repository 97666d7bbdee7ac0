"""Hypothesis strategies for small polynomials."""

from fractions import Fraction

from hypothesis import strategies as st

from parcont.poly import Polynomial, VariableContext

CTX3 = VariableContext(("x", "z"), ("a",))

small_rationals = st.builds(
    Fraction, st.integers(-20, 20), st.integers(1, 6)
)
nonzero_rationals = small_rationals.filter(lambda r: r != 0)


def exponents(ctx, max_deg=3):
    return st.tuples(*[st.integers(0, max_deg) for _ in range(ctx.nvars)])


def monomials(ctx, max_deg=3):
    return exponents(ctx, max_deg)


def polynomials(ctx=CTX3, max_terms=5, max_deg=3, coeffs=small_rationals):
    return st.dictionaries(exponents(ctx, max_deg), coeffs, max_size=max_terms).map(
        lambda d: Polynomial.from_dict(ctx, d)
    )


def nonzero_polynomials(ctx=CTX3, **kw):
    return polynomials(ctx, **kw).filter(lambda p: not p.is_zero())
