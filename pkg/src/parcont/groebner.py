"""Reduced lex Groebner bases by Buchberger's algorithm.

The engine works on primitive integer polynomials stored as
``{exponents: int}`` dicts; reduction is fraction-free with periodic content
removal.  Over Q this spans the same ideal, and the final basis is scaled
canonically: integer coefficients, content 1, positive leading coefficient,
elements sorted by leading monomial ascending.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from operator import add, sub
from typing import Iterable, Sequence

from parcont.arith import content
from parcont.poly import ContextMismatch, Exponents, Polynomial, VariableContext, _check_same

# content is stripped from the running dividend after this many reduction steps
_CONTENT_EVERY = 8


@dataclass(frozen=True)
class GroebnerBasis:
    context: VariableContext
    elements: tuple[Polynomial, ...]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    @property
    def lex_with_aux(self) -> bool:
        return self.context.has_aux

    def leading_exponents(self) -> list[Exponents]:
        return [g.terms[0][0] for g in self.elements]

    def is_one(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def as_strings(self) -> list[str]:
        return [str(g) for g in self.elements]

    def __str__(self):
        return "{" + ", ".join(self.as_strings()) + "}"


# ---------------------------------------------------------------------------
# integer kernel


def _to_int(f: Polynomial) -> dict[Exponents, int]:
    return {e: int(c) for e, c in f.primitive().terms}


def _primitive_dict(p: dict[Exponents, int]) -> dict[Exponents, int]:
    if not p:
        return p
    g = content(p.values())
    if p[max(p)] < 0:
        g = -g
    if g == 1:
        return p
    return {e: c // g for e, c in p.items()}


def _is_const(p) -> bool:
    return len(p) == 1 and not any(next(iter(p)))


def _divides(a: Exponents, b: Exponents) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: Exponents, b: Exponents) -> Exponents:
    return tuple(map(max, a, b))


class _Elem:
    __slots__ = ("lm", "lc", "terms")

    def __init__(self, p: dict[Exponents, int]):
        self.terms = sorted(p.items(), reverse=True)
        self.lm, self.lc = self.terms[0]

    def as_dict(self):
        return dict(self.terms)


def _reduce(p: dict[Exponents, int], reducers: Sequence[_Elem], full: bool = True):
    """Fraction-free reduction of ``p`` by ``reducers``.

    Returns ``(r, scale)`` where ``r`` is the remainder and ``scale`` the
    rational with ``r = scale * (remainder of p by the monic reducers)``.
    With ``full=False`` only the leading term is reduced repeatedly.
    """
    p = dict(p)
    rem: dict[Exponents, int] = {}
    num, den = 1, 1
    steps = 0
    while p:
        m = max(p)
        c = p[m]
        red = None
        for g in reducers:
            if _divides(g.lm, m):
                red = g
                break
        if red is None:
            if not full:
                rem.update(p)
                break
            rem[m] = c
            del p[m]
            continue
        gc = red.lc
        k = gcd(c, gc)
        a, b = gc // k, c // k
        if gc < 0:
            a, b = -a, -b
        if a != 1:
            for e in p:
                p[e] *= a
            for e in rem:
                rem[e] *= a
            num *= a
        shift = tuple(map(sub, m, red.lm))
        for e, v in red.terms:
            e2 = tuple(map(add, e, shift))
            nv = p.get(e2, 0) - b * v
            if nv:
                p[e2] = nv
            else:
                p.pop(e2, None)
        steps += 1
        if steps % _CONTENT_EVERY == 0 and p:
            d = gcd(content(p.values()), content(rem.values()))
            if d > 1:
                for e in p:
                    p[e] //= d
                for e in rem:
                    rem[e] //= d
                den *= d
    return rem, Fraction(num, den)


def _spoly(f: _Elem, g: _Elem) -> dict[Exponents, int]:
    m = _lcm(f.lm, g.lm)
    k = gcd(f.lc, g.lc)
    a, b = g.lc // k, f.lc // k
    sf = tuple(map(sub, m, f.lm))
    sg = tuple(map(sub, m, g.lm))
    out: dict[Exponents, int] = {}
    for e, v in f.terms[1:]:
        out[tuple(map(add, e, sf))] = a * v
    for e, v in g.terms[1:]:
        e2 = tuple(map(add, e, sg))
        nv = out.get(e2, 0) - b * v
        if nv:
            out[e2] = nv
        else:
            out.pop(e2, None)
    return out


def _update(polys: list[_Elem], active: list[int], pairs: list[tuple], h: int):
    """Gebauer-Moeller installation of element ``h``: both Buchberger criteria."""
    hm = polys[h].lm
    cand = [(i, _lcm(polys[i].lm, hm)) for i in active]
    kept = []
    for idx, (i, m) in enumerate(cand):
        coprime = all(not (x and y) for x, y in zip(polys[i].lm, hm))
        if coprime:
            kept.append((i, m, True))
            continue
        dominated = False
        for j, (i2, m2) in enumerate(cand):
            if j == idx:
                continue
            # strict divisibility, or equal lcm with an earlier representative
            if _divides(m2, m) and (m2 != m or j < idx):
                dominated = True
                break
        if not dominated:
            kept.append((i, m, False))
    new_pairs = [(m, i, h) for i, m, coprime in kept if not coprime]
    survivors = []
    for m, i, j in pairs:
        if _divides(hm, m) and _lcm(polys[i].lm, hm) != m and _lcm(polys[j].lm, hm) != m:
            continue
        survivors.append((m, i, j))
    pairs[:] = survivors + new_pairs
    active[:] = [i for i in active if not _divides(hm, polys[i].lm)] + [h]


def _buchberger_int(gens: list[dict[Exponents, int]]) -> list[dict[Exponents, int]]:
    polys: list[_Elem] = []
    active: list[int] = []
    pairs: list[tuple] = []

    def install(p):
        polys.append(_Elem(p))
        _update(polys, active, pairs, len(polys) - 1)

    for f in sorted(gens, key=lambda d: max(d)):
        r, _ = _reduce(f, [polys[i] for i in active])
        r = _primitive_dict(r)
        if r:
            if _is_const(r):
                return [{next(iter(r)): 1}]
            install(r)
    while pairs:
        best = min(range(len(pairs)), key=lambda k: pairs[k])
        m, i, j = pairs.pop(best)
        s = _spoly(polys[i], polys[j])
        if not s:
            continue
        r, _ = _reduce(s, [polys[k] for k in active])
        r = _primitive_dict(r)
        if r:
            if _is_const(r):
                return [{next(iter(r)): 1}]
            install(r)
    return _interreduce([polys[i] for i in active])


def _interreduce(elems: list[_Elem]) -> list[dict[Exponents, int]]:
    elems = sorted(elems, key=lambda g: g.lm)
    minimal = []
    for g in elems:
        if not any(_divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        r, _ = _reduce(g.as_dict(), others)
        out.append(_primitive_dict(r))
    return out


def _from_int(ctx: VariableContext, p: dict[Exponents, int]) -> Polynomial:
    return Polynomial(ctx, tuple((e, Fraction(c)) for e, c in sorted(p.items(), reverse=True)))


# ---------------------------------------------------------------------------
# public operations


def canonical(f: Polynomial) -> Polynomial:
    """Integer coefficients, content 1, positive leading coefficient."""
    return f.primitive()


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """``(L/LT(f))*f - (L/LT(g))*g`` with ``L`` the lcm of the leading monomials."""
    _check_same(f.context, g.context)
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of the zero polynomial")
    (fm, fc), (gm, gc) = f.terms[0], g.terms[0]
    m = _lcm(fm, gm)
    return f.mul_term(1 / fc, tuple(map(sub, m, fm))) - g.mul_term(1 / gc, tuple(map(sub, m, gm)))


def buchberger(generators: Iterable[Polynomial]) -> GroebnerBasis:
    """Reduced lex Groebner basis of the ideal generated by ``generators``."""
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    ctx = gens[0].context
    for g in gens[1:]:
        _check_same(ctx, g.context)
    ints = [_to_int(g) for g in gens if not g.is_zero()]
    if not ints:
        return GroebnerBasis(ctx, ())
    basis = _buchberger_int(ints)
    elements = tuple(_from_int(ctx, p) for p in sorted(basis, key=max))
    return GroebnerBasis(ctx, elements)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of ``f`` on division by ``G`` over Q; zero exactly for ideal members."""
    _check_same(f.context, G.context)
    if f.is_zero():
        return f
    if not G.elements:
        return f
    reducers = [_Elem(_to_int(g)) for g in G.elements]
    den = 1
    for _, c in f.terms:
        den = den * c.denominator // gcd(den, c.denominator)
    r, scale = _reduce({e: int(c * den) for e, c in f.terms}, reducers)
    factor = 1 / (scale * den)
    return Polynomial(f.context, tuple((e, c * factor) for e, c in sorted(r.items(), reverse=True)))


def reduces_to_zero(f: Polynomial, G: GroebnerBasis) -> bool:
    return normal_form(f, G).is_zero()


def contains_one(G: GroebnerBasis) -> bool:
    return G.is_one()


def intersect_with_subring(G: GroebnerBasis, keep: Iterable[str]) -> GroebnerBasis:
    """Elements of ``G`` that only involve ``keep``, re-expressed in the smaller ring.

    ``keep`` has to be a trailing segment of the variable order; lex then
    guarantees the result is a Groebner basis of the elimination ideal.
    """
    ctx = G.context
    keep = set(keep)
    names = ctx.variables
    n_keep = len(keep)
    if keep - set(names) or set(names[len(names) - n_keep :]) != keep:
        raise ValueError(f"{sorted(keep)} is not a trailing segment of [{ctx}]")
    if n_keep == len(names):
        return G
    sub_ctx = _tail_context(ctx, n_keep)
    dropped = len(names) - n_keep
    out = []
    for g in G.elements:
        if all(not any(e[:dropped]) for e, _ in g.terms):
            out.append(Polynomial(sub_ctx, tuple((e[dropped:], c) for e, c in g.terms)))
    return GroebnerBasis(sub_ctx, tuple(out))


def _tail_context(ctx: VariableContext, n_keep: int) -> VariableContext:
    n_p = len(ctx.p_vars)
    if n_keep <= n_p:
        return VariableContext((), ctx.p_vars[n_p - n_keep :])
    n_x = n_keep - n_p
    return VariableContext(ctx.x_vars[len(ctx.x_vars) - n_x :], ctx.p_vars)


def s_pairs_reduce_to_zero(G: GroebnerBasis) -> bool:
    """Buchberger's criterion checked directly on every pair."""
    els = G.elements
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            if not normal_form(s_polynomial(els[i], els[j]), G).is_zero():
                return False
    return True


def is_reduced(G: GroebnerBasis) -> bool:
    leads = G.leading_exponents()
    for i, g in enumerate(G.elements):
        if g != canonical(g):
            return False
        for j, lm in enumerate(leads):
            if i != j and any(_divides(lm, e) for e, _ in g.terms):
                return False
    return leads == sorted(leads)


__all__ = [
    "ContextMismatch",
    "GroebnerBasis",
    "buchberger",
    "canonical",
    "contains_one",
    "intersect_with_subring",
    "is_reduced",
    "normal_form",
    "reduces_to_zero",
    "s_pairs_reduce_to_zero",
    "s_polynomial",
]
