from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rswan.residue_algebra import (
    Fq, FqPoly, RatFunc, parse_ratfunc, ratfunc_to_str, trace_to_prime,
    artin_schreier_inv, embed_fq, poly_gcd, irreducible_poly, ExprError,
    PoleAtPoint,
)


CTXS = [Fq(2, 1), Fq(2, 2), Fq(3, 1), Fq(3, 2)]


ctx_st = st.sampled_from(CTXS)


@st.composite
def ctx_and_elems(draw, count=2):
    ctx = draw(ctx_st)
    elems = [ctx.elem(tuple(draw(st.integers(0, ctx.p - 1))
                            for _ in range(ctx.f)))
             for _ in range(count)]
    return (ctx, *elems)


@st.composite
def ctx_and_polys(draw, count=2, nvars=2):
    ctx = draw(ctx_st)
    polys = []
    for _ in range(count):
        terms = {}
        for _ in range(draw(st.integers(0, 3))):
            exps = tuple(draw(st.integers(0, 2)) for _ in range(nvars))
            c = ctx.elem(tuple(draw(st.integers(0, ctx.p - 1))
                               for _ in range(ctx.f)))
            if not c.is_zero():
                terms[exps] = c
        polys.append(FqPoly(ctx, nvars, terms))
    return (ctx, *polys)


class TestFqField:
    def test_sizes_and_frobenius(self):
        for ctx in CTXS:
            q = ctx.p ** ctx.f
            elems = ctx.elements()
            assert len(elems) == q
            assert len(set(elems)) == q
            for a in elems:
                assert a ** q == a

    @given(ctx_and_elems(3))
    @settings(deadline=None)
    def test_ring_axioms(self, data):
        ctx, a, b, c = data
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c)

    @given(ctx_and_elems(1))
    @settings(deadline=None)
    def test_inverse(self, data):
        ctx, a = data
        if a.is_zero():
            with pytest.raises(ZeroDivisionError):
                ctx.one() / a
        else:
            assert a * (ctx.one() / a) == ctx.one()

    def test_irreducible_poly(self):
        # returns the lower coefficients of a monic degree-f polynomial
        for p, f in ((2, 2), (2, 3), (3, 2), (5, 2)):
            lower = irreducible_poly(p, f)
            assert len(lower) == f
            assert all(0 <= c < p for c in lower)
            assert lower[0] != 0

    @given(ctx_and_elems(2))
    @settings(deadline=None)
    def test_trace_additive(self, data):
        ctx, a, b = data
        assert trace_to_prime(a + b) == (trace_to_prime(a)
                                         + trace_to_prime(b)) % ctx.p

    def test_trace_surjective(self):
        for ctx in CTXS:
            assert {trace_to_prime(a) for a in ctx.elements()} \
                == set(range(ctx.p))

    @given(ctx_and_elems(2))
    @settings(deadline=None)
    def test_artin_schreier_inv(self, data):
        ctx, a, b = data
        v = artin_schreier_inv(a)
        assert 0 <= v < 1 and v.denominator in (1, ctx.p)
        assert artin_schreier_inv(a + b) == (v + artin_schreier_inv(b)) % 1
        # invariance under the Artin-Schreier map x -> x^p - x
        assert artin_schreier_inv(a + (b ** ctx.p - b)) == v

    def test_embed_is_homomorphism(self):
        small, big = Fq(2, 1), Fq(2, 2)
        for a in small.elements():
            for b in small.elements():
                assert embed_fq(a + b, big) == \
                    embed_fq(a, big) + embed_fq(b, big)
                assert embed_fq(a * b, big) == \
                    embed_fq(a, big) * embed_fq(b, big)
        assert embed_fq(small.one(), big) == big.one()


class TestRatFunc:
    @given(ctx_and_polys(2))
    @settings(deadline=None)
    def test_mul_div_cancel(self, data):
        ctx, f, g = data
        if f.is_zero() or g.is_zero():
            return
        rf = RatFunc(f)
        rg = RatFunc(g)
        assert (rf / rg) * rg == rf

    @given(ctx_and_polys(3))
    @settings(deadline=None)
    def test_distributive(self, data):
        ctx, f, g, h = data
        if h.is_zero():
            return
        a, b, c = RatFunc(f), RatFunc(g), RatFunc(h)
        assert (a + b) * c == a * c + b * c
        assert (a + b) / c == a / c + b / c

    @given(ctx_and_polys(2))
    @settings(deadline=None)
    def test_print_parse_roundtrip(self, data):
        ctx, f, g = data
        if g.is_zero():
            return
        r = RatFunc(f, g)
        assert parse_ratfunc(ratfunc_to_str(r), ctx, 2) == r

    @given(ctx_and_polys(2))
    @settings(deadline=None)
    def test_gcd_divides(self, data):
        ctx, f, g = data
        if f.is_zero() or g.is_zero():
            return
        d = poly_gcd(f, g)
        for h in (f, g):
            q = RatFunc(h) / RatFunc(d)
            assert q.den.is_constant()

    def test_eval_and_pole(self):
        ctx = Fq(2, 1)
        r = parse_ratfunc("(1+x1)/x2", ctx, 2)
        assert r.eval_at((ctx.zero(), ctx.one())) == ctx.one()
        with pytest.raises(PoleAtPoint):
            r.eval_at((ctx.one(), ctx.zero()))

    def test_parse_errors(self):
        ctx = Fq(2, 1)
        for bad in ("x3", "1+", "x1**2", ")("):
            with pytest.raises(ExprError):
                parse_ratfunc(bad, ctx, 2)

    def test_canonical_form(self):
        ctx = Fq(3, 1)
        a = parse_ratfunc("(x1^2 + 2*x2^2)/(x1 + x2)", ctx, 2)
        b = parse_ratfunc("(2*x1^2 + x2^2)/(2*x1 + 2*x2)", ctx, 2)
        assert a == b
