import random

import pytest
from hypothesis import given, settings, strategies as st

from rswan.residue_algebra import Fq, RatFunc, FqPoly, parse_ratfunc, \
    PoleAtPoint
from rswan.forms import (
    Form1, Form2, TangentVec, d, dlog, wedge, contract, contract2, cartier,
    log_residue, psi, phi, psi_over_chart, phi_over_chart, logdiff_basis,
    hyperplane_residue, blowup_pullback, parse_form, form_to_str, is_closed,
    NotClosed, UnsupportedCoefficients, PoleOrderTooHigh, specialize_form,
)

F2 = Fq(2, 1)
F3 = Fq(3, 1)
F4 = Fq(2, 2)


def rf(s, ctx=F2, nvars=2):
    return parse_ratfunc(s, ctx, nvars)


@st.composite
def random_ratfunc(draw, allow_den=True):
    ctx = draw(st.sampled_from([F2, F3, F4]))
    n = draw(st.integers(2, 3))
    f = RatFunc.zero(ctx, n)
    for _ in range(draw(st.integers(1, 4))):
        exps = tuple(draw(st.integers(0, 3)) for _ in range(n))
        c = ctx.from_int(draw(st.integers(0, ctx.p - 1)))
        f = f + RatFunc(FqPoly.monomial(ctx, n, exps, c))
    if allow_den:
        g = RatFunc.zero(ctx, n)
        for _ in range(draw(st.integers(1, 2))):
            exps = tuple(draw(st.integers(0, 2)) for _ in range(n))
            g = g + RatFunc(FqPoly.monomial(ctx, n, exps, ctx.one()))
        if not g.is_zero():
            f = f / g
    return f


class TestDifferential:
    def test_product_rule_example(self):
        assert d(rf("x1*x2")) == parse_form("x2*dx1 + x1*dx2", F2, 2)

    def test_frobenius_kernel(self):
        assert d(rf("x1^2")).is_zero()

    @given(random_ratfunc())
    @settings(deadline=None, max_examples=40)
    def test_dd_zero(self, f):
        assert d(d(f)).is_zero()
        assert is_closed(d(f))

    @given(random_ratfunc(allow_den=False), random_ratfunc(allow_den=False))
    @settings(deadline=None, max_examples=40)
    def test_leibniz(self, a, b):
        if a.ctx != b.ctx or a.nvars != b.nvars:
            return
        assert d(a * b) == d(a).scale(b) + d(b).scale(a)

    @given(random_ratfunc(), random_ratfunc())
    @settings(deadline=None, max_examples=40)
    def test_dlog_multiplicative(self, a, b):
        if a.ctx != b.ctx or a.nvars != b.nvars:
            return
        if a.is_zero() or b.is_zero():
            return
        assert dlog(a * b) == dlog(a) + dlog(b)

    def test_wedge_alternating(self):
        b1 = parse_form("x1*dx1 + x2*dx2", F3, 2)
        b2 = parse_form("dx1 + x1*dx2", F3, 2)
        assert wedge(b1, b2) == -wedge(b2, b1)
        assert wedge(b1, b1).is_zero()


class TestContraction:
    def test_values(self):
        P0 = (F2.zero(), F2.zero())
        v = TangentVec(F2, (1, 0))
        w = TangentVec(F2, (0, 1))
        beta = parse_form("dx1", F2, 2)
        assert contract(beta, P0, v) == F2.one()
        al = parse_form("dx1^dx2", F2, 2)
        assert contract2(al, P0, v, v) == F2.zero()
        assert contract2(al, P0, v, w) == F2.one()

    def test_linearity(self):
        P0 = (F3.one(), F3.from_int(2))
        beta = parse_form("x1*dx1 + dx2", F3, 2)
        for c1 in range(3):
            for c2 in range(3):
                v = TangentVec(F3, (c1, c2))
                total = F3.from_int(c1) * contract(beta, P0,
                                                   TangentVec(F3, (1, 0))) \
                    + F3.from_int(c2) * contract(beta, P0,
                                                 TangentVec(F3, (0, 1)))
                assert contract(beta, P0, v) == total

    def test_pole(self):
        bad = Form1(F2, 2, (rf("1/x1"), rf("0")))
        with pytest.raises(PoleAtPoint):
            contract(bad, (F2.zero(), F2.zero()), TangentVec(F2, (1, 0)))


class TestCartier:
    def test_exact_killed(self):
        assert cartier(parse_form("dx1", F2, 2)).is_zero()

    def test_values(self):
        assert cartier(parse_form("x1*dx1", F2, 2)) == parse_form("dx1",
                                                                  F2, 2)
        assert cartier(dlog(rf("x1"))) == dlog(rf("x1"))
        assert cartier(parse_form("x1^2*dx1", F3, 2)) == parse_form("dx1",
                                                                    F3, 2)
        om2 = parse_form("x1*x2*dx1^dx2", F2, 2)
        assert cartier(om2) == parse_form("dx1^dx2", F2, 2)

    def test_p_linearity(self):
        f = rf("x1*x2 + x2", F2, 2)
        om = parse_form("x1*dx1", F2, 2)
        assert cartier(om.scale(f * f)) == cartier(om).scale(f)

    def test_not_closed(self):
        with pytest.raises(NotClosed):
            cartier(parse_form("x2*dx1", F2, 2))

    def test_unsupported(self):
        with pytest.raises((UnsupportedCoefficients, NotClosed)):
            cartier(Form1(F2, 2, (rf("1/(x1+x2)"), rf("0"))))


class TestResidues:
    def test_log_residue_values(self):
        assert log_residue(parse_form("dx2", F2, 2), 1).is_zero()
        om = Form1(F2, 2, (rf("x2") / rf("x1"), rf("0")))
        assert log_residue(om, 1) == rf("x2")
        om2 = Form2(F2, 2, {(1, 2): rf("x2/x1")})
        assert log_residue(om2, 1) == Form1(F2, 2, (rf("0"), -rf("x2")))

    def test_pole_too_high(self):
        with pytest.raises(PoleOrderTooHigh):
            log_residue(Form1(F2, 2, (rf("1/x1^2"), rf("0"))), 1)

    def test_hyperplane_residues(self):
        b = logdiff_basis(F3, "one-logH", 2)
        assert hyperplane_residue(b[0], 1) == -rf("1", F3, 2)
        assert hyperplane_residue(b[1], 1) == -rf("x2", F3, 2)
        t = logdiff_basis(F3, "two-2H-logH", 2)[0]
        assert hyperplane_residue(t, 2) == parse_form("dx2", F3, 2)


class TestLogdiffBases:
    def test_dimensions(self):
        for ctx in (F2, F3, F4):
            for n in (1, 2, 3, 4):
                assert len(logdiff_basis(ctx, "one-logH", n)) == n
                assert len(logdiff_basis(ctx, "one-2H", n)) \
                    == n * (n + 1) // 2
                assert len(logdiff_basis(ctx, "two-2H-logH", n)) \
                    == n * (n - 1) // 2

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            logdiff_basis(F2, "nope", 2)


class TestBlowup:
    def test_simple_residues(self):
        order, res = blowup_pullback(parse_form("dx1", F3, 2))
        assert order == 1 and res == rf("1", F3, 2)
        order, res = blowup_pullback(parse_form("dx2", F3, 2))
        assert order == 1 and res == rf("x2", F3, 2)
        order, res = blowup_pullback(parse_form("-dx1^dx2", F3, 2))
        assert order == 2 and res == parse_form("dx2", F3, 2)

    def test_residue_is_psi_phi(self):
        rnd = random.Random(11)
        for _ in range(25):
            ctx = rnd.choice([F2, F3, F4])
            m = rnd.randint(2, 3)
            coeffs = []
            for i in range(m):
                f = RatFunc.zero(ctx, m)
                for _ in range(3):
                    exps = tuple(rnd.randint(0, 2) for _ in range(m))
                    f = f + RatFunc(FqPoly.monomial(
                        ctx, m, exps, ctx.from_int(rnd.randint(0,
                                                               ctx.p - 1))))
                coeffs.append(f)
            beta = Form1(ctx, m, coeffs)
            origin = tuple(ctx.zero() for _ in range(m))
            _, res = blowup_pullback(beta)
            assert res == psi_over_chart(ctx, m,
                                         specialize_form(beta, origin))
            al = Form2(ctx, m, {(1, 2): coeffs[0],
                                (min(2, m - 1), m): coeffs[1]})
            _, res2 = blowup_pullback(al)
            assert res2 == phi_over_chart(ctx, m,
                                          specialize_form(al, origin))

    def test_translate(self):
        beta = parse_form("x1*dx1 + x2*dx2", F3, 2)
        pt = (F3.from_int(1), F3.from_int(2))
        _, res = blowup_pullback(beta, translate_to=pt)
        assert res == psi_over_chart(
            F3, 2, tuple(c.eval_at(pt) for c in beta.coeffs))


class TestPsiPhi:
    def test_psi(self):
        lin = psi(F3, 2, (F3.from_int(1), F3.from_int(2)))
        assert lin == FqPoly.var(F3, 2, 0) \
            + FqPoly.var(F3, 2, 1) * F3.from_int(2)

    def test_phi(self):
        ph = phi(F3, 2, {(1, 2): F3.one()})
        assert ph == parse_form("x2*dx1 + 2*x1*dx2", F3, 2)


class TestParsing:
    def test_roundtrip(self):
        for s in ("dx1", "x1*dx2", "(x1+x2)*dx1 + dx2", "x1*dx1^dx2",
                  "(1/x1)*dx1 + x2*dx2"):
            omg = parse_form(s, F3, 2)
            assert parse_form(form_to_str(omg), F3, 2) == omg
