"""End-to-end acceptance checks.

Each test covers one acceptance criterion and emits exactly one
"[PASS] ..." / "[FAIL] ..." line describing it.
"""

import random
import time
from fractions import Fraction

from rswan.residue_algebra import (
    Fq, FqPoly, RatFunc, parse_ratfunc, trace_to_prime, artin_schreier_inv,
)
from rswan.forms import (
    Form1, Form2, TangentVec, parse_form, d, is_closed, contract,
    logdiff_basis, hyperplane_residue, blowup_pullback, psi_over_chart,
    phi_over_chart, specialize_form,
)
from rswan.local_field import field_from_descriptor
from rswan.brauer import (
    BrauerClass, SymbolTerm, KRatFunc, specialize, invariant, hilbert2,
    norm_triviality,
)
from rswan.swan import (
    RefinedSwan, UnitUnit, UnitPi, XPi, XY, rsw_of_symbol, symbol_class,
    construct_with_rsw, multiply_by_p_rsw, multiply_class_by_p, rsw_of_class,
    blowup_descend, kummer_conductor,
)
from rswan.disc_lab import (
    Point, sweep, surjectivity_probe, empirical_filtration, sample_centers,
)
from conftest import named_field

F2 = Fq(2, 1)
F3 = Fq(3, 1)


def report(name, failures):
    line = "[%s] %s" % ("FAIL" if failures else "PASS", name)
    if failures:
        line += " -- " + "; ".join(str(f) for f in failures[:5])
    print(line)
    assert not failures, line


def test_criterion_1_exact_sweeps_p2():
    """>= 20 classes over the 2-adic fields: sweep entries are exactly
    (1/2) Tr(beta_{P_0}(v))."""
    t0 = time.time()
    Q2 = named_field("Q2")
    Q2i = named_field("Q2i")
    Fi = Q2i.residue
    cases = []
    for field in (Q2, Q2i):
        levels = [1] if field is Q2 else [1, 2, 3]
        for n in levels:
            cases.append((field, construct_with_rsw(
                parse_form("dx1", field.residue, 1), n, 0, field),
                RefinedSwan(n, Form2.zero(field.residue, 1),
                            parse_form("dx1", field.residue, 1)), [1]))
            for btxt in ("dx1", "dx2", "dx1+dx2"):
                beta = parse_form(btxt, field.residue, 2)
                cases.append((field, construct_with_rsw(beta, n, 0, field),
                              RefinedSwan(n, Form2.zero(field.residue, 2),
                                          beta), [1, 1]))
    shapes = [
        (Q2, UnitUnit(Q2, parse_ratfunc("x1", F2, 2),
                      parse_ratfunc("x2", F2, 2), 1), [1, 1]),
        (Q2, XPi(Q2, parse_ratfunc("x1", F2, 1)), [1]),
        (Q2i, XPi(Q2i, parse_ratfunc("x1", Fi, 1)), [1]),
        (Q2i, XY(Q2i, parse_ratfunc("x1", Fi, 2),
                 parse_ratfunc("x2", Fi, 2)), [1, 1]),
    ]
    for field, shape, center in shapes:
        cases.append((field, symbol_class(shape), rsw_of_symbol(shape),
                      center))
    failures = []
    if len(cases) < 20:
        failures.append("only %d cases" % len(cases))
    for field, A, rsw, center in cases:
        P = Point(field, center)
        table = sweep(A, P, rsw.n, rsw=rsw)
        if table.verdict != "MATCH":
            failures.append((field.descriptor(), rsw, table.verdict))
            continue
        P0 = P.reduce()
        for ent in table.entries:
            expect = Fraction(trace_to_prime(
                contract(rsw.beta, P0, ent.tangent)), 2) % 1
            if ent.inv.value != expect:
                failures.append((field.descriptor(), rsw, "entry"))
    elapsed = time.time() - t0
    if elapsed > 300:
        failures.append("too slow: %.1fs" % elapsed)
    report("exact linear sweeps over 2-adic fields (%d classes, %.1fs)"
           % (len(cases), elapsed), failures)


def test_criterion_2_kernel_sweeps_p3():
    """>= 10 classes over Q_3(zeta_3): triviality pattern of the sweep is
    exactly ker(Tr o beta_{P_0})."""
    t0 = time.time()
    Q3z = named_field("Q3z")
    ctx = Q3z.residue
    cases = []
    for n in (1, 2):
        cases.append((UnitPi(Q3z, parse_ratfunc("x1", ctx, 1), n), [1]))
        for xtxt in ("x1", "x2", "x1+x2", "x1+2*x2", "2*x1+x2"):
            cases.append((UnitPi(Q3z, parse_ratfunc(xtxt, ctx, 2), n),
                          [1, 1]))
    failures = []
    if len(cases) < 10:
        failures.append("only %d cases" % len(cases))
    for shape, center in cases:
        A = symbol_class(shape)
        rsw = rsw_of_symbol(shape)
        P = Point(Q3z, center)
        table = sweep(A, P, rsw.n, rsw=rsw)
        if table.verdict != "KERNEL-MATCH":
            failures.append((shape, table.verdict))
            continue
        P0 = P.reduce()
        for ent in table.entries:
            in_kernel = trace_to_prime(
                contract(rsw.beta, P0, ent.tangent)) == 0
            if ent.inv.is_zero() != in_kernel:
                failures.append((shape, "kernel mismatch"))
    elapsed = time.time() - t0
    if elapsed > 600:
        failures.append("too slow: %.1fs" % elapsed)
    report("kernel-level sweeps over the 3-adic cyclotomic field "
           "(%d classes, %.1fs)" % (len(cases), elapsed), failures)


def test_criterion_3_empirical_filtration():
    """The measured evaluation level equals the Swan level, with centers
    over the residue field and its quadratic extension; a constant class
    measures level 0."""
    failures = []
    Q2 = named_field("Q2")
    rng = random.Random(17)
    jobs = [
        (construct_with_rsw(parse_form("dx1", F2, 1), 1, 0, Q2), 1, 1),
        (construct_with_rsw(parse_form("dx1+dx2", F2, 2), 1, 0, Q2), 1, 2),
        (symbol_class(XPi(Q2, parse_ratfunc("x1", F2, 1))), 2, 1),
        (symbol_class(XPi(Q2, parse_ratfunc("x1*x2", F2, 2))), 2, 2),
        (symbol_class(UnitPi(Q2, parse_ratfunc("x1", F2, 1), 1)), 1, 1),
    ]
    for A, n, m in jobs:
        centers = sample_centers(Q2, m, 10, rng)
        degree_one = sum(1 for c in centers if c.field == Q2)
        if degree_one < 5 or len(centers) - degree_one < 5:
            failures.append("center split")
        rep = empirical_filtration(A, centers, n + 1)
        if rep.estimate != n or rep.verdict != "MATCH":
            failures.append((n, m, rep.estimate, rep.verdict))
        elif rep.witness_radius != n:
            failures.append((n, m, "witness"))
    A0 = BrauerClass(Q2, 1, [SymbolTerm(
        KRatFunc.const(Q2, 1, Q2.from_int(-1)),
        KRatFunc.const(Q2, 1, Q2.from_int(-1)), 2)])
    rep0 = empirical_filtration(A0, sample_centers(Q2, 1, 10, rng), 2)
    if rep0.estimate != 0:
        failures.append(("constant class", rep0.estimate))
    report("empirical evaluation filtration matches the Swan level",
           failures)


def test_criterion_4_surjectivity_probes():
    """Probes find p distinct values at radius n, and an order-p^2 class
    takes all four quarter values on the shrunk disc."""
    failures = []
    Q2 = named_field("Q2")
    Q2i = named_field("Q2i")
    A, rsw = (construct_with_rsw(parse_form("dx1", F2, 1), 1, 0, Q2),
              RefinedSwan(1, Form2.zero(F2, 1), parse_form("dx1", F2, 1)))
    rep = surjectivity_probe(A, Point(Q2, [1]), rsw, rng=random.Random(1))
    if rep.verdict != "MATCH" or len(rep.values) != 2:
        failures.append(("order 2", rep.verdict))
    ctx = Q2i.residue
    beta = parse_form("dx1", ctx, 1)
    A4 = construct_with_rsw(beta, 4, 1, Q2i)
    rsw4 = RefinedSwan(4, Form2.zero(ctx, 1), beta)
    rep4 = surjectivity_probe(A4, Point(Q2i, [1]), rsw4, t=1,
                              rng=random.Random(3), budget=150)
    if rep4.verdict != "MATCH" or sorted(rep4.values) != [
            Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]:
        failures.append(("order 4", rep4.verdict, rep4.values))
    sh = XY(Q2i, parse_ratfunc("x1", ctx, 2), parse_ratfunc("x2", ctx, 2))
    repb = surjectivity_probe(symbol_class(sh), Point(Q2i, [1, 1]),
                              rsw_of_symbol(sh), rng=random.Random(2))
    if repb.verdict != "MATCH":
        failures.append(("beta zero", repb.verdict))
    report("surjectivity probes (order p and order p^2)", failures)


def test_criterion_5_dbna_on_200_pairs():
    """The closedness/differential relation holds on >= 200 generated
    pairs."""
    rnd = random.Random(23)
    failures = []
    count = 0
    for _ in range(220):
        ctx = rnd.choice([F2, F3, Fq(2, 2)])
        m = rnd.randint(2, 3)
        n = rnd.choice([k for k in range(1, 7) if k % ctx.p])
        coeffs = []
        for _ in range(m):
            f = RatFunc.zero(ctx, m)
            for _ in range(2):
                exps = tuple(rnd.randint(0, 2) for _ in range(m))
                c = ctx.from_int(rnd.randint(0, ctx.p - 1))
                f = f + RatFunc(FqPoly.monomial(ctx, m, exps, c))
            coeffs.append(f)
        beta = Form1(ctx, m, coeffs)
        ninv = ctx.one() / ctx.from_int(n)
        alpha = d(beta).scale(RatFunc.const(ctx, m, ninv))
        r = RefinedSwan(n, alpha, beta)
        if not is_closed(r.alpha):
            failures.append("not closed")
        if d(r.beta) != r.alpha.scale(RatFunc.const(ctx, m,
                                                    ctx.from_int(n))):
            failures.append("relation")
        count += 1
    if count < 200:
        failures.append("only %d pairs" % count)
    report("closedness and differential relation on %d generated pairs"
           % count, failures)


def test_criterion_6_multiplication_by_p():
    """>= 10 order-p^2 classes: the pair of the expanded halved-order
    symbols equals the direct multiplication formula."""
    Q2i = named_field("Q2i")
    ctx = Q2i.residue
    failures = []
    count = 0
    for n in (4, 5):
        for btxt, m in (("dx1", 1), ("dx1+dx2", 2), ("dx2", 2), ("dx1", 2),
                        ("dx1+dx2+dx3", 3), ("dx3", 3)):
            beta = parse_form(btxt, ctx, m)
            C = construct_with_rsw(beta, n, 1, Q2i)
            r = RefinedSwan(n, Form2.zero(ctx, m), beta)
            lhs = rsw_of_class(multiply_class_by_p(C))
            rhs = multiply_by_p_rsw(r, Q2i)
            if (lhs.n, lhs.alpha, lhs.beta) != (rhs.n, rhs.alpha, rhs.beta):
                failures.append((n, btxt))
            count += 1
    if count < 10:
        failures.append("only %d classes" % count)
    report("multiplication by p on %d order-p^2 classes" % count, failures)


def test_criterion_7_global_forms_and_residues():
    """Dimension counts for the standard bases, the frozen hyperplane
    residues, and blowup residues equal to the linear/bilinear models on
    >= 50 random forms."""
    failures = []
    for ctx in (F2, F3, Fq(2, 2)):
        for n in (1, 2, 3, 4):
            dims = (len(logdiff_basis(ctx, "one-logH", n)),
                    len(logdiff_basis(ctx, "one-2H", n)),
                    len(logdiff_basis(ctx, "two-2H-logH", n)))
            if dims != (n, n * (n + 1) // 2, n * (n - 1) // 2):
                failures.append(("dims", ctx.p, ctx.f, n))
    # frozen residues in the chart X_1 = 1 with coordinates v_2..v_n
    b = logdiff_basis(F3, "one-logH", 2)
    if hyperplane_residue(b[0], 1) != -parse_ratfunc("1", F3, 2):
        failures.append("residue du1")
    if hyperplane_residue(b[1], 1) != -parse_ratfunc("x2", F3, 2):
        failures.append("residue du2")
    t = logdiff_basis(F3, "two-2H-logH", 2)[0]
    if hyperplane_residue(t, 2) != parse_form("dx2", F3, 2):
        failures.append("residue du1^du2")
    rnd = random.Random(29)
    count = 0
    for _ in range(30):
        ctx = rnd.choice([F2, F3, Fq(2, 2)])
        m = rnd.randint(2, 3)
        coeffs = []
        for _ in range(m):
            f = RatFunc.zero(ctx, m)
            for _ in range(3):
                exps = tuple(rnd.randint(0, 2) for _ in range(m))
                c = ctx.from_int(rnd.randint(0, ctx.p - 1))
                f = f + RatFunc(FqPoly.monomial(ctx, m, exps, c))
            coeffs.append(f)
        beta = Form1(ctx, m, coeffs)
        origin = tuple(ctx.zero() for _ in range(m))
        _, res = blowup_pullback(beta)
        if res != psi_over_chart(ctx, m, specialize_form(beta, origin)):
            failures.append("linear residue")
        al = Form2(ctx, m, {(1, 2): coeffs[0], (min(2, m - 1), m):
                            coeffs[1]})
        _, res2 = blowup_pullback(al)
        if res2 != phi_over_chart(ctx, m, specialize_form(al, origin)):
            failures.append("bilinear residue")
        count += 2
    if count < 50:
        failures.append("only %d forms" % count)
    report("global form bases, hyperplane residues, and %d blowup residues"
           % count, failures)


def test_criterion_8_blowup_descent_and_endgame():
    """Iterated descent (s <= 3) reproduces the closed-form coefficient
    pattern; the level-1 endgame residue reproduces the flagship sweep
    differences."""
    failures = []
    P0 = (F3.zero(), F3.zero())
    al = Form2(F3, 2, {(1, 2): parse_ratfunc("1", F3, 2)})
    cur = RefinedSwan(12, al, Form1.zero(F3, 2))
    for s in range(3):
        cur = blowup_descend(cur, P0, s=s)
        expect = Form1(F3, 2, (
            parse_ratfunc("%d*x2" % ((s + 1) % 3), F3, 2),
            parse_ratfunc("%d*x1" % ((-(s + 1)) % 3), F3, 2)))
        if cur.n != 12 - 2 * (s + 1) or cur.beta != expect:
            failures.append(("iteration", s))
    Q2 = named_field("Q2")
    beta = parse_form("dx1", F2, 1)
    A = construct_with_rsw(beta, 1, 0, Q2)
    rsw = RefinedSwan(1, Form2.zero(F2, 1), beta)
    P = Point(Q2, [1])
    eg = blowup_descend(rsw, P.reduce())
    table = sweep(A, P, 1, rsw=rsw)
    for ent in table.entries:
        lin = F2.zero()
        for c, v in zip(eg.coeffs, ent.tangent.components):
            lin = lin + c * v
        if artin_schreier_inv(lin, 2) != ent.inv.value:
            failures.append(("endgame", ent.tangent))
    report("iterated blowup descent and level-1 endgame residue", failures)


def test_criterion_9_kummer_conductor_grid():
    """The four conductor shapes on the full grid 0 < m < e' <= 6."""
    failures = []
    for name in ("Q2", "Q2i", "Q2c"):
        field = named_field(name)
        ep = field.eprime
        if kummer_conductor(field.pi()) != ep + 1:
            failures.append((name, "pi"))
        if kummer_conductor(parse_kratfunc_local("u1", field)) != ep:
            failures.append((name, "unit"))
        for mm in range(1, ep):
            a = parse_kratfunc_local("1+u1*pi^%d" % mm, field)
            expect = ep + 1 - mm if mm % 2 else ep - mm
            got = kummer_conductor(a)
            if got != expect:
                failures.append((name, mm, got, expect))
    report("Kummer conductor shapes on the grid e' <= 6", failures)


def parse_kratfunc_local(text, field):
    from rswan.brauer import parse_kratfunc
    return parse_kratfunc(text, field, 1)


def test_criterion_10_symbol_oracle():
    """The 2-adic symbol against the exhaustive closed-form classification,
    >= 500 structural property checks, and the norm oracle's accept/reject
    behaviour."""
    failures = []
    Q2 = named_field("Q2")

    def classical(a, b):
        def split(n):
            i = 0
            while n % 2 == 0:
                n //= 2
                i += 1
            return i, n
        i, u = split(a)
        j, v = split(b)
        exp = (((u - 1) // 2) * ((v - 1) // 2)
               + i * ((v * v - 1) // 8) + j * ((u * u - 1) // 8)) % 2
        return Fraction(exp, 2)

    reps = [1, 3, 5, 7, 2, 6, 10, 14]
    for a in reps:
        for b in reps:
            if hilbert2(Q2.from_int(a), Q2.from_int(b)) != classical(a, b):
                failures.append(("table", a, b))
    rnd = random.Random(31)
    pool = [1, 3, 5, 7, -1, -3, 9, 2, 6, 10, -2, 18]
    checks = 0
    for _ in range(180):
        a, b, c = (Q2.from_int(rnd.choice(pool)) for _ in range(3))
        if hilbert2(a, b) != hilbert2(b, a):
            failures.append("antisymmetry")
        if hilbert2(a * c, b).value != (hilbert2(a, b).value
                                        + hilbert2(c, b).value) % 1:
            failures.append("bilinearity")
        one_minus = Q2.one() - a
        if not one_minus.is_zero_at_precision():
            if hilbert2(a, one_minus).value != 0:
                failures.append("steinberg")
            checks += 1
        checks += 2
    if checks < 500:
        failures.append("only %d checks" % checks)
    # the norm oracle accepts every constructed norm from the degree-3
    # Kummer extension ...
    from rswan.brauer import _kummer_norm_of
    Q3z = named_field("Q3z")
    z3 = Q3z.zeta(1)
    pi3 = Q3z.pi()
    accepted = total = 0
    for _ in range(25):
        coeffs = [Q3z.from_int(rnd.randrange(-4, 5))
                  + Q3z.from_int(rnd.randrange(-1, 2)) * pi3
                  for _ in range(3)]
        norm = _kummer_norm_of(Q3z, z3, 3, coeffs)
        if norm is None or norm.valuation() >= 6:
            continue
        total += 1
        if norm_triviality(z3, norm).is_zero():
            accepted += 1
    if accepted != total or total < 10:
        failures.append("norm accept %d/%d" % (accepted, total))
    # ... and rejects a non-norm with an index certificate
    rejected = False
    for cand in (Q3z.one() + pi3, Q3z.one() - pi3, Q3z.from_int(2), pi3):
        r = norm_triviality(z3, cand)
        if r.value == "nonzero":
            rejected = True
            if r.certificate.get("index") != 3:
                failures.append("certificate index")
    if not rejected:
        failures.append("non-norm not rejected")
    report("symbol oracle vs closed form (%d property checks)" % checks,
           failures)
