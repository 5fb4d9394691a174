"""Command-line harness: refined-Swan computations, disc sweeps, probes,
conductors, and the deterministic verification suites.

Exit codes: 0 verdict MATCH / KERNEL-MATCH, 1 FAIL, 2 argument or
expression parse errors, 3 UNDECIDED or precision/budget exhaustion.
"""

import argparse
import json
import random
import sys
from dataclasses import dataclass, asdict
from fractions import Fraction

from .residue_algebra import (
    Fq, RatFunc, parse_ratfunc, ExprError, artin_schreier_inv, PoleAtPoint,
)
from .forms import (
    Form1, Form2, parse_form, form_to_str, d, dlog, wedge, is_closed,
    logdiff_basis, blowup_pullback, psi_over_chart, phi_over_chart,
    pullback, log_residue, TangentVec, contract,
)
from .local_field import (
    LocalField, field_from_descriptor, teichmuller, PrecisionExhausted,
)
from .brauer import (
    parse_kratfunc, specialize, class_difference, invariant, hilbert2,
    Undecided, ZeroAtPoint, BrauerClass, SymbolTerm, KRatFunc,
)
from .swan import (
    RefinedSwan, UnitUnit, UnitPi, XPi, XY, rsw_of_symbol, symbol_class,
    construct_with_rsw, multiply_by_p_rsw, kummer_conductor, SwanError,
    Unclassifiable, FilBound,
)
from .disc_lab import (
    Point, sweep, quadratic_sweep, surjectivity_probe, empirical_filtration,
    sample_centers, table_to_json, table_to_csv, BudgetExceeded,
    HypothesisViolated, NotInDisc, tangent_vector, disc_representatives,
)


EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_UNDECIDED = 3


@dataclass
class Config:
    field: str = "Q2"
    precision: int = 0          # 0: module default
    seed: int = 0
    jobs: int = 1
    budget: int = 4096
    out: str = "json"

    def header(self):
        return asdict(self)


def load_config_file(path):
    """Flat key = value lines; # starts a comment."""
    values = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError("bad config line: %r" % line)
            key, val = (s.strip() for s in line.split("=", 1))
            values[key] = val
    return values


def build_config(args):
    cfg = Config()
    file_values = {}
    if args.config:
        file_values = load_config_file(args.config)
    for key in ("field", "precision", "seed", "jobs", "budget", "out"):
        if key in file_values:
            cur = getattr(cfg, key)
            val = file_values[key]
            setattr(cfg, key, int(val) if isinstance(cur, int) else val)
        flag = getattr(args, key, None)
        if flag is not None:
            setattr(cfg, key, flag)
    if cfg.out not in ("json", "csv"):
        raise ValueError("unknown output format %r" % cfg.out)
    return cfg


def get_field(cfg):
    return field_from_descriptor(cfg.field, precision=cfg.precision or None)


def emit(cfg, payload, csv_text=None, path=None):
    if cfg.out == "csv" and csv_text is not None:
        text = csv_text
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def verdict_exit(verdict):
    if verdict in ("MATCH", "KERNEL-MATCH"):
        return EXIT_OK
    if verdict == "FAIL":
        return EXIT_FAIL
    return EXIT_UNDECIDED


def parse_center(text, field):
    coords = []
    for part in text.split(","):
        part = part.strip()
        try:
            coords.append(field.from_int(int(part)))
        except ValueError:
            val = parse_kratfunc(part, field, 1).eval_at([field.one()])
            coords.append(val)
    return Point(field, coords)


def build_shape(args, field):
    ctx = field.residue
    m = args.m
    if args.shape == "unit-unit":
        if args.x is None or args.y is None or args.n is None:
            raise ExprError("unit-unit needs --x, --y and --n")
        return UnitUnit(field, parse_ratfunc(args.x, ctx, m),
                        parse_ratfunc(args.y, ctx, m), args.n)
    if args.shape == "unit-pi":
        if args.x is None or args.n is None:
            raise ExprError("unit-pi needs --x and --n")
        return UnitPi(field, parse_ratfunc(args.x, ctx, m), args.n)
    if args.shape == "x-pi":
        if args.x is None:
            raise ExprError("x-pi needs --x")
        return XPi(field, parse_ratfunc(args.x, ctx, m))
    if args.shape == "x-y":
        if args.x is None or args.y is None:
            raise ExprError("x-y needs --x and --y")
        return XY(field, parse_ratfunc(args.x, ctx, m),
                  parse_ratfunc(args.y, ctx, m))
    raise ExprError("unknown shape %r" % args.shape)


def build_constructed(args, field):
    ctx = field.residue
    beta = parse_form(args.beta, ctx, args.m)
    A = construct_with_rsw(beta, args.n, args.t, field)
    rsw = RefinedSwan(args.n, Form2.zero(ctx, args.m), beta)
    return A, rsw


# ---------------------------------------------------------------------------
# subcommands


def cmd_rsw(args, cfg):
    field = get_field(cfg)
    shape = build_shape(args, field)
    r = rsw_of_symbol(shape)
    emit(cfg, {"header": cfg.header(), "rsw": r.to_json()}, path=args.out_file)
    return EXIT_OK


def cmd_construct(args, cfg):
    field = get_field(cfg)
    A, rsw = build_constructed(args, field)
    emit(cfg, {"header": cfg.header(), "class": A.describe(),
               "rsw": rsw.to_json()}, path=args.out_file)
    return EXIT_OK


def cmd_sweep(args, cfg):
    field = get_field(cfg)
    A, rsw = build_constructed(args, field)
    if args.corrupt_prediction:
        rsw = RefinedSwan(rsw.n, rsw.alpha, Form1.zero(rsw.ctx, rsw.nvars))
    P = parse_center(args.center, field)
    try:
        table = sweep(A, P, args.radius, rsw=rsw, jobs=cfg.jobs,
                      budget=cfg.budget)
    except BudgetExceeded as exc:
        emit(cfg, {"header": cfg.header(), "verdict": "UNDECIDED",
                   "reason": str(exc)}, path=args.out_file)
        return EXIT_UNDECIDED
    emit(cfg, table_to_json(table, field, A), csv_text=table_to_csv(table),
         path=args.out_file)
    return verdict_exit(table.verdict)


def cmd_quadsweep(args, cfg):
    field = get_field(cfg)
    shape = build_shape(args, field)
    A = symbol_class(shape)
    rsw = rsw_of_symbol(shape)
    P = parse_center(args.center, field)
    try:
        rep = quadratic_sweep(A, P, args.s, rsw, budget=cfg.budget)
    except BudgetExceeded as exc:
        emit(cfg, {"header": cfg.header(), "verdict": "UNDECIDED",
                   "reason": str(exc)}, path=args.out_file)
        return EXIT_UNDECIDED
    gamma = None if rep.gamma is None else [list(g.coeffs) for g in rep.gamma]
    emit(cfg, {"header": cfg.header(), "level": rep.level, "s": rep.s,
               "gamma": gamma, "verdict": rep.verdict}, path=args.out_file)
    return verdict_exit(rep.verdict)


def cmd_probe(args, cfg):
    field = get_field(cfg)
    A, rsw = build_constructed(args, field)
    P = parse_center(args.center, field)
    rng = random.Random(cfg.seed)
    try:
        rep = surjectivity_probe(A, P, rsw, t=args.t, rng=rng,
                                 budget=args.samples, enum_budget=cfg.budget)
    except BudgetExceeded as exc:
        emit(cfg, {"header": cfg.header(), "verdict": "UNDECIDED",
                   "reason": str(exc)}, path=args.out_file)
        return EXIT_UNDECIDED
    emit(cfg, {"header": cfg.header(), "target": rep.target,
               "values": [str(v) for v in rep.values],
               "witness": None if rep.witness is None
               else [repr(c) for c in rep.witness.coords],
               "verdict": rep.verdict}, path=args.out_file)
    return verdict_exit(rep.verdict)


def cmd_filtration(args, cfg):
    field = get_field(cfg)
    A, _ = build_constructed(args, field)
    rng = random.Random(cfg.seed)
    centers = sample_centers(field, args.m, args.centers, rng)
    try:
        rep = empirical_filtration(A, centers, args.n_max, jobs=cfg.jobs,
                                   budget=cfg.budget)
    except BudgetExceeded as exc:
        emit(cfg, {"header": cfg.header(), "verdict": "UNDECIDED",
                   "reason": str(exc)}, path=args.out_file)
        return EXIT_UNDECIDED
    emit(cfg, {"header": cfg.header(), "estimate": rep.estimate,
               "witness_radius": rep.witness_radius, "verdict": rep.verdict},
         path=args.out_file)
    return verdict_exit(rep.verdict)


def cmd_conductor(args, cfg):
    field = get_field(cfg)
    a = parse_kratfunc(args.a, field, args.m)
    k = kummer_conductor(a, field)
    emit(cfg, {"header": cfg.header(), "a": args.a, "conductor": k},
         path=args.out_file)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification suites


def _check(results, name, ok):
    results.append((name, bool(ok)))


def _suite_forms(seed):
    rng = random.Random(seed)
    results = []
    ctx = Fq(2, 1)
    for n in range(1, 5):
        _check(results, "one-logH dim n=%d" % n,
               len(logdiff_basis(ctx, "one-logH", n)) == n)
        _check(results, "one-2H dim n=%d" % n,
               len(logdiff_basis(ctx, "one-2H", n)) == n * (n + 1) // 2)
        _check(results, "two-2H-logH dim n=%d" % n,
               len(logdiff_basis(ctx, "two-2H-logH", n)) == n * (n - 1) // 2)
    ctx3 = Fq(3, 1)
    m = 3
    for trial in range(12):
        beta0 = [ctx3.from_int(rng.randrange(3)) for _ in range(m)]
        if all(b.is_zero() for b in beta0):
            beta0[0] = ctx3.one()
        omega = Form1(ctx3, m, tuple(RatFunc.const(ctx3, m, b)
                                     for b in beta0))
        pole, res = blowup_pullback(omega)
        _check(results, "blowup residue(1-form) #%d" % trial,
               res == psi_over_chart(ctx3, m, beta0))
        alpha0 = {(i, j): ctx3.from_int(rng.randrange(3))
                  for i in range(1, m + 1) for j in range(i + 1, m + 1)}
        omega2 = Form2(ctx3, m, {k: RatFunc.const(ctx3, m, c)
                                 for k, c in alpha0.items()})
        if not omega2.is_zero():
            pole2, res2 = blowup_pullback(omega2)
            _check(results, "blowup residue(2-form) #%d" % trial,
                   res2 == phi_over_chart(ctx3, m, alpha0))
    for trial in range(10):
        coeffs = [rng.randrange(2) for _ in range(4)]
        f = RatFunc.const(ctx, 2, 1)
        gens = [RatFunc.var(ctx, 2, 0), RatFunc.var(ctx, 2, 1)]
        for c, g in zip(coeffs, gens + [gens[0] * gens[1],
                                        gens[0] + gens[1]]):
            if c:
                f = f + g
        if f.is_zero():
            continue
        _check(results, "dlog closed #%d" % trial, is_closed(dlog(f)))
        _check(results, "ddf = 0 #%d" % trial, d(d(f)).is_zero())
        _check(results, "wedge alternating #%d" % trial,
               wedge(dlog(f), dlog(f)).is_zero())
    return results


def _suite_swan(seed):
    rng = random.Random(seed)
    results = []
    field = field_from_descriptor("Q2i")
    ctx = field.residue
    for trial in range(20):
        n = rng.choice([1, 3])
        coeffs = tuple(RatFunc.const(ctx, 2, rng.randrange(2))
                       for _ in range(2))
        beta = Form1(ctx, 2, coeffs)
        alpha = d(beta).scale(RatFunc.const(ctx, 2, n))
        r = RefinedSwan(n, alpha, beta)
        _check(results, "dbna closed #%d" % trial, is_closed(r.alpha))
        _check(results, "dbna relation #%d" % trial,
               d(r.beta) == r.alpha.scale(RatFunc.const(ctx, 2, n)))
    for trial in range(8):
        c1 = rng.randrange(2)
        beta = Form1(ctx, 2, (RatFunc.const(ctx, 2, 1),
                              RatFunc.const(ctx, 2, c1)))
        r = RefinedSwan(6, Form2.zero(ctx, 2), beta)
        mres = multiply_by_p_rsw(r, field)
        _check(results, "multiply level #%d" % trial, mres.n == 4)
        _check(results, "multiply beta #%d" % trial, mres.beta == beta)
    shape = XPi(field_from_descriptor("Q2"),
                parse_ratfunc("x1", Fq(2, 1), 1))
    r = rsw_of_symbol(shape)
    _check(results, "x-pi level", r.n == 2)
    _check(results, "x-pi beta", form_to_str(r.beta) == "1/x1*dx1")
    return results


def _suite_brauer(seed):
    rng = random.Random(seed)
    results = []
    field = field_from_descriptor("Q2")
    units = [field.from_int(u) for u in (1, 3, 5, 7, -1, -3)]
    elems = units + [field.pi() * u for u in units]
    for trial in range(25):
        a, b = rng.choice(elems), rng.choice(elems)
        ra = hilbert2(a, b, field)
        rb = hilbert2(b, a, field)
        _check(results, "antisymmetry #%d" % trial,
               (ra.value + rb.value) % 1 == 0)
        c = rng.choice(elems)
        _check(results, "bilinearity #%d" % trial,
               hilbert2(a * c, b, field).value
               == (ra.value + hilbert2(c, b, field).value) % 1)
    for u in (3, 5, -7):
        a = field.from_int(u)
        one_minus = field.one() - a
        if one_minus.is_zero_at_precision():
            continue
        _check(results, "steinberg %d" % u,
               hilbert2(a, one_minus, field).value == 0)
    return results


def _suite_discs(seed):
    rng = random.Random(seed)
    results = []
    field = field_from_descriptor("Q2")
    ctx = field.residue
    beta = parse_form("dx1", ctx, 1)
    A = construct_with_rsw(beta, 1, 0, field)
    rsw = RefinedSwan(1, Form2.zero(ctx, 1), beta)
    P = Point(field, [1])
    table = sweep(A, P, 1, rsw=rsw)
    _check(results, "flagship verdict", table.verdict == "MATCH")
    v1 = TangentVec(ctx, [ctx.one()])
    _check(results, "flagship value",
           table.entry(v1).inv.value == Fraction(1, 2))
    rep = empirical_filtration(A, [P, Point(field, [3])], 3)
    _check(results, "flagship filtration", rep.estimate == 1)
    for trial in range(5):
        Q = Point(field, [1 + 2 * rng.randrange(1, 8)])
        v = tangent_vector(P, Q, 1)
        _check(results, "tangent integral #%d" % trial,
               v.components[0] == ((Q.coords[0] - P.coords[0])
                                   .shift_down(1).reduce()))
    return results


SUITES = {
    "forms": _suite_forms,
    "swan": _suite_swan,
    "brauer": _suite_brauer,
    "discs": _suite_discs,
}


def cmd_verify(args, cfg):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in SUITES:
        raise ExprError("unknown suite %r" % args.suite)
    any_fail = False
    for name in names:
        results = SUITES[name](cfg.seed)
        passed = sum(1 for _, ok in results if ok)
        failed = len(results) - passed
        any_fail = any_fail or failed
        print("%s: %d passed, %d failed" % (name, passed, failed))
        for check, ok in results:
            if not ok:
                print("  FAIL %s" % check)
    return EXIT_FAIL if any_fail else EXIT_OK


# ---------------------------------------------------------------------------
# parser


def make_parser():
    parser = argparse.ArgumentParser(
        prog="rswan",
        description="refined Swan conductors and disc-sweep experiments")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="field descriptor (e.g. Q2, 2/Q2, "
                        "cyclo:2:2, 3^2/1,1)")
    common.add_argument("--precision", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--jobs", type=int)
    common.add_argument("--budget", type=int)
    common.add_argument("--out", choices=["json", "csv"])
    common.add_argument("--config")
    common.add_argument("--out-file", help="write the report here instead "
                        "of stdout")
    common.add_argument("--m", type=int, default=2,
                        help="number of coordinates")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rsw", parents=[common])
    p.add_argument("--shape", required=True,
                   choices=["unit-unit", "unit-pi", "x-pi", "x-y"])
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_rsw)

    def add_constructed(p):
        p.add_argument("--beta", required=True,
                       help="target 1-form, e.g. 'dx1 + x2*dx1'")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--t", type=int, default=0)

    p = sub.add_parser("construct", parents=[common])
    add_constructed(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("sweep", parents=[common])
    add_constructed(p)
    p.add_argument("--center", required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--corrupt-prediction", action="store_true",
                   help="negative control: predict with beta = 0")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("quadsweep", parents=[common])
    p.add_argument("--shape", required=True,
                   choices=["unit-unit", "unit-pi", "x-pi", "x-y"])
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--n", type=int)
    p.add_argument("--center", required=True)
    p.add_argument("--s", type=int, default=1)
    p.set_defaults(func=cmd_quadsweep)

    p = sub.add_parser("probe", parents=[common])
    add_constructed(p)
    p.add_argument("--center", required=True)
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("filtration", parents=[common])
    add_constructed(p)
    p.add_argument("--centers", type=int, default=4)
    p.add_argument("--n-max", type=int, default=4)
    p.set_defaults(func=cmd_filtration)

    p = sub.add_parser("conductor", parents=[common])
    p.add_argument("--a", required=True,
                   help="Kummer slope, e.g. '1+u1*pi' or 'pi'")
    p.set_defaults(func=cmd_conductor)

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("suite", choices=["forms", "swan", "brauer", "discs",
                                     "all"])
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        return args.func(args, cfg)
    except (Unclassifiable, Undecided, PrecisionExhausted, BudgetExceeded,
            ZeroAtPoint, PoleAtPoint) as exc:
        print("undecided: %s" % exc, file=sys.stderr)
        return EXIT_UNDECIDED
    except (ExprError, SwanError, NotInDisc, HypothesisViolated,
            ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
