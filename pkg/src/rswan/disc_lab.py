"""Points, discs and sweep experiments on affine m-space over a local field.

The model variety is affine m-space with the identity chart, so points are
coordinate vectors of integral elements, the disc B(P, r) is a congruence
class modulo pi^r, and tangent vectors at the reduction of P are coordinate
differences divided by pi^r.  The sweep engine measures differences of
local invariants of a Brauer class over a disc and compares them against
the linear prediction coming from a refined Swan conductor pair.
"""

import csv
import io
import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .residue_algebra import (
    FqElem, RatFunc, FqPoly, artin_schreier_inv, trace_to_prime, embed_fq,
    PoleAtPoint,
)
from .forms import Form1, Form2, TangentVec, contract, contract2
from .local_field import LocalElem, teichmuller, residue_digit_elements, embed
from .brauer import (
    BrauerClass, SymbolTerm, KPoly, KRatFunc, specialize, class_difference,
    invariant, InvValue, ZeroAtPoint, Undecided,
)


class NotInDisc(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class HypothesisViolated(ValueError):
    pass


DEFAULT_ENUM_BUDGET = 4096


# ---------------------------------------------------------------------------
# points and discs


class Point:
    """A point of affine m-space with integral coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        coords = tuple(c if isinstance(c, LocalElem) else field.from_int(c)
                       for c in coords)
        for c in coords:
            if c.valuation() < 0:
                raise ValueError("point coordinates must be integral")
        self.field = field
        self.coords = coords

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        return (isinstance(other, Point) and self.field == other.field
                and all(a == b for a, b in zip(self.coords, other.coords))
                and len(self.coords) == len(other.coords))

    def reduce(self):
        """The reduction P_0 on the special fibre (tuple of residue
        elements)."""
        return tuple(c.reduce() for c in self.coords)

    def __repr__(self):
        return "Point(%s)" % (list(self.coords),)


@dataclass(frozen=True)
class Disc:
    center: Point
    radius_exponent: int

    def __post_init__(self):
        if self.radius_exponent < 1:
            raise ValueError("disc radius exponent must be >= 1")

    def contains(self, Q):
        r = self.radius_exponent
        return all((q - p).valuation() >= r
                   for p, q in zip(self.center.coords, Q.coords))


def tangent_vector(P, Q, r):
    """The tangent vector of Q relative to P at radius r: component-wise
    reduction of (Q_i - P_i) / pi^r.  Q must lie in B(P, r)."""
    comps = []
    for a, b in zip(P.coords, Q.coords):
        diff = b - a
        if diff.valuation() < r:
            raise NotInDisc("point is not in B(P, %d)" % r)
        comps.append(diff.shift_down(r).reduce())
    return TangentVec(P.field.residue, comps)


def disc_representatives(P, r, budget=DEFAULT_ENUM_BUDGET):
    """One point per tangent vector on the shell of B(P, r): the q^m points
    P + pi^r * omega(v) over v in F_q^m, with Teichmueller lifts omega."""
    field = P.field
    ctx = field.residue
    m = len(P.coords)
    q = ctx.p ** ctx.f
    if budget is not None and q ** m > budget:
        raise BudgetExceeded("q^m = %d exceeds the enumeration budget" % q ** m)
    pir = field.pi() ** r
    lifts = {v: teichmuller(field, v) for v in ctx.elements()}
    out = []
    for combo in itertools.product(ctx.elements(), repeat=m):
        coords = tuple(c + lifts[v] * pir for c, v in zip(P.coords, combo))
        out.append((TangentVec(ctx, combo), Point(field, coords)))
    return out


# ---------------------------------------------------------------------------
# sweep tables


@dataclass
class SweepEntry:
    tangent: TangentVec
    inv: object            # InvValue, or None when the oracle errored
    prediction: object     # Fraction or None
    error: str = ""

    def decided(self):
        return self.inv is not None and self.inv.value != "unknown"


@dataclass
class SweepTable:
    center: Point
    radius: int
    entries: list
    prediction_available: bool
    verdict: str

    def entry(self, v):
        for ent in self.entries:
            if ent.tangent == v:
                return ent
        raise KeyError(v)

    def is_constant(self):
        """True/False when decidable, None when some entries are
        undecided and the rest are trivial."""
        undecided = False
        for ent in self.entries:
            if not ent.decided():
                undecided = True
            elif not ent.inv.is_zero():
                return False
        return None if undecided else True


def _tangent_key(v):
    return tuple(tuple(c.coeffs) for c in v.components)


def _invariant_difference(A, Q, P):
    SQ = specialize(A, list(Q.coords))
    SP = specialize(A, list(P.coords))
    return invariant(class_difference(SQ, SP))


def _entry_for(A, P, Q, v, pred):
    try:
        iv = _invariant_difference(A, Q, P)
        return SweepEntry(v, iv, pred)
    except (ZeroAtPoint, PoleAtPoint) as exc:
        return SweepEntry(v, None, pred, error="specialization: %s" % exc)
    except Undecided as exc:
        return SweepEntry(v, None, pred, error="oracle: %s" % exc)


def _extend_form1(beta, big_ctx):
    if beta.ctx == big_ctx:
        return beta

    def conv_poly(poly):
        return FqPoly(big_ctx, poly.nvars,
                      {e: embed_fq(c, big_ctx) for e, c in poly.terms.items()})

    return Form1(big_ctx, beta.nvars,
                 tuple(RatFunc(conv_poly(c.num), conv_poly(c.den))
                       for c in beta.coeffs))


def _extend_form2(alpha, big_ctx):
    if alpha.ctx == big_ctx:
        return alpha

    def conv_poly(poly):
        return FqPoly(big_ctx, poly.nvars,
                      {e: embed_fq(c, big_ctx) for e, c in poly.terms.items()})

    return Form2(big_ctx, alpha.nvars,
                 {k: RatFunc(conv_poly(c.num), conv_poly(c.den))
                  for k, c in alpha.coeffs.items()})


def extend_class(A, big):
    """Restrict a Brauer class to an unramified extension of its field."""
    if A.field == big:
        return A

    def conv_poly(poly):
        return KPoly(big, poly.nvars,
                     {e: embed(c, big) for e, c in poly.terms.items()})

    def conv(f):
        return KRatFunc(conv_poly(f.num), conv_poly(f.den))

    terms = [SymbolTerm(conv(t.a), conv(t.b), t.order) for t in A.terms]
    return BrauerClass(big, A.nvars, terms, A.corestrict_to)


def _sweep_verdict(entries, p, prediction_available):
    if not prediction_available:
        return "UNDECIDED"
    fail = False
    undecided = False
    all_exact = True
    for ent in entries:
        pred = ent.prediction
        if not ent.decided():
            undecided = True
            all_exact = False
            continue
        val = ent.inv.value
        if val == "nonzero":
            all_exact = False
            if pred == 0:
                fail = True
        else:
            if (val == 0) != (pred == 0):
                fail = True
            elif val != pred:
                fail = True
    if fail:
        return "FAIL"
    if undecided:
        return "UNDECIDED"
    if all_exact:
        return "MATCH"
    return "KERNEL-MATCH"


def sweep(A, P, r, rsw=None, jobs=1, budget=DEFAULT_ENUM_BUDGET):
    """Measure invariant differences of A over the shell of B(P, r), one
    entry per tangent vector, against the linear prediction
    (1/p) Tr(beta_{P_0}(v)) when a pair at level r is supplied."""
    field = P.field
    p = field.p
    reps = disc_representatives(P, r, budget=budget)
    predictions = {}
    prediction_available = rsw is not None and rsw.n == r
    if prediction_available:
        beta = _extend_form1(rsw.beta, field.residue)
        P0 = P.reduce()
        for v, _ in reps:
            predictions[_tangent_key(v)] = artin_schreier_inv(
                contract(beta, P0, v), p)

    def work(item):
        v, Q = item
        pred = predictions.get(_tangent_key(v))
        return _entry_for(A, P, Q, v, pred)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            entries = list(ex.map(work, reps))
    else:
        entries = [work(item) for item in reps]
    entries.sort(key=lambda ent: _tangent_key(ent.tangent))
    verdict = _sweep_verdict(entries, p, prediction_available)
    return SweepTable(P, r, entries, prediction_available, verdict)


# ---------------------------------------------------------------------------
# quadratic sweeps (bilinear alpha term plus a fitted linear correction)


@dataclass
class QuadSweepReport:
    center: Point
    level: int
    s: int
    gamma: tuple          # coefficients of the fitted linear form, or None
    tables: list          # (tangent w, [(tangent v, measured, predicted)])
    verdict: str


def _fit_linear(values, ctx, p):
    """Fit constants gamma_i with values[v] = (1/p) Tr(sum gamma_i v_i) from
    a full shell of measurements; None when no linear form fits."""
    m = len(next(iter(values))) if values else 0
    gamma = []
    for i in range(m):
        cand = None
        for g in ctx.elements():
            ok = True
            for a in ctx.elements():
                comps = [ctx.zero()] * m
                comps[i] = a
                v = TangentVec(ctx, comps)
                if values[_tangent_key(v)] != artin_schreier_inv(g * a, p):
                    ok = False
                    break
            if ok:
                cand = g
                break
        if cand is None:
            return None
        gamma.append(cand)
    # verify on the whole shell
    for key, val in values.items():
        acc = ctx.zero()
        for gi, comps in zip(gamma, key):
            acc = acc + gi * ctx.elem(comps)
        if artin_schreier_inv(acc, p) != val:
            return None
    return tuple(gamma)


def quadratic_sweep(A, P, s, rsw, num_centers=None, rng=None,
                    budget=DEFAULT_ENUM_BUDGET):
    """For a class with pair [alpha, 0] at level n > 2 and 1 <= s < n/2:
    fit the linear correction gamma from the sweep centered at P, then
    check that, for centers Q at radius s, the measured differences on the
    shell at radius n - s equal
    -(s/p) Tr alpha(t_s(P,Q), t_{n-s}(Q,R)) + (1/p) Tr gamma(t)
    (the gamma term applies on B(Q, n-1), i.e. when s = 1)."""
    field = P.field
    p = field.p
    ctx = field.residue
    n = rsw.n
    if not rsw.beta.is_zero():
        raise HypothesisViolated("quadratic sweep needs a pair [alpha, 0]")
    if n <= 2:
        raise HypothesisViolated("quadratic sweep needs level > 2")
    if not 1 <= s < Fraction(n, 2):
        raise HypothesisViolated("need 1 <= s < n/2")
    alpha = _extend_form2(rsw.alpha, ctx)
    P0 = P.reduce()
    # fit gamma from the base sweep (Q = P, zero tangent at radius s)
    base_entries = {}
    for v, R in disc_representatives(P, n - 1, budget=budget):
        iv = _invariant_difference(A, R, P)
        if iv.value in ("unknown", "nonzero"):
            return QuadSweepReport(P, n, s, None, [], "UNDECIDED")
        base_entries[_tangent_key(v)] = iv.value
    gamma = _fit_linear(base_entries, ctx, p)
    if gamma is None:
        return QuadSweepReport(P, n, s, None, [], "FAIL")
    gamma_form = Form1(ctx, len(P.coords),
                       tuple(RatFunc.const(ctx, len(P.coords), g)
                             for g in gamma))
    r = n - s
    q_reps = disc_representatives(P, s, budget=budget)
    if num_centers is not None and num_centers < len(q_reps):
        rng = rng or random.Random(0)
        nonzero = [item for item in q_reps
                   if any(not c.is_zero() for c in item[0].components)]
        q_reps = rng.sample(nonzero, min(num_centers, len(nonzero)))
    tables = []
    verdict = "MATCH"
    for w, Q in q_reps:
        rows = []
        for v, R in disc_representatives(Q, r, budget=budget):
            iv = _invariant_difference(A, R, Q)
            if iv.value in ("unknown", "nonzero"):
                verdict = "UNDECIDED"
                rows.append((v, iv.value, None))
                continue
            predicted = (-s * artin_schreier_inv(
                contract2(alpha, P0, w, v), p)) % 1
            if r == n - 1:
                predicted = (predicted
                             + artin_schreier_inv(contract(
                                 gamma_form, P0, v), p)) % 1
                if iv.value != predicted and verdict != "FAIL":
                    verdict = "FAIL"
            rows.append((v, iv.value, predicted))
        tables.append((w, rows))
    return QuadSweepReport(P, n, s, gamma, tables, verdict)


# ---------------------------------------------------------------------------
# surjectivity probes


@dataclass
class ProbeReport:
    center: Point
    witness: object       # Point or None
    values: list          # distinct invariant values observed (Fractions)
    target: int
    verdict: str


def _exact_value(A, Q):
    try:
        iv = invariant(specialize(A, list(Q.coords)))
    except (ZeroAtPoint, PoleAtPoint, Undecided):
        return None
    if isinstance(iv.value, Fraction) or iv.value == 0:
        return Fraction(iv.value)
    return None


def _collect_distinct(A, points, target):
    seen = {}
    for Q in points:
        val = _exact_value(A, Q)
        if val is None:
            continue
        if val not in seen:
            seen[val] = Q
            if len(seen) >= target:
                break
    return seen


def surjectivity_probe(A, P, rsw, t=0, rng=None, budget=400,
                       enum_budget=DEFAULT_ENUM_BUDGET):
    """Search for the predicted number of distinct invariant values.

    With beta nonzero at P_0 the class of order p^{t+1} should take all
    p^{t+1} values on B(P, n - te); with beta = 0 and alpha nonzero at P_0
    there should be a center Q in B(P, 1) with p distinct values on
    B(Q, n-1).  A fruitless search is reported as verdict FAIL, not as an
    error."""
    field = P.field
    p, e, ep = field.p, field.e, field.eprime
    n = rsw.n
    rng = rng or random.Random(0)
    P0 = P.reduce()
    beta = _extend_form1(rsw.beta, field.residue)
    beta0 = [c.eval_at(P0) for c in beta.coeffs]
    if any(not b.is_zero() for b in beta0):
        if n < ep + (t - 1) * e:
            raise HypothesisViolated("need n >= e' + (t-1)e")
        m0 = n - t * e
        if m0 < 1:
            raise HypothesisViolated("need n > te")
        target = p ** (t + 1)
        points = [Q for _, Q in disc_representatives(P, m0,
                                                     budget=enum_budget)]
        # deepen the search with random points of B(P, m0)
        pim0 = field.pi() ** m0
        digit_pool = list(residue_digit_elements(field, min(3, t + 2)))
        for _ in range(budget):
            coords = tuple(c + rng.choice(digit_pool) * pim0
                           for c in P.coords)
            points.append(Point(field, coords))
        seen = _collect_distinct(A, points, target)
        verdict = "MATCH" if len(seen) >= target else "FAIL"
        return ProbeReport(P, P, sorted(seen), target, verdict)
    # beta = 0 case: search for a good center in B(P, 1)
    alpha = _extend_form2(rsw.alpha, field.residue)
    alpha0 = {k: c.eval_at(P0) for k, c in alpha.coeffs.items()}
    if all(c.is_zero() for c in alpha0.values()):
        raise HypothesisViolated("alpha must be nonzero at P_0")
    if n < 2:
        raise HypothesisViolated("need n >= 2")
    for _, Q in disc_representatives(P, 1, budget=enum_budget):
        points = [R for _, R in disc_representatives(Q, n - 1,
                                                     budget=enum_budget)]
        seen = _collect_distinct(A, points, p)
        if len(seen) >= p:
            return ProbeReport(P, Q, sorted(seen), p, "MATCH")
    return ProbeReport(P, None, [], p, "FAIL")


# ---------------------------------------------------------------------------
# empirical evaluation filtration


@dataclass
class FiltrationReport:
    estimate: object      # int, or None when nothing below n_max is constant
    witness_radius: int   # largest radius where non-constancy was seen
    per_center: list      # (Point, radius, is_constant)
    verdict: str


def sample_centers(field, m, count, rng, degrees=(1, 2), depth=2,
                   units_only=True):
    """Random integral points over unramified extensions of the field, with
    Teichmueller-digit coordinates of the given depth.  By default the
    coordinates are units, keeping the sampled discs away from the zero and
    polar loci of coordinate symbols."""
    out = []
    fields = {}
    for i in range(count):
        deg = degrees[i % len(degrees)]
        if deg not in fields:
            fields[deg] = (field if deg == 1
                           else field.unramified_extension(deg))
        big = fields[deg]
        pool = list(residue_digit_elements(big, depth))
        if units_only:
            pool = [x for x in pool if x.valuation() == 0]
        coords = tuple(rng.choice(pool) for _ in range(m))
        out.append(Point(big, coords))
    return out


def empirical_filtration(A, centers, n_max, jobs=1,
                         budget=DEFAULT_ENUM_BUDGET):
    """The smallest n <= n_max such that every sampled sweep at radius n+1
    is constant; centers may live over unramified extensions."""
    classes = {}
    per_center = []
    witness = 0
    estimate = None
    undecided = False
    for radius in range(1, n_max + 2):
        all_const = True
        for P in centers:
            key = P.field._key()
            if key not in classes:
                classes[key] = extend_class(A, P.field)
            table = sweep(classes[key], P, radius, jobs=jobs, budget=budget)
            const = table.is_constant()
            per_center.append((P, radius, const))
            if const is None:
                undecided = True
                all_const = False
            elif not const:
                witness = radius
                all_const = False
        if all_const:
            estimate = radius - 1
            break
    if estimate is None:
        verdict = "UNDECIDED" if undecided else "FAIL"
    elif estimate == 0 or witness == estimate:
        verdict = "MATCH"
    else:
        verdict = "UNDECIDED"
    return FiltrationReport(estimate, witness, per_center, verdict)


# ---------------------------------------------------------------------------
# reports


def _frac_str(x):
    if x is None:
        return ""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return "%d/%d" % (x.numerator, x.denominator)
    return str(x)


def _tangent_json(v):
    return [list(c.coeffs) for c in v.components]


def table_to_json(table, field, A):
    entries = []
    for ent in table.entries:
        inv = None
        cert = {}
        if ent.inv is not None:
            inv = _frac_str(ent.inv.value)
            cert = ent.inv.certificate or {}
        entries.append({
            "tangent": _tangent_json(ent.tangent),
            "inv": inv,
            "certificate": {k: str(v) for k, v in cert.items()},
            "prediction": _frac_str(ent.prediction),
            "error": ent.error,
        })
    return {
        "field": field.descriptor(),
        "class": A.describe(),
        "center": [repr(c) for c in table.center.coords],
        "radius": table.radius,
        "entries": entries,
        "prediction": table.prediction_available,
        "verdict": table.verdict,
    }


def table_to_csv(table):
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["tangent", "inv", "prediction", "error"])
    for ent in table.entries:
        inv = "" if ent.inv is None else _frac_str(ent.inv.value)
        writer.writerow([
            ";".join(":".join(str(x) for x in c.coeffs)
                     for c in ent.tangent.components),
            inv, _frac_str(ent.prediction), ent.error,
        ])
    return buf.getvalue()
