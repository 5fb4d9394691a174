"""Refined Swan conductors of p-adic Brauer classes.

A refined Swan conductor at level n is a pair of differential forms
[alpha, beta] over the residue field, attached to a Brauer class whose Swan
conductor is n.  This module computes these pairs for the explicit symbol
shapes, constructs symbol classes realizing a prescribed pair, and applies
the transformation rules: base change, multiplication by p, blowup descent,
and the conductor formulas for Kummer generators.
"""

from dataclasses import dataclass

from .residue_algebra import FqElem, FqPoly, RatFunc
from .forms import (
    Form1, Form2, d, dlog, wedge, cartier, is_closed, specialize_form,
    form_to_str, parse_form, psi, phi,
)
from .local_field import LocalElem, teichmuller
from .brauer import BrauerClass, SymbolTerm, KPoly, KRatFunc


class SwanError(ValueError):
    pass


class OutOfRangeLevel(SwanError):
    """The requested level n is outside the validity range of the formula."""


class MissingRootOfUnity(SwanError):
    """The field does not contain the required root of unity."""


class CoprimalityViolated(SwanError):
    """[k(mu_{p^{t+1}}) : k] is not coprime to p, or is not 1 (the only
    corestriction degree supported by the symbol constructor)."""


class BelowThreshold(SwanError):
    """Multiplication by p needs level n >= e' - 1."""


class Unclassifiable(SwanError):
    """The Kummer generator does not reduce to one of the four shapes."""


class DbnaFailure(SwanError):
    """A produced pair fails the closure identities d(alpha) = 0,
    d(beta) = (-1)^q n alpha."""


# ---------------------------------------------------------------------------
# the refined Swan conductor value


class RefinedSwan:
    """A level n together with a pair (alpha: Form2, beta: Form1) over the
    residue field, tagged by the uniformizer it is computed against.

    Every instance is checked on construction: for n = 0 both forms must
    vanish, and for n >= 1 the identities d(alpha) = 0 and
    d(beta) = (-1)^q n alpha must hold (q = 2 by default; q = 1 values arise
    from blowup endgames).  `mod_log` marks a beta component that is only
    determined up to the span of the du_i.
    """

    __slots__ = ("n", "alpha", "beta", "uniformizer_tag", "mod_log", "q")

    def __init__(self, n, alpha, beta, uniformizer_tag="pi", mod_log=False,
                 q=2):
        if not isinstance(alpha, Form2) or not isinstance(beta, Form1):
            raise TypeError("RefinedSwan expects (Form2, Form1)")
        if alpha.nvars != beta.nvars or alpha.ctx != beta.ctx:
            raise TypeError("alpha and beta must live in the same chart")
        if n < 0:
            raise SwanError("negative level")
        if n == 0 and not (alpha.is_zero() and beta.is_zero()):
            raise SwanError("level 0 requires alpha = beta = 0")
        self.n = n
        self.alpha = alpha
        self.beta = beta
        self.uniformizer_tag = uniformizer_tag
        self.mod_log = mod_log
        self.q = q
        self._check_dbna()

    @property
    def ctx(self):
        return self.alpha.ctx

    @property
    def nvars(self):
        return self.alpha.nvars

    @classmethod
    def zero(cls, ctx, nvars, uniformizer_tag="pi"):
        return cls(0, Form2.zero(ctx, nvars), Form1.zero(ctx, nvars),
                   uniformizer_tag)

    def _check_dbna(self):
        if not is_closed(self.alpha):
            raise DbnaFailure("d(alpha) != 0")
        sign = 1 if self.q % 2 == 0 else -1
        scale = self.ctx.from_int(sign * self.n)
        if d(self.beta) != self.alpha.scale(
                RatFunc.const(self.ctx, self.nvars, scale)):
            raise DbnaFailure("d(beta) != (-1)^q n alpha")

    def is_zero(self):
        return self.alpha.is_zero() and self.beta.is_zero()

    def __eq__(self, other):
        return (isinstance(other, RefinedSwan) and self.n == other.n
                and self.alpha == other.alpha and self.beta == other.beta
                and self.uniformizer_tag == other.uniformizer_tag
                and self.mod_log == other.mod_log)

    def __hash__(self):
        return hash((self.n, self.alpha, self.beta, self.uniformizer_tag,
                     self.mod_log))

    def same_mod_log(self, other):
        """Equality up to adding a constant combination of the du_i to beta
        (the ambiguity carried by `mod_log` values)."""
        if self.n != other.n or self.alpha != other.alpha:
            return False
        diff = self.beta - other.beta
        return all(c.is_constant() for c in diff.coeffs)

    def to_json(self):
        return {
            "n": self.n,
            "alpha": form_to_str(self.alpha),
            "beta": form_to_str(self.beta),
            "pi_tag": self.uniformizer_tag,
            "mod_log": self.mod_log,
        }

    @classmethod
    def from_json(cls, data, ctx, nvars):
        def load(text, degree):
            if text in ("0", ""):
                return (Form2 if degree == 2 else Form1).zero(ctx, nvars)
            return parse_form(text, ctx, nvars)

        alpha = load(data["alpha"], 2)
        beta = load(data["beta"], 1)
        if isinstance(alpha, Form1) and alpha.is_zero():
            alpha = Form2.zero(ctx, nvars)
        if not isinstance(alpha, Form2) or not isinstance(beta, Form1):
            raise SwanError("serialized pair has the wrong degrees")
        return cls(data["n"], alpha, beta, data.get("pi_tag", "pi"),
                   data.get("mod_log", False))

    def __repr__(self):
        tail = ", mod log" if self.mod_log else ""
        return "[%s, %s]_{%s,%d}%s" % (
            form_to_str(self.alpha), form_to_str(self.beta),
            self.uniformizer_tag, self.n, tail)


@dataclass(frozen=True)
class FilBound:
    """A one-sided result: the class lies in the filtration at `level`, with
    no pair computed."""
    level: int


# ---------------------------------------------------------------------------
# the constant c and symbol shapes


def cbar(field):
    """Reduction of c = pi^{e'} / (zeta_p - 1)^p, the unit comparing the
    symbol formulas to the uniformizer normalization."""
    p = field.p
    if field.eprime is None:
        raise MissingRootOfUnity("e' = ep/(p-1) is not an integer")
    try:
        z = field.zeta(1)
    except (ValueError, ArithmeticError) as exc:
        raise MissingRootOfUnity(str(exc))
    c = field.pi() ** field.eprime / (z - field.one()) ** p
    return c.reduce()


@dataclass(frozen=True)
class UnitUnit:
    """The class (1 + x pi^{e'-n}, y)_p with x, y unit lifts; 0 < n < e',
    p not dividing n, and d(ybar) != 0."""
    field: object
    x: RatFunc
    y: RatFunc
    n: int


@dataclass(frozen=True)
class UnitPi:
    """The class (1 + x pi^{e'-n}, pi)_p with 0 < n < e'."""
    field: object
    x: RatFunc
    n: int


@dataclass(frozen=True)
class XPi:
    """The class (x, pi)_p at the top level n = e', with d(xbar) != 0."""
    field: object
    x: RatFunc


@dataclass(frozen=True)
class XY:
    """The class (x, y)_p at the top level n = e', with
    dlog(xbar) ^ dlog(ybar) != 0."""
    field: object
    x: RatFunc
    y: RatFunc


@dataclass(frozen=True)
class RswExist:
    """A class of order dividing p^{t+1} with pair [0, sum b_i du_i] at
    level n, built by the symbol constructor."""
    field: object
    betas: tuple
    n: int
    t: int


def _const(ctx, nvars, c):
    return RatFunc.const(ctx, nvars, c)


def rsw_of_symbol(shape):
    """The (Swan level, pair) of an explicit symbol shape."""
    field = shape.field
    ctx = field.residue
    c = cbar(field)
    ep = field.eprime
    p = field.p
    if isinstance(shape, UnitUnit):
        n, x, y = shape.n, shape.x, shape.y
        nvars = x.nvars
        if not 0 < n < ep:
            raise OutOfRangeLevel("UnitUnit needs 0 < n < e'")
        if n % p == 0:
            raise OutOfRangeLevel("UnitUnit needs p coprime to n")
        if d(y).is_zero():
            raise SwanError("UnitUnit needs d(ybar) != 0")
        base = dlog(y).scale(x)
        alpha = d(base).scale(_const(ctx, nvars, c))
        beta = base.scale(_const(ctx, nvars, c * ctx.from_int(n)))
        return RefinedSwan(n, alpha, beta)
    if isinstance(shape, UnitPi):
        n, x = shape.n, shape.x
        nvars = x.nvars
        if not 0 < n < ep:
            raise OutOfRangeLevel("UnitPi needs 0 < n < e'")
        beta = d(x).scale(_const(ctx, nvars, c))
        return RefinedSwan(n, Form2.zero(ctx, nvars), beta)
    if isinstance(shape, XPi):
        x = shape.x
        nvars = x.nvars
        if d(x).is_zero():
            raise SwanError("XPi needs d(xbar) != 0")
        beta = dlog(x).scale(_const(ctx, nvars, c))
        return RefinedSwan(ep, Form2.zero(ctx, nvars), beta)
    if isinstance(shape, XY):
        x, y = shape.x, shape.y
        nvars = x.nvars
        alpha = wedge(dlog(x), dlog(y)).scale(_const(ctx, nvars, c))
        if alpha.is_zero():
            raise SwanError("XY needs dlog(xbar) ^ dlog(ybar) != 0")
        return RefinedSwan(ep, alpha, Form1.zero(ctx, nvars))
    if isinstance(shape, RswExist):
        n, t = shape.n, shape.t
        nvars = len(shape.betas)
        if not 0 < n < ep + t * field.e:
            raise OutOfRangeLevel("RswExist needs 0 < n < e' + te")
        beta = Form1(ctx, nvars,
                     tuple(_const(ctx, nvars, b) for b in shape.betas))
        return RefinedSwan(n, Form2.zero(ctx, nvars), beta)
    raise TypeError("unknown shape %r" % (shape,))


def lift_ratfunc(f, field):
    """Lift a rational function over the residue field to one over the local
    field, Teichmueller-lifting each coefficient."""

    def lift_poly(poly):
        return KPoly(field, poly.nvars,
                     {e: teichmuller(field, c) for e, c in poly.terms.items()})

    return KRatFunc(lift_poly(f.num), lift_poly(f.den))


def symbol_class(shape):
    """The Brauer class of an explicit symbol shape, as symbol terms over the
    local field (first arguments use Teichmueller lifts)."""
    field = shape.field
    p = field.p
    ep = field.eprime
    if isinstance(shape, RswExist):
        beta = Form1(field.residue, len(shape.betas),
                     tuple(_const(field.residue, len(shape.betas), b)
                           for b in shape.betas))
        return construct_with_rsw(beta, shape.n, shape.t, field)
    rsw_of_symbol(shape)  # validate parameters
    if isinstance(shape, UnitUnit):
        nvars = shape.x.nvars
        pw = KRatFunc.const(field, nvars, field.pi() ** (ep - shape.n))
        a = KRatFunc.const(field, nvars, 1) + lift_ratfunc(shape.x, field) * pw
        b = lift_ratfunc(shape.y, field)
    elif isinstance(shape, UnitPi):
        nvars = shape.x.nvars
        pw = KRatFunc.const(field, nvars, field.pi() ** (ep - shape.n))
        a = KRatFunc.const(field, nvars, 1) + lift_ratfunc(shape.x, field) * pw
        b = KRatFunc.const(field, nvars, field.pi())
    elif isinstance(shape, XPi):
        nvars = shape.x.nvars
        a = lift_ratfunc(shape.x, field)
        b = KRatFunc.const(field, nvars, field.pi())
    else:  # XY
        nvars = shape.x.nvars
        a = lift_ratfunc(shape.x, field)
        b = lift_ratfunc(shape.y, field)
    return BrauerClass(field, nvars, [SymbolTerm(a, b, p)])


# ---------------------------------------------------------------------------
# constructing a class with prescribed [0, beta]


def construct_with_rsw(beta_target, n, t, field):
    """A Brauer class of order dividing p^{t+1} whose pair at level n is
    [0, beta_target], for beta_target = sum b_i du_i with constant b_i and
    0 < n < e' + te.  Requires zeta_{p^{t+1}} in the field (so that the
    corestriction in the general formula is the identity)."""
    p, e = field.p, field.e
    ep = field.eprime
    if ep is None:
        raise MissingRootOfUnity("e' = ep/(p-1) is not an integer")
    if not 0 < n < ep + t * e:
        raise OutOfRangeLevel("need 0 < n < e' + te")
    if field.zeta_level() < t + 1:
        raise CoprimalityViolated(
            "zeta_{p^%d} not in the field; only trivial corestriction "
            "degree is supported" % (t + 1,))
    eps = 1
    nvars = beta_target.nvars
    for c in beta_target.coeffs:
        if not c.is_constant():
            raise SwanError("beta coefficients must be constant")
    z = field.zeta(1)
    zp = (z - field.one()) ** p
    pt = field.from_int(p ** t)
    pin = field.pi() ** n
    order = p ** (t + 1)
    terms = []
    for i, c in enumerate(beta_target.coeffs):
        b = c.constant_value()
        if b.is_zero():
            continue
        blift = teichmuller(field, b)
        u = KRatFunc.var(field, nvars, i)
        if (n - t * e) % p != 0:
            fac = pt * blift * zp / (field.from_int(eps * (n - t * e)) * pin)
            a = KRatFunc.const(field, nvars, 1) + u * fac
            second = u
        else:
            fac = pt * blift * zp / (field.from_int(eps) * pin)
            a = KRatFunc.const(field, nvars, 1) + u * fac
            second = KRatFunc.const(field, nvars, field.pi())
        terms.append(SymbolTerm(a, second, order))
    return BrauerClass(field, nvars, terms)


# ---------------------------------------------------------------------------
# transformation rules


def basechange_rsw(r, e_rel, a_bar, new_tag=None):
    """Restriction along an extension with ramification index e_rel, where
    a_bar is the reduction of pi / (pi')^e_rel:
    [a^-n (alpha + beta ^ dlog a), a^-n e_rel beta] at level e_rel * n."""
    ctx, nvars = r.ctx, r.nvars
    if r.n < 1:
        raise OutOfRangeLevel("base change needs level >= 1")
    a = a_bar if isinstance(a_bar, RatFunc) else _const(ctx, nvars, a_bar)
    if a.is_zero():
        raise SwanError("a_bar must be a unit")
    ainv = a ** (-r.n)
    alpha = (r.alpha + wedge(r.beta, dlog(a))).scale(ainv)
    beta = r.beta.scale(ainv * _const(ctx, nvars, ctx.from_int(e_rel)))
    tag = new_tag if new_tag is not None else r.uniformizer_tag + "'"
    return RefinedSwan(e_rel * r.n, alpha, beta, tag, mod_log=r.mod_log)


def multiply_by_p_rsw(r, field):
    """The pair of p times a class with pair r; requires n >= e' - 1.
    For n > e': [u alpha, u beta] at n - e with u = reduction of p / pi^e;
    for n = e': the Cartier-corrected pair at e' - e;
    for n = e' - 1: only the filtration bound at n - e."""
    ctx, nvars = r.ctx, r.nvars
    e, p, ep = field.e, field.p, field.eprime
    if ep is None:
        raise MissingRootOfUnity("e' = ep/(p-1) is not an integer")
    if r.n < ep - 1:
        raise BelowThreshold("need n >= e' - 1")
    if r.n == ep - 1:
        return FilBound(r.n - e)
    ubar = (field.from_int(p) / field.pi() ** e).reduce()
    u = _const(ctx, nvars, ubar)
    if r.n > ep:
        return RefinedSwan(r.n - e, r.alpha.scale(u), r.beta.scale(u),
                           r.uniformizer_tag, mod_log=r.mod_log)
    # n = e': d(alpha) = d(beta) = 0 here (p divides e'), so the Cartier
    # operator applies to both components
    alpha = r.alpha.scale(u) + cartier(r.alpha)
    beta = r.beta.scale(u) + cartier(r.beta)
    return RefinedSwan(ep - e, alpha, beta, r.uniformizer_tag,
                       mod_log=r.mod_log)


def add_rsw(r1, r2):
    """Sum of two pairs at the same level and uniformizer."""
    if (r1.n, r1.uniformizer_tag) != (r2.n, r2.uniformizer_tag):
        raise SwanError("can only add pairs at the same level")
    return RefinedSwan(r1.n, r1.alpha + r2.alpha, r1.beta + r2.beta,
                       r1.uniformizer_tag, mod_log=r1.mod_log or r2.mod_log)


def multiply_class_by_p(A):
    """p times a class of symbol terms: each (a, b) of order p^s becomes
    (a, b) of order p^{s-1}; order-p terms become trivial and are dropped."""
    p = A.field.p
    terms = []
    for t in A.terms:
        if t.order % p:
            raise SwanError("term order not divisible by p")
        new_order = t.order // p
        if new_order > 1:
            terms.append(SymbolTerm(t.a, t.b, new_order))
    return BrauerClass(A.field, A.nvars, terms, A.corestrict_to)


def rsw_of_class(A):
    """The pair of a sum of order-p symbols (1 + x pi^{e'-n}, b) read off
    term by term: each term is matched to a UnitUnit or UnitPi shape and the
    shape pairs are added.  Terms whose first argument is not congruent to 1
    are not handled."""
    field = A.field
    p, ep = field.p, field.eprime
    if ep is None:
        raise MissingRootOfUnity("e' = ep/(p-1) is not an integer")
    pi = KRatFunc.const(field, A.nvars, field.pi())
    total = None
    for t in A.terms:
        if t.order != p:
            raise SwanError("rsw_of_class expects order-p terms")
        fac = t.a - KRatFunc.const(field, A.nvars, field.one())
        k = _gauss_val(fac.num)
        kd = _gauss_val(fac.den)
        if k is None or kd is None:
            raise SwanError("first argument is 1 (trivial term)")
        k -= kd
        if not 0 < ep - k < ep:
            raise OutOfRangeLevel("term level e' - %d out of range" % k)
        xbar = _kreduce(fac / pi ** k)
        n_sym = ep - k
        vb = _gauss_val(t.b.num)
        vbd = _gauss_val(t.b.den)
        if vb is None or vbd is None:
            raise SwanError("zero second argument")
        if vb - vbd == 0:
            ybar = _kreduce(t.b)
            shape = UnitUnit(field, xbar, ybar, n_sym)
        elif vb - vbd == 1 and _kreduce(t.b / pi).is_constant():
            shape = UnitPi(field, xbar, n_sym)
        else:
            raise SwanError("unrecognized second argument shape")
        r = rsw_of_symbol(shape)
        total = r if total is None else add_rsw(total, r)
    if total is None:
        raise SwanError("empty class has no pair")
    return total


# ---------------------------------------------------------------------------
# blowup descent


@dataclass(frozen=True)
class EndgameClass:
    """The residue along the exceptional divisor when the level has dropped
    to 0: an Artin-Schreier class given by a linear form F = sum a_i X_i in
    the homogeneous chart coordinates, evaluated as F / pi^(1)."""
    ctx: object
    nvars: int
    coeffs: tuple

    def as_function(self):
        """F / pi^(1) = sum a_i u_i as a polynomial in the chart
        coordinates u_i."""
        return psi(self.ctx, self.nvars, self.coeffs)

    def rsw_complement(self):
        """The level-1 pair of the class away from the hyperplane at
        infinity, in the chart X_1 != 0: [-d(F/X_1), F/X_1] with
        F/X_1 = a_1 + sum_{i>=2} a_i v_i."""
        g = _const(self.ctx, self.nvars, self.coeffs[0])
        for i in range(1, self.nvars):
            g = g + (RatFunc.var(self.ctx, self.nvars, i)
                     * _const(self.ctx, self.nvars, self.coeffs[i]))
        alpha = -d(g)
        return 1, alpha, g

    def to_json(self):
        return {"n": 0, "endgame": True,
                "linear_form": repr(self.as_function())}


def blowup_descend(r, P0, s=None):
    """Descend a pair through the blowup at a point P0 of the special fibre.

    Three regimes: for n > 1 with beta nonzero at P0, the level drops by one
    and the new beta has the constant coefficients of beta at P0; for beta
    vanishing at P0 with p | n (iteration index s), the level drops by two
    and the new pair comes from alpha at P0, with the beta component marked
    `mod_log`; for n = 1, the class becomes unramified and the descent
    returns the Artin-Schreier residue class instead.
    """
    ctx, nvars = r.ctx, r.nvars
    p = ctx.p
    beta0 = specialize_form(r.beta, P0)
    if r.n == 1:
        if s:
            raise SwanError("no iterated descent at level 1")
        return EndgameClass(ctx, nvars, tuple(beta0))
    s_eff = s if s is not None else 0
    beta_vanishes = all(b.is_zero() for b in beta0)
    use_double = (s is not None) or (beta_vanishes
                                     and (r.n + 2 * s_eff) % p == 0)
    if use_double:
        if not beta_vanishes:
            raise SwanError("double descent needs beta to vanish at P0")
        if (r.n + 2 * s_eff) % p != 0:
            raise SwanError("double descent needs p | n")
        if r.n < 2:
            raise OutOfRangeLevel("level too small for a double descent")
        alpha0 = specialize_form(r.alpha, P0)
        alpha_E = Form2(ctx, nvars,
                        {k: _const(ctx, nvars, c) for k, c in alpha0.items()})
        beta_E = phi(ctx, nvars, alpha0).scale(
            _const(ctx, nvars, ctx.from_int(s_eff + 1)))
        return RefinedSwan(r.n - 2, alpha_E, beta_E, r.uniformizer_tag,
                           mod_log=True)
    beta_E = Form1(ctx, nvars, tuple(_const(ctx, nvars, b) for b in beta0))
    return RefinedSwan(r.n - 1, Form2.zero(ctx, nvars), beta_E,
                       r.uniformizer_tag)


# ---------------------------------------------------------------------------
# conductors of Kummer generators


def _gauss_val(poly):
    if not poly.terms:
        return None
    return min(c.valuation() for c in poly.terms.values())


def _shift_poly(poly, v):
    return KPoly(poly.field, poly.nvars,
                 {e: c.shift_down(v) for e, c in poly.terms.items()})


def _kreduce(f):
    """Residue of a rational function over the local field whose numerator
    and denominator have the same Gauss valuation."""
    vn, vd = _gauss_val(f.num), _gauss_val(f.den)
    if vn is None or vd is None or vn != vd:
        raise SwanError("not a unit-valued function")
    num = _shift_poly(f.num, vn)
    den = _shift_poly(f.den, vd)
    ctx = f.field.residue
    rnum = FqPoly(ctx, f.nvars,
                  {e: c.reduce() for e, c in num.terms.items()})
    rden = FqPoly(ctx, f.nvars,
                  {e: c.reduce() for e, c in den.terms.items()})
    if rden.is_zero():
        raise SwanError("denominator reduces to zero")
    return RatFunc(rnum, rden)


def kummer_conductor(a, field=None):
    """The Abbes-Saito conductor of the degree-p Kummer extension generated
    by a p-th root of `a`, an element of the local field with residue field
    F_q(u_1, ..., u_m).

    The generator is normalized modulo p-th powers and matched against the
    four shapes: pi (value e'+1); a unit with non-p-th-power residue
    (value e'); 1 + x pi^m with p coprime to m (value e'+1-m); and
    1 + x pi^{np} with the residue of x not a p-th power (value e'-np).
    """
    if isinstance(a, LocalElem):
        a = KRatFunc.const(a.field, 1, a)
    field = a.field
    p = field.p
    ep = field.eprime
    if ep is None:
        raise MissingRootOfUnity("e' = ep/(p-1) is not an integer")
    cbar(field)  # requires zeta_p
    nvars = a.nvars
    vn, vd = _gauss_val(a.num), _gauss_val(a.den)
    if vn is None:
        raise SwanError("a must be nonzero")
    v = vn - vd
    if v % p != 0:
        return ep + 1
    if v:
        a = a / KRatFunc.const(field, nvars, field.pi() ** v)
    abar = _kreduce(a)
    if not abar.is_pth_power():
        return ep
    a = a / lift_ratfunc(abar.pth_root(), field) ** p
    one = KRatFunc.const(field, nvars, 1)
    for _ in range(ep + 2):
        diff = a - one
        num_val = _gauss_val(diff.num)
        if num_val is None:
            raise Unclassifiable("a is a p-th power at working precision")
        m = num_val - _gauss_val(diff.den)
        if m >= ep:
            raise Unclassifiable("no jump below e'")
        if m % p != 0:
            return ep + 1 - m
        xbar = _kreduce(diff / KRatFunc.const(field, nvars,
                                              field.pi() ** m))
        if not xbar.is_pth_power():
            return ep - m
        h = lift_ratfunc(xbar.pth_root(), field)
        adj = one + h * KRatFunc.const(field, nvars,
                                       field.pi() ** (m // p))
        a = a / adj ** p
    raise Unclassifiable("normalization did not terminate")


# ---------------------------------------------------------------------------
# filtration membership


def in_modified_fil(rsw_above):
    """Membership in the modified filtration at level n, given the pair at
    level n+1 (or None when the class already lies in the plain filtration
    at level n): true iff the beta component at level n+1 vanishes."""
    if rsw_above is None:
        return True
    if isinstance(rsw_above, FilBound):
        return False
    return rsw_above.beta.is_zero()
