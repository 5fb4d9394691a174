"""Differential 1- and 2-forms over F_q(x_1..x_m).

Provides the exterior derivative, wedge products, contraction at points,
the Cartier operator, logarithmic residues along coordinate divisors and
along the hyperplane at infinity, the psi/phi maps identifying cotangent
data at a point with sections on the exceptional P^{m-1} of a blowup, the
standard bases of forms on projective space with bounded poles along a
hyperplane, and the blowup pullback calculus tying these together.
"""

from __future__ import annotations

import re

from .residue_algebra import (
    Fq, FqElem, FqPoly, RatFunc, PoleAtPoint, ExprError, parse_ratfunc,
    ratfunc_to_str,
)


class NotClosed(ArithmeticError):
    pass


class UnsupportedCoefficients(ArithmeticError):
    pass


class PoleOrderTooHigh(ArithmeticError):
    pass


def _as_ratfunc(c, ctx, nvars):
    if isinstance(c, RatFunc):
        return c
    if isinstance(c, (FqElem, int)):
        return RatFunc.const(ctx, nvars, c)
    raise TypeError("cannot coerce %r to a coefficient" % (c,))


class Form1:
    """A 1-form sum f_i dx_i with rational-function coefficients."""

    __slots__ = ("ctx", "nvars", "coeffs")

    def __init__(self, ctx, nvars, coeffs):
        self.ctx = ctx
        self.nvars = nvars
        self.coeffs = tuple(_as_ratfunc(c, ctx, nvars) for c in coeffs)
        assert len(self.coeffs) == nvars

    @staticmethod
    def zero(ctx, nvars):
        z = RatFunc.zero(ctx, nvars)
        return Form1(ctx, nvars, (z,) * nvars)

    @staticmethod
    def dx(ctx, nvars, i):
        """The basis form dx_i (1-indexed)."""
        coeffs = [RatFunc.zero(ctx, nvars)] * nvars
        coeffs[i - 1] = RatFunc.const(ctx, nvars, 1)
        return Form1(ctx, nvars, coeffs)

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other):
        self._check(other)
        return Form1(self.ctx, self.nvars,
                     tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Form1(self.ctx, self.nvars, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, g):
        g = _as_ratfunc(g, self.ctx, self.nvars)
        return Form1(self.ctx, self.nvars, tuple(g * c for c in self.coeffs))

    __mul__ = scale
    __rmul__ = scale

    def __eq__(self, other):
        return (isinstance(other, Form1) and self.nvars == other.nvars
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash(("Form1", self.coeffs))

    def _check(self, other):
        if not isinstance(other, Form1) or other.nvars != self.nvars \
                or other.ctx != self.ctx:
            raise TypeError("form mismatch")

    def __repr__(self):
        return "Form1(%s)" % form_to_str(self)


class Form2:
    """A 2-form sum f_ij dx_i ^ dx_j, stored strictly upper-triangular
    (keys are 1-indexed pairs i < j)."""

    __slots__ = ("ctx", "nvars", "coeffs")

    def __init__(self, ctx, nvars, coeffs):
        self.ctx = ctx
        self.nvars = nvars
        clean = {}
        for (i, j), c in coeffs.items():
            c = _as_ratfunc(c, ctx, nvars)
            if i == j:
                continue
            if i > j:
                i, j, c = j, i, -c
            if (i, j) in clean:
                c = clean[(i, j)] + c
            if not c.is_zero():
                clean[(i, j)] = c
            else:
                clean.pop((i, j), None)
        self.coeffs = clean

    @staticmethod
    def zero(ctx, nvars):
        return Form2(ctx, nvars, {})

    @staticmethod
    def dxdx(ctx, nvars, i, j):
        """The basis form dx_i ^ dx_j (1-indexed, i != j)."""
        return Form2(ctx, nvars, {(i, j): RatFunc.const(ctx, nvars, 1)})

    def get(self, i, j):
        """Coefficient of dx_i ^ dx_j for arbitrary order of i, j."""
        if i < j:
            return self.coeffs.get((i, j), RatFunc.zero(self.ctx, self.nvars))
        return -self.coeffs.get((j, i), RatFunc.zero(self.ctx, self.nvars))

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        if not isinstance(other, Form2) or other.nvars != self.nvars:
            raise TypeError("form mismatch")
        acc = dict(self.coeffs)
        for k, c in other.coeffs.items():
            acc[k] = acc.get(k, RatFunc.zero(self.ctx, self.nvars)) + c
        return Form2(self.ctx, self.nvars, acc)

    def __neg__(self):
        return Form2(self.ctx, self.nvars,
                     {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, g):
        g = _as_ratfunc(g, self.ctx, self.nvars)
        return Form2(self.ctx, self.nvars,
                     {k: g * c for k, c in self.coeffs.items()})

    __mul__ = scale
    __rmul__ = scale

    def __eq__(self, other):
        return (isinstance(other, Form2) and self.nvars == other.nvars
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash(("Form2", tuple(sorted(self.coeffs.items(),
                                           key=lambda kv: kv[0]))))

    def __repr__(self):
        return "Form2(%s)" % form_to_str(self)


class TangentVec:
    """A tangent vector at a point: components in the residue field."""

    __slots__ = ("ctx", "components")

    def __init__(self, ctx, components):
        self.ctx = ctx
        self.components = tuple(
            c if isinstance(c, FqElem) else ctx.from_int(c) for c in components)

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __eq__(self, other):
        return (isinstance(other, TangentVec)
                and self.components == other.components)

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return "TangentVec(%s)" % (self.components,)


# ---------------------------------------------------------------------------
# exterior derivative, wedge, contraction

def d(omega):
    """Exterior derivative of a rational function or a 1-form."""
    if isinstance(omega, RatFunc):
        return Form1(omega.ctx, omega.nvars,
                     tuple(omega.deriv(i) for i in range(omega.nvars)))
    if isinstance(omega, Form1):
        coeffs = {}
        for j in range(omega.nvars):
            fj = omega.coeffs[j]
            for i in range(omega.nvars):
                if i != j:
                    # d(f_j) ^ dx_j picks up df_j/dx_i dx_i ^ dx_j
                    coeffs[(i + 1, j + 1)] = coeffs.get(
                        (i + 1, j + 1), RatFunc.zero(omega.ctx, omega.nvars)
                    ) + fj.deriv(i)
        return Form2(omega.ctx, omega.nvars, coeffs)
    raise TypeError("d expects a RatFunc or Form1")


def dlog(f):
    """dlog f = df / f."""
    return d(f).scale(RatFunc.const(f.ctx, f.nvars, 1) / f)


def wedge(a, b):
    """Wedge product of two 1-forms."""
    a._check(b)
    coeffs = {}
    for i in range(a.nvars):
        for j in range(i + 1, a.nvars):
            c = a.coeffs[i] * b.coeffs[j] - a.coeffs[j] * b.coeffs[i]
            coeffs[(i + 1, j + 1)] = c
    return Form2(a.ctx, a.nvars, coeffs)


def d2_coefficients(omega):
    """The coefficients of the 3-form d(omega) for a 2-form omega, as a dict
    {(i,j,k): RatFunc} with i<j<k (1-indexed); used for closedness checks."""
    out = {}
    n = omega.nvars
    zero = RatFunc.zero(omega.ctx, n)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                c = (omega.get(j, k).deriv(i - 1)
                     - omega.get(i, k).deriv(j - 1)
                     + omega.get(i, j).deriv(k - 1))
                if not c.is_zero():
                    out[(i, j, k)] = c
    return out


def is_closed(omega):
    if isinstance(omega, Form1):
        return d(omega).is_zero()
    if isinstance(omega, Form2):
        return not d2_coefficients(omega)
    raise TypeError("is_closed expects a form")


def contract(beta, point, v):
    """beta_{P_0}(v): specialize the coefficients at the point, then pair."""
    acc = beta.ctx.zero()
    for i in range(beta.nvars):
        acc = acc + beta.coeffs[i].eval_at(point) * v[i]
    return acc


def contract2(alpha, point, v, w):
    """alpha_{P_0}(v, w): specialize at the point, then pair alternatingly."""
    acc = alpha.ctx.zero()
    for (i, j), c in alpha.coeffs.items():
        cij = c.eval_at(point)
        acc = acc + cij * (v[i - 1] * w[j - 1] - v[j - 1] * w[i - 1])
    return acc


def specialize_form(omega, point):
    """Constant form at a point: tuple of FqElem (Form1) or dict (Form2)."""
    if isinstance(omega, Form1):
        return tuple(c.eval_at(point) for c in omega.coeffs)
    if isinstance(omega, Form2):
        return {k: c.eval_at(point) for k, c in omega.coeffs.items()}
    raise TypeError("specialize_form expects a form")


# ---------------------------------------------------------------------------
# Cartier operator

def _laurent_terms(f):
    """Decompose a rational function with monomial denominator into Laurent
    terms {exponent-tuple (possibly negative entries): FqElem}."""
    den = f.den
    if len(den.terms) != 1:
        raise UnsupportedCoefficients(
            "Cartier needs polynomial coefficients or monomial denominators")
    (dexp, dc), = den.terms.items()
    dcinv = dc.inverse()
    out = {}
    for nexp, nc in f.num.terms.items():
        key = tuple(a - b for a, b in zip(nexp, dexp))
        out[key] = nc * dcinv
    return out


def _from_laurent(ctx, nvars, terms):
    shift = [0] * nvars
    for exp in terms:
        for i, a in enumerate(exp):
            shift[i] = max(shift[i], -a)
    num = FqPoly.zero(ctx, nvars)
    for exp, c in terms.items():
        num = num + FqPoly.monomial(ctx, nvars,
                                    tuple(a + s for a, s in zip(exp, shift)), c)
    den = FqPoly.monomial(ctx, nvars, tuple(shift), ctx.one())
    return RatFunc(num, den)


def cartier(omega):
    """The Cartier operator on a closed form with polynomial (or monomial-
    denominator) coefficients, acting termwise on the p-basis decomposition."""
    p = omega.ctx.p
    if not is_closed(omega):
        raise NotClosed("Cartier operator requires a closed form")
    if isinstance(omega, Form1):
        new = []
        for i in range(omega.nvars):
            terms = _laurent_terms(omega.coeffs[i])
            out = {}
            for exp, c in terms.items():
                img = _cartier_monomial(exp, (i,), p)
                if img is not None:
                    out[img] = out.get(img, omega.ctx.zero()) + c.pth_root()
            new.append(_from_laurent(omega.ctx, omega.nvars, out))
        return Form1(omega.ctx, omega.nvars, new)
    if isinstance(omega, Form2):
        newc = {}
        for (i, j), f in omega.coeffs.items():
            terms = _laurent_terms(f)
            out = {}
            for exp, c in terms.items():
                img = _cartier_monomial(exp, (i - 1, j - 1), p)
                if img is not None:
                    out[img] = out.get(img, omega.ctx.zero()) + c.pth_root()
            if out:
                newc[(i, j)] = _from_laurent(omega.ctx, omega.nvars, out)
        return Form2(omega.ctx, omega.nvars, newc)
    raise TypeError("cartier expects a form")


def _cartier_monomial(exp, wedge_indices, p):
    """Image exponent of x^exp dx_{i..} under Cartier, or None if killed.
    For each wedged index the rule is x^a dx -> x^((a+1)/p - 1) dx when
    p | a+1; spectator exponents must be divisible by p."""
    out = []
    for idx, a in enumerate(exp):
        if idx in wedge_indices:
            if (a + 1) % p:
                return None
            out.append((a + 1) // p - 1)
        else:
            if a % p:
                return None
            out.append(a // p)
    return tuple(out)


# ---------------------------------------------------------------------------
# residues along coordinate divisors

def _pole_order(f, j):
    """Multiplicity of x_j (1-indexed) in the denominator of f (canonical
    form, so this is the pole order along x_j = 0)."""
    den = f.den
    xj = FqPoly.var(f.ctx, f.nvars, j - 1)
    order = 0
    while True:
        try:
            den = den.exact_div(xj)
        except ValueError:
            return order
        order += 1


def _restrict(f, j):
    """Restriction of f to the divisor x_j = 0 (requires no pole there)."""
    if _pole_order(f, j) > 0:
        raise PoleOrderTooHigh("coefficient has a pole along the divisor")
    values = [RatFunc.var(f.ctx, f.nvars, i) for i in range(f.nvars)]
    values[j - 1] = RatFunc.zero(f.ctx, f.nvars)
    return f.subs(values)


def log_residue(omega, j):
    """Residue of a form with at worst a logarithmic pole along x_j = 0.

    For a 1-form eta + g dlog x_j this is g restricted to the divisor (a
    rational function); for a 2-form eta + g ^ dlog x_j it is the 1-form g
    restricted to the divisor.  Raises PoleOrderTooHigh when the pole along
    x_j = 0 is worse than logarithmic.
    """
    ctx, n = omega.ctx, omega.nvars
    xj = RatFunc.var(ctx, n, j - 1)
    if isinstance(omega, Form1):
        for i in range(n):
            limit = 1 if i == j - 1 else 0
            if _pole_order(omega.coeffs[i], j) > limit:
                raise PoleOrderTooHigh("pole order exceeds logarithmic")
        return _restrict(xj * omega.coeffs[j - 1], j)
    if isinstance(omega, Form2):
        res = [RatFunc.zero(ctx, n)] * n
        for (i, l), f in omega.coeffs.items():
            involves = (i == j or l == j)
            if _pole_order(f, j) > (1 if involves else 0):
                raise PoleOrderTooHigh("pole order exceeds logarithmic")
            if i == j:
                # f dx_j ^ dx_l = -(x_j f) dx_l ^ dlog x_j
                res[l - 1] = res[l - 1] - _restrict(xj * f, j)
            elif l == j:
                # f dx_i ^ dx_j = (x_j f) dx_i ^ dlog x_j
                res[i - 1] = res[i - 1] + _restrict(xj * f, j)
        return Form1(ctx, n, res)
    raise TypeError("log_residue expects a form")


# ---------------------------------------------------------------------------
# generic pullback under a substitution x_i -> S_i

def pullback(omega, subs_list):
    """Pull back a form along the substitution x_i -> subs_list[i], where the
    substitutions are rational functions in the target coordinates (same
    variable count)."""
    ctx, n = omega.ctx, omega.nvars
    imgs = [_as_ratfunc(s, ctx, n) for s in subs_list]
    dimgs = [d(s) for s in imgs]
    if isinstance(omega, RatFunc):
        return omega.subs(imgs)
    if isinstance(omega, Form1):
        acc = Form1.zero(ctx, n)
        for i in range(n):
            fi = omega.coeffs[i]
            if not fi.is_zero():
                acc = acc + dimgs[i].scale(fi.subs(imgs))
        return acc
    if isinstance(omega, Form2):
        acc = Form2.zero(ctx, n)
        for (i, j), f in omega.coeffs.items():
            acc = acc + wedge(dimgs[i - 1], dimgs[j - 1]).scale(f.subs(imgs))
        return acc
    raise TypeError("pullback expects a form or rational function")


# ---------------------------------------------------------------------------
# psi / phi and the chart calculus on the exceptional divisor

def psi(ctx, nvars, beta0):
    """psi(sum b_i dx_i) = sum b_i X_i^(1): a linear form, represented as a
    polynomial in X_1..X_m (variable i of the polynomial ring)."""
    acc = FqPoly.zero(ctx, nvars)
    for i, b in enumerate(beta0):
        if isinstance(b, int):
            b = ctx.from_int(b)
        acc = acc + FqPoly.monomial(
            ctx, nvars, tuple(1 if t == i else 0 for t in range(nvars)), b)
    return acc


def phi(ctx, nvars, alpha0):
    """phi(dx_i ^ dx_j) = (X_j^(1))^2 d(X_i^(1)/X_j^(1)) = X_j dX_i - X_i dX_j,
    extended linearly over a constant 2-form; a Form1 with polynomial
    coefficients in X_1..X_m."""
    acc = Form1.zero(ctx, nvars)
    for (i, j), c in alpha0.items():
        if isinstance(c, int):
            c = ctx.from_int(c)
        xi = RatFunc.var(ctx, nvars, i - 1)
        xj = RatFunc.var(ctx, nvars, j - 1)
        term = (Form1.dx(ctx, nvars, i).scale(xj)
                - Form1.dx(ctx, nvars, j).scale(xi))
        acc = acc + term.scale(RatFunc.const(ctx, nvars, c))
    return acc


def psi_over_chart(ctx, nvars, beta0):
    """psi(beta0)/X_1 in the chart u_i = X_i/X_1: the function
    b_1 + b_2 u_2 + ... + b_m u_m (variable 1 is unused)."""
    subs = [RatFunc.const(ctx, nvars, 1)] + \
        [RatFunc.var(ctx, nvars, i) for i in range(1, nvars)]
    lin = psi(ctx, nvars, beta0)
    return RatFunc(lin, FqPoly.const(ctx, nvars, ctx.one())).subs(subs)


def phi_over_chart(ctx, nvars, alpha0):
    """phi(alpha0)/(X_1)^2 in the chart u_i = X_i/X_1 (so u_1 = 1, du_1 = 0)."""
    subs = [RatFunc.const(ctx, nvars, 1)] + \
        [RatFunc.var(ctx, nvars, i) for i in range(1, nvars)]
    return pullback(phi(ctx, nvars, alpha0), subs)


# ---------------------------------------------------------------------------
# bases of forms on P^n with bounded poles along the hyperplane X_0 = 0

def logdiff_basis(ctx, kind, n):
    """Standard bases of global forms on P^n in the chart u_i = X_i/X_0.

    kind "one-logH": the n forms d(X_i/X_0) = du_i spanning
        H^0(P^n, Omega^1(H + log H)); hyperplane residues -X_i.
    kind "one-2H": the n(n+1)/2 forms (X_i^2/X_0^2) d(X_j/X_i), 0 <= i < j,
        spanning H^0(P^n, Omega^1(2H)).
    kind "two-2H-logH": the n(n-1)/2 forms du_i ^ du_j, i < j, spanning
        H^0(P^n, Omega^2(2H + log H)); hyperplane residues X_i^2 d(X_j/X_i).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if kind == "one-logH":
        return [Form1.dx(ctx, n, i) for i in range(1, n + 1)]
    if kind == "one-2H":
        out = []
        for i in range(0, n + 1):
            for j in range(i + 1, n + 1):
                if i == 0:
                    out.append(Form1.dx(ctx, n, j))
                else:
                    ui = RatFunc.var(ctx, n, i - 1)
                    uj = RatFunc.var(ctx, n, j - 1)
                    # u_i^2 d(u_j/u_i) = u_i du_j - u_j du_i
                    out.append(Form1.dx(ctx, n, j).scale(ui)
                               - Form1.dx(ctx, n, i).scale(uj))
        return out
    if kind == "two-2H-logH":
        out = []
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                out.append(Form2.dxdx(ctx, n, i, j))
        return out
    raise ValueError("unknown basis kind %r" % (kind,))


def hyperplane_residue(omega, twist):
    """Twisted residue along the hyperplane X_0 = 0 of a form given in the
    chart u_i = X_i/X_0 of P^n.

    Passes to the chart w = X_0/X_1, v_i = X_i/X_1 (u_1 = 1/w, u_i = v_i/w),
    multiplies by w^twist (the O(twist * H) trivialization by X_1^twist) and
    takes the log residue along w = 0.  The result is expressed in the
    coordinates v_2..v_n of the hyperplane: a rational function for 1-forms
    (section of O(twist) over the chart), a Form1 for 2-forms.
    """
    ctx, n = omega.ctx, omega.nvars
    w = RatFunc.var(ctx, n, 0)
    winv = RatFunc.const(ctx, n, 1) / w
    subs = [winv] + [RatFunc.var(ctx, n, i) * winv for i in range(1, n)]
    pulled = pullback(omega, subs)
    tw = w ** twist
    return log_residue(pulled.scale(tw), 1)


# ---------------------------------------------------------------------------
# blowup pullback

def blowup_pullback(omega, translate_to=None):
    """Pull a form regular at the origin back along the blowup at the origin,
    in the chart x_1 = t, x_i = t u_i (i >= 2); divide by t (1-forms) or t^2
    (2-forms); return (pole order at the exceptional divisor, log residue).

    The residue is a rational function in u_2..u_m for 1-forms (equal to
    psi(beta_0)/X_1 in the chart) and a Form1 for 2-forms (equal to
    phi(alpha_0)/(X_1)^2).  translate_to recentres the form at a point first.
    """
    ctx, n = omega.ctx, omega.nvars
    if translate_to is not None:
        if isinstance(omega, Form1):
            omega = Form1(ctx, n, tuple(c.translate(translate_to)
                                        for c in omega.coeffs))
        else:
            omega = Form2(ctx, n, {k: c.translate(translate_to)
                                   for k, c in omega.coeffs.items()})
    origin = tuple(ctx.zero() for _ in range(n))
    specialize_form(omega, origin)  # raises PoleAtPoint if not regular
    t = RatFunc.var(ctx, n, 0)
    subs = [t] + [t * RatFunc.var(ctx, n, i) for i in range(1, n)]
    pulled = pullback(omega, subs)
    power = 1 if isinstance(omega, Form1) else 2
    tinv = RatFunc.const(ctx, n, 1) / t ** power
    divided = pulled.scale(tinv)
    if not _is_log_regular(divided):
        raise PoleOrderTooHigh("pullback not log-regular after division")
    # largest r with pulled/t^r still having at worst a log pole at t = 0
    pole = power
    while pole < power + 8:
        nxt = pulled.scale(RatFunc.const(ctx, n, 1) / t ** (pole + 1))
        if not _is_log_regular(nxt):
            break
        pole += 1
    residue = log_residue(divided, 1)
    return pole, residue


def _is_log_regular(omega):
    """Whether a form has at worst a logarithmic pole along x_1 = 0."""
    if isinstance(omega, Form1):
        for i, c in enumerate(omega.coeffs):
            if _pole_order(c, 1) > (1 if i == 0 else 0):
                return False
        return True
    for (i, j), c in omega.coeffs.items():
        if _pole_order(c, 1) > (1 if i == 1 or j == 1 else 0):
            return False
    return True


# ---------------------------------------------------------------------------
# parsing and printing in the grammar f1*dx1 + f2*dx2 + f12*dx1^dx2

_TERM_RE = re.compile(r"^(?:(.*)\*)?d[xu](\d+)(?:\^d[xu](\d+))?$")


def _split_top_level(s, sep):
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_form(text, ctx, nvars):
    """Parse a form in the grammar `f1*dx1 + f2*dx2 + f12*dx1^dx2` (du also
    accepted); returns a Form1 or Form2 (mixed terms are rejected)."""
    text = text.replace(" ", "")
    if not text or text == "0":
        raise ExprError("empty form (write an explicit dx term)")
    one_coeffs = {}
    two_coeffs = {}
    for piece in _split_top_level(text, "+"):
        if not piece:
            raise ExprError("empty term in form expression")
        sign = 1
        while piece.startswith("-"):
            sign = -sign
            piece = piece[1:]
        m = _TERM_RE.match(piece)
        if not m:
            raise ExprError("cannot parse form term %r" % piece)
        coeff_src, i_src, j_src = m.groups()
        coeff = (RatFunc.const(ctx, nvars, 1) if coeff_src is None
                 else parse_ratfunc(coeff_src, ctx, nvars))
        if sign < 0:
            coeff = -coeff
        i = int(i_src)
        if not 1 <= i <= nvars:
            raise ExprError("variable index %d out of range" % i)
        if j_src is None:
            one_coeffs[i] = one_coeffs.get(i, RatFunc.zero(ctx, nvars)) + coeff
        else:
            j = int(j_src)
            if not 1 <= j <= nvars:
                raise ExprError("variable index %d out of range" % j)
            if i == j:
                raise ExprError("dx%d^dx%d vanishes" % (i, j))
            key = (i, j)
            two_coeffs[key] = two_coeffs.get(
                key, RatFunc.zero(ctx, nvars)) + coeff
    if one_coeffs and two_coeffs:
        raise ExprError("mixed 1-form and 2-form terms")
    if two_coeffs:
        return Form2(ctx, nvars, two_coeffs)
    coeffs = [one_coeffs.get(i, RatFunc.zero(ctx, nvars))
              for i in range(1, nvars + 1)]
    return Form1(ctx, nvars, coeffs)


def form_to_str(omega, var="x"):
    """Print a form in the grammar used by parse_form."""
    parts = []
    if isinstance(omega, Form1):
        for i, c in enumerate(omega.coeffs):
            if c.is_zero():
                continue
            cs = ratfunc_to_str(c)
            head = "" if cs == "1" else ("(%s)*" % cs if "+" in cs or
                                         cs.startswith("-") else cs + "*")
            parts.append("%sd%s%d" % (head, var, i + 1))
    elif isinstance(omega, Form2):
        for (i, j) in sorted(omega.coeffs):
            c = omega.coeffs[(i, j)]
            cs = ratfunc_to_str(c)
            head = "" if cs == "1" else ("(%s)*" % cs if "+" in cs or
                                         cs.startswith("-") else cs + "*")
            parts.append("%sd%s%d^d%s%d" % (head, var, i, var, j))
    else:
        raise TypeError("form_to_str expects a form")
    return " + ".join(parts) if parts else "0"
