"""Finite-field and residue-function-field arithmetic.

Implements F_q = F_p[t]/(h) for a fixed irreducible h per (p, f), the trace
down to F_p, Artin-Schreier invariants, and multivariate rational functions
over F_q with a canonical normal form (gcd removed, denominator monic under
graded lex with x1 > x2 > ...).  These rational functions model elements of
the residue function field F = F_q(x_1..x_m).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
import itertools

MAX_VARS = 4


class PoleAtPoint(ZeroDivisionError):
    pass


# ---------------------------------------------------------------------------
# univariate helpers over F_p (dense coefficient lists, low degree first)

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul_mod(a, b, mod, p):
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _poly_rem(res, mod, p)


def _poly_rem(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], -1, p)
    while len(a) - 1 >= dm and a:
        if a[-1] == 0:
            a.pop()
            continue
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(mod):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    return _poly_trim(a)


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _poly_rem(a, b, p)
    return a


def _poly_powmod(base, exp, mod, p):
    result = [1]
    base = _poly_rem(base, mod, p)
    while exp:
        if exp & 1:
            result = _poly_mul_mod(result, base, mod, p)
        base = _poly_mul_mod(base, base, mod, p)
        exp >>= 1
    return result


def _is_irreducible(lower, p):
    """lower = tuple of lower coefficients of a monic degree-f polynomial."""
    f = len(lower)
    mod = list(lower) + [1]
    # x^(p^f) == x and x^(p^d) != x for proper divisors d
    x = [0, 1]
    xp = _poly_powmod(x, p ** f, mod, p)
    if _poly_trim([(a - b) % p for a, b in itertools.zip_longest(xp, x, fillvalue=0)]):
        return False
    for d in range(1, f):
        if f % d:
            continue
        xd = _poly_powmod(x, p ** d, mod, p)
        diff = _poly_trim([(a - b) % p for a, b in itertools.zip_longest(xd, x, fillvalue=0)])
        g = _poly_gcd(mod, diff, p) if diff else mod
        if len(g) - 1 >= 1:
            return False
    return True


# Fixed defining polynomials (lower coefficients of monic polynomials,
# constant term first) for the residue fields used throughout; chosen to be
# the standard (Conway) polynomials so that e.g. F_8 = F_2(t), t^3 = t + 1.
DEFINING_POLYS = {
    (2, 2): (1, 1), (2, 3): (1, 1, 0), (2, 4): (1, 1, 0, 0),
    (3, 2): (2, 2), (3, 3): (1, 2, 0), (3, 4): (2, 0, 0, 2),
    (5, 2): (2, 4), (5, 3): (3, 3, 0),
    (7, 2): (3, 6),
}


@lru_cache(maxsize=None)
def irreducible_poly(p, f):
    """Defining polynomial of F_{p^f}: from the shipped table when present,
    otherwise the first monic irreducible of degree f over F_p in
    lexicographic order of the lower-coefficient tuple.  Deterministic across
    runs; doubles as the defining polynomial of the unramified part of local
    fields so residue maps line up."""
    if f == 1:
        return (0,)
    if (p, f) in DEFINING_POLYS:
        lower = DEFINING_POLYS[(p, f)]
        assert _is_irreducible(lower, p)
        return lower
    for lower in itertools.product(range(p), repeat=f):
        if lower[0] == 0:
            continue  # reducible: x divides
        if _is_irreducible(lower, p):
            return tuple(lower)
    raise ValueError("no irreducible polynomial found")


# ---------------------------------------------------------------------------
# F_q

class Fq:
    """The field F_q, q = p^f, as F_p[t]/(h) with h fixed per (p, f)."""

    def __init__(self, p, f, poly=None):
        self.p = p
        self.f = f
        self.q = p ** f
        self.poly = tuple(poly) if poly is not None else irreducible_poly(p, f)

    def __eq__(self, other):
        return (isinstance(other, Fq)
                and (self.p, self.f, self.poly) == (other.p, other.f, other.poly))

    def __hash__(self):
        return hash((self.p, self.f, self.poly))

    def __repr__(self):
        return "Fq(%d, %d)" % (self.p, self.f)

    def elem(self, coeffs):
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) != self.f:
            coeffs = tuple(list(coeffs)[: self.f] + [0] * (self.f - len(coeffs)))
        return FqElem(self, coeffs)

    def from_int(self, n):
        return self.elem((n,) + (0,) * (self.f - 1))

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def gen(self):
        if self.f == 1:
            return self.from_int(1)
        return self.elem((0, 1) + (0,) * (self.f - 2))

    def elements(self):
        """All elements in a fixed deterministic order."""
        return [self.elem(c) for c in itertools.product(range(self.p), repeat=self.f)]

    def nonzero_elements(self):
        return [a for a in self.elements() if not a.is_zero()]


class FqElem:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = coeffs

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        return isinstance(other, FqElem) and self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        if not isinstance(other, FqElem):
            return NotImplemented
        p = self.ctx.p
        return FqElem(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return FqElem(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        if not isinstance(other, FqElem):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        if not isinstance(other, FqElem):
            return NotImplemented
        ctx = self.ctx
        p = ctx.p
        prod = [0] * (2 * ctx.f - 1) if ctx.f > 1 else [0]
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] = (prod[i + j] + a * b) % p
        if ctx.f > 1:
            prod = _poly_rem(prod, list(ctx.poly) + [1], p)
        else:
            prod = _poly_trim([prod[0] % p])
        prod = list(prod) + [0] * (ctx.f - len(prod))
        return FqElem(ctx, tuple(prod[: ctx.f]))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in F_q")
        # extended Euclid in F_p[t] against the defining polynomial
        ctx = self.ctx
        p = ctx.p
        if ctx.f == 1:
            return ctx.from_int(pow(self.coeffs[0], -1, p))
        r0, r1 = list(ctx.poly) + [1], _poly_trim(list(self.coeffs))
        s0, s1 = [], [1]
        while r1:
            q, r = _poly_divmod_fp(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_trim([(a - b) % p for a, b in itertools.zip_longest(
                s0, _poly_mul_fp(q, s1, p), fillvalue=0)])
        lead_inv = pow(r0[-1], -1, p)
        inv = [(c * lead_inv) % p for c in s0]
        inv = inv + [0] * (ctx.f - len(inv))
        return FqElem(ctx, tuple(inv[: ctx.f]))

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        return self * other.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self):
        return self ** self.ctx.p

    def pth_root(self):
        # Frobenius is an automorphism: the p-th root is x^(p^(f-1))
        return self ** (self.ctx.p ** (self.ctx.f - 1))

    def __repr__(self):
        return "FqElem%r" % (self.coeffs,)


def _poly_mul_fp(a, b, p):
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _poly_trim(res)


def _poly_divmod_fp(a, b, p):
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b) and a:
        if a[-1] == 0:
            a.pop()
            continue
        c = (a[-1] * inv) % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a.pop()
    return _poly_trim(q), _poly_trim(a)


def trace_to_prime(a):
    """Tr_{F_q/F_p}(a) = a + a^p + ... + a^(p^(f-1)), returned in F_p (int)."""
    acc = a
    term = a
    for _ in range(a.ctx.f - 1):
        term = term.frobenius()
        acc = acc + term
    return acc.coeffs[0]


def artin_schreier_inv(a, p=None):
    """The invariant Tr(a)/p as an element of Q/Z (a Fraction in [0,1))."""
    if p is None:
        p = a.ctx.p
    return Fraction(trace_to_prime(a), p) % 1


def embed_fq(a, big):
    """Embed a in F_{p^f} into F_{p^(f*k)} via the first root (in the fixed
    element order) of the small defining polynomial in the big field."""
    small = a.ctx
    if small == big:
        return a
    root = _embedding_root(small, big)
    acc = big.zero()
    for i in reversed(range(small.f)):
        acc = acc * root + big.from_int(a.coeffs[i])
    return acc


@lru_cache(maxsize=None)
def _embedding_root(small, big):
    if big.f % small.f:
        raise ValueError("no embedding: degree mismatch")
    poly = list(small.poly) + [1]
    for cand in big.elements():
        acc = big.zero()
        for c in reversed(poly):
            acc = acc * cand + big.from_int(c)
        if acc.is_zero():
            return cand
    raise ValueError("no root found for embedding")


# ---------------------------------------------------------------------------
# multivariate polynomials over F_q

def _grlex_key(exps):
    return (sum(exps), exps)


class FqPoly:
    """Multivariate polynomial over F_q; terms maps exponent tuples to
    nonzero FqElem coefficients."""

    __slots__ = ("ctx", "nvars", "terms")

    def __init__(self, ctx, nvars, terms):
        if nvars > MAX_VARS:
            raise ValueError("at most %d variables supported" % MAX_VARS)
        self.ctx = ctx
        self.nvars = nvars
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    # -- constructors
    @classmethod
    def zero(cls, ctx, nvars):
        return cls(ctx, nvars, {})

    @classmethod
    def const(cls, ctx, nvars, c):
        if isinstance(c, int):
            c = ctx.from_int(c)
        return cls(ctx, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, ctx, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(ctx, nvars, {tuple(e): ctx.one()})

    @classmethod
    def monomial(cls, ctx, nvars, exps, c=None):
        c = ctx.one() if c is None else c
        return cls(ctx, nvars, {tuple(exps): c})

    # -- predicates
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, self.ctx.zero())

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, v):
        return max((e[v] for e in self.terms), default=0)

    def involves(self, v):
        return any(e[v] for e in self.terms)

    # -- arithmetic
    def _coerce(self, other):
        if isinstance(other, (int, FqElem)):
            return FqPoly.const(self.ctx, self.nvars, other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if not isinstance(other, FqPoly):
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, self.ctx.zero()) + c
        return FqPoly(self.ctx, self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return FqPoly(self.ctx, self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if not isinstance(other, FqPoly):
            return NotImplemented
        terms = {}
        zero = self.ctx.zero()
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, zero) + c1 * c2
        return FqPoly(self.ctx, self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = FqPoly.const(self.ctx, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, FqElem)):
            other = self._coerce(other)
        return (isinstance(other, FqPoly) and self.ctx == other.ctx
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ctx, self.nvars, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    # -- structure
    def leading(self):
        """(exponents, coefficient) of the graded-lex leading term."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def deriv(self, v):
        terms = {}
        zero = self.ctx.zero()
        for e, c in self.terms.items():
            if e[v]:
                ne = list(e)
                ne[v] -= 1
                ne = tuple(ne)
                terms[ne] = terms.get(ne, zero) + c * e[v]
        return FqPoly(self.ctx, self.nvars, terms)

    def eval(self, point):
        acc = self.ctx.zero()
        for e, c in self.terms.items():
            term = c
            for v, exp in enumerate(e):
                if exp:
                    term = term * point[v] ** exp
            acc = acc + term
        return acc

    def subs(self, values):
        """Substitute RatFunc values for the variables; returns a RatFunc."""
        acc = RatFunc.zero(self.ctx, self.nvars)
        for e, c in self.terms.items():
            term = RatFunc.const(self.ctx, self.nvars, c)
            for v, exp in enumerate(e):
                if exp:
                    term = term * values[v] ** exp
            acc = acc + term
        return acc

    def exact_div(self, b):
        """Exact division; raises ValueError if b does not divide self."""
        if b.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = self
        quot = FqPoly.zero(self.ctx, self.nvars)
        be, bc = b.leading()
        bc_inv = bc.inverse()
        while not rem.is_zero():
            re, rc = rem.leading()
            qe = tuple(a - bm for a, bm in zip(re, be))
            if any(x < 0 for x in qe):
                raise ValueError("not divisible")
            qt = FqPoly.monomial(self.ctx, self.nvars, qe, rc * bc_inv)
            quot = quot + qt
            rem = rem - qt * b
        return quot

    def monic(self):
        if self.is_zero():
            return self
        _, lc = self.leading()
        return self * lc.inverse()

    def is_pth_power(self):
        p = self.ctx.p
        return all(all(x % p == 0 for x in e) for e in self.terms)

    def pth_root(self):
        p = self.ctx.p
        terms = {tuple(x // p for x in e): c.pth_root() for e, c in self.terms.items()}
        return FqPoly(self.ctx, self.nvars, terms)

    def frobenius_poly(self):
        """Coefficient-wise and exponent-wise p-th power (equals self**p)."""
        p = self.ctx.p
        return FqPoly(self.ctx, self.nvars,
                      {tuple(x * p for x in e): c.frobenius() for e, c in self.terms.items()})

    def __repr__(self):
        return "FqPoly(%s)" % poly_to_str(self)


# gcd machinery ------------------------------------------------------------

def _univ_coeffs(a, v):
    """View a as univariate in variable v: dict degree -> FqPoly free of v."""
    out = {}
    for e, c in a.terms.items():
        d = e[v]
        ne = list(e)
        ne[v] = 0
        key = tuple(ne)
        cur = out.setdefault(d, {})
        cur[key] = cur.get(key, a.ctx.zero()) + c
    return {d: FqPoly(a.ctx, a.nvars, t) for d, t in out.items()
            if any(not c.is_zero() for c in t.values())}


def _from_univ(ctx, nvars, v, coeffs):
    terms = {}
    for d, poly in coeffs.items():
        for e, c in poly.terms.items():
            ne = list(e)
            ne[v] = d
            terms[tuple(ne)] = c
    return FqPoly(ctx, nvars, terms)


def _content(a, v):
    g = None
    for _, coeff in sorted(_univ_coeffs(a, v).items()):
        g = coeff if g is None else poly_gcd(g, coeff)
    return g if g is not None else FqPoly.zero(a.ctx, a.nvars)


def _prem(a, b, v):
    """Pseudo-remainder of a by b with respect to variable v."""
    ac = _univ_coeffs(a, v)
    bc = _univ_coeffs(b, v)
    db = max(bc)
    lcb = bc[db]
    while ac and max(ac) >= db:
        da = max(ac)
        lca = ac[da]
        # a <- lcb*a - lca*x^(da-db)*b
        new = {}
        for d, c in ac.items():
            new[d] = c * lcb
        for d, c in bc.items():
            nd = d + da - db
            new[nd] = new.get(nd, FqPoly.zero(a.ctx, a.nvars)) - c * lca
        ac = {d: c for d, c in new.items() if not c.is_zero()}
    return _from_univ(a.ctx, a.nvars, v, ac)


def poly_gcd(a, b):
    """Monic gcd of multivariate polynomials over F_q (primitive PRS)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    vs = [v for v in range(a.nvars) if a.involves(v) or b.involves(v)]
    if not vs:
        return FqPoly.const(a.ctx, a.nvars, 1)
    v = vs[0]
    ca, cb = _content(a, v), _content(b, v)
    c = poly_gcd(ca, cb)
    pa, pb = a.exact_div(ca), b.exact_div(cb)
    if pa.degree_in(v) < pb.degree_in(v):
        pa, pb = pb, pa
    while not pb.is_zero():
        if pb.degree_in(v) == 0:
            # coprime in v; only the content survives
            return c.monic()
        r = _prem(pa, pb, v)
        if not r.is_zero():
            r = r.exact_div(_content(r, v))
        pa, pb = pb, r
    return (c * pa.exact_div(_content(pa, v))).monic()


# ---------------------------------------------------------------------------
# rational functions

class RatFunc:
    """Element of F_q(x_1..x_m) in canonical form: gcd(num, den) = 1 and den
    monic for graded lex with x1 > x2 > ...  Equality is structural."""

    __slots__ = ("ctx", "nvars", "num", "den")

    def __init__(self, num, den=None, _normalized=False):
        if den is None:
            den = FqPoly.const(num.ctx, num.nvars, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _normalized:
            num, den = self._normalize(num, den)
        self.ctx = num.ctx
        self.nvars = num.nvars
        self.num = num
        self.den = den

    @staticmethod
    def _normalize(num, den):
        if num.is_zero():
            return num, FqPoly.const(den.ctx, den.nvars, 1)
        g = poly_gcd(num, den)
        if not (g.is_constant()):
            num = num.exact_div(g)
            den = den.exact_div(g)
        _, lc = den.leading()
        if not lc == den.ctx.one():
            inv = lc.inverse()
            num = num * inv
            den = den * inv
        return num, den

    # -- constructors
    @classmethod
    def zero(cls, ctx, nvars):
        return cls(FqPoly.zero(ctx, nvars))

    @classmethod
    def const(cls, ctx, nvars, c):
        return cls(FqPoly.const(ctx, nvars, c))

    @classmethod
    def var(cls, ctx, nvars, i):
        return cls(FqPoly.var(ctx, nvars, i))

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        return self.num.constant_value() / self.den.constant_value()

    def _coerce(self, other):
        if isinstance(other, (int, FqElem)):
            return RatFunc.const(self.ctx, self.nvars, other)
        if isinstance(other, FqPoly):
            return RatFunc(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return (RatFunc.const(self.ctx, self.nvars, 1) / self) ** (-n)
        result = RatFunc.const(self.ctx, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, FqElem, FqPoly)):
            other = self._coerce(other)
        return (isinstance(other, RatFunc) and self.ctx == other.ctx
                and self.nvars == other.nvars
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def eval_at(self, point):
        d = self.den.eval(point)
        if d.is_zero():
            raise PoleAtPoint("denominator vanishes at the point")
        return self.num.eval(point) / d

    def deriv(self, v):
        num = self.num.deriv(v) * self.den - self.num * self.den.deriv(v)
        return RatFunc(num, self.den * self.den)

    def subs(self, values):
        """Substitute RatFunc values for the variables."""
        return self.num.subs(values) / self.den.subs(values)

    def translate(self, point):
        """x_i -> x_i + point_i (used to move a blowup center to the origin)."""
        values = [RatFunc.var(self.ctx, self.nvars, i) + point[i]
                  for i in range(self.nvars)]
        return self.subs(values)

    def is_pth_power(self):
        """Is self in F^p = F_q(x^p)?  Canonical form makes this a monomial-
        exponent check on numerator and denominator up to a constant, and
        constants are always p-th powers since F_q is perfect."""
        if self.is_zero():
            return True
        num, den = self.num, self.den
        _, lc = num.leading()
        num = num * lc.inverse()
        return num.is_pth_power() and den.is_pth_power()

    def pth_root(self):
        if self.is_zero():
            return self
        _, lc = self.num.leading()
        scaled = self.num * lc.inverse()
        return RatFunc(scaled.pth_root() * lc.pth_root(), self.den.pth_root())

    def __repr__(self):
        return "RatFunc(%s)" % ratfunc_to_str(self)


# ---------------------------------------------------------------------------
# printing / parsing (grammar: x1, x2, ..., integers, g, + - * / ^ ( ))

def _fqelem_to_str(c):
    if c.ctx.f == 1 or all(x == 0 for x in c.coeffs[1:]):
        return str(c.coeffs[0])
    parts = []
    for i, x in enumerate(c.coeffs):
        if x == 0:
            continue
        if i == 0:
            parts.append(str(x))
        else:
            base = "g" if i == 1 else "g^%d" % i
            parts.append(base if x == 1 else "%d*%s" % (x, base))
    return "(" + "+".join(parts) + ")"


def poly_to_str(poly, names=None):
    if poly.is_zero():
        return "0"
    if names is None:
        names = ["x%d" % (i + 1) for i in range(poly.nvars)]
    parts = []
    for e in sorted(poly.terms, key=_grlex_key, reverse=True):
        c = poly.terms[e]
        factors = []
        for v, exp in enumerate(e):
            if exp == 1:
                factors.append(names[v])
            elif exp > 1:
                factors.append("%s^%d" % (names[v], exp))
        cs = _fqelem_to_str(c)
        if factors and cs == "1":
            parts.append("*".join(factors))
        elif factors:
            parts.append(cs + "*" + "*".join(factors))
        else:
            parts.append(cs)
    return " + ".join(parts)


def ratfunc_to_str(r, names=None):
    ns = poly_to_str(r.num, names)
    if r.den.is_constant() and r.den.constant_value() == r.ctx.one():
        return ns
    ds = poly_to_str(r.den, names)
    if " + " in ns or r.num.terms and len(r.num.terms) > 1:
        ns = "(" + ns + ")"
    if " + " in ds or "*" in ds or len(r.den.terms) > 1:
        ds = "(" + ds + ")"
    return "%s/%s" % (ns, ds)


class ExprError(ValueError):
    pass


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j])))
            i = j
        elif ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
        elif ch in "+-*/^()":
            tokens.append((ch, ch))
            i += 1
        else:
            raise ExprError("unexpected character %r" % ch)
    return tokens


class _Parser:
    """Recursive descent for the shared expression grammar.  `atom` resolves
    names through a caller-provided environment, so the same parser serves
    residue-field expressions (x1, g) and local-field expressions (u1, pi)."""

    def __init__(self, tokens, env):
        self.tokens = tokens
        self.pos = 0
        self.env = env

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        if self.pos != len(self.tokens):
            raise ExprError("trailing tokens")
        return value

    def expr(self):
        if self.peek() == "-":
            self.next()
            value = -self.term()
        else:
            value = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.next()[0]
            rhs = self.factor()
            value = value * rhs if op == "*" else value / rhs
        return value

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.next()
            sign = 1
            if self.peek() == "-":
                self.next()
                sign = -1
            kind, val = self.next()
            if kind != "int":
                raise ExprError("exponent must be an integer")
            return base ** (sign * val)
        return base

    def atom(self):
        kind, val = self.next() if self.pos < len(self.tokens) else (None, None)
        if kind == "int":
            return self.env["int"](val)
        if kind == "name":
            return self.env["name"](val)
        if kind == "(":
            value = self.expr()
            if self.peek() != ")":
                raise ExprError("missing )")
            self.next()
            return value
        if kind == "-":
            return -self.atom()
        raise ExprError("unexpected token %r" % (val,))


def parse_ratfunc(text, ctx, nvars):
    """Parse the ASCII grammar into a RatFunc; variables x1..xm (u1..um also
    accepted), `g` the F_q generator, integer coefficients mod p."""

    def name(n):
        if n == "g":
            return RatFunc.const(ctx, nvars, ctx.gen())
        if len(n) >= 2 and n[0] in "xu" and n[1:].isdigit():
            i = int(n[1:]) - 1
            if not 0 <= i < nvars:
                raise ExprError("variable %s out of range" % n)
            return RatFunc.var(ctx, nvars, i)
        raise ExprError("unknown name %r" % n)

    env = {"int": lambda v: RatFunc.const(ctx, nvars, v), "name": name}
    return _Parser(_tokenize(text), env).parse()
