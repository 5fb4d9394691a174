"""Bounded-precision arithmetic in p-adic local fields.

A field is built as Q_p -> unramified of degree f -> totally ramified of
degree e by a monic Eisenstein polynomial.  Elements are coefficient vectors
against the power basis {pi^i w^j} with 0 <= i < e, 0 <= j < f, where w is a
root of the fixed unramified polynomial (shared with the residue field) and
pi a root of the Eisenstein polynomial.  Coefficients live in Z/p^M; the
pi-adic working precision is N ~ e*M and is propagated conservatively.
"""

from __future__ import annotations

from functools import lru_cache
import itertools

from .residue_algebra import Fq, FqElem, irreducible_poly, embed_fq


class PrecisionExhausted(ArithmeticError):
    pass


class HenselError(ArithmeticError):
    pass


def _binom(n, k):
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def cyclotomic_shifted_coeffs(p, s):
    """Integer coefficients (constant first, without the leading 1) of
    Phi_{p^s}(1+x), an Eisenstein polynomial of degree p^(s-1)(p-1)."""
    # Phi_{p^s}(y) = sum_{j<p} y^(j*p^(s-1)); substitute y = 1+x
    e = p ** (s - 1) * (p - 1)
    coeffs = [0] * (e + 1)
    for j in range(p):
        d = j * p ** (s - 1)
        for i in range(d + 1):
            coeffs[i] += _binom(d, i)
    assert coeffs[e] == 1
    return tuple(coeffs[:e])


class LocalField:
    """Immutable descriptor of a two-step local field tower."""

    def __init__(self, p, f, eis_coeffs, precision=None, zeta_level=None,
                 zeta_coeffs=None):
        self.p = p
        self.f = f
        self.unram_poly = irreducible_poly(p, f)
        self.residue = Fq(p, f)
        # lower coefficients of the monic Eisenstein polynomial, each either an
        # int (rational) or an f-tuple of ints against the w-basis
        eis = []
        for c in eis_coeffs:
            if isinstance(c, int):
                eis.append((c,) + (0,) * (f - 1))
            else:
                c = tuple(c)
                eis.append(c + (0,) * (f - len(c)))
        self.eis = tuple(eis)
        self.e = len(self.eis)
        if (p - 1) and self.e * p % (p - 1) == 0:
            self.eprime = self.e * p // (p - 1)
        else:
            self.eprime = None
        if precision is None:
            base = self.eprime if self.eprime is not None else self.e
            precision = 4 * base + 16
        self.N = precision
        self.M = precision // self.e + 4  # p-adic precision of coefficients
        self.pM = p ** self.M
        self._validate_eisenstein()
        self._pi_pow_cache = {}
        self._zeta_level_hint = zeta_level
        self._zeta_coeffs_hint = zeta_coeffs
        self._cache = {}

    # -- identity ----------------------------------------------------------
    def _key(self):
        return (self.p, self.f, self.eis, self.N)

    def __eq__(self, other):
        return isinstance(other, LocalField) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "LocalField(%s)" % self.descriptor()

    def descriptor(self):
        parts = []
        for c in self.eis:
            if all(x == 0 for x in c[1:]):
                parts.append(str(_centered(c[0], self.pM)))
            else:
                parts.append("w:" + ":".join(str(_centered(x, self.pM)) for x in c))
        return "%d^%d/%s" % (self.p, self.f, ",".join(parts))

    # -- W = Z_q arithmetic (f-tuples of ints mod p^M) ---------------------
    def _wzero(self):
        return (0,) * self.f

    def _wone(self):
        return (1,) + (0,) * (self.f - 1)

    def _wadd(self, a, b):
        return tuple((x + y) % self.pM for x, y in zip(a, b))

    def _wneg(self, a):
        return tuple((-x) % self.pM for x in a)

    def _wmul(self, a, b):
        f = self.f
        if f == 1:
            return ((a[0] * b[0]) % self.pM,)
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % self.pM
        # reduce modulo the (lifted) unramified polynomial
        low = self.unram_poly
        for k in range(2 * f - 2, f - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i, m in enumerate(low):
                    prod[k - f + i] = (prod[k - f + i] - c * m) % self.pM
        return tuple(prod[:f])

    def _wval(self, a):
        """p-adic valuation of a W element (min over components), capped at M."""
        v = self.M
        for x in a:
            if x:
                xv = 0
                while x % self.p == 0:
                    x //= self.p
                    xv += 1
                v = min(v, xv)
        return v

    def _wdiv_p(self, a):
        if any(x % self.p for x in a):
            raise PrecisionExhausted("W element not divisible by p")
        return tuple(x // self.p for x in a)

    def _validate_eisenstein(self):
        for i, c in enumerate(self.eis):
            v = self._wval(c)
            if i == 0:
                if v != 1:
                    raise ValueError("constant term must have valuation exactly 1")
            elif v < 1:
                raise ValueError("Eisenstein coefficients must be divisible by p")

    # -- element constructors ---------------------------------------------
    def zero(self):
        return LocalElem(self, tuple(self._wzero() for _ in range(self.e)), self.N)

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        vec = [self._wzero() for _ in range(self.e)]
        vec[0] = (n % self.pM,) + (0,) * (self.f - 1)
        return LocalElem(self, tuple(vec), self.N)

    def pi(self):
        if self.e == 1:
            # the Eisenstein polynomial is x + a0, so pi = -a0
            vec = [self._wneg(self.eis[0])]
        else:
            vec = [self._wzero() for _ in range(self.e)]
            vec[1] = self._wone()
        return LocalElem(self, tuple(vec), self.N)

    def lift(self, a):
        """Naive lift of a residue-field element (not Teichmueller)."""
        if a.ctx != self.residue:
            raise ValueError("residue field mismatch")
        vec = [self._wzero() for _ in range(self.e)]
        vec[0] = tuple(c % self.pM for c in a.coeffs)
        return LocalElem(self, tuple(vec), self.N)

    def gen_w(self):
        vec = [self._wzero() for _ in range(self.e)]
        w = [0] * self.f
        if self.f == 1:
            w[0] = 1
        else:
            w[1] = 1
        vec[0] = tuple(w)
        return LocalElem(self, tuple(vec), self.N)

    # -- pi-power reduction -----------------------------------------------
    def _pi_power(self, k):
        """pi^k (k >= e) as a coefficient vector list of length e over W."""
        if k < self.e:
            vec = [self._wzero() for _ in range(self.e)]
            vec[k] = self._wone()
            return vec
        if k in self._pi_pow_cache:
            return list(self._pi_pow_cache[k])
        prev = self._pi_power(k - 1)
        # multiply by pi: shift, then reduce the overflow via
        # pi^e = -(a_{e-1} pi^{e-1} + ... + a_0)
        top = prev[self.e - 1]
        vec = [self._wzero()] + prev[: self.e - 1]
        if any(top):
            for i, a in enumerate(self.eis):
                vec[i] = self._wadd(vec[i], self._wneg(self._wmul(top, a)))
        self._pi_pow_cache[k] = tuple(vec)
        return vec

    # -- cached subfields / extensions ------------------------------------
    def unramified_subfield(self):
        if "unram" not in self._cache:
            if self.e == 1:
                self._cache["unram"] = self
            else:
                # match the parent's coefficient modulus p^M exactly
                self._cache["unram"] = LocalField(self.p, self.f, (-self.p,),
                                                  precision=self.M - 4)
        return self._cache["unram"]

    def prime_subfield(self):
        if "prime" not in self._cache:
            if self.e == 1 and self.f == 1:
                self._cache["prime"] = self
            else:
                self._cache["prime"] = LocalField(self.p, 1, (-self.p,),
                                                  precision=self.M - 4)
        return self._cache["prime"]

    def unramified_extension(self, factor):
        """The unramified extension with residue degree f*factor, defined by
        the same Eisenstein polynomial (requires rational coefficients)."""
        key = ("unram_ext", factor)
        if key not in self._cache:
            for c in self.eis:
                if any(c[1:]):
                    raise ValueError("Eisenstein coefficients must be rational "
                                     "for unramified extension")
            ext = LocalField(self.p, self.f * factor,
                             tuple(_centered(c[0], self.pM) for c in self.eis),
                             precision=self.N,
                             zeta_level=self._zeta_level_hint,
                             zeta_coeffs=self._zeta_coeffs_hint)
            self._cache[key] = ext
        return self._cache[key]

    # -- roots of unity ----------------------------------------------------
    def zeta(self, level=1):
        """A primitive p^level-th root of unity, or None if absent."""
        key = ("zeta", level)
        if key in self._cache:
            return self._cache[key]
        val = self._find_zeta(level)
        self._cache[key] = val
        return val

    def _find_zeta(self, level):
        p = self.p
        if p == 2 and level == 1:
            return -self.one()
        if self._zeta_coeffs_hint is not None and self._zeta_level_hint == level:
            z = self._elem_from_pi_poly(self._zeta_coeffs_hint)
            return z
        # root of Phi_{p^level}(x): search an approximation, then Hensel
        phi = cyclotomic_shifted_coeffs(p, level)  # coeffs of Phi(1+x)
        # g(x) = Phi(x) has g(z)=0 with z = 1 + y, Phi(1+y) = y^e' + ...
        # search y among digit representatives to enough depth
        poly = [self.from_int(c) for c in phi] + [self.one()]
        e_here = self.e
        # v(Phi'(zeta)) = v(p^level/(zeta_{p^level}-1)) within the field
        depth = min(self.N, 2 * e_here * level + 3)
        best = None
        for y in residue_digit_elements(self, depth):
            fy = _poly_eval(poly, y)
            v = fy.valuation()
            dfy = _poly_eval(_poly_deriv(poly, self), y)
            dv = dfy.valuation()
            if v > 2 * dv:
                best = y
                break
        if best is None:
            return None
        y = hensel_lift(poly, best, self.N)
        return self.one() + y

    def zeta_level(self):
        """Largest s <= 3 with zeta_{p^s} in the field (desk-scale search)."""
        s = 0
        for level in (1, 2, 3):
            if self.zeta(level) is not None:
                s = level
            else:
                break
        return s

    def _elem_from_pi_poly(self, coeffs):
        """Element from integer coefficients against powers of pi."""
        acc = self.zero()
        for i, c in enumerate(coeffs):
            acc = acc + self.from_int(c) * self.pi() ** i
        return acc


def _centered(x, mod):
    x %= mod
    return x - mod if x > mod // 2 else x


class LocalElem:
    __slots__ = ("field", "vec", "prec")

    def __init__(self, field, vec, prec):
        self.field = field
        self.vec = vec
        self.prec = max(0, min(prec, field.N))

    # -- basics ------------------------------------------------------------
    def valuation(self):
        """pi-adic valuation, capped at the known precision."""
        k = self.field
        v = None
        for i, c in enumerate(self.vec):
            wv = k._wval(c)
            if wv < k.M:
                cand = i + k.e * wv
                v = cand if v is None else min(v, cand)
        if v is None or v >= self.prec:
            return self.prec  # interpreted as ">= prec"
        return v

    def is_zero_at_precision(self):
        return self.valuation() >= self.prec

    def is_unit(self):
        return self.valuation() == 0

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        k = self.field
        vec = tuple(k._wadd(a, b) for a, b in zip(self.vec, other.vec))
        return LocalElem(k, vec, min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        k = self.field
        return LocalElem(k, tuple(k._wneg(a) for a in self.vec), self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _coerce(self, other):
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, LocalElem):
            if other.field != self.field:
                return NotImplemented
            return other
        return NotImplemented

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        k = self.field
        e, f = k.e, k.f
        prod = [k._wzero() for _ in range(2 * e - 1)]
        for i, a in enumerate(self.vec):
            if any(a):
                for j, b in enumerate(other.vec):
                    if any(b):
                        prod[i + j] = k._wadd(prod[i + j], k._wmul(a, b))
        vec = list(prod[:e])
        for kk in range(e, 2 * e - 1):
            if any(prod[kk]):
                red = k._pi_power(kk)
                for i in range(e):
                    vec[i] = k._wadd(vec[i], k._wmul(red[i], prod[kk]))
        va, vb = self.valuation(), other.valuation()
        prec = min(self.prec + vb, other.prec + va, k.N)
        return LocalElem(k, tuple(vec), prec)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return (self.field.one() / self) ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        v = other.valuation()
        if v >= other.prec:
            raise PrecisionExhausted("division by zero-at-precision element")
        unit = other.shift_down(v) if v else other
        inv = unit.unit_inverse()
        num = self * inv
        if v == 0:
            return num
        return num.shift_down(v)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self - other
        return d.valuation() >= d.prec

    def __hash__(self):
        raise TypeError("LocalElem is not hashable (precision-dependent equality)")

    # -- structural ops ----------------------------------------------------
    def shift_down(self, v):
        """Divide by pi^v (requires valuation >= v); lowers precision by v."""
        x = self
        for _ in range(v):
            x = x._div_pi()
        return x

    def _div_pi(self):
        k = self.field
        if self.valuation() < 1:
            raise PrecisionExhausted("element not divisible by pi")
        if k.e == 1:
            # pi = -a0 with a0 = p * (W unit)
            w0 = k._wdiv_p(k.eis[0])
            inv = _winv(k, k._wneg(w0))
            c = k._wmul(k._wdiv_p(self.vec[0]), inv)
            return LocalElem(k, (c,), self.prec - 1)
        # x / pi = (c_1 + c_2 pi + ... + c_{e-1} pi^{e-2}) + (c_0/pi)
        # with c_0 divisible by p: c_0/pi = c_0 * (pi^{e-1}+a_{e-1}pi^{e-2}
        # + ... + a_1) * (-(a_0/p) w)^{-1} / p  -- assembled below
        c0 = self.vec[0]
        shifted = list(self.vec[1:]) + [k._wzero()]
        if k._wval(c0) >= 1:
            w0 = k._wdiv_p(k.eis[0])  # a_0 / p, a unit of W
            inv = _winv(k, k._wneg(w0))
            t = k._wmul(k._wdiv_p(c0), inv)  # c_0 / (-a_0) * ... times p/p
            # c_0/pi = t * (pi^{e-1} + a_{e-1} pi^{e-2} + ... + a_1)
            vec = list(shifted)
            vec[k.e - 1] = k._wadd(vec[k.e - 1], t)
            for i in range(1, k.e):
                vec[i - 1] = k._wadd(vec[i - 1], k._wmul(t, k.eis[i]))
            return LocalElem(k, tuple(vec), self.prec - 1)
        raise PrecisionExhausted("element not divisible by pi")

    def unit_inverse(self):
        """Inverse of a unit via the multiplication matrix mod p^M."""
        k = self.field
        if self.valuation() != 0:
            raise PrecisionExhausted("not a unit")
        n = k.e * k.f
        cols = []
        for i in range(k.e):
            for j in range(k.f):
                basis = [k._wzero() for _ in range(k.e)]
                w = [0] * k.f
                w[j] = 1
                basis[i] = tuple(w)
                be = LocalElem(k, tuple(basis), k.N)
                prod = (self * be).vec
                col = []
                for bi in range(k.e):
                    col.extend(prod[bi])
                cols.append(col)
        # solve A y = e_1 mod p^M where A columns are cols
        A = [[cols[c][r] % k.pM for c in range(n)] for r in range(n)]
        rhs = [1] + [0] * (n - 1)
        y = _solve_mod_prime_power(A, rhs, k.p, k.M)
        vec = []
        for i in range(k.e):
            vec.append(tuple(y[i * k.f + j] % k.pM for j in range(k.f)))
        return LocalElem(k, tuple(vec), self.prec)

    def reduce(self):
        """Image in the residue field F_q (requires valuation >= 0; always)."""
        k = self.field
        return k.residue.elem(tuple(c % k.p for c in self.vec[0]))

    def __repr__(self):
        k = self.field
        parts = []
        for i, c in enumerate(self.vec):
            if any(c):
                cc = ",".join(str(_centered(x, k.pM)) for x in c)
                parts.append("(%s)*pi^%d" % (cc, i))
        return "LocalElem[%s; prec %d]" % (" + ".join(parts) or "0", self.prec)


def _winv(k, a):
    """Inverse of a W unit via lifting the residue inverse (Newton)."""
    if k._wval(a) != 0:
        raise PrecisionExhausted("not a W unit")
    res = k.residue.elem(tuple(x % k.p for x in a))
    inv = res.inverse()
    x = tuple(c % k.pM for c in inv.coeffs)
    # Newton: x <- x(2 - a x)
    for _ in range(k.M.bit_length() + 1):
        ax = k._wmul(a, x)
        two_minus = k._wadd(k._wone(), k._wadd(k._wone(), k._wneg(ax)))
        x = k._wmul(x, two_minus)
    return x


def _solve_mod_prime_power(A, rhs, p, M):
    """Solve A y = rhs mod p^M for A invertible mod p (Gaussian elimination
    with unit pivots)."""
    pM = p ** M
    n = len(A)
    mat = [row[:] + [rhs[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if mat[r][col] % p:
                piv = r
                break
        if piv is None:
            raise PrecisionExhausted("singular multiplication matrix")
        mat[col], mat[piv] = mat[piv], mat[col]
        inv = pow(mat[col][col], -1, pM)
        mat[col] = [(x * inv) % pM for x in mat[col]]
        for r in range(n):
            if r != col and mat[r][col]:
                c = mat[r][col]
                mat[r] = [(x - c * y) % pM for x, y in zip(mat[r], mat[col])]
    return [mat[i][n] % pM for i in range(n)]


# ---------------------------------------------------------------------------
# polynomial helpers over a local field (low-degree-first coefficient lists)

def _poly_eval(coeffs, x):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def _poly_deriv(coeffs, field):
    return [coeffs[i] * i for i in range(1, len(coeffs))] or [field.zero()]


def hensel_lift(poly, approx, target_precision):
    """Newton-lift a root of poly (list of LocalElem, constant first) from
    approx; requires v(poly(approx)) > 2 v(poly'(approx))."""
    field = approx.field
    dpoly = _poly_deriv(poly, field)
    fx = _poly_eval(poly, approx)
    dfx = _poly_eval(dpoly, approx)
    v, dv = fx.valuation(), dfx.valuation()
    if not v > 2 * dv:
        raise HenselError("Hensel criterion v(f) > 2 v(f') fails (%s <= 2*%s)"
                          % (v, dv))
    x = approx
    for _ in range(target_precision.bit_length() + 4):
        fx = _poly_eval(poly, x)
        if fx.valuation() >= min(target_precision, fx.prec):
            break
        dfx = _poly_eval(dpoly, x)
        x = x - fx / dfx
    return x


def teichmuller(field, a):
    """The Teichmueller lift: the unique root of x^q = x reducing to a."""
    if a.is_zero():
        return field.zero()
    x = field.lift(a)
    q = field.residue.q
    for _ in range(field.N + field.M + 4):
        nxt = x ** q
        if (nxt - x).valuation() >= min(x.prec, field.N):
            return nxt
        x = nxt
    return x


# ---------------------------------------------------------------------------
# norms and traces (one tower step at a time)

def _det_w(field, rows):
    """Determinant of a matrix with W-element entries (cofactor expansion)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = field._wzero()
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        sub = _det_w(field, minor)
        term = field._wmul(rows[0][j], sub)
        acc = field._wadd(acc, term if j % 2 == 0 else field._wneg(term))
    return acc


def _mult_matrix_over_w(x):
    """Matrix of multiplication by x on the basis pi^0..pi^{e-1} over W."""
    k = x.field
    cols = []
    for i in range(k.e):
        basis = [k._wzero() for _ in range(k.e)]
        basis[i] = k._wone()
        be = LocalElem(k, tuple(basis), k.N)
        cols.append((x * be).vec)
    return [[cols[j][i] for j in range(k.e)] for i in range(k.e)]


def _w_to_unram_elem(k, w):
    U = k.unramified_subfield()
    return LocalElem(U, (tuple(c % U.pM for c in w),), U.N)


def norm_trace(x, down_to="unramified"):
    """Norm and trace (returned as a pair) one or two steps down the tower.

    down_to: "unramified" for k -> k_ur, "base" for k -> Q_p.
    """
    k = x.field
    mat = _mult_matrix_over_w(x)
    det = _det_w(k, mat)
    tr = k._wzero()
    for i in range(k.e):
        tr = k._wadd(tr, mat[i][i])
    n_ur = _w_to_unram_elem(k, det)
    t_ur = _w_to_unram_elem(k, tr)
    if down_to == "unramified":
        return n_ur, t_ur
    if down_to != "base":
        raise ValueError("down_to must be 'unramified' or 'base'")
    return _wnorm_to_base(k, det), _wtrace_to_base(k, tr)


def _w_mult_matrix(k, w):
    cols = []
    for j in range(k.f):
        basis = [0] * k.f
        basis[j] = 1
        cols.append(k._wmul(w, tuple(basis)))
    return [[cols[j][i] % k.pM for j in range(k.f)] for i in range(k.f)]


def _int_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _int_det(minor)
        acc += term if j % 2 == 0 else -term
    return acc


def _wnorm_to_base(k, w):
    Q = k.prime_subfield()
    mat = _w_mult_matrix(k, w)
    det = _int_det(mat) % Q.pM
    return Q.from_int(det)


def _wtrace_to_base(k, w):
    Q = k.prime_subfield()
    mat = _w_mult_matrix(k, w)
    return Q.from_int(sum(mat[i][i] for i in range(k.f)) % Q.pM)


# ---------------------------------------------------------------------------
# enumeration and embeddings

def residue_digit_elements(field, depth):
    """All sums sum_{i<depth} omega(d_i) pi^i over Teichmueller digits d_i;
    canonical representatives of O/pi^depth (q^depth elements)."""
    digits = [teichmuller(field, a) for a in field.residue.elements()]
    pi = field.pi()
    pis = [field.one()]
    for _ in range(depth - 1):
        pis.append(pis[-1] * pi)
    for combo in itertools.product(range(len(digits)), repeat=depth):
        acc = field.zero()
        for i, d in enumerate(combo):
            if d:
                acc = acc + digits[d] * pis[i]
        yield acc


def embed(x, big):
    """Embed x in k into an unramified extension of k (same Eisenstein)."""
    k = x.field
    if k == big:
        return x
    if (k.p, k.e) != (big.p, big.e) or big.f % k.f:
        raise ValueError("not an unramified extension of the element's field")
    root = _unram_root(k, big)
    vec = []
    for c in x.vec:
        acc = big.zero()
        for j in reversed(range(k.f)):
            acc = acc * root + big.from_int(c[j])
        vec.append(acc)
    out = big.zero()
    pi = big.pi()
    for i, coeff in enumerate(vec):
        out = out + coeff * pi ** i
    return LocalElem(big, out.vec, min(x.prec, big.N))


def _unram_root(k, big):
    key = ("unram_root", big._key())
    if key in k._cache:
        return k._cache[key]
    if k.f == 1:
        root = big.one()
    else:
        res_root = embed_fq(k.residue.gen(), big.residue)
        poly = [big.from_int(c) for c in k.unram_poly] + [big.one()]
        approx = teichmuller(big, res_root)
        # the unramified polynomial is separable mod p, so Hensel applies
        fa = _poly_eval(poly, approx)
        if fa.valuation() > 0:
            root = hensel_lift(poly, approx, big.N)
        else:  # pragma: no cover - defensive
            raise HenselError("embedding root not found")
    k._cache[key] = root
    return root


# ---------------------------------------------------------------------------
# constructors

def make_cyclotomic(p, s, precision=None):
    """Q_p(zeta_{p^s}) with pi = zeta_{p^s} - 1 (Eisenstein Phi_{p^s}(1+x))."""
    coeffs = cyclotomic_shifted_coeffs(p, s)
    field = LocalField(p, 1, coeffs, precision=precision,
                       zeta_level=s, zeta_coeffs=(1, 1))
    return field


NAMED_FIELDS = {}


def field_from_descriptor(desc, precision=None):
    """Parse a field descriptor: a named field (Q2, Q2i, Q3z, ...),
    "cyclo:p:s", or "p^f/c0,c1,..." with integer Eisenstein coefficients."""
    desc = desc.strip()
    if "/" in desc and desc.split("/", 1)[1] in _NAMED_BUILDERS:
        desc = desc.split("/", 1)[1]
    if desc in _NAMED_BUILDERS:
        return _NAMED_BUILDERS[desc](precision)
    if desc.startswith("cyclo:"):
        _, ps, ss = desc.split(":")
        return make_cyclotomic(int(ps), int(ss), precision)
    head, _, tail = desc.partition("/")
    if "^" in head:
        ps, fs = head.split("^")
    else:
        ps, fs = head, "1"
    p, f = int(ps), int(fs)
    if not tail:
        raise ValueError("descriptor must include Eisenstein coefficients")
    coeffs = []
    for part in tail.split(","):
        part = part.strip()
        if part.startswith("w:"):
            coeffs.append(tuple(int(x) for x in part[2:].split(":")))
        else:
            coeffs.append(int(part))
    return LocalField(p, f, tuple(coeffs), precision=precision)


_NAMED_BUILDERS = {
    # Q_2 with pi = 2 (Eisenstein x - 2)
    "Q2": lambda prec: LocalField(2, 1, (-2,), precision=prec, zeta_level=1),
    # Q_2(i) = Q_2(zeta_4), pi = i - 1
    "Q2i": lambda prec: make_cyclotomic(2, 2, prec),
    # Q_2(cbrt 2), e = 3, e' = 6
    "Q2c": lambda prec: LocalField(2, 1, (-2, 0, 0), precision=prec, zeta_level=1),
    # unramified quadratic extension of Q_2
    "Q2u2": lambda prec: LocalField(2, 2, (-2,), precision=prec, zeta_level=1),
    # Q_3(zeta_3), pi = zeta_3 - 1
    "Q3z": lambda prec: make_cyclotomic(3, 1, prec),
    # Q_3(zeta_3, sqrt(zeta_3 - 1)): x^4 + 3x^2 + 3, zeta_3 = 1 + pi^2
    "Q3z4": lambda prec: LocalField(3, 1, (3, 0, 3, 0), precision=prec,
                                    zeta_level=1, zeta_coeffs=(1, 0, 1)),
}
