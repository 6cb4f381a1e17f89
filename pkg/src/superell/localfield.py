"""Capped-precision arithmetic in finite extensions L/Q_p.

Every field is stored in a normalized two-level shape: an unramified part
U = Q_p[a]/(m(a)) of degree f, followed by a single Eisenstein step
L = U[pi]/(E(pi)) of degree e.  Arbitrary towers are flattened into this
shape by ``flatten_step`` (see fieldsearch).  Elements are vectors of
length e over U, each U-coordinate a vector of f integers modulo p^N,
together with a power-of-p shift (so negative valuations are exact) and a
per-element precision counter.

Key consequences of the normalized shape:

* the valuation of sum(c_i pi^i) is min_i (e*v_U(c_i) + i), exactly, because
  the candidate valuations are pairwise distinct modulo e;
* the residue field of L is that of U, and reduction is the residue of the
  pi^0 coordinate;
* automorphisms are determined by a root of m in U and a root of E^sigma
  in L, which is how the Galois group is enumerated.

Valuations are integers in the v(pi_L) = 1 normalization unless stated;
``as_vp1`` converts to the v(p) = 1 scale (divide by e).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import (
    NegativeValuation,
    NotEisenstein,
    NotGalois,
    NotMonogenicWitness,
    PrecisionExhausted,
    PrecisionTooLow,
)
from .finitefield import FqPoly, fq_make

INFINITE = "infinite"  # valuation of an exact zero

_MARGIN = 2  # digits of headroom required for equality/valuation decisions


# ---------------------------------------------------------------------------
# unramified level: Z_p[a]/(m(a)) with coefficients mod p^N
# ---------------------------------------------------------------------------

class Unramified:
    """Ring of integers of the unramified extension of degree f, mod p^N."""

    def __init__(self, p, f, prec, modulus_lift=None):
        self.p = p
        self.f = f
        self.N = prec
        self.pN = p**prec
        self.residue_field = fq_make(p, f)
        if modulus_lift is None:
            modulus_lift = self.residue_field.modulus
        self.modulus = tuple(int(c) % self.pN for c in modulus_lift)
        assert len(self.modulus) == f + 1 and self.modulus[-1] == 1
        self.zero = (0,) * f
        self.one = (1,) + (0,) * (f - 1)

    def add(self, x, y):
        pN = self.pN
        return tuple((a + b) % pN for a, b in zip(x, y))

    def sub(self, x, y):
        pN = self.pN
        return tuple((a - b) % pN for a, b in zip(x, y))

    def neg(self, x):
        pN = self.pN
        return tuple(-a % pN for a in x)

    def smul(self, c, x):
        pN = self.pN
        return tuple(c * a % pN for a in x)

    def mul(self, x, y):
        f, pN = self.f, self.pN
        if f == 1:
            return (x[0] * y[0] % pN,)
        res = [0] * (2 * f - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    res[i + j] = (res[i + j] + a * b) % pN
        mod = self.modulus
        for i in range(2 * f - 2, f - 1, -1):
            c = res[i]
            if c:
                res[i] = 0
                for j in range(f):
                    res[i - f + j] = (res[i - f + j] - c * mod[j]) % pN
        return tuple(res[:f])

    def val(self, x):
        """Largest k <= N with p^k dividing every coordinate."""
        best = self.N
        p = self.p
        for a in x:
            if a == 0:
                continue
            k = 0
            while a % p == 0:
                a //= p
                k += 1
            best = min(best, k)
            if best == 0:
                return 0
        return best

    def residue(self, x):
        p = self.p
        return self.residue_field.element(tuple(a % p for a in x))

    def lift(self, r):
        """Plain digit lift of a residue-field element."""
        return tuple(int(c) % self.pN for c in r.coeffs)

    def div_p(self, x, k):
        """Exact division by p^k."""
        pk = self.p**k
        if any(a % pk for a in x):
            raise PrecisionExhausted("inexact division by p^k: out of digits")
        return tuple(a // pk for a in x)

    def inv_unit(self, x):
        """Newton inverse of a unit (val 0)."""
        r = self.residue(x)
        z = self.lift(r.inverse())
        steps = max(1, (self.N - 1).bit_length() + 1)
        two = (2,) + (0,) * (self.f - 1)
        for _ in range(steps):
            z = self.mul(z, self.sub(two, self.mul(x, z)))
        return z

    def from_int(self, n):
        return (n % self.pN,) + (0,) * (self.f - 1)


# ---------------------------------------------------------------------------
# the two-level local field and its elements
# ---------------------------------------------------------------------------

class LocalField:
    """L = U[pi]/(E(pi)) with U unramified of degree f, E Eisenstein of
    degree e.  Q_p itself is (f=1, E = x - p)."""

    def __init__(self, p, unramified_degree, eisenstein, prec,
                 unramified_modulus=None, label=None):
        if prec < 4:
            raise PrecisionTooLow(f"precision {prec} < 4 digits")
        self.p = p
        self.N = prec
        self.U = Unramified(p, unramified_degree, prec, unramified_modulus)
        self.f = unramified_degree
        E = [self._coerce_ucoeff(c) for c in eisenstein]
        self.e = len(E) - 1
        self.degree = self.e * self.f
        if E[-1] != self.U.one:
            raise NotEisenstein("Eisenstein polynomial must be monic")
        for c in E[:-1]:
            if self.U.val(c) < 1:
                raise NotEisenstein("non-leading coefficients must be in (p)")
        if self.U.val(E[0]) != 1:
            raise NotEisenstein("constant term must have valuation exactly 1")
        self.E = tuple(E)
        self.residue_field = self.U.residue_field
        self.label = label or f"Q_{p}(f={self.f},e={self.e})"
        self._pi_table = self._build_pi_table()
        self._zero_vec = tuple(self.U.zero for _ in range(self.e))

    def _coerce_ucoeff(self, c):
        if isinstance(c, tuple):
            return tuple(int(x) % self.U.pN for x in c)
        if isinstance(c, int):
            return self.U.from_int(c)
        raise TypeError(f"bad Eisenstein coefficient {c!r}")

    def _build_pi_table(self):
        """pi^(e+j) as vectors over U for j = 0..e-2."""
        U, e = self.U, self.e
        table = []
        cur = [U.neg(c) for c in self.E[:-1]]  # pi^e
        table.append(tuple(cur))
        for _ in range(e - 2):
            top = cur[-1]
            nxt = [U.zero] + cur[:-1]
            if any(top):
                pe = table[0]
                nxt = [U.add(a, U.mul(top, b)) for a, b in zip(nxt, pe)]
            cur = nxt
            table.append(tuple(cur))
        return table

    def __repr__(self):
        return self.label

    # -- element constructors ------------------------------------------

    def zero(self):
        return LocalFieldElement(self, self._zero_vec, 0, self.N, True)

    def one(self):
        vec = (self.U.one,) + (self.U.zero,) * (self.e - 1)
        return LocalFieldElement(self, vec, 0, self.N, False)

    def pi(self):
        if self.e == 1:
            # uniformizer is -E[0] (= p for the standard step x - p)
            vec = (self.U.neg(self.E[0]),)
            return LocalFieldElement(self, vec, 0, self.N, False)
        vec = (self.U.zero, self.U.one) + (self.U.zero,) * (self.e - 2)
        return LocalFieldElement(self, vec, 0, self.N, False)

    def gen_unramified(self):
        u = (0, 1) + (0,) * (self.f - 2) if self.f > 1 else (1,)
        vec = (u,) + (self.U.zero,) * (self.e - 1)
        return LocalFieldElement(self, vec, 0, self.N, False)

    def from_int(self, n):
        if n == 0:
            return self.zero()
        vec = (self.U.from_int(n),) + (self.U.zero,) * (self.e - 1)
        return LocalFieldElement(self, vec, 0, self.N, False)

    def from_fraction(self, q):
        q = Fraction(q)
        num, den = q.numerator, q.denominator
        k = 0
        while den % self.p == 0:
            den //= self.p
            k += 1
        x = self.from_int(num)
        if den != 1:
            x = x * self.from_int(den).invert()
        if k:
            x = LocalFieldElement(self, x.vec, x.shift - k, x.prec,
                                  x.exact_zero)
        return x

    def from_residue(self, r):
        """Digit lift of a residue-field element."""
        if r.is_zero():
            return self.zero()
        vec = (self.U.lift(r),) + (self.U.zero,) * (self.e - 1)
        return LocalFieldElement(self, vec, 0, self.N, False)

    def teichmueller(self, r):
        """Teichmueller lift: the root of x^(q-1) = 1 reducing to r != 0."""
        q = self.residue_field.q
        x = self.from_residue(r)
        # Newton iteration for x^(q-1) - 1 restricted to the unit sphere:
        # x <- x - (x^q - x)/(q x^(q-1) - 1); simpler: x <- x^(p^f) repeatedly
        for _ in range(self.N + 2):
            x = x.pow_int(self.p**self.f)
        return x

    # -- element vector helpers ------------------------------------------

    def _shift_pi(self, vec):
        """vec * pi as a vector over U."""
        U = self.U
        top = vec[-1]
        out = [U.zero] + list(vec[:-1])
        if any(top):
            pe = self._pi_table[0]
            out = [U.add(a, U.mul(top, b)) for a, b in zip(out, pe)]
        return tuple(out)

    def _vec_mul(self, v1, v2):
        U, e = self.U, self.e
        if e == 1:
            return (U.mul(v1[0], v2[0]),)
        res = [U.zero] * (2 * e - 1)
        for i, a in enumerate(v1):
            if any(a):
                for j, b in enumerate(v2):
                    if any(b):
                        res[i + j] = U.add(res[i + j], U.mul(a, b))
        out = list(res[:e])
        for j in range(e, 2 * e - 1):
            c = res[j]
            if any(c):
                row = self._pi_table[j - e]
                out = [U.add(a, U.mul(c, b)) for a, b in zip(out, row)]
        return tuple(out)

    def _vec_val(self, vec):
        """Valuation (pi-units) of an integral vector; None if indist. from 0."""
        best = None
        for i, c in enumerate(vec):
            vU = self.U.val(c)
            if vU >= self.N:
                continue
            v = self.e * vU + i
            if best is None or v < best:
                best = v
        return best

    # -- conversions -------------------------------------------------------

    def element_from_coords(self, coords, shift=0):
        """coords: list of e tuples (each a U-coordinate)."""
        vec = tuple(tuple(int(x) % self.U.pN for x in c) for c in coords)
        return LocalFieldElement(self, vec, shift, self.N, False)


class LocalFieldElement:
    __slots__ = ("K", "vec", "shift", "prec", "exact_zero")

    def __init__(self, K, vec, shift, prec, exact_zero):
        self.K = K
        self.vec = vec
        self.shift = shift
        self.prec = min(prec, K.N)
        self.exact_zero = exact_zero

    def __repr__(self):
        v = self.valuation_or_none()
        if self.exact_zero:
            return "0"
        if v is None:
            return "O(pi^?)"
        return f"elt(v={Fraction(v, self.K.e)})"

    # -- normalized access --------------------------------------------------

    def _aligned(self, other):
        s = min(self.shift, other.shift)
        K = self.K
        pN = K.U.pN

        def scale(el):
            j = el.shift - s
            if j == 0:
                return el.vec, el.prec
            pj = K.p**j
            vec = tuple(tuple(a * pj % pN for a in c) for c in el.vec)
            return vec, min(el.prec + j, K.N)

        v1, p1 = scale(self)
        v2, p2 = scale(other)
        return s, v1, p1, v2, p2

    def _absorb(self):
        """Move p-content of the vector into the shift (no information loss
        in absolute terms); only applied while shift < 0."""
        if self.shift >= 0:
            return self
        K = self.K
        j = min(self.K.U.val(c) for c in self.vec)
        if j == 0:
            return self
        j = min(j, -self.shift)
        if j >= K.N:
            # vector is zero to full precision
            return LocalFieldElement(K, K._zero_vec, 0,
                                     max(self.prec - j, 0) if not self.exact_zero else K.N,
                                     self.exact_zero)
        vec = tuple(K.U.div_p(c, j) for c in self.vec)
        return LocalFieldElement(K, vec, self.shift + j, self.prec - j,
                                 self.exact_zero)

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        K = self.K
        s, v1, p1, v2, p2 = self._aligned(other)
        vec = tuple(K.U.add(a, b) for a, b in zip(v1, v2))
        out = LocalFieldElement(K, vec, s, min(p1, p2),
                                self.exact_zero and other.exact_zero)
        return out._absorb()

    def __sub__(self, other):
        K = self.K
        s, v1, p1, v2, p2 = self._aligned(other)
        vec = tuple(K.U.sub(a, b) for a, b in zip(v1, v2))
        out = LocalFieldElement(K, vec, s, min(p1, p2),
                                self.exact_zero and other.exact_zero)
        return out._absorb()

    def __neg__(self):
        K = self.K
        return LocalFieldElement(K, tuple(K.U.neg(c) for c in self.vec),
                                 self.shift, self.prec, self.exact_zero)

    def __mul__(self, other):
        K = self.K
        if self.exact_zero or other.exact_zero:
            return K.zero()
        vec = K._vec_mul(self.vec, other.vec)
        out = LocalFieldElement(K, vec, self.shift + other.shift,
                                min(self.prec, other.prec), False)
        return out._absorb()

    def pow_int(self, n):
        K = self.K
        if n == 0:
            return K.one()
        if n < 0:
            return self.invert().pow_int(-n)
        result, base = K.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_pi_power(self, j):
        """self * pi^j for j >= 0."""
        K = self.K
        vec = self.vec
        for _ in range(j):
            vec = K._shift_pi(vec)
        return LocalFieldElement(K, vec, self.shift, self.prec,
                                 self.exact_zero)

    def invert(self):
        K = self.K
        if self.exact_zero:
            raise ZeroDivisionError("inverse of exact zero")
        w = K._vec_val(self.vec)
        if w is None:
            raise PrecisionExhausted("inverting an element indistinguishable "
                                     "from zero")
        e = K.e
        k = -(-w // e)  # ceil(w / e)
        y = self.mul_pi_power(e * k - w)
        # y.vec is divisible by p^k; the quotient is a unit vector
        uvec = tuple(K.U.div_p(c, k) for c in y.vec)
        # Newton inversion of the unit u: z <- z(2 - u z)
        r0 = K.U.residue(uvec[0]).inverse()
        z = LocalFieldElement(K, (K.U.lift(r0),) + (K.U.zero,) * (e - 1),
                              0, K.N, False)
        u = LocalFieldElement(K, uvec, 0, self.prec, False)
        two = K.from_int(2)
        steps = max(1, (K.N * e - 1).bit_length() + 1)
        for _ in range(steps):
            z = z * (two - u * z)
        out = z.mul_pi_power(e * k - w)
        return LocalFieldElement(K, out.vec, out.shift - k - self.shift,
                                 min(self.prec, z.prec), False)._absorb()

    def __truediv__(self, other):
        return self * other.invert()

    # -- valuation, residue, comparison ----------------------------------

    def valuation_or_none(self):
        """Valuation in pi-units, INFINITE for exact zero, None if unknown."""
        if self.exact_zero:
            return INFINITE
        v = self.K._vec_val(self.vec)
        if v is None:
            return None
        return v + self.K.e * self.shift

    def valuation(self):
        """Exact valuation in pi-units; PrecisionExhausted when the element
        is zero to working precision but not provably zero."""
        v = self.valuation_or_none()
        if v is None:
            raise PrecisionExhausted(
                "element is zero to working precision; raise the precision")
        if v == INFINITE:
            return INFINITE
        # the deciding digit must be well inside the known precision
        K = self.K
        if v - K.e * self.shift >= K.e * (self.prec - _MARGIN):
            raise PrecisionExhausted("valuation decision lacks headroom")
        return v

    def as_vp1(self):
        v = self.valuation()
        if v == INFINITE:
            return INFINITE
        return Fraction(v, self.K.e)

    def residue(self):
        K = self.K
        v = self.valuation_or_none()
        if v == INFINITE:
            return K.residue_field.zero()
        if v is None:
            raise PrecisionExhausted("residue of an element indist. from 0")
        if v < 0:
            raise NegativeValuation("residue of a non-integral element")
        x = self
        if x.shift < 0:
            # v >= 0 forces divisibility; absorb completely
            pk = K.p ** (-x.shift)
            vec = tuple(K.U.div_p(c, -x.shift) for c in x.vec)
            x = LocalFieldElement(K, vec, 0, x.prec + x.shift, False)
        elif x.shift > 0:
            pj = K.p**x.shift
            vec = tuple(tuple(a * pj % K.U.pN for a in c) for c in x.vec)
            x = LocalFieldElement(K, vec, 0, min(x.prec + x.shift, K.N), False)
        if x.prec < 1:
            raise PrecisionExhausted("no digits left for residue")
        return K.U.residue(x.vec[0])

    def is_zero_to_precision(self):
        return self.exact_zero or self.K._vec_val(self.vec) is None

    def eq_approx(self, other, margin_digits=None):
        """Equality up to (nearly) working precision."""
        d = self - other
        if d.exact_zero:
            return True
        v = d.valuation_or_none()
        if v is None:
            return True
        K = self.K
        need = K.e * (min(self.prec, other.prec) + min(self.shift, other.shift)
                      - (margin_digits if margin_digits is not None else _MARGIN))
        return v >= need

    def digits(self, count):
        """First `count` pi-adic digits (residue-field elements) of the unit
        part, preceded by the valuation: used for canonical ordering.
        Digits beyond the working precision are padded with zeros."""
        v = self.valuation_or_none()
        if v in (INFINITE, None):
            return (INFINITE,)
        K = self.K
        piinv = K.pi().invert()
        y = self * piinv.pow_int(v)
        out = [v]
        while len(out) <= count:
            if y.is_zero_to_precision() or y.prec + y.shift < 1:
                out.extend([0] * (count - len(out) + 1))
                break
            r = y.residue()
            out.append(r.index())
            y = (y - K.from_residue(r)) * piinv
        return tuple(out)


def sort_key(count=12):
    def key(x):
        d = x.digits(count)
        if d[0] == INFINITE:
            return (1,)
        return (0,) + d
    return key


# ---------------------------------------------------------------------------
# polynomials over L and root finding
# ---------------------------------------------------------------------------

def poly_eval(coeffs, x):
    acc = x.K.zero()
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(coeffs, K):
    out = []
    for i, c in enumerate(coeffs):
        if i:
            out.append(c * K.from_int(i))
    return out or [K.zero()]


def poly_shift_scale(coeffs, K, center, pi_power):
    """g(center + pi^j * s) as a polynomial in s."""
    n = len(coeffs) - 1
    pij = K.pi().pow_int(pi_power)
    out = [K.zero() for _ in range(n + 1)]
    cpow = [K.one()]
    for _ in range(n):
        cpow.append(cpow[-1] * center)
    pipow = [K.one()]
    for _ in range(n):
        pipow.append(pipow[-1] * pij)
    for i, ci in enumerate(coeffs):
        if ci.exact_zero:
            continue
        for j in range(i + 1):
            coef = ci * cpow[i - j] * pipow[j] * K.from_int(comb(i, j))
            out[j] = out[j] + coef
    return out


def _poly_strip(coeffs, K):
    """Divide the polynomial by pi^m, m the minimal coefficient valuation.

    Coefficients that are zero to their working precision are tolerated as
    long as that precision safely exceeds m.
    """
    vals = []
    for c in coeffs:
        v = c.valuation_or_none()
        if v not in (None, INFINITE):
            vals.append(v)
    if not vals:
        raise PrecisionExhausted("zero polynomial in root search")
    m = min(vals)
    for c in coeffs:
        if c.valuation_or_none() is None \
                and K.e * (c.prec + c.shift) < m + K.e:
            raise PrecisionExhausted("coefficient known to too few digits "
                                     "to normalize the polynomial")
    if m == 0:
        return coeffs
    piinv_m = K.pi().invert().pow_int(m)
    return [c * piinv_m for c in coeffs]


def _residue_or_zero(c):
    """Residue of a coefficient, mapping zero-to-precision values to 0."""
    v = c.valuation_or_none()
    if v == INFINITE:
        return c.K.residue_field.zero()
    if v is None:
        if c.K.e * (c.prec + c.shift) >= 1:
            return c.K.residue_field.zero()
        raise PrecisionExhausted("coefficient too fuzzy for a residue")
    return c.residue()


def _newton_refine(coeffs, K, x, dcoeffs):
    """Quadratically convergent refinement of a simple root."""
    target = K.e * (K.N - _MARGIN)
    for _ in range(K.N * K.e + 8):
        fx = poly_eval(coeffs, x)
        v = fx.valuation_or_none()
        if v is None or v == INFINITE or v >= target:
            return x
        dfx = poly_eval(dcoeffs, x)
        x = x - fx / dfx
    raise PrecisionExhausted("Newton iteration did not converge")


def roots_integral(coeffs, K, depth=0):
    """All roots in O_L of a separable polynomial with integral coefficients.

    Digit-refinement: residue roots of the stripped reduction are either
    lifted by Newton (simple) or explored one pi-digit deeper (multiple).
    Deterministic output order (valuation, then digit-lexicographic).
    """
    if depth > 6 * K.N:
        raise PrecisionExhausted("root search recursion exceeded the "
                                 "precision budget")
    coeffs = _poly_strip(coeffs, K)
    Fbar = K.residue_field
    red = FqPoly(Fbar, [_residue_or_zero(c) for c in coeffs])
    if red.degree() < 1:
        return []
    dred = red.derivative()
    dcoeffs = poly_derivative(coeffs, K)
    out = []
    for rbar in red.roots():
        lift = K.from_residue(rbar)
        if not dred.evaluate(rbar).is_zero():
            out.append(_newton_refine(coeffs, K, lift, dcoeffs))
            continue
        shifted = poly_shift_scale(coeffs, K, lift, 1)
        pi = K.pi()
        for s in roots_integral(shifted, K, depth + 1):
            out.append(lift + pi * s)
    return sorted(out, key=sort_key())


def roots_of_qpoly(K, qp):
    """Roots in L of a squarefree polynomial over Q (integral or not)."""
    ints, _ = qp.content_clear()
    cs = [int(c) for c in ints.coeffs]
    lead = cs[-1]
    n = len(cs) - 1
    # y = lead * x turns it monic integral: y^n + sum c_i lead^(n-1-i) y^i
    monic = [K.from_int(c * lead ** (n - 1 - i)) for i, c in enumerate(cs[:-1])]
    monic.append(K.from_int(1))
    roots_y = roots_integral(monic, K)
    lead_inv = K.from_int(lead).invert()
    roots = [y * lead_inv for y in roots_y]
    # enforce the residual check: f(root) must vanish to high precision
    for r in roots:
        val = poly_eval([K.from_fraction(c) for c in qp.coeffs], r) \
            .valuation_or_none()
        if val is None or val == INFINITE:
            continue
        if val < K.e * (K.N // 2):
            raise PrecisionExhausted("root residual too large")
    return sorted(roots, key=sort_key())


LocalField.roots_of_qpoly = lambda self, qp: roots_of_qpoly(self, qp)


# ---------------------------------------------------------------------------
# Galois groups
# ---------------------------------------------------------------------------

class Automorphism:
    """Field automorphism of L/Q_p given by images of the two generators."""

    __slots__ = ("K", "a_img", "pi_img", "basis_img", "res_power", "index")

    def __init__(self, K, a_img, pi_img):
        self.K = K
        self.a_img = a_img
        self.pi_img = pi_img
        # basis images: a^j * pi^i
        basis = []
        a_pows = [K.one()]
        for _ in range(K.f - 1):
            a_pows.append(a_pows[-1] * a_img)
        pi_pows = [K.one()]
        for _ in range(K.e - 1):
            pi_pows.append(pi_pows[-1] * pi_img)
        for i in range(K.e):
            row = [a_pows[j] * pi_pows[i] for j in range(K.f)]
            basis.append(row)
        self.basis_img = basis
        # residue action: res(sigma(a)) = res(a)^(p^j)
        ra = a_img.residue()
        base = K.residue_field.gen() if K.f > 1 else K.residue_field.one()
        self.res_power = 0
        for j in range(K.f):
            if base ** (K.p**j) == ra:
                self.res_power = j
                break
        else:
            raise NotGalois("residue image of the unramified generator is "
                            "not a conjugate")
        self.index = None

    def apply(self, x):
        K = self.K
        acc = K.zero()
        for i, c in enumerate(x.vec):
            for j, d in enumerate(c):
                if d:
                    acc = acc + self.basis_img[i][j] * K.from_int(d)
        if x.shift:
            acc = LocalFieldElement(K, acc.vec, acc.shift + x.shift,
                                    acc.prec, acc.exact_zero)
        return LocalFieldElement(K, acc.vec, acc.shift,
                                 min(acc.prec, x.prec), x.exact_zero)

    def residue_action(self, r):
        """Induced map on the residue field (and its extensions)."""
        return r.frobenius(self.res_power)

    def is_identity(self):
        K = self.K
        return (self.a_img.eq_approx(K.gen_unramified())
                and self.pi_img.eq_approx(K.pi()))


class GaloisGroupData:
    """Gal(L/Q_p): automorphism list, multiplication table, inertia,
    Frobenius coset representative."""

    def __init__(self, K, autos, table, inertia, frobenius_index):
        self.K = K
        self.autos = autos
        self.table = table          # table[i][j] = index of autos[i] o autos[j]
        self.inertia = inertia      # sorted list of indices
        self.frobenius_index = frobenius_index
        self.identity_index = next(i for i, s in enumerate(autos)
                                   if s.is_identity())

    def order(self):
        return len(self.autos)

    def compose(self, i, j):
        return self.table[i][j]

    def inverse(self, i):
        for j in range(len(self.autos)):
            if self.table[i][j] == self.identity_index:
                return j
        raise NotGalois("no inverse found: composition table broken")

    def element_order(self, i):
        j, n = i, 1
        while j != self.identity_index:
            j = self.table[j][i]
            n += 1
        return n

    def subgroup_generated(self, gens):
        seen = set(gens) | {self.identity_index}
        frontier = list(seen)
        while frontier:
            nxt = []
            for i in frontier:
                for j in list(seen):
                    for k in (self.table[i][j], self.table[j][i]):
                        if k not in seen:
                            seen.add(k)
                            nxt.append(k)
            frontier = nxt
        return sorted(seen)


def _closeness(x, y):
    v = (x - y).valuation_or_none()
    if v is None or v == INFINITE:
        return 10**9
    return v


def _match_pair(a, pi, a_imgs, pi_imgs):
    """Index of the automorphism whose generator images are closest to
    (a, pi); requires a clear winner."""
    best, best_v, second = None, -1, -1
    for i in range(len(a_imgs)):
        v = min(_closeness(a, a_imgs[i]), _closeness(pi, pi_imgs[i]))
        if v > best_v:
            second = best_v
            best, best_v = i, v
        elif v > second:
            second = v
    if best_v <= second:
        raise PrecisionExhausted("cannot separate Galois images")
    return best


def galois_group(L, base="Qp"):
    """Enumerate Gal(L/Q_p) by sending the generators to conjugate roots.

    Raises NotGalois when fewer than [L:Q_p] automorphisms exist.
    """
    if base != "Qp":
        raise NotImplementedError("only the base Q_p is supported")
    K = L
    # roots of the unramified modulus inside U (they are Hensel-liftable)
    mcoeffs = [K.from_int(c) for c in K.U.modulus]
    a_roots = roots_integral(mcoeffs, K) if K.f > 1 else [K.gen_unramified()]
    if len(a_roots) != K.f:
        raise NotGalois(f"unramified modulus has {len(a_roots)} roots, "
                        f"expected {K.f}")
    autos = []
    for a_img in a_roots:
        # sigma|U determined by a -> a_img; transport E's coefficients
        sigmaU = _coeff_transport(K, a_img)
        E_sigma = [sigmaU(c) for c in K.E]
        pi_roots = roots_integral(E_sigma, K)
        for pi_img in pi_roots:
            autos.append(Automorphism(K, a_img, pi_img))
    if len(autos) != K.degree:
        raise NotGalois(f"found {len(autos)} automorphisms, "
                        f"need {K.degree}: L/Q_p is not Galois")
    for i, s in enumerate(autos):
        s.index = i
    a_imgs = [s.a_img for s in autos]
    pi_imgs = [s.pi_img for s in autos]
    # composition table via images of the generators
    table = []
    for i, s in enumerate(autos):
        row = []
        for j, t in enumerate(autos):
            a_ij = s.apply(t.a_img)
            pi_ij = s.apply(t.pi_img)
            row.append(_match_pair(a_ij, pi_ij, a_imgs, pi_imgs))
        table.append(row)
    inertia = sorted(i for i, s in enumerate(autos) if s.res_power == 0)
    if len(inertia) != K.e:
        raise NotGalois(f"inertia has order {len(inertia)}, expected {K.e}")
    frob_target = 1 % K.f
    frob = min(i for i, s in enumerate(autos) if s.res_power == frob_target)
    return GaloisGroupData(K, autos, table, inertia, frob)


def _coeff_transport(K, a_img):
    """The map U -> L sending sum d_j a^j to sum d_j a_img^j."""
    pows = [K.one()]
    for _ in range(K.f - 1):
        pows.append(pows[-1] * a_img)

    def fn(ucoeff):
        acc = K.zero()
        for j, d in enumerate(ucoeff):
            if d:
                acc = acc + pows[j] * K.from_int(d)
        return acc

    return fn


# ---------------------------------------------------------------------------
# ramification filtration
# ---------------------------------------------------------------------------

class RamificationFiltration:
    """Lower-numbering groups Gamma_0 >= Gamma_1 >= ... as index lists."""

    def __init__(self, groups, jumps):
        self.groups = groups  # groups[i] = sorted list of automorphism indices
        self.last_jump = jumps

    def gamma(self, i):
        if i < len(self.groups):
            return self.groups[i]
        return self.groups[-1]

    def wild_order(self):
        return len(self.groups[1]) if len(self.groups) > 1 else 1


def ramification_filtration(G):
    """Compute Gamma_i via i(sigma) = v_L(sigma(theta) - theta) for a
    verified generator theta of O_L over Z_p.

    Candidates theta = pi, then pi + a; the candidate is accepted when
    sum_(sigma != 1) i(sigma) equals v_L(E'(pi)) (the different of L/Q_p,
    since U/Q_p is unramified).
    """
    K = G.K
    # v_L of the different: E'(pi)
    dE = poly_derivative([LocalFieldElement(K, (c,) + (K.U.zero,) * (K.e - 1),
                                            0, K.N, False) for c in K.E], K)
    diff_val = poly_eval(dE, K.pi()).valuation()
    candidates = [K.pi(), K.pi() + K.gen_unramified()]
    if K.f > 1:
        candidates.append(K.pi() +
                          K.teichmueller(K.residue_field.gen()))
    for theta in candidates:
        ivals = {}
        ok = True
        total = 0
        for i, s in enumerate(G.autos):
            if i == G.identity_index:
                continue
            d = s.apply(theta) - theta
            v = d.valuation_or_none()
            if v is None or v == INFINITE:
                ok = False  # theta does not separate; try the next candidate
                break
            ivals[i] = v
            total += v
        if not ok:
            continue
        if total != diff_val:
            continue
        groups = [sorted(G.inertia)]
        i = 1
        while True:
            g_i = sorted([G.identity_index] +
                         [s for s in G.inertia
                          if s != G.identity_index and ivals[s] >= i + 1])
            if len(g_i) == 1:
                break
            groups.append(g_i)
            i += 1
        groups.append([G.identity_index])
        return RamificationFiltration(groups, len(groups) - 2)
    raise NotMonogenicWitness(
        "no verified monogenic generator at this precision; "
        f"different = {diff_val}")
