"""Catalog search for splitting and semistabilizing fields.

Candidate fields are the composites Q_p(zeta_m, (u p)^(1/e)) where the
prime-to-p part of m contributes an unramified piece of degree f0, the
p-part contributes the wild cyclotomic Eisenstein step Phi_{p^s}(x+1), and
u runs over Teichmueller representatives modulo e-th powers.  Every
candidate is flattened into the normalized two-level shape of
:mod:`localfield`: when both a wild cyclotomic step and a radical step are
present, a uniformizer of the composite is written as xi^A y^B / p^k and
its minimal polynomial over the unramified part is recovered by linear
algebra.

The search is exhaustive in increasing degree, so results are the
smallest-degree catalog members with the requested properties.  Fields the
catalog cannot express (for instance wild composites with gcd(e, phi(p^s))
> 1, which are skipped during flattening) surface as CatalogExhausted.
"""

from __future__ import annotations

from math import gcd

from .errors import (
    CatalogExhausted,
    NotEisenstein,
    NotGalois,
    PrecisionExhausted,
)
from .localfield import (
    INFINITE,
    LocalField,
    LocalFieldElement,
    galois_group,
    roots_integral,
    roots_of_qpoly,
)
from .qpoly import QPoly


class SearchConfig:
    """Bounds of the catalog: max cyclotomic p-part, max unramified degree,
    max total degree, working precision."""

    def __init__(self, precision=50, max_cyclotomic=64, max_unramified=8,
                 max_degree=64):
        self.precision = precision
        self.max_cyclotomic = max_cyclotomic
        self.max_unramified = max_unramified
        self.max_degree = max_degree

    def scaled(self, factor):
        return SearchConfig(self.precision * factor, self.max_cyclotomic,
                            self.max_unramified, self.max_degree)


class _SkipCandidate(Exception):
    """Internal: this catalog entry cannot be constructed; move on."""


# ---------------------------------------------------------------------------
# flattening
# ---------------------------------------------------------------------------

def _qp_unramified(p, f0, prec, modulus=None):
    """The unramified field of degree f0 in two-level shape (E = x - p)."""
    return LocalField(p, f0, [-p, 1], prec, unramified_modulus=modulus,
                      label=f"Q_{p}^(f{f0})")


def build_tower(p, unramified_degree, eisenstein_steps, precision,
                unramified_modulus=None):
    """Build Q_p -> unramified(f) -> successive Eisenstein steps, flattening
    into the normalized two-level shape after each step.

    Step coefficients may be integers or element encodings of the field
    built so far (lists of length-f integer vectors, low-to-high in pi).
    """
    L = _qp_unramified(p, unramified_degree, precision, unramified_modulus)
    for step in eisenstein_steps:
        coeffs = [_coerce_step_coefficient(L, c) for c in step]
        try:
            L = adjoin_eisenstein(L, coeffs)
        except _SkipCandidate as exc:
            raise NotEisenstein(f"cannot flatten tower step: {exc}")
    return L


def _coerce_step_coefficient(L, c):
    if isinstance(c, int):
        return L.from_int(c)
    if isinstance(c, list):
        coords = []
        for v in c:
            if isinstance(v, int):
                coords.append((v,) + (0,) * (L.f - 1))
            else:
                coords.append(tuple(v))
        while len(coords) < L.e:
            coords.append((0,) * L.f)
        return L.element_from_coords(coords)
    raise TypeError(f"bad tower coefficient {c!r}")


def _solve_linear(K, cols, rhs):
    """Solve sum_j x_j cols[j] = rhs over the field K (entries K-elements).

    Gaussian elimination with minimal-valuation pivoting; raises
    _SkipCandidate when the matrix is singular to working precision.
    """
    n = len(rhs)
    m = len(cols)
    A = [[cols[j][i] for j in range(m)] + [rhs[i]] for i in range(n)]
    pivots = []
    used = set()
    for col in range(m):
        best, best_v = None, None
        for r in range(n):
            if r in used:
                continue
            v = A[r][col].valuation_or_none()
            if v is None or v == INFINITE:
                continue
            if best_v is None or v < best_v:
                best, best_v = r, v
        if best is None:
            raise _SkipCandidate("singular system while flattening")
        used.add(best)
        pivots.append((best, col))
        inv = A[best][col].invert()
        for r in range(n):
            if r == best:
                continue
            factor = A[r][col] * inv
            if factor.is_zero_to_precision():
                continue
            for c in range(col, m + 1):
                A[r][c] = A[r][c] - factor * A[best][c]
    xs = [None] * m
    for r, col in pivots:
        xs[col] = A[r][m] * A[r][col].invert()
    # consistency: rows without pivots must have zero rhs
    for r in range(n):
        if r not in used and not A[r][m].is_zero_to_precision():
            raise _SkipCandidate("inconsistent system while flattening")
    return xs


def _as_u_tuple(K_U, x):
    """Convert an element of the 1-step field K_U into an integral U-tuple."""
    v = x.valuation_or_none()
    if v == INFINITE:
        return K_U.U.zero
    if v is None:
        # zero to precision: treat as zero (guarded by Eisenstein checks)
        return K_U.U.zero
    if v < 0:
        raise _SkipCandidate("non-integral minimal polynomial coefficient")
    vec = x.vec[0]
    if x.shift > 0:
        pj = K_U.p**x.shift
        vec = tuple(a * pj % K_U.U.pN for a in vec)
    elif x.shift < 0:
        vec = K_U.U.div_p(vec, -x.shift)
    return vec


def flatten_extension(L1, g_coeffs, z_exponents, label=None):
    """Replace the tower L1[y]/(g) by a two-level field.

    ``g_coeffs``: coefficients of the monic polynomial g over L1 (length
    d+1); ``z_exponents`` = (A, B, k) defines the uniformizer candidate
    z = pi_L1^A * y^B / p^k.  The minimal polynomial of z over the
    unramified part is computed by linear algebra and must come out
    Eisenstein of degree e(L1)*d, otherwise the candidate is skipped.
    """
    d = len(g_coeffs) - 1
    e_tot = L1.e * d
    A, B, k = z_exponents

    zero1 = L1.zero()

    def t2_mul(u, v):
        res = [zero1 for _ in range(2 * d - 1)]
        for i, a in enumerate(u):
            if a.is_zero_to_precision():
                continue
            for j, b in enumerate(v):
                if not b.is_zero_to_precision():
                    res[i + j] = res[i + j] + a * b
        # reduce by monic g
        for top in range(2 * d - 2, d - 1, -1):
            c = res[top]
            if c.is_zero_to_precision():
                continue
            res[top] = zero1
            for j in range(d):
                res[top - d + j] = res[top - d + j] - c * g_coeffs[j]
        return res[:d]

    z = [zero1 for _ in range(d)]
    scale = L1.pi().pow_int(A)
    if k:
        scale = LocalFieldElement(L1, scale.vec, scale.shift - k, scale.prec,
                                  False)
    z[B % d] = scale if B < d else scale  # B < d by construction
    if B >= d:
        raise _SkipCandidate("bad uniformizer exponent")

    one_t2 = [zero1 for _ in range(d)]
    one_t2[0] = L1.one()
    z_pows = [one_t2]
    for _ in range(e_tot):
        z_pows.append(t2_mul(z_pows[-1], z))

    # flatten T2 coordinates to vectors over the 1-step unramified field
    K_U = _qp_unramified(L1.p, L1.f, L1.N)

    def flat(vecT2):
        out = []
        for l in range(d):
            el = vecT2[l]
            for i in range(L1.e):
                out.append(LocalFieldElement(K_U, (el.vec[i],), el.shift,
                                             el.prec, el.exact_zero))
        return out

    cols = [flat(z_pows[j]) for j in range(e_tot)]
    rhs = [x for x in flat(z_pows[e_tot])]
    xs = _solve_linear(K_U, cols, rhs)
    E_flat = [_as_u_tuple(K_U, -x) for x in xs] + [K_U.U.one]
    try:
        return LocalField(L1.p, L1.f, E_flat, L1.N, label=label)
    except NotEisenstein as exc:
        raise _SkipCandidate(str(exc))


def _neg_mod(x, pN):
    return tuple(-a % pN for a in x)


def adjoin_radical(L1, d, c_elt, label=None):
    """L1(y) with y^d = c_elt, flattened.  Requires the valuation of c_elt
    to make y a 'new' uniformizer direction: v_p(c_elt) * (1/d) must have
    exact denominator e(L1)*d."""
    e1 = L1.e
    w = c_elt.valuation()  # pi_L1-units
    if w == INFINITE:
        raise _SkipCandidate("radical of zero")
    if e1 == 1 and w == 1:
        # already Eisenstein over U: y^d - c
        cvec = c_elt
        if cvec.shift != 0:
            pj = L1.p**cvec.shift
            if cvec.shift < 0:
                raise _SkipCandidate("non-integral radical")
            vecs = tuple(tuple(a * pj % L1.U.pN for a in cc)
                         for cc in cvec.vec)
        else:
            vecs = cvec.vec
        E = [_neg_mod(vecs[0], L1.U.pN)] + [L1.U.zero] * (d - 1) + [L1.U.one]
        return LocalField(L1.p, L1.f, E, L1.N, label=label)
    # z = pi^A y^B / p^k with A*d + B*e1 = 1 + k*e1*d  (only for w = e1)
    if w != e1:
        raise _SkipCandidate("unsupported radical valuation")
    if gcd(d, e1) != 1:
        raise _SkipCandidate("wild composite with gcd(e, phi) > 1")
    A = pow(d, -1, e1) if e1 > 1 else 0
    B = pow(e1, -1, d) if d > 1 else 0
    V = A * d + B * e1
    assert V % (e1 * d) == 1 % (e1 * d)
    k = (V - 1) // (e1 * d)
    g = [-c_elt] + [L1.zero()] * (d - 1) + [L1.one()]
    return flatten_extension(L1, g, (A, B, k), label=label)


def adjoin_eisenstein(L1, g_coeffs, label=None):
    """L1[y]/(g) for g Eisenstein over L1, flattened (z = y)."""
    d = len(g_coeffs) - 1
    for c in g_coeffs[:-1]:
        v = c.valuation_or_none()
        if v in (None,):
            raise PrecisionExhausted("Eisenstein check needs more digits")
        if v != INFINITE and v < 1:
            raise NotEisenstein("step polynomial is not Eisenstein")
    v0 = g_coeffs[0].valuation()
    if v0 != 1:
        raise NotEisenstein("constant term must be a uniformizer")
    if L1.e == 1:
        K_U = _qp_unramified(L1.p, L1.f, L1.N)
        E = [_as_u_tuple(K_U, LocalFieldElement(K_U, (c.vec[0],), c.shift,
                                                c.prec, c.exact_zero))
             for c in g_coeffs]
        return LocalField(L1.p, L1.f, E, L1.N, label=label)
    return flatten_extension(L1, list(g_coeffs), (0, 1, 0), label=label)


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

def _cyclotomic_pk_shifted(p, s):
    """Phi_{p^s}(x + 1) as integer coefficients (Eisenstein at p)."""
    phi = QPoly([0] * (p ** (s - 1)) + [1])  # x^(p^(s-1))
    cyc = QPoly([0] * 0 + [1])
    # Phi_{p^s}(x) = sum_{i<p} x^(i p^(s-1))
    coeffs = [0] * ((p - 1) * p ** (s - 1) + 1)
    for i in range(p):
        if i * p ** (s - 1) < len(coeffs):
            coeffs[i * p ** (s - 1)] = 1
    cyc = QPoly(coeffs)
    shifted = cyc  # compose with x + 1
    xp1 = QPoly([1, 1])
    acc = QPoly([0])
    for c in reversed(cyc.coeffs):
        acc = acc * xp1 + QPoly([c])
    return [int(c) for c in acc.coeffs]


_CANDIDATE_CACHE = {}


def construct_candidate(p, f0, s, e, u_idx, prec):
    """Build the catalog field Q_p(unram f0, zeta_{p^s}, (u p)^(1/e)).

    Returns a LocalField or raises _SkipCandidate.
    """
    key = (p, f0, s, e, u_idx, prec)
    if key in _CANDIDATE_CACHE:
        val = _CANDIDATE_CACHE[key]
        if isinstance(val, Exception):
            raise val
        return val
    try:
        field = _construct_candidate(p, f0, s, e, u_idx, prec)
    except _SkipCandidate as exc:
        _CANDIDATE_CACHE[key] = exc
        raise
    _CANDIDATE_CACHE[key] = field
    return field


def _teich_unit(L, u_idx, e):
    """Teichmueller lift of the canonical coset representative."""
    Fq = L.residue_field
    g0 = gcd(e, Fq.q - 1)
    if g0 == 1 or u_idx == 0:
        return L.one(), 0
    gen = Fq.multiplicative_generator()
    u = gen**u_idx
    return L.teichmueller(u), u_idx % g0


def _construct_candidate(p, f0, s, e, u_idx, prec):
    label = f"Q_{p}(f{f0};zeta_{p ** s};e{e};u{u_idx})"
    base = _qp_unramified(p, f0, prec)
    if s > 0 and (p ** (s - 1)) * (p - 1) == 1:
        s = 0  # zeta_2 over Q_2 etc. is trivial
    if s == 0:
        if e == 1:
            return base
        u, _ = _teich_unit(base, u_idx, e)
        c = u * base.from_int(p)
        return adjoin_radical(base, e, c, label=label)
    eis = _cyclotomic_pk_shifted(p, s)
    L1 = LocalField(p, f0, eis, prec, label=f"Q_{p}(f{f0};zeta_{p ** s})")
    if e == 1:
        return L1
    if gcd(e, L1.e) != 1:
        raise _SkipCandidate("wild composite with gcd(e, phi(p^s)) > 1")
    u, _ = _teich_unit(L1, u_idx, e)
    c = u * L1.from_int(p)
    return adjoin_radical(L1, e, c, label=label)


def catalog_entries(p, config):
    """All (degree, f0, s, e, u_idx) within bounds, sorted by degree then
    lexicographically: the deterministic search order."""
    out = []
    s_max = 0
    while p ** (s_max + 1) <= config.max_cyclotomic:
        s_max += 1
    for f0 in range(1, config.max_unramified + 1):
        q0 = p**f0
        for s in range(0, s_max + 1):
            phi = 1 if s == 0 else (p ** (s - 1)) * (p - 1)
            if phi == 1 and s > 0:
                continue  # duplicate of s = 0
            for e in range(1, config.max_degree + 1):
                deg = f0 * phi * e
                if deg > config.max_degree:
                    break
                if s > 0 and e > 1 and gcd(e, phi) != 1:
                    continue
                n_classes = gcd(e, q0 - 1) if e > 1 else 1
                for u_idx in range(n_classes):
                    out.append((deg, f0, s, e, u_idx))
    out.sort()
    return out


def _poly_roots_count(L, qp):
    try:
        return len(roots_of_qpoly(L, qp))
    except PrecisionExhausted:
        return -1


def splits_in(L, factors):
    """Do all the given squarefree Q-polynomials split into linear factors
    over L?  Returns the roots per factor, or None."""
    roots = []
    for g in factors:
        r = roots_of_qpoly(L, g)
        if len(r) != g.degree():
            return None
        roots.append(r)
    return roots


def splitting_field(f, p, config=None):
    """Smallest catalog field over which the squarefree factors of f split.

    Returns (LocalField, roots of the squarefree part in deterministic
    order).  Raises CatalogExhausted when no candidate splits f.
    """
    if config is None:
        config = SearchConfig()
    factors = [g for g, _ in f.squarefree_decomposition()]
    for deg, f0, s, e, u_idx in catalog_entries(p, config):
        try:
            L = construct_candidate(p, f0, s, e, u_idx, config.precision)
        except _SkipCandidate:
            continue
        try:
            roots = splits_in(L, factors)
        except PrecisionExhausted:
            continue
        if roots is not None:
            flat = [r for rs in roots for r in rs]
            return L, flat
    raise CatalogExhausted(
        f"no catalog field of degree <= {config.max_degree} splits f; "
        "supply an explicit field tower")


def contains_field(M, L0):
    """Does the candidate M contain (a copy of) the two-level field L0?"""
    if L0.f > 1:
        if M.f % L0.f:
            return False
        mcoeffs = [M.from_int(c) for c in L0.U.modulus]
        a_roots = roots_integral(mcoeffs, M)
        if not a_roots:
            return False
    else:
        a_roots = [M.one()]
    for a_img in a_roots:
        pows = [M.one()]
        for _ in range(L0.f - 1):
            pows.append(pows[-1] * a_img)

        def transport(ucoeff):
            acc = M.zero()
            for j, d in enumerate(ucoeff):
                if d:
                    acc = acc + pows[j] * M.from_int(d)
            return acc

        E_img = [transport(c) for c in L0.E]
        if roots_integral(E_img, M):
            return True
    return False


def contains_nth_root_of_unity(L, n):
    if n <= 2:
        return True
    # zeta_n exists iff the residue field contains it (n prime to p)
    if gcd(n, L.p) != 1:
        return False
    return (L.residue_field.q - 1) % n == 0


def has_nth_root_of_p(L, n):
    coeffs = [L.from_int(-L.p)] + [L.zero()] * (n - 1) + [L.one()]
    return bool(roots_integral(coeffs, L))


def semistabilizing_candidates(L0, n, f, p, config=None):
    """Yield catalog fields containing L0, zeta_n and p^(1/n), Galois over
    Q_p, in increasing degree (with their Galois groups)."""
    if config is None:
        config = SearchConfig()
    found = False
    for deg, f0, s, e, u_idx in catalog_entries(p, config):
        if (f0 * (1 if s == 0 else (p ** (s - 1)) * (p - 1)) * e) % 1:
            continue
        if deg % L0.degree:
            continue
        if f0 % L0.f:
            continue
        # e(L) must be divisible by n for p^(1/n) to exist
        phi = 1 if s == 0 else (p ** (s - 1)) * (p - 1)
        if (phi * e) % n:
            continue
        try:
            L = construct_candidate(p, f0, s, e, u_idx, config.precision)
        except _SkipCandidate:
            continue
        if not contains_nth_root_of_unity(L, n):
            continue
        try:
            if not contains_field(L, L0):
                continue
            if not has_nth_root_of_p(L, n):
                continue
            G = galois_group(L)
        except (PrecisionExhausted, NotGalois):
            continue
        found = True
        yield L, G
    if not found:
        raise CatalogExhausted(
            f"no Galois catalog field of degree <= {config.max_degree} "
            f"contains the splitting field, zeta_{n} and p^(1/{n})")


def semistabilizing_field(L0, n, f, p, config=None):
    """First (smallest) semistabilizing candidate."""
    for L, G in semistabilizing_candidates(L0, n, f, p, config):
        return L, G
    raise CatalogExhausted("unreachable")
