"""Independent oracles used only by the test suite.

``count_points_by_places`` counts rational points of the normalization of
z^nbar = h(w) by enumerating the places of the function field above every
point of P^1: the local factorization of z^nbar - h(x0 + t) is explored with
a Newton polygon / rational Puiseux recursion, and every branch whose
residue field stays the base field contributes one point.  It shares no
code with the gcd-based counting rule of the package.

``count_affine_brute`` is plain exhaustive enumeration of affine solutions,
used for good-reduction cross-checks where the affine model is smooth.
"""

from fractions import Fraction

from superell.finitefield import INF, FqPoly, RationalFunction, factor_poly, fq_make

_MAX_DEPTH = 80


def _ord_t(poly):
    if poly.is_zero():
        return None
    for i, c in enumerate(poly.coeffs):
        if not c.is_zero():
            return i
    return None


def _coeff_t(poly, m):
    if 0 <= m < len(poly.coeffs):
        return poly.coeffs[m]
    return poly.field.zero()


def _lower_hull(points):
    pts = sorted(points)
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _strip_t_content(G):
    orders = [o for o in (_ord_t(c) for c in G) if o is not None]
    m = min(orders)
    if m == 0:
        return G
    F = G[0].field
    out = []
    for c in G:
        if c.is_zero():
            out.append(c)
        else:
            out.append(FqPoly(F, list(c.coeffs[m:]) or [F.zero()]))
    return out


def _t_power(F, e):
    return FqPoly.from_ints(F, [0] * e + [1])


def _subst_linear(G, a, y0):
    """G(t^a * (y0 + z')) as a polynomial in z', content-stripped."""
    from math import comb
    F = G[0].field
    n = len(G) - 1
    out = [FqPoly(F, [F.zero()]) for _ in range(n + 1)]
    for j, cj in enumerate(G):
        if cj.is_zero():
            continue
        base = cj * _t_power(F, a * j)
        for i in range(j + 1):
            coef = F.from_int(comb(j, i)) * y0 ** (j - i)
            if not coef.is_zero():
                out[i] = out[i] + base * coef
    return _strip_t_content(out)


def _subst_duval(G, a, b, y0, u, w):
    """G(z = y0^w tau^a (1 + z'), t = y0^u tau^b) with u*b - w*a = 1."""
    from math import comb
    F = G[0].field
    n = len(G) - 1
    out = [FqPoly(F, [F.zero()]) for _ in range(n + 1)]
    for j, cj in enumerate(G):
        if cj.is_zero():
            continue
        for m, cm in enumerate(cj.coeffs):
            if cm.is_zero():
                continue
            base = cm * y0 ** (u * m + w * j)
            tau = _t_power(F, b * m + a * j)
            for i in range(j + 1):
                coef = base * F.from_int(comb(j, i))
                if not coef.is_zero():
                    out[i] = out[i] + tau * coef
    return _strip_t_content(out)


def _bezout(b, a):
    """(u, w) with u*b - w*a = 1, for gcd(a, b) = 1."""
    old_r, r = b, a
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    assert old_r == 1
    return old_s, -old_t


def _count_segment(G, lam, depth):
    """Degree-1 places among branches with v(z) = lam (lam >= 0)."""
    F = G[0].field
    a, b = lam.numerator, lam.denominator
    pts = [(j, _ord_t(c)) for j, c in enumerate(G)]
    pts = [(j, v) for j, v in pts if v is not None]
    c0 = min(Fraction(v) + lam * j for j, v in pts)
    support = [j for j, v in pts if Fraction(v) + lam * j == c0]
    j0, jmax = min(support), max(support)
    if jmax == j0:
        return 0
    R = []
    for i in range((jmax - j0) // b + 1):
        j = j0 + i * b
        v_needed = c0 - lam * j
        if v_needed.denominator != 1 or j >= len(G):
            R.append(F.zero())
        else:
            R.append(_coeff_t(G[j], int(v_needed)))
    Rpoly = FqPoly(F, R)
    assert Rpoly.degree() == (jmax - j0) // b
    total = 0
    deriv = Rpoly.derivative()
    if not deriv.is_zero() and Rpoly.gcd(deriv).degree() == 0:
        # separable residual: every root is simple, count them by gcd
        x = FqPoly.x(F)
        lin = Rpoly.gcd(x.powmod(F.q, Rpoly) - x)
        total = lin.degree()
        if lin.evaluate(F.zero()).is_zero():
            total -= 1  # y0 = 0 handled by the z-peeling branch
        return total
    for fac, mult in factor_poly(F, Rpoly):
        if fac.degree() != 1:
            continue  # residue field grows; not a degree-1 place
        y0 = -fac.coeffs[0]
        if y0.is_zero():
            continue
        if mult == 1:
            total += 1
        elif b == 1:
            total += _count_places(_subst_linear(G, a, y0), True, depth + 1)
        else:
            u, w = _bezout(b, a)
            total += _count_places(_subst_duval(G, a, b, y0, u, w), True,
                                   depth + 1)
    return total


def _count_places(G, positive_only, depth):
    """Degree-1 places of the branches of G(z, t) = 0.

    ``positive_only`` restricts to branches with v(z) > 0 (used after a
    substitution step); otherwise all branches, poles of z included.
    """
    if depth > _MAX_DEPTH:
        raise RuntimeError("place recursion did not terminate")
    total = 0
    if G[0].is_zero():
        total += 1  # the branch z = 0 exactly
        G = G[1:]
        if not G:
            return total
        if G[0].is_zero():
            raise RuntimeError("input polynomial not separable")
    if len(G) <= 1:
        return total
    pts = [(j, _ord_t(c)) for j, c in enumerate(G)]
    pts = [(j, v) for j, v in pts if v is not None]
    hull = _lower_hull(pts)
    slopes = set()
    for (j1, v1), (j2, v2) in zip(hull, hull[1:]):
        slopes.add(Fraction(v1 - v2, j2 - j1))
    for lam in sorted(slopes):
        if lam > 0 or (lam == 0 and not positive_only):
            total += _count_segment(G, lam, depth)
    if not positive_only:
        # branches where z has a pole: reverse in z and count v > 0
        rev = _strip_t_content(list(reversed(G)))
        total += _count_places(rev, True, depth + 1)
    return total


def _places_over(nbar, h, x0):
    F = h.field
    if x0 == INF:
        dn, dd = h.num.degree(), h.den.degree()
        hn = FqPoly(F, list(reversed(h.num.coeffs)))
        hd = FqPoly(F, list(reversed(h.den.coeffs)))
        shift = dd - dn
        if shift > 0:
            hn = hn * _t_power(F, shift)
        elif shift < 0:
            hd = hd * _t_power(F, -shift)
    else:
        hn = h.num.shift(x0)
        hd = h.den.shift(x0)
    G = [FqPoly(F, [F.zero()]) for _ in range(nbar + 1)]
    G[0] = -hn
    G[nbar] = hd
    return _count_places(_strip_t_content(G), False, 0)


def count_points_by_places(nbar, h, i=1):
    """Points over F_{q^i} on the normalization of z^nbar = h, place by place."""
    if isinstance(h, FqPoly):
        h = RationalFunction(h)
    F = h.field
    big = fq_make(F.p, F.k * i)
    emb = F.embedding(big)
    hh = RationalFunction(h.num.map_coeffs(emb, big),
                          h.den.map_coeffs(emb, big))
    total = 0
    for idx in range(big.q):
        total += _places_over(nbar, hh, big.from_index(idx))
    total += _places_over(nbar, hh, INF)
    return total


def count_affine_brute(n, fbar):
    """#{(x, y) in F^2 : y^n = fbar(x)} by exhaustive enumeration
    (one pass building the table of n-th powers, one pass over x)."""
    F = fbar.field
    table = {}
    for iy in range(F.q):
        y = F.from_index(iy)
        v = (y**n).coeffs
        table[v] = table.get(v, 0) + 1
    total = 0
    for ix in range(F.q):
        total += table.get(fbar.evaluate(F.from_index(ix)).coeffs, 0)
    return total


def places_at_infinity(nbar, h):
    """Degree-1 places of z^nbar = h above x = infinity (Puiseux oracle)."""
    if isinstance(h, FqPoly):
        h = RationalFunction(h)
    return _places_over(nbar, h, INF)
