"""Quotients of the special fiber: wild part, tame part, Frobenius descent.

The flow per inertia orbit of tree vertices, at a representative v:

1. wild quotient: the wild stabilizer acts by translations x -> x + b with
   trivial action on y; the invariant coordinate is u = prod (x + b) and
   fbar is rewritten as a polynomial in u (verified by resubstitution);
2. tame quotient: the designated tame generator acts by (u, y) ->
   (c u, gamma y); with m = ord(c), mu = lcm(m, ord(gamma)), s solving
   c^s = gamma^(mu/m), the invariants are w = u^m and z = y^(mu/m) u^(-s),
   giving z^nbar = h(w) with nbar = n m / mu;
3. Frobenius descent: a stabilizing semilinear generator acts on w by an
   affine map; Hilbert-90 systems (solved by F_p-linear algebra, never by
   randomized search) produce an invariant coordinate, and a final unit
   twist makes the equation's coefficients Frobenius-fixed, i.e. the
   component is presented over its true field of definition.

Every claimed invariance is re-checked by explicitly applying group
generators; failures raise NotInvariant/CocycleInconsistent rather than
risking a wrong L-factor.  The same machinery restricted to subgroups of
the wild inertia computes the quotient curves entering the Swan conductor.
"""

from __future__ import annotations

from math import lcm

from .errors import (
    CocycleInconsistent,
    NoRationalFixedPoint,
    NormNotOne,
    NotInvariant,
)
from .finitefield import (
    FqPoly,
    RationalFunction,
    fq_make,
    geometric_power_class,
    kummer_genus,
    normalize_kummer_equation,
    power_class,
)


# ---------------------------------------------------------------------------
# rewriting helpers
# ---------------------------------------------------------------------------

def rewrite_in_subalgebra(poly, u_poly):
    """Write poly = sum c_j * u_poly^j with constant c_j, or raise.

    Uniqueness comes from the u-adic expansion with remainders of degree
    < deg(u); invariance of poly forces the remainders to be constants.
    """
    F = poly.field
    rest = poly
    coeffs = []
    while True:
        q, r = rest.divmod(u_poly)
        if r.degree() > 0:
            raise NotInvariant("polynomial does not lie in the subalgebra")
        coeffs.append(r.coeffs[0])
        if q.is_zero():
            break
        rest = q
    out = FqPoly(F, coeffs)
    if out.compose(u_poly) != poly:
        raise NotInvariant("subalgebra rewrite failed resubstitution")
    return out


def rewrite_in_power(rat, m):
    """Rewrite a scaling-invariant rational function of u in w = u^m."""
    if m == 1:
        return rat
    F = rat.field
    num, den = rat.num, rat.den
    lo_n = next(i for i, c in enumerate(num.coeffs) if not c.is_zero())
    lo_d = next(i for i, c in enumerate(den.coeffs) if not c.is_zero())
    shift = (lo_d - lo_n) % m
    if shift:
        x = FqPoly.x(F)
        num = num * x**shift
        den = den * x**shift

    def compress(poly):
        out = []
        for i, c in enumerate(poly.coeffs):
            if i % m == 0:
                out.append(c)
            elif not c.is_zero():
                raise NotInvariant(
                    "function is not invariant under the scaling action")
        return FqPoly(F, out)

    return RationalFunction(compress(num), compress(den))


def _mu_elements(F, d):
    """mu_d(F) sorted canonically (d must divide q - 1 unless d = 1)."""
    if d == 1:
        return [F.one()]
    assert (F.q - 1) % d == 0, "mu_d not contained in the field"
    g = F.multiplicative_generator()
    z = g ** ((F.q - 1) // d)
    out, acc = [], F.one()
    for _ in range(d):
        out.append(acc)
        acc = acc * z
    return sorted(out, key=lambda x: x.index())


def _mult_order(x):
    F = x.field
    n, acc = 1, x
    while acc != F.one():
        acc = acc * x
        n += 1
        if n > F.q:
            raise NotInvariant("element has no multiplicative order")
    return n


# ---------------------------------------------------------------------------
# the ambient action context
# ---------------------------------------------------------------------------

class ActionContext:
    """Bundles tree, Galois action and reduction data, and provides the
    induced actions on y-scalings, Kummer sheets, and node labels."""

    def __init__(self, curve, L, G, filt, tree, act, fiber):
        self.curve = curve
        self.L = L
        self.G = G
        self.filt = filt
        self.tree = tree
        self.act = act
        self.fiber = fiber
        self._gamma_cache = {}
        k_lcm = 1
        for en in fiber.edge_nodes:
            k_lcm = lcm(k_lcm, en.label_field.k)
        self.label_field = fq_make(L.p, k_lcm)
        self.edge_labels = {}
        for en in fiber.edge_nodes:
            emb = en.label_field.embedding(self.label_field)
            self.edge_labels[(en.parent, en.child)] = \
                sorted((emb(w) for w in en.labels), key=lambda x: x.index())
        self.edge_data = {(en.parent, en.child): en
                          for en in fiber.edge_nodes}

    # -- scalars -----------------------------------------------------------

    def gamma(self, g, v):
        """Residue of varpi_(g v) / g(varpi_v): the y-scaling of g at v."""
        key = (g, v)
        if key in self._gamma_cache:
            return self._gamma_cache[key]
        k = self.fiber.reductions[v].scaling_exponent
        sigma = self.G.autos[g]
        pik = self.L.pi().pow_int(k)
        val = (pik / sigma.apply(pik)).residue()
        self._gamma_cache[key] = val
        return val

    def affine(self, g, v):
        red = self.act.matrix(g, v)
        parts = self.act._affine_parts(red)
        if parts is None:
            raise NoRationalFixedPoint("non-affine chart transport")
        return parts

    def res_action(self, g, x):
        """Semilinear residue action of g on any finite-field element."""
        return x.frobenius(self.G.autos[g].res_power)

    # -- sheets (components of Ybar) ----------------------------------------

    def sheets(self, v):
        """Component labels of Ybar_v: mu_(d_max) in canonical order."""
        return _mu_elements(self.L.residue_field,
                            self.fiber.reductions[v].d_max)

    def sheet_action(self, g, v, zeta):
        """Image component label of the sheet (v, zeta) under g."""
        red_v = self.fiber.reductions[v]
        w = self.act.vertex_perm[g][v]
        red_w = self.fiber.reductions[w]
        a, b = self.affine(g, v)
        F = self.L.residue_field
        lin = FqPoly(F, [b, a])
        num = red_v.witness.num.map_coeffs(lambda c: self.res_action(g, c))
        den = red_v.witness.den.map_coeffs(lambda c: self.res_action(g, c))
        moved = RationalFunction(num, den).compose(
            RationalFunction(lin))
        ratio = moved / red_w.witness
        if not ratio.is_constant():
            raise NotInvariant("sheet transport ratio is not constant")
        const = ratio.leading_unit()
        gam = self.gamma(g, v)
        zeta_new = self.res_action(g, zeta) * const \
            * (gam.inverse() ** red_v.n_v)
        if zeta_new ** red_w.d_max != F.one():
            raise NotInvariant("sheet image is not a component label")
        return (w, zeta_new)

    def all_sheets(self):
        out = []
        for v in sorted(self.fiber.reductions):
            for zeta in self.sheets(v):
                out.append((v, zeta))
        return out

    # -- nodes ---------------------------------------------------------------

    def nodes(self):
        """All geometric nodes as ((parent, child), label) pairs."""
        out = []
        for e in sorted(self.edge_labels):
            for w in self.edge_labels[e]:
                out.append((e, w))
        return out

    def node_action(self, g, node):
        """Image of a geometric node under g (semilinear on labels)."""
        (pu, cv), w = node
        perm = self.act.vertex_perm[g]
        e2 = (perm[pu], perm[cv])
        if e2 not in self.edge_data:
            raise CocycleInconsistent("edge image is not an edge")
        en = self.edge_data[(pu, cv)]
        en2 = self.edge_data[e2]
        a, _b = self.affine(g, cv)
        gam = self.gamma(g, cv)
        F = self.label_field
        embL = self.L.residue_field.embedding(F)
        j = self.G.autos[g].res_power
        factor = gam ** en.n_prime
        if en.a_prime >= 0:
            factor = factor * a ** en.a_prime
        else:
            factor = factor * (a.inverse() ** (-en.a_prime))
        w_new = w.frobenius(j) * embL(factor)
        if w_new ** en2.d != embL(en2.u0):
            raise CocycleInconsistent("node label image inconsistent")
        for cand in self.edge_labels[e2]:
            if cand == w_new:
                return (e2, cand)
        raise CocycleInconsistent("node image not among the labels")


# ---------------------------------------------------------------------------
# orbit machinery
# ---------------------------------------------------------------------------

def orbits(elements, generators, action):
    """Orbit partition of `elements` under action(g, x) for g in generators
    (hashable elements; deterministic order)."""
    index = {x: i for i, x in enumerate(elements)}
    parent = list(range(len(elements)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for g in generators:
        for x in elements:
            union(index[x], index[action(g, x)])
    groups = {}
    for i, x in enumerate(elements):
        groups.setdefault(find(i), []).append(x)
    return [groups[k] for k in sorted(groups)]


def orbit_of(start, step):
    """Orbit of `start` under iterating the single map `step`."""
    out = [start]
    cur = step(start)
    while cur != start:
        out.append(cur)
        cur = step(cur)
        if len(out) > 10**6:
            raise CocycleInconsistent("orbit iteration does not close")
    return out


# ---------------------------------------------------------------------------
# inertia quotient at one vertex
# ---------------------------------------------------------------------------

class InertiaQuotient:
    """Invariant data of Ybar_v / I_v in the coordinates (w, z)."""

    __slots__ = ("vertex", "translations", "u_poly", "g_wild", "c_u",
                 "gamma", "m", "mu", "s", "nbar", "h_raw", "h_norm",
                 "flagged")

    def __init__(self, ctx, v):
        self.vertex = v
        L = ctx.L
        F = L.residue_field
        n = ctx.curve.n
        red = ctx.fiber.reductions[v]
        if not red.fbar.den.is_one():
            raise NotInvariant("reduced equation has an unexpected pole")
        fpoly = red.fbar.num

        # wild part
        P_v = ctx.act.wild_stabilizer(v)
        translations = set()
        for g in P_v:
            a, b = ctx.affine(g, v)
            if a != F.one():
                raise NotInvariant("wild element acts with a multiplier")
            if ctx.gamma(g, v) != F.one():
                raise NotInvariant("wild element scales y nontrivially")
            translations.add(b)
        translations = sorted(translations, key=lambda x: x.index())
        self.translations = translations
        x = FqPoly.x(F)
        u = FqPoly(F, [F.one()])
        for b in translations:
            u = u * (x + FqPoly.constant(b))
        self.u_poly = u
        for b in translations:
            if fpoly.shift(b) != fpoly:
                raise NotInvariant("fbar not invariant under the wild part")
        self.g_wild = rewrite_in_subalgebra(fpoly, u)

        # tame part
        sg = ctx.act.tame_generator(v)
        c_u, b_u = _u_action(ctx, self.u_poly, sg, v)
        if not b_u.is_zero():
            raise NotInvariant("tame generator translates the quotient "
                               "coordinate")
        if c_u.is_zero():
            raise NotInvariant("degenerate tame action on u")
        self.c_u = c_u
        gam = ctx.gamma(sg, v)
        self.gamma = gam
        m = _mult_order(c_u)
        mu = lcm(m, _mult_order(gam))
        self.m, self.mu = m, mu
        if n % (mu // m):
            raise NotInvariant("mu/m does not divide n")
        self.nbar = n // (mu // m)
        target = gam ** (mu // m)
        s, acc = None, F.one()
        for k in range(m):
            if acc == target:
                s = k
                break
            acc = acc * c_u
        if s is None:
            raise NotInvariant("gamma^(mu/m) is not a power of c")
        self.s = s
        H = RationalFunction(self.g_wild, x ** (s * self.nbar))
        self.h_raw = rewrite_in_power(H, m)
        self.h_norm = normalize_kummer_equation(self.nbar, self.h_raw)
        self.flagged = (mu // m) == n
        # degree bookkeeping: nbar * (mu/m) = n
        assert self.nbar * (mu // m) == n


def _u_action(ctx, u_poly, g, v):
    """(c, b) with psi_g(u) = c*u + b for a vertex-stabilizing g."""
    F = ctx.L.residue_field
    a, b = ctx.affine(g, v)
    lin = FqPoly(F, [b, a])
    moved = u_poly.map_coeffs(lambda c: ctx.res_action(g, c)).compose(lin)
    if moved.degree() < u_poly.degree():
        raise NotInvariant("u transport dropped degree")
    lin_u = rewrite_in_subalgebra(moved, u_poly)
    if lin_u.degree() > 1:
        raise NotInvariant("image of u is not linear in u")
    c = lin_u.coeffs[1] if lin_u.degree() == 1 else F.zero()
    b_u = lin_u.coeffs[0]
    return c, b_u


def _w_action(ctx, iq, g):
    """Affine action (abar, bbar) of a stabilizing semilinear g on w = u^m."""
    F = ctx.L.residue_field
    at, bt = _u_action(ctx, iq.u_poly, g, iq.vertex)
    if iq.m == 1:
        return at, bt
    if not bt.is_zero():
        raise NotInvariant("semilinear element translates u although m > 1")
    return at**iq.m, F.zero()


# ---------------------------------------------------------------------------
# Hilbert 90 by F_p-linear algebra
# ---------------------------------------------------------------------------

def _fp_kernel(rows, p):
    n, m = len(rows), len(rows[0])
    A = [row[:] for row in rows]
    pivots = {}
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if A[i][c] % p), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(n):
            if i != r and A[i][c] % p:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        pivots[c] = r
        r += 1
    basis = []
    for fc in (c for c in range(m) if c not in pivots):
        vec = [0] * m
        vec[fc] = 1
        for c, rr in pivots.items():
            vec[c] = (-A[rr][fc]) % p
        basis.append(vec)
    return basis


def _fp_solve(rows, rhs, p):
    n, m = len(rows), len(rows[0])
    A = [rows[i][:] + [rhs[i] % p] for i in range(n)]
    r, pivots = 0, []
    for c in range(m):
        piv = next((i for i in range(r, n) if A[i][c] % p), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(n):
            if i != r and A[i][c] % p:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    if any(A[i][m] % p for i in range(r, n)):
        return None
    sol = [0] * m
    for i, c in enumerate(pivots):
        sol[c] = A[i][m]
    return sol


def _semilinear_matrix(F, abar, power):
    """Rows of the F_p-linear map x -> x^(p^power) - abar * x."""
    cols = []
    for j in range(F.k):
        e = F.from_index(F.p**j)
        cols.append(e.frobenius(power) - abar * e)
    return [[cols[j].coeffs[i] for j in range(F.k)] for i in range(F.k)]


def solve_mult_h90(F, abar, power):
    """alpha != 0 with alpha^(p^power) = abar * alpha."""
    rows = _semilinear_matrix(F, abar, power)
    for vec in _fp_kernel(rows, F.p):
        cand = F.element(tuple(vec))
        if not cand.is_zero():
            return cand
    raise NormNotOne("multiplicative Hilbert 90 has no solution "
                     "(norm of the cocycle is not 1)")


def solve_add_h90(F, abar, bbar, power):
    """beta with beta^(p^power) - abar * beta = bbar."""
    rows = _semilinear_matrix(F, abar, power)
    sol = _fp_solve(rows, list(bbar.coeffs), F.p)
    if sol is None:
        raise NormNotOne("additive Hilbert 90 has no solution")
    return F.element(tuple(sol))


def _fix_coefficients(F, eq, nbar, power):
    """Twist eq by delta^nbar so all coefficients are fixed by
    x -> x^(p^power); exhaustive deterministic search."""
    def fixed(poly):
        return all(c.frobenius(power) == c for c in poly.coeffs)

    if fixed(eq):
        return eq
    for idx in range(1, F.q):
        delta = F.from_index(idx)
        if delta.is_zero():
            continue
        cand = eq * (delta**nbar)
        if fixed(cand):
            return cand
    raise NormNotOne("no unit twist makes the equation Frobenius-fixed")


def _subfield_poly(F, Fsub, eq):
    """Rewrite a polynomial with Frobenius-fixed coefficients over Fsub."""
    emb = Fsub.embedding(F)
    table = {}
    for idx in range(Fsub.q):
        x = Fsub.from_index(idx)
        table[emb(x).coeffs] = x
    out = []
    for c in eq.coeffs:
        if c.coeffs not in table:
            raise NotInvariant("coefficient not in the expected subfield")
        out.append(table[c.coeffs])
    return FqPoly(Fsub, out)


# ---------------------------------------------------------------------------
# Frobenius descent of one vertex orbit
# ---------------------------------------------------------------------------

class DescendedComponent:
    """One irreducible component block of the inertial reduction: an orbit
    of tree vertices with a Kummer equation over its field of definition,
    split into geometric pieces with their Frobenius orbit sizes d_j."""

    __slots__ = ("rep", "orbit_classes", "d_v", "nbar", "flagged", "h_prime",
                 "d_geo", "genus_geometric", "geometric_pieces", "quotient")

    def __init__(self, ctx, iq, d_v, stab_generator):
        L = ctx.L
        F = L.residue_field
        self.rep = iq.vertex
        self.d_v = d_v
        self.nbar = iq.nbar
        self.flagged = iq.flagged
        self.quotient = iq
        r_v = F.k // d_v if d_v and F.k % d_v == 0 else None
        if r_v is None:
            raise CocycleInconsistent("orbit size does not divide [F_L:F_p]")
        h = iq.h_norm
        if r_v > 1:
            g = stab_generator
            if ctx.G.autos[g].res_power != d_v % F.k:
                raise CocycleInconsistent(
                    "stabilizer generator has the wrong residue power")
            abar, bbar = _w_action(ctx, iq, g)
            power = d_v
            alpha = solve_mult_h90(F, abar, power)
            beta = solve_add_h90(F, abar, bbar, power)
            # w = alpha w' + beta is the invariant coordinate change
            h2 = h.compose(FqPoly(F, [beta, alpha]))
            h2 = normalize_kummer_equation(self.nbar, h2)
            self.h_prime = _fix_coefficients(F, h2, self.nbar, power)
        else:
            self.h_prime = h
        # geometric splitting over F_L
        pcL = power_class(F, self.h_prime, self.nbar)
        d_geo = geometric_power_class(F, RationalFunction(self.h_prime),
                                      self.nbar)
        if pcL.d_max != d_geo:
            raise NotInvariant("component does not split over F_L as the "
                               "theory requires")
        self.d_geo = d_geo
        n_geo = self.nbar // d_geo
        witness = pcL.witness
        self.genus_geometric = 0 if self.flagged \
            else kummer_genus(n_geo, witness)
        # Frobenius (p^(d_v)-power) action on the component labels
        wit_f = RationalFunction(
            witness.num.map_coeffs(lambda c: c.frobenius(d_v)),
            witness.den.map_coeffs(lambda c: c.frobenius(d_v)))
        ratio = wit_f / witness
        if not ratio.is_constant():
            raise NotInvariant("witness Frobenius ratio not constant")
        omega = ratio.leading_unit()
        labels = _mu_elements(F, d_geo)
        pieces = []
        seen = set()
        for zeta0 in labels:
            if zeta0 in seen:
                continue
            orb = orbit_of(zeta0, lambda z: z.frobenius(d_v) * omega)
            seen.update(orb)
            ell = len(orb)
            d_j = d_v * ell
            eq = normalize_kummer_equation(
                n_geo, witness * RationalFunction(FqPoly.constant(zeta0)))
            eq = _fix_coefficients(F, eq, n_geo, d_j)
            Fj = fq_make(F.p, d_j)
            pieces.append({
                "d_j": d_j,
                "field": Fj,
                "equation": _subfield_poly(F, Fj, eq),
                "n_geo": n_geo,
                "genus": self.genus_geometric,
            })
        self.geometric_pieces = pieces

    def geometric_count(self):
        return self.d_geo * self.d_v


class InertialCurve:
    """The inertial reduction with everything the L-factor needs."""

    def __init__(self, ctx):
        self.ctx = ctx
        G, filt = ctx.G, ctx.filt
        tree = ctx.tree
        # inertia orbits of vertices
        all_v = [v.index for v in tree.vertices]
        i_orbits = orbits(all_v, G.inertia,
                          lambda g, v: ctx.act.vertex_perm[g][v])
        class_of = {}
        for cls in i_orbits:
            for v in cls:
                class_of[v] = cls[0]
        # inertia quotients at orbit representatives
        self.iq = {cls[0]: InertiaQuotient(ctx, cls[0]) for cls in i_orbits}
        # Frobenius action on inertia classes
        frob = G.frobenius_index

        def frob_class(c):
            w = ctx.act.vertex_perm[frob][c]
            return class_of[w]

        self.components = []
        seen = set()
        for cls in i_orbits:
            c0 = cls[0]
            if c0 in seen:
                continue
            orbit_cls = orbit_of(c0, frob_class)
            seen.update(orbit_cls)
            d_v = len(orbit_cls)
            # stabilizing generator: rho o frob^(d_v) fixing c0's vertex
            g = G.identity_index
            for _ in range(d_v):
                g = G.compose(frob, g)
            w = ctx.act.vertex_perm[g][c0]
            rho = None
            for i in G.inertia:
                if ctx.act.vertex_perm[i][w] == c0:
                    rho = i
                    break
            if rho is None:
                raise CocycleInconsistent("no inertia correction for the "
                                          "Frobenius power")
            g = G.compose(rho, g)
            if ctx.act.vertex_perm[g][c0] != c0:
                raise CocycleInconsistent("stabilizer generator fails")
            comp = DescendedComponent(ctx, self.iq[c0], d_v, g)
            comp.orbit_classes = orbit_cls
            self.components.append(comp)

        # geometric components over k and their Frobenius orbit sizes
        self.geometric_components = []
        for comp in self.components:
            for piece in comp.geometric_pieces:
                self.geometric_components.append(piece)

        # nodes: inertia orbits, then Frobenius orbits of those
        nodes = ctx.nodes()
        node_i_orbits = orbits(nodes, G.inertia, ctx.node_action)
        rep_of = {}
        for cls in node_i_orbits:
            for x in cls:
                rep_of[x] = cls[0]

        def frob_node_class(c):
            return rep_of[ctx.node_action(frob, c)]

        self.node_orbits = []
        seen_nodes = set()
        for cls in node_i_orbits:
            c0 = cls[0]
            if c0 in seen_nodes:
                continue
            orb = orbit_of(c0, frob_node_class)
            seen_nodes.update(orb)
            # epsilon is structurally trivial here: Galois elements preserve
            # disc radii, so an edge can never map to itself with its
            # endpoints (parent/child) exchanged
            self.node_orbits.append({"size": len(orb), "epsilon": 1,
                                     "rep": c0})
        self.n_geometric_nodes = len(node_i_orbits)
        self.n_geometric_components = sum(c.geometric_count()
                                          for c in self.components)
        self.b1_k = self.n_geometric_nodes - self.n_geometric_components + 1
        self.dim_h1 = 2 * sum(p["genus"] for p in self.geometric_components) \
            + self.b1_k

    def component_orbit_sizes(self):
        return sorted(p["d_j"] for p in self.geometric_components)

    def node_orbit_data(self):
        return sorted((o["size"], o["epsilon"]) for o in self.node_orbits)


def build_inertial_curve(curve, L, G, filt, tree, act, fiber):
    ctx = ActionContext(curve, L, G, filt, tree, act, fiber)
    return InertialCurve(ctx)


# ---------------------------------------------------------------------------
# quotients by the higher ramification groups (for the Swan conductor)
# ---------------------------------------------------------------------------

def quotient_genus_by_wild_subgroup(ctx, subgroup):
    """Arithmetic genus of Ybar / H for a subgroup H of the wild inertia.

    H acts by translations on every component it stabilizes (trivially on
    y), so per component the quotient is computed by rewriting the sheet
    equation in the invariant polynomial of the stabilizer's translations.
    """
    F = ctx.L.residue_field
    sheets = ctx.all_sheets()
    sheet_orbits = orbits(sheets, subgroup,
                          lambda g, s: ctx.sheet_action(g, s[0], s[1]))
    total_genus = 0
    for orb in sheet_orbits:
        v, zeta = orb[0]
        red = ctx.fiber.reductions[v]
        stab = [g for g in subgroup
                if ctx.sheet_action(g, v, zeta) == (v, zeta)]
        translations = set()
        for g in stab:
            a, b = ctx.affine(g, v)
            if a != F.one() or ctx.gamma(g, v) != F.one():
                raise NotInvariant("wild subgroup element acts non-trivially "
                                   "beyond translation")
            translations.add(b)
        translations = sorted(translations, key=lambda x: x.index())
        x = FqPoly.x(F)
        u = FqPoly(F, [F.one()])
        for b in translations:
            u = u * (x + FqPoly.constant(b))
        sheet_eq = normalize_kummer_equation(
            red.n_v, red.witness * RationalFunction(FqPoly.constant(zeta)))
        if u.degree() == 1 and translations == [F.zero()]:
            quotient_eq = sheet_eq
        else:
            for b in translations:
                if sheet_eq.shift(b) != sheet_eq:
                    raise NotInvariant("sheet equation not invariant under "
                                       "its stabilizer translations")
            quotient_eq = rewrite_in_subalgebra(sheet_eq, u)
        total_genus += kummer_genus(red.n_v, quotient_eq)
    # graph quotient
    node_orbs = orbits(ctx.nodes(), subgroup, ctx.node_action)
    V = len(sheet_orbits)
    E = len(node_orbs)
    return total_genus + E - V + 1
