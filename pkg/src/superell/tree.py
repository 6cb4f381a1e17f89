"""The stably marked tree of (P^1, branch divisor) over L.

Vertices are the chart classes of ordered triples of marked points: the
class of a triple is recorded by the closed disc D(center, radius) it
determines (radius = the largest pairwise valuation among its finite
entries, realized at the center).  The reduction of the triple chart maps
the marked points to P^1(F_L); two triples give the same vertex exactly
when their discs coincide, which is cross-checked on every build against
the partition of the marked points into chart-reduction fibers.

Edges are the covering relations of disc inclusion; since every Galois
element acts isometrically on discs, the action permutes vertices
radius-preservingly, so edges are never inverted.
"""

from __future__ import annotations

from .errors import (
    MatrixNotIntegral,
    NoRationalFixedPoint,
    NotInvariant,
    NotSplit,
    PrecisionExhausted,
)
from .localfield import INFINITE

INF_POINT = "inf"  # marker for the marked point at infinity


class Vertex:
    __slots__ = ("index", "triple", "chart", "disc_center", "disc_radius",
                 "partition", "marked", "parent", "children")

    def __init__(self, index, triple, chart, disc_center, disc_radius,
                 partition):
        self.index = index
        self.triple = triple
        self.chart = chart              # 2x2 matrix (tuple of 4 L-elements)
        self.disc_center = disc_center
        self.disc_radius = disc_radius  # pi-units
        self.partition = partition      # frozenset of frozensets of point ids
        self.marked = []
        self.parent = None
        self.children = []

    def __repr__(self):
        return f"v{self.index}(r={self.disc_radius})"


class MarkedTree:
    def __init__(self, L, points, vertices, psi, root, edges):
        self.L = L
        self.points = points        # list: LocalFieldElement or INF_POINT
        self.vertices = vertices
        self.psi = psi              # point index -> vertex index
        self.root = root
        self.edges = edges          # list of (parent_index, child_index)

    def vertex_count(self):
        return len(self.vertices)

    def direction_of_point(self, v, j):
        """Residue direction of marked point j on the component of v."""
        return moebius_eval(self.vertices[v].chart, self.points[j], self.L)

    def direction_of_vertex(self, v, w):
        """Residue direction of the (smaller) disc of w on the component
        of v."""
        return moebius_eval(self.vertices[v].chart,
                            self.vertices[w].disc_center, self.L)


# ---------------------------------------------------------------------------
# Moebius charts
# ---------------------------------------------------------------------------

def triple_chart(L, points, t):
    """Matrix of the chart sending t = (alpha, beta, gamma) to (0, 1, oo)."""
    a, b, g = (points[i] for i in t)
    one = L.one()
    if a == INF_POINT:
        return (L.zero(), b - g, one, -g)
    if b == INF_POINT:
        return (one, -a, one, -g)
    if g == INF_POINT:
        d = b - a
        return (one, -a, L.zero(), d)
    u = (b - g) / (b - a)
    return (u, -(u * a), one, -g)


def matrix_mul(m1, m2):
    a1, b1, c1, d1 = m1
    a2, b2, c2, d2 = m2
    return (a1 * a2 + b1 * c2, a1 * b2 + b1 * d2,
            c1 * a2 + d1 * c2, c1 * b2 + d1 * d2)


def moebius_eval(m, x, L):
    """Value of the Moebius map in P^1(F_L): FqElement or INF_POINT."""
    a, b, c, d = m
    if x == INF_POINT:
        num, den = a, c
    else:
        num, den = a * x + b, c * x + d
    vn = num.valuation_or_none()
    vd = den.valuation_or_none()
    if vn in (None,) and vd in (None,):
        raise PrecisionExhausted("Moebius value indeterminate")
    if vd in (None, INFINITE):
        return INF_POINT
    if vn in (None, INFINITE):
        return L.residue_field.zero() if _lt(vd, vn) else INF_POINT
    if vn < vd:
        return INF_POINT
    return (num / den).residue()


def _lt(a, b):
    if b in (None, INFINITE):
        return True
    return a < b


def _scale_matrix_integral(m, L):
    """Scale a matrix over L so the minimum entry valuation is 0, then
    reduce; raises MatrixNotIntegral if the reduction is singular."""
    vals = []
    for x in m:
        v = x.valuation_or_none()
        if v not in (None, INFINITE):
            vals.append(v)
    if not vals:
        raise MatrixNotIntegral("matrix is zero to precision")
    mu = min(vals)
    piinv = L.pi().invert().pow_int(mu) if mu > 0 else \
        L.pi().pow_int(-mu) if mu < 0 else L.one()
    scaled = tuple(x * piinv for x in m)
    red = []
    for x in scaled:
        v = x.valuation_or_none()
        if v is None:
            red.append(L.residue_field.zero())
        elif v == INFINITE:
            red.append(L.residue_field.zero())
        else:
            red.append(x.residue())
    det = red[0] * red[3] - red[1] * red[2]
    if det.is_zero():
        raise MatrixNotIntegral("reduced chart-comparison matrix is singular")
    return tuple(red)


def normalize_pgl2(red):
    """Canonical representative of a PGL_2(F) class: first nonzero entry 1."""
    for x in red:
        if not x.is_zero():
            inv = x.inverse()
            return tuple(y * inv for y in red)
    raise MatrixNotIntegral("zero matrix")


# ---------------------------------------------------------------------------
# tree construction
# ---------------------------------------------------------------------------

def _disc_of_triple(L, points, t):
    """(center, radius) of the chart class of t: the largest pairwise
    valuation among finite entries, at a point realizing it."""
    finite = [points[i] for i in t if points[i] != INF_POINT]
    best = None
    center = None
    for i in range(len(finite)):
        for j in range(i + 1, len(finite)):
            d = finite[i] - finite[j]
            v = d.valuation_or_none()
            if v in (INFINITE, None):
                raise NotSplit("two marked points coincide (to precision)")
            if best is None or v > best:
                best, center = v, finite[i]
    return center, best


def _phi_partition(L, points, chart):
    """Partition of the marked points by their chart-reduction fibers."""
    fibers = {}
    for j in range(len(points)):
        val = moebius_eval(chart, points[j], L)
        key = val if val == INF_POINT else ("pt", val.coeffs)
        fibers.setdefault(key, []).append(j)
    return frozenset(frozenset(f) for f in fibers.values())


def _same_disc(L, c1, r1, c2, r2):
    if r1 != r2:
        return False
    v = (c1 - c2).valuation_or_none()
    if v == INFINITE:
        return True
    if v is None:
        return True
    return v >= r1


def build_tree(divisor, L):
    """Stably marked tree of (P^1, D_L).  D_L must split over L and have at
    least three points."""
    points = [bp.value if not bp.is_infinity else INF_POINT
              for bp in divisor.points]
    m = len(points)
    if m < 3:
        raise NotSplit("need at least three marked points")
    order = list(range(m))

    classes = []  # (center, radius, partition, triple, chart)
    for i in order:
        for j in order:
            for k in order:
                if len({i, j, k}) != 3:
                    continue
                t = (i, j, k)
                center, radius = _disc_of_triple(L, points, t)
                hit = None
                for idx, (c0, r0, part0, t0, ch0) in enumerate(classes):
                    if _same_disc(L, c0, r0, center, radius):
                        hit = idx
                        break
                if hit is None:
                    chart = triple_chart(L, points, t)
                    part = _phi_partition(L, points, chart)
                    classes.append((center, radius, part, t, chart))
                else:
                    # disc/phi cross-check: same disc must mean same fibers
                    c0, r0, part0, t0, ch0 = classes[hit]
                    part = _phi_partition(L, points,
                                          triple_chart(L, points, t))
                    if part != part0:
                        raise NotInvariant(
                            "disc model and chart-fiber model disagree")
    # deterministic vertex order: radius, then digits of the center
    def class_key(entry):
        center, radius, part, t, chart = entry
        return (radius,) + center.digits(10)
    classes.sort(key=class_key)

    vertices = []
    for idx, (center, radius, part, t, chart) in enumerate(classes):
        vertices.append(Vertex(idx, t, chart, center, radius, part))

    # specialization: delta goes to the unique vertex isolating it
    psi = []
    for j in range(m):
        hits = [v.index for v in vertices
                if frozenset([j]) in v.partition]
        if len(hits) != 1:
            raise NotInvariant(
                f"marked point {j} isolated on {len(hits)} vertices")
        psi.append(hits[0])
        vertices[hits[0]].marked.append(j)

    # edges: covering relations of disc inclusion (larger radius = smaller disc)
    def contains(u, v):
        # disc of u contains disc of v
        if u.disc_radius > v.disc_radius:
            return False
        d = (u.disc_center - v.disc_center).valuation_or_none()
        if d in (None, INFINITE):
            return True
        return d >= u.disc_radius

    edges = []
    root = None
    for v in vertices:
        parents = [u for u in vertices
                   if u.index != v.index and contains(u, v)]
        if not parents:
            if root is not None:
                raise NotInvariant("disconnected disc family")
            root = v.index
            continue
        best = max(parents, key=lambda u: u.disc_radius)
        v.parent = best.index
        vertices[best.index].children.append(v.index)
        edges.append((best.index, v.index))
    if root is None:
        raise NotInvariant("no maximal disc")
    if len(edges) != len(vertices) - 1:
        raise NotInvariant("edge relation is not a tree")
    tree = MarkedTree(L, points, vertices, psi, root, sorted(edges))

    # valence >= 3 for a stably marked tree
    for v in vertices:
        deg = len(v.children) + (0 if v.parent is None else 1)
        if len(v.marked) + deg < 3:
            raise NotInvariant(f"vertex {v.index} has valence < 3")

    # normalize every chart so the direction toward infinity is at x = oo
    for v in vertices:
        p1 = moebius_eval(v.chart, INF_POINT, L)
        if p1 != INF_POINT:
            lift = L.from_residue(p1)
            mat = (L.zero(), L.one(), L.one(), -lift)
            v.chart = matrix_mul(mat, v.chart)
            if moebius_eval(v.chart, INF_POINT, L) != INF_POINT:
                raise NoRationalFixedPoint("chart normalization failed")
    return tree


# ---------------------------------------------------------------------------
# Galois action on the tree
# ---------------------------------------------------------------------------

class TreeGaloisAction:
    """Vertex/point permutations for every Galois element, stabilizers,
    and reduced chart-comparison matrices."""

    def __init__(self, G, filt, tree):
        self.G = G
        self.filt = filt
        self.tree = tree
        L = tree.L
        n_pts = len(tree.points)
        self.point_perm = []
        self.vertex_perm = []
        for g in range(G.order()):
            sigma = G.autos[g]
            pp = []
            for j in range(n_pts):
                x = tree.points[j]
                if x == INF_POINT:
                    pp.append(j)
                    continue
                img = sigma.apply(x)
                matches = [jj for jj in range(n_pts)
                           if tree.points[jj] != INF_POINT
                           and _big(tree.points[jj] - img, L)]
                if len(matches) != 1:
                    raise PrecisionExhausted(
                        "cannot identify Galois image of a branch point")
                pp.append(matches[0])
            self.point_perm.append(pp)
            vp = []
            for v in tree.vertices:
                c_img = sigma.apply(v.disc_center)
                hits = [w.index for w in tree.vertices
                        if _same_disc(L, w.disc_center, w.disc_radius,
                                      c_img, v.disc_radius)]
                if len(hits) != 1:
                    raise PrecisionExhausted(
                        "cannot identify Galois image of a vertex")
                vp.append(hits[0])
            self.vertex_perm.append(vp)
        # graph automorphism check
        edge_set = set(tree.edges)
        for g in range(G.order()):
            vp = self.vertex_perm[g]
            for (a, b) in tree.edges:
                ia, ib = vp[a], vp[b]
                if (ia, ib) not in edge_set and (ib, ia) not in edge_set:
                    raise NotInvariant("Galois image of an edge is not an edge")
                # radii are preserved, so a parent can never swap with a child
                assert (ia, ib) in edge_set, "edge inverted under Galois"
        self.stabilizer = []
        for v in tree.vertices:
            self.stabilizer.append(sorted(
                g for g in range(G.order())
                if self.vertex_perm[g][v.index] == v.index))
        self._matrix_cache = {}
        self._normalize_tame_charts()

    # -- chart transport ---------------------------------------------------

    def matrix(self, g, v):
        """Reduced matrix M with psi_g(x_v) = M(x_{g(v)}) on reductions."""
        key = (g, v)
        if key in self._matrix_cache:
            return self._matrix_cache[key]
        tree, G = self.tree, self.G
        sigma = G.autos[g]
        w = self.vertex_perm[g][v]
        A_v = tree.vertices[v].chart
        A_w = tree.vertices[w].chart
        gA = tuple(sigma.apply(x) for x in A_v)
        a, b, c, d = A_w
        adj = (d, -b, -c, a)
        red = _scale_matrix_integral(matrix_mul(gA, adj), tree.L)
        red = normalize_pgl2(red)
        self._matrix_cache[key] = red
        return red

    def residue_action(self, g, r):
        return self.G.autos[g].residue_action(r)

    def inertia_stabilizer(self, v):
        return sorted(set(self.stabilizer[v]) & set(self.G.inertia))

    def wild_stabilizer(self, v):
        return sorted(set(self.stabilizer[v]) & set(self.filt.gamma(1)))

    def tame_generator(self, v):
        """Smallest element of I_v whose image generates I_v / P_v."""
        I_v = self.inertia_stabilizer(v)
        P_v = set(self.wild_stabilizer(v))
        quot = len(I_v) // len(P_v)
        for g in I_v:
            k, h = 1, g
            while h not in P_v:
                h = self.G.compose(h, g)
                k += 1
            if k == quot:
                return g
        raise NotInvariant("inertia stabilizer has no tame generator")

    def _affine_parts(self, red):
        """(a, b) of an affine reduced matrix, or None."""
        if not red[2].is_zero():
            return None
        d_inv = red[3].inverse()
        return red[0] * d_inv, red[1] * d_inv

    def _normalize_tame_charts(self):
        """Move the second fixed point of the designated tame generator to
        x = 0 whenever it acts with multiplier != 1 (after this, every
        stabilizer element acts affinely and sigma-hat acts x -> a x)."""
        tree = self.tree
        L = tree.L
        for v in tree.vertices:
            for g in self.stabilizer[v.index]:
                red = self.matrix(g, v.index)
                if self._affine_parts(red) is None:
                    raise NoRationalFixedPoint(
                        "stabilizer element does not act affinely after "
                        "normalization")
            sg = self.tame_generator(v.index)
            red = self.matrix(sg, v.index)
            a, b = self._affine_parts(red)
            if a != L.residue_field.one() and not b.is_zero():
                c = b / (L.residue_field.one() - a)
                mat = (L.one(), -L.from_residue(c), L.zero(), L.one())
                v.chart = matrix_mul(mat, v.chart)
                self._matrix_cache = {k: m for k, m in
                                      self._matrix_cache.items()
                                      if k[1] != v.index and
                                      self.vertex_perm[k[0]][k[1]] != v.index}
        # cocycle check on all stabilizer pairs
        for v in tree.vertices:
            stab = self.stabilizer[v.index]
            for s in stab:
                for t in stab:
                    st = self.G.compose(s, t)
                    lhs = self.matrix(st, v.index)
                    B_t = self.matrix(t, v.index)
                    B_s = self.matrix(s, v.index)
                    sB_t = tuple(self.residue_action(s, x) for x in B_t)
                    rhs = normalize_pgl2(
                        _fq_matrix_mul(sB_t, B_s))
                    if lhs != rhs:
                        raise NotInvariant("cocycle rule violated")


def _fq_matrix_mul(m1, m2):
    a1, b1, c1, d1 = m1
    a2, b2, c2, d2 = m2
    return (a1 * a2 + b1 * c2, a1 * b2 + b1 * d2,
            c1 * a2 + d1 * c2, c1 * b2 + d1 * d2)


def _big(x, L):
    v = x.valuation_or_none()
    if v in (None, INFINITE):
        return True
    return v >= L.e * (L.N // 2)


def galois_on_tree(G, filt, tree):
    return TreeGaloisAction(G, filt, tree)
