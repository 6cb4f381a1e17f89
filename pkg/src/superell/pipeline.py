"""End-to-end driver: curve -> fields -> tree -> reduction -> descent ->
L-factor and conductor, with hard consistency cross-checks at every joint.

``compute`` returns a PipelineResult carrying every intermediate object
(for tests and reports); ``compute_with_retry`` retries once at fourfold
precision when the p-adic precision runs out.
"""

from __future__ import annotations

from fractions import Fraction

from .curve import branch_divisor
from .descent import build_inertial_curve
from .errors import (
    CatalogExhausted,
    CountsInconsistent,
    PrecisionExhausted,
    ValidationError,
)
from .fieldsearch import (
    SearchConfig,
    semistabilizing_candidates,
    splitting_field,
)
from .finitefield import count_kummer_points
from .localfield import galois_group, ramification_filtration
from .lzeta import conductor_exponent, local_l_factor
from .reduction import raw_gauss_values, reduce_special_fiber, semistable_check
from .tree import build_tree, galois_on_tree


class PipelineResult:
    def __init__(self, **kw):
        self.__dict__.update(kw)

    def to_json_dict(self):
        curve = self.curve
        tree = self.tree
        L = self.L
        red = self.fiber
        ic = self.inertial
        verts = []
        for v in tree.vertices:
            r = red.reductions[v.index]
            verts.append({
                "index": v.index,
                "radius": str(Fraction(v.disc_radius, L.e)),
                "parent": v.parent,
                "marked_points": sorted(v.marked),
                "N_v": r.N_v,
                "eta": str(r.eta_vp1),
                "fbar_num": _poly_json(r.fbar.num),
                "fbar_den": _poly_json(r.fbar.den),
                "n_v": r.n_v,
                "component_count": r.component_count(),
                "component_genus": r.component_genus,
            })
        comps = []
        for comp in ic.components:
            iq = comp.quotient
            entry = {
                "vertex_orbit": sorted(comp.orbit_classes),
                "d_v": comp.d_v,
                "nbar": comp.nbar,
                "m": iq.m,
                "mu": iq.mu,
                "s": iq.s,
                "flagged_genus_zero": comp.flagged,
                "equation": _poly_json(comp.h_prime),
                "pieces": [{
                    "d_j": p["d_j"],
                    "field_degree": p["field"].k,
                    "equation": _poly_json(p["equation"]),
                    "genus": p["genus"],
                } for p in comp.geometric_pieces],
            }
            comps.append(entry)
        return {
            "p": curve.p,
            "n": curve.n,
            "f": [str(c) for c in curve.f.coeffs],
            "P1": list(self.lfactor.p1),
            "epsilon": self.conductor.epsilon,
            "delta": self.conductor.delta,
            "conductor_exponent": self.conductor.conductor,
            "dimH1": ic.dim_h1,
            "report": {
                "field": {
                    "label": L.label,
                    "p": L.p,
                    "residue_degree": L.f,
                    "ramification_index": L.e,
                    "degree": L.degree,
                    "precision": L.N,
                },
                "galois": {
                    "order": self.G.order(),
                    "inertia_order": len(self.G.inertia),
                    "filtration_sizes": [len(g) for g in self.filt.groups],
                },
                "tree": {
                    "vertices": verts,
                    "edges": [list(e) for e in tree.edges],
                    "psi": list(tree.psi),
                    "branch_points": [
                        {"infinity": True} if bp.is_infinity else
                        {"infinity": False, "multiplicity": bp.multiplicity}
                        for bp in self.divisor.points],
                },
                "inertial": {
                    "components": comps,
                    "node_orbits": [{"size": s, "epsilon": e}
                                    for s, e in ic.node_orbit_data()],
                    "graph_factor": list(self.lfactor.graph_factor),
                    "b1": ic.b1_k,
                },
                "conductor": {
                    "quotient_genera": {str(i): g for i, g in
                                        self.conductor.quotient_genera.items()},
                    "trivial_bound": str(self.conductor.bound),
                },
            },
        }


def _poly_json(poly):
    return [list(c.coeffs) for c in poly.coeffs]


def verify_point_counts(curve, inertial, p1):
    """End-to-end oracle: |Zbar(F_{p^i})| for i = 1, 2 computed from the
    components + node corrections must match the zeta prediction from P1."""
    p = curve.p
    for i in (1, 2):
        direct = 0
        for comp in inertial.components:
            for piece in comp.geometric_pieces:
                d_j = piece["d_j"]
                if i % d_j:
                    continue
                cnt = count_kummer_points(piece["n_geo"], piece["equation"],
                                          i // d_j)
                direct += d_j * cnt
        for orb in inertial.node_orbits:
            if i % orb["size"] == 0:
                direct -= orb["size"]
        # prediction: N_i = 1 - (power sum of P1 reciprocal roots) + p^i * m_i
        ps = _power_sums(p1, i)
        m_i = sum(d for d in inertial.component_orbit_sizes() if i % d == 0)
        predicted = 1 - ps[i] + p**i * m_i
        if direct != predicted:
            raise CountsInconsistent(
                f"|Z(F_p^{i})| = {direct} but the zeta function predicts "
                f"{predicted}")


def _power_sums(p1, upto):
    """Power sums of the reciprocal roots of P1 via Newton's identities."""
    deg = len(p1) - 1
    e = [Fraction((-1) ** j * p1[j]) if j <= deg else Fraction(0)
         for j in range(upto + 1)]
    ps = [Fraction(0)] * (upto + 1)
    for m in range(1, upto + 1):
        acc = Fraction((-1) ** (m - 1) * m) * e[m]
        for j in range(1, m):
            acc += Fraction((-1) ** (j - 1)) * e[j] * ps[m - j]
        ps[m] = acc
    return [int(x) for x in ps]


def compute(curve, config=None, explicit_field=None, trace=None):
    """Run the full pipeline for a validated curve."""
    if config is None:
        config = SearchConfig()

    def say(msg):
        if trace:
            print(msg, file=trace)

    violations = curve.validate()
    if violations:
        raise ValidationError("; ".join(violations))
    say(f"curve y^{curve.n} = f, deg f = {curve.degree()}, p = {curve.p}, "
        f"genus {curve.genus()}")

    if explicit_field is not None:
        candidates = [(explicit_field, galois_group(explicit_field))]
        L0 = explicit_field
    else:
        L0, _ = splitting_field(curve.f, curve.p, config)
        say(f"splitting field: {L0.label} (degree {L0.degree})")
        candidates = semistabilizing_candidates(L0, curve.n, curve.f,
                                                curve.p, config)

    last_failure = None
    for L, G in candidates:
        say(f"candidate field: {L.label} (e={L.e}, f={L.f})")
        div = branch_divisor(curve, L)
        tree = build_tree(div, L)
        raw = raw_gauss_values(curve, L, tree)
        fails = semistable_check(raw, curve.n)
        if fails:
            say(f"  not semistable over this field: N_v mod n = {fails}")
            last_failure = fails
            continue
        filt = ramification_filtration(G)
        act = galois_on_tree(G, filt, tree)
        fiber = reduce_special_fiber(curve, L, tree)
        say(f"  semistable: {tree.vertex_count()} vertices, "
            f"{fiber.n_nodes} nodes, genera "
            f"{[r.component_genus for r in fiber.reductions.values()]}")
        inertial = build_inertial_curve(curve, L, G, filt, tree, act, fiber)
        lfactor = local_l_factor(inertial)
        conductor = conductor_exponent(curve, filt, inertial)
        verify_point_counts(curve, inertial, lfactor.p1)
        assert len(lfactor.p1) - 1 == 2 * curve.genus() - conductor.epsilon
        say(f"  P1 = {lfactor.p1}, f = {conductor.conductor}")
        return PipelineResult(curve=curve, L=L, G=G, filt=filt,
                              divisor=div, tree=tree, fiber=fiber,
                              inertial=inertial, lfactor=lfactor,
                              conductor=conductor, config=config)
    raise CatalogExhausted(
        "no catalog field yields a semistable model"
        + (f" (last failure: N_v mod n = {last_failure})"
           if last_failure else ""))


def compute_with_retry(curve, config=None, explicit_field=None, trace=None):
    if config is None:
        config = SearchConfig()
    try:
        return compute(curve, config, explicit_field, trace)
    except PrecisionExhausted:
        if trace:
            print("precision exhausted; retrying at fourfold precision",
                  file=trace)
        return compute(curve, config.scaled(4), explicit_field, trace)
