import random
from fractions import Fraction

from superell.curve import SuperellipticCurve, branch_divisor
from superell.fieldsearch import (
    construct_candidate,
    semistabilizing_field,
    splitting_field,
)
from superell.finitefield import INF as FINF
from superell.localfield import ramification_filtration
from superell.qpoly import parse_poly
from superell.reduction import (
    gauss_valuation_f,
    raw_gauss_values,
    reduce_special_fiber,
    semistable_check,
)
from superell.tree import build_tree, galois_on_tree, matrix_mul


def setup_example(n, fs, p):
    f = parse_poly(fs)
    curve = SuperellipticCurve(n, f, p)
    L0, _ = splitting_field(f, p)
    L, G = semistabilizing_field(L0, n, f, p)
    filt = ramification_filtration(G)
    div = branch_divisor(curve, L)
    tree = build_tree(div, L)
    act = galois_on_tree(G, filt, tree)
    return curve, L, G, filt, tree, act


EX1 = (4, "(x^2-3)*(x^2+3)*(x^2-6*x-3)", 3)
EX2 = (3, "x^4-x^2+1", 2)


class TestGaussValuation:
    def test_example1_eta_values(self):
        curve, L, G, filt, tree, act = setup_example(*EX1)
        raw = raw_gauss_values(curve, L, tree)
        etas = sorted(Fraction(N, L.e) for N in raw.values())
        assert etas == [3, 4, 4]

    def test_example2_eta_values(self):
        curve, L, G, filt, tree, act = setup_example(*EX2)
        raw = raw_gauss_values(curve, L, tree)
        etas = sorted(Fraction(N, L.e) for N in raw.values())
        assert etas == [0, 2, 2]

    def test_semistable_over_splitting_field_fails(self):
        # over Q_3(i, sqrt(3)) (e = 2) the first example is not semistable:
        # the root vertex has N_v = 6 which 4 does not divide
        f = parse_poly("(x^2-3)*(x^2+3)*(x^2-6*x-3)")
        curve = SuperellipticCurve(4, f, 3)
        L0 = construct_candidate(3, 2, 0, 2, 0, 50)
        div = branch_divisor(curve, L0)
        tree = build_tree(div, L0)
        raw = raw_gauss_values(curve, L0, tree)
        assert sorted(raw.values()) == [6, 8, 8]
        fails = semistable_check(raw, 4)
        root = tree.root
        assert root in fails and fails[root] == 2

    def test_chart_equivalence_invariance(self):
        # composing the chart with a unit of PGL_2(O_L) changes nothing
        curve, L, G, filt, tree, act = setup_example(*EX1)
        fiber = reduce_special_fiber(curve, L, tree)
        rng = random.Random(99)
        from superell.finitefield import kummer_genus, power_class
        for v in tree.vertices:
            base_N, base_fbar = gauss_valuation_f(curve, L, v.chart)
            for _ in range(2):
                # affine unit matrix: x -> a x + b with a a unit, b integral
                a = L.from_int(rng.randrange(1, L.p))
                b = L.from_int(rng.randrange(L.p)) * L.pi()
                m = (a, b, L.zero(), L.one())
                N2, fbar2 = gauss_valuation_f(curve, L, matrix_mul(m, v.chart))
                assert N2 == base_N
                pc1 = power_class(L.residue_field, base_fbar, curve.n)
                pc2 = power_class(L.residue_field, fbar2, curve.n)
                assert pc1.n_v == pc2.n_v
                assert (kummer_genus(pc1.n_v, pc1.witness)
                        == kummer_genus(pc2.n_v, pc2.witness))


class TestSpecialFiber:
    def test_example1(self):
        curve, L, G, filt, tree, act = setup_example(*EX1)
        fiber = reduce_special_fiber(curve, L, tree)
        genera = sorted(r.component_genus for r in fiber.reductions.values())
        assert genera == [1, 1, 3]
        assert fiber.n_nodes == 4
        assert fiber.n_components == 3
        assert fiber.b1 == 2
        assert fiber.arithmetic_genus == 7 == curve.genus()

    def test_example2(self):
        curve, L, G, filt, tree, act = setup_example(*EX2)
        fiber = reduce_special_fiber(curve, L, tree)
        genera = sorted(r.component_genus for r in fiber.reductions.values())
        assert genera == [1, 1, 1]
        assert fiber.n_nodes == 2
        assert fiber.b1 == 0
        assert fiber.arithmetic_genus == 3 == curve.genus()

    def test_component_count_times_nv(self):
        for ex in (EX1, EX2):
            curve, L, G, filt, tree, act = setup_example(*ex)
            fiber = reduce_special_fiber(curve, L, tree)
            for r in fiber.reductions.values():
                assert r.component_count() * r.n_v == curve.n

    def test_admissibility(self):
        for ex in (EX1, EX2):
            curve, L, G, filt, tree, act = setup_example(*ex)
            fiber = reduce_special_fiber(curve, L, tree)
            for en in fiber.edge_nodes:
                assert (en.a_parent + en.a_child) % curve.n == 0

    def test_node_counts_example1(self):
        curve, L, G, filt, tree, act = setup_example(*EX1)
        fiber = reduce_special_fiber(curve, L, tree)
        for en in fiber.edge_nodes:
            assert en.d == 2  # two nodes per edge

    def test_twist_invariance(self):
        # changing varpi_v by a unit twists fbar by an n-th power compatible
        # unit: class data is unchanged
        curve, L, G, filt, tree, act = setup_example(*EX1)
        fiber = reduce_special_fiber(curve, L, tree)
        from superell.finitefield import (FqPoly, RationalFunction,
                                          kummer_genus, power_class)
        F = L.residue_field
        for r in fiber.reductions.values():
            for idx in range(1, F.q):
                u = F.from_index(idx)
                twisted = r.fbar * RationalFunction(
                    FqPoly.constant(u ** curve.n))
                pc = power_class(F, twisted, curve.n)
                assert pc.n_v == r.n_v
                assert kummer_genus(pc.n_v, pc.witness) == r.component_genus
                assert twisted.ord_at(FINF) == r.fbar.ord_at(FINF)
