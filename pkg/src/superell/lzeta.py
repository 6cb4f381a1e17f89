"""Local L-factor and conductor exponent from the inertial reduction.

P1(T) is the product of a graph factor (the characteristic polynomial of
Frobenius on H^1 of the dual graph, assembled from node and component
orbit data via the virtual character 1 + chi_sing - chi_comp) and one zeta
numerator per irreducible component block, with T -> T^(d_j) for blocks
whose field of definition has degree d_j over F_p.

The conductor exponent is f = epsilon + delta with
epsilon = 2 g(Y) - dim H^1 of the inertial reduction, and delta the Swan
conductor: the weighted sum of genus drops of the quotients by the higher
ramification groups (zero in the tame case).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    DegreeMismatch,
    NonIntegralFactor,
    NonIntegralSwan,
)
from .finitefield import zeta_numerator
from .descent import quotient_genus_by_wild_subgroup

# polynomials in T are plain integer coefficient lists, low to high


def poly_mul_z(a, b):
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] += x * y
    return res


def poly_divexact_z(a, b):
    """Exact division of integer polynomials; NonIntegralFactor otherwise."""
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = a[len(b) - 1 + k]
        if c % b[-1]:
            raise NonIntegralFactor("graph factor assembly is not integral")
        q = c // b[-1]
        out[k] = q
        for j in range(len(b)):
            a[j + k] -= q * b[j]
    if any(a):
        raise NonIntegralFactor("graph factor assembly is not integral")
    return out


def substitute_power(poly, d):
    """P(T) -> P(T^d)."""
    if d == 1:
        return list(poly)
    out = [0] * ((len(poly) - 1) * d + 1)
    for i, c in enumerate(poly):
        out[i * d] = c
    return out


def graph_h1_charpoly(component_orbit_sizes, node_orbit_data):
    """det(1 - Frob T | H^1(graph)) from orbit data.

    The virtual character 1 + chi_sing - chi_comp gives
    (1 - T) * prod over node orbits of (1 -+ T^r) / prod over component
    orbits of (1 - T^d); a node orbit of size r contributes (1 - T^r) for
    trivial epsilon and (1 + T^r) for the order-2 character.
    """
    num = [1, -1]  # (1 - T)
    for size, eps in node_orbit_data:
        factor = [1] + [0] * (size - 1) + ([-1] if eps == 1 else [1])
        num = poly_mul_z(num, factor)
    den = [1]
    for d in component_orbit_sizes:
        den = poly_mul_z(den, [1] + [0] * (d - 1) + [-1])
    return poly_divexact_z(num, den)


def component_l_factor(piece, budget=None):
    """Zeta numerator of one component block, in the variable T^(d_j)."""
    if piece["genus"] == 0:
        return [1]
    kwargs = {} if budget is None else {"budget": budget}
    P = zeta_numerator(piece["n_geo"], piece["equation"], piece["genus"],
                       **kwargs)
    return substitute_power(P, piece["d_j"])


class LFactorResult:
    def __init__(self, p1, graph_factor, component_factors):
        self.p1 = p1
        self.graph_factor = graph_factor
        self.component_factors = component_factors

    def degree(self):
        return len(self.p1) - 1


def local_l_factor(inertial, budget=None):
    """P1(T) of the inertial reduction, with the degree identity checked
    against dim H^1."""
    graph = graph_h1_charpoly(inertial.component_orbit_sizes(),
                              inertial.node_orbit_data())
    comp_factors = []
    p1 = list(graph)
    for comp in inertial.components:
        for piece in comp.geometric_pieces:
            # one zeta factor per Frobenius orbit of geometric components
            pf = component_l_factor(piece, budget)
            comp_factors.append(pf)
            p1 = poly_mul_z(p1, pf)
    result = LFactorResult(p1, graph, comp_factors)
    if result.degree() != inertial.dim_h1:
        raise DegreeMismatch(
            f"deg P1 = {result.degree()} but dim H^1 = {inertial.dim_h1}")
    if p1[0] != 1:
        raise DegreeMismatch("P1(0) != 1")
    return result


class ConductorResult:
    def __init__(self, epsilon, delta, quotient_genera, bound):
        self.epsilon = epsilon
        self.delta = delta
        self.conductor = epsilon + delta
        self.quotient_genera = quotient_genera  # {i: genus of Ybar/Gamma_i}
        self.bound = bound


def conductor_exponent(curve, filt, inertial):
    """f = epsilon + delta.

    epsilon = 2 g(Y) - dim H^1(inertial reduction); delta is the Swan sum
    over the higher ramification groups, computed from the arithmetic
    genera of the quotients Ybar/Gamma_i (wild translation quotients), and
    accumulated exactly before the integrality assertion.
    """
    g = curve.genus()
    epsilon = 2 * g - inertial.dim_h1
    gamma0 = filt.gamma(0)
    quotient_genera = {}
    delta = Fraction(0)
    if len(filt.gamma(1)) > 1:
        ctx = inertial.ctx
        i = 1
        while len(filt.gamma(i)) > 1:
            subgroup = filt.gamma(i)
            key = tuple(subgroup)
            if key not in quotient_genera:
                quotient_genera[key] = quotient_genus_by_wild_subgroup(
                    ctx, subgroup)
            g_i = quotient_genera[key]
            delta += Fraction(len(subgroup), len(gamma0)) * (2 * g - 2 * g_i)
            i += 1
    if delta.denominator != 1:
        raise NonIntegralSwan(f"Swan conductor {delta} is not an integer")
    delta = int(delta)
    # trivial upper bound from the filtration
    h = filt.last_jump
    wild = len(filt.gamma(1))
    bound = 2 * g * (1 + Fraction(h * wild, len(gamma0))) \
        if len(gamma0) > 1 else Fraction(2 * g)
    genera_by_jump = {}
    i = 1
    while len(filt.gamma(i)) > 1:
        genera_by_jump[i] = quotient_genera[tuple(filt.gamma(i))]
        i += 1
    result = ConductorResult(epsilon, delta, genera_by_jump, bound)
    if result.conductor > bound:
        raise NonIntegralSwan(
            f"conductor {result.conductor} exceeds the trivial bound {bound}")
    return result
