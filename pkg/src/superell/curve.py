"""Input model for superelliptic curves y^n = f(x) over Q at a prime p.

Validation enforces the standing assumptions of the reduction procedure:
no factor of f is an n-th power, the multiplicities of the roots of f are
coprime to n as a set, n is at least 2 and prime to p, and the genus is at
least 2.  The genus and the shape of the branch divisor only depend on the
multiplicity structure of f, so both are computed here over Q without any
p-adic work.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import RootMultiplicityMismatch
from .finitefield import is_prime
from .qpoly import QPoly, parse_poly


class SuperellipticCurve:
    """y^n = f(x), considered over Q_p for the given prime p.

    ``f`` is rescaled internally by an n-th power of an integer to clear
    denominators (this does not change the curve).
    """

    def __init__(self, n, f, p):
        if isinstance(f, (list, tuple)):
            f = QPoly(f)
        self.n = int(n)
        self.p = int(p)
        self.f_input = f
        # clear denominators by an n-th power so the curve is unchanged
        from math import lcm
        m = 1
        for c in f.coeffs:
            m = lcm(m, c.denominator)
        self.rescale = m
        self.f = f * Fraction(m**self.n)
        assert all(c.denominator == 1 for c in self.f.coeffs)
        self._sqfree = None

    def __repr__(self):
        return f"y^{self.n} = {self.f_input!r}  (p = {self.p})"

    def squarefree_decomposition(self):
        if self._sqfree is None:
            self._sqfree = self.f.squarefree_decomposition()
        return self._sqfree

    def multiplicities(self):
        """Sorted list of (degree over Q-bar, multiplicity) of root clusters."""
        return sorted((g.degree(), m)
                      for g, m in self.squarefree_decomposition())

    def degree(self):
        return self.f.degree()

    def branches_infinity(self):
        return self.degree() % self.n != 0

    def validate(self):
        """Check the standing assumptions; returns a list of violations."""
        violations = []
        if not is_prime(self.p):
            violations.append(f"p = {self.p} is not prime")
        if self.f.degree() < 1:
            violations.append("f must be nonconstant")
            return violations
        if self.n < 2:
            violations.append(f"exponent n = {self.n} must be at least 2")
        if self.n >= 2 and gcd(self.n, self.p) != 1:
            violations.append(
                f"exponent n = {self.n} is not prime to p = {self.p}")
        decomp = self.squarefree_decomposition()
        if any(m >= self.n for _, m in decomp):
            violations.append(
                f"f has a factor which is an {self.n}-th power over Q")
        mults = [m for _, m in decomp]
        if mults and gcd(self.n, gcd(*mults) if len(mults) > 1 else mults[0]) != 1:
            violations.append(
                "gcd of n and the root multiplicities of f exceeds 1")
        if self.n >= 2 and not violations:
            g = self.genus()
            if g < 2:
                violations.append(f"genus {g} is less than 2")
        return violations

    def genus(self):
        """Genus of the smooth projective model, by Riemann-Hurwitz."""
        n = self.n
        two_g = 2 - 2 * n
        total = 0
        for g_i, m in self.squarefree_decomposition():
            two_g += g_i.degree() * (n - gcd(n, m))
            total += g_i.degree() * m
        assert total == self.degree()
        two_g += n - gcd(n, total)
        assert two_g % 2 == 0
        return two_g // 2

    @classmethod
    def from_json_dict(cls, data):
        """Curve spec: {"n": 4, "f": [c0, c1, ...], "p": 3} with coefficients
        integers or "a/b" strings, or factored form "f": [["x^2-3", 1], ...].
        """
        n = data["n"]
        p = data["p"]
        fspec = data["f"]
        if fspec and isinstance(fspec[0], (list, tuple)):
            f = QPoly([1])
            for entry, mult in fspec:
                base = parse_poly(entry) if isinstance(entry, str) \
                    else QPoly([Fraction(c) for c in entry])
                f = f * base**int(mult)
        else:
            f = QPoly([Fraction(c) for c in fspec])
        return cls(n, f, p)


class BranchPoint:
    """One point of the branch divisor: a root of f in L, or infinity."""

    __slots__ = ("value", "multiplicity", "factor", "is_infinity")

    def __init__(self, value, multiplicity, factor=None, is_infinity=False):
        self.value = value            # LocalFieldElement, or None for infinity
        self.multiplicity = multiplicity
        self.factor = factor          # the squarefree QPoly it is a root of
        self.is_infinity = is_infinity

    def __repr__(self):
        if self.is_infinity:
            return "oo"
        return f"root(mult={self.multiplicity})"


class BranchDivisor:
    __slots__ = ("points", "includes_infinity")

    def __init__(self, points, includes_infinity):
        self.points = points
        self.includes_infinity = includes_infinity

    def __len__(self):
        return len(self.points)


def branch_divisor(curve, L, root_finder=None):
    """Branch divisor of y^n = f over L: all roots of f with multiplicities,
    plus infinity when n does not divide deg f.

    Roots of each squarefree factor are located separately, so every root
    carries its exact multiplicity.  ``root_finder(qpoly) -> roots in L``
    defaults to ``L.roots_of_qpoly``.
    """
    if root_finder is None:
        root_finder = L.roots_of_qpoly
    points = []
    for g_i, mult in curve.squarefree_decomposition():
        roots = root_finder(g_i)
        if len(roots) != g_i.degree():
            raise RootMultiplicityMismatch(
                f"factor of degree {g_i.degree()} has only {len(roots)} "
                f"roots in the given field")
        for r in roots:
            points.append(BranchPoint(r, mult, factor=g_i))
    inf = curve.branches_infinity()
    if inf:
        points.append(BranchPoint(None, None, is_infinity=True))
    div = BranchDivisor(points, inf)
    if curve.genus() >= 2:
        assert len(div) >= 3, "marked tree needs at least three points"
    return div
