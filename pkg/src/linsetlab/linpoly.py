"""q-polynomials a0 x + a1 x^q + ... + a4 x^{q^4} over F_{q^5}.

Such a polynomial is an F_q-linear map of F_{q^5}; its graph
U_f = {(x, f(x))} is a rank-5 subspace of F_{q^5}^2, and the weight of the
point <(1, g)> in the graph's linear set equals the kernel dimension of
f - g x.  The point <(0, 1)> never lies on a graph set.
"""

from __future__ import annotations

from .linset import FqSubspace, WeightDistribution


class QPolynomial:
    """Coefficient vector (a0, ..., a4); a[i] multiplies x^{q^i}."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != 5:
            raise ValueError("need exactly five coefficients")
        if any(not 0 <= c < tower.order for c in coeffs):
            raise ValueError("coefficient encoding out of range")
        self.tower = tower
        self.coeffs = coeffs

    @classmethod
    def from_string(cls, tower, text):
        """Parse "a0,a1,a2,a3,a4" with integer encodings."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 5:
            raise ValueError("need exactly five comma-separated coefficients")
        return cls(tower, tuple(int(p) for p in parts))

    def to_string(self):
        return ",".join(str(c) for c in self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, QPolynomial)
            and self.tower is other.tower
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.tower), self.coeffs))

    def __repr__(self):
        return f"QPolynomial({self.coeffs})"

    def evaluate(self, x):
        t = self.tower
        acc = 0
        for i, a in enumerate(self.coeffs):
            if a:
                acc = t.add(acc, t.mul(a, t.frobenius(x, i)))
        return acc

    def matrix(self):
        """5x5 matrix over F_q of the map on the basis 1, t, ..., t^4 (rows)."""
        t = self.tower
        return [list(t.fq_coordinates(self.evaluate(b))) for b in t.fq_basis]

    def kernel_dimension(self):
        """dim_{F_q} ker f = 5 - rank of the coefficient matrix."""
        return 5 - self.tower.rank(self.matrix())

    # shifted / scaled / precomposed forms used by the invariance checks

    def shifted(self, g):
        """f - g x; permutes the kernel grid of the graph set."""
        t = self.tower
        return QPolynomial(t, (t.sub(self.coeffs[0], g),) + self.coeffs[1:])

    def scaled(self, lam):
        """lam * f for lam != 0."""
        if lam == 0:
            raise ValueError("scaling by zero collapses the graph")
        t = self.tower
        return QPolynomial(t, tuple(t.mul(lam, a) for a in self.coeffs))

    def precomposed(self, mu):
        """x -> f(mu x) for mu != 0; coefficient i picks up mu^{q^i}."""
        if mu == 0:
            raise ValueError("precomposition must be invertible")
        t = self.tower
        return QPolynomial(
            t, tuple(t.mul(a, t.frobenius(mu, i)) for i, a in enumerate(self.coeffs))
        )

    def graph_subspace(self):
        """The rank-5 subspace {(x, f(x))} of F_{q^5}^2."""
        t = self.tower
        return FqSubspace.span_from_vectors(
            t, [(b, self.evaluate(b)) for b in t.fq_basis]
        )

    def graph_weight_distribution(self):
        """Weight distribution of the graph set, via kernel dimensions.

        For each g in F_{q^5} (encoding order) the point <(1, g)> has weight
        dim ker(f - g x); zero weights are dropped.
        """
        t = self.tower
        counts = {}
        for g in range(t.order):
            w = self.shifted(g).kernel_dimension()
            if w:
                counts[w] = counts.get(w, 0) + 1
        return WeightDistribution.from_counts(t.q, 5, counts)


def trace_polynomial(tower):
    """f(x) = x + x^q + x^{q^2} + x^{q^3} + x^{q^4}."""
    return QPolynomial(tower, (1, 1, 1, 1, 1))


def random_qpolynomial(tower, rng):
    return QPolynomial(tower, tuple(rng.randrange(tower.order) for _ in range(5)))
