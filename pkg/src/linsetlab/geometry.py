"""Incidence geometry of the canonical PG(4, q) inside PG(4, q^5).

The subgeometry Sigma consists of the points with a coordinate vector over
F_q.  The rank of a point of PG(4, q^5) is the dimension of the smallest
rational subspace whose F_{q^5}-extension contains it; rank-1 points are
Sigma itself and rank-2 points form the set Omega_2, the points on extended
lines of Sigma that are not rational.

Every rank-2 point P can be written Q1 + gamma Q2 with Q1, Q2 rational and
gamma outside F_q; gamma is well defined up to the PGL(2, q) action
gamma -> (a gamma + b) / (c gamma + d), so the orbit label of gamma is an
invariant of P (its type).  There are exactly q^2 + 1 orbits, each of size
q(q^2 - 1).

Projecting Sigma from a plane disjoint from it onto a line produces every
rank-5 linear set on PG(1, q^5); the weight of an image point is d + 1
where d is the projective dimension of the fiber hyperplane's meet with
Sigma.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .linset import WeightDistribution


# ── rational points and lines ───────────────────────────────────────


@lru_cache(maxsize=None)
def sigma_points(tower):
    """Canonical representatives of the rational points, in lexicographic order."""
    sub = tower.subfield_elements
    pts = []
    for lead in range(5):
        for tail in product(sub, repeat=4 - lead):
            pts.append((0,) * lead + (1,) + tail)
    return tuple(pts)


@lru_cache(maxsize=None)
def sigma_lines(tower):
    """Lines of Sigma as pairs of rational basis vectors, one pair per line."""
    pts = sigma_points(tower)
    seen = set()
    lines = []
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            key = _fq_rowspace_key(tower, [pts[i], pts[j]])
            if key not in seen:
                seen.add(key)
                lines.append((pts[i], pts[j]))
    expected = (tower.q ** 5 - 1) * (tower.q ** 5 - tower.q)
    expected //= (tower.q ** 2 - 1) * (tower.q ** 2 - tower.q)
    if len(lines) != expected:
        raise RuntimeError("line enumeration miscounted")
    return tuple(lines)


def _fq_rowspace_key(tower, rows):
    # rows of subfield elements; F_q linear algebra is plain GF arithmetic
    return tuple(tuple(r) for r in tower.rref([list(r) for r in rows]))


# ── point rank ──────────────────────────────────────────────────────


def point_rank(tower, coords):
    """Rank of a point of PG(4, q^5).

    Equals the F_q-dimension of the span of the five coordinates, which is
    the same for every scalar multiple of the coordinate vector, so the
    minimum over representatives is free.
    """
    if all(c == 0 for c in coords):
        raise ValueError("zero vector spans no point")
    if tower.e == 1 and tower.p == 2:
        return _gf2_rank(list(coords))
    rows = [list(tower.fq_coordinates(c)) for c in coords]
    return tower.rank(rows)


def _gf2_rank(rows):
    # rank of bit-packed rows over F_2
    pivots = {}
    rank = 0
    for row in rows:
        r = row
        while r:
            high = r.bit_length() - 1
            piv = pivots.get(high)
            if piv is None:
                pivots[high] = r
                rank += 1
                break
            r ^= piv
    return rank


def rank2_gamma(tower, coords):
    """A ratio gamma with P = Q1 + gamma Q2 for a rank-2 point P.

    Taken from the canonical F_q-basis (u1, u2) of the coordinate span:
    gamma = u2 / u1.  Well defined up to the PGL(2, q) action.
    """
    rows = [list(tower.fq_coordinates(c)) for c in coords]
    red = tower.rref(rows)
    if len(red) != 2:
        raise ValueError(f"point has rank {len(red)}, not 2")
    u1 = tower.from_fq_coordinates(red[0])
    u2 = tower.from_fq_coordinates(red[1])
    gamma = tower.div(u2, u1)
    if tower.in_subfield(gamma):
        raise RuntimeError("rank-2 point produced a rational ratio")
    return gamma


# ── orbit types ─────────────────────────────────────────────────────


def same_g_orbit(tower, g1, g2):
    """Whether two ratios lie in the same PGL(2, q) orbit.

    Criterion: the F_q-span of 1, g1, g2, g1*g2 has dimension at most 3.
    """
    for g in (g1, g2):
        if tower.in_subfield(g):
            raise ValueError("orbit types are defined outside F_q only")
    rows = [
        list(tower.fq_coordinates(1)),
        list(tower.fq_coordinates(g1)),
        list(tower.fq_coordinates(g2)),
        list(tower.fq_coordinates(tower.mul(g1, g2))),
    ]
    return tower.rank(rows) <= 3


@lru_cache(maxsize=None)
def g_orbit_label_table(tower):
    """Minimal orbit element for every gamma outside F_q."""
    q = tower.q
    sub = tower.subfield_elements
    units = [
        (a, b, c, d)
        for a in sub
        for b in sub
        for c in sub
        for d in sub
        if tower.sub(tower.mul(a, d), tower.mul(b, c)) != 0
    ]
    labels = {}
    expected_size = q * (q * q - 1)
    for g in range(tower.order):
        if tower.in_subfield(g) or g in labels:
            continue
        orbit = set()
        for a, b, c, d in units:
            num = tower.add(tower.mul(a, g), b)
            den = tower.add(tower.mul(c, g), d)
            orbit.add(tower.div(num, den))
        if len(orbit) != expected_size:
            raise RuntimeError("orbit size deviates from q(q^2-1)")
        m = min(orbit)
        for x in orbit:
            labels[x] = m
    return labels


def g_orbit_label(tower, g):
    if tower.in_subfield(g):
        raise ValueError("orbit types are defined outside F_q only")
    return g_orbit_label_table(tower)[g]


def g_orbit_count(tower):
    return len(set(g_orbit_label_table(tower).values()))


# ── lines of PG(4, q^5) against Omega_2 ─────────────────────────────


def proj5(tower, coords):
    """Scale a point of PG(4, q^5) so its first nonzero coordinate is 1."""
    for c in coords:
        if c != 0:
            inv = tower.inv(c)
            return tuple(tower.mul(inv, x) for x in coords)
    raise ValueError("zero vector spans no point")


def line_points(tower, p1, p2):
    """The q^5 + 1 points of the line through p1 and p2."""
    pts = []
    for mu in range(tower.order):
        vec = tuple(tower.add(a, tower.mul(mu, b)) for a, b in zip(p1, p2))
        pts.append(proj5(tower, vec))
    pts.append(proj5(tower, p2))
    return pts


@dataclass(frozen=True)
class LineProfile:
    """Rank-2 count of a line disjoint from Sigma, with its type histogram."""

    count: int
    types: tuple  # sorted (orbit label, multiplicity) pairs

    @property
    def type_counts(self):
        return dict(self.types)


def line_omega2_profile(tower, p1, p2):
    """Profile of a line against Omega_2; rejects lines meeting Sigma.

    The count always lands in {0, 1, 2, q+1, q^2+q+1}.
    """
    q = tower.q
    hist = {}
    count = 0
    for pt in line_points(tower, p1, p2):
        r = point_rank(tower, pt)
        if r == 1:
            raise ValueError("line meets the subgeometry")
        if r == 2:
            count += 1
            lab = g_orbit_label(tower, rank2_gamma(tower, pt))
            hist[lab] = hist.get(lab, 0) + 1
    if count not in (0, 1, 2, q + 1, q * q + q + 1):
        raise RuntimeError(f"rank-2 count {count} outside the admissible set")
    return LineProfile(count, tuple(sorted(hist.items())))


def line_parameter(tower, p1, p2, pt):
    """Coordinates (1, mu) or (0, 1) of pt in the frame (p1, p2) on its line."""
    # pick two positions where (p1, p2) has an invertible minor
    for i in range(5):
        for j in range(5):
            if i == j:
                continue
            det = tower.sub(
                tower.mul(p1[i], p2[j]), tower.mul(p1[j], p2[i])
            )
            if det != 0:
                # solve alpha p1 + beta p2 = pt on positions i, j
                alpha = tower.div(
                    tower.sub(tower.mul(pt[i], p2[j]), tower.mul(pt[j], p2[i])), det
                )
                beta = tower.div(
                    tower.sub(tower.mul(p1[i], pt[j]), tower.mul(p1[j], pt[i])), det
                )
                check = tuple(
                    tower.add(tower.mul(alpha, a), tower.mul(beta, b))
                    for a, b in zip(p1, p2)
                )
                if proj5(tower, check) != proj5(tower, pt):
                    raise ValueError("point not on the line")
                if alpha != 0:
                    return (1, tower.div(beta, alpha))
                return (0, 1)
    raise ValueError("degenerate frame")


def is_fq_subline_parameters(tower, params):
    """Whether a set of q+1 line parameters forms an F_q-subline.

    Expects the frame points among them as (1,0) and (0,1); the remaining
    parameters (1, mu) must satisfy mu in mu0 F_q for the first one mu0.
    """
    finite = [mu for kind, mu in params if kind == 1 and mu != 0]
    if len(finite) != len(params) - 2:
        return False
    mu0 = finite[0]
    return all(tower.in_subfield(tower.div(mu, mu0)) for mu in finite)


# ── planes and projection ───────────────────────────────────────────


class Plane:
    """A plane of PG(4, q^5): canonical RREF basis of a 3-dim subspace."""

    __slots__ = ("tower", "rows")

    def __init__(self, tower, rows):
        self.tower = tower
        self.rows = tuple(tuple(r) for r in tower.rref([list(r) for r in rows]))
        if len(self.rows) != 3 or any(len(r) != 5 for r in self.rows):
            raise ValueError("a plane needs three independent 5-coordinate points")

    def __eq__(self, other):
        return isinstance(other, Plane) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def annihilator(self):
        """Two independent functionals vanishing on the plane."""
        basis = self.tower.nullspace([list(r) for r in self.rows])
        if len(basis) != 2:
            raise RuntimeError("plane annihilator must have dimension 2")
        return basis[0], basis[1]

    def contains(self, pt):
        return self.tower.rank([list(r) for r in self.rows] + [list(pt)]) == 3


def _dot(tower, a, b):
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = tower.add(acc, tower.mul(x, y))
    return acc


def plane_meets_sigma(tower, plane):
    phi1, phi2 = plane.annihilator()
    for pt in sigma_points(tower):
        if _dot(tower, phi1, pt) == 0 and _dot(tower, phi2, pt) == 0:
            return True
    return False


def project_from_plane(tower, plane):
    """Weight distribution of the projection of Sigma from a disjoint plane.

    Rational points sharing the hyperplane spanned with the plane form one
    fiber; a fiber of size (q^d+...+q+1) maps to an image point of weight
    d + 1.  The result is always a rank-5 distribution.
    """
    phi1, phi2 = plane.annihilator()
    q = tower.q
    fibers = {}
    for pt in sigma_points(tower):
        v1 = _dot(tower, phi1, pt)
        v2 = _dot(tower, phi2, pt)
        if v1 == 0 and v2 == 0:
            raise ValueError("plane meets the subgeometry")
        key = (1, tower.div(v2, v1)) if v1 != 0 else (0, 1)
        fibers[key] = fibers.get(key, 0) + 1
    size_to_weight = {}
    n = 0
    for w in range(1, 5):
        n = n * q + 1
        size_to_weight[n] = w
    counts = {}
    for size in fibers.values():
        w = size_to_weight.get(size)
        if w is None:
            raise RuntimeError(f"fiber size {size} is not a subspace size")
        counts[w] = counts.get(w, 0) + 1
    return WeightDistribution.from_counts(q, 5, counts)


def plane_for_graph(tower, f):
    """The projection vertex that reproduces the graph set of f.

    In coordinates where Sigma is rational, the plane is cut out by the two
    functionals c -> sum c_j t^j and c -> sum c_j f(t^j); they are
    independent exactly when f is not a scalar multiple of x.
    """
    row1 = list(tower.fq_basis)
    row2 = [f.evaluate(b) for b in tower.fq_basis]
    if tower.rank([row1, row2]) != 2:
        raise ValueError("graph of a scalar map projects from no plane")
    basis = tower.nullspace([row1, row2])
    return Plane(tower, basis)


def weight3_point_plane(tower, alpha, beta=None):
    """Planes projecting to the one-weight-3-point distributions.

    With the third spanning point e3 + alpha e4 the projection has q^2
    weight-2 points; replacing alpha there by a ratio beta from a different
    orbit leaves q weight-2 points.
    """
    if tower.in_subfield(alpha):
        raise ValueError("alpha must lie outside F_q")
    third = alpha if beta is None else beta
    if beta is not None:
        if tower.in_subfield(beta):
            raise ValueError("beta must lie outside F_q")
        if same_g_orbit(tower, alpha, beta):
            raise ValueError("beta must come from a different orbit than alpha")
    rows = [
        (1, alpha, 0, 0, 0),
        (1, 0, tower.inv(alpha), 0, 0),
        (0, 0, 0, 1, third),
    ]
    return Plane(tower, rows)


def random_disjoint_plane(tower, rng, max_tries=200):
    """Seeded random plane disjoint from Sigma."""
    for _ in range(max_tries):
        rows = [[rng.randrange(tower.order) for _ in range(5)] for _ in range(3)]
        if tower.rank(rows) != 3:
            continue
        plane = Plane(tower, rows)
        if not plane_meets_sigma(tower, plane):
            return plane
    raise RuntimeError("no disjoint plane found in the try budget")


# ── rank-2 points inside a plane ────────────────────────────────────


def omega2_points_in_plane(tower, plane):
    """All rank-2 points on a plane disjoint from Sigma.

    Each rank-2 point lies on the extension of exactly one line of Sigma,
    so scanning those extensions against the plane finds every one once.
    """
    prow = [list(r) for r in plane.rows]
    found = []
    for b1, b2 in sigma_lines(tower):
        stacked = prow + [list(b1), list(b2)]
        if tower.rank(stacked) > 4:
            continue
        # the unique meeting point: a row dependency gives its coefficients
        dep = tower.nullspace(_transpose(stacked))
        if len(dep) != 1:
            raise ValueError("plane contains an extended line, so it meets Sigma")
        c = dep[0]
        vec = tuple(
            tower.add(tower.mul(c[3], x), tower.mul(c[4], y)) for x, y in zip(b1, b2)
        )
        if all(v == 0 for v in vec):
            raise RuntimeError("degenerate dependency")
        pt = proj5(tower, vec)
        if point_rank(tower, pt) == 1:
            raise ValueError("plane meets the subgeometry")
        found.append(pt)
    if len(set(found)) != len(found):
        raise RuntimeError("a rank-2 point appeared on two extended lines")
    return found


def _transpose(rows):
    return [list(col) for col in zip(*rows)]


def collinear_groups(tower, points):
    """Group a point list by the lines through at least two of them.

    Returns a dict mapping a canonical line key to the member count.
    """
    groups = {}
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            key = tuple(
                tuple(r) for r in tower.rref([list(points[i]), list(points[j])])
            )
            groups.setdefault(key, set()).update((i, j))
    return {k: len(v) for k, v in groups.items()}
