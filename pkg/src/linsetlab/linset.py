"""F_q-subspaces of F_{q^5}^r, their weight distributions and classification.

A rank-k subspace U of F_{q^5}^2 defines the point set L_U on the projective
line PG(1, q^5): the points spanned over F_{q^5} by the nonzero vectors of U.
The weight of a point P is dim_{F_q}(U meet <v_P>), and the weight
distribution records how many points have each weight >= 1.  Rank-5
distributions are classified against the known case list for this line.

Subspaces are stored as canonical reduced row echelon bases over F_q, one row
per generator, 5r columns of F_q-coordinates.  Equality of subspaces is
bytewise equality of the canonical bases.
"""

from __future__ import annotations

from dataclasses import dataclass


# ── projective points ───────────────────────────────────────────────


def proj_point(tower, x, y):
    """Canonical representative of the point <(x, y)> on PG(1, q^5).

    First nonzero coordinate scaled to 1: (1, y/x) or (0, 1).
    """
    if x != 0:
        return (1, tower.div(y, x))
    if y != 0:
        return (0, 1)
    raise ValueError("zero vector spans no projective point")


def all_proj_points(tower):
    """The q^5 + 1 points of PG(1, q^5): (1, g) in encoding order of g, then (0, 1)."""
    return [(1, g) for g in range(tower.order)] + [(0, 1)]


# ── weight distributions ────────────────────────────────────────────


@dataclass(frozen=True)
class WeightDistribution:
    """Multiset of point weights of a rank-k linear set on PG(1, q^5).

    counts maps weight w >= 1 to the number of points of that weight.
    The nonzero vectors of U are partitioned by the points that carry
    them, which forces sum over w of counts[w] * (q^w - 1) = q^k - 1.
    """

    q: int
    rank: int
    counts: tuple

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(sorted(dict(self.counts).items())))
        cd = dict(self.counts)
        if not 1 <= self.rank <= 5:
            raise ValueError(f"rank {self.rank} outside 1..5")
        if any(w < 1 or c < 1 for w, c in cd.items()):
            raise ValueError("weights must be >= 1 with positive counts")
        total = sum(c * (self.q ** w - 1) for w, c in cd.items())
        if total != self.q ** self.rank - 1:
            raise ValueError(
                f"partition identity violated: got {total}, "
                f"need {self.q ** self.rank - 1}"
            )
        if cd.get(self.rank) and cd != {self.rank: 1}:
            raise ValueError("a weight equal to the rank forces a single point")

    @property
    def counts_dict(self):
        return dict(self.counts)

    @property
    def size(self):
        return sum(c for _, c in self.counts)

    def count(self, w):
        return self.counts_dict.get(w, 0)

    @property
    def max_weight(self):
        return max(w for w, _ in self.counts)

    def to_json(self):
        cls = classify(self.q, self)
        return {
            "q": self.q,
            "rank": self.rank,
            "weights": {str(w): c for w, c in self.counts},
            "size": self.size,
            "class": cls.label,
            "legal": cls.legal,
        }

    @staticmethod
    def from_counts(q, rank, counts):
        return WeightDistribution(q, rank, tuple(sorted(counts.items())))


# ── classification against the rank-5 case list ─────────────────────


@dataclass(frozen=True)
class Classification:
    tag: str
    param: int | None
    legal: bool | None
    reason: str | None = None

    @property
    def label(self):
        if self.tag in ("scattered", "single_point", "illegal"):
            return self.tag
        if self.tag == "club":
            return f"club{self.param}"
        if self.tag == "weight3":
            return f"weight3_w2_{self.param}"
        if self.tag == "weight2":
            return f"weight2_{self.param}"
        return self.tag


def _weight2_only_legal(q, s):
    """Allowed numbers of weight-2 points when no point has weight > 2."""
    if (s - q - 1) ** 2 <= 4 * q:
        return True
    return s in (2 * q, 2 * q + 1, 2 * q + 2, 3 * q, 3 * q + 1, q * q + 1)


def classify(q, dist):
    """Structural class of a weight distribution, with rank-5 legality.

    Rank-5 sets with more than one point fall into: scattered, a 4-club,
    a 3-club, one weight-3 point with q or q^2 weight-2 points, or only
    weight-2 points in restricted numbers.  Anything else is illegal.
    Distributions of rank below 5 get a structural tag only.
    """
    cd = dist.counts_dict
    maxw = dist.max_weight
    rank5 = dist.rank == 5

    def ok(tag, param=None, reason=None):
        return Classification(tag, param, True if rank5 else None, reason)

    def bad(reason):
        if not rank5:
            return Classification("illegal", None, None, reason)
        return Classification("illegal", None, False, reason)

    if dist.size == 1:
        return ok("single_point", reason="below the two-point size hypothesis")
    if maxw == 1:
        return ok("scattered")
    rest_flat = set(cd) <= {maxw, 1}
    if maxw >= 4:
        if cd[maxw] == 1 and rest_flat:
            if not rank5 or maxw == 4:
                return ok("club", maxw)
            return bad(f"weight-{maxw} point cannot occur at this rank")
        return bad(f"several weight-{maxw} points, or mixed lower weights")
    if maxw == 3:
        if cd[3] != 1:
            return bad("at most one weight-3 point is possible")
        s = cd.get(2, 0)
        if s == 0:
            return ok("club", 3)
        if not rank5 or s in (q, q * q):
            return ok("weight3", s)
        return bad(f"a weight-3 point admits 0, {q} or {q * q} weight-2 points, not {s}")
    s = cd[2]
    if s == 1 and rest_flat:
        if rank5:
            return Classification("club", 2, False, "2-clubs do not exist on this line")
        return Classification("club", 2, None)
    if not rank5 or _weight2_only_legal(q, s):
        return ok("weight2", s)
    return bad(f"{s} weight-2 points falls outside the allowed set")


# ── subspaces ───────────────────────────────────────────────────────


class FqSubspace:
    """An F_q-subspace of F_{q^5}^r in canonical RREF form.

    Rows are F_q-coordinate vectors of length 5r; decoding five consecutive
    coordinates gives one F_{q^5} entry of a spanning vector.
    """

    __slots__ = ("tower", "ambient_r", "rows")

    def __init__(self, tower, ambient_r, rows):
        if ambient_r not in (1, 2, 5):
            raise ValueError(f"ambient rank {ambient_r} not supported")
        self.tower = tower
        self.ambient_r = ambient_r
        self.rows = tuple(tuple(r) for r in tower.rref(rows))
        if not self.rows:
            raise ValueError("empty subspace")
        if any(len(r) != 5 * ambient_r for r in self.rows):
            raise ValueError("row length does not match the ambient space")

    @classmethod
    def span_from_vectors(cls, tower, vectors):
        """F_q-span of vectors over F_{q^5}; errors if the span is zero."""
        vectors = list(vectors)
        if not vectors:
            raise ValueError("no spanning vectors given")
        r = len(vectors[0])
        rows = [expand_vector(tower, v) for v in vectors]
        if all(all(c == 0 for c in row) for row in rows):
            raise ValueError("all spanning vectors are zero")
        return cls(tower, r, rows)

    @property
    def rank(self):
        return len(self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, FqSubspace)
            and self.tower is other.tower
            and self.ambient_r == other.ambient_r
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((id(self.tower), self.ambient_r, self.rows))

    def basis_vectors(self):
        """Decoded spanning vectors, one per canonical row."""
        return [compress_row(self.tower, row) for row in self.rows]

    def contains_vector(self, v):
        row = expand_vector(self.tower, v)
        if all(c == 0 for c in row):
            return True
        return self.tower.rank(list(self.rows) + [row]) == self.rank

    def transformed(self, matrix):
        """Image under an invertible r x r matrix over F_{q^5}."""
        t = self.tower
        new_vecs = []
        for vec in self.basis_vectors():
            out = []
            for i in range(self.ambient_r):
                acc = 0
                for j in range(self.ambient_r):
                    acc = t.add(acc, t.mul(matrix[i][j], vec[j]))
                out.append(acc)
            new_vecs.append(tuple(out))
        return FqSubspace.span_from_vectors(t, new_vecs)

    # ── weights ─────────────────────────────────────────────────

    def point_weight(self, point):
        """dim_{F_q} of the intersection with the F_q-space <v_P> of rank 5."""
        if self.ambient_r != 2:
            raise ValueError("point weights need ambient rank 2")
        t = self.tower
        x, y = point
        if x == 0 and y == 0:
            raise ValueError("zero vector spans no projective point")
        point_rows = [
            expand_vector(t, (t.mul(b, x), t.mul(b, y))) for b in t.fq_basis
        ]
        stacked = list(self.rows) + point_rows
        return self.rank + 5 - t.rank(stacked)

    def weight_distribution(self):
        """Point weights over all q^5 + 1 points of the line, weights >= 1."""
        t = self.tower
        counts = {}
        for point in all_proj_points(t):
            w = self.point_weight(point)
            if w > 0:
                counts[w] = counts.get(w, 0) + 1
        return WeightDistribution.from_counts(t.q, self.rank, counts)


def expand_vector(tower, v):
    """F_q-coordinate row (length 5r) of a vector over F_{q^5}."""
    row = []
    for entry in v:
        row.extend(tower.fq_coordinates(entry))
    return row


def compress_row(tower, row):
    """Inverse of expand_vector."""
    return tuple(
        tower.from_fq_coordinates(row[5 * i : 5 * i + 5]) for i in range(len(row) // 5)
    )
