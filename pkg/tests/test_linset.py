import random

import pytest

from linsetlab.linpoly import random_qpolynomial
from linsetlab.linset import (
    Classification,
    FqSubspace,
    WeightDistribution,
    all_proj_points,
    classify,
    proj_point,
)


# ── distribution invariants ─────────────────────────────────────────────────


def test_partition_identity_enforced():
    WeightDistribution.from_counts(2, 5, {4: 1, 1: 16})
    with pytest.raises(ValueError):
        WeightDistribution.from_counts(2, 5, {4: 1, 1: 15})
    with pytest.raises(ValueError):
        WeightDistribution.from_counts(2, 5, {6: 1})
    with pytest.raises(ValueError):
        WeightDistribution.from_counts(2, 5, {5: 1, 1: 1})


def test_counts_normalized():
    d = WeightDistribution.from_counts(2, 5, {1: 16, 4: 1})
    assert d.counts == ((1, 16), (4, 1))
    assert d.size == 17
    assert d.count(4) == 1 and d.count(3) == 0
    assert d.max_weight == 4


def test_json_shape():
    d = WeightDistribution.from_counts(2, 5, {1: 16, 4: 1})
    assert d.to_json() == {
        "q": 2,
        "rank": 5,
        "weights": {"1": 16, "4": 1},
        "size": 17,
        "class": "club4",
        "legal": True,
    }


# ── classification ──────────────────────────────────────────────────────────


def _cls(q, counts, rank=5):
    return classify(q, WeightDistribution.from_counts(q, rank, counts))


def test_scattered_and_clubs():
    assert _cls(2, {1: 31}).label == "scattered"
    assert _cls(2, {4: 1, 1: 16}).label == "club4"
    assert _cls(2, {3: 1, 1: 24}).label == "club3"
    assert _cls(3, {4: 1, 1: 81}).legal is True


def test_two_clubs_illegal_at_rank_5():
    c = _cls(2, {2: 1, 1: 28})
    assert c.tag == "club" and c.param == 2
    assert c.legal is False


def test_two_club_structure_below_rank_5():
    c = _cls(2, {2: 1, 1: 4}, rank=3)
    assert c.tag == "club" and c.param == 2
    assert c.legal is None


def test_weight3_legality():
    assert _cls(2, {3: 1, 2: 2, 1: 18}).legal is True  # s = q
    assert _cls(2, {3: 1, 2: 4, 1: 12}).legal is True  # s = q^2
    assert _cls(2, {3: 1, 2: 3, 1: 15}).legal is False
    assert _cls(3, {3: 1, 2: 9, 1: 72}).legal is True
    assert _cls(3, {3: 1, 2: 5, 1: 88}).legal is False


def test_weight2_legality():
    # near-interval values plus the listed exceptional multiplicities
    assert _cls(2, {2: 2, 1: 25}).legal is True
    assert _cls(2, {2: 6, 1: 13}).legal is True  # 2q+2
    assert _cls(3, {2: 10, 1: 81}).legal is True  # q^2+1
    assert _cls(3, {2: 12, 1: 73}).legal is False
    assert _cls(4, {2: 17, 1: 256}).legal is True  # q^2+1
    assert _cls(4, {2: 15, 1: 266}).legal is False


def test_single_point():
    c = _cls(2, {5: 1})
    assert c.tag == "single_point" and c.legal is True


def test_label_strings():
    assert _cls(3, {2: 4, 1: 105}).label == "weight2_4"
    assert _cls(3, {3: 1, 2: 3, 1: 96}).label == "weight3_w2_3"


# ── projective points ───────────────────────────────────────────────────────


def test_proj_point_canonical(tower2):
    assert proj_point(tower2, 0, 7) == (0, 1)
    x = 5
    y = 9
    lam = 21
    a = proj_point(tower2, x, y)
    b = proj_point(tower2, tower2.mul(lam, x), tower2.mul(lam, y))
    assert a == b
    pts = all_proj_points(tower2)
    assert len(pts) == tower2.order + 1
    assert len(set(pts)) == len(pts)


# ── subspaces ───────────────────────────────────────────────────────────────


def test_span_and_canonical_form(tower2):
    rng = random.Random(3)
    vecs = [(rng.randrange(32), rng.randrange(32)) for _ in range(5)]
    sub = FqSubspace.span_from_vectors(tower2, vecs)
    # shuffled generators span the same canonical object
    rng.shuffle(vecs)
    assert FqSubspace.span_from_vectors(tower2, vecs) == sub


def test_zero_span_rejected(tower2):
    with pytest.raises(ValueError):
        FqSubspace.span_from_vectors(tower2, [(0, 0)])


def test_graph_dual_route_agreement(tower2, tower3):
    """Kernel dimensions and subspace intersections must tell the same
    story for every graph; 100 random polynomials per subfield order."""
    for tw in (tower2, tower3):
        rng = random.Random(41)
        for _ in range(100):
            f = random_qpolynomial(tw, rng)
            via_kernel = f.graph_weight_distribution()
            via_subspace = f.graph_subspace().weight_distribution()
            assert via_kernel == via_subspace


def test_transform_invariance(tower2):
    """A line collineation permutes the points, so the distribution is
    unchanged under any invertible coordinate change of the two slots."""
    rng = random.Random(59)
    f = random_qpolynomial(tower2, rng)
    sub = f.graph_subspace()
    base = sub.weight_distribution()
    done = 0
    while done < 20:
        m = [
            [rng.randrange(32), rng.randrange(32)],
            [rng.randrange(32), rng.randrange(32)],
        ]
        det = tower2.sub(
            tower2.mul(m[0][0], m[1][1]), tower2.mul(m[0][1], m[1][0])
        )
        if det == 0:
            continue
        assert sub.transformed(m).weight_distribution() == base
        done += 1


def test_point_weight_examples(tower2):
    from linsetlab.linpoly import trace_polynomial

    sub = trace_polynomial(tower2).graph_subspace()
    assert sub.point_weight((1, 0)) == 4
    assert sub.point_weight((0, 1)) == 0
