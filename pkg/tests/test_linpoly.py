import random

import pytest

from linsetlab.linpoly import (
    QPolynomial,
    random_qpolynomial,
    trace_polynomial,
)


def test_validation(tower2):
    with pytest.raises(ValueError):
        QPolynomial(tower2, (1, 2, 3))
    with pytest.raises(ValueError):
        QPolynomial(tower2, (0, 0, 0, 0, 99))


def test_string_roundtrip(tower2):
    f = QPolynomial.from_string(tower2, "1,2,0,31,7")
    assert f.coeffs == (1, 2, 0, 31, 7)
    assert QPolynomial.from_string(tower2, f.to_string()).coeffs == f.coeffs


def test_evaluate_is_semilinear(tower3):
    # f(x+y) = f(x)+f(y) and f(cx) = c f(x) for c in the subfield
    rng = random.Random(5)
    f = random_qpolynomial(tower3, rng)
    for _ in range(40):
        x = rng.randrange(tower3.order)
        y = rng.randrange(tower3.order)
        c = rng.choice(tower3.subfield_elements)
        assert f.evaluate(tower3.add(x, y)) == tower3.add(
            f.evaluate(x), f.evaluate(y)
        )
        assert f.evaluate(tower3.mul(c, x)) == tower3.mul(c, f.evaluate(x))


def test_identity_kernel(tower2):
    # x - x has full kernel; x itself has none
    ident = QPolynomial(tower2, (1, 0, 0, 0, 0))
    assert ident.kernel_dimension() == 0
    assert ident.shifted(1).kernel_dimension() == 5


def test_frobenius_graph_is_scattered(tower2, tower3):
    for tw in (tower2, tower3):
        f = QPolynomial(tw, (0, tw.exp[0], 0, 0, 0))  # a1 = 1: f = x^q
        dist = f.graph_weight_distribution()
        assert dist.counts == ((1, (tw.order - 1) // (tw.q - 1)),)


def test_trace_graph_is_club(tower2, tower3):
    for tw, expect in ((tower2, ((1, 16), (4, 1))), (tower3, ((1, 81), (4, 1)))):
        assert trace_polynomial(tw).graph_weight_distribution().counts == expect


def test_shift_scale_precompose_invariance(tower2, tower3):
    """The graph set only moves under a line collineation, so the
    distribution must survive a0-shifts, scalings, and precompositions."""
    for tw in (tower2, tower3):
        rng = random.Random(17)
        for _ in range(10):
            f = random_qpolynomial(tw, rng)
            base = f.graph_weight_distribution()
            g = rng.randrange(tw.order)
            lam = rng.randrange(1, tw.order)
            mu = rng.randrange(1, tw.order)
            assert f.shifted(g).graph_weight_distribution() == base
            assert f.scaled(lam).graph_weight_distribution() == base
            assert f.precomposed(mu).graph_weight_distribution() == base


def test_scale_zero_rejected(tower2):
    f = QPolynomial(tower2, (0, 2, 0, 0, 0))
    with pytest.raises(ValueError):
        f.scaled(0)
    with pytest.raises(ValueError):
        f.precomposed(0)


def test_matrix_rank_matches_kernel(tower3):
    rng = random.Random(23)
    for _ in range(25):
        f = random_qpolynomial(tower3, rng)
        m = f.matrix()
        assert tower3.rank(m) + f.kernel_dimension() == 5


def test_distribution_partition_identity(tower2, tower3):
    # weights account for the whole multiplicative group of the big field
    for tw in (tower2, tower3):
        rng = random.Random(2)
        for _ in range(20):
            f = random_qpolynomial(tw, rng)
            dist = f.graph_weight_distribution()
            total = sum(c * (tw.q ** w - 1) for w, c in dist.counts)
            assert total == tw.order - 1
