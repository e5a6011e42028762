import random

import pytest

from linsetlab.curves import (
    CubicCurve,
    classify_cubic,
    count_is_plausible,
    norm_form_cubic,
    projective_points,
    random_cubic,
)
from linsetlab.gf import small_field


def cubic(q, coeff_map):
    """Build a curve from {monomial_index: coeff} over F_q."""
    coeffs = [0] * 10
    for idx, c in coeff_map.items():
        coeffs[idx] = c
    return CubicCurve(small_field(q), coeffs)


def product_of_linear_forms(field, forms):
    """Expand a product of linear duals (a, b, c) into cubic coefficients."""
    poly = {(0, 0, 0): 1}
    for a, b, c in forms:
        nxt = {}
        for (i, j, k), pc in poly.items():
            for axis, lc in enumerate((a, b, c)):
                if lc == 0:
                    continue
                m = [i, j, k]
                m[axis] += 1
                m = tuple(m)
                nxt[m] = field.add(nxt.get(m, 0), field.mul(pc, lc))
        poly = nxt
    order = (
        (3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1),
        (1, 0, 2), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3),
    )
    return CubicCurve(field, [poly.get(m, 0) for m in order])


# ── construction and validation ─────────────────────────────────────────────


def test_coefficient_validation():
    fld = small_field(3)
    with pytest.raises(ValueError):
        CubicCurve(fld, [1] * 9)
    with pytest.raises(ValueError):
        CubicCurve(fld, [0] * 10)
    with pytest.raises(ValueError):
        CubicCurve(fld, [3] + [0] * 9)


def test_projective_plane_size():
    for q in (2, 3, 4, 5, 7):
        assert len(projective_points(small_field(q))) == q * q + q + 1


def test_singularity_query_needs_curve_point():
    c = cubic(3, {0: 1})  # x^3
    with pytest.raises(ValueError):
        c.is_singular_point((1, 0, 0))


# ── point counts on known shapes ────────────────────────────────────────────


def test_triangle_of_lines():
    for q in (2, 3, 5, 7):
        c = cubic(q, {4: 1})  # xyz
        assert c.count_points() == 3 * q
        assert classify_cubic(c).tag == "three_rational_lines"


def test_concurrent_rational_lines():
    for q in (2, 3, 5, 7):
        c = cubic(q, {1: 1, 3: 1})  # x*y*(x+y)
        assert c.count_points() == 3 * q + 1
        assert classify_cubic(c).tag == "three_rational_lines"


def test_elliptic_count_within_interval():
    c = cubic(5, {7: 1, 0: 4, 5: 4})  # y^2 z - x^3 - x z^2
    n = c.count_points()
    assert (n - 6) ** 2 <= 4 * 5
    assert classify_cubic(c).tag == "smooth"


def test_fermat_cubic_by_characteristic():
    # in characteristic 3 the form is a perfect cube of one rational line
    c3 = cubic(3, {0: 1, 6: 1, 9: 1})
    got = classify_cubic(c3)
    assert got.tag == "three_rational_lines"
    assert got.points == 4
    for q in (5, 7):
        cq = cubic(q, {0: 1, 6: 1, 9: 1})
        got = classify_cubic(cq)
        assert got.tag == "smooth"
        assert (got.points - q - 1) ** 2 <= 4 * q


# ── classification branches ─────────────────────────────────────────────────


def test_line_plus_conic():
    # (x + y + z)(x^2 + yz); the conic has no linear factor over any F_q
    for q in (2, 3, 5, 7):
        c = cubic(q, {0: 1, 1: 1, 2: 1, 4: 1, 7: 1, 8: 1})
        got = classify_cubic(c)
        assert got.tag == "line_plus_conic"
        assert got.points in {2 * q, 2 * q + 1, 2 * q + 2}


def test_line_and_conjugate_pair():
    # z * (x^2 + c y^2) with -c a nonsquare: pair vertex (0,0,1) off z = 0
    witnesses = {3: {2: 1, 7: 1}, 5: {2: 1, 7: 2}}
    for q, cmap in witnesses.items():
        fld = small_field(q)
        c0 = cmap[7]
        assert all(fld.add(fld.mul(x, x), c0) != 0 for x in range(q))
        got = classify_cubic(cubic(q, cmap))
        assert got.tag == "line_and_conjugate_pair"
        assert got.points == q + 2


def test_line_and_conjugate_pair_vertex_on_line():
    # x * (x^2 + xy + 2y^2) over F_3: the pair vertex (0,0,1) lies on x = 0
    fld = small_field(3)
    assert all(
        fld.add(fld.add(fld.mul(x, x), x), 2) != 0 for x in range(3)
    )
    got = classify_cubic(cubic(3, {0: 1, 1: 1, 3: 2}))
    assert got.tag == "line_and_conjugate_pair"
    assert got.points == 3 + 1


def test_norm_form_triangle_has_no_points():
    for q in (2, 3, 5, 7):
        c = norm_form_cubic(q)
        got = classify_cubic(c)
        assert got.tag == "three_conjugate_lines"
        assert got.points == 0


def test_norm_form_concurrent_has_one_point():
    for q in (2, 3, 5, 7):
        c = norm_form_cubic(q, concurrent=True)
        got = classify_cubic(c)
        assert got.tag == "three_conjugate_lines"
        assert got.points == 1


def test_norm_form_needs_prime_base():
    with pytest.raises(ValueError):
        norm_form_cubic(4)


def test_nodal_and_cuspidal_cubics():
    # y^2 z = x^3 + x^2 z has a double point at (0, 0, 1)
    for q in (3, 5, 7):
        c = cubic(q, {7: 1, 0: q - 1, 2: q - 1})
        assert c.is_singular_point((0, 0, 1))
        got = classify_cubic(c)
        assert got.tag == "singular_irreducible"
        assert got.points in {q, q + 1, q + 2}
    # y^2 z = x^3 cusp, away from characteristics 2 and 3
    for q in (5, 7):
        c = cubic(q, {7: 1, 0: q - 1})
        assert c.is_singular_point((0, 0, 1))
        got = classify_cubic(c)
        assert got.tag == "singular_irreducible"
        assert got.points == q + 1


def test_classification_json():
    got = classify_cubic(cubic(3, {4: 1}))
    assert got.to_json() == {"class": "three_rational_lines", "points": 9}


# ── formal partials in small characteristic ─────────────────────────────────


def test_partials_vanish_on_cube_in_char_three():
    c = cubic(3, {0: 1})  # x^3: all three formal partials are zero
    assert c.formal_partials() == ({}, {}, {})
    assert classify_cubic(c).tag == "three_rational_lines"


def test_partials_in_char_two():
    c = cubic(2, {1: 1})  # x^2 y: d/dx = 2xy = 0, d/dy = x^2, d/dz = 0
    dx, dy, dz = c.formal_partials()
    assert dx == {} and dz == {}
    assert dy == {(2, 0, 0): 1}


def test_partials_match_difference_quotient_convention():
    # d/dx(x y z) = yz in every characteristic
    for q in (2, 3, 5):
        dx, dy, dz = cubic(q, {4: 1}).formal_partials()
        assert dx == {(0, 1, 1): 1}
        assert dy == {(1, 0, 1): 1}
        assert dz == {(1, 1, 0): 1}


# ── mixed corpus ────────────────────────────────────────────────────────────


def test_corpus_counts_match_tag_table():
    for q, seed in ((3, 41), (5, 42)):
        fld = small_field(q)
        rng = random.Random(seed)
        corpus = [norm_form_cubic(q), norm_form_cubic(q, concurrent=True)]
        for _ in range(30):
            forms = []
            while len(forms) < 3:
                dual = tuple(rng.randrange(q) for _ in range(3))
                if any(dual):
                    forms.append(dual)
            corpus.append(product_of_linear_forms(fld, forms))
        for _ in range(60):
            corpus.append(random_cubic(fld, rng))
        tags = set()
        for curve in corpus:
            got = classify_cubic(curve)
            tags.add(got.tag)
            assert count_is_plausible(got.tag, q, got.points)
            if got.tag == "smooth":
                assert (got.points - q - 1) ** 2 <= 4 * q
        assert "three_rational_lines" in tags
        assert "three_conjugate_lines" in tags
