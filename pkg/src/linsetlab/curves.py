"""Plane cubic curves over small fields: point counts and factor shape.

Coefficients follow the fixed monomial order

    x^3, x^2 y, x^2 z, x y^2, x y z, x z^2, y^3, y^2 z, y z^2, z^3.

Classification tags:

    three_rational_lines      splits into rational linear factors
                              (multiplicities and concurrency included)
    line_plus_conic           rational line times irreducible conic
    line_and_conjugate_pair   rational line times two lines conjugate
                              over the quadratic extension
    three_conjugate_lines     three lines conjugate over the cubic
                              extension (triangle or concurrent)
    singular_irreducible      irreducible with a rational singular point
    smooth                    no rational singular point, no linear factor

Everything is done by exact formal algebra (restriction of the form to a
parameterized line, formal partial derivatives), so the routines are valid
in every characteristic, including 2 and 3.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import small_field

MONOMIALS = (
    (3, 0, 0),
    (2, 1, 0),
    (2, 0, 1),
    (1, 2, 0),
    (1, 1, 1),
    (1, 0, 2),
    (0, 3, 0),
    (0, 2, 1),
    (0, 1, 2),
    (0, 0, 3),
)

QUAD_MONOMIALS = ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


def projective_points(field):
    """Canonical representatives of the projective plane over the field."""
    n = field.order
    pts = [(1, y, z) for y in range(n) for z in range(n)]
    pts += [(0, 1, z) for z in range(n)]
    pts.append((0, 0, 1))
    return pts


class CubicCurve:
    def __init__(self, field, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != 10:
            raise ValueError("a plane cubic takes ten coefficients")
        if all(c == 0 for c in coeffs):
            raise ValueError("the zero form is not a curve")
        for c in coeffs:
            if not 0 <= c < field.order:
                raise ValueError(f"coefficient {c} outside the field")
        self.field = field
        self.coeffs = coeffs

    def evaluate(self, point):
        fld = self.field
        x, y, z = point
        acc = 0
        for (i, j, k), c in zip(MONOMIALS, self.coeffs):
            if c == 0:
                continue
            term = c
            for base, exp in ((x, i), (y, j), (z, k)):
                for _ in range(exp):
                    term = fld.mul(term, base)
            acc = fld.add(acc, term)
        return acc

    def points(self):
        return [p for p in projective_points(self.field) if self.evaluate(p) == 0]

    def count_points(self):
        return len(self.points())

    def formal_partials(self):
        """Three coefficient dicts (quadratic monomial -> coeff)."""
        fld = self.field
        outs = ({}, {}, {})
        for (i, j, k), c in zip(MONOMIALS, self.coeffs):
            if c == 0:
                continue
            for axis, exp in enumerate((i, j, k)):
                scal = exp % fld.p
                if scal == 0:
                    continue
                mono = [i, j, k]
                mono[axis] -= 1
                mono = tuple(mono)
                val = c
                for _ in range(scal - 1):
                    val = fld.add(val, c)
                d = outs[axis]
                d[mono] = fld.add(d.get(mono, 0), val)
        return outs

    def is_singular_point(self, point):
        if self.evaluate(point) != 0:
            raise ValueError("the point is not on the curve")
        fld = self.field
        for partial in self.formal_partials():
            acc = 0
            for (i, j, k), c in partial.items():
                term = c
                for base, exp in zip(point, (i, j, k)):
                    for _ in range(exp):
                        term = fld.mul(term, base)
                acc = fld.add(acc, term)
            if acc != 0:
                return False
        return True


def _restriction_coeffs(field, coeffs, monomials, p1, p2, degree):
    """Coefficients of F(s*p1 + t*p2) as a binary form of the given degree."""
    out = [0] * (degree + 1)
    for mono, c in zip(monomials, coeffs):
        if c == 0:
            continue
        poly = [c]
        for axis, exp in enumerate(mono):
            lin = (p1[axis], p2[axis])
            for _ in range(exp):
                nxt = [0] * (len(poly) + 1)
                for d, pc in enumerate(poly):
                    if pc == 0:
                        continue
                    nxt[d] = field.add(nxt[d], field.mul(pc, lin[0]))
                    nxt[d + 1] = field.add(nxt[d + 1], field.mul(pc, lin[1]))
                poly = nxt
        for d, pc in enumerate(poly):
            out[d] = field.add(out[d], pc)
    return out


def _line_points(field, dual):
    rows = field.nullspace([list(dual)])
    assert len(rows) == 2
    return rows[0], rows[1]


def _contains_line(field, coeffs, monomials, degree, dual):
    p1, p2 = _line_points(field, dual)
    rest = _restriction_coeffs(field, coeffs, monomials, p1, p2, degree)
    return all(c == 0 for c in rest)


def _divide_by_line(field, coeffs, dual):
    """Quadratic Q with F = (a x + b y + c z) * Q, as six coefficients."""
    a, b, c = dual
    rows = {m: [0] * 6 for m in MONOMIALS}
    for qi, (i, j, k) in enumerate(QUAD_MONOMIALS):
        for axis, lc in enumerate((a, b, c)):
            if lc == 0:
                continue
            mono = [i, j, k]
            mono[axis] += 1
            mono = tuple(mono)
            rows[mono][qi] = field.add(rows[mono][qi], lc)
    mat = [rows[m] for m in MONOMIALS]
    rhs = list(coeffs)
    sol = field.solve(mat, rhs)
    assert sol is not None, "line division must succeed for a contained line"
    return tuple(sol)


@dataclass(frozen=True)
class CubicClassification:
    tag: str
    points: int

    def to_json(self):
        return {"class": self.tag, "points": self.points}


def classify_cubic(curve):
    field = curve.field
    q = field.order
    duals = projective_points(field)
    rational_line = None
    for dual in duals:
        if _contains_line(field, curve.coeffs, MONOMIALS, 3, dual):
            rational_line = dual
            break
    npts = curve.count_points()
    if rational_line is not None:
        quad = _divide_by_line(field, curve.coeffs, rational_line)
        if all(c == 0 for c in quad):
            raise AssertionError("division left the zero quadratic")
        for dual in duals:
            if _contains_line(field, quad, QUAD_MONOMIALS, 2, dual):
                return CubicClassification("three_rational_lines", npts)
        qpts = 0
        for p in projective_points(field):
            acc = 0
            for (i, j, k), c in zip(QUAD_MONOMIALS, quad):
                if c == 0:
                    continue
                term = c
                for base, exp in zip(p, (i, j, k)):
                    for _ in range(exp):
                        term = field.mul(term, base)
                acc = field.add(acc, term)
            if acc == 0:
                qpts += 1
        if qpts == 1:
            return CubicClassification("line_and_conjugate_pair", npts)
        assert qpts == q + 1, f"impossible conic point count {qpts}"
        return CubicClassification("line_plus_conic", npts)
    if npts == 0:
        return CubicClassification("three_conjugate_lines", npts)
    singular = None
    for p in curve.points():
        if curve.is_singular_point(p):
            singular = p
            break
    if singular is not None:
        if npts == 1:
            return CubicClassification("three_conjugate_lines", npts)
        return CubicClassification("singular_irreducible", npts)
    assert (npts - q - 1) ** 2 <= 4 * q, "smooth cubic outside the point bound"
    return CubicClassification("smooth", npts)


# ── witnesses built from cubic-extension norms ───────────────────────────────


def _tri_mul(field, poly_a, poly_b):
    out = {}
    for ma, ca in poly_a.items():
        for mb, cb in poly_b.items():
            m = (ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2])
            out[m] = field.add(out.get(m, 0), field.mul(ca, cb))
    return {m: c for m, c in out.items() if c != 0}


def norm_form_cubic(q, concurrent=False):
    """Product of three Frobenius-conjugate linear forms, as an F_q cubic.

    With concurrent=False the form is the norm of x + w*y + w^2*z for a
    generator w of the cubic extension: three conjugate lines in triangle
    position, no rational point.  With concurrent=True the z-slot is
    dropped, giving three conjugate lines through one rational point.
    Prime q only (the subfield embedding is the identity on digits there).
    """
    base = small_field(q)
    if base.m != 1:
        raise ValueError("norm-form witnesses are wired for prime q")
    ext = small_field(q ** 3)
    w = ext.exp[1]
    w2 = ext.mul(w, w)
    poly = {(0, 0, 0): 1}
    for i in range(3):
        a = ext.pow(w, q ** i)
        b = 0 if concurrent else ext.pow(w2, q ** i)
        factor = {(1, 0, 0): 1, (0, 1, 0): a}
        if b:
            factor[(0, 0, 1)] = b
        poly = _tri_mul(ext, poly, factor)
    coeffs = []
    for mono in MONOMIALS:
        c = poly.get(mono, 0)
        assert c < q, "norm coefficient escaped the prime subfield"
        coeffs.append(c)
    return CubicCurve(base, coeffs)


def random_cubic(field, rng):
    while True:
        coeffs = [rng.randrange(field.order) for _ in range(10)]
        if any(coeffs):
            return CubicCurve(field, coeffs)


EXPECTED_COUNTS = {
    "three_rational_lines": lambda q: {q + 1, 2 * q + 1, 3 * q, 3 * q + 1},
    "line_plus_conic": lambda q: {2 * q, 2 * q + 1, 2 * q + 2},
    "line_and_conjugate_pair": lambda q: {q + 1, q + 2},
    "three_conjugate_lines": lambda q: {0, 1},
    "singular_irreducible": lambda q: {q, q + 1, q + 2},
}


def count_is_plausible(tag, q, npts):
    if tag == "smooth":
        return (npts - q - 1) ** 2 <= 4 * q
    return npts in EXPECTED_COUNTS[tag](q)
