"""Finite field towers F_p < F_q < F_{q^5} with integer-encoded elements.

An element of GF(p^m) is encoded as a single integer n with 0 <= n < p^m.
The base-p digits of n, least significant first, are the coordinates of the
element over F_p in the power basis 1, t, t^2, ..., t^{m-1} of the modulus
root t.  For p = 2 this makes addition a XOR; for odd p addition works on
digits.  Multiplication, inversion and division go through exp/log tables
built at construction time by repeated multiplication with t.

A FieldTower is GF(p^{5e}) together with its intermediate field F_q, q = p^e:
the q-power Frobenius, the trace down to F_q, the subfield element list and
F_q-coordinates with respect to the power basis 1, t, t^2, t^3, t^4 (which is
an F_q-basis because t has degree 5 over F_q).

Shipped moduli live in moduli.txt next to this file; the environment variable
LINSETLAB_MODULI overrides that path.  A modulus whose root is not primitive
is rejected at construction time: the exp table must enumerate every nonzero
element before cycling, which also certifies irreducibility.
"""

from __future__ import annotations

import math
import os
from functools import lru_cache

_MODULI_ENV = "LINSETLAB_MODULI"
_MODULI_FILE = os.path.join(os.path.dirname(__file__), "moduli.txt")

SUPPORTED_TOWERS = ((2, 1), (3, 1), (5, 1), (2, 2))


class GF:
    """Arithmetic for GF(p^m) on integer encodings.

    Parameters
    ----------
    p : int
        Prime characteristic.
    m : int
        Extension degree over the prime field.
    modulus : sequence of int
        Monic degree-m polynomial over F_p, coefficients low to high.
        Its root t must generate the multiplicative group.
    """

    def __init__(self, p, m, modulus):
        if len(modulus) != m + 1 or modulus[-1] % p != 1:
            raise ValueError(f"modulus must be monic of degree {m}")
        self.p = p
        self.m = m
        self.order = p ** m
        self.modulus = tuple(c % p for c in modulus)
        # t^m = sum(reduction[i] * t^i)
        self._reduction = tuple((-c) % p for c in self.modulus[:m])
        self._build_exp_log()
        self._add_table = None
        if p != 2 and self.order <= 2048:
            self._add_table = [
                [self._add_digits(a, b) for b in range(self.order)]
                for a in range(self.order)
            ]

    # ── construction ────────────────────────────────────────────────

    def _mul_by_t(self, v):
        digs = self.digits(v)
        top = digs[-1]
        digs = [0] + digs[:-1]
        if top:
            red = self._reduction
            digs = [(digs[i] + top * red[i]) % self.p for i in range(self.m)]
        return self.from_digits(digs)

    def _build_exp_log(self):
        order = self.order
        exp = [0] * (order - 1)
        log = [-1] * order
        x = 1
        for k in range(order - 1):
            if log[x] != -1:
                raise ValueError(
                    f"modulus {self.modulus} over F_{self.p}: root is not primitive"
                )
            exp[k] = x
            log[x] = k
            x = self._mul_by_t(x)
        if x != 1:
            raise ValueError(
                f"modulus {self.modulus} over F_{self.p}: root is not primitive"
            )
        self.exp = exp
        self.log = log

    # ── encodings ───────────────────────────────────────────────────

    def digits(self, v):
        """Base-p digit vector of an encoding, least significant first."""
        if not 0 <= v < self.order:
            raise ValueError(f"encoding {v} out of range for order {self.order}")
        p = self.p
        out = []
        for _ in range(self.m):
            out.append(v % p)
            v //= p
        return out

    def from_digits(self, digs):
        v = 0
        for d in reversed(digs):
            v = v * self.p + d % self.p
        return v

    def elements(self):
        return range(self.order)

    # ── arithmetic ──────────────────────────────────────────────────

    def _add_digits(self, a, b):
        p = self.p
        out = 0
        mul = 1
        while a or b:
            out += ((a + b) % p) * mul
            a //= p
            b //= p
            mul *= p
        return out

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        t = self._add_table
        if t is not None:
            return t[a][b]
        return self._add_digits(a, b)

    def neg(self, a):
        if self.p == 2:
            return a
        p = self.p
        out = 0
        mul = 1
        while a:
            out += (-a % p) * mul
            a //= p
            mul *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.order - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(-self.log[a]) % (self.order - 1)]

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if a == 0:
            return 0
        return self.exp[(self.log[a] - self.log[b]) % (self.order - 1)]

    def pow(self, a, k):
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0 if k else 1
        return self.exp[(self.log[a] * k) % (self.order - 1)]

    def mul_order(self, a):
        """Multiplicative order; order-1 means primitive."""
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.order - 1
        return n // math.gcd(n, self.log[a])

    # ── linear algebra on encodings ─────────────────────────────────
    # Rows are lists of encodings.  Pivoting always takes the first
    # nonzero entry in column order, so the reduced form is canonical.

    def rref(self, rows):
        mat = [list(r) for r in rows]
        if not mat:
            return []
        ncols = len(mat[0])
        pivots = []
        r = 0
        for c in range(ncols):
            pr = None
            for i in range(r, len(mat)):
                if mat[i][c] != 0:
                    pr = i
                    break
            if pr is None:
                continue
            mat[r], mat[pr] = mat[pr], mat[r]
            pivinv = self.inv(mat[r][c])
            mat[r] = [self.mul(pivinv, x) for x in mat[r]]
            for i in range(len(mat)):
                if i != r and mat[i][c] != 0:
                    f = mat[i][c]
                    row_i, row_r = mat[i], mat[r]
                    for j in range(c, ncols):
                        if row_r[j]:
                            row_i[j] = self.sub(row_i[j], self.mul(f, row_r[j]))
            pivots.append(c)
            r += 1
            if r == len(mat):
                break
        return [mat[i] for i in range(r)]

    def rank(self, rows):
        return len(self.rref(rows))

    def rref_key(self, rows):
        """Hashable canonical form of the row space."""
        return tuple(tuple(r) for r in self.rref(rows))

    def nullspace(self, rows):
        """Basis of {x : M x = 0} for the matrix with the given rows."""
        if not rows:
            return []
        ncols = len(rows[0])
        red = self.rref(rows)
        piv = []
        for r in red:
            for c, v in enumerate(r):
                if v != 0:
                    piv.append(c)
                    break
        free = [c for c in range(ncols) if c not in piv]
        basis = []
        for fc in free:
            vec = [0] * ncols
            vec[fc] = 1
            for r, pc in zip(red, piv):
                vec[pc] = self.neg(r[fc])
            basis.append(vec)
        return basis

    def solve(self, rows, rhs):
        """One solution of M x = rhs, or None if inconsistent."""
        if not rows:
            return None
        ncols = len(rows[0])
        aug = [list(r) + [b] for r, b in zip(rows, rhs)]
        red = self.rref(aug)
        sol = [0] * ncols
        for r in red:
            pc = next((c for c, v in enumerate(r) if v != 0), None)
            if pc is None:
                continue
            if pc == ncols:
                return None
            sol[pc] = r[ncols]
        return sol


@lru_cache(maxsize=None)
def _small_modulus(p, m):
    """Smallest (by encoding of the coefficient vector) primitive monic polynomial."""
    if m == 1:
        for r in range(2, p):
            ok = True
            x = 1
            for _ in range(p - 2):
                x = x * r % p
                if x == 1:
                    ok = False
                    break
            if ok and x * r % p == 1:
                return (-r % p, 1)
        return (-1 % p, 1) if p == 2 else None
    for code in range(p ** m):
        digs = []
        v = code
        for _ in range(m):
            digs.append(v % p)
            v //= p
        cand = tuple(digs) + (1,)
        try:
            GF(p, m, cand)
        except ValueError:
            continue
        return cand
    raise ValueError(f"no primitive polynomial found for GF({p}^{m})")


@lru_cache(maxsize=None)
def small_field(q):
    """GF(q) for small prime powers, used for plane curve work."""
    p, m = _factor_prime_power(q)
    if q > 4096:
        raise ValueError(f"small_field supports orders up to 4096, got {q}")
    return GF(p, m, _small_modulus(p, m))


def _factor_prime_power(q):
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            v = q
            while v % p == 0:
                v //= p
                m += 1
            if v != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, m
    raise ValueError(f"{q} is not a prime power")


def _read_moduli(path):
    table = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = [int(x) for x in line.split()]
            p, e, coeffs = parts[0], parts[1], parts[2:]
            table[(p, e)] = tuple(coeffs)
    return table


class FieldTower(GF):
    """GF(p^{5e}) with its intermediate field F_q, q = p^e.

    Beyond plain GF arithmetic this carries the q-power Frobenius tables,
    the trace onto F_q, the list of subfield elements and coordinates over
    F_q in the basis 1, t, t^2, t^3, t^4.
    """

    def __init__(self, p, e, modulus):
        super().__init__(p, 5 * e, modulus)
        self.e = e
        self.q = p ** e
        q, order = self.q, self.order
        frob1 = [self.pow(x, q) for x in range(order)]
        frob = [list(range(order)), frob1]
        for _ in range(3):
            prev = frob[-1]
            frob.append([frob1[x] for x in prev])
        self._frob = frob
        tr = []
        for x in range(order):
            s = 0
            for i in range(5):
                s = self.add(s, frob[i][x])
            tr.append(s)
        self._trace = tr
        self.subfield_elements = tuple(x for x in range(order) if frob1[x] == x)
        if len(self.subfield_elements) != q:
            raise ValueError("subfield size mismatch; modulus is unusable")
        self.fq_basis = tuple(self.pow(self.exp[1], i) for i in range(5))
        self._fq_coord_table = self._build_fq_coords()

    def _build_fq_coords(self):
        p, e, m = self.p, self.e, self.m
        if e == 1:
            return None
        # F_p-basis t^i * w^j of the full field, w a generator of F_q.
        w = self.exp[(self.order - 1) // (self.q - 1)]
        cols = []
        for i in range(5):
            for j in range(e):
                cols.append(self.digits(self.mul(self.fq_basis[i], self.pow(w, j))))
        # invert the m x m change-of-basis matrix over F_p
        aug = [[cols[c][r] for c in range(m)] + [int(k == r) for k in range(m)]
               for r in range(m)]
        inv = _invert_mod_p(aug, m, p)
        table = []
        for x in range(self.order):
            digs = self.digits(x)
            coeffs = [sum(inv[r][c] * digs[c] for c in range(m)) % p for r in range(m)]
            coords = []
            for i in range(5):
                ci = 0
                for j in range(e):
                    ci = self.add(ci, self.mul(coeffs[i * e + j], self.pow(w, j)))
                coords.append(ci)
            table.append(tuple(coords))
        return table

    # ── tower structure ─────────────────────────────────────────────

    def frobenius(self, x, i=1):
        """x raised to the q^i power; i is taken mod 5."""
        return self._frob[i % 5][x]

    def trace_to_subfield(self, x):
        """Sum of the five q-power conjugates; lands in F_q."""
        return self._trace[x]

    def in_subfield(self, x):
        return self._frob[1][x] == x

    def fq_coordinates(self, x):
        """Coordinates of x over F_q in the basis 1, t, t^2, t^3, t^4.

        Returns a 5-tuple of subfield elements (as tower encodings).
        """
        if self.e == 1:
            return tuple(self.digits(x))
        return self._fq_coord_table[x]

    def from_fq_coordinates(self, coords):
        acc = 0
        for c, b in zip(coords, self.fq_basis):
            acc = self.add(acc, self.mul(c, b))
        return acc

    def primitive_element(self):
        return self.exp[1]


def _invert_mod_p(aug, m, p):
    """Invert an m x m matrix over F_p given as augmented [A | I] rows."""
    for c in range(m):
        pr = next((i for i in range(c, m) if aug[i][c] % p), None)
        if pr is None:
            raise ValueError("basis matrix is singular")
        aug[c], aug[pr] = aug[pr], aug[c]
        pivinv = pow(aug[c][c], -1, p)
        aug[c] = [v * pivinv % p for v in aug[c]]
        for i in range(m):
            if i != c and aug[i][c] % p:
                f = aug[i][c]
                aug[i] = [(aug[i][j] - f * aug[c][j]) % p for j in range(2 * m)]
    return [row[m:] for row in aug]


_tower_cache = {}


def build_tower(p, e, moduli_path=None):
    """FieldTower for F_{p^e} < F_{p^{5e}}.

    The modulus comes from the table file (LINSETLAB_MODULI overrides the
    shipped one).  Towers are cached per (p, e, path).
    """
    if (p, e) not in SUPPORTED_TOWERS:
        raise ValueError(
            f"unsupported tower ({p},{e}); supported: {sorted(SUPPORTED_TOWERS)}"
        )
    if p ** (5 * e) > 2 ** 20:
        raise ValueError(f"field order {p ** (5 * e)} exceeds the 2^20 bound")
    path = moduli_path or os.environ.get(_MODULI_ENV) or _MODULI_FILE
    key = (p, e, os.path.abspath(path))
    tower = _tower_cache.get(key)
    if tower is None:
        table = _read_moduli(path)
        if (p, e) not in table:
            raise ValueError(f"no modulus for tower ({p},{e}) in {path}")
        tower = FieldTower(p, e, table[(p, e)])
        _tower_cache[key] = tower
    return tower


_Q_TO_TOWER = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1)}


def tower_for_q(q, moduli_path=None):
    """Tower whose intermediate field is F_q, for q in {2, 3, 4, 5}."""
    if q not in _Q_TO_TOWER:
        raise ValueError(f"no supported tower with q={q}")
    p, e = _Q_TO_TOWER[q]
    return build_tower(p, e, moduli_path)
