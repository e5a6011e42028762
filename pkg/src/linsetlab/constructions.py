"""Named rank-5 constructions and the census engine.

Every builder returns an FqSubspace of rank 5 inside the two-dimensional
space over the big field, specified by ten coordinates per generator
(five per slot).  Parameter constraints are checked up front and raise
ValueError naming the violated clause.

The census enumerates q-polynomial graphs.  Two strategies:

  exhaustive_all        every coefficient tuple (q = 2 only; 2^25 graphs)
  a1_zero_leading_one   one representative per orbit of the group generated
                        by adding multiples of the identity (shifts the
                        direction histogram, fixing a0 = 0) and scaling
                        (fixing the top nonzero of a1..a4 to 1)

The normalized strategy reaches every distribution the exhaustive one does;
the q = 2 acceptance run checks the two key sets match exactly.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass

import numpy as np

from . import _fast
from .linset import FqSubspace, WeightDistribution, classify
from .linpoly import QPolynomial

KINDS = (
    "scattered",
    "trace_club",
    "weight3_qsq",
    "weight3_q",
    "three_club",
    "family_gdd",
    "family_g5",
    "zanella",
)


# ── F_q-span helpers ─────────────────────────────────────────────────────────


def fq_span_dim(tower, elements):
    """Dimension over F_q of the span of the given big-field elements."""
    rows = [tower.fq_coordinates(x) for x in elements]
    return tower.rank(rows)


def in_fq_span(tower, x, elements):
    base = fq_span_dim(tower, elements)
    return fq_span_dim(tower, list(elements) + [x]) == base


def _require(cond, clause):
    if not cond:
        raise ValueError(clause)


def _pairs(tower, spec):
    """spec: list of (x, y) big-field pairs -> generator vectors."""
    return [(x, y) for x, y in spec]


def build(tower, kind, **params):
    """Construct a named rank-5 subspace; raises on bad parameters."""
    q = tower.q
    one = 1
    if kind == "scattered":
        spec = [(b, tower.frobenius(b, 1)) for b in tower.fq_basis]
    elif kind == "trace_club":
        spec = [(b, tower.trace_to_subfield(b)) for b in tower.fq_basis]
    elif kind == "weight3_qsq":
        alpha = params["alpha"]
        _require(
            tower.mul_order(alpha) == tower.order - 1,
            "alpha must generate the multiplicative group",
        )
        a2 = tower.mul(alpha, alpha)
        spec = [(one, 0), (alpha, 0), (a2, 0), (0, one), (0, alpha)]
    elif kind == "weight3_q":
        alpha, beta = params["alpha"], params["beta"]
        _require(
            tower.mul_order(alpha) == tower.order - 1,
            "alpha must generate the multiplicative group",
        )
        from .geometry import same_g_orbit

        _require(beta not in tower.subfield_elements, "beta must lie outside F_q")
        _require(
            not same_g_orbit(tower, alpha, beta),
            "beta must lie outside the fractional-linear orbit of alpha",
        )
        a2 = tower.mul(alpha, alpha)
        spec = [(one, 0), (alpha, 0), (a2, 0), (0, one), (0, beta)]
    elif kind == "three_club":
        alpha = params["alpha"]
        _require(
            tower.mul_order(alpha) == tower.order - 1,
            "alpha must generate the multiplicative group",
        )
        a2 = tower.mul(alpha, alpha)
        a3 = tower.mul(a2, alpha)
        a4 = tower.mul(a3, alpha)
        spec = [(alpha, 0), (a2, 0), (a3, 0), (a4, one), (0, alpha)]
    elif kind == "family_gdd":
        gamma, d1, d2 = params["gamma"], params["d1"], params["d2"]
        _require(gamma not in tower.subfield_elements, "gamma must lie outside F_q")
        spec = [
            (one, 0),
            (gamma, 0),
            (tower.mul(gamma, d1), tower.mul(gamma, d2)),
            (0, one),
            (0, gamma),
        ]
    elif kind == "family_g5":
        g0 = params["g0"]
        g1, g1p = params["g1"], params["g1p"]
        g2, g2p = params["g2"], params["g2p"]
        spec = [
            (one, 0),
            (g0, 0),
            (tower.mul(g0, g1), g1p),
            (g2, g2p),
            (0, one),
        ]
    elif kind == "zanella":
        alpha, beta = params["alpha"], params["beta"]
        lhs = tower.frobenius(alpha, 1)
        rhs = tower.mul(tower.frobenius(beta, 1), beta)
        _require(lhs != rhs, "alpha^q must differ from beta^{q+1}")
        spec = []
        for b in tower.fq_basis:
            b2 = tower.frobenius(b, 2)
            spec.append(
                (
                    tower.sub(b, tower.mul(alpha, b2)),
                    tower.sub(tower.frobenius(b, 1), tower.mul(beta, b2)),
                )
            )
    else:
        raise ValueError(f"unknown construction kind {kind!r}")

    sub = FqSubspace.span_from_vectors(tower, _pairs(tower, spec))
    _require(sub.rank == 5, "the chosen parameters span fewer than 5 dimensions")
    return sub


def find_weight3_q_beta(tower, alpha, rng):
    """Random beta outside F_q and outside alpha's fractional-linear orbit."""
    from .geometry import same_g_orbit

    sub = set(tower.subfield_elements)
    while True:
        beta = rng.randrange(1, tower.order)
        if beta in sub:
            continue
        if not same_g_orbit(tower, alpha, beta):
            return beta


def find_gdd_two_q_params(tower, rng, max_tries=200000):
    """Search parameters of family_gdd putting exactly 2q points at weight 2.

    The subcase requires gamma*d2 inside the span of {1, gamma, gamma^2,
    gamma*d1}, gamma*d1 outside the span of {1, gamma, gamma^2, gamma*d2},
    and {1, gamma, gamma^2, gamma*d1, gamma^2*d1} not of full rank.
    """
    n = tower.order
    sub = set(tower.subfield_elements)
    for _ in range(max_tries):
        gamma = rng.randrange(1, n)
        if gamma in sub:
            continue
        g2 = tower.mul(gamma, gamma)
        if fq_span_dim(tower, [1, gamma, g2]) != 3:
            continue
        d1 = rng.randrange(1, n)
        d2 = rng.randrange(1, n)
        gd1 = tower.mul(gamma, d1)
        gd2 = tower.mul(gamma, d2)
        if not in_fq_span(tower, gd2, [1, gamma, g2, gd1]):
            continue
        if in_fq_span(tower, gd1, [1, gamma, g2, gd2]):
            continue
        if fq_span_dim(tower, [1, gamma, g2, gd1, tower.mul(g2, d1)]) == 5:
            continue
        try:
            sub5 = build(tower, "family_gdd", gamma=gamma, d1=d1, d2=d2)
        except ValueError:
            continue
        dist = sub5.weight_distribution()
        if dist.counts_dict.get(2, 0) == 2 * tower.q and dist.max_weight == 2:
            return {"gamma": gamma, "d1": d1, "d2": d2}, dist
    raise RuntimeError("no parameters found within the try budget")


# ── census ───────────────────────────────────────────────────────────────────


@dataclass
class CensusResult:
    q: int
    strategy: str
    table: dict  # WeightDistribution -> count of representatives
    total: int
    elapsed: float
    partial: bool = False
    skipped: int = 0
    partitions: int = 1

    def sizes(self, proper_only=True):
        return sorted(
            {d.size for d in self.table if d.size > 1 or not proper_only}
        )

    def entries(self):
        rows = []
        for dist in sorted(self.table, key=lambda d: (d.size, d.counts)):
            cls = classify(self.q, dist)
            rows.append(
                {
                    "weights": {str(w): c for w, c in dist.counts},
                    "size": dist.size,
                    "class": cls.label,
                    "legal": cls.legal,
                    "count": self.table[dist],
                }
            )
        return rows

    def any_illegal(self):
        return any(classify(self.q, d).legal is False for d in self.table)

    def to_json(self):
        out = {
            "q": self.q,
            "strategy": self.strategy,
            "entries": self.entries(),
            "elapsed_s": round(self.elapsed, 3),
            "partitions": self.partitions,
        }
        if self.partial:
            out["partial"] = True
            out["sizes"] = self.sizes()
        if self.skipped:
            out["skipped"] = self.skipped
        return out


def _units_exhaustive(tower):
    n = tower.order
    for a4 in range(n):
        yield (f"a4={a4}", [a4], (0, n), (0, n), (0, n), (0, n))


def _units_normalized(tower):
    n = tower.order
    # top nonzero of a1..a4 scaled to 1; a0 fixed to 0
    for a3 in range(n):
        yield (f"k4.a3={a3}", [1], (a3, a3 + 1), (0, n), (0, n), (0, 1))
    yield ("k3", [0], (1, 2), (0, n), (0, n), (0, 1))
    yield ("k2", [0], (0, 1), (1, 2), (0, n), (0, 1))
    yield ("k1", [0], (0, 1), (0, 1), (1, 2), (0, 1))
    yield ("k0", [0], (0, 1), (0, 1), (0, 1), (0, 1))


STRATEGIES = {
    "exhaustive_all": _units_exhaustive,
    "a1_zero_leading_one": _units_normalized,
}


def _run_unit(tower, unit):
    tab = _fast.tables_for(tower)
    _, a4_vals, a3_rng, a2_rng, a1_rng, a0_rng = unit
    out = _fast.graph_census_block(
        tab.n,
        tab.mul,
        tab.div,
        tab.add,
        tab.wq,
        tab.frob,
        np.array(a4_vals, np.int64),
        np.array(a3_rng, np.int64),
        np.array(a2_rng, np.int64),
        np.array(a1_rng, np.int64),
        np.array(a0_rng, np.int64),
    )
    return dict(out)


def _merge(into, part):
    for k, v in part.items():
        into[k] = into.get(k, 0) + v


_worker_tower = None


def _pool_init(p, e):
    global _worker_tower
    from .gf import build_tower

    _worker_tower = build_tower(p, e)


def _pool_run(unit):
    return _run_unit(_worker_tower, unit)


def census(tower, strategy, jobs=1, checkpoint_dir=None, progress=None):
    """Enumerate graph distributions under the given strategy.

    With checkpoint_dir set, each finished unit is written to a JSON file
    and previously finished units are loaded instead of recomputed, so an
    interrupted run resumes where it stopped.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown census strategy {strategy!r}")
    if strategy == "exhaustive_all" and tower.q != 2:
        raise ValueError("the exhaustive strategy is only budgeted for q = 2")
    units = list(STRATEGIES[strategy](tower))
    start = time.monotonic()
    raw = {}
    pending = []
    for unit in units:
        part = _load_checkpoint(checkpoint_dir, strategy, unit[0])
        if part is not None:
            _merge(raw, part)
        else:
            pending.append(unit)
    if jobs <= 1 or len(pending) <= 1:
        for unit in pending:
            part = _run_unit(tower, unit)
            _save_checkpoint(checkpoint_dir, strategy, unit[0], part)
            _merge(raw, part)
            if progress:
                progress(unit[0])
    else:
        import concurrent.futures as cf

        with cf.ProcessPoolExecutor(
            max_workers=jobs,
            initializer=_pool_init,
            initargs=(tower.p, tower.e),
        ) as pool:
            futs = {pool.submit(_pool_run, u): u for u in pending}
            for fut in cf.as_completed(futs):
                unit = futs[fut]
                part = fut.result()
                _save_checkpoint(checkpoint_dir, strategy, unit[0], part)
                _merge(raw, part)
                if progress:
                    progress(unit[0])
    elapsed = time.monotonic() - start
    if -1 in raw:
        raise RuntimeError("a graph produced a non-geometric direction histogram")
    table = {}
    total = 0
    for key, cnt in raw.items():
        counts = _fast.unpack_key(key)
        dist = WeightDistribution.from_counts(tower.q, 5, counts)
        table[dist] = table.get(dist, 0) + cnt
        total += cnt
    return CensusResult(
        tower.q, strategy, table, total, elapsed, partitions=len(units)
    )


def _ckpt_path(checkpoint_dir, strategy, name):
    safe = name.replace("=", "_").replace(".", "_")
    return os.path.join(checkpoint_dir, f"{strategy}.{safe}.json")


def _load_checkpoint(checkpoint_dir, strategy, name):
    if not checkpoint_dir:
        return None
    path = _ckpt_path(checkpoint_dir, strategy, name)
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        data = json.load(fh)
    if data.get("unit") != name:
        return None
    return {int(k): v for k, v in data["table"].items()}


def _save_checkpoint(checkpoint_dir, strategy, name, part):
    if not checkpoint_dir:
        return
    os.makedirs(checkpoint_dir, exist_ok=True)
    path = _ckpt_path(checkpoint_dir, strategy, name)
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump({"unit": name, "table": {str(k): v for k, v in part.items()}}, fh)
    os.replace(tmp, path)


# ── partial census over parameterized families (q = 4) ──────────────────────


def zanella_sweep(tower):
    """Distribution -> pair count over all legal Zanella parameters."""
    t0 = time.monotonic()
    tab = _fast.tables_for(tower)
    out = _fast.zanella_sweep(
        tab.n, tab.mul, tab.div, tab.add, tab.neg, tab.wq, tab.frob
    )
    raw = dict(out)
    skipped = raw.pop(-2, 0)
    if -1 in raw:
        raise RuntimeError("a parameter pair produced a non-geometric histogram")
    table = {}
    total = 0
    for key, cnt in raw.items():
        dist = WeightDistribution.from_counts(tower.q, 5, _fast.unpack_key(key))
        table[dist] = table.get(dist, 0) + cnt
        total += cnt
    return CensusResult(
        tower.q,
        "zanella_sweep",
        table,
        total,
        time.monotonic() - t0,
        partial=True,
        skipped=skipped,
    )


def third_point_plane_sweep(tower):
    """Projection distributions over the plane family through two fixed points.

    The two fixed spanning points are (1, a, a^2, a^3, 0) and its q-power
    companion for a generator a; the third point runs over (l1..l4, g) with
    l in F_q^4 nonzero and g outside F_q.  Characteristic 2 only (q = 4 in
    practice).
    """
    if tower.p != 2:
        raise ValueError("the plane-family sweep is wired for characteristic 2")
    from .geometry import sigma_points

    t0 = time.monotonic()
    tab = _fast.tables_for(tower)
    a = tower.primitive_element()
    row1 = [1, a, tower.mul(a, a), tower.mul(tower.mul(a, a), a), 0]
    row2 = [tower.frobenius(x, 1) for x in row1]
    psi_rows = tower.nullspace([row1, row2])
    assert len(psi_rows) == 3
    psi = np.array(psi_rows, np.uint16)
    lam_rows = []
    q = tower.q
    for code in range(1, q ** 4):
        digs = []
        v = code
        for _ in range(4):
            digs.append(v % q)
            v //= q
        lam = [tower.subfield_elements[d] for d in digs]
        row = []
        for i in range(3):
            acc = 0
            for j in range(4):
                acc = tower.add(acc, tower.mul(psi_rows[i][j], lam[j]))
            row.append(acc)
        lam_rows.append(row)
    dvals_lam = np.array(lam_rows, np.uint16)
    pts = np.array(sigma_points(tower), np.uint16)
    fibw = np.full(tab.n + 2, 255, np.uint8)
    for w in range(1, 6):
        size = (q ** w - 1) // (q - 1)
        if size <= tab.n + 1:
            fibw[size] = w
    out = _fast.plane_family_sweep(
        pts.shape[0],
        pts,
        psi,
        dvals_lam,
        tab.n,
        tab.mul,
        tab.div,
        tab.add,
        tab.neg,
        tab.insub,
        fibw[: tab.n + 1].copy(),
    )
    raw = dict(out)
    meets = raw.pop(-3, 0)
    if -1 in raw:
        raise RuntimeError("a plane produced non-geometric fiber sizes")
    table = {}
    total = 0
    for key, cnt in raw.items():
        dist = WeightDistribution.from_counts(tower.q, 5, _fast.unpack_key(key))
        table[dist] = table.get(dist, 0) + cnt
        total += cnt
    return CensusResult(
        tower.q,
        "third_point_planes",
        table,
        total,
        time.monotonic() - t0,
        partial=True,
        skipped=meets,
    )


def gf2_subspaces(ambient_dim, k):
    """All k-dimensional F_2-subspaces of F_2^ambient_dim.

    Bases come out as rows of reduced echelon matrices, each row packed
    little-endian into an int, so for the (2, 1) tower a row is directly a
    field-element encoding.
    """
    import itertools

    out = []
    cols = range(ambient_dim)
    for pivots in itertools.combinations(cols, k):
        free_slots = []
        for i, p in enumerate(pivots):
            for j in range(p + 1, ambient_dim):
                if j not in pivots:
                    free_slots.append((i, j))
        for bits in range(1 << len(free_slots)):
            rows = [1 << p for p in pivots]
            for s, (i, j) in enumerate(free_slots):
                if bits & (1 << s):
                    rows[i] |= 1 << j
            out.append(tuple(rows))
    return out


def rank_le_4_census(tower, k):
    """Exhaustive distribution table of rank-k graph subspaces, q = 2.

    Sweeps every k-dimensional x-side space W and every map W -> field,
    i.e. every k-dimensional subspace meeting the y-axis trivially; the
    remaining rank-k subspaces are y-axis cylinders whose sets are single
    points, covered by the {k: 1} key this sweep also produces.
    """
    if tower.p != 2 or tower.e != 1:
        raise ValueError("the exhaustive low-rank sweep is wired for q = 2")
    if not 2 <= k <= 4:
        raise ValueError("k must be between 2 and 4")
    tab = _fast.tables_for(tower)
    wb = np.array(gf2_subspaces(5, k), np.uint16)
    out = _fast.rank_le4_graph_census(tab.n, tab.div, wb, tab.n ** k)
    raw = dict(out)
    if -1 in raw:
        raise RuntimeError("a graph produced a non-geometric direction histogram")
    table = {}
    total = 0
    for key, cnt in raw.items():
        dist = WeightDistribution.from_counts(tower.q, k, _fast.unpack_key(key))
        table[dist] = table.get(dist, 0) + cnt
        total += cnt
    return CensusResult(tower.q, f"rank{k}_exhaustive", table, total, 0.0)


def merge_partial(results, name=None):
    """Pointwise union of partial censuses (counts added)."""
    assert results
    q = results[0].q
    table = {}
    total = 0
    skipped = 0
    parts = 0
    elapsed = 0.0
    for res in results:
        assert res.q == q
        for dist, cnt in res.table.items():
            table[dist] = table.get(dist, 0) + cnt
        total += res.total
        skipped += res.skipped
        parts += res.partitions
        elapsed += res.elapsed
    if name is None:
        name = "+".join(r.strategy for r in results)
    return CensusResult(
        q, name, table, total, elapsed, partial=True, skipped=skipped, partitions=parts
    )


def named_family_table(tower):
    """One distribution per parameter-free named family (canonical params)."""
    t0 = time.monotonic()
    alpha = tower.primitive_element()
    import random

    beta = find_weight3_q_beta(tower, alpha, random.Random(0))
    specs = [
        ("scattered", {}),
        ("trace_club", {}),
        ("weight3_qsq", {"alpha": alpha}),
        ("weight3_q", {"alpha": alpha, "beta": beta}),
        ("three_club", {"alpha": alpha}),
    ]
    table = {}
    for kind, kw in specs:
        dist = build(tower, kind, **kw).weight_distribution()
        table[dist] = table.get(dist, 0) + 1
    return CensusResult(
        tower.q,
        "named_families",
        table,
        len(specs),
        time.monotonic() - t0,
        partial=True,
    )


def family_sweep(tower):
    """Partial census from the parameterized families and named examples."""
    parts = [zanella_sweep(tower), named_family_table(tower)]
    if tower.q == 4:
        parts.append(third_point_plane_sweep(tower))
    return merge_partial(parts, name="family_sweep")
