"""Per-q verification batteries checking published distribution tables.

Each check returns (name, ok, detail); the CLI prints one line per check
and exits nonzero if any fails.  The q=2 battery runs the full exhaustive
census, q=3 the normalized one, q=4 the family sweeps.
"""

from __future__ import annotations

from .constructions import (
    census,
    family_sweep,
    named_family_table,
    zanella_sweep,
)
from .gf import tower_for_q
from .linset import classify

EXPECTED_SIZES = {
    2: {17, 19, 21, 23, 25, 27, 31},
    3: {82, 91, 97, 100, 103, 106, 109, 112, 115, 121},
    4: {257, 273, 301, 305, 309, 313, 317, 321, 325, 329, 333, 341},
}

EXPECTED_W2_SET = {
    # weight-2-only keys: their weight-2 multiplicities
    2: {2, 3, 4, 5, 6},
    3: {2, 3, 4, 5, 6, 7, 8, 10},
}


def _proper(table):
    return {d: c for d, c in table.items() if d.size > 1}


def _check_census_tables(q, res):
    checks = []
    table = _proper(res.table)
    sizes = {d.size for d in table}
    checks.append(
        (
            f"q={q} census size set",
            sizes == EXPECTED_SIZES[q],
            f"{sorted(sizes)} vs {sorted(EXPECTED_SIZES[q])}",
        )
    )
    tags = {classify(q, d).tag for d in table}
    two_clubs = [d for d in table if classify(q, d).tag == "club" and classify(q, d).param == 2]
    checks.append((f"q={q} no 2-clubs", not two_clubs, f"{len(two_clubs)} found"))
    w2 = {
        d.counts_dict[2]
        for d in table
        if d.max_weight == 2 and d.counts_dict.get(2, 0) >= 2
    }
    checks.append(
        (
            f"q={q} weight-2 multiplicities",
            w2 == EXPECTED_W2_SET[q],
            f"{sorted(w2)} vs {sorted(EXPECTED_W2_SET[q])}",
        )
    )
    w3 = {d.counts_dict.get(2, 0) for d in table if d.max_weight == 3}
    checks.append(
        (
            f"q={q} weight-3 companion counts",
            w3 == {0, q, q * q},
            f"{sorted(w3)} vs {sorted({0, q, q * q})}",
        )
    )
    illegal = [d for d in table if classify(q, d).legal is False]
    checks.append((f"q={q} all keys legal", not illegal, f"{len(illegal)} illegal"))
    checks.append(("tags seen", True, ",".join(sorted(tags))))
    return checks


def _battery_q2(jobs, checkpoint_dir):
    tower = tower_for_q(2)
    res = census(tower, "exhaustive_all", jobs=jobs, checkpoint_dir=checkpoint_dir)
    checks = [
        (
            "q=2 exhaustive census total",
            res.total == 2 ** 25,
            f"{res.total} graphs in {res.elapsed:.1f}s",
        )
    ]
    checks += _check_census_tables(2, res)
    zres = zanella_sweep(tower)
    checks.append(
        (
            "q=2 zanella sizes",
            zres.sizes() == [19, 21, 23, 25],
            f"{zres.sizes()}",
        )
    )
    from .geometry import g_orbit_count

    checks.append(("q=2 direction orbits", g_orbit_count(tower) == 5, ""))
    from .linpoly import trace_polynomial
    from .rdcode import rank_spectrum

    tdist = trace_polynomial(tower).graph_weight_distribution()
    checks.append(
        ("q=2 trace graph", tdist.counts == ((1, 16), (4, 1)), f"{tdist.counts}")
    )
    import random

    from .linpoly import random_qpolynomial

    rng = random.Random(1)
    target = ((1, 18), (2, 2), (3, 1))
    f = None
    while f is None:
        cand = random_qpolynomial(tower, rng)
        if cand.graph_weight_distribution().counts == target:
            f = cand
    spec = rank_spectrum(tower, f)
    checks.append(
        (
            "q=2 rank spectrum worked example",
            spec.counts_dict == {2: 31, 3: 62, 4: 558, 5: 372},
            f"{spec.counts_dict}",
        )
    )
    return checks, res


def _battery_q3(jobs, checkpoint_dir):
    tower = tower_for_q(3)
    res = census(tower, "a1_zero_leading_one", jobs=jobs, checkpoint_dir=checkpoint_dir)
    checks = [
        (
            "q=3 normalized census total",
            res.total == 243 ** 3 + 243 ** 2 + 243 + 1 + 1,
            f"{res.total} graphs in {res.elapsed:.1f}s",
        )
    ]
    checks += _check_census_tables(3, res)
    from .geometry import g_orbit_count

    checks.append(("q=3 direction orbits", g_orbit_count(tower) == 10, ""))
    return checks, res


def _battery_q4(jobs, checkpoint_dir):
    tower = tower_for_q(4)
    res = family_sweep(tower)
    sizes = set(res.sizes())
    checks = [
        (
            "q=4 family sweep containment",
            sizes <= EXPECTED_SIZES[4],
            f"{sorted(sizes)}",
        ),
        (
            "q=4 family sweep realizes all sizes",
            sizes == EXPECTED_SIZES[4],
            f"missing {sorted(EXPECTED_SIZES[4] - sizes)}",
        ),
    ]
    zres = zanella_sweep(tower)
    zsizes = set(zres.sizes())
    checks.append(
        (
            "q=4 zanella realizes all but 257",
            zsizes == EXPECTED_SIZES[4] - {257},
            f"{sorted(zsizes)}",
        )
    )
    named = named_family_table(tower)
    checks.append(
        (
            "q=4 named families reach 257",
            257 in {d.size for d in named.table},
            "",
        )
    )
    illegal = [d for d in res.table if classify(4, d).legal is False]
    checks.append(("q=4 all keys legal", not illegal, f"{len(illegal)} illegal"))
    from .geometry import g_orbit_count

    checks.append(("q=4 direction orbits", g_orbit_count(tower) == 17, ""))
    return checks, res


BATTERIES = {2: _battery_q2, 3: _battery_q3, 4: _battery_q4}


def run_battery(q, jobs=1, checkpoint_dir=None):
    """Returns (lines, ok, census_result) for the published tables at q."""
    if q not in BATTERIES:
        raise ValueError(f"no published verification table for q={q}")
    checks, res = BATTERIES[q](jobs, checkpoint_dir)
    lines = []
    ok = True
    for name, passed, detail in checks:
        status = "ok" if passed else "FAIL"
        ok = ok and passed
        suffix = f": {detail}" if detail else ""
        lines.append(f"{status:4s} {name}{suffix}")
    lines.append(f"sizes: {res.sizes()}")
    return lines, ok, res
