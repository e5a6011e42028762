"""Command-line surface.

Subcommands: weights, census, verify, omega2-line, omega2-plane, project,
cubic, rank-spectrum.  Element inputs are integer encodings (base-p digits
of power-basis coordinates, least significant first).  Reports go to
standard output as JSON with sorted keys, or CSV with --format csv;
--out writes the same report to a file as well.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .gf import SUPPORTED_TOWERS, build_tower, tower_for_q


class CliError(Exception):
    pass


def _tower_from_args(args):
    if getattr(args, "p", None) is not None:
        e = args.e if args.e is not None else 1
        try:
            return build_tower(args.p, e)
        except ValueError as exc:
            raise CliError(f"unsupported field pair p={args.p} e={e}: {exc}")
    if args.q is None:
        raise CliError("one of --q or --p is required")
    try:
        return tower_for_q(args.q)
    except ValueError:
        supported = sorted(p ** e for p, e in SUPPORTED_TOWERS)
        raise CliError(f"unsupported q={args.q}; supported: {supported}")


def _parse_ints(text, count, what):
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != count:
        raise CliError(f"{what} needs {count} comma-separated values, got {len(parts)}")
    try:
        vals = [int(s) for s in parts]
    except ValueError:
        raise CliError(f"{what} contains a non-integer entry")
    return vals


def _check_encodings(tower, vals, what):
    for v in vals:
        if not 0 <= v < tower.order:
            raise CliError(
                f"{what} entry {v} is outside the field of order {tower.order}"
            )
    return vals


def _parse_rows(tower, text, nrows, what):
    rows = [s for s in text.split(";") if s.strip()]
    if len(rows) != nrows:
        raise CliError(f"{what} needs {nrows} semicolon-separated rows")
    return [_check_encodings(tower, _parse_ints(r, 5, what), what) for r in rows]


def _parse_params(text):
    out = {}
    if not text:
        return out
    for item in text.split(","):
        if "=" not in item:
            raise CliError(f"parameter {item!r} is not name=value")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = int(v)
        except ValueError:
            raise CliError(f"parameter {k!r} has non-integer value {v!r}")
    return out


def _emit(payload, args, csv_rows=None):
    text = json.dumps(payload, sort_keys=True, indent=2)
    if args.format == "csv":
        if csv_rows is None:
            raise CliError("this subcommand has no CSV form")
        text = "\n".join(",".join(str(c) for c in row) for row in csv_rows)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")


def _dist_csv(dist_json):
    rows = [("weight", "points")]
    for w in sorted(dist_json["weights"], key=int):
        rows.append((w, dist_json["weights"][w]))
    rows.append(("size", dist_json["size"]))
    rows.append(("class", dist_json["class"]))
    return rows


def _cmd_weights(args):
    tower = _tower_from_args(args)
    from .constructions import build
    from .linpoly import QPolynomial

    if args.poly is not None:
        coeffs = _check_encodings(
            tower, _parse_ints(args.poly, 5, "--poly"), "--poly"
        )
        f = QPolynomial(tower, coeffs)
        dist = f.graph_weight_distribution()
    elif args.construction is not None:
        params = _parse_params(args.params)
        try:
            sub = build(tower, args.construction, **params)
        except (ValueError, KeyError) as exc:
            raise CliError(f"construction rejected: {exc}")
        dist = sub.weight_distribution()
    else:
        raise CliError("weights needs --poly or --construction")
    payload = dist.to_json()
    _emit(payload, args, _dist_csv(payload))
    return 0


def _cmd_census(args):
    tower = _tower_from_args(args)
    from .constructions import STRATEGIES, census, family_sweep

    jobs = args.jobs if args.jobs else (os.cpu_count() or 1)
    if args.strategy == "family_sweep":
        res = family_sweep(tower)
    elif args.strategy in STRATEGIES:
        res = census(
            tower, args.strategy, jobs=jobs, checkpoint_dir=args.checkpoint
        )
    else:
        known = sorted(STRATEGIES) + ["family_sweep"]
        raise CliError(f"unknown strategy {args.strategy!r}; known: {known}")
    payload = res.to_json()
    rows = [("weights", "size", "class", "legal", "count")]
    for ent in payload["entries"]:
        wstr = " ".join(f"{w}:{c}" for w, c in sorted(ent["weights"].items()))
        rows.append((wstr, ent["size"], ent["class"], ent["legal"], ent["count"]))
    _emit(payload, args, rows)
    return 1 if res.any_illegal() else 0


def _cmd_verify(args):
    from .verify import run_battery

    if args.q is None:
        raise CliError("verify needs --q")
    try:
        lines, ok, _ = run_battery(args.q, jobs=args.jobs or 1, checkpoint_dir=args.checkpoint)
    except ValueError as exc:
        raise CliError(str(exc))
    report = "\n".join(lines)
    print(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report + "\n")
    return 0 if ok else 1


def _cmd_omega2_line(args):
    tower = _tower_from_args(args)
    from .geometry import line_omega2_profile

    p1 = _check_encodings(tower, _parse_ints(args.p1, 5, "--p1"), "--p1")
    p2 = _check_encodings(tower, _parse_ints(args.p2, 5, "--p2"), "--p2")
    try:
        profile = line_omega2_profile(tower, p1, p2)
    except (ValueError, RuntimeError) as exc:
        raise CliError(f"line rejected: {exc}")
    payload = {
        "q": tower.q,
        "count": profile.count,
        "types": {str(k): v for k, v in sorted(profile.types)},
    }
    rows = [("label", "points")] + [(k, v) for k, v in sorted(profile.types)]
    _emit(payload, args, rows)
    return 0


def _cmd_omega2_plane(args):
    tower = _tower_from_args(args)
    from .geometry import Plane, collinear_groups, omega2_points_in_plane

    rows = _parse_rows(tower, args.rows, 3, "--rows")
    try:
        plane = Plane(tower, rows)
        pts = omega2_points_in_plane(tower, plane)
    except (ValueError, RuntimeError) as exc:
        raise CliError(f"plane rejected: {exc}")
    groups = collinear_groups(tower, pts)
    payload = {
        "q": tower.q,
        "count": len(pts),
        "line_sizes": sorted(groups.values(), reverse=True),
        "points": [list(p) for p in sorted(pts)],
    }
    _emit(payload, args, [("count", len(pts))])
    return 0


def _cmd_project(args):
    tower = _tower_from_args(args)
    from .geometry import Plane, project_from_plane

    rows = _parse_rows(tower, args.rows, 3, "--rows")
    try:
        plane = Plane(tower, rows)
        dist = project_from_plane(tower, plane)
    except (ValueError, RuntimeError) as exc:
        raise CliError(f"plane rejected: {exc}")
    payload = dist.to_json()
    _emit(payload, args, _dist_csv(payload))
    return 0


def _cmd_cubic(args):
    if args.q is None:
        raise CliError("cubic needs --q")
    from .curves import CubicCurve, classify_cubic
    from .gf import small_field

    try:
        field = small_field(args.q)
    except ValueError as exc:
        raise CliError(f"unsupported q={args.q}: {exc}")
    vals = _parse_ints(args.coeffs, 10, "--coeffs")
    for v in vals:
        if not 0 <= v < field.order:
            raise CliError(f"--coeffs entry {v} is outside the field of order {field.order}")
    try:
        curve = CubicCurve(field, vals)
    except ValueError as exc:
        raise CliError(str(exc))
    cls = classify_cubic(curve)
    payload = {
        "q": args.q,
        "coefficients": vals,
        "points": cls.points,
        "class": cls.tag,
    }
    _emit(payload, args, [("points", cls.points), ("class", cls.tag)])
    return 0


def _cmd_rank_spectrum(args):
    tower = _tower_from_args(args)
    from .linpoly import QPolynomial
    from .rdcode import rank_spectrum

    coeffs = _check_encodings(tower, _parse_ints(args.poly, 5, "--poly"), "--poly")
    spec = rank_spectrum(tower, QPolynomial(tower, coeffs))
    payload = spec.to_json()
    if spec.zero_classes:
        payload["zero_classes"] = spec.zero_classes
    rows = [("rank", "words")] + list(spec.counts)
    _emit(payload, args, rows)
    return 0


def _add_common(sub):
    sub.add_argument("--q", type=int, help="subfield order")
    sub.add_argument("--p", type=int, help="characteristic override")
    sub.add_argument("--e", type=int, help="subfield degree override (with --p)")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--jobs", type=int, default=0, help="0 = all cores")
    sub.add_argument("--out", help="also write the report to this path")
    sub.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="linsetlab",
        description="rank-5 linear sets on a projective line: weights, censuses, incidence",
    )
    subs = ap.add_subparsers(dest="command", required=True)

    w = subs.add_parser("weights", help="weight distribution of a graph or construction")
    _add_common(w)
    w.add_argument("--poly", help="five coefficient encodings a0,a1,a2,a3,a4")
    w.add_argument("--construction", help="named construction kind")
    w.add_argument("--params", default="", help="construction parameters k=v,...")
    w.set_defaults(func=_cmd_weights)

    c = subs.add_parser("census", help="enumerate graph weight distributions")
    _add_common(c)
    c.add_argument("--strategy", default="a1_zero_leading_one")
    c.add_argument("--checkpoint", help="directory for resumable partition files")
    c.set_defaults(func=_cmd_census)

    v = subs.add_parser("verify", help="check the published tables for one q")
    _add_common(v)
    v.add_argument("--checkpoint", help="directory for resumable partition files")
    v.set_defaults(func=_cmd_verify)

    ol = subs.add_parser("omega2-line", help="rank-2 point profile of a line")
    _add_common(ol)
    ol.add_argument("--p1", required=True, help="five encodings, comma-separated")
    ol.add_argument("--p2", required=True, help="five encodings, comma-separated")
    ol.set_defaults(func=_cmd_omega2_line)

    op = subs.add_parser("omega2-plane", help="rank-2 points inside a plane")
    _add_common(op)
    op.add_argument("--rows", required=True, help="three rows of five encodings, ;-separated")
    op.set_defaults(func=_cmd_omega2_plane)

    pr = subs.add_parser("project", help="distribution of the projection from a plane")
    _add_common(pr)
    pr.add_argument("--rows", required=True, help="three rows of five encodings, ;-separated")
    pr.set_defaults(func=_cmd_project)

    cu = subs.add_parser("cubic", help="count and classify a plane cubic")
    _add_common(cu)
    cu.add_argument("--coeffs", required=True, help="ten coefficients, comma-separated")
    cu.set_defaults(func=_cmd_cubic)

    rs = subs.add_parser("rank-spectrum", help="rank spectrum of the code of f")
    _add_common(rs)
    rs.add_argument("--poly", required=True, help="five coefficient encodings")
    rs.set_defaults(func=_cmd_rank_spectrum)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
