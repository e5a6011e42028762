import json
import shutil
import subprocess
import sys

import pytest

from linsetlab.cli import main
from linsetlab.geometry import plane_for_graph
from linsetlab.linpoly import trace_polynomial


def run_cli(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def run_json(capsys, *argv):
    rc, out, err = run_cli(capsys, *argv)
    assert rc == 0, err
    return json.loads(out)


# ── documented examples ─────────────────────────────────────────────────────


def test_weights_scattered(capsys):
    payload = run_json(capsys, "weights", "--q", "2", "--poly", "0,2,0,0,0")
    assert payload["weights"] == {"1": 31}
    assert payload["class"] == "scattered"
    assert payload["legal"] is True
    assert payload["size"] == 31


def test_weights_named_construction(capsys):
    payload = run_json(
        capsys, "weights", "--q", "2", "--construction", "trace_club"
    )
    assert payload["weights"] == {"1": 16, "4": 1}
    assert payload["class"] == "club4"


def test_cubic_triangle(capsys):
    payload = run_json(
        capsys, "cubic", "--q", "3", "--coeffs", "0,0,0,0,1,0,0,0,0,0"
    )
    assert payload["points"] == 9
    assert payload["class"] == "three_rational_lines"


def test_verify_q2(capsys):
    rc, out, err = run_cli(capsys, "verify", "--q", "2")
    assert rc == 0
    assert "sizes: [17, 19, 21, 23, 25, 27, 31]" in out
    assert all(line.startswith(("ok", "sizes")) for line in out.strip().splitlines())


def test_rank_spectrum_worked_example(capsys):
    payload = run_json(
        capsys, "rank-spectrum", "--q", "2", "--poly", "1,1,1,0,24"
    )
    assert payload["spectrum"] == {"2": 31, "3": 62, "4": 558, "5": 372}
    assert "zero_classes" not in payload


def test_project_trace_plane(capsys):
    from linsetlab.gf import build_tower

    tower = build_tower(2, 1)
    plane = plane_for_graph(tower, trace_polynomial(tower))
    rows = ";".join(",".join(str(c) for c in r) for r in plane.rows)
    payload = run_json(capsys, "project", "--q", "2", "--rows", rows)
    assert payload["weights"] == {"1": 16, "4": 1}
    assert payload["class"] == "club4"


def test_omega2_line_short_secant(capsys):
    payload = run_json(
        capsys, "omega2-line", "--q", "2", "--p1", "1,2,0,0,0", "--p2", "0,0,1,2,0"
    )
    assert payload["count"] == 3
    assert sum(payload["types"].values()) == 3


def test_omega2_plane_report(capsys):
    from linsetlab.gf import build_tower

    tower = build_tower(2, 1)
    plane = plane_for_graph(tower, trace_polynomial(tower))
    rows = ";".join(",".join(str(c) for c in r) for r in plane.rows)
    payload = run_json(capsys, "omega2-plane", "--q", "2", "--rows", rows)
    assert payload["count"] == len(payload["points"])
    assert payload["count"] >= 1


def test_census_schema_and_exit(capsys):
    payload = run_json(capsys, "census", "--q", "2")
    assert set(payload) == {"q", "strategy", "entries", "elapsed_s", "partitions"}
    assert payload["q"] == 2
    assert payload["strategy"] == "a1_zero_leading_one"
    sizes = set()
    for ent in payload["entries"]:
        assert set(ent) == {"weights", "size", "class", "legal", "count"}
        assert ent["legal"] is True
        if ent["size"] > 1:
            sizes.add(ent["size"])
    assert sizes == {17, 19, 21, 23, 25, 27, 31}


def test_census_family_sweep(capsys):
    payload = run_json(capsys, "census", "--q", "2", "--strategy", "family_sweep")
    sizes = {e["size"] for e in payload["entries"] if e["size"] > 1}
    assert sizes <= {17, 19, 21, 23, 25, 27, 31}


# ── output plumbing ─────────────────────────────────────────────────────────


def test_weights_csv(capsys):
    rc, out, err = run_cli(
        capsys, "weights", "--q", "2", "--poly", "0,2,0,0,0", "--format", "csv"
    )
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "weight,points"
    assert "1,31" in lines
    assert "class,scattered" in lines


def test_census_csv_header(capsys):
    rc, out, err = run_cli(
        capsys, "census", "--q", "2", "--format", "csv"
    )
    assert rc == 0
    assert out.splitlines()[0] == "weights,size,class,legal,count"


def test_out_file_matches_stdout(tmp_path, capsys):
    target = tmp_path / "report.json"
    rc, out, err = run_cli(
        capsys, "weights", "--q", "2", "--poly", "0,2,0,0,0", "--out", str(target)
    )
    assert rc == 0
    assert target.read_text() == out


def test_rerun_is_bit_identical(capsys):
    argv = ("weights", "--q", "3", "--poly", "0,1,0,0,0")
    _, first, _ = run_cli(capsys, *argv)
    _, second, _ = run_cli(capsys, *argv)
    assert first == second
    argv = ("cubic", "--q", "5", "--coeffs", "1,0,0,0,0,0,1,0,0,1")
    _, first, _ = run_cli(capsys, *argv)
    _, second, _ = run_cli(capsys, *argv)
    assert first == second


def test_census_rerun_same_payload(capsys):
    # wall time is reported, so compare everything except the clock field
    first = run_json(capsys, "census", "--q", "2")
    second = run_json(capsys, "census", "--q", "2")
    first.pop("elapsed_s")
    second.pop("elapsed_s")
    assert first == second


def test_p_e_override_matches_q(capsys):
    via_q = run_json(capsys, "weights", "--q", "4", "--poly", "0,2,0,0,0")
    via_pe = run_json(
        capsys, "weights", "--p", "2", "--e", "2", "--poly", "0,2,0,0,0"
    )
    assert via_q == via_pe


def test_console_script_installed():
    exe = shutil.which("linsetlab")
    assert exe is not None
    proc = subprocess.run(
        [exe, "weights", "--q", "2", "--poly", "0,2,0,0,0"],
        capture_output=True,
        text=True,
        timeout=300,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["weights"] == {"1": 31}


# ── error surface ───────────────────────────────────────────────────────────

BAD_COMMANDS = {
    "unsupported_q": ("weights", "--q", "6", "--poly", "0,2,0,0,0"),
    "wrong_arity": ("weights", "--q", "2", "--poly", "0,2"),
    "non_integer": ("weights", "--q", "2", "--poly", "a,b,c,d,e"),
    "out_of_field": ("weights", "--q", "2", "--poly", "0,99,0,0,0"),
    "no_input": ("weights", "--q", "2"),
    "bad_construction": ("weights", "--q", "2", "--construction", "septic"),
    "bad_param": ("weights", "--q", "2", "--construction", "zanella",
                  "--params", "alpha"),
    "bad_strategy": ("census", "--q", "2", "--strategy", "alphabetical"),
    "verify_unknown_q": ("verify", "--q", "11"),
    "vanishing_cubic": ("cubic", "--q", "3", "--coeffs",
                        "0,0,0,0,0,0,0,0,0,0"),
    "cubic_bad_field": ("cubic", "--q", "6", "--coeffs",
                        "0,0,0,0,1,0,0,0,0,0"),
    "plane_meets_subgeometry": ("project", "--q", "2", "--rows",
                                "1,0,0,0,0;0,1,0,0,0;0,0,1,0,0"),
    "short_line_point": ("omega2-line", "--q", "2", "--p1", "1,0,0",
                         "--p2", "0,0,1,2,0"),
    "no_field_given": ("weights", "--poly", "0,2,0,0,0"),
    "bad_pe_pair": ("weights", "--p", "7", "--e", "1", "--poly", "0,2,0,0,0"),
}


@pytest.mark.parametrize("name", sorted(BAD_COMMANDS))
def test_errors_exit_2(name, capsys):
    rc, out, err = run_cli(capsys, *BAD_COMMANDS[name])
    assert rc == 2
    assert err.startswith("error: ")


def test_error_messages_are_distinct(capsys):
    seen = {}
    for name, argv in BAD_COMMANDS.items():
        _, _, err = run_cli(capsys, *argv)
        seen[name] = err.strip()
    assert len(set(seen.values())) == len(seen)
