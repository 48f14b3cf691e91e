"""End-to-end checks of the command-line tool."""

import json
import subprocess
import sys
import tempfile

CLI = sys.argv[1] if len(sys.argv) > 1 else "trophom"


def run(*args, expect_code=0):
    result = subprocess.run([CLI, *args], capture_output=True, text=True)
    assert result.returncode == expect_code, (
        f"{args}: exit {result.returncode}, stderr: {result.stderr[-400:]}"
    )
    return result.stdout


def test_sphere_quotient_table():
    out = run("sphere-quotient", "--p", "3", "--group", "(0 1 2 3)")
    assert "H̃_1 = ℤ/2ℤ" in out


def test_sphere_quotient_json_roundtrip():
    out = run("sphere-quotient", "--p", "4", "--group", "()", "--format", "json")
    doc = json.loads(out)
    assert doc["p"] == 4
    degrees = {h["degree"]: h for h in doc["homology"]}
    assert degrees[3]["rank"] == 1
    assert json.dumps(doc, indent=2, sort_keys=True)  # parses cleanly


def test_sphere_quotient_verify_subdivision():
    out = run("sphere-quotient", "--p", "3", "--group", "(0 1 2 3)",
              "--verify-subdivision", "--format", "json")
    doc = json.loads(out)
    assert doc["homology"][1]["torsion"] == [2]


def test_graph_input():
    k4 = {
        "genus": 3,
        "n": 0,
        "vertices": [{"weight": 0}] * 4,
        "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]],
        "markings": [],
    }
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
        json.dump(k4, f)
        path = f.name
    out = json.loads(run("sphere-quotient", "--graph", path, "--format", "json"))
    assert out["group"]["order"] == 24
    degrees = {h["degree"]: h for h in out["homology"]}
    assert degrees[4] == {"degree": 4, "rank": 1, "torsion": []}


def test_graphs_enumerate():
    out = json.loads(run("graphs", "enumerate", "--g", "2", "--format", "json"))
    assert out["count"] == 6
    assert all(cell["bm"] for cell in out["cells"])


def test_delta_2():
    out = json.loads(run("delta", "--g", "2", "--format", "json"))
    assert out["relative_cells"] == []
    assert out["certified"]["zero"] == [0, 1, 2]


def test_delta_3():
    out = json.loads(run("delta", "--g", "3", "--format", "json"))
    assert len(out["relative_cells"]) == 1
    assert out["certified"]["exact"] == {"5": {"rank": 1, "torsion": []}}
    assert out["certified"]["zero"] == [0, 1, 2, 3, 4]
    # byte-identical reserialization of the emitted document
    raw = run("delta", "--g", "3", "--format", "json")
    assert json.dumps(json.loads(raw), indent=2) + "\n" == raw


def test_check_skeleton():
    assert run("check-skeleton", "--g", "3").strip() == "true"


def test_exit_codes():
    run("delta", "--g", "0", expect_code=2)             # relative mode refused
    run("graphs", "enumerate", "--g", "1", expect_code=2)  # unstable (1,0)
    run("sphere-quotient", "--p", "7", "--group", "(0 1 2 3 4 5 6 7)",
        "--group-cap", "2", expect_code=3)
    run("nonsense", expect_code=2)


def test_selftest_quick():
    out = run("selftest", "--quick", "--jobs", "2")
    assert "0 failed" in out


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"PASS {name}")
            except Exception as exc:  # noqa: BLE001
                failures += 1
                print(f"FAIL {name}: {exc}")
    raise SystemExit(1 if failures else 0)
