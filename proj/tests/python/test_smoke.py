"""Smoke tests for the python module; requires the built extension on PYTHONPATH."""

import trophom


def test_permutations_and_groups():
    assert trophom.parse_permutation("(0 1)(2 3)", 5) == [1, 0, 3, 2, 4]
    assert trophom.group_order(["(0 1 2 3)"], 4) == 4
    assert trophom.group_order([], 4) == 1
    assert trophom.contains_transposition(["(0 1)"], 4)
    assert not trophom.contains_transposition(["(0 1 2 3)"], 4)


def test_smith_diagonal():
    assert trophom.smith_diagonal(3, 3, [(0, 0, 1), (1, 1, 1), (2, 2, 1)]) == [1, 1, 1]
    assert trophom.smith_diagonal(2, 2, [(0, 0, 2), (0, 1, 4), (1, 0, 6), (1, 1, 8)]) == [2, 4]
    assert trophom.smith_diagonal(2, 3, []) == [0, 0]


def test_projective_plane_quotient():
    groups = trophom.sphere_quotient_homology(3, ["(0 1 2 3)"])
    by_degree = {g["degree"]: g for g in groups}
    assert by_degree[0] == {"degree": 0, "rank": 0, "torsion": []}
    assert by_degree[1] == {"degree": 1, "rank": 0, "torsion": [2]}
    assert by_degree[2] == {"degree": 2, "rank": 0, "torsion": []}


def test_reflection_shortcut():
    groups = trophom.sphere_quotient_homology(4, ["(0 1)"])
    assert all(g["rank"] == 0 and g["torsion"] == [] for g in groups)


def test_stable_graphs():
    graphs = trophom.enumerate_graphs(2)
    assert len(graphs) == 6
    assert all(trophom.in_bm(g) for g in graphs)

    k4 = [g for g in trophom.enumerate_graphs(3) if not trophom.in_bm(g)]
    assert len(k4) == 1
    assert trophom.edge_group_order(k4[0]) == 24

    theta = {
        "genus": 2,
        "n": 0,
        "vertices": [{"weight": 0}, {"weight": 0}],
        "edges": [[0, 1], [0, 1], [0, 1]],
        "markings": [],
    }
    contracted = trophom.contract(theta, 0)
    assert len(contracted["vertices"]) == 1
    assert contracted["edges"] == [[0, 0], [0, 0]]
    assert trophom.isomorphic(theta, theta)


def test_k4_cell_is_a_sphere():
    k4 = [g for g in trophom.enumerate_graphs(3) if not trophom.in_bm(g)][0]
    groups = trophom.sphere_quotient_homology_graph(k4)
    by_degree = {g["degree"]: (g["rank"], g["torsion"]) for g in groups}
    assert by_degree[4] == (1, [])
    assert all(v == (0, []) for k, v in by_degree.items() if k != 4)


def test_delta_2_report():
    report = trophom.delta_report(2)
    assert report["relative_cells"] == []
    assert report["certified"]["zero"] == [0, 1, 2]
    assert trophom.check_one_skeleton(2, 0)


def test_errors():
    try:
        trophom.enumerate_graphs(0, 2)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError for unstable (g, n)")


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
