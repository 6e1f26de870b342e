import json

import pytest

from prodtverberg.cli import main
from prodtverberg.serialize import grid_from_json, grid_to_json, load_grid


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write_json(path, data):
    path.write_text(json.dumps(data))
    return str(path)


SQUARE = {
    "d": 2,
    "m": 2,
    "n": 2,
    "p": 2,
    "points": {"(1,1)": ["0", "0"], "(1,2)": ["1", "0"], "(2,1)": ["0", "1"], "(2,2)": ["1", "1"]},
}
RADON = {
    "d": 2,
    "m": 1,
    "n": 4,
    "p": 2,
    "points": {"(1)": [0, 0], "(2)": [4, 0], "(3)": [0, 4], "(4)": ["1", "1"]},
}


def test_find_square_none(tmp_path, capsys):
    code, out, _ = run(capsys, "find", "--grid", write_json(tmp_path / "sq.json", SQUARE), "--no-timing")
    assert code == 1
    assert json.loads(out)["payload"]["witness"] == "none"


def test_find_radon(tmp_path, capsys):
    code, out, _ = run(capsys, "find", "--grid", write_json(tmp_path / "r.json", RADON), "--no-timing")
    assert code == 0
    w = json.loads(out)["payload"]["witness"]
    assert sorted(map(sorted, w["parts"])) == [[1, 2, 3], [4]]
    assert w["point"] == ["1", "1"]


def test_find_random_is_reproducible(capsys):
    args = ("find", "--random", "--d", "3", "--m", "2", "--p", "2", "--seed", "7", "--no-timing")
    code, out1, _ = run(capsys, *args)
    assert code == 0
    report = json.loads(out1)
    assert report["seed"] == 7 and report["payload"]["recertified"]
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_find_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "find", "--grid", str(bad))[0] == 2
    mismatch = dict(SQUARE, points=dict(SQUARE["points"], **{"(2,2)": ["1"]}))
    assert run(capsys, "find", "--grid", write_json(tmp_path / "mm.json", mismatch))[0] == 2
    assert run(capsys, "find", "--random", "--d", "2", "--m", "1", "--p", "1")[0] == 2
    assert run(capsys, "find", "--grid", write_json(tmp_path / "r.json", RADON), "--p", "1")[0] == 2
    assert run(capsys, "find", "--grid", str(tmp_path / "missing.json"))[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["find"])
    assert exc.value.code == 2


def test_non_prime_power_flagged(capsys):
    code, out, _ = run(capsys, "find", "--random", "--d", "1", "--m", "1", "--p", "6", "--seed", "1", "--no-timing")
    assert code == 0
    assert "outside theorem hypothesis" in json.loads(out)["payload"]["note"]


def test_demo_montejano(capsys):
    code, out, _ = run(capsys, "demo", "montejano", "--seed", "3", "--no-timing")
    assert code == 0
    payload = json.loads(out)["payload"]
    assert payload["triangles_met"] == [True, True, True]
    assert payload["color"] in ("rows", "columns")


def test_demo_montejano_with_sets(tmp_path, capsys):
    grid = {"d": 3, "m": 2, "n": 3, "p": 2, "points": {f"({i},{j})": [i, j, 0] for i in (1, 2, 3) for j in (1, 2, 3)}}
    # rows and columns as slightly larger triangles containing the grid triangles
    sets = {
        "rows": [[[i, 0, 0], [i, 4, 0], [i, 0, 1]] for i in (1, 2, 3)],
        "columns": [[[0, j, 0], [4, j, 0], [0, j, 1]] for j in (1, 2, 3)],
    }
    code, out, _ = run(
        capsys,
        "demo",
        "montejano",
        "--grid",
        write_json(tmp_path / "g.json", grid),
        "--sets",
        write_json(tmp_path / "s.json", sets),
        "--no-timing",
    )
    assert code == 0
    assert json.loads(out)["payload"]["sets_met"] == [True, True, True]


def test_demo_montejano_bad_params(capsys):
    assert run(capsys, "demo", "montejano", "--d", "2")[0] == 2


def test_demo_colorful(capsys):
    code, out, _ = run(capsys, "demo", "colorful-helly", "--d", "1", "--p", "2", "--seed", "5", "--no-timing")
    assert code == 0
    report = json.loads(out)
    assert report["params"]["n"] == 3 and report["params"]["m"] == 2
    assert report["payload"]["size"] >= 1
    assert run(capsys, "demo", "colorful-helly", "--d", "1", "--p", "2", "--n", "4")[0] == 2


def test_verify_full(capsys):
    code, out, err = run(capsys, "verify", "--suite", "proof", "--n", "3", "--m", "2", "--p", "2", "--no-timing")
    assert code == 0
    checks = json.loads(out)["payload"]["checks"]
    statuses = {c["name"]: c["status"] for c in checks}
    assert statuses["T homologically 3-connected"] == "pass"
    assert "fail" not in statuses.values()


def test_verify_small_all_pass(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--m", "2", "--p", "2", "--no-timing")
    assert code == 0
    checks = json.loads(out)["payload"]["checks"]
    assert all(c["status"] == "pass" for c in checks)


def test_verify_tight_caps_skip(capsys):
    code, out, _ = run(capsys, "verify", "--n", "4", "--m", "2", "--p", "2", "--caps", "1000,50", "--no-timing")
    checks = json.loads(out)["payload"]["checks"]
    homology = [c for c in checks if "homologically" in c["name"]]
    assert homology and all(c["status"] == "skipped (cap)" for c in homology)
    assert all(c["status"] != "pass" or c["details"] for c in checks)
    assert code == 0


def test_verify_with_d_fails_below_bound(capsys):
    # n = 2 is below the bound for d = 2; T = S^2 is not 2-connected
    code, out, _ = run(capsys, "verify", "--n", "2", "--m", "2", "--p", "2", "--d", "2", "--no-timing")
    assert code == 1
    statuses = {c["name"]: c["status"] for c in json.loads(out)["payload"]["checks"]}
    assert statuses["T homologically 2-connected"] == "fail"
    assert statuses["join connectivity inequality"] == "fail"


def test_gen_round_trip(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert main(["gen", "--d", "3", "--m", "2", "--p", "2", "--seed", "4", "--bound", "9", "--out", str(out)]) == 0
    grid = load_grid(str(out))
    assert grid_from_json(grid_to_json(grid)) == grid
    code, find_out, _ = run(capsys, "find", "--grid", str(out), "--no-timing")
    assert code == 0


def test_gen_seeds_differ_and_zero_bound(tmp_path):
    a, b, z = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "z.json"
    base = ["gen", "--d", "2", "--m", "2", "--p", "2", "--bound", "5"]
    main(base + ["--seed", "1", "--out", str(a)])
    main(base + ["--seed", "2", "--out", str(b)])
    assert a.read_text() != b.read_text()
    main(["gen", "--d", "2", "--m", "2", "--p", "2", "--bound", "0", "--seed", "1", "--out", str(z)])
    assert set(map(tuple, json.loads(z.read_text())["points"].values())) == {("0", "0")}


def test_gen_unwritable(tmp_path):
    assert main(["gen", "--d", "2", "--m", "1", "--p", "2", "--out", str(tmp_path / "no" / "x.json")]) == 2
