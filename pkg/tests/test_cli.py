"""End-to-end command line checks through main()."""

import json

import pytest

from ramseykit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(json.dumps(payload))
    return str(p)


def test_solve_delta_rt(tmp_path, capsys):
    inst = write(
        tmp_path, "d.json",
        {"kind": "clopen", "pos": [[0], [2], [4]], "neg": [[1], [3], [5]]},
    )
    code, out, _ = run(
        capsys, "solve", "--kind", "DeltaRT", "--instance", inst, "--universe", "6,3"
    )
    assert code == 0
    assert json.loads(out) == {"side": "lands", "solution": [0, 2, 4]}


def test_solve_not_in_domain_exits_1(tmp_path, capsys):
    inst = write(tmp_path, "p.json", {"kind": "open", "generators": [[1, 3]]})
    code, out, _ = run(
        capsys, "solve", "--kind", "wFindHS_Sigma", "--instance", inst,
        "--universe", "6,3", "--engine", "brute",
    )
    assert code == 1
    assert json.loads(out)["error"] == "DomainViolation"


def test_solve_engines_agree(tmp_path, capsys):
    inst = write(tmp_path, "p.json", {"kind": "open", "generators": [[1, 3], [0, 2]]})
    outs = []
    for engine in ("brute", "pruned"):
        code, out, _ = run(
            capsys, "solve", "--kind", "SigmaRT", "--instance", inst,
            "--universe", "6,3", "--engine", engine,
        )
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_solve_avigad_engine(tmp_path, capsys):
    inst = write(tmp_path, "p.json", {"kind": "open", "generators": [[]]})
    code, out, _ = run(
        capsys, "solve", "--instance", inst, "--universe", "4,3", "--engine", "avigad"
    )
    assert code == 0
    assert json.loads(out) == {"side": "lands", "solution": [0, 1, 2]}


def test_embedded_universe_overrides_flag(tmp_path, capsys):
    inst = write(
        tmp_path, "p.json",
        {"kind": "open", "generators": [[0]], "universe": {"M": 4, "L": 2}},
    )
    code, out, _ = run(
        capsys, "solve", "--kind", "SigmaRT", "--instance", inst, "--universe", "9,5"
    )
    assert code == 0
    assert len(json.loads(out)["solution"]) == 2


def test_construct_union(tmp_path, capsys):
    a = write(tmp_path, "a.json", {"kind": "open", "generators": [[1]]})
    b = write(tmp_path, "b.json", {"kind": "open", "generators": [[1, 3]]})
    code, out, _ = run(
        capsys, "construct", "union", "--instance", a, "--instance", b,
        "--universe", "6,3",
    )
    assert code == 0
    assert json.loads(out)["generators"] == [[1]]


def test_construct_element_power(tmp_path, capsys):
    a = write(tmp_path, "a.json", {"kind": "open", "generators": [[1, 3]]})
    code, out, _ = run(
        capsys, "construct", "element-power", "--n", "2", "--instance", a,
        "--universe", "6,3",
    )
    assert code == 0
    data = json.loads(out)
    assert data["generators"] == [[4, 16]]
    assert data["universe"] == {"M": 65, "L": 3}


def test_reduce_describe(tmp_path, capsys):
    t = write(
        tmp_path, "t.json",
        {"kind": "tree", "nodes": [[], [0], [0, 1], [0, 1, 3]]},
    )
    code, out, _ = run(
        capsys, "reduce", "--spec", "R-DESCRIBE", "--instance", t, "--universe", "4,3"
    )
    assert code == 0
    assert json.loads(out) == {"result": [0, 1, 3]}


def test_verify_reports_json_lines(tmp_path, capsys):
    code, out, err = run(
        capsys, "verify", "--spec", "R-UNION", "--count", "5", "--seed", "3",
        "--universe", "6,3",
    )
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert len(lines) == 5 and all(item["pass"] for item in lines)
    assert "R-UNION: 5/5 passed" in err


def test_lattice_check_and_dot(capsys, tmp_path):
    code, out, _ = run(capsys, "lattice", "check")
    assert code == 0
    data = json.loads(out)
    assert data["contradictions"] == 0 and data["facts"] >= 25

    target = tmp_path / "g.dot"
    code, out, _ = run(capsys, "lattice", "dot", "--output", str(target))
    assert code == 0
    assert target.read_text().startswith("digraph degrees {")


def test_deterministic_output(tmp_path, capsys):
    inst = write(tmp_path, "p.json", {"kind": "open", "generators": [[0, 2], [1, 4]]})
    runs = set()
    for _ in range(2):
        code, out, _ = run(
            capsys, "solve", "--kind", "SigmaRT", "--instance", inst, "--universe", "6,3"
        )
        assert code == 0
        runs.add(out)
    assert len(runs) == 1


def test_unknown_flag_exits_2(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["solve", "--bogus", "x"])
    assert info.value.code == 2


def test_unknown_spec_exits_1(capsys):
    code, out, _ = run(capsys, "reduce", "--spec", "R-NOPE", "--universe", "4,3",
                       "--instance", "/nonexistent.json")
    assert code == 1
