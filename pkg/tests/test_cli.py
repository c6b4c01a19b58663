"""CLI contract: outputs, exit codes, determinism, schema validity."""

import io
import json
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from zonoforge.cli import run
from zonoforge.mpoly import MPoly
from zonoforge.volumes import composition_set, stanley_pitman_q

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "schemas"


def _registry() -> Registry:
    resources = []
    for path in SCHEMA_DIR.glob("*.schema.json"):
        schema = json.loads(path.read_text())
        resources.append((path.name, Resource.from_contents(schema)))
    return Registry().with_resources(resources)


def validate(data: dict, schema_name: str):
    schema = json.loads((SCHEMA_DIR / schema_name).read_text())
    Draft202012Validator(schema, registry=_registry()).validate(data)


def invoke(args):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(args)
    return code, out.getvalue(), err.getvalue()


def invoke_json(args):
    code, out, err = invoke(args)
    assert code == 0, err
    return json.loads(out)


def test_bw_qn():
    data = invoke_json(["bw", "qn", "--n", "2"])
    assert MPoly.from_json_dict(data) == stanley_pitman_q(2)
    validate(data, "polynomial.schema.json")


def test_bw_parking_maximal():
    data = invoke_json(["bw", "parking", "--n", "3", "--class", "maximal"])
    assert data["functions"] == [[1, 1, 1], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
    validate(data, "parking.schema.json")


def test_bw_parking_internal():
    data = invoke_json(["bw", "parking", "--n", "3", "--class", "internal"])
    assert [0, 0, 0] in data["functions"] and [1, 1, 0] in data["functions"]
    assert len(data["functions"]) == 4
    validate(data, "parking.schema.json")


def test_bw_tutte():
    data = invoke_json(["bw", "tutte", "--n", "2"])
    assert {(e["s"], e["t"]): e["c"] for e in data["terms"]} == {
        (2, 0): 1,
        (1, 0): 1,
        (1, 1): 1,
        (0, 1): 1,
        (0, 2): 1,
    }
    validate(data, "tutte.schema.json")


def test_bw_hilbert():
    data = invoke_json(["bw", "hilbert", "--n", "3", "--kind", "internal"])
    assert data["dims"] == [1, 2, 1, 0]
    validate(data, "hilbert.schema.json")


def test_bw_monic():
    data = invoke_json(["bw", "monic", "--n", "2", "--s", "1,1"])
    assert MPoly.from_json_dict(data["poly"]) == stanley_pitman_q(2)
    validate(data, "monic.schema.json")
    data = invoke_json(["bw", "monic", "--n", "3", "--s", "1,1,0", "--internal"])
    assert MPoly.from_json_dict(data["poly"]) == MPoly(
        3, {(1, 1, 0): 1, (2, 0, 0): Fraction(1, 2)}
    )


def test_validation_exit_codes():
    code, _, err = invoke(["bw", "tutte", "--n", "0"])
    assert code == 2 and "positive" in err
    code, _, _ = invoke(["assoc", "--n", "11"])
    assert code == 2
    code, _, _ = invoke(["bw", "monic", "--n", "2", "--s", "0,2"])
    assert code == 2
    code, _, _ = invoke(["bw", "nonsense"])
    assert code == 2


def test_malformed_tree_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = invoke(["gbw", "subdivide", "--tree", str(bad)])
    assert code == 2
    assert "cannot parse" in err


@pytest.fixture()
def fork_file(tmp_path):
    path = tmp_path / "fork.json"
    path.write_text(json.dumps({"n": 3, "parent": [0, 1, 1]}))
    return str(path)


@pytest.fixture()
def line_file(tmp_path):
    path = tmp_path / "line.json"
    path.write_text(json.dumps({"n": 3, "parent": [0, 1, 2]}))
    return str(path)


def test_gbw_subdivide_fork(fork_file):
    data = invoke_json(["gbw", "subdivide", "--tree", fork_file])
    assert len(data["chambers"]) == 4
    refs = {tuple(c["ref"]) for c in data["chambers"]}
    assert refs == {(1, 1, 1), (2, 0, 1), (2, 1, 0), (3, 0, 0)}
    validate(data, "subdivision.schema.json")


def test_gbw_verify_line(line_file):
    code, out, err = invoke(
        ["gbw", "verify", "--tree", line_file, "--checks", "partition,dspace,parking"]
    )
    assert code == 0, err
    data = json.loads(out)
    assert data["sum_identity_ok"] is True
    assert data["partition_ok"] is True
    assert all(data["checks"].values())
    validate(data, "verify_report.schema.json")


def test_gbw_verify_mc(fork_file):
    code, out, _ = invoke(
        [
            "gbw",
            "verify",
            "--tree",
            fork_file,
            "--checks",
            "mc",
            "--seed",
            "42",
            "--samples",
            "20000",
        ]
    )
    assert code == 0
    data = json.loads(out)
    assert data["checks"]["mc"] is True


def test_gbw_verify_unknown_check(fork_file):
    code, _, err = invoke(["gbw", "verify", "--tree", fork_file, "--checks", "bogus"])
    assert code == 2 and "unknown" in err


def test_assoc_listing():
    data = invoke_json(["assoc", "--n", "3"])
    assert len(data["trees"]) == 5
    ks = {tuple(row["kT"]) for row in data["trees"]}
    assert ks == composition_set(3).members
    total = MPoly.zero(3)
    for row in data["trees"]:
        total = total + MPoly.from_json_dict(row["volume_monomial"])
    reversed_q3 = MPoly(
        3, {tuple(reversed(e)): c for e, c in stanley_pitman_q(3).items()}
    )
    assert total == reversed_q3
    validate(data, "assoc.schema.json")


def test_assoc_locate():
    data = invoke_json(
        ["assoc", "locate", "--x", "1,1,1", "--y", "1/2,5/4,1/2", "--s", "4"]
    )
    assert data["shape"] == "((oo)(oo))"
    assert data["kT"] == [2, 0, 1]
    validate(data, "locate.schema.json")


def test_assoc_locate_boundary_exits_1():
    code, _, err = invoke(
        ["assoc", "locate", "--x", "1,1,1", "--y", "1,1,1", "--s", "4"]
    )
    assert code == 1
    assert "degenerate contour" in err


def test_byte_identical_reruns(fork_file):
    for args in (
        ["bw", "qn", "--n", "4"],
        ["bw", "tutte", "--n", "3"],
        ["gbw", "subdivide", "--tree", fork_file],
        ["gbw", "verify", "--tree", fork_file, "--checks", "mc", "--seed", "7",
         "--samples", "20000"],
    ):
        first = invoke(args)
        second = invoke(args)
        assert first == second


def test_table_format():
    code, out, _ = invoke(["--format", "table", "bw", "hilbert", "--n", "2"])
    assert code == 0
    assert "dims" in out
