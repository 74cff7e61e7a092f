"""End-to-end command line tests, run in-process through cli.main."""

import json
from pathlib import Path

import pytest

from fflat import cli

DATA = Path(__file__).parent / "data"
W = str(DATA / "w.json")
POPOV2 = str(DATA / "popov2.json")
MINKGAP = str(DATA / "minkgap.json")


def run(capsys, *argv):
    code = cli.main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def write_instance(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


class TestContractExamples:
    def test_covrad_w(self, capsys):
        code, out, _ = run(capsys, "covrad", W)
        assert code == 0
        assert out == "q^-2\n"

    def test_covrad_w_oracle_agrees(self, capsys):
        code, out, _ = run(capsys, "covrad", "--oracle", W)
        assert code == 0
        assert out == "q^-2\noracle: q^-2\n"

    def test_minima_popov2(self, capsys):
        code, out, _ = run(capsys, "minima", POPOV2)
        assert code == 0
        assert out == "q^0 q^0\n"

    def test_verify_full_grid(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--grid", "q=2,3;d=2,3;N=0,1,2", "--seed", "7"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 8
        assert all(" pass " in ln for ln in lines)
        names = [ln.split()[0] for ln in lines]
        assert "minkowski_equality" in names and "mink_search" in names


class TestQueries:
    def test_reduce_text(self, capsys):
        code, out, _ = run(capsys, "reduce", POPOV2)
        assert code == 0
        assert out.splitlines()[0] == "minima: q^0 q^0"
        assert "basis:" in out

    def test_reduce_json_roundtrip(self, capsys, tmp_path):
        code, out, _ = run(capsys, "reduce", "--format", "json", POPOV2)
        assert code == 0
        doc = json.loads(out)
        assert doc["exps"] == [0, 0]
        # the emitted basis is itself a valid instance basis
        p = write_instance(
            tmp_path, "rt.json", {"q": 2, "d": 2, "basis": doc["basis"]}
        )
        code2, out2, _ = run(capsys, "minima", "--format", "json", p)
        assert code2 == 0
        assert json.loads(out2)["exps"] == doc["exps"]

    def test_packrad(self, capsys):
        assert run(capsys, "packrad", W) == (0, "q^-2\n", "")

    def test_density(self, capsys):
        assert run(capsys, "density", W) == (0, "1\n", "")

    def test_count_default_and_radius(self, capsys):
        assert run(capsys, "count", W)[1] == "16\n"
        assert run(capsys, "count", "--radius", "1", W)[1] == "64\n"

    def test_dinv(self, capsys):
        assert run(capsys, "dinv", W) == (0, "q^-2\n", "")

    def test_dinv_requires_alpha_form(self, capsys, tmp_path):
        p = write_instance(
            tmp_path, "plain.json",
            {"q": 2, "d": 2, "basis": [["1", "0"], ["0", "1"]]},
        )
        code, _, err = run(capsys, "dinv", p)
        assert code == 4 and err.startswith("error:")

    def test_covrad_bounds(self, capsys):
        code, out, _ = run(capsys, "covrad", "--bounds", W)
        assert code == 0
        assert out == "q^-2\nbounds: -3 <= -2 <= -1\n"

    def test_covrad_bounds_json(self, capsys):
        code, out, _ = run(capsys, "covrad", "--format", "json", "--bounds", W)
        assert code == 0
        doc = json.loads(out)
        assert doc == {"bounds": {"lower": "-3", "upper": -1}, "exp": -2}


class TestMinkSearch:
    def test_point_found(self, capsys):
        code, out, _ = run(capsys, "mink-search", W)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "status: point"
        assert "point: x^-1  x^-2" in lines
        assert "norm: q^-1" in lines

    def test_certified_gap_exits_2(self, capsys):
        code, out, _ = run(capsys, "mink-search", MINKGAP)
        assert code == 2
        assert out.splitlines()[0] == "status: no_point"

    def test_gap_json(self, capsys):
        code, out, _ = run(capsys, "mink-search", "--format", "json", MINKGAP)
        assert code == 2
        doc = json.loads(out)
        assert doc["status"] == "no_point"
        assert doc["measure_exp"] > doc["threshold_exp"]


class TestErrorPaths:
    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "minima", "/nonexistent/nope.json")
        assert code == 4
        assert err.startswith("error:")

    def test_bad_json(self, capsys, tmp_path):
        p = tmp_path / "junk.json"
        p.write_text("{not json")
        code, _, err = run(capsys, "minima", str(p))
        assert code == 4 and err.startswith("error:")

    def test_unknown_key(self, capsys, tmp_path):
        p = write_instance(
            tmp_path, "k.json",
            {"q": 2, "d": 2, "basis": [["1", "0"], ["0", "1"]], "bogus": 1},
        )
        code, _, err = run(capsys, "minima", p)
        assert code == 4 and "bogus" in err

    def test_bad_field_order(self, capsys, tmp_path):
        p = write_instance(
            tmp_path, "q6.json",
            {"q": 6, "d": 2, "basis": [["1", "0"], ["0", "1"]]},
        )
        code, _, err = run(capsys, "minima", p)
        assert code == 4 and err.startswith("error:")

    def test_bad_element_names_location(self, capsys, tmp_path):
        p = write_instance(
            tmp_path, "el.json",
            {"q": 2, "d": 2, "basis": [["1", "x*x"], ["0", "1"]]},
        )
        code, _, err = run(capsys, "minima", p)
        assert code == 4 and "basis[0][1]" in err

    def test_singular_basis(self, capsys, tmp_path):
        p = write_instance(
            tmp_path, "sing.json",
            {"q": 2, "d": 2, "basis": [["1", "1"], ["1", "1"]]},
        )
        code, _, err = run(capsys, "minima", p)
        assert code == 4 and err.startswith("error:")

    def test_precision_too_coarse_exits_3(self, capsys, tmp_path):
        doc = json.loads(Path(W).read_text())
        doc["precision"] = -2
        p = write_instance(tmp_path, "coarse.json", doc)
        code, _, err = run(capsys, "covrad", p)
        assert code == 3 and err.startswith("error:")

    def test_precision_boundary_is_enough(self, capsys, tmp_path):
        doc = json.loads(Path(W).read_text())
        doc["precision"] = -3
        p = write_instance(tmp_path, "fine.json", doc)
        code, out, _ = run(capsys, "covrad", p)
        assert code == 0 and out == "q^-2\n"

    def test_rational_alpha_exits_1(self, capsys, tmp_path):
        p = write_instance(
            tmp_path, "rat.json",
            {
                "q": 2, "d": 2,
                "basis": [["1", "0"], ["0", "1"]],
                "alpha": ["x^-1", "x^-1"], "N": 1,
            },
        )
        code, _, err = run(capsys, "covrad", p)
        assert code == 1 and err.startswith("error:")

    def test_bad_grid_axis(self, capsys):
        code, _, err = run(capsys, "verify", "--grid", "z=1")
        assert code == 4 and err.startswith("error:")


class TestVerifyDeterminism:
    def test_bit_identical_reruns(self, capsys):
        args = ("verify", "--grid", "q=2;d=2;N=0,1", "--seed", "5")
        code1, out1, _ = run(capsys, *args)
        code2, out2, _ = run(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_seed_changes_draws(self, capsys):
        _, out1, _ = run(
            capsys, "verify", "--format", "json",
            "--grid", "q=2;d=2;N=0", "--seed", "1",
        )
        doc = json.loads(out1)
        assert doc["passed"] and doc["seed"] == 1
        assert {c["name"] for c in doc["checks"]} >= {
            "minkowski_equality", "covrad_vs_oracle", "mink_search",
        }


def test_reps_instance(capsys, tmp_path):
    p = tmp_path / "reps.json"
    p.write_text(json.dumps({
        "q": 2, "d": 2,
        "basis": [["1", "0"], ["0", "1"]],
        "reps": [["x^-1", "x^-2"], ["0", "x^-1"]],
    }))
    code, out, _ = run(capsys, "count", str(p))
    assert code == 0 and out == "16\n"
    code, out, _ = run(capsys, "minima", str(p))
    assert code == 0 and out == "q^-1 q^-1\n"
