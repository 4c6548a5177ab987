import json

import pytest

from greenorder.brauer_tree import star, stem, to_algebra
from greenorder.cli import gol_main, polyfunc_main
from greenorder.report import (
    SCHEMA,
    SuiteParams,
    VerificationReport,
    all_passed,
    dumps,
    emit_json,
    run_suite,
    summary_lines,
)


@pytest.fixture(scope="module")
def green3():
    return run_suite("green", SuiteParams(p=3, trials=30, seed=4))


class TestReports:
    def test_green_suite_passes(self, green3):
        statuses = [r.status for r in green3]
        # the commutative factor count needs p >= 5
        assert statuses.count("pass") == len(statuses) - 1 and statuses[-1] == "skipped"
        assert all(r.anchor for r in green3)
        assert {r.seed for r in green3} == {4}

    def test_canonical_json_is_deterministic(self, green3):
        again = run_suite("green", SuiteParams(p=3, trials=30, seed=4))
        assert dumps(green3) == dumps(again)
        assert "runtime_ms" not in dumps(green3)
        assert "runtime_ms" in dumps(green3, timings=True)

    def test_emit_empty(self, tmp_path):
        path = tmp_path / "r.json"
        emit_json([], path)
        assert json.loads(path.read_text(encoding="utf-8")) == []

    def test_emit_one_pass(self, tmp_path):
        path = tmp_path / "r.json"
        emit_json([VerificationReport("brauer", "x", "pass", {"n": 1}, 0)], path)
        (doc,) = json.loads(path.read_text(encoding="utf-8"))
        assert doc["status"] == "pass" and doc["schema"] == SCHEMA
        assert "witness" not in doc

    def test_fail_carries_witness(self):
        with pytest.raises(ValueError, match="witness"):
            VerificationReport("green", "x", "fail", {}, 0)
        rep = VerificationReport("green", "x", "fail", {}, 0, witness={"entry": [0, 1]})
        assert rep.to_json()["witness"] == {"entry": [0, 1]}
        assert not all_passed([rep])
        assert summary_lines([rep])[0].startswith("[FAIL")

    def test_report_invariants(self):
        with pytest.raises(ValueError):
            VerificationReport("green", "", "pass", {}, 0)
        with pytest.raises(ValueError):
            VerificationReport("green", "x", "maybe", {}, 0)

    def test_skipped_counts_as_passing(self):
        assert all_passed([VerificationReport("green", "x", "skipped", {}, 0)])

    def test_unknown_suite(self):
        with pytest.raises(ValueError, match="unknown suite"):
            run_suite("nope")

    @pytest.mark.parametrize("kw", [{"p": 4}, {"precision": 1}, {"trials": 0}])
    def test_invalid_params(self, kw):
        with pytest.raises(ValueError):
            SuiteParams(**kw)

    def test_large_prime_skips_census(self):
        reps = run_suite("green", SuiteParams(p=11, trials=5))
        assert {r.status for r in reps} <= {"pass", "skipped"}
        assert "skipped" in {r.status for r in reps}

    def test_oracle(self):
        (rep,) = run_suite("oracle-s3")
        assert rep.status == "pass"
        assert rep.metrics["cartan"] == [[2, 1], [1, 2]]


class TestGolCli:
    def test_suite_exit_zero_and_json(self, tmp_path, capsys):
        path = tmp_path / "out.json"
        assert gol_main(["--suite", "brauer", "--json", str(path)]) == 0
        docs = json.loads(path.read_text(encoding="utf-8"))
        assert {d["suite"] for d in docs} == {"brauer"}
        assert "[PASS" in capsys.readouterr().out

    def test_json_to_stdout(self, capsys):
        assert gol_main(["--suite", "recollement", "--json", "-"]) == 0
        captured = capsys.readouterr()
        docs = json.loads(captured.out)
        assert "[PASS" in captured.err
        assert all(d["status"] == "pass" for d in docs)

    def test_bad_prime(self, capsys):
        assert gol_main(["--p", "4"]) == 2
        assert "prime" in capsys.readouterr().err

    def test_unknown_suite(self):
        with pytest.raises(SystemExit) as exc:
            gol_main(["--suite", "nope"])
        assert exc.value.code == 2

    def test_green_report(self, capsys):
        assert gol_main(["--green-report", "--p", "3", "--trials", "10"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["rank"] == 10 and doc["cartan"] == [[2, 1, 0], [1, 2, 1], [0, 1, 2]]

    def test_algebra_file(self, tmp_path, capsys):
        path = tmp_path / "alg.json"
        to_algebra(stem(3), 3).save(path)
        assert gol_main(["--algebra", str(path)]) == 0
        assert json.loads(capsys.readouterr().out)["dim"] == 10

    def test_tree_file(self, tmp_path, capsys):
        path = tmp_path / "tree.json"
        path.write_text(json.dumps(star(3, 2).to_json()), encoding="utf-8")
        assert gol_main(["--tree", str(path), "--p", "3"]) == 0
        assert json.loads(capsys.readouterr().out)["cartan_matches_prediction"] is True

    def test_inspection_flags_are_exclusive(self, tmp_path):
        with pytest.raises(SystemExit):
            gol_main(["--green-report", "--tree", str(tmp_path / "t.json")])


class TestPolyfuncCli:
    def test_dims(self, capsys):
        assert polyfunc_main(["dims", "--functor", "sym:3", "--k", "4"]) == 0
        assert json.loads(capsys.readouterr().out)["dims"] == [0, 1, 4, 10, 20]

    def test_cross(self, capsys):
        assert polyfunc_main(["cross", "--functor", "tensor:3", "--slots", "5"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["cross_effects"] == [1, 6, 6, 0, 0] and doc["degree"] == 3

    @pytest.mark.parametrize("lemma", ["welldefined", "modp", "projectivity"])
    def test_verify(self, lemma, capsys):
        assert polyfunc_main(["verify", "--lemma", lemma, "--p", "3", "--trials", "20", "--seed", "1"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["status"] == "pass" and doc["trials"] == 20

    def test_verify_crosshom_single_functor(self, capsys):
        assert polyfunc_main(["verify", "--lemma", "crosshom", "--p", "5", "--functor", "tensor:3"]) == 0
        assert json.loads(capsys.readouterr().out)["failures"] == []

    def test_bad_functor(self, capsys):
        assert polyfunc_main(["dims", "--functor", "foo", "--k", "2"]) == 2
        assert "polyfunc:" in capsys.readouterr().err

    def test_hypothesis_violation_is_a_usage_error(self, capsys):
        assert polyfunc_main(["verify", "--lemma", "welldefined", "--p", "3", "--functor", "sym:3"]) == 2
        assert "degree ≥ p" in capsys.readouterr().err

    @pytest.mark.parametrize("p", [3, 5])
    def test_verify_crosshom_default_functors(self, p, capsys):
        assert polyfunc_main(["verify", "--lemma", "crosshom", "--p", str(p)]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert "id" in doc["functors"] and any(f.startswith("sum(") for f in doc["functors"])
