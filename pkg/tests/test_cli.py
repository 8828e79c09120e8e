"""Job description parsing, the on-disk cache, and the command-line
driver's golden-file determinism."""

import glob
import io
import json
import os

import pytest

from qschur.cache import (algebras_equal, cache_load, cache_store)
from qschur.cli import run
from qschur.jobspec import JobSpec, SpecParseError, parse_spec
from qschur.rootdata import preset
from qschur.schur import SchurAlgebra

DATA = os.path.join(os.path.dirname(__file__), "data")


class TestParsing:
    def test_preset_spec(self):
        spec = parse_spec("datum preset A1\npi gens [2]\ntask build\n")
        assert spec.datum_spec == ("preset", "A1")
        assert spec.pi_gens == [(2,)]
        assert spec.tasks == [("build", {})]
        assert list(spec.pi()) == [(0,), (2,)]

    def test_slash_separated_statements(self):
        spec = parse_spec("datum preset A2 / pi gens [(1,1),(2,0)] / "
                          "task probe height 6")
        assert spec.pi_gens == [(1, 1), (2, 0)]
        assert spec.tasks == [("probe", {"height": 6})]

    def test_matrix_datum(self):
        spec = parse_spec("datum matrix 2,-1;-1,2\npi gens [(1,0)]\n"
                          "task dims\n")
        datum = spec.datum()
        assert datum.rank == 2
        assert datum.cartan.cartan_entry(0, 1) == -1

    def test_ring_statements(self):
        spec = parse_spec("datum preset A1\npi gens [1]\n"
                          "ring rational xi 1/1\ntask specialize\n")
        assert spec.ring_point().xi == 1
        spec = parse_spec("datum preset A1\npi gens [1]\n"
                          "ring cyclotomic 4\ntask specialize\n")
        assert spec.ring_point().field.order == 4

    def test_non_dominant_generator_is_rejected(self):
        spec = parse_spec("datum preset A1\npi gens [-1]\ntask dims\n")
        with pytest.raises(SpecParseError, match="not dominant"):
            spec.pi()

    def test_parse_errors_carry_line_numbers(self):
        with pytest.raises(SpecParseError, match="line 2"):
            parse_spec("datum preset A1\nbogus statement\n")
        with pytest.raises(SpecParseError, match="unknown preset"):
            parse_spec("datum preset Z9\n")
        with pytest.raises(SpecParseError, match="unknown task"):
            parse_spec("datum preset A1\ntask frobnicate\n")
        with pytest.raises(SpecParseError):
            parse_spec("datum preset A1\npi gens [oops]\n")
        with pytest.raises(SpecParseError):
            parse_spec("datum preset A1\nring rational xi 0/1\n")

    def test_serialize_round_trip(self):
        text = ("datum preset B2\npi gens [(1,0),(0,2)]\n"
                "ring cyclotomic 6\ntask build\ntask probe height 4\n")
        spec = parse_spec(text)
        again = parse_spec(spec.serialize())
        assert spec == again

    def test_comments_and_blank_lines_are_skipped(self):
        spec = parse_spec("# header\n\ndatum preset A1\npi gens [1]\n"
                          "task build\n")
        assert spec.datum_spec == ("preset", "A1")


class TestCache:
    def test_round_trip_structural_equality(self, tmp_path):
        pi = preset("A1").saturate([(2,)])
        alg = SchurAlgebra(pi)
        cache_store(alg, str(tmp_path))
        warns = []
        loaded = cache_load(pi, str(tmp_path), warn=warns.append)
        assert warns == []
        assert loaded is not None
        assert algebras_equal(alg, loaded)
        assert loaded.dimension() == alg.dimension()
        assert all(r["ok"] for r in loaded.verify_presentation())

    def test_miss_returns_none(self, tmp_path):
        pi = preset("A1").saturate([(6,)])
        assert cache_load(pi, str(tmp_path), warn=lambda m: None) is None

    def test_checksum_failure_is_reported_and_ignored(self, tmp_path):
        pi = preset("A1").saturate([(1,)])
        path = cache_store(SchurAlgebra(pi), str(tmp_path))
        blob = open(path).read().replace('"version": 1', '"version": 2')
        assert '"version": 2' in blob
        with open(path, "w") as fh:
            fh.write(blob)
        warns = []
        assert cache_load(pi, str(tmp_path), warn=warns.append) is None
        assert any("checksum" in w for w in warns)

    def test_truncated_file_is_reported_and_ignored(self, tmp_path):
        pi = preset("A1").saturate([(1,)])
        path = cache_store(SchurAlgebra(pi), str(tmp_path))
        with open(path, "w") as fh:
            fh.write("{not json")
        warns = []
        assert cache_load(pi, str(tmp_path), warn=warns.append) is None
        assert warns


def run_cli(args, cache_dir):
    out, err = io.StringIO(), io.StringIO()
    code = run(args + ["--cache-dir", str(cache_dir)], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def task_of(spec_path):
    for line in open(spec_path):
        for stmt in line.split(" / "):
            if stmt.strip().startswith("task"):
                return stmt.split()[1]
    raise AssertionError(f"no task in {spec_path}")


GOLDEN_SPECS = sorted(glob.glob(os.path.join(DATA, "*.qs")))


class TestGoldenFiles:
    def test_at_least_six_golden_specs(self):
        assert len(GOLDEN_SPECS) >= 6

    @pytest.mark.parametrize("spec_path", GOLDEN_SPECS,
                             ids=[os.path.basename(p) for p in GOLDEN_SPECS])
    def test_json_report_matches_golden(self, spec_path, tmp_path):
        task = task_of(spec_path)
        code, out, _ = run_cli(
            [task, "--spec", spec_path, "--format", "json"], tmp_path)
        assert code == 0
        got = json.loads(out)
        got.pop("elapsed")
        with open(spec_path[:-3] + ".json") as fh:
            expect = json.load(fh)
        assert got == expect

    def test_cold_and_warm_cache_are_byte_identical(self, tmp_path):
        spec_path = os.path.join(DATA, "a1_dims.qs")
        outs = []
        for _ in range(2):
            code, out, _ = run_cli(
                ["dims", "--spec", spec_path, "--format", "json"], tmp_path)
            assert code == 0
            outs.append("\n".join(
                line for line in out.splitlines()
                if '"elapsed"' not in line))
        assert outs[0] == outs[1]

    def test_human_format_is_deterministic_too(self, tmp_path):
        spec_path = os.path.join(DATA, "a1_build.qs")
        outs = []
        for _ in range(2):
            code, out, _ = run_cli(
                ["build", "--spec", spec_path, "--format", "human"],
                tmp_path)
            assert code == 0
            outs.append("\n".join(line for line in out.splitlines()
                                  if not line.startswith("elapsed")))
        assert outs[0] == outs[1]
        assert "status: pass" in outs[0]


class TestExitCodes:
    def test_parse_error_exits_2(self, tmp_path):
        bad = tmp_path / "bad.qs"
        bad.write_text("datum preset A1\npi gens [-1]\ntask dims\n")
        code, _, err = run_cli(["dims", "--spec", str(bad)], tmp_path)
        assert code == 2
        assert "not dominant" in err

    def test_missing_spec_file_exits_2(self, tmp_path):
        code, _, err = run_cli(
            ["dims", "--spec", str(tmp_path / "nope.qs")], tmp_path)
        assert code == 2

    def test_missing_ring_for_specialize_exits_2(self, tmp_path):
        bad = tmp_path / "bad.qs"
        bad.write_text("datum preset A1\npi gens [1]\ntask specialize\n")
        code, _, err = run_cli(["specialize", "--spec", str(bad)], tmp_path)
        assert code == 2
        assert "ring" in err

    def test_env_cache_dir_is_used(self, tmp_path, monkeypatch):
        monkeypatch.setenv("QHAT_CACHE_DIR", str(tmp_path / "envcache"))
        spec_path = os.path.join(DATA, "a1_build.qs")
        out, err = io.StringIO(), io.StringIO()
        code = run(["build", "--spec", spec_path, "--format", "json"],
                   out=out, err=err)
        assert code == 0
        assert os.listdir(tmp_path / "envcache")
