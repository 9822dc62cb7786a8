import csv
import io
import json

import numpy as np
import pytest

from blockdet import partition
from blockdet.cli import main
from blockdet.matio import parse_scaled, write_block_json, write_dense_text
from conftest import random_complex


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def dense_file(tmp_path, rng):
    path = tmp_path / "m.txt"
    path.write_text(write_dense_text(random_complex(rng, 6)))
    return str(path)


@pytest.fixture
def block_file(tmp_path, rng):
    path = tmp_path / "m.json"
    path.write_text(write_block_json(partition(random_complex(rng, 6), 3, 2)))
    return str(path)


class TestDet:
    def test_identity(self, tmp_path, capsys):
        path = tmp_path / "id.txt"
        path.write_text("2 2\n1 0\n0 1\n")
        code, out, _ = run_cli(capsys, "det", str(path))
        assert code == 0
        assert out.strip() == "1.000000000000+0.000000000000E+000"

    def test_block_json_diagonal(self, tmp_path, capsys, rng):
        blocks = np.zeros((2, 2, 2, 2), dtype=complex)
        blocks[0, 0] = [[2, 0], [0, 2]]
        blocks[1, 1] = [[3, 0], [0, 3]]
        from blockdet import BlockMatrix

        path = tmp_path / "bd.json"
        path.write_text(write_block_json(BlockMatrix(2, 2, blocks)))
        code, out, _ = run_cli(capsys, "det", str(path))
        assert code == 0
        value = parse_scaled(out.strip())
        assert value.to_complex() == pytest.approx(36.0)

    def test_partition_agrees_with_dense(self, dense_file, capsys):
        code, plain, _ = run_cli(capsys, "det", dense_file)
        assert code == 0
        code, partitioned, _ = run_cli(capsys, "det", dense_file, "--partition", "3,2")
        assert code == 0
        a = parse_scaled(plain.strip()).to_complex()
        b = parse_scaled(partitioned.strip()).to_complex()
        assert abs(a - b) / abs(b) < 1e-8

    def test_singular_pivot_exit_code(self, tmp_path, capsys):
        # S22 = 0 makes the first pivot singular, but the matrix is invertible
        path = tmp_path / "sp.txt"
        path.write_text("2 2\n1 1\n1 0\n")
        code, _, err = run_cli(capsys, "det", str(path), "--partition", "2,1")
        assert code == 2
        assert "level" in err or "singular" in err.lower()
        code, out, _ = run_cli(
            capsys, "det", str(path), "--partition", "2,1", "--fallback", "dense"
        )
        assert code == 0
        assert parse_scaled(out.strip()).to_complex() == pytest.approx(-1.0)

    def test_parse_error_exit_code(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("2 2\n1 2 3\n")
        code, _, err = run_cli(capsys, "det", str(path))
        assert code == 1
        assert err

    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "det", "/nonexistent/m.txt")
        assert code == 1

    def test_indivisible_partition(self, dense_file, capsys):
        code, _, err = run_cli(capsys, "det", dense_file, "--partition", "4,2")
        assert code == 1

    def test_forced_format(self, tmp_path, capsys, rng):
        # a dense-text file with an unusual name still parses when forced
        path = tmp_path / "m.json"
        path.write_text(write_dense_text(random_complex(rng, 3)))
        code, out, _ = run_cli(capsys, "det", str(path), "--format", "dense-text")
        assert code == 0


class TestParseCheck:
    def test_round_trip(self, dense_file, capsys):
        code, out, _ = run_cli(capsys, "parse-check", dense_file)
        assert code == 0
        assert out.startswith("parse-check OK:")


class TestCompare:
    def test_within_tolerance(self, block_file, capsys):
        code, out, _ = run_cli(capsys, "compare", block_file)
        assert code == 0
        assert "rel_error" in out

    def test_trials_deterministic(self, block_file, capsys):
        code, first, _ = run_cli(capsys, "compare", block_file, "--trials", "2", "--seed", "7")
        assert code == 0
        code, second, _ = run_cli(capsys, "compare", block_file, "--trials", "2", "--seed", "7")
        assert first == second

    def test_impossible_tolerance(self, block_file, capsys):
        code, _, err = run_cli(capsys, "compare", block_file, "--tol", "1e-18")
        assert code == 3
        assert "exceeded" in err

    def test_requires_partition(self, dense_file, capsys):
        code, _, err = run_cli(capsys, "compare", dense_file)
        assert code == 1

    def test_dense_with_partition(self, dense_file, capsys):
        code, out, _ = run_cli(capsys, "compare", dense_file, "--partition", "2,3")
        assert code == 0


class TestBench:
    def test_minimal_sweep(self, capsys):
        code, out, _ = run_cli(
            capsys, "bench", "--max-N", "2", "--max-n", "1", "--trials", "1"
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 2
        assert {r["method"] for r in rows} == {"block", "dense"}
        assert all(float(r["relative_error"]) < 1e-8 for r in rows)

    def test_seed_reproducibility(self, capsys):
        args = ("bench", "--max-N", "3", "--max-n", "2", "--trials", "2", "--seed", "42")
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        first_errors = [r["relative_error"] for r in csv.DictReader(io.StringIO(first))]
        second_errors = [r["relative_error"] for r in csv.DictReader(io.StringIO(second))]
        assert first_errors == second_errors


class TestNjl:
    def test_defaults_pass(self, capsys):
        code, out, _ = run_cli(capsys, "njl")
        assert code == 0
        assert "total multiplicity: 48" in out
        assert "FAIL" not in out

    def test_zero_gap_degeneracy(self, capsys):
        code, out, _ = run_cli(capsys, "njl", "--delta-re", "0", "--delta-im", "0")
        assert code == 0
        lines = [l for l in out.splitlines() if l.strip().startswith("E")]
        e1 = float(lines[0].split("=")[1].split("(")[0])
        e3 = float(lines[2].split("=")[1].split("(")[0])
        assert e1 == pytest.approx(e3)

    def test_multiplicities_sum(self, capsys):
        code, out, _ = run_cli(capsys, "njl", "--mu", "0.2", "--kx", "0.4")
        mults = [
            int(l.split("(multiplicity")[1].strip(" )"))
            for l in out.splitlines()
            if l.strip().startswith("E") and "(multiplicity" in l
        ]
        assert sum(mults) == 48


class TestServerDispatch:
    @pytest.fixture
    def via_asgi(self, monkeypatch):
        # route --server traffic to the FastAPI app without a socket
        from fastapi.testclient import TestClient

        from blockdet import cli
        from blockdet.api import app

        def fake_init(self, base_url):
            self._client = TestClient(app)

        monkeypatch.setattr(cli._RemoteDispatcher, "__init__", fake_init)

    def test_det_matches_local(self, dense_file, capsys, via_asgi):
        code, local, _ = run_cli(capsys, "det", dense_file)
        assert code == 0
        code, remote, _ = run_cli(
            capsys, "--server", "http://testserver", "det", dense_file
        )
        assert code == 0
        assert remote == local

    def test_singular_pivot_maps_to_exit_2(self, tmp_path, capsys, via_asgi):
        path = tmp_path / "sp.txt"
        path.write_text("2 2\n1 1\n1 0\n")
        code, _, err = run_cli(
            capsys, "--server", "http://testserver", "det", str(path),
            "--partition", "2,1",
        )
        assert code == 2

    def test_njl_over_server(self, capsys, via_asgi):
        code, out, _ = run_cli(capsys, "--server", "http://testserver", "njl")
        assert code == 0
        assert "total multiplicity: 48" in out


class TestArgumentErrors:
    def test_bad_partition_string(self, dense_file, capsys):
        code, _, err = run_cli(capsys, "det", dense_file, "--partition", "nope")
        assert code == 1

    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 1
