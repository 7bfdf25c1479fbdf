"""End-to-end tests of the command-line interface."""

import json
import re
import subprocess
import sys

import numpy as np
import pytest

from rdmv import (
    RelevanceVector,
    naive_select,
    normalize_embeddings,
    plan_selection,
    read_embeddings,
    read_scores,
)
from rdmv.cli import run_cli

DURATION = re.compile(r'"duration_ms": [0-9eE.+-]+')


def mask_duration(text: str) -> str:
    # wall-clock time is the one field that legitimately varies per run
    return DURATION.sub('"duration_ms": <masked>', text)


def select_argv(fixtures_dir, scores="small_scores.txt", k="2", *extra):
    return [
        "--embeddings", str(fixtures_dir / "small.rdmv"),
        "--scores", str(fixtures_dir / scores),
        "--k", k,
        *extra,
    ]


class TestSelectCommand:
    def test_happy_path(self, fixtures_dir, capsys):
        assert run_cli(select_argv(fixtures_dir)) == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["indices"]) == 2

    def test_missing_embeddings_is_usage_error(self, capsys):
        assert run_cli(["--k", "2"]) == 2
        assert "usage" in capsys.readouterr().err

    def test_missing_scores_without_diversity_mode(self, fixtures_dir, capsys):
        argv = ["--embeddings", str(fixtures_dir / "small.rdmv"), "--k", "2"]
        assert run_cli(argv) == 2

    def test_bad_magic_is_data_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.rdmv"
        bad.write_bytes(b"XXXXrest-of-file-is-junk....")
        argv = ["--embeddings", str(bad), "--scores", str(bad), "--k", "2"]
        assert run_cli(argv) == 1
        assert "not an RDMV file" in capsys.readouterr().err

    def test_score_count_mismatch(self, fixtures_dir, tmp_path, capsys):
        scores = tmp_path / "short.txt"
        scores.write_text("0.5\n0.6\n")
        argv = [
            "--embeddings", str(fixtures_dir / "small.rdmv"),
            "--scores", str(scores),
            "--k", "2",
        ]
        assert run_cli(argv) == 1
        assert "counts must match" in capsys.readouterr().err

    def test_out_of_range_score(self, fixtures_dir, tmp_path, capsys):
        scores = tmp_path / "bad.txt"
        scores.write_text("0.5\n1.5\n0.2\n0.2\n0.2\n")
        argv = [
            "--embeddings", str(fixtures_dir / "small.rdmv"),
            "--scores", str(scores),
            "--k", "2",
        ]
        assert run_cli(argv) == 1
        assert "outside [0, 1]" in capsys.readouterr().err

    def test_diversity_mode_without_scores(self, fixtures_dir, capsys):
        argv = [
            "--embeddings", str(fixtures_dir / "small.rdmv"),
            "--k", "3",
            "--force-mode", "diversity",
        ]
        assert run_cli(argv) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["gate"] == "diversity_only"
        # equals the pipeline run with explicit zero scores
        emb = read_embeddings(fixtures_dir / "small.rdmv")
        _, res = plan_selection(emb, np.zeros(emb.count), 3, force_mode="diversity")
        assert doc["indices"] == list(res.indices)

    def test_force_rd_bypasses_gate(self, fixtures_dir, capsys):
        argv = select_argv(fixtures_dir, "small_scores_low.json", "2", "--force-mode", "rd")
        assert run_cli(argv) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["gate"] == "relevance_diversity"

    def test_lambda_override_recorded(self, fixtures_dir, capsys):
        argv = select_argv(fixtures_dir, "small_scores.txt", "2", "--lambda", "0.25")
        assert run_cli(argv) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["lambda"] == 0.25

    def test_trace_dumps_first_step_gains(self, fixtures_dir, capsys):
        argv = select_argv(fixtures_dir, "small_scores.txt", "2", "--trace")
        assert run_cli(argv) == 0
        doc = json.loads(capsys.readouterr().out)
        gains = doc["first_step_gains"]
        assert len(gains) == 5
        # the first pick's recorded gain is its first-step gain
        first_pick = doc["selection_order"][0]
        assert gains[first_pick] == pytest.approx(doc["gains"][0], abs=1e-9)


class TestGoldenFiles:
    @pytest.mark.parametrize(
        "golden,scores,k",
        [
            ("golden_select.json", "small_scores.txt", "2"),
            ("golden_gated.json", "small_scores_low.json", "3"),
        ],
    )
    def test_byte_stable_and_matches_shipped(self, fixtures_dir, tmp_path, golden, scores, k):
        out_a = tmp_path / "a.json"
        out_b = tmp_path / "b.json"
        argv = select_argv(fixtures_dir, scores, k)
        assert run_cli(argv + ["--out", str(out_a)]) == 0
        assert run_cli(argv + ["--out", str(out_b)]) == 0
        text_a, text_b = out_a.read_text(), out_b.read_text()
        assert mask_duration(text_a) == mask_duration(text_b)
        shipped = (fixtures_dir / golden).read_text()
        assert mask_duration(text_a) == mask_duration(shipped)

    @pytest.mark.parametrize(
        "golden,scores",
        [
            ("golden_select.json", "small_scores.txt"),
            ("golden_gated.json", "small_scores_low.json"),
        ],
    )
    def test_refeed_through_naive_reproduces_indices(self, fixtures_dir, golden, scores):
        doc = json.loads((fixtures_dir / golden).read_text())
        emb = normalize_embeddings(read_embeddings(fixtures_dir / "small.rdmv"))
        rel = read_scores(fixtures_dir / scores)
        if doc["gate"] == "diversity_only":
            rel = RelevanceVector(np.zeros(emb.count))
        res = naive_select(
            emb, rel, doc["config"]["k"], doc["lambda"], doc["config"]["epsilon"]
        )
        assert list(res.indices) == doc["indices"]
        assert list(res.selection_order) == doc["selection_order"]


class TestBenchCommand:
    def test_bench_runs_and_is_deterministic(self, fixtures_dir, tmp_path):
        out_a = tmp_path / "a.tsv"
        out_b = tmp_path / "b.tsv"
        argv = ["bench", "--spec", str(fixtures_dir / "bench_spec.json"), "--seeds", "5"]
        assert run_cli(argv + ["--out", str(out_a)]) == 0
        assert run_cli(argv + ["--out", str(out_b)]) == 0
        assert out_a.read_text() == out_b.read_text()
        table = out_a.read_text().splitlines()
        assert table[0].startswith("strategy\t")
        assert len(table) == 1 + 5  # header + five strategies
        summary = json.loads((tmp_path / "a.tsv.summary.json").read_text())
        assert summary["k"] == 4
        assert len(summary["strategies"]) == 5

    def test_bench_missing_spec(self, tmp_path, capsys):
        argv = ["bench", "--spec", str(tmp_path / "nope.json"), "--seeds", "2"]
        assert run_cli(argv) == 1


class TestProcessEntry:
    def test_module_invocation(self, fixtures_dir, tmp_path):
        out = tmp_path / "o.json"
        proc = subprocess.run(
            [sys.executable, "-m", "rdmv", *select_argv(fixtures_dir), "--out", str(out)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stderr
        assert json.loads(out.read_text())["indices"] == [0, 2]
