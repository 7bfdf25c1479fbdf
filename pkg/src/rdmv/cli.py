"""Command-line entry point for selection runs and the synthetic bench."""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import bench as bench_mod
from .control import plan_selection
from .errors import (
    ConfigError,
    DataError,
    DimensionError,
    FormatError,
    RdmvError,
    SpecError,
    ZeroVectorError,
)
from .io import read_embeddings, read_scores, render_result, RunRecord, write_result
from .types import RelevanceVector, SelectionConfig

USAGE_ERROR = 2
DATA_ERROR = 1


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def build_select_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rdmv",
        description=(
            "Select keyframes maximizing relevance plus log-det diversity. "
            "Run 'rdmv bench --help' for the synthetic benchmark."
        ),
    )
    p.add_argument("--embeddings", required=True, help="binary embedding file")
    p.add_argument("--scores", help="score file (line-per-score or JSON)")
    p.add_argument("--k", required=True, type=_positive_int, help="selection budget")
    p.add_argument("--epsilon", type=float, default=1e-6, help="Gram stability term")
    p.add_argument("--tau", type=float, default=0.4, help="gate threshold on max score")
    p.add_argument("--lambda-min", type=float, default=0.05, dest="lambda_min")
    p.add_argument("--lambda-max", type=float, default=0.6, dest="lambda_max")
    p.add_argument("--alpha", type=float, default=2.0, help="CV sensitivity")
    p.add_argument("--rho-cap", type=float, default=8.0, dest="rho_cap")
    p.add_argument("--delta-cv", type=float, default=1e-8, dest="delta_cv")
    p.add_argument(
        "--lambda",
        type=float,
        default=None,
        dest="lambda_fixed",
        help="fix the diversity weight instead of the adaptive schedule",
    )
    p.add_argument(
        "--force-mode",
        choices=("auto", "rd", "diversity"),
        default="auto",
        help="auto: gate decides; rd: bypass the gate; diversity: force fallback",
    )
    p.add_argument("--out", help="output path (default: standard output)")
    p.add_argument(
        "--trace",
        action="store_true",
        help="include per-candidate gains for the first greedy step",
    )
    return p


def build_bench_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rdmv bench",
        description="Run the synthetic coverage benchmark over many seeds.",
    )
    p.add_argument("--spec", required=True, help="JSON instance spec file")
    p.add_argument("--seeds", required=True, type=_positive_int, help="number of seeds")
    p.add_argument("--out", help="table output path (default: standard output)")
    return p


def _run_select(argv) -> int:
    parser = build_select_parser()
    args = parser.parse_args(argv)
    if args.scores is None and args.force_mode != "diversity":
        parser.error("--scores is required unless --force-mode diversity")

    try:
        cfg = SelectionConfig(
            k=args.k,
            epsilon=args.epsilon,
            tau=args.tau,
            lambda_min=args.lambda_min,
            lambda_max=args.lambda_max,
            alpha_cv=args.alpha,
            rho_cap=args.rho_cap,
            delta_cv=args.delta_cv,
        )
    except ConfigError as exc:
        parser.error(str(exc))

    try:
        emb = read_embeddings(args.embeddings)
    except (FormatError, DataError, OSError) as exc:
        print(f"error: --embeddings {args.embeddings}: {exc}", file=sys.stderr)
        return DATA_ERROR

    try:
        if args.scores is None:
            scores = RelevanceVector(np.zeros(emb.count))
        else:
            scores = read_scores(args.scores)
    except (FormatError, DataError, ConfigError, OSError) as exc:
        print(f"error: --scores {args.scores}: {exc}", file=sys.stderr)
        return DATA_ERROR

    start = time.perf_counter()
    try:
        plan, result = plan_selection(
            emb,
            scores,
            args.k,
            cfg,
            force_mode=args.force_mode,
            lambda_override=args.lambda_fixed,
        )
    except (DimensionError, ZeroVectorError, DataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    duration_ms = (time.perf_counter() - start) * 1000.0

    first_step = None
    if args.trace:
        first_step = tuple(
            plan.r_eff.scores + plan.lambda_final * np.log(1.0 + cfg.epsilon)
        )
    record = RunRecord(
        indices=result.indices,
        selection_order=result.selection_order,
        gains=result.gains,
        gate=result.gate,
        lam=plan.lambda_final,
        cv=plan.cv,
        rho=plan.rho,
        blend_weight=plan.blend_weight,
        config={
            "k": args.k,
            "epsilon": cfg.epsilon,
            "tau": cfg.tau,
            "lambda_min": cfg.lambda_min,
            "lambda_max": cfg.lambda_max,
            "alpha_cv": cfg.alpha_cv,
            "rho_cap": cfg.rho_cap,
            "delta_cv": cfg.delta_cv,
            "force_mode": args.force_mode,
        },
        duration_ms=duration_ms,
        first_step_gains=first_step,
    )
    if args.out:
        try:
            write_result(record, args.out)
        except OSError as exc:
            print(f"error: --out {args.out}: {exc}", file=sys.stderr)
            return DATA_ERROR
    else:
        sys.stdout.write(render_result(record))
    return 0


def _run_bench(argv) -> int:
    parser = build_bench_parser()
    args = parser.parse_args(argv)
    try:
        with open(args.spec) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: --spec {args.spec}: {exc}", file=sys.stderr)
        return DATA_ERROR
    try:
        k = int(doc.pop("k"))
    except KeyError:
        print(f'error: --spec {args.spec}: missing "k"', file=sys.stderr)
        return DATA_ERROR
    try:
        spec = bench_mod.InstanceSpec(
            n_frames=doc["n_frames"],
            dim=doc["dim"],
            n_segments=doc["n_segments"],
            evidence_spans=tuple(tuple(s) for s in doc["evidence_spans"]),
            relevance_peak=doc["relevance_peak"],
            relevance_baseline=doc.get("relevance_baseline", 0.1),
            relevance_noise_std=doc.get("relevance_noise_std", 0.0),
            embedding_noise_std=doc.get("embedding_noise_std", 0.0),
            span_peaks=tuple(doc["span_peaks"]) if doc.get("span_peaks") else None,
            seed=doc.get("seed", 0),
        )
    except (KeyError, SpecError, TypeError) as exc:
        print(f"error: --spec {args.spec}: {exc}", file=sys.stderr)
        return DATA_ERROR

    base_seed = spec.seed
    try:
        rows = bench_mod.run_benchmark(
            spec, k, seeds=range(base_seed, base_seed + args.seeds)
        )
    except RdmvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    table = bench_mod.format_table(rows)
    summary = bench_mod.summary_document(spec, k, args.seeds, rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(table)
        with open(args.out + ".summary.json", "w") as fh:
            fh.write(summary)
    else:
        sys.stdout.write(table)
        sys.stdout.write(summary)
    return 0


def run_cli(argv) -> int:
    """Dispatch to selection or bench; returns the process exit code."""
    argv = list(argv)
    try:
        if argv and argv[0] == "bench":
            return _run_bench(argv[1:])
        return _run_select(argv)
    except SystemExit as exc:  # argparse reports usage errors via exit(2)
        code = exc.code
        return code if isinstance(code, int) else USAGE_ERROR


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
