// Thin wrapper exposing the keyframe selector to Node pipelines that
// compute embeddings and relevance scores in their own runtime.  Input
// arrays are validated here (same messages as the CLI), serialized to
// the documented interchange formats in a private temp directory, and
// handed to the selector process; the JSON result document comes back
// as a plain object.  Inputs are never mutated and every call owns its
// own temp state, so concurrent calls are safe.

import { execFile } from "node:child_process";
import { mkdtemp, readFile, rm, writeFile } from "node:fs/promises";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { promisify } from "node:util";

import { BindingConfig, DEFAULT_CONFIG, resolveConfig } from "./config.js";
import { CliError, ConfigError, DataError, DimensionError } from "./errors.js";
import { encodeEmbeddings, encodeScores, Matrix } from "./format.js";

export { BindingConfig, DEFAULT_CONFIG } from "./config.js";
export { CliError, ConfigError, DataError, DimensionError } from "./errors.js";
export { decodeEmbeddings, encodeEmbeddings, parseScoresFile } from "./format.js";

const execFileAsync = promisify(execFile);

export type EmbeddingInput = number[][] | Float32Array | Float64Array;
export type ScoreInput = ArrayLike<number>;

export interface SelectResult {
  indices: number[];
  gate: "relevance_diversity" | "diversity_only";
  lambda: number;
  cv: number;
  rho: number;
  gains: number[];
}

function toMatrix(embeddings: EmbeddingInput, dim?: number): Matrix {
  if (Array.isArray(embeddings)) {
    const rows = embeddings.length;
    if (rows === 0) {
      throw new ConfigError("embeddings must be at least 1x1, got 0 rows");
    }
    const cols = embeddings[0].length;
    const data = new Float64Array(rows * cols);
    for (let r = 0; r < rows; r++) {
      const row = embeddings[r];
      if (row.length !== cols) {
        throw new DimensionError(
          `embedding row ${r} has ${row.length} values, expected ${cols}`,
        );
      }
      data.set(row, r * cols);
    }
    return { rows, cols, data };
  }
  if (dim === undefined) {
    throw new ConfigError("config.dim is required for flat typed-array embeddings");
  }
  if (dim < 1 || embeddings.length % dim !== 0) {
    throw new DimensionError(
      `embeddings length ${embeddings.length} is not a multiple of dim ${dim}`,
    );
  }
  return {
    rows: embeddings.length / dim,
    cols: dim,
    data: Float64Array.from(embeddings),
  };
}

function validateMatrix(matrix: Matrix): void {
  const { rows, cols, data } = matrix;
  if (rows < 1 || cols < 1) {
    throw new ConfigError(`embeddings must be at least 1x1, got shape (${rows}, ${cols})`);
  }
  for (let i = 0; i < data.length; i++) {
    if (!Number.isFinite(data[i])) {
      throw new DataError(
        `embedding row ${Math.floor(i / cols)} contains a non-finite value`,
      );
    }
  }
}

function validateScores(scores: ScoreInput, frameCount: number): Float64Array {
  const out = Float64Array.from(scores as ArrayLike<number>);
  if (out.length !== frameCount) {
    throw new DimensionError(
      `${out.length} scores for ${frameCount} embeddings; counts must match`,
    );
  }
  for (let i = 0; i < out.length; i++) {
    if (!Number.isFinite(out[i])) {
      throw new DataError(`scores[${i}] is not finite`);
    }
    if (out[i] < 0 || out[i] > 1) {
      throw new DataError(`scores[${i}] = ${out[i]} outside [0, 1]`);
    }
  }
  return out;
}

function cliCommand(cfg: BindingConfig): string[] {
  if (cfg.cli && cfg.cli.length > 0) {
    return cfg.cli;
  }
  const env = process.env.RDMV_CLI;
  if (env && env.trim().length > 0) {
    return env.trim().split(/\s+/);
  }
  return ["python3", "-m", "rdmv"];
}

/**
 * Select k keyframes maximizing relevance plus log-det diversity.
 *
 * The embeddings may be a row-per-frame array of arrays or a flat
 * row-major typed array with `config.dim` set.  Scores are per-frame
 * values in [0, 1].  Returns the selected indices (ascending) together
 * with the gate decision and the diagnostic trace, exactly as the CLI
 * reports them.
 */
export async function select(
  embeddings: EmbeddingInput,
  scores: ScoreInput,
  k: number,
  config: Partial<BindingConfig> = {},
): Promise<SelectResult> {
  if (!Number.isInteger(k) || k < 1) {
    throw new ConfigError(`k must be a positive integer, got ${k}`);
  }
  const cfg = resolveConfig(config);
  const matrix = toMatrix(embeddings, cfg.dim);
  validateMatrix(matrix);
  const scoreVec = validateScores(scores, matrix.rows);

  const workdir = await mkdtemp(join(tmpdir(), "rdmv-"));
  try {
    const embPath = join(workdir, "embeddings.rdmv");
    const scoresPath = join(workdir, "scores.txt");
    const outPath = join(workdir, "result.json");
    await writeFile(embPath, encodeEmbeddings(matrix));
    await writeFile(scoresPath, encodeScores(scoreVec));

    const [cmd, ...baseArgs] = cliCommand(cfg);
    const args = [
      ...baseArgs,
      "--embeddings", embPath,
      "--scores", scoresPath,
      "--k", String(k),
      "--epsilon", String(cfg.epsilon),
      "--tau", String(cfg.tau),
      "--lambda-min", String(cfg.lambda_min),
      "--lambda-max", String(cfg.lambda_max),
      "--alpha", String(cfg.alpha_cv),
      "--rho-cap", String(cfg.rho_cap),
      "--delta-cv", String(cfg.delta_cv),
      "--force-mode", cfg.force_mode,
      "--out", outPath,
    ];
    if (cfg.lambda_fixed !== undefined) {
      args.push("--lambda", String(cfg.lambda_fixed));
    }

    try {
      await execFileAsync(cmd, args);
    } catch (err) {
      const failure = err as { code?: number; stderr?: string; message?: string };
      const detail = (failure.stderr ?? failure.message ?? "").trim();
      throw new CliError(detail || "selector process failed", failure.code ?? 1);
    }

    const doc = JSON.parse(await readFile(outPath, "utf8"));
    return {
      indices: doc.indices,
      gate: doc.gate,
      lambda: doc.lambda,
      cv: doc.cv,
      rho: doc.rho,
      gains: doc.gains,
    };
  } finally {
    await rm(workdir, { recursive: true, force: true });
  }
}
