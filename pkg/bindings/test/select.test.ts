import { execFile } from "node:child_process";
import { mkdtemp, readFile, rm } from "node:fs/promises";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { promisify } from "node:util";

import { afterAll, describe, expect, it } from "vitest";

import {
  ConfigError,
  DataError,
  DimensionError,
  decodeEmbeddings,
  parseScoresFile,
  select,
} from "../src/index.js";

const execFileAsync = promisify(execFile);
const HERE = dirname(fileURLToPath(import.meta.url));
const FIXTURES = join(HERE, "..", "..", "tests", "fixtures");

const cleanups: string[] = [];
afterAll(async () => {
  for (const dir of cleanups) {
    await rm(dir, { recursive: true, force: true });
  }
});

async function loadFixture(scoresFile: string) {
  const matrix = decodeEmbeddings(await readFile(join(FIXTURES, "small.rdmv")));
  const scores = parseScoresFile(await readFile(join(FIXTURES, scoresFile), "utf8"));
  return { matrix, scores };
}

function toRows(matrix: { rows: number; cols: number; data: Float64Array }): number[][] {
  const rows: number[][] = [];
  for (let r = 0; r < matrix.rows; r++) {
    rows.push(Array.from(matrix.data.subarray(r * matrix.cols, (r + 1) * matrix.cols)));
  }
  return rows;
}

describe("fixture parity with the CLI and the naive reference", () => {
  it("matches the recorded naive_select indices on every shipped fixture", async () => {
    const expected = JSON.parse(
      await readFile(join(FIXTURES, "expected_indices.json"), "utf8"),
    ) as Record<string, { scores_file: string; k: number; indices: number[]; gate: string }>;

    for (const entry of Object.values(expected)) {
      const { matrix, scores } = await loadFixture(entry.scores_file);
      const result = await select(matrix.data, scores, entry.k, { dim: matrix.cols });
      expect(result.indices).toEqual(entry.indices);
      expect(result.gate).toBe(entry.gate);
    }
  });

  it("agrees with a direct CLI invocation on the same files", async () => {
    const workdir = await mkdtemp(join(tmpdir(), "rdmv-parity-"));
    cleanups.push(workdir);
    const outPath = join(workdir, "cli.json");
    await execFileAsync("python3", [
      "-m", "rdmv",
      "--embeddings", join(FIXTURES, "small.rdmv"),
      "--scores", join(FIXTURES, "small_scores.txt"),
      "--k", "2",
      "--out", outPath,
    ]);
    const cliDoc = JSON.parse(await readFile(outPath, "utf8"));

    const { matrix, scores } = await loadFixture("small_scores.txt");
    const result = await select(toRows(matrix), scores, 2);
    expect(result.indices).toEqual(cliDoc.indices);
    expect(result.lambda).toBe(cliDoc.lambda);
    expect(result.cv).toBe(cliDoc.cv);
    expect(result.rho).toBe(cliDoc.rho);
    expect(result.gains).toEqual(cliDoc.gains);
  });
});

describe("input handling", () => {
  it("never mutates caller arrays", async () => {
    const { matrix, scores } = await loadFixture("small_scores.txt");
    const embSnapshot = Float64Array.from(matrix.data);
    const scoreSnapshot = Float64Array.from(scores);
    await select(matrix.data, scores, 2, { dim: matrix.cols });
    expect(Array.from(matrix.data)).toEqual(Array.from(embSnapshot));
    expect(Array.from(scores)).toEqual(Array.from(scoreSnapshot));
  });

  it("returns all indices without error when k exceeds the frame count", async () => {
    const { matrix, scores } = await loadFixture("small_scores.txt");
    const result = await select(toRows(matrix), scores, 99);
    expect(result.indices).toEqual([0, 1, 2, 3, 4]);
  });

  it("rejects out-of-range scores with the CLI's message", async () => {
    const { matrix } = await loadFixture("small_scores.txt");
    await expect(
      select(toRows(matrix), [0.2, 1.5, 0.3, 0.1, 0.4], 2),
    ).rejects.toThrow(new DataError("scores[1] = 1.5 outside [0, 1]"));
  });

  it("rejects non-finite values", async () => {
    const { matrix, scores } = await loadFixture("small_scores.txt");
    const rows = toRows(matrix);
    rows[3][1] = Number.NaN;
    await expect(select(rows, scores, 2)).rejects.toThrow(
      new DataError("embedding row 3 contains a non-finite value"),
    );
    await expect(
      select(toRows(matrix), [0.2, Number.POSITIVE_INFINITY, 0.3, 0.1, 0.4], 2),
    ).rejects.toThrow(new DataError("scores[1] is not finite"));
  });

  it("rejects shape mismatches", async () => {
    const { matrix, scores } = await loadFixture("small_scores.txt");
    await expect(select(toRows(matrix), [0.5, 0.5], 2)).rejects.toThrow(
      new DimensionError("2 scores for 5 embeddings; counts must match"),
    );
    await expect(
      select(matrix.data.subarray(0, 13), scores, 2, { dim: matrix.cols }),
    ).rejects.toThrow(DimensionError);
  });

  it("validates k and config at the boundary", async () => {
    const { matrix, scores } = await loadFixture("small_scores.txt");
    await expect(select(toRows(matrix), scores, 0)).rejects.toThrow(
      new ConfigError("k must be a positive integer, got 0"),
    );
    await expect(
      select(toRows(matrix), scores, 2, { epsilon: -1 }),
    ).rejects.toThrow(new ConfigError("epsilon must be positive, got -1"));
  });

  it("honors force_mode and lambda_fixed", async () => {
    const { matrix, scores } = await loadFixture("small_scores_low.json");
    const gated = await select(toRows(matrix), scores, 3);
    expect(gated.gate).toBe("diversity_only");
    expect(gated.lambda).toBe(1);
    const forced = await select(toRows(matrix), scores, 3, {
      force_mode: "rd",
      lambda_fixed: 0.25,
    });
    expect(forced.gate).toBe("relevance_diversity");
    expect(forced.lambda).toBe(0.25);
  });
});

describe("concurrency", () => {
  it("four concurrent identical calls return identical results", async () => {
    const { matrix, scores } = await loadFixture("small_scores.txt");
    const rows = toRows(matrix);
    const results = await Promise.all(
      Array.from({ length: 4 }, () => select(rows, scores, 2)),
    );
    for (const result of results.slice(1)) {
      expect(result).toEqual(results[0]);
    }
  });

  it("concurrent calls with different inputs stay isolated", async () => {
    const { matrix, scores } = await loadFixture("small_scores.txt");
    const rows = toRows(matrix);
    const low = parseScoresFile(
      await readFile(join(FIXTURES, "small_scores_low.json"), "utf8"),
    );
    const [a, b] = await Promise.all([
      select(rows, scores, 2),
      select(rows, low, 3),
    ]);
    expect(a.gate).toBe("relevance_diversity");
    expect(b.gate).toBe("diversity_only");
  });
});
