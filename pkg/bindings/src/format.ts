// Binary embedding interchange: 20-byte header (magic "RDMV", u32
// version, u32 count, u32 dim, u32 dtype tag) followed by row-major
// little-endian float32.  All multi-byte fields are explicitly LE so
// the files are bit-identical across hosts.

import { DataError } from "./errors.js";

const MAGIC = "RDMV";
const VERSION = 1;
const DTYPE_F32 = 1;
const HEADER_BYTES = 20;

export interface Matrix {
  rows: number;
  cols: number;
  /** row-major values, length rows*cols */
  data: Float64Array;
}

export function encodeEmbeddings(matrix: Matrix): Buffer {
  const { rows, cols, data } = matrix;
  const buf = Buffer.alloc(HEADER_BYTES + rows * cols * 4);
  buf.write(MAGIC, 0, "ascii");
  buf.writeUInt32LE(VERSION, 4);
  buf.writeUInt32LE(rows, 8);
  buf.writeUInt32LE(cols, 12);
  buf.writeUInt32LE(DTYPE_F32, 16);
  for (let i = 0; i < data.length; i++) {
    // down-convert to the interchange precision
    buf.writeFloatLE(Math.fround(data[i]), HEADER_BYTES + i * 4);
  }
  return buf;
}

export function decodeEmbeddings(blob: Buffer): Matrix {
  if (blob.length < HEADER_BYTES) {
    throw new DataError(
      `truncated header: need ${HEADER_BYTES} bytes, got ${blob.length}`,
    );
  }
  if (blob.toString("ascii", 0, 4) !== MAGIC) {
    throw new DataError("not an RDMV file");
  }
  const version = blob.readUInt32LE(4);
  if (version !== VERSION) {
    throw new DataError(`unsupported version ${version}, expected ${VERSION}`);
  }
  const rows = blob.readUInt32LE(8);
  const cols = blob.readUInt32LE(12);
  const dtype = blob.readUInt32LE(16);
  if (dtype !== DTYPE_F32) {
    throw new DataError(`unsupported dtype tag ${dtype}, expected ${DTYPE_F32}`);
  }
  const expected = rows * cols * 4;
  const actual = blob.length - HEADER_BYTES;
  if (actual !== expected) {
    throw new DataError(
      `payload length mismatch: expected ${expected} bytes, got ${actual}`,
    );
  }
  const data = new Float64Array(rows * cols);
  for (let i = 0; i < data.length; i++) {
    data[i] = blob.readFloatLE(HEADER_BYTES + i * 4);
  }
  return { rows, cols, data };
}

/** One decimal per line; Number -> string is shortest-round-trip, so the
 *  core parses back the exact double. */
export function encodeScores(scores: Float64Array): string {
  let out = "";
  for (let i = 0; i < scores.length; i++) {
    out += String(scores[i]) + "\n";
  }
  return out;
}

export function parseScoresFile(text: string): Float64Array {
  const stripped = text.trimStart();
  if (stripped.startsWith("{")) {
    const doc = JSON.parse(text) as { scores?: number[] };
    if (!doc.scores) {
      throw new DataError('score document is missing the "scores" key');
    }
    return Float64Array.from(doc.scores);
  }
  const values: number[] = [];
  for (const line of text.split("\n")) {
    const item = line.trim();
    if (item.length > 0) {
      values.push(Number(item));
    }
  }
  return Float64Array.from(values);
}
