"""File formats: binary embeddings, score files, result documents.

Embeddings travel in a fixed little-endian binary layout (20-byte
header + row-major float32 payload) chosen so any language can read it
bit-exactly.  Result documents are JSON with a frozen key order and all
floats rendered to 9 significant digits, which keeps golden-file tests
portable.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass

import numpy as np

from .errors import DataError, FormatError
from .types import EmbeddingSet, RelevanceVector

MAGIC = b"RDMV"
VERSION = 1
DTYPE_F32 = 1
_HEADER = struct.Struct("<4sIIII")

RESULT_KEYS = (
    "indices",
    "selection_order",
    "gains",
    "gate",
    "lambda",
    "cv",
    "rho",
    "blend_weight",
    "config",
    "duration_ms",
)


def write_embeddings(emb, path) -> None:
    """Write an N x d matrix in the binary embedding format."""
    arr = emb.vectors if isinstance(emb, EmbeddingSet) else arr_from(emb)
    n, d = arr.shape
    payload = np.ascontiguousarray(arr, dtype="<f4").tobytes()
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, n, d, DTYPE_F32))
        fh.write(payload)


def arr_from(obj) -> np.ndarray:
    arr = np.asarray(obj, dtype=np.float64)
    if arr.ndim != 2:
        raise FormatError(f"embeddings must be 2-D, got ndim={arr.ndim}")
    return arr


def read_embeddings(path) -> EmbeddingSet:
    """Read a binary embedding file without normalizing its rows.

    Raises FormatError on a bad header or payload-length mismatch and
    DataError when the payload carries non-finite values.
    """
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER.size:
        raise FormatError(
            f"truncated header: need {_HEADER.size} bytes, got {len(blob)}"
        )
    magic, version, n, d, dtype = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise FormatError("not an RDMV file")
    if version != VERSION:
        raise FormatError(f"unsupported version {version}, expected {VERSION}")
    if dtype != DTYPE_F32:
        raise FormatError(f"unsupported dtype tag {dtype}, expected {DTYPE_F32}")
    if n < 1 or d < 1:
        raise FormatError(f"header declares empty matrix ({n} x {d})")
    expected = n * d * 4
    actual = len(blob) - _HEADER.size
    if actual != expected:
        raise FormatError(
            f"payload length mismatch: expected {expected} bytes, got {actual}"
        )
    flat = np.frombuffer(blob, dtype="<f4", offset=_HEADER.size)
    return EmbeddingSet(flat.reshape(n, d).astype(np.float64))


def read_scores(path) -> RelevanceVector:
    """Read relevance scores from a line-per-score text file or JSON.

    JSON files carry the vector under the key "scores".  Values are
    validated into [0, 1].
    """
    with open(path, "r") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON score file: {exc}") from exc
        if "scores" not in doc:
            raise FormatError('score document is missing the "scores" key')
        values = doc["scores"]
    else:
        values = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            try:
                values.append(float(line))
            except ValueError as exc:
                raise DataError(f"line {lineno}: not a number: {line!r}") from exc
    return RelevanceVector(np.asarray(values, dtype=np.float64))


@dataclass
class RunRecord:
    """Everything one CLI run emits, ready for stable serialization."""

    indices: tuple[int, ...]
    selection_order: tuple[int, ...]
    gains: tuple[float, ...]
    gate: str
    lam: float
    cv: float
    rho: float
    blend_weight: float
    config: dict
    duration_ms: float
    first_step_gains: tuple[float, ...] | None = None


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if v == 0.0:
            return "0"
        return "%.9g" % v
    if isinstance(value, str):
        return json.dumps(value)
    if value is None:
        return "null"
    if isinstance(value, dict):
        inner = ", ".join(f"{json.dumps(k)}: {_fmt(v)}" for k, v in value.items())
        return "{" + inner + "}"
    if isinstance(value, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    raise TypeError(f"cannot render {type(value)!r}")


def render_result(record: RunRecord) -> str:
    """Serialize a RunRecord with frozen key order and 9-digit floats."""
    fields = {
        "indices": record.indices,
        "selection_order": record.selection_order,
        "gains": record.gains,
        "gate": record.gate,
        "lambda": record.lam,
        "cv": record.cv,
        "rho": record.rho,
        "blend_weight": record.blend_weight,
        "config": record.config,
        "duration_ms": record.duration_ms,
    }
    lines = [f"  {json.dumps(k)}: {_fmt(v)}" for k, v in fields.items()]
    if record.first_step_gains is not None:
        lines.append(f'  "first_step_gains": {_fmt(record.first_step_gains)}')
    return "{\n" + ",\n".join(lines) + "\n}\n"


def write_result(record: RunRecord, path) -> None:
    with open(path, "w") as fh:
        fh.write(render_result(record))


def read_result(path) -> RunRecord:
    """Parse a result document back into a RunRecord."""
    with open(path, "r") as fh:
        doc = json.load(fh)
    missing = [k for k in RESULT_KEYS if k not in doc]
    if missing:
        raise FormatError(f"result document is missing keys: {missing}")
    return RunRecord(
        indices=tuple(doc["indices"]),
        selection_order=tuple(doc["selection_order"]),
        gains=tuple(float(g) for g in doc["gains"]),
        gate=doc["gate"],
        lam=float(doc["lambda"]),
        cv=float(doc["cv"]),
        rho=float(doc["rho"]),
        blend_weight=float(doc["blend_weight"]),
        config=doc["config"],
        duration_ms=float(doc["duration_ms"]),
        first_step_gains=(
            tuple(float(g) for g in doc["first_step_gains"])
            if "first_step_gains" in doc
            else None
        ),
    )
