#!/usr/bin/env python3
# The interchange surface: a 20-byte-header binary embedding file
# (magic "RDMV", little-endian float32 rows), plain-text or JSON score
# files, and a JSON result document with frozen key order.  Anything
# that can write these files can drive the selector through the CLI.

import json
import pathlib
import struct
import subprocess
import sys
import tempfile

import numpy as np

from rdmv import EmbeddingSet, read_embeddings, write_embeddings

workdir = pathlib.Path(tempfile.mkdtemp(prefix="rdmv_demo_"))
rng = np.random.default_rng(5)

emb_path = workdir / "video.rdmv"
write_embeddings(EmbeddingSet(rng.standard_normal((30, 8))), emb_path)

header = struct.unpack("<4sIIII", emb_path.read_bytes()[:20])
print("header:", header, f"({emb_path.stat().st_size} bytes total)")
print("read back shape:", read_embeddings(emb_path).vectors.shape)

scores_path = workdir / "scores.txt"
scores = np.clip(rng.uniform(0.0, 1.0, 30), 0.0, 1.0)
scores_path.write_text("".join(f"{s:.6f}\n" for s in scores))

out_path = workdir / "result.json"
cmd = [
    sys.executable, "-m", "rdmv",
    "--embeddings", str(emb_path),
    "--scores", str(scores_path),
    "--k", "4",
    "--out", str(out_path),
]
print("\n$", " ".join(cmd[2:]))
subprocess.run(cmd, check=True)

doc = json.loads(out_path.read_text())
print("selected:", doc["indices"], "| gate:", doc["gate"],
      "| lambda: %.3f" % doc["lambda"])
print("result document keys:", list(doc))
