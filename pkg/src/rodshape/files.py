"""File formats: dataset CSV, profile CSV, error CSV, JSON reports.

All floats are written with 17 significant digits so that every file
round-trips bit for bit; writes go through a temporary file and an atomic
rename so that readers never observe a half-written file.
"""

from __future__ import annotations

import csv
import json
import math
import os
import tempfile

import numpy as np

from .forward import ResponseSample

__all__ = [
    "write_text_atomic",
    "write_dataset_csv",
    "read_dataset_csv",
    "write_profile_csv",
    "read_profile_csv",
    "write_error_csv",
    "write_json",
    "read_json",
]


def _fmt(value):
    return f"{float(value):.17g}"


def write_text_atomic(path, text):
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_dataset_csv(path, samples):
    lines = ["omega,f_tilde,resonant"]
    for s in samples:
        f_field = "" if s.resonant else _fmt(s.f_tilde)
        lines.append(f"{_fmt(s.omega)},{f_field},{1 if s.resonant else 0}")
    write_text_atomic(path, "\n".join(lines) + "\n")


def read_dataset_csv(path):
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    if not rows or rows[0] != ["omega", "f_tilde", "resonant"]:
        raise ValueError(f"{path}: expected header 'omega,f_tilde,resonant'")
    samples = []
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != 3:
            raise ValueError(f"{path}:{i}: expected 3 fields, got {len(row)}")
        omega = float(row[0])
        resonant = {"0": False, "1": True}.get(row[2].strip())
        if resonant is None:
            raise ValueError(f"{path}:{i}: resonant flag must be 0 or 1")
        if resonant:
            f_tilde = math.nan
        else:
            f_tilde = float(row[1])
        samples.append(ResponseSample(omega=omega, f_tilde=f_tilde, resonant=resonant))
    return samples


def write_profile_csv(path, recovered):
    with_q = recovered.q is not None
    header = "x,g0,F,q" if with_q else "x,g0,F"
    lines = [header]
    for j in range(recovered.x_grid.size):
        fields = [
            _fmt(recovered.x_grid[j]),
            _fmt(recovered.g0[j]),
            _fmt(recovered.F[j]),
        ]
        if with_q:
            fields.append(_fmt(recovered.q[j]))
        lines.append(",".join(fields))
    write_text_atomic(path, "\n".join(lines) + "\n")


def read_profile_csv(path):
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    if not rows or rows[0][:3] != ["x", "g0", "F"]:
        raise ValueError(f"{path}: expected header 'x,g0,F[,q]'")
    data = np.array([[float(v) for v in row] for row in rows[1:]])
    if data.ndim != 2 or data.shape[1] != len(rows[0]):
        raise ValueError(f"{path}: ragged rows")
    out = {"x": data[:, 0], "g0": data[:, 1], "F": data[:, 2]}
    if data.shape[1] > 3:
        out["q"] = data[:, 3]
    return out


def write_error_csv(path, x, rel_error):
    lines = ["x,rel_error"]
    for xi, ei in zip(x, rel_error):
        lines.append(f"{_fmt(xi)},{_fmt(ei)}")
    write_text_atomic(path, "\n".join(lines) + "\n")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def write_json(path, obj):
    write_text_atomic(path, json.dumps(_jsonable(obj), indent=2) + "\n")


def read_json(path):
    with open(path) as handle:
        return json.load(handle)
