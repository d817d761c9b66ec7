"""Matrix Market input and deterministic CSV/JSON output."""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np
import scipy.io

from .errors import ConfigurationError


def read_matrix(path) -> np.ndarray:
    """Dense complex matrix from a Matrix Market file (array or coordinate format)."""
    try:
        M = scipy.io.mmread(str(path))
    except (OSError, ValueError) as exc:
        raise ConfigurationError(f"cannot read Matrix Market file {path}: {exc}") from exc
    if hasattr(M, "toarray"):
        M = M.toarray()
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ConfigurationError(f"{path}: matrix must be square, got shape {M.shape}")
    return M


def write_matrix(path, A, fmt: str = "array") -> None:
    A = np.asarray(A, dtype=complex)
    if fmt == "coordinate":
        from scipy.sparse import coo_matrix

        A = coo_matrix(A)
    scipy.io.mmwrite(str(path), A, field="complex", symmetry="general")


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_clean(obj.real), _clean(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    return obj


def write_json(path, obj) -> None:
    Path(path).write_text(json.dumps(_clean(obj), indent=2, sort_keys=True) + "\n")


def write_csv(path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(["" if x is None else repr(float(x)) if isinstance(x, (float, np.floating)) else x
                             for x in row])
