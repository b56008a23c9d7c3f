"""JSON interchange for matrices: {"dim": n, "re": [[...]], "im": [[...]]}."""

from __future__ import annotations

import json

import numpy as np

from .matrix_core import as_matrix


class MatrixFormatError(ValueError):
    pass


def matrix_to_json(a, indices=None, hermitian=None) -> dict:
    m = as_matrix(a)
    out = {"dim": m.shape[0], "re": m.real.tolist(), "im": m.imag.tolist()}
    if indices is not None:
        out["indices"] = [int(i) for i in indices]
    if hermitian is not None:
        out["hermitian"] = bool(hermitian)
    return out


def matrix_from_json(obj) -> np.ndarray:
    try:
        dim = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFormatError(f"malformed matrix object: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise MatrixFormatError(f"expected {dim}x{dim} arrays, got {re.shape} and {im.shape}")
    return re + 1j * im


def load_matrix(path) -> np.ndarray:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"{path}: {exc}") from exc
    return matrix_from_json(obj)


def save_matrix(path, a, **kw):
    with open(path, "w") as fh:
        json.dump(matrix_to_json(a, **kw), fh)
