"""File formats: density-operator and basis-set JSON.

A state file is a JSON object {"dims": [...], "matrix": [...]} where
dims lists the subsystem dimensions and matrix holds the row-major
density matrix as nested lists of [re, im] pairs. A basis file is
{"dim": d, "bases": [{"label": ..., "vectors": [...]}, ...]} with each
basis row a ket as a list of [re, im] pairs. Pairs keep the format
lossless and parseable outside Python.

Loaders reject malformed input with the specific violated invariant in
the message; physical validation (Hermiticity, unit trace, positivity,
orthonormality) is done by the constructed objects themselves.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .entropy import DensityOperator, ProjectiveBasis
from .errors import ContractError


def _complex_entry(raw, where: str) -> complex:
    if (
        not isinstance(raw, (list, tuple))
        or len(raw) != 2
        or not all(isinstance(part, (int, float)) for part in raw)
        or any(isinstance(part, bool) for part in raw)
    ):
        raise ContractError(f"{where} must be a [re, im] pair of numbers")
    re, im = float(raw[0]), float(raw[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise ContractError(f"{where} must be finite")
    return complex(re, im)


def _parse_dims(raw) -> tuple:
    if not isinstance(raw, list) or not raw:
        raise ContractError("dims must be a non-empty list of integers")
    dims = []
    for k, d in enumerate(raw):
        if isinstance(d, bool) or not isinstance(d, int) or d < 1:
            raise ContractError(f"dims[{k}] must be a positive integer")
        dims.append(d)
    return tuple(dims)


def _parse_square(raw, dim: int, what: str) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != dim:
        raise ContractError(f"{what} must have {dim} rows")
    out = np.zeros((dim, dim), dtype=complex)
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != dim:
            raise ContractError(f"{what} row {i} must have {dim} entries")
        for j, raw_entry in enumerate(row):
            out[i, j] = _complex_entry(raw_entry, f"{what}[{i}][{j}]")
    return out


def _load_json(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ContractError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ContractError(f"{path} must hold a JSON object")
    return data


def load_state(path) -> DensityOperator:
    """Read a state file and return the validated density operator."""
    data = _load_json(path)
    for key in ("dims", "matrix"):
        if key not in data:
            raise ContractError(f"state file is missing the '{key}' field")
    dims = _parse_dims(data["dims"])
    total = math.prod(dims)
    matrix = _parse_square(data["matrix"], total, "matrix")
    return DensityOperator(matrix, dims)


def _pairs(matrix: np.ndarray) -> list:
    return [
        [[float(entry.real), float(entry.imag)] for entry in row] for row in matrix
    ]


def save_state(path, rho: DensityOperator) -> None:
    """Write a density operator in the state-file format."""
    payload = {"dims": list(rho.dims), "matrix": _pairs(rho.matrix)}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def load_bases(path) -> tuple:
    """Read a basis file and return a tuple of projective bases."""
    data = _load_json(path)
    for key in ("dim", "bases"):
        if key not in data:
            raise ContractError(f"basis file is missing the '{key}' field")
    dim = data["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ContractError("dim must be a positive integer")
    raw_bases = data["bases"]
    if not isinstance(raw_bases, list) or not raw_bases:
        raise ContractError("bases must be a non-empty list")
    out = []
    for k, entry in enumerate(raw_bases):
        if not isinstance(entry, dict):
            raise ContractError(f"bases[{k}] must be an object")
        label = entry.get("label")
        if not isinstance(label, str) or not label:
            raise ContractError(f"bases[{k}] needs a non-empty string label")
        vectors = _parse_square(entry.get("vectors"), dim, f"bases[{k}].vectors")
        out.append(ProjectiveBasis(label=label, vectors=vectors))
    return tuple(out)


def save_bases(path, bases) -> None:
    """Write projective bases in the basis-file format."""
    bases = tuple(bases)
    if not bases:
        raise ContractError("no bases to save")
    payload = {
        "dim": int(bases[0].dim),
        "bases": [
            {"label": b.label, "vectors": _pairs(b.vectors)} for b in bases
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
