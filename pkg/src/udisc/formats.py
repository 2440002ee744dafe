"""Ensemble interchange format, schema "udisc-1".

An ensemble document is JSON shaped as

    {
      "schema_version": "udisc-1",
      "dimension": 2,
      "seed": 7,                      # optional, echoed by generators
      "states": [
        {"prior": 0.5, "matrix": [[[re, im], ...], ...]},
        ...
      ]
    }

Complex entries are [re, im] pairs; floats round-trip exactly through
JSON's shortest-repr encoding.  Parse failures report the offending
location (state index, matrix cell); physics failures (non-PSD, bad trace,
bad priors) surface as validation errors, a separate exit code at the CLI.
"""
from __future__ import annotations

import json
from typing import Optional

import numpy as np

from .errors import ParseError
from .numerics import DEFAULT_TOL, ToleranceConfig
from .states import Ensemble, make_ensemble, validate_density

SCHEMA_VERSION = "udisc-1"


def complex_to_pair(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def matrix_to_lists(m: np.ndarray) -> list:
    return [[complex_to_pair(z) for z in row] for row in np.asarray(m, dtype=complex)]


def _pair_to_complex(cell, where: str) -> complex:
    if (not isinstance(cell, (list, tuple)) or len(cell) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in cell)):
        raise ParseError(f"{where}: expected a [re, im] number pair, got {cell!r}")
    return complex(float(cell[0]), float(cell[1]))


def parse_matrix(rows, dim: int, where: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != dim:
        raise ParseError(f"{where}: expected {dim} rows")
    out = np.empty((dim, dim), dtype=np.complex128)
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"{where}[{r}]: expected {dim} cells")
        for c, cell in enumerate(row):
            out[r, c] = _pair_to_complex(cell, f"{where}[{r}][{c}]")
    return out


def ensemble_to_doc(e: Ensemble, seed: Optional[int] = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "dimension": e.dim,
    }
    if seed is not None:
        doc["seed"] = int(seed)
    doc["states"] = [
        {"prior": float(eta), "matrix": matrix_to_lists(s.matrix)}
        for eta, s in zip(e.priors, e.states)
    ]
    return doc


def doc_to_ensemble(doc, tol: ToleranceConfig = DEFAULT_TOL) -> Ensemble:
    """Parse a schema-checked document into a validated ensemble.

    Shape problems raise ParseError with the offending path; validation of
    the physics (Hermiticity, positivity, trace, priors) happens afterwards
    and raises the usual state/ensemble errors.
    """
    if not isinstance(doc, dict):
        raise ParseError(f"top level: expected an object, got {type(doc).__name__}")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ParseError(f"schema_version: expected {SCHEMA_VERSION!r}, got {version!r}")
    dim = doc.get("dimension")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f"dimension: expected a positive integer, got {dim!r}")
    entries = doc.get("states")
    if not isinstance(entries, list) or len(entries) < 2:
        raise ParseError("states: expected a list of at least 2 entries")
    states = []
    priors = []
    for k, entry in enumerate(entries):
        where = f"states[{k}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{where}: expected an object")
        prior = entry.get("prior")
        if not isinstance(prior, (int, float)) or isinstance(prior, bool):
            raise ParseError(f"{where}.prior: expected a number, got {prior!r}")
        if "matrix" not in entry:
            raise ParseError(f"{where}.matrix: missing")
        m = parse_matrix(entry["matrix"], dim, f"{where}.matrix")
        states.append(validate_density(m, tol))
        priors.append(float(prior))
    return make_ensemble(states, priors)


def doc_seed(doc) -> Optional[int]:
    seed = doc.get("seed") if isinstance(doc, dict) else None
    return int(seed) if isinstance(seed, int) and not isinstance(seed, bool) else None


def load_document(path: str) -> dict:
    """Read and JSON-decode a file; decode errors keep their line/column."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def load_ensemble(path: str, tol: ToleranceConfig = DEFAULT_TOL) -> Ensemble:
    return doc_to_ensemble(load_document(path), tol)


def dump_document(doc: dict) -> str:
    """Deterministic serialization: fixed key order, two-space indent."""
    return json.dumps(doc, indent=2) + "\n"


def save_document(path: str, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_document(doc))
