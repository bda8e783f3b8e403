"""JSON/CSV serialization with atomic writes.

Input schemas (top-level key decides the kind):

* ``{"re": [[...]], "im": [[...]]}``: two-qubit density matrix (``im`` optional)
* ``{"lambda": [[...]]}``: real parametrization
* ``{"omega": [[...]]}``: real symmetric ``Omega`` (or ``Omega0``)

Floats are written with ``repr`` precision in JSON and ``%.17g`` in CSV, so
every double round-trips exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParseError

DENSITY = "density"
LAMBDA = "lambda"
OMEGA = "omega"


@dataclass(frozen=True)
class LoadedInput:
    kind: str
    matrix: np.ndarray
    raw: dict


def _matrix(obj, key: str, dtype=float) -> np.ndarray:
    try:
        arr = np.asarray(obj, dtype=dtype)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"field {key!r} is not a numeric matrix: {exc}") from None
    if arr.shape != (4, 4):
        raise ParseError(f"field {key!r} must be 4x4, got shape {arr.shape}")
    return arr


def parse_input(data) -> LoadedInput:
    if not isinstance(data, dict):
        raise ParseError("top-level JSON value must be an object")
    if "re" in data:
        re = _matrix(data["re"], "re")
        im = _matrix(data["im"], "im") if "im" in data else np.zeros((4, 4))
        return LoadedInput(DENSITY, re + 1j * im, data)
    if "lambda" in data:
        return LoadedInput(LAMBDA, _matrix(data["lambda"], "lambda"), data)
    if "omega" in data:
        return LoadedInput(OMEGA, _matrix(data["omega"], "omega"), data)
    raise ParseError("expected one of the keys 're', 'lambda' or 'omega'")


def load_input(path) -> LoadedInput:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None
    return parse_input(data)


def density_to_json(rho) -> dict:
    rho = np.asarray(rho, dtype=complex)
    return {"re": rho.real.tolist(), "im": rho.imag.tolist()}


def _atomic_write(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def write_json(path, obj) -> None:
    _atomic_write(path, dumps_json(obj))


def format_float(x: float) -> str:
    if math.isnan(x):
        return "nan"
    return "%.17g" % x


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_float(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def write_csv(path, header, rows) -> None:
    _atomic_write(path, csv_text(header, rows))


def hprofile_rows(samples) -> list:
    return [(float(x), float(h), int(g)) for x, h, g in samples]


def mesh_rows(points) -> list:
    return [tuple(float(v) for v in p) for p in np.asarray(points, dtype=float)]
