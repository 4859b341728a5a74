"""Matrix files.

Binary layout (all little-endian)::

    bytes 0-3    magic b"GOPM"
    bytes 4-7    uint32 format version (1)
    bytes 8-15   uint64 rows
    bytes 16-23  uint64 cols
    bytes 24-    rows * cols complex128 entries, column-major

Matrix Market text goes through :mod:`scipy.io`.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse as sp

from .core import GradedOperator, todense

MAGIC = b"GOPM"
VERSION = 1
_HEADER = struct.Struct("<4sIQQ")


class FormatError(ValueError):
    """A matrix file does not follow the documented layout."""


def _matrix(x):
    return x.matrix if isinstance(x, GradedOperator) else x


def write_binary(x, path) -> Path:
    m = np.asarray(todense(_matrix(x)), dtype="<c16")
    if m.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    path = Path(path)
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, m.shape[0], m.shape[1]))
        fh.write(m.tobytes(order="F"))
    return path


def read_binary(path) -> np.ndarray:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise FormatError("file too short for header")
    magic, version, rows, cols = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"unsupported version {version}")
    body = raw[_HEADER.size:]
    if len(body) != rows * cols * 16:
        raise FormatError(f"expected {rows * cols * 16} data bytes, found {len(body)}")
    return np.frombuffer(body, dtype="<c16").reshape((rows, cols), order="F").astype(complex)


def write_matrix_market(x, path, comment: str = "") -> Path:
    m = _matrix(x)
    m = sp.coo_matrix(m) if sp.issparse(m) else np.asarray(m, dtype=complex)
    path = Path(path)
    scipy.io.mmwrite(str(path), m, comment=comment)
    return path if path.suffix else path.with_suffix(".mtx")


def read_matrix_market(path):
    return scipy.io.mmread(str(path))
