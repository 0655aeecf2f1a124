"""Certificate JSON files (format_version 1).

Scalars are encoded per regime: rationals as canonical "p/q" strings, floats
as native JSON numbers (repr round-trips binary64 exactly), algebraic scalars
as {"minpoly": [...], "interval": ["lo", "hi"], "coeffs": ["p/q", ...]} with
the minimal polynomial low-to-high.  Emission is canonical, so
emit(parse(emit(x))) == emit(x) byte for byte.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Union

import numpy as np

from .certificates import GramOperator, MatrixData
from .scalars import AlgebraicField, AlgebraicScalar, format_rational, parse_rational
from .symmetric import SymMatrix

FORMAT_VERSION = 1


class CertificateFormatError(ValueError):
    """Malformed certificate file."""


def _encode_scalar(x):
    if isinstance(x, AlgebraicScalar):
        lo, hi = x.field.interval
        return {
            "minpoly": [int(c) for c in x.field.minpoly],
            "interval": [format_rational(lo), format_rational(hi)],
            "coeffs": [format_rational(c) for c in x.coeffs],
        }
    if isinstance(x, float):
        return x
    return format_rational(x)


def _decode_scalar(obj, field_cache: dict):
    if isinstance(obj, str):
        return parse_rational(obj)
    if isinstance(obj, (int, float)):
        return float(obj)
    if isinstance(obj, dict):
        try:
            minpoly = tuple(int(c) for c in obj["minpoly"])
            lo = parse_rational(obj["interval"][0])
            hi = parse_rational(obj["interval"][1])
            coeffs = [parse_rational(c) for c in obj["coeffs"]]
        except (KeyError, IndexError, ValueError) as exc:
            raise CertificateFormatError(f"bad algebraic scalar: {exc}") from exc
        key = (minpoly, lo, hi)
        if key not in field_cache:
            field_cache[key] = AlgebraicField(minpoly, (lo, hi))
        return AlgebraicScalar(field_cache[key], coeffs)
    raise CertificateFormatError(f"unsupported scalar encoding: {obj!r}")


def _encode_matrix(q: SymMatrix) -> dict:
    return {
        "regime": q.regime,
        "rows": [[_encode_scalar(x) for x in row] for row in q.entries],
    }


def _decode_matrix(obj, field_cache: dict) -> SymMatrix:
    try:
        rows = obj["rows"]
    except (TypeError, KeyError) as exc:
        raise CertificateFormatError("matrix needs a 'rows' field") from exc
    return SymMatrix([[_decode_scalar(x, field_cache) for x in row] for row in rows])


def emit(cert: Union[MatrixData, tuple[GramOperator, SymMatrix, tuple]],
         metadata: dict | None = None) -> str:
    """Canonical JSON text for a homogeneous or general certificate."""
    if isinstance(cert, MatrixData):
        doc = {
            "format_version": FORMAT_VERSION,
            "kind": "homogeneous",
            "n": cert.n,
            "N": cert.big_n,
            "Q": _encode_matrix(cert.q),
            "Y": [list(col) for col in cert.y],
            "weights": [_encode_scalar(w) for w in cert.weights],
            "metadata": _clean_metadata({**cert.metadata, **(metadata or {})}),
        }
    else:
        gram, q, y = cert
        blocks = []
        for r in range(gram.N):
            blocks.append({"r": r, "s": r, "block": [[gram.a(r), 0.0], [0.0, gram.a(r)]]})
        for r in range(gram.N):
            for s in range(r + 1, gram.N):
                b = gram.block(r, s)
                if np.any(b != 0.0):
                    blocks.append({"r": r, "s": s,
                                   "block": [[float(b[0, 0]), float(b[0, 1])],
                                             [float(b[1, 0]), float(b[1, 1])]]})
        doc = {
            "format_version": FORMAT_VERSION,
            "kind": "general",
            "n": q.n,
            "N": gram.N,
            "Q": _encode_matrix(q),
            "Y": [list(col) for col in y],
            "blocks": blocks,
            "metadata": _clean_metadata(metadata or {}),
        }
    return json.dumps(doc, indent=2) + "\n"


def _clean_metadata(meta: dict) -> dict:
    out = {}
    for k, v in sorted(meta.items()):
        if isinstance(v, Fraction):
            out[k] = format_rational(v)
        elif isinstance(v, (str, int, float, bool, type(None), list)):
            out[k] = v
        else:
            out[k] = str(v)
    return out


def parse(text: str):
    """Parse certificate JSON into MatrixData or (GramOperator, Q, Y)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CertificateFormatError("top level must be an object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise CertificateFormatError(f"unsupported format_version {version!r}")
    kind = doc.get("kind")
    field_cache: dict = {}
    try:
        n = int(doc["n"])
        big_n = int(doc["N"])
        q = _decode_matrix(doc["Q"], field_cache)
        y = tuple(tuple(int(x) for x in col) for col in doc["Y"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateFormatError(f"bad certificate body: {exc}") from exc
    if q.n != n or len(y) != big_n or any(len(c) != n for c in y):
        raise CertificateFormatError("inconsistent dimensions")
    metadata = doc.get("metadata", {})
    if kind == "homogeneous":
        try:
            weights = tuple(_decode_scalar(w, field_cache) for w in doc["weights"])
        except KeyError as exc:
            raise CertificateFormatError("homogeneous certificate needs weights") from exc
        return MatrixData(q=q, y=y, weights=weights, metadata=dict(metadata))
    if kind == "general":
        try:
            m = np.zeros((2 * big_n, 2 * big_n))
            for item in doc["blocks"]:
                r, s = int(item["r"]), int(item["s"])
                b = np.array(item["block"], dtype=float)
                m[2 * r:2 * r + 2, 2 * s:2 * s + 2] = b
                m[2 * s:2 * s + 2, 2 * r:2 * r + 2] = b.T
            gram = GramOperator(m)
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateFormatError(f"bad blocks: {exc}") from exc
        return gram, q, y
    raise CertificateFormatError(f"unknown kind {kind!r}")


def write_certificate(path, cert, metadata: dict | None = None) -> None:
    text = emit(cert, metadata)
    with open(path, "w") as fh:
        fh.write(text)


def read_certificate(path):
    with open(path) as fh:
        return parse(fh.read())
