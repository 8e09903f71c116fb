"""Certificate documents: a self-describing JSON serialization of a decomposition.

The digest is SHA-256 over the canonical form of the body (every key but
``digest``): sorted keys, no whitespace, ASCII only.  Ring elements are
written in the ring's text encoding, so no floats ever appear.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .cartan import NotInAlgebraFinding, OdacReport, Submodule, verify_odac
from .errors import CertificateError, NotInAlgebra, OrthodecError
from .finring import RingSpec, parse_ring
from .liealg.algebra import AlgebraSpec
from .odac import Decomposition

FORMAT_VERSION = "1"


def canonical_bytes(body: dict) -> bytes:
    return json.dumps(body, sort_keys=True, separators=(",", ":"), ensure_ascii=True).encode("ascii")


def digest_of(body: dict) -> str:
    return hashlib.sha256(canonical_bytes(body)).hexdigest()


def _matrix_doc(X: np.ndarray, ring: RingSpec) -> dict:
    rows, cols = X.shape
    return {
        "rows": int(rows),
        "cols": int(cols),
        "ring": ring.descriptor(),
        "entries": [[ring.format_elem(int(x)) for x in row] for row in X],
    }


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, float):
        raise TypeError("floats are not allowed in certificates")
    return value


def to_document(D: Decomposition) -> dict:
    A, R = D.algebra, D.ring
    body = {
        "format_version": FORMAT_VERSION,
        "ring": R.descriptor(),
        "algebra": {"family": A.family, "size": A.n},
        "provenance": _jsonable(D.provenance),
        "components": [
            {"name": name, "generators": [_matrix_doc(X, R) for X in A.to_matrix(c.generators)]}
            for name, c in zip(D.names, D.components)
        ],
    }
    return {**body, "digest": digest_of(body)}


def dumps(D: Decomposition) -> str:
    """Certificate text; byte-identical for identical decompositions."""
    return json.dumps(to_document(D), indent=1, ensure_ascii=True) + "\n"


# -- loading -------------------------------------------------------------------------

@dataclass
class LoadedCertificate:
    algebra: AlgebraSpec
    names: list[str]
    matrices: list[list[np.ndarray]]
    provenance: dict


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise CertificateError(msg)


def _parse_matrix(doc, ring: RingSpec, n: int) -> np.ndarray:
    _require(isinstance(doc, dict), "generator must be an object")
    _require(doc.get("rows") == n and doc.get("cols") == n, f"generator must be {n}x{n}")
    _require(doc.get("ring") == ring.descriptor(), "generator ring differs from the certificate ring")
    entries = doc.get("entries")
    _require(isinstance(entries, list) and len(entries) == n, "bad entries")
    out = np.zeros((n, n), dtype=np.int64)
    for i, row in enumerate(entries):
        _require(isinstance(row, list) and len(row) == n, "bad entries row")
        for j, x in enumerate(row):
            _require(isinstance(x, str), "entries must be strings")
            out[i, j] = ring.parse_elem(x)
    return out


def loads(text: str) -> LoadedCertificate:
    """Parse and integrity-check a certificate; raises CertificateError."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"not JSON: {exc}") from exc
    _require(isinstance(doc, dict), "certificate must be an object")
    keys = ["format_version", "ring", "algebra", "provenance", "components", "digest"]
    _require(sorted(doc) == sorted(keys), f"certificate keys must be {keys}")
    _require(doc["format_version"] == FORMAT_VERSION, f"unsupported format_version {doc['format_version']!r}")
    body = {k: v for k, v in doc.items() if k != "digest"}
    _require(doc["digest"] == digest_of(body), "digest mismatch")
    try:
        ring = parse_ring(doc["ring"])
        alg = doc["algebra"]
        _require(isinstance(alg, dict) and isinstance(alg.get("size"), int), "bad algebra field")
        algebra = AlgebraSpec(alg.get("family"), alg["size"], ring)
        comps = doc["components"]
        _require(isinstance(comps, list) and comps, "components must be a non-empty list")
        names, matrices = [], []
        for c in comps:
            _require(isinstance(c, dict) and isinstance(c.get("generators"), list), "bad component")
            names.append(str(c.get("name", "")))
            matrices.append([_parse_matrix(g, ring, algebra.n) for g in c["generators"]])
    except CertificateError:
        raise
    except OrthodecError:
        raise
    except (TypeError, ValueError, KeyError) as exc:
        raise CertificateError(str(exc)) from exc
    return LoadedCertificate(algebra, names, matrices, doc["provenance"])


def verify_certificate(cert: LoadedCertificate, killing: str = "generic") -> OdacReport:
    """Run the verifier on a loaded certificate.

    Generators outside the algebra are reported (and stop the check there)
    rather than raised, since they are a property of the claimed decomposition.
    """
    A = cert.algebra
    comps, bad = [], []
    for ci, mats in enumerate(cert.matrices):
        rows = []
        for gi, X in enumerate(mats):
            try:
                rows.append(A.coords(X))
            except NotInAlgebra:
                bad.append(NotInAlgebraFinding(ci, gi))
        comps.append(Submodule(A, np.array(rows, dtype=np.int64).reshape(-1, A.rank)))
    if bad:
        return OdacReport(bad)
    return verify_odac(comps, killing=killing)


def to_decomposition(cert: LoadedCertificate) -> Decomposition:
    """Rebuild a decomposition (provenance kept, tag as recorded)."""
    A = cert.algebra
    comps = [Submodule(A, np.array([A.coords(X) for X in mats], dtype=np.int64).reshape(-1, A.rank))
             for mats in cert.matrices]
    return Decomposition(A, comps, dict(cert.provenance), list(cert.names))
