"""JSON encoding of fields, series, matrices, modules and certificates.

The layout is described by ``schemas/phigamma.schema.json``.  Field elements
are coefficient vectors over F_p (low degree first).  Everything emitted here
is plain lists, dicts, ints and strings so that ``json.dumps(..., sort_keys=True)``
is byte-stable.
"""

from __future__ import annotations

import json
from importlib import resources

import numpy as np

from .errors import InputError
from .field import GF
from .linalg import SMat
from .pgmod.module import PhiGammaModule
from .series import LaurentSeries, PadicUnit, SeriesRing

SCHEMA_VERSION = 1


def load_schema() -> dict:
    text = resources.files("phigamma").joinpath("schemas/phigamma.schema.json").read_text()
    return json.loads(text)


def field_to_json(F: GF) -> dict:
    return {"p": F.p, "deg": F.m, "modulus": list(F.modulus)}


def field_from_json(obj) -> GF:
    try:
        return GF(int(obj["p"]), tuple(int(c) for c in obj["modulus"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad field description: {exc}") from exc


def series_to_json(x: LaurentSeries) -> dict:
    F = x.field
    if x.is_zero():
        return {"e": x.e, "lead": x.prec, "prec": x.prec, "coeffs": []}
    coeffs = [[int(c) for c in v] for v in F.vec[np.asarray(x.coeffs)]]
    # drop trailing zeros: they carry no information beyond prec
    while coeffs and not any(coeffs[-1]):
        coeffs.pop()
    return {"e": x.e, "lead": x.val, "prec": x.prec, "coeffs": coeffs}


def series_from_json(obj, F: GF) -> LaurentSeries:
    try:
        ring = SeriesRing(F, int(obj.get("e", 1)))
        codes = [F(list(c)).code for c in obj["coeffs"]]
        return ring.from_codes(np.array(codes, dtype=np.int64), int(obj["lead"]), int(obj["prec"]))
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad series: {exc}") from exc


def smat_to_json(M: SMat) -> list:
    r, c = M.shape
    return [[series_to_json(M[i, j]) for j in range(c)] for i in range(r)]


def smat_from_json(rows, F: GF) -> SMat:
    if not rows or not isinstance(rows, list):
        raise InputError("matrix must be a non-empty list of rows")
    entries = [[series_from_json(x, F) for x in row] for row in rows]
    if len({len(r) for r in entries}) != 1:
        raise InputError("ragged matrix")
    return SMat(entries[0][0].ring, entries)


def module_to_json(D: PhiGammaModule) -> dict:
    F = D.field
    return {
        "schema_version": SCHEMA_VERSION,
        "p": D.p,
        "field": {"deg": F.m, "modulus": list(F.modulus)},
        "prec": D.prec,
        "d": D.d,
        "mat_phi": smat_to_json(D.mat_phi),
        "gamma": [{"a": a.residue, "a_prec": a.prec, "mat": smat_to_json(G)} for a, G in D.gamma],
    }


def module_from_json(obj) -> PhiGammaModule:
    try:
        p = int(obj["p"])
        F = GF(p, tuple(int(c) for c in obj["field"]["modulus"]))
        P = smat_from_json(obj["mat_phi"], F)
        gam = [
            (PadicUnit(int(g["a"]), int(g["a_prec"]), p), smat_from_json(g["mat"], F))
            for g in obj["gamma"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad module JSON: {exc}") from exc
    d = int(obj.get("d", P.shape[0]))
    if P.shape != (d, d) or any(G.shape != (d, d) for _, G in gam):
        raise InputError("matrix shapes do not match d")
    return PhiGammaModule(P.ring, P, gam)


def certificate_to_json(cert) -> dict:
    F = cert.change_of_basis.ring.field
    return {
        "e": cert.e,
        "rescale": str(cert.rescale),
        "slope": str(cert.slope),
        "prec": cert.prec,
        "vector": smat_to_json(cert.vector),
        "twisted_poly": [series_to_json(c) for c in cert.twisted_poly.coeffs],
        "change_of_basis": smat_to_json(cert.change_of_basis),
        "residual": [[F.elem(int(c)).coords() for c in row] for row in cert.residual],
    }


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
