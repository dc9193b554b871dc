"""Canonical JSON encodings for scalars, representations and reports.

Exact scalars serialize as coefficient vectors of "num/den" strings;
bigfloat scalars as decimal strings with enough digits to round-trip the
binary value exactly.  Serialization is canonical: equal values produce
byte-identical text.
"""

from __future__ import annotations

import json
from fractions import Fraction

import mpmath
from mpmath import mp

import numpy as np

from .representation import Representation
from .scalars import BigComplex, CyclotomicNumber, RootSystem, make_root_system
from .surfaces import surface_from_tag


def _decimal_digits(prec_bits: int) -> int:
    # ceil(bits * log10(2)) plus guard digits guarantees exact round-trip
    return int(prec_bits * 0.30103) + 8


def _mpf_to_str(x, prec_bits):
    with mp.workprec(prec_bits):
        return mpmath.nstr(x, _decimal_digits(prec_bits), strip_zeros=True)


def scalar_to_json(s):
    if isinstance(s, CyclotomicNumber):
        return {"coeffs": [f"{c.numerator}/{c.denominator}" for c in s.coeffs]}
    return {
        "re": _mpf_to_str(s.re, s.prec_bits),
        "im": _mpf_to_str(s.im, s.prec_bits),
        "prec_bits": s.prec_bits,
    }


def scalar_from_json(rs: RootSystem, obj):
    if "coeffs" in obj:
        if rs.backend != "exact":
            raise ValueError("coefficient-vector scalar needs an exact root system")
        coeffs = tuple(Fraction(c) for c in obj["coeffs"])
        if len(coeffs) != rs.degree:
            raise ValueError(f"expected {rs.degree} coefficients, got {len(coeffs)}")
        return CyclotomicNumber(rs, coeffs)
    if rs.backend != "bigfloat":
        raise ValueError("decimal scalar needs a bigfloat root system")
    with mp.workprec(rs.precision_bits):
        return BigComplex(rs, mp.mpf(obj["re"]), mp.mpf(obj["im"]))


def to_jsonable(value):
    """Recursive conversion of report-like structures to JSON-basic types."""
    if isinstance(value, (CyclotomicNumber, BigComplex)):
        return scalar_to_json(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    if isinstance(value, np.ndarray):
        return [[scalar_to_json(value[i, j]) for j in range(value.shape[1])]
                for i in range(value.shape[0])]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def root_system_to_json(rs: RootSystem):
    out = {"N": rs.N, "backend": rs.backend}
    if rs.backend == "bigfloat":
        out["precision_bits"] = rs.precision_bits
    return out


def root_system_from_json(obj) -> RootSystem:
    return make_root_system(obj["N"], obj["backend"], obj.get("precision_bits"))


def rep_to_json(rep: Representation):
    return {
        "surface": rep.surface.tag,
        "N": rep.rs.N,
        "root_system": root_system_to_json(rep.rs),
        "dim": rep.dim,
        "generators": {name: to_jsonable(mat) for name, mat in rep.matrices.items()},
        "punctures": {name: scalar_to_json(s) for name, s in rep.puncture_scalars.items()},
        "provenance": to_jsonable(rep.provenance),
    }


def rep_from_json(obj) -> Representation:
    rs = root_system_from_json(obj["root_system"])
    surface = surface_from_tag(obj["surface"])
    dim = obj["dim"]
    mats = {}
    for name, rows in obj["generators"].items():
        mat = np.empty((dim, dim), dtype=object)
        for i in range(dim):
            for j in range(dim):
                mat[i, j] = scalar_from_json(rs, rows[i][j])
        mat.flags.writeable = False
        mats[name] = mat
    punctures = {name: scalar_from_json(rs, s) for name, s in obj["punctures"].items()}
    return Representation(surface, rs, dim, mats, punctures, obj.get("provenance", {}))


def dumps_canonical(obj) -> str:
    """Stable key order, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def write_json(path, obj):
    with open(path, "w") as fh:
        fh.write(dumps_canonical(obj))


def read_json(path):
    with open(path) as fh:
        return json.load(fh)
