"""JSON schemas for matrices, representations, involutions and reports.

Complex scalars serialize as two-element ``[re, im]`` arrays; matrices as
``{"rows": r, "cols": c, "data": [[re, im], ...]}`` with row-major data.
Serialization is deterministic: key order is fixed by construction and
floats are written with 17 significant digits, which is lossless for
IEEE doubles and byte-stable across runs.
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .algcheck import CheckReport
from .hopfstar import Flavor, InvolutionSpec
from .qcore import Mode, QParams, make_params
from .repbuild import Rep


def cnum(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def matrix_to_json(m: np.ndarray) -> dict[str, Any]:
    rows, cols = m.shape
    data = [cnum(m[i, j]) for i in range(rows) for j in range(cols)]
    return {"rows": rows, "cols": cols, "data": data}


def matrix_from_json(doc: dict[str, Any]) -> np.ndarray:
    rows, cols = doc["rows"], doc["cols"]
    flat = [complex(re, im) for re, im in doc["data"]]
    if len(flat) != rows * cols:
        raise ValueError("matrix data length does not match rows*cols")
    return np.array(flat, dtype=complex).reshape(rows, cols)


def params_to_json(p: QParams) -> dict[str, Any]:
    return {
        "mode": p.mode.value,
        "epsilon": p.epsilon,
        "l": p.l,
        "q": cnum(p.q),
        "sqrt_q": cnum(p.sqrt_q),
        "gamma": cnum(p.gamma),
    }


def params_from_json(doc: dict[str, Any]) -> QParams:
    return make_params(Mode(doc["mode"]), doc["epsilon"], doc["l"])


def rep_to_json(rep: Rep) -> dict[str, Any]:
    return {
        "params": params_to_json(rep.params),
        "k": rep.k,
        "nu0": cnum(rep.nu0),
        "lambdas": [cnum(lam) for lam in rep.lambdas],
        "normalized": rep.normalized,
        "A": matrix_to_json(rep.A),
        "Abar": matrix_to_json(rep.Abar),
        "N": matrix_to_json(rep.Nmat),
    }


def rep_from_json(doc: dict[str, Any]) -> Rep:
    a = matrix_from_json(doc["A"])
    abar = matrix_from_json(doc["Abar"])
    nmat = matrix_from_json(doc["N"])
    for m in (a, abar, nmat):
        m.setflags(write=False)
    return Rep(
        params=params_from_json(doc["params"]),
        k=doc["k"],
        A=a,
        Abar=abar,
        Nmat=nmat,
        nu0=complex(*doc["nu0"]),
        lambdas=tuple(complex(re, im) for re, im in doc["lambdas"]),
        normalized=doc["normalized"],
    )


def involution_to_json(inv: InvolutionSpec) -> dict[str, Any]:
    return {
        "alpha": cnum(inv.alpha),
        "beta": cnum(inv.beta),
        "eta": cnum(inv.eta),
        "flavor": inv.flavor.value,
        "label": inv.label,
    }


def involution_from_json(doc: dict[str, Any]) -> InvolutionSpec:
    return InvolutionSpec(
        alpha=complex(*doc["alpha"]),
        beta=complex(*doc["beta"]),
        eta=complex(*doc["eta"]),
        flavor=Flavor(doc["flavor"]),
        label=doc["label"],
    )


def report_to_json(r: CheckReport, expected: str | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "name": r.name,
        "residual": r.residual,
        "tolerance": r.tolerance,
        "pass": r.passed,
    }
    if expected is not None:
        doc["expected"] = expected
    return doc


def _float_repr(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x!r} has no JSON encoding")
    return format(x, ".17g")


def _fragment(doc: Any, level: int) -> str:
    pad = "  " * (level + 1)
    if isinstance(doc, dict):
        if not doc:
            return "{}"
        items = (f'{pad}{json.dumps(key)}: {_fragment(val, level + 1)}' for key, val in doc.items())
        return "{\n" + ",\n".join(items) + "\n" + "  " * level + "}"
    if isinstance(doc, (list, tuple)):
        if not doc:
            return "[]"
        items = (pad + _fragment(val, level + 1) for val in doc)
        return "[\n" + ",\n".join(items) + "\n" + "  " * level + "]"
    if isinstance(doc, bool):
        return "true" if doc else "false"
    if isinstance(doc, float):
        return _float_repr(doc)
    if isinstance(doc, int):
        return str(doc)
    if isinstance(doc, str):
        return json.dumps(doc, ensure_ascii=True)
    if doc is None:
        return "null"
    raise TypeError(f"cannot encode {type(doc).__name__}")


def dumps(doc: Any) -> str:
    """Deterministic encoding: construction key order, 2-space indent,
    floats at 17 significant digits."""
    return _fragment(doc, 0)
