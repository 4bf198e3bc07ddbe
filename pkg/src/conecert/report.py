"""Machine-readable and text reports.

Every numeric leaf in the machine-readable document is wrapped in an
exactness tag: {"tag": "exact", "value": <string>} for rationals and
integers serialized as strings, or {"tag": "approx", "value": <float>} for
decimal conveniences. Verdict fields are strings and booleans only, so no
approximate value can ever flow into a verdict. Serialization is canonical
(sorted keys, fixed separators) so identical analyses produce identical
bytes; wall-clock timing therefore appears only in the text rendering.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from .dynamics import PolarizationResult
from .exactalg import AlgebraicNumber, QMatrix, QPoly

SCHEMA_VERSION = "1"


# -- tagged values -----------------------------------------------------------------


def exact(value) -> dict:
    """Tag an exact rational/integer scalar, vector, or matrix."""
    return {"tag": "exact", "value": _exact_payload(value)}


def _exact_payload(value):
    if isinstance(value, (int, Fraction)):
        return _rat_str(value)
    if isinstance(value, QMatrix):
        return [[_rat_str(value.entry(i, j)) for j in range(value.cols)]
                for i in range(value.rows)]
    if isinstance(value, QPoly):
        return [_rat_str(c) for c in value.coeffs]
    if isinstance(value, (tuple, list)):
        return [_exact_payload(v) for v in value]
    raise TypeError(f"cannot tag {type(value).__name__} as exact")


def _rat_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def approx(value: float) -> dict:
    return {"tag": "approx", "value": float(value)}


def algebraic_number_doc(root: AlgebraicNumber, multiplicity: int) -> dict:
    refined = root.refine_below(Fraction(1, 1 << 12))
    z = refined.approx()
    return {
        "minpoly": exact(root.minpoly),
        "minpoly_str": str(root.minpoly),
        "box": exact(list(refined.box)),
        "is_real": root.is_real,
        "multiplicity": exact(multiplicity),
        "approx_re": approx(z.real),
        "approx_im": approx(z.imag),
    }


def polarization_doc(result: PolarizationResult) -> dict:
    doc: dict[str, Any] = {
        "status": result.status.value,
        "reason": result.reason,
    }
    cert = result.certificate
    if cert is not None:
        doc.update({
            "q": exact(cert.q),
            "q_is_integer": cert.q_is_integer,
            "witness": exact(list(cert.witness)),
            "projector": exact(cert.projector),
            "eigenvalue_moduli_all_q": cert.eigenvalue_moduli_all_q,
            "semisimple": cert.semisimple,
            "invariance": cert.invariance,
            "cone_kind": cert.cone_kind,
        })
        if cert.transverse_char_poly is not None:
            doc["transverse_char_poly"] = exact(cert.transverse_char_poly)
    return doc


# -- canonical serialization -----------------------------------------------------------


def dumps_canonical(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=True) + "\n"


def loads(text: str) -> dict:
    return json.loads(text)


# -- text rendering ----------------------------------------------------------------------


def _fmt_tagged(v) -> str:
    if isinstance(v, dict) and "tag" in v:
        return f"{v['value']}" if v["tag"] == "exact" else f"~{v['value']}"
    if isinstance(v, dict):
        inner = ", ".join(f"{k}={_fmt_tagged(v[k])}" for k in sorted(v))
        return f"{{{inner}}}"
    return str(v)


def render_text(report: dict, elapsed: Optional[float] = None) -> str:
    lines = [f"kind: {report['kind']}  (schema {report['schema_version']})"]
    if report.get("scenario_name"):
        lines.append(f"scenario: {report['scenario_name']}")
    verdicts = report.get("verdicts", {})
    for key in sorted(verdicts):
        lines.append(f"  {key}: {_fmt_tagged(verdicts[key])}")
    data = report.get("data", {})
    for key in sorted(data):
        value = data[key]
        if isinstance(value, list):
            lines.append(f"  {key}: [{len(value)} entries]")
        else:
            lines.append(f"  {key}: {_fmt_tagged(value)}")
    if elapsed is not None:
        lines.append(f"  timing: {elapsed:.3f}s (text report only)")
    return "\n".join(lines) + "\n"
