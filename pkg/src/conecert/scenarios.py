"""Scenario documents: schema validation, built-in scenarios, dispatch.

A scenario is a UTF-8 JSON document {schema_version, kind, payload}. Matrix
and vector entries are integers or "p/q" strings; decimal floats are
rejected by the schema so exact values survive the round trip. The
`builtin` registry carries the three bundled demonstration scenarios: the
product-of-elliptic-curves pullback (ex1), the quotient-surface
self-intersection contradiction stacked on it (ex2), and the cyclic
quotient of projective space times a torus power (ex-xu).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Optional

import jsonschema

from .cones import build_cone, psd_cone_oracle
from .dynamics import (
    AbelianInvariantVerdict,
    ConeMap,
    abelian_invariant_check,
    decide_polarization,
    product_formula_check,
    q_from_degree,
)
from .errors import ConecertError, IrrationalCandidateOnlyError, ScenarioError
from .exactalg import QMatrix, QPoly, char_poly, roots_with_multiplicity
from .nslattice import elliptic_product_report, quotient_image_selfintersection
from .report import (
    SCHEMA_VERSION,
    algebraic_number_doc,
    approx,
    exact,
    polarization_doc,
)
from .singularities import product_quotient_report

_ENTRY = {"oneOf": [{"type": "integer"},
                    {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"}]}
_VECTOR = {"type": "array", "items": _ENTRY, "minItems": 1}
_MATRIX = {"type": "array", "items": _VECTOR, "minItems": 1}

SCENARIO_SCHEMA: dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "conecert scenario",
    "type": "object",
    "required": ["schema_version", "kind", "payload"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "kind": {"enum": ["cone_dynamics", "ns_example", "age_check", "degree_check"]},
        "payload": {"type": "object"},
    },
    "allOf": [
        {
            "if": {"properties": {"kind": {"const": "cone_dynamics"}}},
            "then": {"properties": {"payload": {
                "type": "object",
                "required": ["matrix", "cone"],
                "additionalProperties": False,
                "properties": {
                    "matrix": _MATRIX,
                    "q_hint": _ENTRY,
                    "cone": {"oneOf": [
                        {"type": "object",
                         "required": ["type", "generators"],
                         "additionalProperties": False,
                         "properties": {"type": {"const": "polyhedral"},
                                        "generators": _MATRIX}},
                        {"type": "object",
                         "required": ["type", "size"],
                         "additionalProperties": False,
                         "properties": {"type": {"const": "psd"},
                                        "size": {"type": "integer", "minimum": 1}}},
                    ]},
                }}}},
        },
        {
            "if": {"properties": {"kind": {"const": "ns_example"}}},
            "then": {"properties": {"payload": {
                "type": "object",
                "required": ["endomorphism"],
                "additionalProperties": False,
                "properties": {
                    "endomorphism": _MATRIX,
                    "quotient_check": {
                        "type": "object",
                        "required": ["fibre_self_intersection", "pull_coeff_positive"],
                        "additionalProperties": False,
                        "properties": {
                            "fibre_self_intersection": {"type": "integer"},
                            "pull_coeff_positive": {"type": "boolean"},
                        },
                    },
                }}}},
        },
        {
            "if": {"properties": {"kind": {"const": "age_check"}}},
            "then": {"properties": {"payload": {
                "type": "object",
                "required": ["order", "projective_m", "scale_r", "abelian_weights"],
                "additionalProperties": False,
                "properties": {
                    "order": {"type": "integer", "minimum": 1},
                    "projective_m": {"type": "integer", "minimum": 1},
                    "scale_r": {"type": "integer", "minimum": 2},
                    "abelian_weights": {"type": "array",
                                        "items": {"type": "integer"}},
                }}}},
        },
        {
            "if": {"properties": {"kind": {"const": "degree_check"}}},
            "then": {"properties": {"payload": {
                "type": "object",
                "required": ["dim_x", "deg_f"],
                "additionalProperties": False,
                "properties": {
                    "dim_x": {"type": "integer", "minimum": 1},
                    "deg_f": {"type": "integer", "minimum": 1},
                    "dim_y": {"type": "integer", "minimum": 0},
                    "deg_g": {"type": "integer", "minimum": 1},
                    "invariant_subvariety_dim": {"type": "integer", "minimum": 0},
                }}}},
        },
    ],
}


def validate_scenario(doc: dict) -> None:
    try:
        jsonschema.validate(doc, SCENARIO_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ScenarioError(f"scenario fails schema validation: {exc.message}") from exc


def _parse_entry(v) -> Fraction:
    return Fraction(v)


def _parse_matrix(rows) -> QMatrix:
    return QMatrix.from_rows([[_parse_entry(v) for v in row] for row in rows])


# -- built-in scenarios ---------------------------------------------------------------------


BUILTIN_SCENARIOS: dict[str, dict] = {
    "ex1": {
        "schema_version": SCHEMA_VERSION,
        "name": "ex1",
        "kind": "ns_example",
        "payload": {"endomorphism": [[1, -5], [1, 1]]},
    },
    "ex2": {
        "schema_version": SCHEMA_VERSION,
        "name": "ex2",
        "kind": "ns_example",
        "payload": {
            "endomorphism": [[1, -5], [1, 1]],
            "quotient_check": {"fibre_self_intersection": 0,
                               "pull_coeff_positive": True},
        },
    },
    "ex-xu": {
        "schema_version": SCHEMA_VERSION,
        "name": "ex-xu",
        "kind": "age_check",
        "payload": {"order": 4, "projective_m": 4, "scale_r": 2,
                    "abelian_weights": [1, 1, 1]},
    },
}
BUILTIN_SCENARIOS["ex-xu-4-3"] = dict(BUILTIN_SCENARIOS["ex-xu"], name="ex-xu-4-3")


# -- dispatch ----------------------------------------------------------------------------------


def run_scenario(doc: dict, seed: int = 0, max_dim: Optional[int] = None) -> dict:
    """Validate and execute one scenario; returns the machine-readable report."""
    validate_scenario(doc)
    kind = doc["kind"]
    payload = doc["payload"]
    report: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "scenario_name": doc.get("name", ""),
        "seed": seed,
        "verdicts": {},
        "data": {},
    }
    handler = {
        "cone_dynamics": _run_cone_dynamics,
        "ns_example": _run_ns_example,
        "age_check": _run_age_check,
        "degree_check": _run_degree_check,
    }[kind]
    handler(payload, report, max_dim)
    return report


def _eigen_docs(cp: QPoly) -> list[dict]:
    return [algebraic_number_doc(root, mult)
            for root, mult in roots_with_multiplicity(cp)]


def _run_cone_dynamics(payload: dict, report: dict, max_dim: Optional[int]) -> None:
    matrix = _parse_matrix(payload["matrix"])
    cone_spec = payload["cone"]
    try:
        if cone_spec["type"] == "polyhedral":
            kwargs = {} if max_dim is None else {"max_dim": max_dim}
            cone = build_cone([[Fraction(v) for v in g]
                               for g in cone_spec["generators"]], **kwargs)
        else:
            cone = psd_cone_oracle(cone_spec["size"])
        cm = ConeMap.create(matrix, cone)
    except ConecertError as exc:
        raise ScenarioError(f"scenario setup failed: {exc}") from exc

    report["data"]["char_poly"] = exact(char_poly(matrix))
    report["data"]["char_poly_str"] = str(char_poly(matrix))
    report["data"]["eigenvalues"] = _eigen_docs(char_poly(matrix))
    if not cm.invariance_checked:
        report["verdicts"]["status"] = "invariance_failed"
        report["verdicts"]["reason"] = ("the map or its inverse moves the cone "
                                        "off itself")
        return
    try:
        result = decide_polarization(cm)
    except IrrationalCandidateOnlyError as exc:
        report["verdicts"]["status"] = "irrational_candidate_only"
        report["verdicts"]["reason"] = str(exc)
        report["data"]["candidate_minpoly"] = exact(exc.minpoly)
        return
    doc = polarization_doc(result)
    report["verdicts"]["status"] = doc.pop("status")
    report["verdicts"]["reason"] = doc.pop("reason")
    for flag in ("q_is_integer", "eigenvalue_moduli_all_q", "semisimple",
                 "invariance", "cone_kind"):
        if flag in doc:
            report["verdicts"][flag] = doc.pop(flag)
    report["data"].update(doc)
    if "q_hint" in payload and result.certificate is not None:
        hint = Fraction(payload["q_hint"])
        report["verdicts"]["q_matches_hint"] = result.certificate.q == hint
        report["data"]["q_hint"] = exact(hint)


def _run_ns_example(payload: dict, report: dict, max_dim: Optional[int]) -> None:
    endo = [[int(v) for v in row] for row in payload["endomorphism"]]
    rep = elliptic_product_report(endo)
    report["verdicts"]["verdict"] = rep.verdict
    report["verdicts"]["polarized_above_one"] = rep.polarized_above_one
    report["verdicts"]["witness_is_ample"] = rep.witness_is_ample
    report["verdicts"]["degree_consistent"] = rep.degree_consistent
    data = report["data"]
    data["rho"] = exact(rep.rho)
    data["char_poly"] = exact(rep.char_poly)
    data["char_poly_str"] = str(rep.char_poly)
    data["eigenvalues"] = [algebraic_number_doc(r, m) for r, m in rep.eigenvalues]
    data["real_eigenvalue_count"] = exact(rep.real_eigenvalue_count)
    if rep.spectral_radius is not None:
        data["spectral_radius"] = exact(rep.spectral_radius)
    else:
        data["spectral_radius"] = approx(rep.spectral_radius_approx)
    if rep.q is not None:
        data["q"] = exact(rep.q)
    if rep.witness_class is not None:
        data["witness_class"] = exact(rep.witness_class.matrix())
    data["deg_f"] = exact(rep.deg_f)

    if "quotient_check" in payload:
        qc = payload["quotient_check"]
        res = quotient_image_selfintersection(qc["fibre_self_intersection"],
                                              qc["pull_coeff_positive"])
        report["verdicts"]["quotient_verdict"] = res.verdict.value
        report["verdicts"]["quotient_ample_possible"] = res.ample_possible
        data["quotient_image_self_intersection_sign"] = exact(res.image_sq)
        if res.verdict.value == "contradicts_ampleness":
            report["verdicts"]["quotient_conclusion"] = (
                "image class is not ample, so the quotient surface needs a "
                "second independent class")


def _run_age_check(payload: dict, report: dict, max_dim: Optional[int]) -> None:
    m = payload["order"]
    if payload["projective_m"] != m:
        raise ScenarioError("projective_m must equal the cyclic order")
    weights = payload["abelian_weights"]
    try:
        rep = product_quotient_report(m, len(weights), payload["scale_r"], weights)
    except ConecertError as exc:
        raise ScenarioError(f"age scenario rejected: {exc}") from exc
    report["verdicts"]["verdict"] = rep.verdict.value
    report["verdicts"]["pseudo_reflection_free"] = rep.pseudo_reflection_free
    report["verdicts"]["inside_certified_window"] = rep.inside_certified_window
    data = report["data"]
    data["m"] = exact(rep.m)
    data["n"] = exact(rep.n)
    data["r"] = exact(rep.r)
    data["q"] = exact(rep.q)
    data["dim_x"] = exact(rep.dim_x)
    data["deg_f"] = exact(rep.deg_f)
    if rep.age_report.min_age_nontrivial is not None:
        data["min_age_nontrivial"] = exact(rep.age_report.min_age_nontrivial)
    data["ages"] = [
        {"power": exact(entry.power),
         "component_eigenclass": exact(entry.component.eigenclass),
         "component_dim": exact(entry.component.dim),
         "normal_weights": exact(list(entry.component.weights)),
         "age": exact(entry.total_age),
         "nonzero_weights": exact(entry.nonzero_weights)}
        for entry in rep.age_report.entries
    ]
    data["reported_not_verified"] = {
        key: exact(value) for key, value in rep.reported_not_verified.items()
    }


def _run_degree_check(payload: dict, report: dict, max_dim: Optional[int]) -> None:
    dim_x = payload["dim_x"]
    deg_f = payload["deg_f"]
    data = report["data"]
    data["dim_x"] = exact(dim_x)
    data["deg_f"] = exact(deg_f)
    try:
        q = q_from_degree(deg_f, dim_x)
        data["q"] = exact(q)
        report["verdicts"]["has_integer_scaling"] = True
    except ConecertError:
        q = None
        report["verdicts"]["has_integer_scaling"] = False
    if "dim_y" in payload and "deg_g" in payload:
        ok = product_formula_check(dim_x, deg_f, payload["dim_y"], payload["deg_g"])
        report["verdicts"]["product_formula_holds"] = ok
    if "invariant_subvariety_dim" in payload and q is not None:
        dim_z = payload["invariant_subvariety_dim"]
        if dim_z >= dim_x:
            raise ScenarioError("invariant subvariety must have smaller dimension")
        verdict = abelian_invariant_check(q, dim_x, dim_z)
        report["verdicts"]["abelian_invariant"] = verdict.value
        report["verdicts"]["polarized_possible_on_torus_quotient"] = (
            verdict is AbelianInvariantVerdict.CONSISTENT)
