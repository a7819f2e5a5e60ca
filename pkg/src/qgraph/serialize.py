"""JSON encodings for polynomials, derivations, certificates and reports."""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from .derivations import Derivation, SaitoCertificate
from .field import Field
from .graph import Graph
from .intpoly import JSON_SAFE_INT, IntPolynomial
from .mpoly import MPoly

SCHEMA_VERSION = 1


def big(n: int):
    """Integers beyond 2^53 travel as decimal strings."""
    return n if abs(n) < JSON_SAFE_INT else str(n)


def field_json(F: Field) -> dict:
    return {"p": F.p, "m": F.m, "q": F.q, "modulus": list(F.modulus)}


def graph_json(G: Graph) -> dict:
    return {"ell": G.ell, "edges": [list(e) for e in G.sorted_edges()], "sha256": G.digest()}


def poly_json(P: IntPolynomial) -> dict:
    return {"coeffs": P.to_json(), "text": str(P)}


def fraction_json(x: Fraction):
    return big(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def mpoly_json(P: MPoly) -> dict:
    return {"terms": P.to_json(), "text": str(P)}


def derivation_json(theta: Derivation) -> dict:
    return {"coeffs": [c.to_json() for c in theta.coeffs], "pdeg": theta.pdeg(), "text": str(theta)}


def certificate_json(cert: SaitoCertificate) -> dict:
    return {
        "field": field_json(cert.field),
        "ell": cert.ell,
        "peo": cert.peo,
        "basis": [derivation_json(t) for t in cert.basis],
        "degree_check": cert.degree_check,
        "n_hyperplanes": cert.n_hyperplanes,
        "vanishing_check": cert.vanishing_check,
        "det_nonzero": cert.det_nonzero,
        "det_degree": cert.det_degree,
        "determinant": mpoly_json(cert.determinant),
        "verdict": cert.verdict,
    }


def derivation_from_json(F: Field, data: dict) -> Derivation:
    coeffs = data["coeffs"]
    n = len(coeffs)
    return Derivation(tuple(MPoly.from_json(F, n, c) for c in coeffs))


def dumps(report: dict) -> str:
    """Canonical text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_schema() -> dict:
    text = resources.files("qgraph").joinpath("data/report.schema.json").read_text()
    return json.loads(text)
