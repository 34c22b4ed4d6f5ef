"""Exact cohomology and small quantum cohomology of twistor spaces."""

import json

from ._twistor import (
    MathError,
    NonConvergence,
    ParseError,
    QuantumRing,
    ValidationFailure,
    bundles,
    contributing_degrees,
    diagonal,
    displayed_char_poly,
    e1_page,
    fibre_integral,
    fibre_integral_table,
    golden,
    gw_class,
    m0,
    model_json,
    numeric_spectrum,
    ring_json,
    simplify,
    validate,
)


def ring(space="Z", base="B0"):
    """Structure of H*(Z) or H*(L) as a model dictionary."""
    return json.loads(ring_json(space, base))


__all__ = [
    "MathError",
    "NonConvergence",
    "ParseError",
    "QuantumRing",
    "ValidationFailure",
    "bundles",
    "contributing_degrees",
    "diagonal",
    "displayed_char_poly",
    "e1_page",
    "fibre_integral",
    "fibre_integral_table",
    "golden",
    "gw_class",
    "m0",
    "model_json",
    "numeric_spectrum",
    "ring",
    "ring_json",
    "simplify",
    "validate",
]
