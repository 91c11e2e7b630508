"""Shephard group computations; results come back as plain dicts."""

import json

from . import _core
from ._core import BudgetExceeded, Inapplicable, InputError, are_equal, brute_force_equal, is_trivial

schema_version = _core.schema_version

__all__ = [
    "BudgetExceeded", "Inapplicable", "InputError",
    "are_equal", "brute_force_equal", "is_trivial",
    "classify", "normalize", "element_order", "certify_girth", "theta_hat_ball", "report",
]


def classify(p, q, r):
    return json.loads(_core.classify_json(p, q, r))


def normalize(p, q, r, word):
    return json.loads(_core.normalize_json(p, q, r, word))


def element_order(p, q, r, word, cutoff=1000):
    return json.loads(_core.order_json(p, q, r, word, cutoff))


def certify_girth(p, q, r, max_syllables=0):
    return json.loads(_core.girth_json(p, q, r, max_syllables))


def theta_hat_ball(p, q, r, radius):
    return json.loads(_core.theta_hat_json(p, q, r, radius))


def report(graph_text, vertex_limit=14):
    """Verdict report for a graph given in the text format (or its file contents)."""
    return json.loads(_core.report_json(graph_text, vertex_limit))
