"""Math word problem preprocessing and auxiliary-label toolkit."""

import json

from . import _core
from ._core import MwpError, operator_count, tokenize_text

__all__ = [
    "MwpError",
    "classify",
    "evaluate",
    "grad_check",
    "label_bundle",
    "map_problem",
    "operator_count",
    "parse_answer",
    "recognize_numbers",
    "to_infix",
    "to_prefix",
    "tokenize_text",
]


def evaluate(equation, bindings=()):
    """Evaluate an equation; bindings[i] is the value of placeholder n(i+1)."""
    return json.loads(_core.evaluate(equation, [str(b) for b in bindings]))


def to_prefix(equation):
    return _core.convert(equation, "infix", "prefix")


def to_infix(text, source="infix"):
    return _core.convert(text, source, "infix")


def recognize_numbers(text):
    return json.loads(_core.recognize_numbers(text))


def parse_answer(answer):
    return json.loads(_core.parse_answer(answer))


def map_problem(text, k=15):
    return json.loads(_core.map_problem(text, k))


def classify(record, max_text_tokens=100, max_eq_tokens=20, k=15, tolerance=1e-4):
    return json.loads(_core.classify(json.dumps(record), max_text_tokens, max_eq_tokens, k, tolerance))


def label_bundle(record, seed, vocab=()):
    return json.loads(_core.label_bundle(json.dumps(record), seed, list(vocab)))


def grad_check(task, h=8, hidden=8, instances=50, seed=0):
    return json.loads(_core.grad_check(task, h, hidden, instances, seed))
