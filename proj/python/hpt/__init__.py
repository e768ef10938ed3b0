"""Dependent type checker for path algebra."""

import json

from . import _hpt

__all__ = ["check_text", "check_files", "eval_expr", "corpus", "manifest"]


def check_text(text, name="<input>", open_corpus=False):
    """Check source text and return the report as a dict."""
    return json.loads(_hpt.check_text(text, name, open_corpus))


def check_files(paths, open_corpus=False):
    """Check files in order and return the combined report."""
    return json.loads(_hpt.check_files(list(paths), open_corpus))


def eval_expr(expr, open_corpus=True):
    """Normalize an expression; the report carries `value` and `type` on success."""
    return json.loads(_hpt.eval_expr(expr, open_corpus))


def corpus():
    """Check the bundled corpus and return the report."""
    return json.loads(_hpt.corpus())


def manifest():
    """Manifest entries of the bundled corpus."""
    return _hpt.manifest()
