"""Deterministic operator documents.

Sums and operators serialize to JSON with numbers printed at 17 significant
digits through a fixed-order renderer, so identical objects always produce
byte-identical documents.
"""

import json

from .diffop import DiffOperator
from .extrapop import ExtrapOperator
from .prony import AFSum, CorrectionBinomial
from .series import format_function_spec, parse_function_spec


def _pair(z):
    z = complex(z)
    return [z.real, z.imag]


def afsum_document(af):
    binomial = None
    if af.binomial is not None:
        binomial = {
            "c1": _pair(af.binomial.c1),
            "k1": af.binomial.k1,
            "c2": _pair(af.binomial.c2),
            "k2": af.binomial.k2,
        }
    return {
        "kind": "afsum",
        "n": af.n,
        "basis": None if af.basis is None else format_function_spec(af.basis),
        "mu": [_pair(x) for x in af.mu],
        "lambda": [_pair(x) for x in af.lam],
        "binomial": binomial,
    }


def diff_document(op):
    return {
        "kind": "diff",
        "n": op.n,
        "p": _pair(op.p),
        "q": _pair(op.q),
        "mu": [_pair(x) for x in op.mu],
        "lambda": [_pair(x) for x in op.lam],
        "lambda_bound": float(op.lambda_bound),
        "remainder_factor": _pair(op.remainder_factor),
    }


def extrap_document(op):
    return {
        "kind": "extrap",
        "n": op.n,
        "a": float(op.a),
        "p": float(op.p),
        "contraction": float(op.contraction),
        "mu": [_pair(x) for x in op.mu],
        "lambda": [_pair(x) for x in op.lam],
    }


def parse_document(doc):
    """Rebuild the sum or operator described by a parsed document."""
    kind = doc.get("kind")
    mu = tuple(complex(re, im) for re, im in doc["mu"])
    lam = tuple(complex(re, im) for re, im in doc["lambda"])
    if kind == "afsum":
        binomial = None
        if doc.get("binomial") is not None:
            b = doc["binomial"]
            binomial = CorrectionBinomial(
                c1=complex(*b["c1"]), k1=b["k1"], c2=complex(*b["c2"]), k2=b["k2"]
            )
        basis = doc.get("basis")
        return AFSum(
            n=doc["n"],
            mu=mu,
            lam=lam,
            basis=None if basis is None else parse_function_spec(basis),
            binomial=binomial,
        )
    if kind == "diff":
        return DiffOperator(
            n=doc["n"],
            p=complex(*doc["p"]),
            q=complex(*doc["q"]),
            mu=mu,
            lam=lam,
            lambda_bound=doc["lambda_bound"],
            remainder_factor=complex(*doc["remainder_factor"]),
        )
    if kind == "extrap":
        return ExtrapOperator(
            n=doc["n"],
            a=doc["a"],
            p=doc["p"],
            mu=mu,
            lam=lam,
            contraction=doc["contraction"],
        )
    raise ValueError(f"unknown document kind {kind!r}")


def dumps(doc):
    """Render a document as JSON with floats at 17 significant digits."""
    return _render(doc) + "\n"


def _render(value):
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_render(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ",".join(f"{json.dumps(k)}:{_render(v)}" for k, v in value.items()) + "}"
    raise TypeError(f"cannot serialize {type(value)!r}")


def loads(text):
    return json.loads(text)


def write_document(doc, path):
    with open(path, "w") as handle:
        handle.write(dumps(doc))


def read_document(path):
    with open(path) as handle:
        return parse_document(loads(handle.read()))
