"""Reading lamination spec files.

Schema::

    {"support": "H2" | {"boundary": [{"endpoints": [t1, t2]}, ...]},
     "leaves": [{"endpoints": [t1, t2], "weight": w}, ...],
     "basepoint": [x0, x1, x2]}

Angles are radians.  A support boundary geodesic keeps the side to its left
when run from t1 to t2.
"""
from __future__ import annotations

import json
import re

import numpy as np

from . import geometry as geo
from . import laminations as lm
from .errors import CoincidentEndpoints, LamspaceError, ParseError, ValidationError
from .flat import RegularDomain


def _line_of(text: str, key: str):
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _number(value, field, text, key):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not np.isfinite(value):
        raise ParseError(f"expected a finite number, got {value!r}", _line_of(text, key), field)
    return float(value)


def _pair(value, field, text, key):
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError("expected a pair of angles", _line_of(text, key), field)
    return tuple(_number(v, field, text, key) for v in value)


def parse_spec(text: str):
    """(Lamination, basepoint, raw document) from spec text; raises ParseError."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", 1)
    for key in ("leaves", "basepoint"):
        if key not in doc:
            raise ParseError("missing required field", None, key)
    support = doc.get("support", "H2")
    boundary = []
    if support != "H2":
        if not isinstance(support, dict) or not isinstance(support.get("boundary"), list):
            raise ParseError('support must be "H2" or {"boundary": [...]}', _line_of(text, "support"), "support")
        for k, b in enumerate(support["boundary"]):
            if not isinstance(b, dict) or "endpoints" not in b:
                raise ParseError("boundary entry needs endpoints", _line_of(text, "boundary"), f"support.boundary[{k}]")
            boundary.append(_pair(b["endpoints"], f"support.boundary[{k}].endpoints", text, "endpoints"))
    if not isinstance(doc["leaves"], list):
        raise ParseError("leaves must be a list", _line_of(text, "leaves"), "leaves")
    leaves = []
    for k, l in enumerate(doc["leaves"]):
        if not isinstance(l, dict) or "endpoints" not in l or "weight" not in l:
            raise ParseError("leaf needs endpoints and weight", _line_of(text, "leaves"), f"leaves[{k}]")
        a, b = _pair(l["endpoints"], f"leaves[{k}].endpoints", text, "endpoints")
        w = _number(l["weight"], f"leaves[{k}].weight", text, "weight")
        leaves.append((a, b, w))
    bp = doc["basepoint"]
    if not isinstance(bp, list) or len(bp) != 3:
        raise ParseError("basepoint must be three numbers", _line_of(text, "basepoint"), "basepoint")
    x0 = np.array([_number(v, "basepoint", text, "basepoint") for v in bp])
    failures = []
    built = []
    for k, (a, b, w) in enumerate(leaves):
        try:
            built.append(lm.Leaf(geo.geodesic(a, b), w))
        except CoincidentEndpoints:
            failures.append(f"leaf {k}: endpoints coincide")
    bnd = []
    for k, (a, b) in enumerate(boundary):
        try:
            bnd.append(geo.geodesic(a, b))
        except CoincidentEndpoints:
            failures.append(f"support boundary {k}: endpoints coincide")
    if failures:
        raise ValidationError(failures)
    return lm.Lamination(tuple(built), tuple(bnd)), x0, doc


def check_domain(lam: lm.Lamination, x0) -> RegularDomain:
    """Validate and build the domain, collecting every failure."""
    diag = lm.validate(lam)
    failures = list(diag.failures)
    if abs(geo.mink_form(x0, x0) + 1) > 1e-9 or x0[0] <= 0:
        failures.append("basepoint is not on the hyperboloid <x,x> = -1, x0 > 0")
    else:
        if not lm.in_support(lam, x0):
            failures.append("basepoint lies outside the support")
        for i, l in enumerate(lam.leaves):
            if abs(geo.mink_form(x0, l.normal)) < 1e-6:
                failures.append(f"basepoint lies on leaf {i}")
    if failures:
        raise ValidationError(failures)
    try:
        return RegularDomain(lam, x0)
    except LamspaceError as exc:
        raise ValidationError([str(exc)]) from None


def load_lamination(path) -> RegularDomain:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    lam, x0, _ = parse_spec(text)
    return check_domain(lam, x0)


def dump_spec(dom: RegularDomain) -> dict:
    return {
        "support": "H2" if not dom.lam.boundary else
        {"boundary": [{"endpoints": list(geo.endpoints(n))} for n in dom.lam.boundary]},
        "leaves": [{"endpoints": list(l.endpoints), "weight": l.weight} for l in dom.lam.leaves],
        "basepoint": [float(v) for v in dom.x0],
    }
