"""JSON pattern files and certificate documents."""

from __future__ import annotations

import json

from .errors import PatternError
from .pattern import LaurentPattern

SCHEMA = "toeprank/1"


def _label(v, where):
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise PatternError(f"label must be a string or an integer, got {v!r}", where)
    return v


def pattern_from_obj(doc) -> LaurentPattern:
    if not isinstance(doc, dict):
        raise PatternError("top level must be an object", "$")
    for key in ("rows", "cols", "coefficients"):
        if key not in doc:
            raise PatternError("missing field", key)
        if not isinstance(doc[key], list):
            raise PatternError("must be a list", key)
    rows = [_label(v, f"rows[{n}]") for n, v in enumerate(doc["rows"])]
    cols = [_label(v, f"cols[{n}]") for n, v in enumerate(doc["cols"])]
    for name, labels in (("rows", rows), ("cols", cols)):
        seen = set()
        for n, v in enumerate(labels):
            if v in seen:
                raise PatternError(f"duplicate label {v!r}", f"{name}[{n}]")
            seen.add(v)
    rset, cset = set(rows), set(cols)

    coeffs = {}
    for n, co in enumerate(doc["coefficients"]):
        where = f"coefficients[{n}]"
        if not isinstance(co, dict):
            raise PatternError("must be an object", where)
        idx = co.get("index")
        if isinstance(idx, bool) or not isinstance(idx, int) or idx < 0:
            raise PatternError(f"index must be a nonnegative integer, got {idx!r}", f"{where}.index")
        if idx in coeffs:
            raise PatternError(f"duplicate coefficient index {idx}", f"{where}.index")
        nzs = co.get("nonzeros")
        if not isinstance(nzs, list):
            raise PatternError("must be a list of [row, col] pairs", f"{where}.nonzeros")
        entries = set()
        for e, pair in enumerate(nzs):
            w = f"{where}.nonzeros[{e}]"
            if not isinstance(pair, list) or len(pair) != 2:
                raise PatternError(f"expected [row, col], got {pair!r}", w)
            r, c = pair
            if isinstance(r, bool) or r not in rset:
                raise PatternError(f"unknown row {r!r}", w)
            if isinstance(c, bool) or c not in cset:
                raise PatternError(f"unknown col {c!r}", w)
            if (r, c) in entries:
                raise PatternError(f"duplicate nonzero {[r, c]!r}", w)
            entries.add((r, c))
        coeffs[idx] = entries
    return LaurentPattern.build(rows, cols, coeffs)


def loads_pattern(text: str) -> LaurentPattern:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PatternError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return pattern_from_obj(doc)


def load_pattern(path) -> LaurentPattern:
    with open(path, encoding="utf-8") as fh:
        return loads_pattern(fh.read())


def pattern_to_obj(h: LaurentPattern) -> dict:
    """Canonical form: declared row/col order, coefficients by index, entries by position."""
    return {
        "rows": list(h.rows),
        "cols": list(h.cols),
        "coefficients": [
            {"index": i, "nonzeros": [list(e) for e in h.sorted_entries(nz)]}
            for i, nz in h.coeffs
        ],
    }


def dumps_pattern(h: LaurentPattern) -> str:
    return json.dumps(pattern_to_obj(h), indent=2, ensure_ascii=False) + "\n"


def certificate_to_obj(h: LaurentPattern, cert, curve=None, p01=None, extra=None) -> dict:
    g = cert.graph
    cover_rows, cover_cols = cert.sorted_cover()
    doc = {
        "schema": SCHEMA,
        "k": cert.k,
        "term_rank": cert.term_rank,
        "mu": cert.mu,
        "lambda": cert.lam,
        "delta": list(curve.delta) if curve is not None else None,
        "source_matching": [list(e) for e in g.sorted_edges(cert.matching)],
        "source_dual": {
            "y": [[r, cert.dual.y[r]] for r in g.left],
            "z": [[c, cert.dual.z[c]] for c in g.right],
            "lambda": cert.lam,
        },
        "xi": list(cert.xi),
        "lifted_matching": [[list(a), list(b)] for a, b in cert.sorted_lifted_matching()],
        "cover": {"rows": [list(v) for v in cover_rows], "cols": [list(v) for v in cover_cols]},
    }
    if p01 is not None:
        doc["witness"] = [list(t) for t, v in p01.items() if v]
    if extra:
        doc.update(extra)
    return doc


def dumps_certificate(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
