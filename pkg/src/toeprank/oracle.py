"""Brute-force ground truth for the certified path.

Nothing here calls into :mod:`toeprank.matching`, :mod:`toeprank.lift` or
:mod:`toeprank.exact_rank`: matchings are found by plain augmenting paths,
assignments by enumeration, ranks over GF(2) with bitmask rows.  The size
guards raise instead of truncating.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import linear_sum_assignment

MAX_BRUTE_EDGES = 20
MAX_GF2_PARAMS = 16


class OracleGuardError(ValueError):
    """The instance is too large for exhaustive search."""


def term_rank_direct(t) -> int:
    """Maximum matching of the expanded pattern by single-source augmenting paths."""
    adj = t.adjacency()
    owner = {}

    def augment(r, seen) -> bool:
        for c in adj[r]:
            if c in seen:
                continue
            seen.add(c)
            if c not in owner or augment(owner[c], seen):
                owner[c] = r
                return True
        return False

    return sum(augment(r, set()) for r in t.rows)


def assignment_brute(g, mu: int) -> int | None:
    """Best total weight over all ``mu``-edge matchings, or ``None`` if there is none.

    Enumerates edge subsets of size ``mu`` by include/exclude backtracking,
    skipping branches that reuse a vertex.
    """
    edges = list(g.weight.items())
    if len(edges) > MAX_BRUTE_EDGES:
        raise OracleGuardError(f"{len(edges)} edges exceeds the brute-force limit {MAX_BRUTE_EDGES}")
    best = None
    used_r, used_c = set(), set()

    def walk(pos: int, left: int, total: int):
        nonlocal best
        if left == 0:
            if best is None or total > best:
                best = total
            return
        if len(edges) - pos < left:
            return
        (r, c), w = edges[pos]
        if r not in used_r and c not in used_c:
            used_r.add(r)
            used_c.add(c)
            walk(pos + 1, left - 1, total + w)
            used_r.discard(r)
            used_c.discard(c)
        walk(pos + 1, left, total)

    walk(0, mu, 0)
    return best


def _gf2_rank(rows: list[int]) -> int:
    basis = []  # reduced vectors with distinct leading bits
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def max_rank_exhaustive_gf2(h, k: int) -> int:
    """Maximum over all ``p`` in ``GF(2)^q`` of ``rank T_k(H)(p)`` over GF(2).

    Walks ``{0,1}^q`` in Gray-code order, toggling one parameter's positions
    per step.
    """
    n, m = len(h.rows), len(h.cols)
    rpos = {r: a for a, r in enumerate(h.rows)}
    cpos = {c: b for b, c in enumerate(h.cols)}
    params = []
    for d, nz in h.coeffs:
        if d >= k:
            continue
        for r, c in nz:
            # block row i = j + d, block col j, 1-based levels
            params.append([((j + d - 1) * n + rpos[r], 1 << ((j - 1) * m + cpos[c]))
                           for j in range(1, k - d + 1)])
    q = len(params)
    if q > MAX_GF2_PARAMS:
        raise OracleGuardError(f"q = {q} exceeds the exhaustive limit {MAX_GF2_PARAMS}")
    cap = min(n * k, m * k)
    mat = [0] * (n * k)
    best = 0
    for step in range(1, 1 << q):
        bit = (step & -step).bit_length() - 1
        for row, mask in params[bit]:
            mat[row] ^= mask
        best = max(best, _gf2_rank([v for v in mat if v]))
        if best == cap:
            break
    return best


def term_rank_closed_form(h, k: int) -> int:
    """Maximum weight matching of G(H) under ``max(k + w, 0)`` via scipy's LAP solver."""
    n, m = len(h.rows), len(h.cols)
    if n == 0 or m == 0:
        return 0
    rpos = {r: a for a, r in enumerate(h.rows)}
    cpos = {c: b for b, c in enumerate(h.cols)}
    profit = np.zeros((n, m), dtype=np.int64)
    first = {}
    for d, nz in h.coeffs:
        for e in nz:
            first.setdefault(e, d)
    for (r, c), d in first.items():
        profit[rpos[r], cpos[c]] = max(k - d, 0)
    ri, ci = linear_sum_assignment(profit, maximize=True)
    return int(profit[ri, ci].sum())
