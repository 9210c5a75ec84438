"""Lifting assignment certificates on G(H) to matching certificates on G(T_k(H)).

Given a ``mu``-edge matching ``X`` of ``G(H)`` and a dual ``(y, z, lam)``:

* ``X'`` holds ``((i,r),(j,c))`` whenever ``(r,c)`` is in ``X`` and
  ``w_rc = j - i``, so an edge of weight ``-d`` is copied onto the ``k - d``
  blocks of the ``d``-th block subdiagonal;
* ``y'`` holds ``(i,r)`` whenever ``i >= 1 - y_r - lam``;
* ``z'`` holds ``(j,c)`` whenever ``z_c >= j``;

with levels ``i, j`` in ``1..k``.  With ``lam = -k`` chosen as a valid slope
of the delta curve, ``X'`` is a maximum matching of the expanded pattern and
``(y', z')`` a minimum cover, both of size ``delta(mu) + k*mu``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CertificateError
from .exact_rank import FieldSpec, rank
from .matching import (
    AssignmentDual,
    DeltaCurve,
    Matching,
    WeightedBipartiteGraph,
    build_graph,
    delta_curve,
    dual_for_fixed_lambda,
    select_mu_for_lambda,
)
from .pattern import LaurentPattern, ToeplitzPattern, evaluate, expand_toeplitz, index_parameters


@dataclass(frozen=True)
class LiftCertificate:
    k: int
    graph: WeightedBipartiteGraph
    matching: Matching
    dual: AssignmentDual
    mu: int
    lifted_matching: frozenset
    cover_rows: frozenset  # (level, r) with y' = 1
    cover_cols: frozenset  # (level, c) with z' = 1
    xi: tuple  # xi[d] = matched edges of weight -d, d = 0..k
    term_rank: int
    delta_mu: int
    expanded: ToeplitzPattern | None = field(default=None, repr=False)

    @property
    def lam(self) -> int:
        return self.dual.lam

    @property
    def cover_size(self) -> int:
        return len(self.cover_rows) + len(self.cover_cols)

    def sorted_lifted_matching(self) -> list:
        g = self.graph
        return sorted(self.lifted_matching,
                      key=lambda e: (e[0][0], g._lpos[e[0][1]], e[1][0], g._rpos[e[1][1]]))

    def sorted_cover(self) -> tuple[list, list]:
        g = self.graph
        return (sorted(self.cover_rows, key=lambda v: (v[0], g._lpos[v[1]])),
                sorted(self.cover_cols, key=lambda v: (v[0], g._rpos[v[1]])))


@dataclass
class Prop1Report:
    matching_admissible: bool
    cover_admissible: bool
    source_admissible: bool
    side_condition: bool
    optimal: bool | None  # |X'| == |cover|; None when the side condition fails
    size_identity: bool | None  # |X'| == delta(mu) + k*mu
    cover_identity: bool | None  # |cover| == delta(mu) + |R|(k+lam) - lam*mu
    matched_size: int
    cover_size: int
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.matching_admissible and self.cover_admissible and self.source_admissible
                and self.side_condition and bool(self.optimal)
                and bool(self.size_identity) and bool(self.cover_identity))

    def lines(self) -> list[str]:
        def mark(v):
            return "n/a" if v is None else ("ok" if v else "FAILED")

        out = [
            f"source primal/dual admissible: {mark(self.source_admissible)}",
            f"lifted matching admissible: {mark(self.matching_admissible)}",
            f"lifted cover admissible: {mark(self.cover_admissible)}",
            f"side condition: {mark(self.side_condition)}",
            f"|X'| = |cover| ({self.matched_size} vs {self.cover_size}): {mark(self.optimal)}",
            f"|X'| = delta(mu) + k*mu: {mark(self.size_identity)}",
            f"|cover| = delta(mu) + |R|(k+lambda) - lambda*mu: {mark(self.cover_identity)}",
        ]
        out += [f"  violation: {v}" for v in self.violations]
        return out


def _lift_sets(g: WeightedBipartiteGraph, k: int, x: Matching, dual: AssignmentDual):
    lifted = set()
    for r, c in x:
        d = -g.weight[(r, c)]
        for j in range(1, k - d + 1):
            lifted.add(((j + d, r), (j, c)))
    rows = {(i, r) for r in g.left for i in range(1, k + 1)
            if i >= 1 - dual.y.get(r, 0) - dual.lam}
    cols = {(j, c) for c in g.right for j in range(1, k + 1) if dual.z.get(c, 0) >= j}
    return frozenset(lifted), frozenset(rows), frozenset(cols)


def lift(g: WeightedBipartiteGraph, k: int, x: Matching, dual: AssignmentDual, mu: int,
         expanded: ToeplitzPattern | None = None, check: bool = True) -> LiftCertificate:
    """Build ``(X', y', z')`` and, unless ``check=False``, verify the certificate.

    Admissibility is checked against ``expanded`` when given.  Otherwise it is
    checked against the edge set ``{((i,r),(j,c)) : (r,c) in E, i - j >= -w_rc}``,
    which contains every edge of the expanded pattern.
    """
    lifted, rows, cols = _lift_sets(g, k, x, dual)
    xi = [0] * (k + 1)
    for e in x:
        d = -g.weight[e]
        if d <= k:
            xi[d] += 1
    cert = LiftCertificate(
        k=k, graph=g, matching=x, dual=dual, mu=mu,
        lifted_matching=lifted, cover_rows=rows, cover_cols=cols,
        xi=tuple(xi), term_rank=len(lifted),
        delta_mu=x.weight(g) if x.is_valid(g) else 0,
        expanded=expanded,
    )
    if check:
        report = check_proposition1(cert)
        if not report.passed:
            raise CertificateError("lift certificate failed verification", report.violations)
    return cert


def _expanded_edges(cert: LiftCertificate):
    if cert.expanded is not None:
        yield from cert.expanded.nonzeros
        return
    k = cert.k
    for (r, c), w in cert.graph.weight.items():
        for d in range(-w, k):
            for j in range(1, k - d + 1):
                yield (j + d, r), (j, c)


def check_proposition1(cert: LiftCertificate) -> Prop1Report:
    """Recheck a lift certificate from scratch and report every condition."""
    g, k, mu, lam = cert.graph, cert.k, cert.mu, cert.lam
    violations = []

    source_ok = True
    if not cert.matching.is_valid(g):
        source_ok = False
        violations.append("source X is not a matching of G(H)")
    elif len(cert.matching) != mu:
        source_ok = False
        violations.append(f"source X has {len(cert.matching)} edges, expected mu={mu}")
    dual_v = cert.dual.violations(g)
    if dual_v:
        source_ok = False
        violations += [f"source dual: {v}" for v in dual_v]
    heavy = [e for e in cert.matching if g.weight.get(e, 0) < -k]
    if heavy:
        violations += [f"matched edge {r!r}-{c!r} has weight {g.weight[(r, c)]} < -k"
                       for r, c in g.sorted_edges(heavy)]

    edges = set(_expanded_edges(cert))
    used_rows, used_cols = set(), set()
    matching_ok = True
    for a, b in cert.sorted_lifted_matching():
        if (a, b) not in edges:
            matching_ok = False
            violations.append(f"lifted edge {a!r}-{b!r} is not an edge of G(T_k(H))")
        if a in used_rows or b in used_cols:
            matching_ok = False
            violations.append(f"lifted edge {a!r}-{b!r} shares a vertex")
        used_rows.add(a)
        used_cols.add(b)

    cover_ok = True
    for a, b in sorted(edges, key=lambda e: (e[0][0], g._lpos[e[0][1]], e[1][0], g._rpos[e[1][1]])):
        if a not in cert.cover_rows and b not in cert.cover_cols:
            cover_ok = False
            violations.append(f"edge {a!r}-{b!r} uncovered (source edge {a[1]!r}-{b[1]!r})")

    side = (mu == 0 or lam >= -k) and (mu == len(g.left) or lam == -k)
    size, cov = len(cert.lifted_matching), cert.cover_size
    optimal = size_id = cover_id = None
    if side:
        delta_mu = cert.matching.weight(g) if source_ok else cert.delta_mu
        optimal = size == cov
        size_id = size == delta_mu + k * mu == sum((k - d) * n for d, n in enumerate(cert.xi))
        cover_id = cov == delta_mu + len(g.left) * (k + lam) - lam * mu
        if not optimal:
            violations.append(f"|X'| = {size} but cover size = {cov}")
        if not size_id:
            violations.append(f"|X'| = {size} but delta(mu) + k*mu = {delta_mu + k * mu}")
        if not cover_id:
            violations.append(f"cover size {cov} != delta(mu) + |R|(k+lambda) - lambda*mu = "
                              f"{delta_mu + len(g.left) * (k + lam) - lam * mu}")
    if heavy:
        size_id = False
    return Prop1Report(matching_ok, cover_ok, source_ok, side, optimal, size_id, cover_id,
                       size, cov, violations)


def certify(h: LaurentPattern, k: int) -> tuple[LiftCertificate, DeltaCurve]:
    """Term-rank certificate together with the delta curve it was built from."""
    expanded = expand_toeplitz(h, k)
    g = build_graph(h)
    curve = delta_curve(g)
    mu, lam = select_mu_for_lambda(curve, k)
    x = curve.per_mu[mu].matching
    dual = dual_for_fixed_lambda(g, mu, lam, x)
    cert = lift(g, k, x, dual, mu, expanded=expanded)
    value = curve.delta[mu] + k * mu
    if value != cert.term_rank:
        raise CertificateError("term rank mismatch",
                               [f"delta(mu)+k*mu = {value}, |X'| = {cert.term_rank}"])
    return cert, curve


def term_rank(h: LaurentPattern, k: int) -> tuple[int, LiftCertificate]:
    """Term rank of ``T_k(H)`` with a verified matching/cover certificate."""
    cert, _ = certify(h, k)
    return cert.term_rank, cert


def witness_from_certificate(h: LaurentPattern, cert: LiftCertificate) -> dict:
    """0/1 parameter value that switches on exactly the lifted matching."""
    g = cert.graph
    return {t: int((t[1], t[2]) in cert.matching and g.weight[(t[1], t[2])] == -t[0])
            for t in index_parameters(h, cert.k)}


def witness(h: LaurentPattern, k: int) -> tuple[dict, int]:
    """A parameter ``p`` in ``{0,1}^q`` with ``rank T_k(H)(p)`` equal to the term rank.

    The rank is verified exactly over GF(2), and the support of the evaluated
    matrix is checked to be the lifted matching.
    """
    value, cert = term_rank(h, k)
    p01 = witness_from_certificate(h, cert)
    mat = evaluate(h, k, p01, FieldSpec(2))
    problems = []
    if mat.support() != cert.lifted_matching:
        problems.append("support of T_k(H)(p) differs from the lifted matching")
    rk = rank(mat)
    if rk != value:
        problems.append(f"GF(2) rank {rk} != term rank {value}")
    if problems:
        raise CertificateError("witness check failed", problems)
    return p01, rk
