"""Matching, covering and cardinality-constrained assignment on G(H).

Integers only.  The four problems are

* maximum cardinality matching, with a minimum vertex cover as its dual
  (:func:`max_matching`);
* for each ``mu``, the maximum weight of a matching with exactly ``mu``
  edges, ``delta(mu)``, with dual ``(y, z, lam)`` satisfying
  ``y_r + z_c + lam >= w_rc`` on every edge (:func:`delta_curve`,
  :func:`dual_for_fixed_lambda`).

The edge/vertex incidence matrix is never built: "each vertex used at most
once" is the matching property and the dual constraints are checked edge by
edge.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .errors import CertificateError
from .pattern import Entry, LaurentPattern


@dataclass(frozen=True)
class WeightedBipartiteGraph:
    """``G = (R, C, E)`` with nonpositive integer weights; ``E`` is ``weight.keys()``."""

    left: tuple
    right: tuple
    weight: Mapping
    _lpos: dict = field(init=False, repr=False, compare=False)
    _rpos: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        left, right = tuple(self.left), tuple(self.right)
        lpos = {r: n for n, r in enumerate(left)}
        rpos = {c: n for n, c in enumerate(right)}
        if len(lpos) != len(left) or len(rpos) != len(right):
            raise ValueError("duplicate vertex labels")
        for (r, c), w in self.weight.items():
            if r not in lpos or c not in rpos:
                raise ValueError(f"edge ({r!r}, {c!r}) has an unknown endpoint")
            if isinstance(w, bool) or not isinstance(w, int) or w > 0:
                raise ValueError(f"weight of ({r!r}, {c!r}) must be a nonpositive integer, got {w!r}")
        wt = {e: self.weight[e] for e in sorted(self.weight, key=lambda e: (lpos[e[0]], rpos[e[1]]))}
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "weight", MappingProxyType(wt))
        object.__setattr__(self, "_lpos", lpos)
        object.__setattr__(self, "_rpos", rpos)

    @property
    def edges(self) -> tuple:
        """Edges sorted by (row position, col position)."""
        return tuple(self.weight)

    def edge_key(self, e: Entry) -> tuple[int, int]:
        return self._lpos[e[0]], self._rpos[e[1]]

    def sorted_edges(self, edges) -> list:
        return sorted(edges, key=self.edge_key)


@dataclass(frozen=True)
class Matching:
    edges: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(self.edges))

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __contains__(self, e):
        return e in self.edges

    def is_valid(self, g: WeightedBipartiteGraph) -> bool:
        rows = [r for r, _ in self.edges]
        cols = [c for _, c in self.edges]
        return (all(e in g.weight for e in self.edges)
                and len(set(rows)) == len(rows) and len(set(cols)) == len(cols))

    def weight(self, g: WeightedBipartiteGraph) -> int:
        return sum(g.weight[e] for e in self.edges)


@dataclass(frozen=True)
class Cover:
    """Vertex cover ``(y, z)``: ``y_r + z_c >= 1`` on every edge."""

    y: Mapping
    z: Mapping

    @property
    def value(self) -> int:
        return sum(self.y.values()) + sum(self.z.values())

    def violations(self, g: WeightedBipartiteGraph) -> list[str]:
        out = [f"negative potential at {v!r}"
               for d in (self.y, self.z) for v, x in d.items() if x < 0]
        out += [f"edge {r!r}-{c!r} uncovered" for r, c in g.edges
                if self.y.get(r, 0) + self.z.get(c, 0) < 1]
        return out


@dataclass(frozen=True)
class AssignmentDual:
    """Dual ``(y, z, lam)`` of the cardinality-mu assignment problem."""

    y: Mapping
    z: Mapping
    lam: int

    def objective(self, mu: int) -> int:
        return self.lam * mu + sum(self.y.values()) + sum(self.z.values())

    def violations(self, g: WeightedBipartiteGraph) -> list[str]:
        out = [f"negative potential at {v!r}"
               for d in (self.y, self.z) for v, x in d.items() if x < 0]
        for (r, c), w in g.weight.items():
            lhs = self.y.get(r, 0) + self.z.get(c, 0) + self.lam
            if lhs < w:
                out.append(f"edge {r!r}-{c!r}: y+z+lambda = {lhs} < w = {w}")
        return out


@dataclass(frozen=True)
class MuSolution:
    matching: Matching
    dual: AssignmentDual


@dataclass(frozen=True)
class DeltaCurve:
    """``delta[mu]`` = best weight of a ``mu``-edge matching, ``mu = 0..mu_hat``."""

    mu_hat: int
    delta: tuple
    per_mu: tuple

    @property
    def slopes(self) -> tuple:
        return tuple(self.delta[m] - self.delta[m - 1] for m in range(1, len(self.delta)))


def build_graph(h: LaurentPattern) -> WeightedBipartiteGraph:
    """Edge ``(r, c)`` iff some coefficient has it; weight is minus the first such index."""
    weight = {}
    for idx, nz in h.coeffs:  # ascending index, so the first hit is the minimum
        for e in nz:
            weight.setdefault(e, -idx)
    return WeightedBipartiteGraph(h.rows, h.cols, weight)


def _adjacency(g: WeightedBipartiteGraph) -> list[list[tuple[int, int]]]:
    """Per left index: (right index, weight), sorted by right index."""
    adj = [[] for _ in g.left]
    for (r, c), w in g.weight.items():
        adj[g._lpos[r]].append((g._rpos[c], w))
    for lst in adj:
        lst.sort()
    return adj


def max_matching(g: WeightedBipartiteGraph) -> tuple[Matching, Cover]:
    """Maximum matching (Hopcroft-Karp) and a minimum vertex cover of the same size.

    The cover comes from the alternating-path closure ``Z`` of the free rows:
    rows outside ``Z`` and columns inside ``Z``.
    """
    n, m = len(g.left), len(g.right)
    adj = [[j for j, _ in lst] for lst in _adjacency(g)]
    mate_l = [-1] * n
    mate_r = [-1] * m
    inf = n + m + 1

    def bfs() -> list[int] | None:
        dist = [inf] * n
        q = deque()
        for i in range(n):
            if mate_l[i] < 0:
                dist[i] = 0
                q.append(i)
        found = False
        while q:
            i = q.popleft()
            for j in adj[i]:
                i2 = mate_r[j]
                if i2 < 0:
                    found = True
                elif dist[i2] == inf:
                    dist[i2] = dist[i] + 1
                    q.append(i2)
        return dist if found else None

    def dfs(i: int, dist: list[int]) -> bool:
        for j in adj[i]:
            i2 = mate_r[j]
            if i2 < 0 or (dist[i2] == dist[i] + 1 and dfs(i2, dist)):
                mate_l[i], mate_r[j] = j, i
                return True
        dist[i] = inf
        return False

    while (dist := bfs()) is not None:
        for i in range(n):
            if mate_l[i] < 0:
                dfs(i, dist)

    # König: alternating reachability from free rows
    zl = [mate_l[i] < 0 for i in range(n)]
    zr = [False] * m
    q = deque(i for i in range(n) if zl[i])
    while q:
        i = q.popleft()
        for j in adj[i]:
            if not zr[j]:
                zr[j] = True
                i2 = mate_r[j]
                if i2 >= 0 and not zl[i2]:
                    zl[i2] = True
                    q.append(i2)
    y = {r: 0 if zl[i] else 1 for i, r in enumerate(g.left)}
    z = {c: 1 if zr[j] else 0 for j, c in enumerate(g.right)}
    x = Matching((g.left[i], g.right[mate_l[i]]) for i in range(n) if mate_l[i] >= 0)
    cover = Cover(y, z)
    if cover.value != len(x) or cover.violations(g):
        raise CertificateError("matching/cover mismatch", cover.violations(g))
    return x, cover


def _max_weight_matching(n: int, m: int, adj: list[list[tuple[int, int]]]):
    """Maximum weight matching for nonnegative integer weights, with potentials.

    Primal-dual (Kuhn-Munkres) without a perfectness requirement.  Returns
    ``(mate_l, y, z)`` with ``y, z >= 0``, ``y_i + z_j >= w_ij`` on every edge,
    equality on matched edges, and zero potential on every unmatched vertex,
    so ``sum(y) + sum(z)`` equals the matching weight.
    """
    y = [max((w for _, w in adj[i]), default=0) for i in range(n)]
    z = [0] * m
    mate_l = [-1] * n
    mate_r = [-1] * m

    for root in range(n):
        while mate_l[root] < 0 and y[root] > 0:
            # alternating tree of tight edges rooted at `root`
            par_r = [-1] * m  # tree parent (left vertex) of right vertex j
            order = [root]
            in_s = [False] * n
            in_s[root] = True
            q = deque([root])
            free_j = -1
            while q and free_j < 0:
                i = q.popleft()
                for j, w in adj[i]:
                    if par_r[j] < 0 and y[i] + z[j] == w:
                        par_r[j] = i
                        i2 = mate_r[j]
                        if i2 < 0:
                            free_j = j
                            break
                        if not in_s[i2]:
                            in_s[i2] = True
                            order.append(i2)
                            q.append(i2)
            if free_j >= 0:
                j = free_j
                while j >= 0:
                    i = par_r[j]
                    nxt = mate_l[i]
                    mate_l[i], mate_r[j] = j, i
                    j = nxt
                break

            slack = min((y[i] + z[j] - w for i in order for j, w in adj[i] if par_r[j] < 0),
                        default=None)
            ymin = min(y[i] for i in order)
            step = ymin if slack is None else min(slack, ymin)
            for i in order:
                y[i] -= step
            for j in range(m):
                if par_r[j] >= 0:
                    z[j] += step
            if step < ymin:
                continue  # a new tight edge leaves the tree
            low_i = next(i for i in order if y[i] == 0)
            if low_i != root:
                # shift the matching along root ~> low_i; low_i ends free with y = 0
                i = low_i
                j = mate_l[i]
                mate_l[i] = -1
                while True:
                    i_prev = par_r[j]
                    j_prev = mate_l[i_prev]
                    mate_l[i_prev], mate_r[j] = j, i_prev
                    if i_prev == root:
                        break
                    j = j_prev
            break
    return mate_l, y, z


def dual_for_fixed_lambda(g: WeightedBipartiteGraph, mu: int, lam: int,
                          x: Matching) -> AssignmentDual:
    """Optimal ``(y, z, lam)`` for the cardinality-``mu`` assignment dual at a fixed ``lam``.

    ``(y, z)`` are the vertex potentials of a maximum weight matching under
    ``max(w - lam, 0)``.  When ``lam`` is a valid slope of ``delta`` at ``mu``
    the dual objective equals the weight of ``x``; this is checked.
    """
    n, m = len(g.left), len(g.right)
    adj = [[(j, max(w - lam, 0)) for j, w in lst] for lst in _adjacency(g)]
    _, yv, zv = _max_weight_matching(n, m, adj)
    dual = AssignmentDual({r: yv[i] for i, r in enumerate(g.left)},
                          {c: zv[j] for j, c in enumerate(g.right)}, lam)
    problems = dual.violations(g)
    if not x.is_valid(g) or len(x) != mu:
        problems.append(f"primal is not a {mu}-edge matching of G")
    else:
        primal = x.weight(g)
        if dual.objective(mu) != primal:
            problems.append(f"dual objective {dual.objective(mu)} != primal value {primal}")
    if problems:
        raise CertificateError(f"assignment dual check failed at mu={mu}, lambda={lam}", problems)
    return dual


def delta_curve(g: WeightedBipartiteGraph) -> DeltaCurve:
    """All of ``delta(0..mu_hat)`` in one successive-shortest-path sweep.

    Costs are ``-w >= 0``.  Each augmentation follows a cheapest augmenting
    path (Dijkstra on reduced costs, potentials kept feasible by capping
    distances at the sink distance), so path costs are nondecreasing and the
    curve is concave by construction.
    """
    n, m = len(g.left), len(g.right)
    adj = [[(j, -w) for j, w in lst] for lst in _adjacency(g)]
    mate_l = [-1] * n
    mate_r = [-1] * m
    pl = [0] * n  # row potentials
    pr = [0] * m  # col potentials
    pt = 0  # sink potential; the source stays at 0
    inf = float("inf")

    delta = [0]
    matchings = [Matching()]
    while True:
        dl = [inf] * n
        dr = [inf] * m
        pred_l = [-1] * n
        pred_r = [-1] * m
        done_l = [False] * n
        done_r = [False] * m
        heap = []
        for i in range(n):
            if mate_l[i] < 0:
                dl[i] = -pl[i]
                heapq.heappush(heap, (dl[i], 0, i))
        dt, pred_t = inf, -1
        while heap:
            d, kind, v = heapq.heappop(heap)
            if kind == 2:
                break
            if kind == 0:
                if done_l[v] or d > dl[v]:
                    continue
                done_l[v] = True
                for j, cost in adj[v]:
                    if mate_l[v] == j:
                        continue
                    nd = d + cost + pl[v] - pr[j]
                    if nd < dr[j]:
                        dr[j] = nd
                        pred_r[j] = v
                        heapq.heappush(heap, (nd, 1, j))
            else:
                if done_r[v] or d > dr[v]:
                    continue
                done_r[v] = True
                i2 = mate_r[v]
                if i2 < 0:
                    nd = d + pr[v] - pt
                    if nd < dt:
                        dt, pred_t = nd, v
                        heapq.heappush(heap, (nd, 2, 0))
                else:
                    cost = next(c for j, c in adj[i2] if j == v)
                    nd = d - cost + pr[v] - pl[i2]
                    if nd < dl[i2]:
                        dl[i2] = nd
                        pred_l[i2] = v
                        heapq.heappush(heap, (nd, 0, i2))
        if pred_t < 0:
            break
        path_cost = dt + pt
        j = pred_t
        while j >= 0:
            i = pred_r[j]
            nxt = mate_l[i]
            mate_l[i], mate_r[j] = j, i
            j = nxt
        for i in range(n):
            pl[i] += min(dl[i], dt)
        for j in range(m):
            pr[j] += min(dr[j], dt)
        pt += dt
        delta.append(delta[-1] - path_cost)
        matchings.append(Matching((g.left[i], g.right[mate_l[i]])
                                  for i in range(n) if mate_l[i] >= 0))

    mu_hat = len(delta) - 1
    per_mu = []
    for mu, x in enumerate(matchings):
        if mu > 0:
            lam = delta[mu] - delta[mu - 1]
        elif mu_hat > 0:
            lam = delta[1] - delta[0]
        else:
            lam = 0
        per_mu.append(MuSolution(x, dual_for_fixed_lambda(g, mu, lam, x)))
    return DeltaCurve(mu_hat, tuple(delta), tuple(per_mu))


def lemma_conditions_hold(curve: DeltaCurve, mu: int, lam: int) -> bool:
    """Whether ``lam`` lies between the right and left slopes of ``delta`` at ``mu``."""
    d = curve.delta
    if not 0 <= mu <= curve.mu_hat:
        return False
    if mu > 0 and lam > d[mu] - d[mu - 1]:
        return False
    if mu < curve.mu_hat and lam < d[mu + 1] - d[mu]:
        return False
    return True


def select_mu_for_lambda(curve: DeltaCurve, k: int) -> tuple[int, int]:
    """Largest ``mu`` at which ``lam = -k`` is a valid slope of ``delta``."""
    mu = 0
    for m in range(1, curve.mu_hat + 1):
        if curve.delta[m] - curve.delta[m - 1] < -k:
            break
        mu = m
    return mu, -k
