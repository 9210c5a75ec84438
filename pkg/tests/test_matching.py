from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ex_a, ex_b, weighted_graphs, zero_pattern
from toeprank import (CertificateError, LaurentPattern, Matching, WeightedBipartiteGraph,
                      build_graph, delta_curve, dual_for_fixed_lambda, max_matching,
                      select_mu_for_lambda)
from toeprank.matching import lemma_conditions_hold


def all_matchings(g):
    edges = list(g.weight)
    for size in range(len(edges) + 1):
        for sub in combinations(edges, size):
            if len({r for r, _ in sub}) == size and len({c for _, c in sub}) == size:
                yield sub


def delta_by_enumeration(g):
    best = {}
    for sub in all_matchings(g):
        v = sum(g.weight[e] for e in sub)
        best[len(sub)] = max(best.get(len(sub), v), v)
    return [best[mu] for mu in range(len(best))]


def test_build_graph_ex_a():
    g = build_graph(ex_a())
    assert dict(g.weight) == {("r1", "c1"): 0, ("r1", "c2"): -1, ("r2", "c1"): -1}


def test_build_graph_zero_and_min_index():
    assert not build_graph(zero_pattern()).weight
    h = LaurentPattern.build(["r"], ["c"], {2: [("r", "c")], 0: [("r", "c")]})
    assert dict(build_graph(h).weight) == {("r", "c"): 0}


def test_max_matching_ex_a():
    g = build_graph(ex_a())
    x, cover = max_matching(g)
    assert len(x) == max(len(s) for s in all_matchings(g)) == 2
    assert x.edges == {("r1", "c2"), ("r2", "c1")}
    assert cover.value == 2 and not cover.violations(g)


def test_max_matching_empty_and_complete():
    g = WeightedBipartiteGraph(["r1", "r2"], ["c1"], {})
    x, cover = max_matching(g)
    assert len(x) == 0 and cover.value == 0
    full = WeightedBipartiteGraph(["r1", "r2"], ["c1", "c2"],
                                  {(r, c): 0 for r in ("r1", "r2") for c in ("c1", "c2")})
    x, cover = max_matching(full)
    assert len(x) == 2
    assert dict(cover.y) == {"r1": 1, "r2": 1} and dict(cover.z) == {"c1": 0, "c2": 0}


def test_delta_curve_examples():
    g = build_graph(ex_a())
    assert delta_by_enumeration(g) == [0, 0, -2]
    curve = delta_curve(g)
    assert curve.delta == (0, 0, -2) and curve.mu_hat == 2
    assert curve.per_mu[1].matching.edges == {("r1", "c1")}
    assert curve.slopes == (0, -2)
    assert delta_curve(build_graph(zero_pattern())).delta == (0,)
    gb = build_graph(ex_b())
    assert len(gb.weight) == 4 and set(gb.weight.values()) == {0}
    assert delta_curve(gb).delta == (0, 0, 0)


@pytest.mark.parametrize("k, expected", [(2, (2, -2)), (1, (1, -1)), (3, (2, -3))])
def test_select_mu_ex_a(k, expected):
    assert select_mu_for_lambda(delta_curve(build_graph(ex_a())), k) == expected


def test_select_mu_empty():
    curve = delta_curve(build_graph(zero_pattern()))
    assert select_mu_for_lambda(curve, 4) == (0, -4)


def test_dual_ex_a_mu2():
    g = build_graph(ex_a())
    x = Matching({("r1", "c2"), ("r2", "c1")})
    dual = dual_for_fixed_lambda(g, 2, -2, x)
    assert dict(dual.y) == {"r1": 1, "r2": 0} and dict(dual.z) == {"c1": 1, "c2": 0}
    for (r, c), w in g.weight.items():
        assert dual.y[r] + dual.z[c] + dual.lam >= w
    assert dual.objective(2) == -2


def test_dual_mu0():
    g = build_graph(ex_a())
    # y = z = 0 is feasible iff lambda >= max w = 0
    for lam in (0, 2):
        dual = dual_for_fixed_lambda(g, 0, lam, Matching())
        assert sum(dual.y.values()) + sum(dual.z.values()) == 0
        assert dual.objective(0) == 0
    with pytest.raises(CertificateError):
        dual_for_fixed_lambda(g, 0, -1, Matching())


def test_dual_ex_b_needs_potentials():
    g = build_graph(ex_b())
    x = delta_curve(g).per_mu[2].matching
    # y = z = 0 fails: 0 + 0 - 2 < 0 on the weight-0 edges
    assert any(0 + 0 - 2 < w for w in g.weight.values())
    dual = dual_for_fixed_lambda(g, 2, -2, x)
    assert sum(dual.y.values()) + sum(dual.z.values()) == 4
    assert dual.objective(2) == 0 == delta_curve(g).delta[2]
    assert not dual.violations(g)


def test_dual_rejects_invalid_slope():
    g = build_graph(ex_a())
    x = Matching({("r1", "c1")})
    # at mu = 1 valid lambdas are -2..0
    with pytest.raises(CertificateError):
        dual_for_fixed_lambda(g, 1, 1, x)
    with pytest.raises(CertificateError):
        dual_for_fixed_lambda(g, 1, -3, x)
    with pytest.raises(CertificateError, match="not a 2-edge matching"):
        dual_for_fixed_lambda(g, 2, -2, x)


def test_graph_validation():
    with pytest.raises(ValueError):
        WeightedBipartiteGraph(["r"], ["c"], {("r", "c"): 1})
    with pytest.raises(ValueError):
        WeightedBipartiteGraph(["r"], ["c"], {("r", "x"): 0})


@settings(max_examples=150, deadline=None)
@given(weighted_graphs())
def test_matching_strong_duality(g):
    x, cover = max_matching(g)
    assert x.is_valid(g)
    assert len(x) == cover.value
    assert not cover.violations(g)
    assert all(v in (0, 1) for v in list(cover.y.values()) + list(cover.z.values()))


@settings(max_examples=150, deadline=None)
@given(weighted_graphs())
def test_delta_curve_properties(g):
    curve = delta_curve(g)
    d = curve.delta
    assert d[0] == 0
    assert curve.mu_hat == len(max_matching(g)[0])
    assert all(s <= 0 for s in curve.slopes)
    assert all(curve.slopes[i + 1] <= curve.slopes[i] for i in range(len(curve.slopes) - 1))
    for mu, sol in enumerate(curve.per_mu):
        assert len(sol.matching) == mu and sol.matching.is_valid(g)
        assert sol.matching.weight(g) == d[mu] == sol.dual.objective(mu)
        assert not sol.dual.violations(g)
        assert all(isinstance(v, int) for v in sol.dual.y.values())


@settings(max_examples=100, deadline=None)
@given(weighted_graphs(max_side=5).filter(lambda g: len(g.weight) <= 12))
def test_delta_matches_enumeration(g):
    assert list(delta_curve(g).delta) == delta_by_enumeration(g)


@settings(max_examples=150, deadline=None)
@given(weighted_graphs(), st.integers(1, 7))
def test_selection_is_valid_slope_and_flat(g, k):
    curve = delta_curve(g)
    mu, lam = select_mu_for_lambda(curve, k)
    assert lam == -k
    assert lemma_conditions_hold(curve, mu, lam)
    assert mu == max(m for m in range(curve.mu_hat + 1) if lemma_conditions_hold(curve, m, lam))
    # every admissible mu gives the same delta(mu) + k*mu
    vals = {curve.delta[m] + k * m for m in range(curve.mu_hat + 1)
            if lemma_conditions_hold(curve, m, lam)}
    assert vals == {curve.delta[mu] + k * mu}
    dual = dual_for_fixed_lambda(g, mu, lam, curve.per_mu[mu].matching)
    assert dual.objective(mu) == curve.delta[mu]


def test_deterministic_tie_breaking():
    g = WeightedBipartiteGraph(["a", "b"], ["x", "y"],
                               {(r, c): 0 for r in ("a", "b") for c in ("x", "y")})
    runs = {delta_curve(g).per_mu[1].matching.edges for _ in range(5)}
    assert runs == {frozenset({("a", "x")})}
