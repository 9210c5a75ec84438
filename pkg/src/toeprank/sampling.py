"""Random instance generators for experiments and tests.

Instance ``i`` of a run with base seed ``s`` is drawn from
``random.Random(f"{s}:{i}")``, so any single instance can be regenerated from
the pair that is logged with it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .matching import WeightedBipartiteGraph
from .pattern import LaurentPattern, index_parameters


def instance_rng(seed: int, i: int) -> random.Random:
    return random.Random(f"{seed}:{i}")


@dataclass(frozen=True)
class PatternSampler:
    """Random Laurent patterns with Bernoulli(density) supports per coefficient."""

    min_rows: int = 1
    max_rows: int = 4
    min_cols: int = 1
    max_cols: int = 4
    max_index: int = 3
    density: float = 0.3
    min_k: int = 1
    max_k: int = 4
    max_q: int | None = 12

    def sample(self, rng: random.Random) -> tuple[LaurentPattern, int]:
        # rejection on q keeps exhaustive GF(2) sweeps feasible
        while True:
            n = rng.randint(self.min_rows, self.max_rows)
            m = rng.randint(self.min_cols, self.max_cols)
            rows = [f"r{a + 1}" for a in range(n)]
            cols = [f"c{b + 1}" for b in range(m)]
            coeffs = {d: [(r, c) for r in rows for c in cols if rng.random() < self.density]
                      for d in range(self.max_index + 1)}
            h = LaurentPattern.build(rows, cols, coeffs)
            k = rng.randint(self.min_k, self.max_k)
            if self.max_q is None or index_parameters(h, k).q <= self.max_q:
                return h, k

    def draw(self, count: int, seed: int = 0):
        """Yield ``(i, pattern, k)`` for ``i`` in ``range(count)``."""
        for i in range(count):
            h, k = self.sample(instance_rng(seed, i))
            yield i, h, k


@dataclass(frozen=True)
class GraphSampler:
    """Random weighted bipartite graphs with weights uniform in ``[min_weight, 0]``."""

    max_left: int = 10
    max_right: int = 10
    min_weight: int = -5
    min_density: float = 0.05
    max_density: float = 0.5

    def sample(self, rng: random.Random) -> WeightedBipartiteGraph:
        n = rng.randint(0, self.max_left)
        m = rng.randint(0, self.max_right)
        dens = rng.uniform(self.min_density, self.max_density)
        weight = {(f"r{a}", f"c{b}"): rng.randint(self.min_weight, 0)
                  for a in range(n) for b in range(m) if rng.random() < dens}
        return WeightedBipartiteGraph([f"r{a}" for a in range(n)],
                                      [f"c{b}" for b in range(m)], weight)

    def draw(self, count: int, seed: int = 0):
        for i in range(count):
            yield i, self.sample(instance_rng(seed, i))


def micro_family(ks=(1, 2, 3)):
    """Every pattern on a 2x2 index set with coefficients H_0, H_1, for each k."""
    rows, cols = ("r1", "r2"), ("c1", "c2")
    cells = [(r, c) for r in rows for c in cols]
    supports = [[e for e, bit in zip(cells, bits) if bit] for bits in product((0, 1), repeat=4)]
    for s0, s1 in product(supports, repeat=2):
        h = LaurentPattern.build(rows, cols, {0: s0, 1: s1})
        for k in ks:
            yield h, k
