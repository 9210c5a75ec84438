"""Exact rank over prime fields and the rationals, and random rank probing."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from types import MappingProxyType
from typing import Mapping

DEFAULT_PRIME = 65521


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(modulus) for a prime ``modulus < 2**31``, or the rationals when ``modulus is None``."""

    modulus: int | None = None

    def __post_init__(self):
        q = self.modulus
        if q is None:
            return
        if isinstance(q, bool) or not isinstance(q, int) or not 2 <= q < 2**31:
            raise ValueError(f"field modulus must be an integer in [2, 2**31), got {q!r}")
        if not is_prime(q):
            raise ValueError(f"field modulus {q} is not prime")

    @classmethod
    def gf(cls, q: int) -> "FieldSpec":
        return cls(q)

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``gf2``, ``gfP:<prime>`` or ``rational``."""
        t = text.strip()
        if t == "gf2":
            return cls(2)
        if t == "rational":
            return cls(None)
        if t.startswith("gfP:"):
            try:
                q = int(t[4:])
            except ValueError:
                raise ValueError(f"bad prime in field spec {text!r}") from None
            return cls(q)
        raise ValueError(f"unknown field {text!r} (expected gf2, gfP:<prime> or rational)")

    @property
    def is_prime_field(self) -> bool:
        return self.modulus is not None

    @property
    def name(self) -> str:
        if self.modulus is None:
            return "rational"
        return "gf2" if self.modulus == 2 else f"gfP:{self.modulus}"

    def reduce(self, x):
        q = self.modulus
        if q is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, q) % q
        return int(x) % q

    @property
    def zero(self):
        return Fraction(0) if self.modulus is None else 0


@dataclass(frozen=True)
class FieldMatrix:
    """Sparse matrix over a :class:`FieldSpec`; only nonzero scalars are stored."""

    rows: tuple
    cols: tuple
    entries: Mapping
    field: FieldSpec

    def __post_init__(self):
        rset, cset = set(self.rows), set(self.cols)
        canon = {}
        for (r, c), v in self.entries.items():
            if r not in rset or c not in cset:
                raise KeyError(f"entry ({r!r}, {c!r}) outside the matrix index sets")
            v = self.field.reduce(v)
            if v:
                canon[(r, c)] = v
        object.__setattr__(self, "entries", MappingProxyType(canon))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def support(self) -> frozenset:
        return frozenset(self.entries)

    def dense(self) -> list[list]:
        zero = self.field.zero
        return [[self.entries.get((r, c), zero) for c in self.cols] for r in self.rows]


def _rank_mod(a: list[list[int]], q: int) -> int:
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    rk = 0
    for col in range(ncols):
        piv = next((i for i in range(rk, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        inv = pow(a[rk][col], -1, q)
        prow = [v * inv % q for v in a[rk]]
        a[rk] = prow
        for i in range(rk + 1, nrows):
            f = a[i][col]
            if f:
                row = a[i]
                for j in range(col, ncols):
                    row[j] = (row[j] - f * prow[j]) % q
        rk += 1
        if rk == nrows:
            break
    return rk


def _rank_bareiss(a: list[list[int]]) -> int:
    # fraction-free: every division below is exact
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    rk = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(rk, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        p = a[rk][col]
        for i in range(rk + 1, nrows):
            row = a[i]
            f = row[col]
            for j in range(col + 1, ncols):
                row[j] = (row[j] * p - f * a[rk][j]) // prev
            row[col] = 0
        prev = p
        rk += 1
        if rk == nrows:
            break
    return rk


def _integer_rows(dense: list[list[Fraction]]) -> list[list[int]]:
    out = []
    for row in dense:
        den = lcm(*(v.denominator for v in row)) if row else 1
        out.append([int(v * den) for v in row])
    return out


def rank(m: FieldMatrix) -> int:
    """Exact rank by elimination (modular pivoting, or Bareiss over the rationals)."""
    if not m.entries:
        return 0
    dense = m.dense()
    if m.field.is_prime_field:
        return _rank_mod(dense, m.field.modulus)
    return _rank_bareiss(_integer_rows(dense))


def max_rank_random(h, k: int, field: FieldSpec | None = None, trials: int = 10,
                    seed: int = 0) -> int:
    """Largest rank of ``T_k(H)(p)`` seen over ``trials`` uniform random ``p``.

    This is a lower bound on the maximum rank.  Trial ``t`` draws from its own
    generator seeded with ``(seed, t)``, so trials are independent and the
    result does not depend on evaluation order.
    """
    from .pattern import evaluate, index_parameters

    if field is None:
        field = FieldSpec(DEFAULT_PRIME)
    if not field.is_prime_field:
        raise ValueError("random probing needs a prime field")
    if isinstance(trials, bool) or not isinstance(trials, int) or trials < 1:
        raise ValueError(f"trials must be a positive integer, got {trials!r}")
    index = index_parameters(h, k)
    q = field.modulus
    best = 0
    for t in range(trials):
        rng = random.Random(f"{seed}:{t}")
        p = {tr: rng.randrange(q) for tr in index}
        best = max(best, rank(evaluate(h, k, p, field)))
    return best
