"""Support patterns of matrix Laurent series and their Toeplitz expansions.

A :class:`LaurentPattern` records which entries of which coefficients
``H_0, H_1, ...`` are structurally nonzero.  Every structural nonzero of
``H_0..H_{k-1}`` owns one free parameter; :func:`expand_toeplitz` gives the
support of the block lower triangular Toeplitz matrix ``T_k(H)`` and
:func:`evaluate` materialises ``T_k(H)(p)`` over a field, copying each
parameter into every block where its coefficient appears.

Vertex order
------------
Rows and columns are ordered by their position in the declared ``rows`` and
``cols`` sequences.  All deterministic orderings in the package (parameter
index, tie-breaking, serialisation) use these positions, never label values,
so integer and string labels may be mixed and output does not depend on hash
seeds.  Row and column labels live in separate namespaces; a label may be used
both as a row and as a column.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Tuple, Union

from .errors import PatternError, TruncationWarning

Label = Union[str, int]
Entry = Tuple[Label, Label]
Triple = Tuple[int, Label, Label]
LevelRow = Tuple[int, Label]
ToeplitzEntry = Tuple[LevelRow, LevelRow]


def _check_labels(labels, what: str) -> tuple:
    labels = tuple(labels)
    seen = set()
    for lab in labels:
        if isinstance(lab, bool) or not isinstance(lab, (str, int)):
            raise PatternError(f"{what} label {lab!r} must be a string or an integer")
        if lab in seen:
            raise PatternError(f"duplicate {what} label {lab!r}")
        seen.add(lab)
    return labels


@dataclass(frozen=True)
class SupportMatrix:
    """Support of a single coefficient matrix."""

    rows: tuple
    cols: tuple
    nonzeros: frozenset

    def __post_init__(self):
        object.__setattr__(self, "rows", _check_labels(self.rows, "row"))
        object.__setattr__(self, "cols", _check_labels(self.cols, "col"))
        object.__setattr__(self, "nonzeros", frozenset(self.nonzeros))
        rset, cset = set(self.rows), set(self.cols)
        for r, c in self.nonzeros:
            if r not in rset:
                raise PatternError(f"nonzero ({r!r}, {c!r}) references unknown row {r!r}")
            if c not in cset:
                raise PatternError(f"nonzero ({r!r}, {c!r}) references unknown col {c!r}")


@dataclass(frozen=True)
class LaurentPattern:
    """Finite truncation of the support of ``H(s) = sum_i s^-i H_i``.

    ``coeffs`` is stored canonically as a tuple of ``(index, frozenset of
    (row, col))`` pairs sorted by index, with empty coefficients dropped.
    Use :meth:`build` to construct from a mapping.
    """

    rows: tuple
    cols: tuple
    coeffs: tuple = ()
    _row_pos: dict = field(init=False, repr=False, compare=False)
    _col_pos: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rows = _check_labels(self.rows, "row")
        cols = _check_labels(self.cols, "col")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_row_pos", {r: n for n, r in enumerate(rows)})
        object.__setattr__(self, "_col_pos", {c: n for n, c in enumerate(cols)})

        canon = []
        seen_idx = set()
        for idx, nz in self.coeffs:
            if isinstance(idx, bool) or not isinstance(idx, int) or idx < 0:
                raise PatternError(f"coefficient index {idx!r} must be a nonnegative integer")
            if idx in seen_idx:
                raise PatternError(f"duplicate coefficient index {idx}")
            seen_idx.add(idx)
            # validates labels
            supp = SupportMatrix(rows, cols, nz).nonzeros
            if supp:
                canon.append((idx, supp))
        canon.sort(key=lambda t: t[0])
        object.__setattr__(self, "coeffs", tuple(canon))

    @classmethod
    def build(cls, rows: Iterable[Label], cols: Iterable[Label],
              coeffs: Mapping[int, Iterable[Entry]] | None = None) -> "LaurentPattern":
        coeffs = coeffs or {}
        return cls(tuple(rows), tuple(cols),
                   tuple((i, frozenset(tuple(e) for e in nz)) for i, nz in coeffs.items()))

    def coefficient(self, i: int) -> SupportMatrix:
        for idx, nz in self.coeffs:
            if idx == i:
                return SupportMatrix(self.rows, self.cols, nz)
        return SupportMatrix(self.rows, self.cols, frozenset())

    def row_pos(self, r: Label) -> int:
        return self._row_pos[r]

    def col_pos(self, c: Label) -> int:
        return self._col_pos[c]

    def entry_key(self, e: Entry) -> tuple[int, int]:
        return self._row_pos[e[0]], self._col_pos[e[1]]

    def sorted_entries(self, entries: Iterable[Entry]) -> list:
        return sorted(entries, key=self.entry_key)

    @property
    def max_index(self) -> int:
        return self.coeffs[-1][0] if self.coeffs else -1

    def relabel(self, row_map: Mapping, col_map: Mapping) -> "LaurentPattern":
        return LaurentPattern(
            tuple(row_map[r] for r in self.rows),
            tuple(col_map[c] for c in self.cols),
            tuple((i, frozenset((row_map[r], col_map[c]) for r, c in nz))
                  for i, nz in self.coeffs),
        )


@dataclass(frozen=True)
class ParameterIndex:
    """One parameter per structural nonzero of ``H_0..H_{k-1}``.

    Triples ``(i, r, c)`` are sorted by ``(i, row position, col position)``.
    """

    k: int
    triples: tuple

    @property
    def q(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)

    def __len__(self):
        return len(self.triples)

    def __contains__(self, t) -> bool:
        return t in set(self.triples)


@dataclass(frozen=True)
class ToeplitzPattern:
    """Support of ``T_k(H)``; rows are ``(level, r)``, cols ``(level, c)``, levels 1..k."""

    k: int
    rows: tuple
    cols: tuple
    nonzeros: frozenset

    def adjacency(self) -> dict:
        """Row -> list of columns, both in declared order."""
        col_pos = {c: n for n, c in enumerate(self.cols)}
        adj = {r: [] for r in self.rows}
        for r, c in self.nonzeros:
            adj[r].append(c)
        for lst in adj.values():
            lst.sort(key=col_pos.__getitem__)
        return adj


def _check_k(k) -> int:
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise PatternError(f"k must be a positive integer, got {k!r}")
    return k


def expand_toeplitz(h: LaurentPattern, k: int) -> ToeplitzPattern:
    """Support of ``T_k(H)``: ``((i,r),(j,c))`` is nonzero iff ``i >= j`` and
    ``(r,c)`` is nonzero in ``H_{i-j}``."""
    _check_k(k)
    if h.max_index >= k:
        warnings.warn(
            f"coefficients with index >= k={k} do not enter T_k(H); "
            "they still define the weights of G(H)",
            TruncationWarning,
            stacklevel=2,
        )
    nonzeros = set()
    for d, nz in h.coeffs:
        if d >= k:
            break
        for r, c in nz:
            for j in range(1, k - d + 1):
                nonzeros.add(((j + d, r), (j, c)))
    rows = tuple((i, r) for i in range(1, k + 1) for r in h.rows)
    cols = tuple((j, c) for j in range(1, k + 1) for c in h.cols)
    return ToeplitzPattern(k, rows, cols, frozenset(nonzeros))


def index_parameters(h: LaurentPattern, k: int) -> ParameterIndex:
    _check_k(k)
    triples = [(d, r, c) for d, nz in h.coeffs if d < k for r, c in nz]
    triples.sort(key=lambda t: (t[0], h.row_pos(t[1]), h.col_pos(t[2])))
    return ParameterIndex(k, tuple(triples))


def evaluate(h: LaurentPattern, k: int, p: Mapping[Triple, object], field):
    """Materialise ``T_k(H)(p)`` as a :class:`~toeprank.exact_rank.FieldMatrix`.

    Every indexed triple needs a value in ``p``; keys outside the index are
    ignored.  The value of ``(d, r, c)`` is written to all ``k - d`` blocks on
    the ``d``-th block subdiagonal.
    """
    from .exact_rank import FieldMatrix

    index = index_parameters(h, k)
    missing = [t for t in index if t not in p]
    if missing:
        raise PatternError(f"missing parameter values for {len(missing)} triple(s): {missing}")
    entries = {}
    for t in index:
        val = field.reduce(p[t])
        if not val:
            continue
        d, r, c = t
        for j in range(1, k - d + 1):
            entries[((j + d, r), (j, c))] = val
    rows = tuple((i, r) for i in range(1, k + 1) for r in h.rows)
    cols = tuple((j, c) for j in range(1, k + 1) for c in h.cols)
    return FieldMatrix(rows, cols, entries, field)
