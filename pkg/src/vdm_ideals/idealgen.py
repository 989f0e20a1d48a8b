"""Vandermonde matrices, their maximal minors, and the ideals built from
them: ``I(n, k)`` generated by the (k+1)-minors of the (k+1) x n
Vandermonde matrix, and the linear primes attached to set partitions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .combinatorics import SetPartition
from .errors import DomainError, StructuralError
from .poly import (
    GREVLEX,
    MonomialOrder,
    PolyMatrix,
    Polynomial,
    determinant,
    format_polynomial,
    parse_polynomial,
)

SOURCES = ("minors-M", "minors-N", "specht")


@dataclass(frozen=True)
class VandermondeSpec:
    n: int
    k: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and isinstance(self.k, int)) or not self.n > self.k >= 1:
            raise DomainError(f"need n > k >= 1, got n={self.n}, k={self.k}")


@dataclass(frozen=True)
class Ideal:
    """An ideal given by an ordered tuple of nonzero generators."""

    n_vars: int
    generators: tuple[Polynomial, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if g.nvars != self.n_vars:
                raise StructuralError(f"generator {g} is not in {self.n_vars} variables")
            if not g:
                raise DomainError("ideal generators must be nonzero")
        object.__setattr__(self, "generators", gens)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def to_text(self) -> str:
        return "\n".join(format_polynomial(g) for g in self.generators)

    def to_json(self) -> str:
        return json.dumps([format_polynomial(g) for g in self.generators])

    @classmethod
    def from_text(cls, text: str, n_vars: int, order: MonomialOrder = GREVLEX) -> "Ideal":
        gens = [parse_polynomial(line, n_vars, order) for line in text.splitlines() if line.strip()]
        return cls(n_vars, tuple(gens))

    @classmethod
    def from_json(cls, text: str, n_vars: int, order: MonomialOrder = GREVLEX) -> "Ideal":
        return cls(n_vars, tuple(parse_polynomial(s, n_vars, order) for s in json.loads(text)))


def _spec(spec) -> VandermondeSpec:
    if isinstance(spec, VandermondeSpec):
        return spec
    n, k = spec
    return VandermondeSpec(n, k)


def vandermonde_matrix(spec, order: MonomialOrder = GREVLEX) -> PolyMatrix:
    """The (k+1) x n matrix with entry (r, c) = x_c^r."""
    spec = _spec(spec)
    n = spec.n
    rows = []
    for r in range(spec.k + 1):
        rows.append([Polynomial.variable(c, n, order) ** r for c in range(1, n + 1)])
    return PolyMatrix.from_rows(rows)


def column_reduced_matrix(spec, order: MonomialOrder = GREVLEX) -> PolyMatrix:
    """Vandermonde matrix with the first column subtracted from the others."""
    m = vandermonde_matrix(spec, order)
    rows = []
    for r in range(m.rows):
        first = m[r, 0]
        rows.append([first] + [m[r, c] - first for c in range(1, m.cols)])
    return PolyMatrix.from_rows(rows)


def reduced_matrix(spec, order: MonomialOrder = GREVLEX) -> PolyMatrix:
    """The k x (n-1) matrix with entry (r, c) = x_{c+1}^r - x_1^r, r = 1..k."""
    spec = _spec(spec)
    m = column_reduced_matrix(spec, order)
    return m.submatrix(range(1, m.rows), range(1, m.cols))


def maximal_minors(m: PolyMatrix) -> list[Polynomial]:
    """Nonzero determinants of all full-height square submatrices, column
    subsets in lexicographic order."""
    if m.rows > m.cols:
        raise DomainError(f"a {m.rows}x{m.cols} matrix has no maximal minors of full row size")
    out = []
    for cols in combinations(range(m.cols), m.rows):
        d = determinant(m.submatrix(range(m.rows), cols))
        if d:
            out.append(d)
    return out


def vandermonde_product(n: int, cols: Iterable[int], order: MonomialOrder = GREVLEX) -> Polynomial:
    """Expanded product of ``x_j - x_i`` over pairs ``i < j`` in ``cols``."""
    cols = sorted(set(cols))
    if len(cols) < 2:
        raise DomainError("a Vandermonde product needs at least two columns")
    if cols[0] < 1 or cols[-1] > n:
        raise StructuralError(f"columns {cols} are not in 1..{n}")
    x = [None] + [Polynomial.variable(i, n, order) for i in range(1, n + 1)]
    result = Polynomial.constant(1, n, order)
    for a, i in enumerate(cols):
        for j in cols[a + 1:]:
            result = result * (x[j] - x[i])
    return result


def specht_generators_hook(spec, order: MonomialOrder = GREVLEX) -> Ideal:
    """Generators of the hook-shape Specht ideal: one Vandermonde product
    per (k+1)-subset of the variables."""
    spec = _spec(spec)
    gens = [
        vandermonde_product(spec.n, s, order).monic()
        for s in combinations(range(1, spec.n + 1), spec.k + 1)
    ]
    return Ideal(spec.n, tuple(gens))


def vandermonde_ideal(spec, source: str = "minors-N", order: MonomialOrder = GREVLEX) -> Ideal:
    """``I(n, k)`` from one of three generating sets.

    ``minors-M``: (k+1)-minors of the Vandermonde matrix;
    ``minors-N``: k-minors of the reduced k x (n-1) matrix;
    ``specht``: closed-form Vandermonde products.
    Generators are scaled to leading coefficient 1.
    """
    spec = _spec(spec)
    if source == "minors-M":
        gens = maximal_minors(vandermonde_matrix(spec, order))
    elif source == "minors-N":
        gens = maximal_minors(reduced_matrix(spec, order))
    elif source == "specht":
        return specht_generators_hook(spec, order)
    else:
        raise DomainError(f"unknown generator source {source!r}; choose from {SOURCES}")
    return Ideal(spec.n, tuple(g.monic() for g in gens))


def partition_prime(p: SetPartition, order: MonomialOrder = GREVLEX) -> Ideal:
    """Linear prime of a set partition: ``x_i - x_m`` for each non-minimal
    element i of a block with minimum m."""
    n = p.n
    gens = []
    for block in p.blocks:
        rep = Polynomial.variable(block[0], n, order)
        for i in block[1:]:
            gens.append((Polynomial.variable(i, n, order) - rep).monic())
    return Ideal(n, tuple(gens))


def collapse_to_partition(f: Polynomial, p: SetPartition) -> Polynomial:
    """Image of ``f`` modulo ``partition_prime(p)``: every variable is
    replaced by its block representative."""
    from .poly import substitute

    if f.nvars != p.n:
        raise StructuralError("partition and polynomial disagree on the variable count")
    images = {
        i: Polynomial.variable(r, p.n, f.order)
        for i, r in enumerate(p.representatives(), start=1)
        if r != i
    }
    return substitute(f, images) if images else f


def distinct_count(point: Sequence) -> int:
    return len(set(point))
