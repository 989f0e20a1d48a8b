"""Hilbert series, Krull dimension and degree of ``R/I`` computed from
the leading-term ideal of a Groebner basis."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError
from .groebner import GroebnerBasis

Monomial = tuple[int, ...]


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(monomials: Iterable[Monomial]) -> list[Monomial]:
    """Drop monomials divisible by another one; sort the survivors."""
    uniq = sorted(set(monomials), key=lambda m: (sum(m), m))
    kept: list[Monomial] = []
    for m in uniq:
        if not any(_divides(g, m) for g in kept):
            kept.append(m)
    return sorted(kept, key=lambda m: (sum(m), tuple(-e for e in m)))


@dataclass(frozen=True)
class MonomialIdeal:
    n_vars: int
    min_gens: tuple[Monomial, ...]

    @classmethod
    def from_monomials(cls, n_vars: int, monomials: Iterable[Monomial]) -> "MonomialIdeal":
        return cls(n_vars, tuple(minimalize(monomials)))

    def contains(self, m: Monomial) -> bool:
        return any(_divides(g, m) for g in self.min_gens)


@dataclass(frozen=True)
class HilbertSeries:
    """Hilbert series ``numerator(t) / (1 - t)^n_vars`` of ``R/I``."""

    n_vars: int
    numerator: tuple[int, ...]

    def is_zero_module(self) -> bool:
        return not any(self.numerator)

    def reduced(self) -> tuple[int, tuple[int, ...]]:
        """``(c, q)`` with ``numerator = (1 - t)^c * q`` and ``q(1) != 0``."""
        if self.is_zero_module():
            raise DomainError("the zero ring has no dimension or degree")
        q = list(self.numerator)
        c = 0
        while sum(q) == 0:
            # divide by (1 - t): partial sums
            out, acc = [], 0
            for a in q[:-1]:
                acc += a
                out.append(acc)
            q = out
            c += 1
        return c, tuple(q)

    def coefficient(self, d: int) -> int:
        """Value of the Hilbert function at degree ``d``."""
        from math import comb

        n = self.n_vars
        return sum(
            a * comb(d - i + n - 1, n - 1) for i, a in enumerate(self.numerator) if i <= d
        )

    def to_dict(self) -> dict:
        out = {"n_vars": self.n_vars, "numerator": list(self.numerator)}
        if not self.is_zero_module():
            out["dim"] = dimension(self)
            out["degree"] = degree(self)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "HilbertSeries":
        data = json.loads(text)
        return cls(int(data["n_vars"]), tuple(int(c) for c in data["numerator"]))


def leading_term_ideal(gb: GroebnerBasis) -> MonomialIdeal:
    return MonomialIdeal.from_monomials(gb.n_vars, gb.leading_monomials())


def _poly_add(a: list[int], b: list[int], shift: int = 0) -> list[int]:
    out = list(a) + [0] * max(0, len(b) + shift - len(a))
    for i, c in enumerate(b):
        out[i + shift] += c
    return out


def _trim(p: list[int]) -> list[int]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _numerator(gens: list[Monomial]) -> list[int]:
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    counts = Counter(i for g in gens for i, e in enumerate(g) if e)
    var, occ = counts.most_common(1)[0]
    if occ == 1:
        # pairwise coprime generators: product of (1 - t^deg)
        out = [1]
        for g in gens:
            d = sum(g)
            nxt = out + [0] * d
            for i, c in enumerate(out):
                nxt[i + d] -= c
            out = nxt
        return out
    # pivot on x_var: Q(I) = Q(I + x_var) + t * Q(I : x_var)
    unit = tuple(1 if i == var else 0 for i in range(len(gens[0])))
    plus = [g for g in gens if not g[var]] + [unit]
    colon = minimalize(tuple(e - 1 if i == var and e else e for i, e in enumerate(g)) for g in gens)
    return _trim(_poly_add(_numerator(plus), _numerator(colon), 1))


def hilbert_numerator(m: MonomialIdeal) -> HilbertSeries:
    """Numerator of the Hilbert series of ``R / m``.

    Pivot recursion on a most frequent variable; an ideal containing 1
    gives the zero numerator.
    """
    return HilbertSeries(m.n_vars, tuple(_trim(_numerator(list(m.min_gens)))))


def dimension(h: HilbertSeries) -> int:
    c, _ = h.reduced()
    return h.n_vars - c


def degree(h: HilbertSeries) -> int:
    _, q = h.reduced()
    value = sum(q)
    if value <= 0:
        raise DomainError(f"non-positive multiplicity {value}; numerator is inconsistent")
    return value


def hilbert_series(gb: GroebnerBasis) -> HilbertSeries:
    return hilbert_numerator(leading_term_ideal(gb))


def standard_monomial_count(m: MonomialIdeal, d: int) -> int:
    """Monomials of degree ``d`` outside ``m``, counted by enumeration."""
    count = 0
    for exp in _compositions(d, m.n_vars):
        if not m.contains(exp):
            count += 1
    return count


def _compositions(d: int, parts: int) -> Iterable[Monomial]:
    if parts == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, parts - 1):
            yield (first,) + rest


def series_from_counts(counts: Sequence[int], n_vars: int) -> list[int]:
    """Multiply a truncated Hilbert function by ``(1 - t)^n_vars``."""
    out = list(counts)
    for _ in range(n_vars):
        out = [out[0]] + [out[i] - out[i - 1] for i in range(1, len(out))]
    return out
