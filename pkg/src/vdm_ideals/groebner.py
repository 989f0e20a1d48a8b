"""Reduced Groebner bases (Buchberger), membership, equality and
intersection of ideals over Q.

The engine works on integer-coefficient polynomials whose monomials are
packed into Python ints in two ways at once:

* an exponent word, 8 bits per variable with a guard bit, so that
  multiplication is addition and divisibility is one subtraction;
* an order key, the weight-matrix image of the exponents, so that the
  monomial order is integer comparison (also additive).

Coefficients are kept fraction-free: reductions scale by the minimal
integer factor and results are made primitive.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DomainError, ResourceLimitError, StructuralError
from .idealgen import Ideal
from .poly import GREVLEX, MonomialOrder, Polynomial, _norm, block_order

DEFAULT_MAX_REDUCTIONS = 10**6
DEFAULT_MAX_PAIRS = 10**6

_EB = 8  # bits per exponent field
_GUARD = 1 << (_EB - 1)
_EMASK = (1 << _EB) - 1
_KB = 20  # bits per order-key field


def default_max_reductions() -> int:
    env = os.environ.get("VDM_MAX_REDUCTIONS")
    return int(env) if env else DEFAULT_MAX_REDUCTIONS


class _Ring:
    def __init__(self, nvars: int, order: MonomialOrder):
        self.nvars = nvars
        self.order = order
        rows = order.weight_rows(nvars)
        nrows = len(rows)
        self.kv = [
            sum(row[i] << (_KB * (nrows - 1 - r)) for r, row in enumerate(rows))
            for i in range(nvars)
        ]
        self.pv = [1 << (_EB * i) for i in range(nvars)]
        self.guard = sum(_GUARD << (_EB * i) for i in range(nvars))

    def pack(self, exp: Sequence[int]) -> tuple[int, int]:
        P = K = 0
        for e, p, k in zip(exp, self.pv, self.kv):
            if e:
                if e >= _GUARD:
                    raise DomainError(f"exponent {e} exceeds the engine limit of {_GUARD - 1}")
                P += e * p
                K += e * k
        return P, K

    def unpack(self, P: int) -> tuple[int, ...]:
        return tuple((P >> (_EB * i)) & _EMASK for i in range(self.nvars))

    def divides(self, u: int, m: int) -> bool:
        g = self.guard
        return ((m | g) - u) & g == g

    def from_poly(self, f: Polynomial) -> tuple[list[tuple[int, int, int]], int]:
        """Integer terms ``(P, K, c)`` sorted descending, and the
        denominator ``den`` with ``f = terms / den``."""
        if f.nvars != self.nvars:
            raise StructuralError(f"polynomial in {f.nvars} variables, ring has {self.nvars}")
        den = lcm(*(c.denominator for _, c in f.terms)) if f.terms else 1
        out = []
        for exp, c in f.terms:
            P, K = self.pack(exp)
            out.append((P, K, int(c * den)))
        out.sort(key=lambda t: t[1], reverse=True)
        return out, den

    def to_poly(self, terms: Iterable[tuple[int, int, int]], scale=1) -> Polynomial:
        d = {self.unpack(P): _norm(Fraction(c, scale)) for P, _, c in terms}
        return Polynomial._raw(self.nvars, d, self.order)


class _GPoly:
    __slots__ = ("lmP", "lmK", "lc", "lm", "tail", "deg")

    def __init__(self, ring: _Ring, terms: list[tuple[int, int, int]]):
        P, K, c = terms[0]
        self.lmP, self.lmK, self.lc = P, K, c
        self.lm = ring.unpack(P)
        self.deg = sum(self.lm)
        self.tail = terms[1:]

    def terms(self):
        return [(self.lmP, self.lmK, self.lc)] + self.tail


def _primitive(terms: list[tuple[int, int, int]]) -> list[tuple[int, int, int]]:
    g = 0
    for _, _, c in terms:
        g = gcd(g, c)
        if g == 1:
            break
    if terms[0][2] < 0:
        g = -g
    if g == 1:
        return terms
    return [(P, K, c // g) for P, K, c in terms]


def _reduce(ring: _Ring, terms, reducers: Sequence[_GPoly], full: bool = True):
    """Divide ``terms`` by ``reducers``.

    Returns ``(remainder, scale)`` with ``scale * f - remainder`` in the
    ideal of the reducers. Always reduces the largest reducible term by
    the first reducer (in list order) whose leading monomial divides it.
    """
    G = ring.guard
    cur: dict[int, int] = {}
    heap = []
    for P, K, c in terms:
        cur[P] = c
        heap.append((-K, P))
    heapq.heapify(heap)
    rem: list[list[int]] = []
    scale = 1
    while heap:
        negK, P = heapq.heappop(heap)
        c = cur.pop(P, None)
        if c is None:
            continue
        red = None
        mP = P | G
        for g in reducers:
            if (mP - g.lmP) & G == G:
                red = g
                break
        if red is None:
            rem.append([P, -negK, c])
            if not full:
                while heap:
                    negK, P = heapq.heappop(heap)
                    c = cur.pop(P, None)
                    if c is not None:
                        rem.append([P, -negK, c])
                break
            continue
        a = red.lc
        if a == 1:
            mc = c
        else:
            d = gcd(a, c)
            ma, mc = a // d, c // d
            if ma != 1:
                for key in cur:
                    cur[key] *= ma
                for t in rem:
                    t[2] *= ma
                scale *= ma
        dP = P - red.lmP
        dK = -negK - red.lmK
        for gP, gK, gc in red.tail:
            nP = gP + dP
            v = cur.get(nP)
            if v is None:
                cur[nP] = -mc * gc
                heapq.heappush(heap, (-(gK + dK), nP))
            else:
                v -= mc * gc
                if v:
                    cur[nP] = v
                else:
                    del cur[nP]
    return [tuple(t) for t in rem], scale


def _lcm_exp(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    return not any(x and y for x, y in zip(a, b))


@dataclass
class _Stats:
    reductions: int = 0
    zero_reductions: int = 0
    max_pairs_seen: int = 0


def _spoly(ring: _Ring, f: _GPoly, g: _GPoly, LP: int, LK: int):
    a, b = f.lc, g.lc
    d = gcd(a, b)
    fa, gb = b // d, a // d
    acc: dict[int, list[int]] = {}
    dP, dK = LP - f.lmP, LK - f.lmK
    for P, K, c in f.tail:
        acc[P + dP] = [K + dK, fa * c]
    dP, dK = LP - g.lmP, LK - g.lmK
    for P, K, c in g.tail:
        key = P + dP
        t = acc.get(key)
        if t is None:
            acc[key] = [K + dK, -gb * c]
        else:
            t[1] -= gb * c
    return [(P, K, c) for P, (K, c) in acc.items() if c]


def _buchberger(ring: _Ring, inputs: list[list[tuple[int, int, int]]], max_reductions: int, max_pairs: int):
    stats = _Stats()
    basis: list[_GPoly] = []
    active: list[int] = []
    live: dict[tuple[int, int], tuple] = {}  # (i, j) -> (lcm tuple, LP)
    heap: list = []

    def add(terms):
        h_idx = len(basis)
        h = _GPoly(ring, _primitive(terms))
        basis.append(h)
        # Gebauer-Moeller update: new pairs first
        cands = []
        for g_idx in active:
            g = basis[g_idx]
            L = _lcm_exp(h.lm, g.lm)
            LP, LK = ring.pack(L)
            cands.append((g_idx, L, LP, LK, _coprime(h.lm, g.lm)))
        kept = []
        for pos, cand in enumerate(cands):
            g_idx, L, LP, LK, cop = cand
            if cop:
                kept.append(cand)
                continue
            dominated = False
            for other in cands[pos + 1:]:
                if ring.divides(other[2], LP):
                    dominated = True
                    break
            if not dominated:
                for other in kept:
                    if ring.divides(other[2], LP):
                        dominated = True
                        break
            if not dominated:
                kept.append(cand)
        # chain criterion on old pairs
        hP = h.lmP
        for key in list(live):
            i, j = key
            L, LP = live[key]
            if not ring.divides(hP, LP):
                continue
            Li = ring.pack(_lcm_exp(basis[i].lm, h.lm))[0]
            Lj = ring.pack(_lcm_exp(basis[j].lm, h.lm))[0]
            if Li != LP and Lj != LP:
                del live[key]
        for g_idx, L, LP, LK, cop in kept:
            if cop:
                continue
            key = (g_idx, h_idx)
            live[key] = (L, LP)
            heapq.heappush(heap, (sum(L), L, g_idx, h_idx, LP, LK))
        active[:] = [g for g in active if not ring.divides(hP, basis[g].lmP)]
        active.append(h_idx)
        stats.max_pairs_seen = max(stats.max_pairs_seen, len(live))
        if len(live) > max_pairs:
            raise ResourceLimitError(
                f"pair queue exceeded {max_pairs} entries",
                reductions=stats.reductions,
                pairs=len(live),
            )

    for f in sorted(inputs, key=lambda t: (t[0][1])):
        r, _ = _reduce(ring, f, [basis[i] for i in active])
        if r:
            add(r)

    while heap:
        _, _, i, j, LP, LK = heapq.heappop(heap)
        if live.pop((i, j), None) is None:
            continue
        stats.reductions += 1
        if stats.reductions > max_reductions:
            raise ResourceLimitError(
                f"Buchberger exceeded {max_reductions} pair reductions",
                reductions=stats.reductions - 1,
                pairs=len(live) + 1,
            )
        s = _spoly(ring, basis[i], basis[j], LP, LK)
        if not s:
            stats.zero_reductions += 1
            continue
        s.sort(key=lambda t: t[1], reverse=True)
        r, _ = _reduce(ring, s, [basis[a] for a in active])
        if r:
            add(r)
        else:
            stats.zero_reductions += 1

    final = [basis[i] for i in active]
    reduced = []
    for idx, g in enumerate(final):
        others = final[:idx] + final[idx + 1:]
        r, _ = _reduce(ring, g.terms(), others)
        reduced.append(_GPoly(ring, _primitive(r)))
    reduced.sort(key=lambda g: g.lmK)
    return reduced, stats


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic, interreduced, sorted by ascending
    leading monomial."""

    order: MonomialOrder
    n_vars: int
    basis: tuple[Polynomial, ...]
    reductions: int = field(default=0, compare=False)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [g.leading_monomial() for g in self.basis]

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.basis, self.order)

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce(f)

    def to_ideal(self) -> Ideal:
        return Ideal(self.n_vars, self.basis)


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Polynomial:
    """Remainder of ``f`` on division by ``basis`` (in list order).

    The result differs from ``f`` by an element of the ideal, and none of
    its terms is divisible by a leading monomial of the basis.
    """
    if isinstance(basis, GroebnerBasis):
        order, basis = basis.order, basis.basis
    ring = _Ring(f.nvars, order)
    reducers = []
    for g in basis:
        if not g:
            raise DomainError("cannot divide by the zero polynomial")
        terms, _ = ring.from_poly(g)
        reducers.append(_GPoly(ring, terms))
    if not f:
        return f.with_order(order)
    terms, den = ring.from_poly(f)
    r, s = _reduce(ring, terms, reducers)
    return ring.to_poly(r, s * den)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    f, g = f.with_order(order), g.with_order(order)
    cf, mf = f.leading_term()
    cg, mg = g.leading_term()
    L = _lcm_exp(mf, mg)
    uf = Polynomial.monomial(tuple(a - b for a, b in zip(L, mf)), Fraction(1) / cf, order)
    ug = Polynomial.monomial(tuple(a - b for a, b in zip(L, mg)), Fraction(1) / cg, order)
    return uf * f - ug * g


def is_groebner_basis(polys: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> bool:
    """Buchberger's criterion checked pair by pair."""
    polys = list(polys)
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if normal_form(s_polynomial(polys[i], polys[j], order), polys, order):
                return False
    return True


def is_reduced_basis(polys: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> bool:
    polys = [p.with_order(order) for p in polys]
    lms = [p.leading_monomial() for p in polys]
    for idx, p in enumerate(polys):
        if p.leading_coefficient() != 1:
            return False
        for jdx, m in enumerate(lms):
            if jdx == idx:
                continue
            for exp, _ in p.terms:
                if all(a <= b for a, b in zip(m, exp)):
                    return False
    return True


def buchberger(
    ideal: Ideal,
    order: MonomialOrder = GREVLEX,
    *,
    max_reductions: int | None = None,
    max_pairs: int = DEFAULT_MAX_PAIRS,
) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` under ``order``.

    Uses the normal selection strategy with both Buchberger criteria.
    Raises :class:`ResourceLimitError` past ``max_reductions`` pair
    reductions or ``max_pairs`` queued pairs.
    """
    if max_reductions is None:
        max_reductions = default_max_reductions()
    ring = _Ring(ideal.n_vars, order)
    inputs = [ring.from_poly(g)[0] for g in ideal.generators if g]
    reduced, stats = _buchberger(ring, inputs, max_reductions, max_pairs)
    polys = []
    for g in reduced:
        polys.append(ring.to_poly(g.terms(), g.lc))
    return GroebnerBasis(order, ideal.n_vars, tuple(polys), stats.reductions)


def ideal_membership(f: Polynomial, ideal: Ideal, order: MonomialOrder = GREVLEX, **guard) -> bool:
    if f.nvars != ideal.n_vars:
        raise StructuralError("polynomial and ideal live in different rings")
    gb = buchberger(ideal, order, **guard)
    return not normal_form(f, gb.basis, order)


def ideal_equal(a: Ideal, b: Ideal, order: MonomialOrder = GREVLEX, **guard) -> bool:
    if a.n_vars != b.n_vars:
        raise StructuralError("ideals live in different rings")
    return buchberger(a, order, **guard).basis == buchberger(b, order, **guard).basis


def _lift(f: Polynomial, nvars: int, order: MonomialOrder) -> Polynomial:
    return Polynomial._raw(nvars + 1, {(0,) + e: c for e, c in f.terms}, order)


def intersect(a: Ideal, b: Ideal, order: MonomialOrder = GREVLEX, **guard) -> Ideal:
    """Generators of ``a`` intersected with ``b``.

    Adjoins an auxiliary variable t, forms ``t*a + (1-t)*b`` and keeps the
    t-free part of a Groebner basis under an order eliminating t.
    """
    if a.n_vars != b.n_vars:
        raise StructuralError("ideals live in different rings")
    n = a.n_vars
    if not a.generators or not b.generators:
        return Ideal(n, ())
    elim = block_order(1)
    t = Polynomial.variable(1, n + 1, elim)
    one_minus_t = Polynomial.constant(1, n + 1, elim) - t
    gens = [t * _lift(f, n, elim) for f in a.generators]
    gens += [one_minus_t * _lift(g, n, elim) for g in b.generators]
    gb = buchberger(Ideal(n + 1, tuple(gens)), elim, **guard)
    kept = []
    for g in gb.basis:
        if g.leading_monomial()[0] == 0:
            kept.append(Polynomial._raw(n, {e[1:]: c for e, c in g.terms}, order))
    return Ideal(n, tuple(kept))


def intersect_all(ideals: Sequence[Ideal], order: MonomialOrder = GREVLEX, **guard) -> Ideal:
    """Left fold of :func:`intersect`, interreducing after every step."""
    if not ideals:
        raise DomainError("need at least one ideal to intersect")
    acc = ideals[0]
    for nxt in ideals[1:]:
        acc = intersect(acc, nxt, order, **guard)
        acc = buchberger(acc, order, **guard).to_ideal()
    return acc
