"""Sparse multivariate polynomials over Q.

A polynomial is an immutable map from exponent tuples to nonzero exact
rational coefficients; ``terms`` lists them strictly descending under the
polynomial's monomial order. Integral coefficients are held as ``int``,
the rest as :class:`fractions.Fraction`. Variables are named ``x1 .. xn``.

Every supported monomial order is a weight-matrix order: the key of an
exponent vector ``e`` is the tuple ``(w_1 . e, w_2 . e, ...)`` for fixed
nonnegative weight rows ``w_r``, compared lexicographically. Keys are
therefore additive under multiplication, which the Groebner engine
exploits.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate, permutations
from operator import add as add_, sub
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, StructuralError

Exponents = tuple[int, ...]


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order with ``x1 > x2 > ... > xn``.

    ``kind`` is one of ``"grevlex"``, ``"lex"``, ``"grlex"`` or ``"block"``.
    A block order compares the first ``block`` variables by grevlex, then
    breaks ties by grevlex on the remaining variables; it eliminates the
    first block.
    """

    kind: str
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "grlex", "block"):
            raise DomainError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.block < 1:
            raise DomainError("block order needs a positive first-block size")

    @property
    def name(self) -> str:
        return f"block({self.block})" if self.kind == "block" else self.kind

    def weight_rows(self, nvars: int) -> tuple[tuple[int, ...], ...]:
        return _weight_rows(self.kind, self.block, nvars)

    def key(self, exp: Sequence[int]) -> tuple[int, ...]:
        """Sort key: ``u < v`` in this order iff ``key(u) < key(v)``.

        Equal to the weight-row products ``(w_1 . e, w_2 . e, ...)``.
        """
        return _key_func(self.kind, self.block, len(exp))(tuple(exp))


def _grevlex_rows(n: int, offset: int, total: int) -> list[tuple[int, ...]]:
    # degree, then partial sums e_1 + .. + e_j for j = n-1 .. 1; a larger
    # partial sum means a smaller exponent further right
    rows = []
    for j in range(n, 0, -1):
        rows.append(tuple(1 if offset <= i < offset + j else 0 for i in range(total)))
    return rows


@lru_cache(maxsize=None)
def _weight_rows(kind: str, block: int, nvars: int) -> tuple[tuple[int, ...], ...]:
    if kind == "grevlex":
        return tuple(_grevlex_rows(nvars, 0, nvars))
    if kind == "lex":
        return tuple(tuple(1 if i == r else 0 for i in range(nvars)) for r in range(nvars))
    if kind == "grlex":
        lex = _weight_rows("lex", 0, nvars)
        return ((1,) * nvars,) + lex
    if block > nvars:
        raise DomainError(f"block size {block} exceeds {nvars} variables")
    rows = _grevlex_rows(block, 0, nvars) + _grevlex_rows(nvars - block, block, nvars)
    return tuple(rows)


def _grevlex_key(e: tuple[int, ...]) -> tuple[int, ...]:
    if not e:
        return ()
    sums = list(accumulate(e))
    return tuple(reversed(sums))


@lru_cache(maxsize=None)
def _key_func(kind: str, block: int, nvars: int):
    if kind == "grevlex":
        return _grevlex_key
    if kind == "lex":
        return lambda e: e
    if kind == "grlex":
        return lambda e: (sum(e),) + e
    if block > nvars:
        raise DomainError(f"block size {block} exceeds {nvars} variables")
    return lambda e: _grevlex_key(e[:block]) + _grevlex_key(e[block:])


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")
GRLEX = MonomialOrder("grlex")


def block_order(first: int) -> MonomialOrder:
    """Elimination order for the first ``first`` variables."""
    return MonomialOrder("block", first)


def order_from_name(name: str) -> MonomialOrder:
    name = name.strip().lower()
    if name in ("grevlex", "lex", "grlex"):
        return MonomialOrder(name)
    m = re.fullmatch(r"block\((\d+)\)", name)
    if m:
        return block_order(int(m.group(1)))
    raise DomainError(f"unknown monomial order {name!r}")


def _norm(c):
    if type(c) is int:
        return c
    return c.numerator if c.denominator == 1 else c


def _as_fraction(c):
    """Coerce to an exact rational (``int`` when integral)."""
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return int(c)
    if isinstance(c, (Fraction, Rational)):
        return _norm(Fraction(c))
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def _clean(d: dict) -> dict:
    return {e: _norm(c) for e, c in d.items() if c}


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables over Q."""

    __slots__ = ("nvars", "order", "_terms", "_dict", "_hash")

    def __init__(self, nvars: int, terms=(), order: MonomialOrder = GREVLEX):
        if nvars < 0:
            raise StructuralError("variable count must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponents, Fraction] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise StructuralError(f"monomial {exp} does not have {nvars} exponents")
            if any(e < 0 for e in exp):
                raise DomainError(f"negative exponent in {exp}")
            acc[exp] = acc.get(exp, 0) + _as_fraction(c)
        self._init(nvars, _clean(acc), order)

    def _init(self, nvars, d, order):
        self.nvars = nvars
        self.order = order
        self._terms = None
        self._dict = d
        self._hash = None

    @property
    def terms(self) -> tuple[tuple[Exponents, Fraction], ...]:
        """``(exponents, coefficient)`` pairs, strictly descending."""
        if self._terms is None:
            key = _key_func(self.order.kind, self.order.block, self.nvars)
            self._terms = tuple(sorted(self._dict.items(), key=lambda t: key(t[0]), reverse=True))
        return self._terms

    @classmethod
    def _raw(cls, nvars: int, d: dict, order: MonomialOrder) -> "Polynomial":
        # d must already hold nonzero normalized coefficients keyed by valid tuples
        p = cls.__new__(cls)
        p._init(nvars, d, order)
        return p

    # constructors

    @classmethod
    def zero(cls, nvars: int, order: MonomialOrder = GREVLEX) -> "Polynomial":
        return cls._raw(nvars, {}, order)

    @classmethod
    def constant(cls, c, nvars: int, order: MonomialOrder = GREVLEX) -> "Polynomial":
        c = _as_fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {}, order)

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1, order: MonomialOrder = GREVLEX) -> "Polynomial":
        return cls(len(exp), [(tuple(exp), c)], order)

    @classmethod
    def variable(cls, i: int, nvars: int, order: MonomialOrder = GREVLEX) -> "Polynomial":
        """The variable ``x_i`` (1-based)."""
        if not 1 <= i <= nvars:
            raise StructuralError(f"x{i} is not among x1..x{nvars}")
        exp = [0] * nvars
        exp[i - 1] = 1
        return cls._raw(nvars, {tuple(exp): 1}, order)

    # basic queries

    def __bool__(self):
        return bool(self._dict)

    def is_zero(self) -> bool:
        return not self._dict

    def __len__(self):
        return len(self.terms)

    def coefficients(self) -> dict[Exponents, Fraction]:
        return dict(self._dict)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._dict.get(tuple(exp), 0)

    def total_degree(self) -> int:
        if not self._dict:
            raise DomainError("the zero polynomial has no degree")
        return max(sum(e) for e in self._dict)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._dict}) <= 1

    def with_order(self, order: MonomialOrder) -> "Polynomial":
        if order == self.order:
            return self
        return Polynomial._raw(self.nvars, self._dict, order)

    def leading_term(self) -> tuple[Fraction, Exponents]:
        if not self.terms:
            raise DomainError("the zero polynomial has no leading term")
        exp, c = self.terms[0]
        return c, exp

    def leading_monomial(self) -> Exponents:
        return self.leading_term()[1]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[0]

    def monic(self) -> "Polynomial":
        if not self._dict:
            return self
        return self.scale(Fraction(1) / self.leading_coefficient())

    def primitive(self) -> "Polynomial":
        """Integer-coefficient multiple with content 1 and positive leading
        coefficient."""
        if not self._dict:
            return self
        from math import gcd, lcm

        den = lcm(*(c.denominator for c in self._dict.values()))
        nums = [int(c * den) for c in self._dict.values()]
        g = gcd(*nums)
        if self.leading_coefficient() < 0:
            g = -g
        return self.scale(Fraction(den, g))

    # arithmetic

    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise StructuralError(
                f"variable count mismatch: {self.nvars} vs {other.nvars}"
            )

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return Polynomial.constant(other, self.nvars, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self._dict)
        for e, c in other._dict.items():
            v = d.get(e, 0) + c
            if v:
                d[e] = _norm(v)
            else:
                d.pop(e, None)
        return Polynomial._raw(self.nvars, d, self.order)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._dict.items()}, self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return Polynomial.zero(self.nvars, self.order)
        return Polynomial._raw(self.nvars, _clean({e: v * c for e, v in self._dict.items()}), self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        d: dict[Exponents, Fraction] = {}
        get = d.get
        right = list(other._dict.items())
        for e1, c1 in self._dict.items():
            for e2, c2 in right:
                e = tuple(map(add_, e1, e2))
                d[e] = get(e, 0) + c1 * c2
        return Polynomial._raw(self.nvars, _clean(d), self.order)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative powers are not polynomials")
        result = Polynomial.constant(1, self.nvars, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._dict == other._dict
        if isinstance(other, (int, Fraction)):
            return self._dict == ({(0,) * self.nvars: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._dict.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, nvars={self.nvars})"


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    return f * g


def scale(f: Polynomial, c) -> Polynomial:
    return f.scale(c)


def leading_term(f: Polynomial, order: MonomialOrder | None = None) -> tuple[Fraction, Exponents]:
    """Maximal term of ``f`` under ``order`` (default: the polynomial's own)."""
    if order is not None:
        f = f.with_order(order)
    return f.leading_term()


def evaluate(f: Polynomial, point: Sequence) -> Fraction:
    if len(point) != f.nvars:
        raise StructuralError(f"point has {len(point)} coordinates, polynomial has {f.nvars} variables")
    pt = [_as_fraction(a) for a in point]
    total = Fraction(0)
    for exp, c in f._dict.items():
        v = Fraction(c)
        for a, e in zip(pt, exp):
            if e:
                v *= a**e
        total += v
    return total


def substitute(f: Polynomial, images: Mapping[int, Polynomial]) -> Polynomial:
    """Replace ``x_i`` by ``images[i]`` (1-based); other variables stay.

    Images must live in the same ring as ``f``.
    """
    n = f.nvars
    for i, g in images.items():
        if not 1 <= i <= n:
            raise StructuralError(f"x{i} is not among x1..x{n}")
        f._check(g)
    # renaming variables to variables stays at the exponent level
    rename = {}
    for i, g in images.items():
        if len(g.terms) == 1 and g.terms[0][1] == 1 and sum(g.terms[0][0]) == 1:
            rename[i - 1] = g.terms[0][0].index(1)
    if len(rename) == len(images):
        d: dict[Exponents, Fraction] = {}
        for exp, c in f.terms:
            new = list(exp)
            for src, dst in rename.items():
                if exp[src]:
                    new[src] -= exp[src]
                    new[dst] += exp[src]
            key = tuple(new)
            d[key] = d.get(key, 0) + c
        return Polynomial._raw(n, _clean(d), f.order)
    result = Polynomial.zero(n, f.order)
    for exp, c in f.terms:
        term = Polynomial.constant(c, n, f.order)
        keep = [0] * n
        for idx, e in enumerate(exp):
            if not e:
                continue
            if idx + 1 in images:
                term = term * images[idx + 1] ** e
            else:
                keep[idx] = e
        result = result + term * Polynomial.monomial(keep, 1, f.order)
    return result


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient ``f / g``; raises :class:`DomainError` if g does not divide f."""
    f._check(g)
    if not g:
        raise DomainError("division by the zero polynomial")
    order = f.order
    g = g.with_order(order)
    gc, gm = g.leading_term()
    key = order.key
    rest = dict(f._dict)
    # max-heap on order keys; stale entries are skipped on pop
    heap = [(tuple(-v for v in key(e)), e) for e in rest]
    heapq.heapify(heap)
    q: dict[Exponents, Fraction] = {}
    tail = g.terms[1:]
    while heap:
        _, m = heapq.heappop(heap)
        c = rest.pop(m, None)
        if c is None:
            continue
        shift = tuple(map(sub, m, gm))
        if min(shift) < 0:
            raise DomainError("inexact polynomial division")
        qc = _norm(Fraction(c) / gc)
        q[shift] = qc
        for e, v in tail:
            e2 = tuple(map(add_, e, shift))
            w = rest.get(e2)
            if w is None:
                rest[e2] = -qc * v
                heapq.heappush(heap, (tuple(-x for x in key(e2)), e2))
            else:
                w -= qc * v
                if w:
                    rest[e2] = w
                else:
                    del rest[e2]
    return Polynomial._raw(f.nvars, q, order)


# text syntax

_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR_RE = re.compile(r"x(\d+)(?:\^(\d+))?$")
_COEF_RE = re.compile(r"(\d+(?:/\d+)?)\s*\*?\s*(.*)$")


def format_polynomial(f: Polynomial) -> str:
    """Render as e.g. ``-3/2*x1^2*x3 + x2``; ``parse_polynomial`` inverts it."""
    if not f.terms:
        return "0"
    parts = []
    for idx, (exp, c) in enumerate(f.terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        factors = [
            f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
            for i, e in enumerate(exp)
            if e
        ]
        if not factors:
            body = str(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = f"{a}*" + "*".join(factors)
        if idx == 0:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def parse_polynomial(text: str, nvars: int | None = None, order: MonomialOrder = GREVLEX) -> Polynomial:
    """Parse a sum of terms such as ``-3/2*x1^2*x3 + x2`` or ``2x1x2``.

    ``nvars`` defaults to the largest variable index that appears.
    """
    s = text.strip()
    if not s:
        raise DomainError("empty polynomial text")
    pos = 0
    raw_terms: list[tuple[Fraction, dict[int, int]]] = []
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or (pos > 0 and not m.group(1)):
            raise DomainError(f"cannot parse polynomial near {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2).strip()
        pos = m.end()
        coef = Fraction(1)
        cm = _COEF_RE.match(body)
        if cm:
            coef = Fraction(cm.group(1))
            body = cm.group(2).strip()
        powers: dict[int, int] = {}
        if body:
            for factor in re.split(r"\s*\*\s*|(?<=\d)\s*(?=x)|\s+", body):
                if not factor:
                    continue
                fm = _FACTOR_RE.match(factor)
                if not fm:
                    raise DomainError(f"bad factor {factor!r} in {text!r}")
                var = int(fm.group(1))
                if var < 1:
                    raise DomainError(f"variables start at x1, got x{var}")
                powers[var] = powers.get(var, 0) + int(fm.group(2) or 1)
        raw_terms.append((sign * coef, powers))
    top = max((v for _, p in raw_terms for v in p), default=0)
    if nvars is None:
        nvars = max(top, 1)
    elif top > nvars:
        raise StructuralError(f"x{top} used but only {nvars} variables declared")
    items = []
    for c, p in raw_terms:
        exp = [0] * nvars
        for v, e in p.items():
            exp[v - 1] = e
        items.append((tuple(exp), c))
    return Polynomial(nvars, items, order)


# matrices


@dataclass(frozen=True)
class PolyMatrix:
    rows: int
    cols: int
    entries: tuple[Polynomial, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise StructuralError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise StructuralError("entry count does not match dimensions")
        if len({p.nvars for p in self.entries}) > 1:
            raise StructuralError("matrix entries live in different rings")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Polynomial]]) -> "PolyMatrix":
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise StructuralError("ragged matrix rows")
        return cls(len(rows), widths.pop(), tuple(p for r in rows for p in r))

    @property
    def nvars(self) -> int:
        return self.entries[0].nvars

    def __getitem__(self, rc: tuple[int, int]) -> Polynomial:
        r, c = rc
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> list[Polynomial]:
        return list(self.entries[r * self.cols:(r + 1) * self.cols])

    def to_rows(self) -> list[list[Polynomial]]:
        return [self.row(r) for r in range(self.rows)]

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> "PolyMatrix":
        row_idx, col_idx = list(row_idx), list(col_idx)
        return PolyMatrix.from_rows([[self[r, c] for c in col_idx] for r in row_idx])

    def swap_rows(self, a: int, b: int) -> "PolyMatrix":
        rows = self.to_rows()
        rows[a], rows[b] = rows[b], rows[a]
        return PolyMatrix.from_rows(rows)


def _cofactor_det(rows: list[list[Polynomial]]) -> Polynomial:
    size = len(rows)
    if size == 1:
        return rows[0][0]
    if size == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = Polynomial.zero(rows[0][0].nvars, rows[0][0].order)
    for c in range(size):
        a = rows[0][c]
        if not a:
            continue
        minor = [r[:c] + r[c + 1:] for r in rows[1:]]
        term = a * _cofactor_det(minor)
        total = total + term if c % 2 == 0 else total - term
    return total


def _bareiss_det(rows: list[list[Polynomial]]) -> Polynomial:
    a = [list(r) for r in rows]
    size = len(a)
    sign = 1
    prev = Polynomial.constant(1, a[0][0].nvars, a[0][0].order)
    for k in range(size - 1):
        if not a[k][k]:
            swap = next((r for r in range(k + 1, size) if a[r][k]), None)
            if swap is None:
                return Polynomial.zero(prev.nvars, prev.order)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = divide_exact(num, prev)
        prev = a[k][k]
    det = a[-1][-1]
    return det if sign == 1 else -det


def determinant(m: PolyMatrix) -> Polynomial:
    """Exact determinant: cofactor expansion up to 4x4, fraction-free
    (Bareiss) elimination beyond."""
    if m.rows != m.cols:
        raise StructuralError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    rows = m.to_rows()
    if m.rows <= 4:
        return _cofactor_det(rows)
    return _bareiss_det(rows)


def leibniz_determinant(m: PolyMatrix) -> Polynomial:
    """Permutation-sum determinant; slow, kept as an independent check."""
    if m.rows != m.cols:
        raise StructuralError("determinant of a non-square matrix")
    size = m.rows
    total = Polynomial.zero(m.nvars, m.entries[0].order)
    for perm in permutations(range(size)):
        inversions = sum(1 for i in range(size) for j in range(i + 1, size) if perm[i] > perm[j])
        term = Polynomial.constant(-1 if inversions % 2 else 1, m.nvars, total.order)
        for r, c in enumerate(perm):
            term = term * m[r, c]
            if not term:
                break
        total = total + term
    return total
