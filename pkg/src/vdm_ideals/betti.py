"""Graded Betti numbers of ``R/I(n, k)`` from the Eagon-Northcott rank
formula, rendered as Macaulay2-style Betti tables.

    beta_{i,j} = p_count(k, i-1, j - k(k+1)/2) * C(n-1, k+i-1)   (i >= 1)

with ``beta_{0,0} = 1``. No resolution is computed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .combinatorics import binomial, p_count
from .errors import DomainError, InconsistencyError
from .idealgen import VandermondeSpec


@dataclass(frozen=True)
class BettiTable:
    n: int
    k: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries.get(ij, 0)

    def projective_dimension(self) -> int:
        return max(i for i, _ in self.entries)

    def regularity(self) -> int:
        return max(j - i for i, j in self.entries)

    def totals(self) -> list[int]:
        out = [0] * (self.projective_dimension() + 1)
        for (i, _), v in self.entries.items():
            out[i] += v
        return out

    def numerator(self) -> list[int]:
        """``sum (-1)^i beta_{i,j} t^j`` as a coefficient list."""
        top = max(j for _, j in self.entries)
        out = [0] * (top + 1)
        for (i, j), v in self.entries.items():
            out[j] += -v if i % 2 else v
        return out

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "entries": [
                {"i": i, "j": j, "beta": v} for (i, j), v in sorted(self.entries.items())
            ],
            "totals": self.totals(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "BettiTable":
        data = json.loads(text)
        entries = {(e["i"], e["j"]): e["beta"] for e in data["entries"]}
        return cls(data["n"], data["k"], entries)


def _spec(spec) -> VandermondeSpec:
    return spec if isinstance(spec, VandermondeSpec) else VandermondeSpec(*spec)


def betti_closed_form(spec) -> BettiTable:
    spec = _spec(spec)
    n, k = spec.n, spec.k
    shift = k * (k + 1) // 2
    entries = {(0, 0): 1}
    for i in range(1, n - k + 1):
        width = binomial(n - 1, k + i - 1)
        for j in range(shift + i - 1, shift + (i - 1) * k + 1):
            v = p_count(k, i - 1, j - shift) * width
            if v:
                entries[(i, j)] = v
    return BettiTable(n, k, entries)


def render_betti_table(t: BettiTable) -> str:
    """Text layout as printed by Macaulay2 (without the index header):
    one row per ``j - i``, zeros shown as ``.``, and a ``total:`` row."""
    pd = t.projective_dimension()
    reg = t.regularity()
    totals = t.totals()
    rows = [["total:"] + [str(v) for v in totals]]
    for r in range(reg + 1):
        rows.append([f"{r}:"] + [str(t[i, i + r]) if t[i, i + r] else "." for i in range(pd + 1)])
    widths = [max(len(row[c]) for row in rows) for c in range(pd + 2)]
    return "\n".join(
        " ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in rows
    )


def normalize_table_text(text: str) -> list[str]:
    """Collapse whitespace runs and drop blank lines, for comparisons."""
    return [" ".join(line.split()) for line in text.strip().splitlines() if line.strip()]


def check_betti_recurrences(n: int, k: int) -> bool:
    """Check, entry by entry,

        b1j(n,k) = b1,j-k(n-1,k-1) + b1j(n-1,k)
        bij(n,k) = bi,j-k(n-1,k-1) + bij(n-1,k) + bi-1,j-k(n-1,k)   (i >= 2)
    """
    if not (n - 1 > k >= 2):
        raise DomainError(f"recurrences need n - 1 > k >= 2, got n={n}, k={k}")
    a = betti_closed_form((n, k))
    b = betti_closed_form((n - 1, k - 1))
    c = betti_closed_form((n - 1, k))
    support = set(a.entries) | set(c.entries)
    support |= {(i, j + k) for i, j in b.entries}
    support |= {(i + 1, j + k) for i, j in c.entries}
    for i, j in support:
        if i < 1:
            continue
        rhs = b[i, j - k] + c[i, j]
        if i >= 2:
            rhs += c[i - 1, j - k]
        if a[i, j] != rhs:
            return False
    return True


def degree_from_betti(t: BettiTable) -> int:
    """Multiplicity from the alternating Betti sum: divide it by
    ``(1 - t)^(n - k)`` and evaluate at ``t = 1``."""
    q = t.numerator()
    for _ in range(t.n - t.k):
        if sum(q) != 0:
            raise InconsistencyError("alternating Betti sum is not divisible by (1 - t)^codim")
        out, acc = [], 0
        for a in q[:-1]:
            acc += a
            out.append(acc)
        q = out
    value = sum(q)
    if value <= 0:
        raise InconsistencyError(f"alternating Betti sum gives degree {value}")
    return value
