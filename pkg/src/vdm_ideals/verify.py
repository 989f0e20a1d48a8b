"""End-to-end checks of the structural claims about ``I(n, k)``.

Each checker returns a :class:`VerificationReport`. Work-budget overruns
in the Groebner engine are reported with status ``"resource"``, never as
a pass or a fail.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from time import perf_counter
from typing import Callable, Sequence

from .betti import betti_closed_form, check_betti_recurrences, degree_from_betti
from .combinatorics import enumerate_partitions, stirling2
from .errors import DomainError, ResourceLimitError
from .groebner import buchberger, ideal_equal, intersect_all
from .hilbert import HilbertSeries, degree, dimension, hilbert_series
from .idealgen import (
    Ideal,
    VandermondeSpec,
    collapse_to_partition,
    maximal_minors,
    partition_prime,
    reduced_matrix,
    vandermonde_ideal,
    vandermonde_matrix,
)
from .poly import determinant, evaluate

RADICAL_PRIME_LIMIT = 60
DEFAULT_SOURCE = "minors-M"


@dataclass
class VerificationReport:
    claim: str
    n: int
    k: int
    passed: bool
    witness: str
    elapsed_ms: float
    status: str = "pass"  # "pass", "fail" or "resource"

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "n": self.n,
            "k": self.k,
            "passed": self.passed,
            "status": self.status,
            "witness": self.witness,
            "ms": round(self.elapsed_ms, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        return cls(
            data["claim"], data["n"], data["k"], data["passed"], data["witness"],
            data["ms"], data.get("status", "pass" if data["passed"] else "fail"),
        )


def _run(claim: str, n: int, k: int, body: Callable[[], tuple[bool, str]]) -> VerificationReport:
    start = perf_counter()
    try:
        passed, witness = body()
        status = "pass" if passed else "fail"
    except ResourceLimitError as exc:
        passed, witness, status = False, f"resource guard tripped: {exc}", "resource"
    return VerificationReport(claim, n, k, passed, witness, (perf_counter() - start) * 1000, status)


@lru_cache(maxsize=None)
def vandermonde_generators(n: int, k: int, source: str = DEFAULT_SOURCE) -> Ideal:
    return vandermonde_ideal(VandermondeSpec(n, k), source)


@lru_cache(maxsize=None)
def hilbert_route(n: int, k: int, max_reductions: int | None = None, source: str = DEFAULT_SOURCE) -> HilbertSeries:
    """Groebner basis -> leading-term ideal -> Hilbert series of R/I(n,k)."""
    gb = buchberger(vandermonde_generators(n, k, source), max_reductions=max_reductions)
    return hilbert_series(gb)


def brute_force_partition_count(n: int, k: int) -> int:
    return sum(1 for _ in enumerate_partitions(n, k))


def verify_dimension_degree(n: int, k: int, *, max_reductions: int | None = None, source: str = DEFAULT_SOURCE) -> VerificationReport:
    VandermondeSpec(n, k)

    def body():
        h = hilbert_route(n, k, max_reductions, source)
        dim, deg = dimension(h), degree(h)
        s = stirling2(n, k)
        count = brute_force_partition_count(n, k)
        ok = dim == k and deg == s == count
        return ok, f"dim={dim} (expected {k}); deg={deg} (S({n},{k})={s}, enumerated {count})"

    return _run("dim-deg", n, k, body)


def verify_degree_recursion(n: int, k: int, *, max_reductions: int | None = None) -> VerificationReport:
    """deg(n,k) = deg(n-1,k-1) + k * deg(n-1,k), all three from Hilbert series."""
    if not (n - 1 > k >= 2):
        raise DomainError(f"degree recursion needs n - 1 > k >= 2, got n={n}, k={k}")

    def body():
        d = degree(hilbert_route(n, k, max_reductions))
        d1 = degree(hilbert_route(n - 1, k - 1, max_reductions))
        d2 = degree(hilbert_route(n - 1, k, max_reductions))
        ok = d == d1 + k * d2
        rel = "=" if ok else "!="
        return ok, f"{d} {rel} {d1} + {k}*{d2}"

    return _run("degree-recursion", n, k, body)


def verify_radical(n: int, k: int, *, max_reductions: int | None = None) -> VerificationReport:
    """I(n,k) equals the intersection of the partition primes, compared
    through reduced Groebner bases."""
    VandermondeSpec(n, k)
    count = stirling2(n, k)
    if count > RADICAL_PRIME_LIMIT:
        return VerificationReport(
            "radical", n, k, False,
            f"skipped: {count} primes exceeds the limit of {RADICAL_PRIME_LIMIT}", 0.0, "resource",
        )

    def body():
        primes = [partition_prime(p) for p in enumerate_partitions(n, k)]
        meet = intersect_all(primes, max_reductions=max_reductions)
        ok = ideal_equal(vandermonde_generators(n, k), meet, max_reductions=max_reductions)
        verdict = "equals" if ok else "differs from"
        return ok, f"I({n},{k}) {verdict} the intersection of {count} partition primes ({len(meet)} generators)"

    return _run("radical", n, k, body)


def verify_containment_fast(
    n: int, k: int, *, ideal: Ideal | None = None, max_reductions: int | None = None
) -> VerificationReport:
    """Reducedness certificate: every generator lies in every partition
    prime with k blocks, and deg R/I = S(n,k) = deg R/rad(I).

    Consistent with reducedness given Cohen-Macaulayness; not a proof of it.
    """
    VandermondeSpec(n, k)
    gens = ideal if ideal is not None else vandermonde_generators(n, k)

    def body():
        parts = enumerate_partitions(n, k)
        bad = 0
        for p in parts:
            for g in gens.generators:
                if collapse_to_partition(g, p):
                    bad += 1
        deg = degree(hilbert_route(n, k, max_reductions))
        s = stirling2(n, k)
        ok = bad == 0 and deg == s
        return ok, (
            f"{len(gens)} generators x {len(parts)} partitions: {bad} nonvanishing; "
            f"deg R/I={deg}, S({n},{k})={s}; "
            + ("consistent with R/I reduced" if ok else "certificate fails")
        )

    return _run("containment", n, k, body)


def matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix by exact Gaussian elimination."""
    a = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(a[0]) if a else 0
    while rank < len(a) and col < ncols:
        piv = next((r for r in range(rank, len(a)) if a[r][col]), None)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(rank + 1, len(a)):
            f = a[r][col] / a[rank][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
        col += 1
    return rank


def sample_points(n: int, k: int, trials: int, seed: int = 0) -> list[tuple[list[Fraction], bool]]:
    """Deterministic rational points alternating between at most k
    distinct coordinates (flag True) and at least k+1 (flag False)."""
    rng = random.Random(seed)
    out = []
    for t in range(trials):
        low = t % 2 == 0
        coords = [rng.randint(-3, 3) for _ in range(n)]
        if low:
            seen: list[int] = []
            for c in coords:
                if c not in seen:
                    seen.append(c)
            allowed = seen[: rng.randint(1, min(k, len(seen)))]
            coords = [c if c in allowed else rng.choice(allowed) for c in coords]
        else:
            fresh = 4
            while len(set(coords)) < k + 1:
                for idx in range(n):
                    if coords.count(coords[idx]) > 1:
                        coords[idx] = fresh
                        fresh += 1
                        break
        den = rng.randint(1, 3)
        shift = rng.randint(-2, 2)
        out.append(([Fraction(c + shift, den) for c in coords], low))
    return out


def verify_rank_locus(n: int, k: int, trials: int = 20, seed: int = 0) -> VerificationReport:
    """Generators vanish exactly at points with at most k distinct
    coordinates; checked against the exact rank of the numeric matrix."""
    spec = VandermondeSpec(n, k)
    gens = vandermonde_generators(n, k)

    def body():
        ok_low = ok_high = 0
        disagreements = []
        for point, low in sample_points(n, k, trials, seed):
            values = [evaluate(g, point) for g in gens.generators]
            vanish = not any(values)
            numeric = [[a**r for a in point] for r in range(spec.k + 1)]
            rank = matrix_rank(numeric)
            distinct = len(set(point))
            expected = distinct <= k
            if vanish == expected == (rank <= k) == low:
                if low:
                    ok_low += 1
                else:
                    ok_high += 1
            else:
                disagreements.append(f"{[str(a) for a in point]}: vanish={vanish}, rank={rank}")
        ok = not disagreements
        witness = f"{ok_low} points with <= {k} distinct values vanish; {ok_high} with >= {k + 1} do not"
        if disagreements:
            witness += "; disagreements: " + "; ".join(disagreements[:3])
        return ok, witness

    return _run("rank-locus", n, k, body)


def verify_betti_recurrence(n: int, k: int) -> VerificationReport:
    if not (n - 1 > k >= 2):
        raise DomainError(f"Betti recurrences need n - 1 > k >= 2, got n={n}, k={k}")

    def body():
        ok = check_betti_recurrences(n, k)
        return ok, f"both recurrences {'hold' if ok else 'fail'} against ({n - 1},{k - 1}) and ({n - 1},{k})"

    return _run("betti-recurrence", n, k, body)


def verify_betti_degree(n: int, k: int, *, max_reductions: int | None = None) -> VerificationReport:
    """Degree from the alternating Betti sum against the Hilbert route."""
    VandermondeSpec(n, k)

    def body():
        table = betti_closed_form((n, k))
        h = hilbert_route(n, k, max_reductions)
        b_deg, h_deg, s = degree_from_betti(table), degree(h), stirling2(n, k)
        same_numerator = list(h.numerator) == _trim(table.numerator())
        ok = b_deg == h_deg == s and same_numerator
        return ok, (
            f"betti={b_deg}, hilbert={h_deg}, S={s}; "
            f"numerators {'agree' if same_numerator else 'differ'}"
        )

    return _run("betti-degree", n, k, body)


def _trim(p: list[int]) -> list[int]:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def verify_height_pd(n: int, k: int, *, max_reductions: int | None = None, source: str = DEFAULT_SOURCE) -> VerificationReport:
    """Codimension n - dim equals the projective dimension of the
    closed-form table (and the standard determinantal value (n-1)-k+1)."""
    VandermondeSpec(n, k)

    def body():
        dim = dimension(hilbert_route(n, k, max_reductions, source))
        pd = betti_closed_form((n, k)).projective_dimension()
        height = n - dim
        ok = height == n - k == (n - 1) - k + 1 == pd
        return ok, f"height={height}, n-k={n - k}, pd={pd}"

    return _run("height-pd", n, k, body)


def verify_minor_identity(n: int, k: int, *, with_groebner: bool = False, max_reductions: int | None = None) -> VerificationReport:
    """k-minors of the reduced matrix against (k+1)-minors of the
    Vandermonde matrix on the columns {1} + S."""
    spec = VandermondeSpec(n, k)

    def body():
        m = vandermonde_matrix(spec)
        r = reduced_matrix(spec)
        bad = 0
        total = 0
        for cols in combinations(range(1, n), k):
            small = determinant(r.submatrix(range(k), [c - 1 for c in cols]))
            big = determinant(m.submatrix(range(k + 1), (0,) + cols))
            total += 1
            if small != big and small != -big:
                bad += 1
        witness = f"{total - bad}/{total} minor pairs agree up to sign"
        ok = bad == 0
        if with_groebner:
            same = ideal_equal(
                vandermonde_ideal(spec, "minors-M"), vandermonde_ideal(spec, "minors-N"),
                max_reductions=max_reductions,
            )
            ok = ok and same
            witness += "; reduced Groebner bases " + ("identical" if same else "differ")
        return ok, witness

    return _run("minor-identity", n, k, body)


CLAIMS = (
    "dim-deg",
    "degree-recursion",
    "radical",
    "containment",
    "rank-locus",
    "betti-recurrence",
    "betti-degree",
    "height-pd",
    "minor-identity",
)


def run_claim(claim: str, n: int, k: int, *, max_reductions: int | None = None, seed: int = 0, trials: int = 20) -> VerificationReport:
    guard = {"max_reductions": max_reductions}
    if claim == "dim-deg":
        return verify_dimension_degree(n, k, **guard)
    if claim == "degree-recursion":
        return verify_degree_recursion(n, k, **guard)
    if claim == "radical":
        return verify_radical(n, k, **guard)
    if claim == "containment":
        return verify_containment_fast(n, k, **guard)
    if claim == "rank-locus":
        return verify_rank_locus(n, k, trials, seed)
    if claim == "betti-recurrence":
        return verify_betti_recurrence(n, k)
    if claim == "betti-degree":
        return verify_betti_degree(n, k, **guard)
    if claim == "height-pd":
        return verify_height_pd(n, k, **guard)
    if claim == "minor-identity":
        return verify_minor_identity(n, k)
    raise DomainError(f"unknown claim {claim!r}")


def applicable_claims(n: int, k: int) -> list[str]:
    out = list(CLAIMS)
    if not (n - 1 > k >= 2):
        out.remove("degree-recursion")
        out.remove("betti-recurrence")
    if stirling2(n, k) > RADICAL_PRIME_LIMIT:
        out.remove("radical")
    return out
