import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from vdm_ideals.combinatorics import SetPartition, enumerate_partitions
from vdm_ideals.errors import DomainError, ResourceLimitError, StructuralError
from vdm_ideals.groebner import (
    buchberger,
    default_max_reductions,
    ideal_equal,
    ideal_membership,
    intersect,
    intersect_all,
    is_groebner_basis,
    is_reduced_basis,
    normal_form,
    s_polynomial,
)
from vdm_ideals.idealgen import Ideal, partition_prime, vandermonde_ideal
from vdm_ideals.poly import GREVLEX, GRLEX, LEX, Polynomial, format_polynomial, parse_polynomial


def P(text, n):
    return parse_polynomial(text, n)


def ideal(n, *texts):
    return Ideal(n, tuple(P(t, n) for t in texts))


def to_sympy(f, syms):
    return sympy.sympify(format_polynomial(f).replace("^", "**"), locals={str(s): s for s in syms})


def sympy_reduced_basis(gens, n, order_name):
    syms = sympy.symbols(f"x1:{n + 1}")
    gb = sympy.groebner([to_sympy(g, syms) for g in gens], *syms, order=order_name)
    return {P(str(g.as_expr()).replace("**", "^"), n).monic() for g in gb.exprs}


def test_normal_form_examples():
    lex_basis = [P("x2 - x1", 2).with_order(LEX)]
    # under lex x1 > x2, so x1 is rewritten as x2
    assert normal_form(P("x2^2", 2), lex_basis, LEX) == P("x2^2", 2)
    assert normal_form(P("x1^2", 2), lex_basis, LEX) == P("x2^2", 2)
    assert normal_form(P("x1*x2 - x2^2", 2), lex_basis, LEX).is_zero()
    assert normal_form(P("x1 + 1", 1), [P("x1", 1)]) == Polynomial.constant(1, 1)


def test_normal_form_rejects_zero_divisor():
    with pytest.raises(DomainError):
        normal_form(P("x1", 1), [Polynomial.zero(1)])


def test_small_bases():
    gb = buchberger(ideal(3, "x1 - x2", "x2 - x3"), LEX)
    assert set(gb.basis) == {P("x1 - x3", 3), P("x2 - x3", 3)}
    gb = buchberger(ideal(2, "x1^2", "x1*x2 - 1"))
    assert gb.basis == (Polynomial.constant(1, 2),)
    gb = buchberger(ideal(2, "x1^2 - x2", "x1^3 - x1"), LEX)
    assert set(gb.basis) == set(sympy_reduced_basis(
        [P("x1^2 - x2", 2), P("x1^3 - x1", 2)], 2, "lex"))


def test_s_polynomial_example():
    s = s_polynomial(P("x1^2 - x2", 2), P("x1*x2 - 1", 2), LEX)
    assert s == P("x1 - x2^2", 2) or s == -P("x1 - x2^2", 2)


@pytest.mark.parametrize("n,k", [(3, 1), (3, 2), (4, 2), (4, 3), (5, 2)])
def test_vandermonde_basis_is_reduced_and_groebner(n, k):
    gb = buchberger(vandermonde_ideal((n, k), "minors-N"))
    assert is_groebner_basis(gb.basis)
    assert is_reduced_basis(gb.basis)
    lms = gb.leading_monomials()
    assert lms == sorted(lms, key=GREVLEX.key)


@pytest.mark.parametrize("n,k", [(3, 2), (4, 2), (4, 3)])
@pytest.mark.parametrize("order_name,order", [("grevlex", GREVLEX), ("lex", LEX), ("grlex", GRLEX)])
def test_agrees_with_sympy(n, k, order_name, order):
    gens = vandermonde_ideal((n, k), "minors-M", order).generators
    ours = set(buchberger(Ideal(n, gens), order).basis)
    assert ours == sympy_reduced_basis(gens, n, order_name)


@given(st.integers(0, 10**6))
@settings(max_examples=20, deadline=None)
def test_reduced_basis_is_canonical_under_recombination(seed):
    rng = random.Random(seed)
    n = 4
    gens = list(vandermonde_ideal((n, 2), "minors-M").generators)
    ref = buchberger(Ideal(n, tuple(gens))).basis
    # unit upper-triangular recombination with polynomial multipliers
    mixed = []
    for i, g in enumerate(gens):
        h = g
        for j in range(i + 1, len(gens)):
            mult = Polynomial.monomial(tuple(rng.randint(0, 1) for _ in range(n)), rng.randint(-3, 3))
            h = h + mult * gens[j]
        mixed.append(h.scale(rng.choice([1, -2, 3])))
    rng.shuffle(mixed)
    assert buchberger(Ideal(n, tuple(mixed))).basis == ref


def test_random_members_and_non_members():
    rng = random.Random(7)
    n = 4
    I = vandermonde_ideal((n, 2), "minors-M")
    gb = buchberger(I)
    for _ in range(20):
        f = Polynomial.zero(n)
        for g in I:
            mult = Polynomial(n, {tuple(rng.randint(0, 2) for _ in range(n)): rng.randint(-4, 4) for _ in range(2)})
            f = f + mult * g
        assert gb.contains(f)
        # generators have degree 3, so a nonzero degree <= 2 part cannot be absorbed
        low = P(rng.choice(["x1", "x2*x3 - 2", "x4^2 + x1*x2", "5"]), n)
        assert not gb.contains(f + low)


def test_membership_and_equality_helpers():
    I = ideal(2, "x1 - x2")
    assert ideal_membership(P("x1^3 - x2^3", 2), I)
    assert not ideal_membership(P("x1^3 + x2^3", 2), I)
    assert ideal_equal(vandermonde_ideal((5, 2), "minors-M"), vandermonde_ideal((5, 2), "minors-N"))
    assert not ideal_equal(vandermonde_ideal((4, 2), "minors-M"), vandermonde_ideal((4, 1), "minors-M"))
    with pytest.raises(StructuralError):
        ideal_membership(P("x1", 1), I)


def test_intersect_examples():
    # (x1) meet (x2) = (x1*x2)
    got = buchberger(intersect(ideal(2, "x1"), ideal(2, "x2")))
    assert got.basis == (P("x1*x2", 2),)
    # (x1^2, x2) meet (x1, x2^2) = (x1^2, x1*x2, x2^2)
    got = buchberger(intersect(ideal(2, "x1^2", "x2"), ideal(2, "x1", "x2^2")))
    assert set(got.basis) == {P("x1^2", 2), P("x1*x2", 2), P("x2^2", 2)}


def test_intersection_of_partition_primes_n3():
    # the three pairwise diagonals meet in the (3,2) Vandermonde ideal
    primes = [partition_prime(p) for p in enumerate_partitions(3, 2)]
    meet = buchberger(intersect_all(primes))
    assert meet.basis == buchberger(vandermonde_ideal((3, 2))).basis


@given(st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_intersection_properties(seed):
    rng = random.Random(seed)
    parts = enumerate_partitions(4, 2) + enumerate_partitions(4, 3)
    a, b = (partition_prime(p) for p in rng.sample(parts, 2))
    meet = intersect(a, b)
    ga, gb_ = buchberger(a), buchberger(b)
    for g in meet:
        assert ga.contains(g) and gb_.contains(g)
    # products land in the intersection
    gm = buchberger(meet)
    for f in a:
        for g in b:
            assert gm.contains(f * g)
    assert ideal_equal(meet, intersect(b, a))


def test_intersect_all_requires_input():
    with pytest.raises(DomainError):
        intersect_all([])


def test_resource_guard():
    with pytest.raises(ResourceLimitError) as info:
        buchberger(vandermonde_ideal((5, 2)), max_reductions=2)
    assert info.value.reductions >= 2


def test_default_budget_reads_environment(monkeypatch):
    monkeypatch.setenv("VDM_MAX_REDUCTIONS", "17")
    assert default_max_reductions() == 17
    monkeypatch.delenv("VDM_MAX_REDUCTIONS")
    assert default_max_reductions() == 10**6


def test_fractional_coefficients_survive():
    gb = buchberger(Ideal(2, (P("1/2*x1 - 2/3*x2", 2),)))
    assert gb.basis == (P("x1 - 4/3*x2", 2),)
    assert normal_form(P("x1", 2), gb.basis) == P("4/3*x2", 2)


def test_partition_prime_basis_is_its_generators():
    p = SetPartition(5, ((1, 4), (2, 3, 5)))
    gb = buchberger(partition_prime(p))
    assert len(gb) == 3
    assert all(g.total_degree() == 1 for g in gb)
