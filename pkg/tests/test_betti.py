from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from vdm_ideals.acceptance import GOLDEN_TABLES
from vdm_ideals.betti import (
    BettiTable,
    betti_closed_form,
    check_betti_recurrences,
    degree_from_betti,
    normalize_table_text,
    render_betti_table,
)
from vdm_ideals.combinatorics import binomial, stirling2
from vdm_ideals.errors import DomainError, InconsistencyError
from vdm_ideals.groebner import buchberger
from vdm_ideals.hilbert import hilbert_series
from vdm_ideals.idealgen import vandermonde_ideal
from vdm_ideals.verify import matrix_rank

cells = st.integers(2, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1)))


def test_line_case():
    t = betti_closed_form((2, 1))
    assert t.entries == {(0, 0): 1, (1, 1): 1}
    assert render_betti_table(t).splitlines()[0].split() == ["total:", "1", "1"]


def test_first_syzygy_entries():
    t = betti_closed_form((5, 2))
    # C(4,2) generators in degree 3
    assert t[1, 3] == 6
    assert t.projective_dimension() == 3


@pytest.mark.parametrize("nk", sorted(GOLDEN_TABLES))
def test_golden_tables(nk):
    text = render_betti_table(betti_closed_form(nk))
    assert normalize_table_text(text) == normalize_table_text(GOLDEN_TABLES[nk])


def test_golden_table_degrees():
    assert [degree_from_betti(betti_closed_form(nk)) for nk in ((6, 2), (6, 3), (7, 3))] == [31, 90, 301]


@given(cells)
def test_shape_invariants(nk):
    n, k = nk
    t = betti_closed_form(nk)
    assert t.projective_dimension() == n - k
    assert t[0, 0] == 1
    assert t.totals()[1] == binomial(n - 1, k)
    assert all(v > 0 for v in t.entries.values())
    assert all(j >= k * (k + 1) // 2 + i - 1 for i, j in t.entries if i >= 1)


@given(cells)
def test_alternating_sum_gives_stirling_degree(nk):
    assert degree_from_betti(betti_closed_form(nk)) == stirling2(*nk)


@given(cells)
def test_alternating_total_is_zero(nk):
    totals = betti_closed_form(nk).totals()
    assert sum(v if i % 2 == 0 else -v for i, v in enumerate(totals)) == 0


@pytest.mark.parametrize("n,k", [(n, k) for n in range(3, 7) for k in range(1, n)])
def test_numerator_matches_groebner_route(n, k):
    # Hilbert numerators are determined by graded Betti numbers
    gb = buchberger(vandermonde_ideal((n, k), "minors-M"))
    h = hilbert_series(gb)
    q = betti_closed_form((n, k)).numerator()
    width = max(len(q), len(h.numerator))
    q += [0] * (width - len(q))
    assert q == list(h.numerator) + [0] * (width - len(h.numerator))


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (5, 3), (6, 3)])
def test_first_betti_number_is_generator_span(n, k):
    # the C(n, k+1) minors span a space of dimension beta_1
    gens = vandermonde_ideal((n, k), "minors-M").generators
    monos = sorted({e for g in gens for e in g.coefficients()})
    rows = [[Fraction(g.coefficient(m)) for m in monos] for g in gens]
    assert matrix_rank(rows) == betti_closed_form((n, k)).totals()[1]


def test_recurrences():
    for n in range(4, 11):
        for k in range(2, n - 1):
            assert check_betti_recurrences(n, k)
    with pytest.raises(DomainError):
        check_betti_recurrences(4, 3)
    with pytest.raises(DomainError):
        check_betti_recurrences(5, 1)


def test_inconsistent_table_is_rejected():
    t = betti_closed_form((5, 2))
    broken = dict(t.entries)
    broken[(1, 3)] += 1
    with pytest.raises(InconsistencyError):
        degree_from_betti(BettiTable(5, 2, broken))


@given(cells)
def test_json_round_trip(nk):
    t = betti_closed_form(nk)
    back = BettiTable.from_json(t.to_json())
    assert back == t
    assert back.totals() == t.totals()


def test_render_layout():
    lines = render_betti_table(betti_closed_form((6, 2))).splitlines()
    assert lines[0] == "total: 1 10 20 15 4"
    assert lines[3] == "    2: . 10 10  5 1"
    assert len(lines) == 1 + 6
