"""Vandermonde determinantal ideals: construction and machine checks of
dimension, degree, radicality and graded Betti numbers."""

from .betti import BettiTable, betti_closed_form, degree_from_betti, render_betti_table
from .combinatorics import SetPartition, binomial, enumerate_partitions, p_count, stirling2
from .errors import DomainError, InconsistencyError, ResourceLimitError, StructuralError
from .groebner import GroebnerBasis, buchberger, ideal_equal, ideal_membership, intersect, normal_form
from .hilbert import HilbertSeries, MonomialIdeal, degree, dimension, hilbert_numerator, hilbert_series
from .idealgen import Ideal, VandermondeSpec, vandermonde_ideal
from .poly import GREVLEX, GRLEX, LEX, MonomialOrder, Polynomial, parse_polynomial

__version__ = "0.1.0"
