"""Exact and asymptotic spanning-tree counts for circulant foliations over a graph."""

from .arithmetic import TauDecomposition, decompose_tau, q_minus_one, square_free_part, verify_theorem2
from .asymptotics import (
    AsymptoticReport,
    check_asymptotics,
    mahler_from_integral,
    mahler_from_roots,
    roots_outside_unit,
)
from .chebyshev import build_P, build_Q, check_lemma1, f_n, q_sum_squares, shifted_g
from .counting import TauResult, resultant, tau_exact, tau_spectral_eps, tau_spectral_roots
from .kirchhoff import IntMatrix, det_fraction_free, laplacian, tau_oracle
from .model import (
    BaseGraph,
    FiberSpec,
    FoliationSpec,
    Multigraph,
    expand_cover,
    is_cover_connected,
    make_family,
    parse_family,
    validate,
)
from .polynomials import IntPolynomial, LaurentPolynomial, cheb_2T

__version__ = "0.1.0"
