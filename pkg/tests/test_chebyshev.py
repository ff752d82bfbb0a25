import random

import pytest
import sympy
from hypothesis import given, settings

from circfoliation.chebyshev import (
    build_P,
    build_Q,
    check_lemma1,
    det_cofactor,
    empty_fiber_minor,
    f_n,
    q_sum_squares,
    shifted_g,
)
from circfoliation.counting import resultant
from circfoliation.errors import NotDivisible
from circfoliation.kirchhoff import tau_oracle
from circfoliation.model import BaseGraph, make_family, parse_family
from circfoliation.polynomials import IntPolynomial, substitute_joukowski

from conftest import BUILTIN_FAMILIES, random_spec, specs
from oracles import det_permutation

W = sympy.Symbol("w")


def sym(p: IntPolynomial):
    return sympy.Poly(list(reversed(p.coeffs)), W)


def q_by_sympy(spec):
    """Q(w) as a sympy determinant, independent of det_cofactor."""
    d = spec.base.degrees
    rows = []
    for i in range(spec.m):
        row = []
        for j in range(spec.m):
            if i == j:
                f = spec.fibers[i]
                row.append(2 * f.k + d[i] - sum(2 * sympy.chebyshevt(s, W) for s in f.jumps))
            else:
                row.append(-spec.base.a[i][j])
        rows.append(row)
    return sympy.Poly(sympy.expand(sympy.Matrix(rows).det(method="berkowitz")), W)


def test_det_cofactor_integers():
    rows = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
    assert det_cofactor(rows, 0, 1) == det_permutation(rows) == 4


@pytest.mark.parametrize("name", BUILTIN_FAMILIES)
def test_Q_matches_sympy_determinant(name):
    spec = parse_family(name)
    assert sym(build_Q(spec)) == q_by_sympy(spec)


@given(specs(max_m=4, allow_empty=True))
@settings(max_examples=40, deadline=None)
def test_Q_random_matches_sympy(spec):
    assert sym(build_Q(spec)) == q_by_sympy(spec)


@given(specs(max_m=5, allow_empty=True))
@settings(max_examples=60, deadline=None)
def test_P_is_Q_after_joukowski(spec):
    assert build_P(spec) == substitute_joukowski(build_Q(spec))
    assert build_P(spec).is_symmetric()


@pytest.mark.parametrize("n", range(1, 51))
def test_f_n_at_zero(n):
    f = f_n(n)
    assert f(0) == n * n
    assert f.degree == n - 1 and f.lead == 1


def test_f_5_resultant_example():
    # Res(f_5, zeta + 5) = f_5(-5) up to sign
    assert abs(resultant(f_n(5), IntPolynomial([5, 1]))) == 25


@given(specs(max_m=5, allow_empty=True))
@settings(max_examples=80, deadline=None)
def test_g_at_zero_is_q_times_tau_H(spec):
    g = shifted_g(build_Q(spec))
    assert abs(g(0)) == q_sum_squares(spec) * tau_oracle(spec.base.as_multigraph())
    assert g.lead == empty_fiber_minor(spec)


def test_g_examples():
    assert shifted_g(build_Q(parse_family("circulant:1,2"))) == IntPolynomial([5, 1])
    # Q = 4(w - 1)(w - 2) for the prism
    assert shifted_g(build_Q(parse_family("gp:1"))) == IntPolynomial([-2, 1])


def test_shifted_g_rejects_q_without_root_at_one():
    with pytest.raises(NotDivisible):
        shifted_g(IntPolynomial([1, 1]))
    with pytest.raises(NotDivisible):
        shifted_g(IntPolynomial([4, -8, 4]))


def test_torus_three_expansion():
    Q = build_Q(parse_family("torus:3"))
    assert Q == IntPolynomial([50, -90, 48, -8])
    assert Q.derivative()(1) == -18


def test_circulant_Q():
    assert build_Q(parse_family("circulant:1")) == IntPolynomial([2, -2])
    assert build_Q(parse_family("circulant:1,2")) == IntPolynomial([6, -2, -4])


def petersen_base():
    edges = [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return BaseGraph.from_edges(10, edges)


REGULAR_BASES = {
    "C3": BaseGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)]),
    "C4": BaseGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
    "K4": BaseGraph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)]),
    "Petersen": petersen_base(),
}


@pytest.mark.parametrize("name", REGULAR_BASES)
def test_product_Q_is_shifted_characteristic_polynomial(name):
    base = REGULAR_BASES[name]
    d = base.degrees[0]
    spec = make_family("product", [base])
    x = sympy.Symbol("x")
    chi = sympy.Matrix(base.a).charpoly(x).as_expr()
    expected = sympy.Poly(sympy.expand(chi.subs(x, 2 + d - 2 * W)), W)
    assert sym(build_Q(spec)) == expected


@pytest.mark.parametrize("name", BUILTIN_FAMILIES)
def test_q_identities_builtins(name):
    report = check_lemma1(parse_family(name))
    assert report.ok, report.failures


def test_uniform_lead_fails_only_with_empty_fibers():
    for name in BUILTIN_FAMILIES:
        spec = parse_family(name)
        has_empty = any(f.k == 0 for f in spec.fibers)
        assert check_lemma1(spec).uniform_lead_holds == (not has_empty), name
    assert build_Q(parse_family("ygraph:[[1],[1],[1]]")).lead == -24


def test_q_identities_random_specs():
    rng = random.Random(2024)
    for _ in range(200):
        spec = random_spec(rng, allow_empty=True)
        report = check_lemma1(spec)
        assert report.ok, (spec.to_json(), report.failures)
