import mpmath
import pytest

from circfoliation.asymptotics import (
    adaptive_gauss_legendre,
    check_asymptotics,
    growth_product,
    integrand_samples,
    mahler_from_integral,
    mahler_from_roots,
    roots_outside_unit,
)
from circfoliation.errors import HypothesisViolated
from circfoliation.model import parse_family
from circfoliation.roots import make_context, polynomial_roots
from circfoliation.polynomials import IntPolynomial

from conftest import gcd_one_builtins


def test_polynomial_roots_with_multiplicity():
    # (w - 2)^2 (w^2 + 1)
    p = IntPolynomial([4, -4, 5, -4, 1])
    roots = polynomial_roots(p, 128)
    assert len(roots) == 4
    ctx = make_context(128)
    assert sum(1 for r in roots if abs(r - 2) < ctx.mpf(10) ** -30) == 2
    assert sum(1 for r in roots if abs(abs(r.imag) - 1) < ctx.mpf(10) ** -30) == 2


def test_gauss_legendre_on_smooth_and_peaked():
    ctx = make_context(200)
    val = adaptive_gauss_legendre(ctx, ctx.exp, ctx.mpf(0), ctx.mpf(1), ctx.mpf(10) ** -40)
    assert abs(val - (ctx.e - 1)) < ctx.mpf(10) ** -40
    peaked = adaptive_gauss_legendre(ctx, lambda t: 1 / (1 + 10 ** 6 * (t - ctx.mpf(1) / 3) ** 2),
                                     ctx.mpf(0), ctx.mpf(1), ctx.mpf(10) ** -30)
    exact = (ctx.atan(1000 * (1 - ctx.mpf(1) / 3)) + ctx.atan(1000 * ctx.mpf(1) / 3)) / 1000
    assert abs(peaked - exact) < ctx.mpf(10) ** -28


def test_known_growth_constants():
    ctx = make_context(256)
    golden_sq = (3 + ctx.sqrt(5)) / 2
    tol = ctx.mpf(10) ** -60
    assert abs(mahler_from_roots(parse_family("circulant:1,2")) - golden_sq) < tol
    assert abs(mahler_from_roots(parse_family("gp:1")) - (2 + ctx.sqrt(3))) < tol


@pytest.mark.parametrize("name,spec", gcd_one_builtins())
def test_two_routes_to_mahler_measure(name, spec):
    a_roots = mahler_from_roots(spec)
    a_int = mahler_from_integral(spec)
    assert abs(a_roots - a_int) < 1e-18 * a_roots


def test_leading_coefficient_enters_mahler_measure():
    spec = parse_family("ygraph:[[1],[1],[1]]")
    ratio = mahler_from_roots(spec) / growth_product(spec)
    assert abs(ratio - 3) < 1e-40


@pytest.mark.parametrize("name,spec", gcd_one_builtins())
def test_roots_off_unit_circle(name, spec):
    assert all(abs(z) > 1 + mpmath.mpf(10) ** -30 for z in roots_outside_unit(spec))


@pytest.mark.parametrize("name,spec", gcd_one_builtins())
def test_integrand_non_negative(name, spec):
    assert min(integrand_samples(spec, count=2000)) >= -1e-20


def test_gcd_two_integrand_has_interior_zero():
    spec = parse_family("circulant:2")
    samples = integrand_samples(spec, count=8)
    assert abs(samples[4]) < 1e-30  # t = 1/2
    with pytest.raises(HypothesisViolated):
        roots_outside_unit(spec)
    with pytest.raises(HypothesisViolated):
        check_asymptotics(spec, [10])


def test_ratio_tends_to_one_without_tau_H():
    spec = parse_family("torus:3")  # tau(H) = 3
    report = check_asymptotics(spec, [20, 40, 80])
    assert report.tau_H == 3
    assert report.discrepancy_decreasing
    last = report.samples[-1]
    assert abs(last["ratio"] - 1) < 1e-6
    assert abs(last["ratio_with_tau_H"] - mpmath.mpf(1) / 3) < 1e-6


def test_report_json_is_stringly_typed():
    data = check_asymptotics(parse_family("circulant:1,2"), [10, 20]).to_json()
    assert data["A"].startswith("2.61803398874989")
    assert [s["n"] for s in data["samples"]] == [10, 20]
    assert all(isinstance(s["ratio"], str) for s in data["samples"])
