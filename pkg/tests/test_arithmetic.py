import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from circfoliation.arithmetic import decompose_tau, q_minus_one, square_free_part, verify_theorem2
from circfoliation.chebyshev import build_Q
from circfoliation.errors import FactorizationLimit
from circfoliation.model import parse_family

from conftest import BUILTIN_FAMILIES, random_spec


@given(st.integers(min_value=1, max_value=10 ** 9))
def test_square_free_part_reconstructs(v):
    p, r = square_free_part(v)
    assert p * r * r == v
    assert all(p % (d * d) for d in range(2, 1000) if d * d <= p)


def test_square_free_part_examples():
    assert square_free_part(24) == (6, 2)
    assert square_free_part(1) == (1, 1)
    assert square_free_part(72) == (2, 6)
    big_prime = 1_000_000_007
    assert square_free_part(4 * big_prime) == (big_prime, 2)
    assert square_free_part(big_prime ** 2) == (1, big_prime)


def test_square_free_part_reports_unfactored_cofactor():
    with pytest.raises(FactorizationLimit):
        square_free_part(1_000_003 * 1_000_033, bound=1000)
    with pytest.raises(ValueError):
        square_free_part(0)


def test_prism_decomposition():
    spec = parse_family("gp:1")
    d3 = decompose_tau(spec, 3)
    d4 = decompose_tau(spec, 4)
    assert (d3.p, d3.a) == (1, 5)
    assert (d4.p, d4.a) == (6, 4)
    assert q_minus_one(spec) == 24


def test_fibonacci_a_sequence():
    report = verify_theorem2(parse_family("circulant:1,2"), 3, 8)
    assert report.ok
    assert report.a_sequence == [2, 3, 5, 8, 13, 21]


@pytest.mark.parametrize("name", BUILTIN_FAMILIES)
def test_square_decomposition_over_families(name):
    report = verify_theorem2(parse_family(name), 3, 25)
    assert report.ok, report.failures
    for row in report.rows:
        if row.n % 2:
            assert row.p == 1


def test_disconnected_n_is_skipped():
    report = verify_theorem2(parse_family("circulant:2,3"), 3, 8)
    assert report.ok
    report = verify_theorem2(parse_family("circulant:2"), 3, 8)
    assert [n for n, _ in report.skipped] == [4, 6, 8]


def test_csv_shape():
    text = verify_theorem2(parse_family("gp:1"), 3, 5).to_csv()
    lines = text.splitlines()
    assert lines[0] == "n,parity,tau,p,a,ok"
    assert lines[1] == "3,odd,75,1,5,true"
    assert lines[2] == "4,even,384,6,4,true"


def test_q_minus_one_positive_and_both_routes_agree():
    rng = random.Random(7)
    for _ in range(200):
        spec = random_spec(rng, allow_empty=True)
        value = q_minus_one(spec)  # raises if matrix and polynomial routes differ
        assert value == build_Q(spec)(-1)
        has_odd = any(j % 2 for j in spec.all_jumps())
        assert (value > 0) if has_odd else (value == 0)


def test_q_minus_one_zero_without_odd_jumps():
    assert q_minus_one(parse_family("circulant:2")) == 0
    assert q_minus_one(parse_family("sandwich:[[2],[4]]")) == 0
