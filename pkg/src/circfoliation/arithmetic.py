"""Square structure of tau(n): tau(n) = p * n * tau(H) * a(n)^2.

p is 1 for odd n and the square-free part of Q(-1) for even n.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from math import isqrt

from .chebyshev import build_Q, q_sum_squares
from .counting import invariants, tau_exact
from .errors import DisconnectedCover, FactorizationLimit, NotPerfectSquare, TheoremDomain
from .kirchhoff import IntMatrix, det_fraction_free
from .model import FoliationSpec, is_cover_connected, require_valid, theorem_domain_issue

TRIAL_DIVISION_BOUND = 10 ** 6

__all__ = [
    "TauDecomposition",
    "Theorem2Report",
    "decompose_tau",
    "q_minus_one",
    "q_sum_squares",
    "square_free_part",
    "verify_theorem2",
]


@dataclass(frozen=True)
class TauDecomposition:
    n: int
    parity: str
    tau: int
    tau_H: int
    p: int
    a: int

    def __post_init__(self):
        assert self.tau == self.p * self.n * self.tau_H * self.a ** 2


def q_minus_one(spec: FoliationSpec) -> int:
    """Q(-1) from the integer matrix with diagonal d_i + 4 * (number of odd jumps of fiber i).

    Cross-checked against the polynomial Q evaluated at -1.
    """
    require_valid(spec)
    base = spec.base
    degrees = base.degrees
    rows = []
    for i in range(spec.m):
        odd = sum(1 for s in spec.fibers[i].jumps if s % 2)
        rows.append([degrees[i] + 4 * odd if i == j else -base.a[i][j] for j in range(spec.m)])
    value = det_fraction_free(IntMatrix.from_rows(rows))
    from_poly = build_Q(spec)(-1)
    if value != from_poly:
        raise AssertionError(f"Q(-1): matrix gives {value}, polynomial gives {from_poly}")
    return value


def square_free_part(v: int, bound: int = TRIAL_DIVISION_BOUND) -> tuple[int, int]:
    """Write v = p * r^2 with p square-free; returns (p, r)."""
    if v < 1:
        raise ValueError("square_free_part needs a positive integer")
    p, r = 1, 1
    rest = v
    d = 2
    while d * d <= rest and d <= bound:
        if rest % d == 0:
            e = 0
            while rest % d == 0:
                rest //= d
                e += 1
            r *= d ** (e // 2)
            if e % 2:
                p *= d
        d += 1 if d == 2 else 2
    if rest > 1:
        if d * d > rest:
            # what remains is prime
            p *= rest
        else:
            root = isqrt(rest)
            if root * root == rest:
                r *= root
            else:
                raise FactorizationLimit(
                    f"cofactor {rest} has no factor below {bound} and is not a square"
                )
    return p, r


def decompose_tau(spec: FoliationSpec, n: int) -> TauDecomposition:
    tau = tau_exact(spec, n).tau
    tau_H = invariants(spec).tau_H
    if n % 2:
        parity, p = "odd", 1
    else:
        parity, p = "even", square_free_part(q_minus_one(spec))[0]
    quotient, rem = divmod(tau, p * n * tau_H)
    if rem:
        raise NotPerfectSquare(f"tau({n}) = {tau} is not divisible by p*n*tau(H) = {p * n * tau_H}")
    a = isqrt(quotient)
    if a * a != quotient:
        raise NotPerfectSquare(f"tau({n}) / (p*n*tau(H)) = {quotient} is not a square")
    return TauDecomposition(n, parity, tau, tau_H, p, a)


@dataclass
class Theorem2Report:
    rows: list[TauDecomposition] = field(default_factory=list)
    skipped: list[tuple[int, str]] = field(default_factory=list)
    failures: list[tuple[int, str]] = field(default_factory=list)

    @property
    def a_sequence(self) -> list[int]:
        return [row.a for row in self.rows]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "parity", "tau", "p", "a", "ok"])
        failed = dict(self.failures)
        entries = [(row.n, row) for row in self.rows] + [(n, None) for n in failed]
        for n, row in sorted(entries, key=lambda e: e[0]):
            if row is None:
                writer.writerow([n, "odd" if n % 2 else "even", "", "", "", "false"])
            else:
                writer.writerow([row.n, row.parity, row.tau, row.p, row.a, "true"])
        return buf.getvalue()


def verify_theorem2(spec: FoliationSpec, n_from: int, n_to: int) -> Theorem2Report:
    report = Theorem2Report()
    for n in range(n_from, n_to + 1):
        if not is_cover_connected(spec, n):
            report.skipped.append((n, "disconnected cover"))
            continue
        issue = theorem_domain_issue(spec, n)
        if issue:
            report.skipped.append((n, issue))
            continue
        try:
            report.rows.append(decompose_tau(spec, n))
        except (NotPerfectSquare, FactorizationLimit, DisconnectedCover, TheoremDomain) as exc:
            report.failures.append((n, str(exc)))
    return report
