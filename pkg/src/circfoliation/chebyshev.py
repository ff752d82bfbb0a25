"""Characteristic polynomials of a foliation.

Q(w)  determinant of the base's generalized Laplacian with diagonal
      2k_i + d_i - sum_j 2T_{s_ij}(w) (integer polynomial of degree s)
P(z)  same determinant with diagonal 2k_i + d_i - sum_j (z^s_ij + z^-s_ij)
g     Q((zeta + 2)/2) / zeta, sign-normalized
f_n   (2T_n((zeta + 2)/2) - 2) / zeta
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence, TypeVar

from .errors import InvalidSpec, NonIntegerCoefficients, NotDivisible
from .kirchhoff import IntMatrix, det_fraction_free, tau_oracle
from .model import FoliationSpec, require_valid
from .polynomials import IntPolynomial, LaurentPolynomial, cheb_2T, laurent_2cos

R = TypeVar("R")


def det_cofactor(matrix: Sequence[Sequence[R]], zero: R, one: R) -> R:
    """Determinant over any commutative ring by Laplace expansion.

    Minors are memoized on the set of remaining columns and zero entries
    are skipped, so sparse base graphs stay cheap.
    """
    m = len(matrix)

    @lru_cache(maxsize=None)
    def minor(row: int, cols: int) -> R:
        if row == m:
            return one
        total = zero
        sign_pos = 0
        for c in range(m):
            bit = 1 << c
            if not cols & bit:
                continue
            entry = matrix[row][c]
            if not _is_zero(entry):
                term = entry * minor(row + 1, cols & ~bit)
                total = total - term if sign_pos & 1 else total + term
            sign_pos += 1
        return total

    result = minor(0, (1 << m) - 1)
    minor.cache_clear()
    return result


def _is_zero(x) -> bool:
    if isinstance(x, (IntPolynomial, LaurentPolynomial)):
        return x.is_zero()
    return x == 0


def _generalized_laplacian(spec: FoliationSpec, diagonal: Callable[[int], R], constant: Callable[[int], R]):
    m = spec.m
    a = spec.base.a
    return [
        [diagonal(i) if i == j else constant(-a[i][j]) for j in range(m)]
        for i in range(m)
    ]


def build_Q(spec: FoliationSpec) -> IntPolynomial:
    require_valid(spec)
    degrees = spec.base.degrees

    def diagonal(i: int) -> IntPolynomial:
        fiber = spec.fibers[i]
        x = IntPolynomial.constant(2 * fiber.k + degrees[i])
        for s in fiber.jumps:
            x = x - cheb_2T(s)
        return x

    mat = _generalized_laplacian(spec, diagonal, IntPolynomial.constant)
    return det_cofactor(mat, IntPolynomial(), IntPolynomial.constant(1))


def build_P(spec: FoliationSpec) -> LaurentPolynomial:
    require_valid(spec)
    degrees = spec.base.degrees

    def diagonal(i: int) -> LaurentPolynomial:
        fiber = spec.fibers[i]
        x = LaurentPolynomial.constant(2 * fiber.k + degrees[i])
        for s in fiber.jumps:
            x = x - laurent_2cos(s)
        return x

    mat = _generalized_laplacian(spec, diagonal, LaurentPolynomial.constant)
    return det_cofactor(mat, LaurentPolynomial.constant(0), LaurentPolynomial.constant(1))


def _frac_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def shifted_g(Q: IntPolynomial) -> IntPolynomial:
    """g(zeta) = Q((zeta + 2)/2) / zeta with positive leading coefficient.

    The substitution is carried out over Q and the result is checked to be
    integral.  g is monic unless some fiber is empty; its leading
    coefficient is then the determinant of the base Laplacian restricted
    to the empty-fiber vertices.
    """
    inner = [Fraction(1), Fraction(1, 2)]  # (zeta + 2)/2
    acc = [Fraction(0)]
    for c in reversed(Q.coeffs):
        acc = _frac_mul(acc, inner)
        acc[0] += c
    while len(acc) > 1 and acc[-1] == 0:
        acc.pop()
    if acc[0] != 0 or len(acc) < 2:
        raise NotDivisible("Q((zeta+2)/2) is not divisible by zeta (Q(1) != 0)")
    g = IntPolynomial.from_fractions(acc[1:])
    if g.lead < 0:
        g = -g
    if g.coeffs[0] == 0:
        raise NotDivisible("g(0) = 0: w = 1 is a multiple root of Q")
    return g


@lru_cache(maxsize=None)
def _j(n: int) -> IntPolynomial:
    """j_n(zeta) = 2T_n((zeta+2)/2) from the three-term recurrence."""
    if n == 0:
        return IntPolynomial.constant(2)
    shift = IntPolynomial((2, 1))
    prev, cur = IntPolynomial.constant(2), shift
    for _ in range(1, n):
        prev, cur = cur, shift * cur - prev
    return cur


def f_n(n: int) -> IntPolynomial:
    """Monic f_n(zeta) = (j_n(zeta) - 2)/zeta of degree n - 1."""
    if n < 1:
        raise ValueError("n must be positive")
    j = _j(n) - 2
    assert j.coeffs[0] == 0
    return IntPolynomial(j.coeffs[1:])


def q_sum_squares(spec: FoliationSpec) -> int:
    """q = sum of squared jumps over all fibers."""
    jumps = spec.all_jumps()
    if not jumps:
        raise InvalidSpec("spec has no jumps")
    return sum(s * s for s in jumps)


def empty_fiber_minor(spec: FoliationSpec) -> int:
    """Determinant of the base Laplacian restricted to empty-fiber vertices (1 if none)."""
    empty = [i for i, f in enumerate(spec.fibers) if f.k == 0]
    degrees = spec.base.degrees
    rows = [[degrees[i] if i == j else -spec.base.a[i][j] for j in empty] for i in empty]
    return det_fraction_free(IntMatrix.from_rows(rows)) if rows else 1


@dataclass(frozen=True)
class Lemma1Report:
    """Q(1) = 0, Q'(1) = -2 q tau(H), deg Q = s and the leading coefficient.

    ``expected_lead`` is (-1)^(m - e) 2^s D_E, where e counts empty fibers
    and D_E is :func:`empty_fiber_minor`.  ``uniform_lead`` is (-1)^m 2^s, which
    agrees with it exactly when no fiber is empty.
    """

    q_at_1: int
    derivative_at_1: int
    q: int
    tau_H: int
    degree: int
    expected_degree: int
    lead: int
    expected_lead: int
    uniform_lead: int

    @property
    def failures(self) -> list[str]:
        out = []
        if self.q_at_1 != 0:
            out.append(f"Q(1) = {self.q_at_1}, expected 0")
        if self.derivative_at_1 != -2 * self.q * self.tau_H:
            out.append(f"Q'(1) = {self.derivative_at_1}, expected {-2 * self.q * self.tau_H}")
        if self.degree != self.expected_degree:
            out.append(f"deg Q = {self.degree}, expected {self.expected_degree}")
        if self.lead != self.expected_lead:
            out.append(f"lead Q = {self.lead}, expected {self.expected_lead}")
        return out

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def uniform_lead_holds(self) -> bool:
        return self.lead == self.uniform_lead


def check_lemma1(spec: FoliationSpec) -> Lemma1Report:
    Q = build_Q(spec)
    s = spec.degree_s
    empty = sum(1 for f in spec.fibers if f.k == 0)
    return Lemma1Report(
        q_at_1=Q(1),
        derivative_at_1=Q.derivative()(1),
        q=q_sum_squares(spec),
        tau_H=tau_oracle(spec.base.as_multigraph()),
        degree=Q.degree,
        expected_degree=s,
        lead=Q.lead,
        expected_lead=(-1) ** (spec.m - empty) * 2 ** s * empty_fiber_minor(spec),
        uniform_lead=(-1) ** spec.m * 2 ** s,
    )
