"""Spanning-tree counts tau(n) of H_n by three independent routes.

resultant       exact:  tau(n) = n * tau(H) * |Res(g, f_n)|
spectral_roots  float:  tau(n) = (n c^n / q) * prod_p |2T_n(w_p) - 2| over the
                        roots w_p != 1 of Q, where c = |lead Q| / 2^s
spectral_eps    float:  tau(n) = (tau(H) / n) * prod_{j=1}^{n-1} P(eps_n^j)

The floating routes round to the nearest integer and escalate precision
until the distance to that integer is below 0.25.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .chebyshev import build_P, build_Q, f_n, q_sum_squares, shifted_g
from .errors import DisconnectedCover, PrecisionExhausted
from .kirchhoff import IntMatrix, det_fraction_free, tau_oracle
from .model import (
    FoliationSpec,
    check_theorem_domain,
    expand_cover,
    is_cover_connected,
    require_valid,
)
from .polynomials import IntPolynomial, LaurentPolynomial
from .roots import divide_by_w_minus_1, make_context, polynomial_roots

ROUTES = ("resultant", "spectral_roots", "spectral_eps", "oracle")
DEFAULT_BITS = 256
MAX_BITS = 4096
ACCEPT_RESIDUAL = 0.25


@dataclass(frozen=True)
class TauResult:
    n: int
    tau: int
    route: str
    diagnostics: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class SpecInvariants:
    """Everything about a spec that does not depend on n."""

    Q: IntPolynomial
    P: LaurentPolynomial
    g: IntPolynomial
    q: int
    tau_H: int
    s: int

    @property
    def lead_ratio(self) -> int:
        """c = |lead Q| / 2^s; 1 unless some fiber is empty."""
        c, r = divmod(abs(self.Q.lead), 2 ** self.s)
        assert r == 0
        return c


@lru_cache(maxsize=256)
def invariants(spec: FoliationSpec) -> SpecInvariants:
    require_valid(spec)
    Q = build_Q(spec)
    return SpecInvariants(
        Q=Q,
        P=build_P(spec),
        g=shifted_g(Q),
        q=q_sum_squares(spec),
        tau_H=tau_oracle(spec.base.as_multigraph()),
        s=spec.degree_s,
    )


def sylvester_matrix(p: IntPolynomial, q: IntPolynomial) -> IntMatrix:
    a, b = p.degree, q.degree
    size = a + b
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(b):
        rows.append([0] * i + pc + [0] * (size - a - 1 - i))
    for i in range(a):
        rows.append([0] * i + qc + [0] * (size - b - 1 - i))
    return IntMatrix.from_rows(rows) if rows else IntMatrix(0, 0, ())


def resultant(p: IntPolynomial, q: IntPolynomial) -> int:
    """Res(p, q) = lead(p)^deg(q) * prod_{p(a)=0} q(a), via the Sylvester determinant."""
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of the zero polynomial")
    return det_fraction_free(sylvester_matrix(p, q))


def _check_preconditions(spec: FoliationSpec, n: int) -> None:
    if n < 3:
        raise ValueError("n must be at least 3")
    require_valid(spec)
    if not is_cover_connected(spec, n):
        raise DisconnectedCover(f"gcd of n={n} and all jumps is not 1")
    check_theorem_domain(spec, n)


def tau_exact(spec: FoliationSpec, n: int) -> TauResult:
    _check_preconditions(spec, n)
    inv = invariants(spec)
    tau = n * inv.tau_H * abs(resultant(inv.g, f_n(n)))
    return TauResult(n, tau, "resultant")


def tau_via_oracle(spec: FoliationSpec, n: int) -> TauResult:
    return TauResult(n, tau_oracle(expand_cover(spec, n)), "oracle")


def _round_checked(value, ctx) -> tuple[int, float]:
    nearest = int(ctx.nint(value))
    return nearest, float(abs(value - nearest))


def nonunit_roots(spec: FoliationSpec, bits: int) -> list:
    """Roots w_p != 1 of Q with multiplicity (s - 1 of them)."""
    return polynomial_roots(divide_by_w_minus_1(invariants(spec).Q), bits)


def lift_root(ctx, w):
    """z with (z + 1/z)/2 = w and |z| >= 1."""
    z = w + ctx.sqrt(w * w - 1)
    if abs(z) < 1:
        z = 1 / z
    return z


def _escalate(compute, n: int, route: str, bits: int) -> TauResult:
    while True:
        tau, diag = compute(bits)
        if diag["residual"] < ACCEPT_RESIDUAL:
            return TauResult(n, tau, route, diag)
        if bits >= MAX_BITS:
            raise PrecisionExhausted(
                f"{route}: residual {diag['residual']:.3g} at {bits} bits"
            )
        bits = min(2 * bits, MAX_BITS)


def tau_spectral_roots(spec: FoliationSpec, n: int, bits: int = DEFAULT_BITS) -> TauResult:
    _check_preconditions(spec, n)
    inv = invariants(spec)

    def compute(prec: int):
        ctx = make_context(prec)
        product = ctx.mpf(1)
        for w in nonunit_roots(spec, prec):
            w = ctx.mpc(w)
            z = lift_root(ctx, w)
            product *= abs(z ** n + z ** (-n) - 2)
        value = ctx.mpf(n) * ctx.mpf(inv.lead_ratio) ** n / inv.q * product
        tau, residual = _round_checked(value, ctx)
        return tau, {"bits": prec, "residual": residual}

    return _escalate(compute, n, "spectral_roots", bits)


def tau_spectral_eps(spec: FoliationSpec, n: int, bits: int = DEFAULT_BITS) -> TauResult:
    _check_preconditions(spec, n)
    inv = invariants(spec)

    def compute(prec: int):
        ctx = make_context(prec)
        product = ctx.mpc(1)
        for j in range(1, n):
            eps = ctx.expjpi(ctx.mpf(2 * j) / n)
            product *= inv.P(eps)
        value = product * inv.tau_H / n
        tau, residual = _round_checked(value.real, ctx)
        residual = max(residual, float(abs(value.imag)))
        return tau, {"bits": prec, "residual": residual}

    return _escalate(compute, n, "spectral_eps", bits)


def tau_all_routes(spec: FoliationSpec, n: int, bits: int = DEFAULT_BITS,
                   oracle_max_vertices: int | None = 400) -> dict[str, TauResult]:
    out = {
        "resultant": tau_exact(spec, n),
        "spectral_roots": tau_spectral_roots(spec, n, bits),
        "spectral_eps": tau_spectral_eps(spec, n, bits),
    }
    if oracle_max_vertices is None or spec.m * n <= oracle_max_vertices:
        out["oracle"] = tau_via_oracle(spec, n)
    return out
