"""Multiprecision polynomial roots.

Companion-matrix eigenvalues (numpy, double precision) seed an Aberth
simultaneous iteration run in a private mpmath context.  Repeated roots are
split off first by an exact square-free decomposition, so the iteration only
ever sees simple roots.
"""

from __future__ import annotations

import numpy as np
from mpmath.ctx_mp import MPContext

from .polynomials import IntPolynomial, squarefree_decomposition

MAX_ITERATIONS = 500


def make_context(bits: int) -> MPContext:
    ctx = MPContext()
    ctx.prec = bits
    return ctx


def _seed(p: IntPolynomial) -> list[complex]:
    if p.degree == 1:
        return [complex(-p.coeffs[0] / p.coeffs[1])]
    # highest-degree coefficient first; scale to avoid overflow on big coefficients
    coeffs = np.array([float(c) for c in reversed(p.coeffs)], dtype=float)
    seeds = list(np.roots(coeffs / np.max(np.abs(coeffs))))
    # Aberth needs pairwise distinct starting points
    out = []
    for k, z in enumerate(seeds):
        z = complex(z)
        while any(abs(z - y) < 1e-8 for y in out):
            z += complex(1e-6 * (k + 1), 1e-6 * (k + 2))
        out.append(z)
    return out


def _aberth(ctx: MPContext, p: IntPolynomial, seeds: list[complex]) -> list:
    coeffs = [ctx.mpf(c) for c in p.coeffs]
    dcoeffs = [ctx.mpf(c) for c in p.derivative().coeffs]

    def horner(cs, z):
        acc = ctx.mpc(0)
        for c in reversed(cs):
            acc = acc * z + c
        return acc

    z = [ctx.mpc(s.real, s.imag) for s in seeds]
    tol = ctx.mpf(2) ** (-ctx.prec + 8)
    for _ in range(MAX_ITERATIONS):
        worst = ctx.mpf(0)
        for i in range(len(z)):
            pv = horner(coeffs, z[i])
            if pv == 0:
                continue
            ratio = pv / horner(dcoeffs, z[i])
            repulsion = ctx.fsum(1 / (z[i] - z[j]) for j in range(len(z)) if j != i)
            step = ratio / (1 - ratio * repulsion)
            z[i] -= step
            scale = max(ctx.mpf(1), abs(z[i]))
            worst = max(worst, abs(step) / scale)
        if worst < tol:
            break
    else:
        raise ArithmeticError("Aberth iteration did not converge")
    return z


def polynomial_roots(p: IntPolynomial, bits: int) -> list:
    """All complex roots of p with multiplicity, as mpc values at ``bits`` precision."""
    ctx = make_context(bits + 32)
    out = []
    for factor, mult in squarefree_decomposition(p):
        if factor.degree == 1:
            a0, a1 = factor.coeffs
            roots = [ctx.mpc(ctx.mpf(-a0) / a1)]
        else:
            roots = _aberth(ctx, factor, _seed(factor))
        for r in roots:
            out.extend([r] * mult)
    return out


def divide_by_w_minus_1(Q: IntPolynomial) -> IntPolynomial:
    """Exact synthetic division of Q by (w - 1); requires Q(1) == 0."""
    coeffs = list(Q.coeffs)
    out = [0] * (len(coeffs) - 1)
    carry = 0
    for k in range(len(coeffs) - 1, 0, -1):
        carry = coeffs[k] + carry
        out[k - 1] = carry
    if coeffs[0] + carry != 0:
        raise ValueError("Q(1) != 0")
    return IntPolynomial(out)
