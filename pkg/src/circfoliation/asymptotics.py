"""Growth constant of tau(n) and the root-location property behind it.

The constant A is the Mahler measure of z^s P(z), computed two ways:

* from roots: c * prod |z_j| over the roots of P outside the unit circle,
  with c = |lead Q| / 2^s the leading coefficient of z^s P(z) (c = 1 when
  every fiber is non-empty);
* from the integral exp(int_0^1 log|Q(cos 2 pi t)| dt).

tau(n) * q / (n * A^n) tends to 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import log2

from .counting import DEFAULT_BITS, MAX_BITS, invariants, lift_root, nonunit_roots, tau_exact
from .errors import HypothesisViolated, QuadratureNotConverged, UnitCircleRoot
from .model import FoliationSpec, require_valid
from .roots import divide_by_w_minus_1, make_context

GL_ORDER = 20
MAX_DEPTH = 48
DIGITS = 30


def _require_gcd_one(spec: FoliationSpec) -> None:
    require_valid(spec)
    g = spec.jump_gcd
    if g != 1:
        raise HypothesisViolated(f"jump gcd is {g}, not 1")


def roots_outside_unit(spec: FoliationSpec, bits: int = DEFAULT_BITS) -> list:
    """z_j with |z_j| > 1 and (z_j + 1/z_j)/2 running over the roots w != 1 of Q."""
    _require_gcd_one(spec)
    while True:
        ctx = make_context(bits)
        margin = ctx.mpf(2) ** (-(bits // 4))
        lifted = [lift_root(ctx, ctx.mpc(w)) for w in nonunit_roots(spec, bits)]
        if all(abs(z) > 1 + margin for z in lifted):
            return lifted
        if bits >= MAX_BITS:
            bad = min(abs(z) for z in lifted)
            raise UnitCircleRoot(f"root with |z| = {ctx.nstr(bad, 20)} at {bits} bits")
        bits *= 2


def growth_product(spec: FoliationSpec, bits: int = DEFAULT_BITS):
    """prod |z_j| over roots outside the unit circle (no leading coefficient)."""
    ctx = make_context(bits)
    out = ctx.mpf(1)
    for z in roots_outside_unit(spec, bits):
        out *= abs(z)
    return out


def mahler_from_roots(spec: FoliationSpec, bits: int = DEFAULT_BITS):
    ctx = make_context(bits)
    return ctx.mpf(invariants(spec).lead_ratio) * growth_product(spec, bits)


# -- quadrature ----------------------------------------------------------


@lru_cache(maxsize=32)
def _legendre_rule(order: int, bits: int) -> tuple[tuple, tuple]:
    """Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration."""
    ctx = make_context(bits + 20)
    nodes, weights = [], []
    for i in range(1, order + 1):
        x = ctx.cos(ctx.pi * (i - ctx.mpf(1) / 4) / (order + ctx.mpf(1) / 2))
        for _ in range(100):
            p0, p1 = ctx.mpf(1), x
            for k in range(2, order + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = order * (x * p1 - p0) / (x * x - 1)
            dx = p1 / dp
            x -= dx
            if abs(dx) < ctx.mpf(2) ** (-bits - 10):
                break
        nodes.append(x)
        weights.append(2 / ((1 - x * x) * dp * dp))
    return tuple(nodes), tuple(weights)


def _gl_panel(ctx, f, a, b, rule):
    nodes, weights = rule
    half = (b - a) / 2
    mid = (a + b) / 2
    return half * ctx.fsum(w * f(mid + half * x) for x, w in zip(nodes, weights))


def adaptive_gauss_legendre(ctx, f, a, b, tol, breakpoints=(), order: int = GL_ORDER):
    """Integrate f over [a, b], bisecting panels until halves agree to tol."""
    rule = tuple(tuple(ctx.mpf(v) for v in part) for part in _legendre_rule(order, ctx.prec))
    edges = [a] + sorted(p for p in breakpoints if a < p < b) + [b]
    total = ctx.mpf(0)
    stack = []
    for lo, hi in zip(edges, edges[1:]):
        stack.append((lo, hi, _gl_panel(ctx, f, lo, hi, rule), 0))
    width = b - a
    while stack:
        lo, hi, whole, depth = stack.pop()
        mid = (lo + hi) / 2
        left = _gl_panel(ctx, f, lo, mid, rule)
        right = _gl_panel(ctx, f, mid, hi, rule)
        if abs(left + right - whole) <= tol * (hi - lo) / width:
            total += left + right
            continue
        if depth >= MAX_DEPTH:
            raise QuadratureNotConverged(f"panel [{ctx.nstr(lo, 8)}, {ctx.nstr(hi, 8)}] did not converge")
        stack.append((lo, mid, left, depth + 1))
        stack.append((mid, hi, right, depth + 1))
    return total


def _near_zero_breaks(ctx, f_abs, a, b, samples: int = 256) -> list:
    """Local minima of |f| on a uniform grid; used to split quadrature panels."""
    ts = [a + (b - a) * ctx.mpf(k) / samples for k in range(samples + 1)]
    vals = [f_abs(t) for t in ts]
    return [ts[k] for k in range(1, samples) if vals[k] < vals[k - 1] and vals[k] <= vals[k + 1]]


def mahler_from_integral(spec: FoliationSpec, bits: int = DEFAULT_BITS, tol: float = 1e-20):
    """exp of the mean of log|Q(cos 2 pi t)| over one period.

    Q(w) = (w - 1) R(w); the factor w - 1 carries the logarithmic
    singularity at t = 0 and integrates in closed form to -log 2, leaving
    log|R(cos 2 pi t)|, which is smooth when the jump gcd is 1.  The
    integrand is symmetric about t = 1/2, so only [0, 1/2] is integrated.
    """
    require_valid(spec)
    ctx = make_context(bits)
    R = divide_by_w_minus_1(invariants(spec).Q)
    coeffs = [ctx.mpf(c) for c in R.coeffs]

    def r_abs(t):
        w = ctx.cos(2 * ctx.pi * t)
        acc = ctx.mpf(0)
        for c in reversed(coeffs):
            acc = acc * w + c
        return abs(acc)

    def integrand(t):
        return ctx.log(r_abs(t))

    half = ctx.mpf(1) / 2
    breaks = _near_zero_breaks(ctx, r_abs, ctx.mpf(0), half)
    smooth_part = 2 * adaptive_gauss_legendre(ctx, integrand, ctx.mpf(0), half, ctx.mpf(tol), breaks)
    return ctx.exp(smooth_part - ctx.log(2))


def integrand_samples(spec: FoliationSpec, count: int = 10_000, bits: int = 128) -> list:
    """Q(cos 2 pi t) at t = k / count; non-negative by the diagonal-dominance argument."""
    ctx = make_context(bits)
    Q = invariants(spec).Q
    coeffs = [ctx.mpf(c) for c in Q.coeffs]
    out = []
    for k in range(count):
        w = ctx.cos(2 * ctx.pi * ctx.mpf(k) / count)
        acc = ctx.mpf(0)
        for c in reversed(coeffs):
            acc = acc * w + c
        out.append(acc)
    return out


# -- convergence check --------------------------------------------------


@dataclass
class AsymptoticReport:
    A_roots: object
    A_integral: object
    growth_product: object
    lead_ratio: int
    q: int
    tau_H: int
    samples: list[dict] = field(default_factory=list)

    @property
    def discrepancies(self) -> list:
        return [abs(1 - s["ratio"]) for s in self.samples]

    @property
    def discrepancy_decreasing(self) -> bool:
        d = self.discrepancies
        return all(b < a for a, b in zip(d, d[1:]))

    def to_json(self) -> dict:
        ctx = make_context(DEFAULT_BITS)
        fmt = lambda x: ctx.nstr(x, DIGITS)  # noqa: E731
        return {
            "A": fmt(self.A_roots),
            "A_integral": fmt(self.A_integral),
            "q": self.q,
            "tau_H": self.tau_H,
            "lead_ratio": self.lead_ratio,
            "samples": [
                {
                    "n": s["n"],
                    "tau": str(s["tau"]),
                    "ratio": fmt(s["ratio"]),
                    "ratio_with_tau_H": fmt(s["ratio_with_tau_H"]),
                }
                for s in self.samples
            ],
        }


def check_asymptotics(spec: FoliationSpec, n_list, bits: int = DEFAULT_BITS) -> AsymptoticReport:
    """Compare tau(n) with (n / q) A^n along ``n_list``.

    ``ratio`` is tau(n) q / (n A^n).  ``ratio_with_tau_H`` divides by
    tau(H) as well; it tends to 1 / tau(H).
    """
    _require_gcd_one(spec)
    inv = invariants(spec)
    n_list = list(n_list)
    # |1 - ratio| decays like A^-n; resolve it with a precision scaled to n
    estimate = float(mahler_from_roots(spec, 64))
    if n_list and estimate > 1:
        bits = max(bits, bits + int(max(n_list) * log2(estimate)) + 32)
    ctx = make_context(bits)
    A = mahler_from_roots(spec, bits)
    report = AsymptoticReport(
        A_roots=A,
        A_integral=mahler_from_integral(spec, bits),
        growth_product=growth_product(spec, bits),
        lead_ratio=inv.lead_ratio,
        q=inv.q,
        tau_H=inv.tau_H,
    )
    for n in n_list:
        tau = tau_exact(spec, n).tau
        ratio = ctx.mpf(tau) * inv.q / (n * A ** n)
        report.samples.append(
            {"n": n, "tau": tau, "ratio": ratio, "ratio_with_tau_H": ratio / inv.tau_H}
        )
    return report
