"""Dense exact polynomials and Laurent polynomials.

Coefficients are stored lowest degree first.  Arithmetic is exact; the
integer classes never round.  Fractions appear only transiently in
substitutions and in the gcd used for square-free decomposition.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import NonIntegerCoefficients, NotDivisible


def _trim(coeffs: Sequence) -> tuple:
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        coeffs = [0]
    return tuple(coeffs)


class IntPolynomial:
    """Polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = (0,)):
        coeffs = _trim(coeffs)
        for c in coeffs:
            if not isinstance(c, int):
                raise TypeError(f"integer coefficient expected, got {c!r}")
        self.coeffs = coeffs

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls((c,))

    @classmethod
    def x(cls) -> IntPolynomial:
        return cls((0, 1))

    @classmethod
    def from_fractions(cls, coeffs: Iterable[Fraction]) -> IntPolynomial:
        out = []
        for c in coeffs:
            c = Fraction(c)
            if c.denominator != 1:
                raise NonIntegerCoefficients(f"coefficient {c} is not an integer")
            out.append(c.numerator)
        return cls(out)

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports -1."""
        if self.is_zero():
            return -1
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        return format_poly(self.coeffs, "w")

    # -- ring operations -----------------------------------------------

    def _coerce(self, other) -> IntPolynomial:
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPolynomial:
        if k < 0:
            raise ValueError("negative power")
        result = IntPolynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- evaluation and calculus ---------------------------------------

    def __call__(self, x):
        """Horner evaluation; works for int, Fraction, mpmath numbers."""
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def compose(self, inner: IntPolynomial) -> IntPolynomial:
        acc = IntPolynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def to_json(self) -> dict:
        return {"low_degree": 0, "coeffs": [str(c) for c in self.coeffs]}


class LaurentPolynomial:
    """Integer Laurent polynomial  sum_k c_k z^(low_degree + k)."""

    __slots__ = ("low_degree", "coeffs")

    def __init__(self, low_degree: int, coeffs: Iterable[int]):
        coeffs = list(coeffs)
        # normalize both ends
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        coeffs = coeffs[start:]
        if not coeffs:
            low_degree, coeffs = 0, [0]
        else:
            low_degree += start
        self.low_degree = low_degree
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, c: int) -> LaurentPolynomial:
        return cls(0, [c])

    @classmethod
    def monomial(cls, c: int, d: int) -> LaurentPolynomial:
        return cls(d, [c])

    @property
    def high_degree(self) -> int:
        return self.low_degree + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def coefficient(self, d: int) -> int:
        k = d - self.low_degree
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def is_symmetric(self) -> bool:
        return all(self.coefficient(d) == self.coefficient(-d) for d in
                   range(self.low_degree, self.high_degree + 1))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return (self.low_degree, self.coeffs) == (other.low_degree, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.low_degree, self.coeffs))

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.low_degree}, {list(self.coeffs)})"

    def __str__(self) -> str:
        return format_poly(self.coeffs, "z", self.low_degree)

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        lo = min(self.low_degree, other.low_degree)
        hi = max(self.high_degree, other.high_degree)
        return LaurentPolynomial(
            lo, [self.coefficient(d) + other.coefficient(d) for d in range(lo, hi + 1)]
        )

    __radd__ = __add__

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial(self.low_degree, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return LaurentPolynomial(self.low_degree + other.low_degree, out)

    __rmul__ = __mul__

    def __call__(self, z):
        acc = 0 * z
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc * z ** self.low_degree

    def to_json(self) -> dict:
        return {"low_degree": self.low_degree, "coeffs": [str(c) for c in self.coeffs]}


def format_poly(coeffs: Sequence[int], var: str, low: int = 0) -> str:
    """Human-readable form, highest power first."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        d = low + k
        mag = abs(c)
        if d == 0:
            body = str(mag)
        else:
            power = var if d == 1 else f"{var}^{d}"
            body = power if mag == 1 else f"{mag}*{power}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


@lru_cache(maxsize=None)
def _cheb_T(k: int) -> IntPolynomial:
    if k == 0:
        return IntPolynomial.constant(1)
    if k == 1:
        return IntPolynomial.x()
    two_w = IntPolynomial((0, 2))
    prev, cur = _cheb_T(0), _cheb_T(1)
    for _ in range(1, k):
        prev, cur = cur, two_w * cur - prev
    return cur


def cheb_2T(k: int) -> IntPolynomial:
    """Return 2*T_k(w) with T_k the Chebyshev polynomial of the first kind."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return 2 * _cheb_T(k)


def laurent_2cos(k: int) -> LaurentPolynomial:
    """z^k + z^-k, the image of 2*T_k under w = (z + 1/z)/2."""
    if k == 0:
        return LaurentPolynomial.constant(2)
    return LaurentPolynomial(-k, [1] + [0] * (2 * k - 1) + [1])


def substitute_joukowski(p: IntPolynomial) -> LaurentPolynomial:
    """Exact Laurent expansion of p((z + 1/z)/2).

    Raises NonIntegerCoefficients when the result is not integral.
    """
    s = p.degree
    if s <= 0:
        return LaurentPolynomial.constant(p.coeffs[0])
    # 2^s * p((z+1/z)/2) = sum_k c_k 2^(s-k) (z + 1/z)^k is integral
    base = LaurentPolynomial(-1, [1, 0, 1])
    acc = LaurentPolynomial.constant(0)
    power = LaurentPolynomial.constant(1)
    for k, c in enumerate(p.coeffs):
        if c:
            acc = acc + power * (c << (s - k))
        power = power * base
    scale = 1 << s
    out = []
    for c in acc.coeffs:
        if c % scale:
            raise NonIntegerCoefficients(f"coefficient {Fraction(c, scale)} is not an integer")
        out.append(c // scale)
    return LaurentPolynomial(acc.low_degree, out)


# -- rational helpers for gcd and square-free decomposition -------------


def _frac_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _frac_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db = len(b) - 1
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - db, 1)
    lead = b[-1]
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        factor = a[-1] / lead
        q[shift] = factor
        for i, bi in enumerate(b):
            a[shift + i] -= factor * bi
        a.pop()
        _frac_trim(a)
    return _frac_trim(q), a


def _primitive(p: list[Fraction]) -> IntPolynomial:
    from math import gcd, lcm

    den = 1
    for c in p:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return IntPolynomial(ints)


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over Q[x] with positive leading coefficient."""
    x = [Fraction(c) for c in a.coeffs]
    y = [Fraction(c) for c in b.coeffs]
    _frac_trim(x)
    _frac_trim(y)
    while y:
        _, r = _frac_divmod(x, y)
        x, y = y, r
    if not x:
        return IntPolynomial()
    return _primitive(x)


def exact_quotient(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """a / b over Q, asserting zero remainder; returned primitive-scaled.

    The quotient is returned with rational coefficients cleared, so it is
    correct only up to a constant factor.  Callers use it for root sets.
    """
    q, r = _frac_divmod([Fraction(c) for c in a.coeffs], [Fraction(c) for c in b.coeffs])
    if r:
        raise NotDivisible(f"{a} is not divisible by {b}")
    return _primitive(q)


def squarefree_decomposition(p: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Return [(factor, multiplicity), ...] with square-free, pairwise coprime factors.

    Uses the gcd chain A_k = gcd(A_{k-1}, A_{k-1}'); the quotient
    A_{k-1} / A_k collects the distinct factors of multiplicity >= k.
    Factors are primitive and determined up to sign; constants are dropped.
    """
    if p.degree <= 0:
        return []
    chain = [p]
    while chain[-1].degree > 0:
        a = chain[-1]
        chain.append(poly_gcd(a, a.derivative()))
    at_least = [exact_quotient(chain[k - 1], chain[k]) for k in range(1, len(chain))]
    at_least.append(IntPolynomial.constant(1))
    out = []
    for k in range(len(at_least) - 1):
        exact = exact_quotient(at_least[k], at_least[k + 1])
        if exact.degree > 0:
            out.append((exact, k + 1))
    return out
