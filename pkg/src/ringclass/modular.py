"""Arbitrary-precision eta, Delta, j, Siegel functions and eta-quotients.

Points may be given either exactly, as :class:`~ringclass.quadratic.SurdPoint`,
or as ``mpmath.mpc``.  Exact points are reduced to the fundamental domain in
rational arithmetic and only converted to floating point for the final
q-series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .quadratic import SurdPoint, factorize


@dataclass(frozen=True)
class PrecisionCtx:
    bits: int = 256
    guard_bits: int = 32

    def __post_init__(self):
        if self.bits < 64 or self.guard_bits < 32:
            raise ValueError("need bits >= 64 and guard_bits >= 32")

    @property
    def working_bits(self) -> int:
        return self.bits + self.guard_bits

    def doubled(self) -> "PrecisionCtx":
        return PrecisionCtx(2 * self.bits, self.guard_bits)


DEFAULT_CTX = PrecisionCtx()


def _sawtooth(x: Fraction) -> Fraction:
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def dedekind_sum_direct(d: int, c: int) -> Fraction:
    """s(d, c) straight from the sawtooth definition; O(c)."""
    if c < 1 or math.gcd(d, c) != 1:
        raise ValueError(f"need c >= 1 and gcd(d, c) = 1, got ({d}, {c})")
    return sum((_sawtooth(Fraction(k, c)) * _sawtooth(Fraction(k * d, c))
                for k in range(1, c)), Fraction(0))


def dedekind_sum(d: int, c: int) -> Fraction:
    """Dedekind sum s(d, c), computed by the reciprocity law in O(log c) steps."""
    if c < 1 or math.gcd(d, c) != 1:
        raise ValueError(f"need c >= 1 and gcd(d, c) = 1, got ({d}, {c})")
    total = Fraction(0)
    sign = 1
    a, b = d % c, c
    # invariant: s(d, c) = total + sign * s(a, b)
    while a != 0:
        # s(a, b) + s(b, a) = (a/b + b/a + 1/(ab))/12 - 1/4
        total += sign * (Fraction(a * a + b * b + 1, 12 * a * b) - Fraction(1, 4))
        sign = -sign
        a, b = b % a, a
    return total


# ---------------------------------------------------------------------------
# fundamental-domain reduction

Matrix = tuple[int, int, int, int]

_I: Matrix = (1, 0, 0, 1)


def _matmul(m: Matrix, n: Matrix) -> Matrix:
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def reduce_point(point):
    """Return ``(reduced, gamma)`` with ``reduced = gamma(point)`` in the
    standard fundamental domain and ``gamma`` in SL2(Z)."""
    gamma = _I
    if isinstance(point, SurdPoint):
        z = point
        while True:
            n = math.floor(z.re + Fraction(1, 2))
            if n:
                z = z.shift(-n)
                gamma = _matmul((1, -n, 0, 1), gamma)
            if z.abs2() < 1:
                z = z.mobius(0, -1, 1, 0)
                gamma = _matmul((0, -1, 1, 0), gamma)
            else:
                return z, gamma
    z = mpmath.mpc(point)
    if z.imag <= 0:
        raise ValueError("point is not in the upper half-plane")
    one = mpmath.mpf(1) - mpmath.mpf(2) ** (-(mpmath.mp.prec // 2))
    while True:
        n = int(mpmath.floor(z.real + mpmath.mpf(0.5)))
        if n:
            z = z - n
            gamma = _matmul((1, -n, 0, 1), gamma)
        if abs(z) < one:
            z = -1 / z
            gamma = _matmul((0, -1, 1, 0), gamma)
        else:
            return z, gamma


def eta_multiplier(gamma: Matrix) -> Fraction:
    """The epsilon(gamma) of eta(gamma tau) = epsilon (c tau + d)^(1/2) eta(tau),
    returned as the exponent e with epsilon = exp(pi i e), 0 <= e < 2.

    Requires c > 0, or c = 0 and d = 1.
    """
    a, b, c, d = gamma
    if c == 0:
        return Fraction(b, 12) % 2
    e = Fraction(a + d, 12 * c) - dedekind_sum(d, c) - Fraction(1, 4)
    return e % 2


def _normalize_sign(gamma: Matrix) -> Matrix:
    a, b, c, d = gamma
    if c < 0 or (c == 0 and d < 0):
        return (-a, -b, -c, -d)
    return gamma


def _to_mpc(point):
    if isinstance(point, SurdPoint):
        return point.to_mpc()
    z = mpmath.mpc(point)
    if z.imag <= 0:
        raise ValueError("point is not in the upper half-plane")
    return z


def _cz_plus_d(point, c: int, d: int):
    if isinstance(point, SurdPoint):
        return mpmath.mpc(
            mpmath.mpf((c * point.re + d).numerator) / (c * point.re + d).denominator,
            c * mpmath.sqrt(point.radicand) * point.im.numerator / point.im.denominator,
        )
    return c * point + d


def eta_series(tau):
    """eta(tau) by the pentagonal-number series, no reduction.

    Converges for every tau in H but is only fast when Im(tau) is not tiny.
    """
    eps = mpmath.mpf(2) ** (-mpmath.mp.prec)
    q = mpmath.expjpi(2 * tau)
    aq = abs(q)
    if aq >= 1:
        raise ValueError("point is not in the upper half-plane")
    s = mpmath.mpc(1)
    k = 1
    sign = -1
    while True:
        e1 = k * (3 * k - 1) // 2
        if aq ** e1 < eps:
            break
        s += sign * (q ** e1 + q ** (e1 + k))
        sign = -sign
        k += 1
    return mpmath.expjpi(tau / 12) * s


def eta(point, ctx: PrecisionCtx = DEFAULT_CTX):
    """Dedekind eta at ``point`` (SurdPoint or mpc) with modular reduction."""
    with mpmath.workprec(ctx.working_bits):
        reduced, gamma = reduce_point(point)
        a, b, c, d = _normalize_sign(gamma)
        value = eta_series(_to_mpc(reduced))
        mult = mpmath.expjpi(_mpf(eta_multiplier((a, b, c, d))))
        if c:
            mult *= mpmath.sqrt(_cz_plus_d(point, c, d))
        result = value / mult
    return result  # no unary +: that would round to the caller's precision


def delta(point, ctx: PrecisionCtx = DEFAULT_CTX):
    with mpmath.workprec(ctx.working_bits):
        result = (2 * mpmath.pi) ** 12 * eta(point, ctx) ** 24
    return result


def _scaled(point, k: int):
    return point.scale(k) if isinstance(point, SurdPoint) else k * mpmath.mpc(point)


def j_invariant(point, ctx: PrecisionCtx = DEFAULT_CTX):
    """j via (2^8 x^16 + x^-8)^3 with x = eta(2 tau)/eta(tau)."""
    with mpmath.workprec(ctx.working_bits):
        x = eta(_scaled(point, 2), ctx) / eta(point, ctx)
        result = (256 * x ** 16 + x ** -8) ** 3
    return result


# ---------------------------------------------------------------------------
# eta-quotients


@dataclass(frozen=True)
class EtaQuotientSpec:
    """``prefactor * prod_d eta(d tau)^m_d`` on Gamma_0(level).

    The prefactor is ``prefactor_base ** (prefactor_exp_num / common_denom)``.
    """

    level: int
    exponents: dict[int, int] = field(hash=False)
    prefactor_base: int = 1
    prefactor_exp_num: int = 0
    common_denom: int = 1

    def __post_init__(self):
        object.__setattr__(self, "exponents",
                           {d: m for d, m in sorted(self.exponents.items()) if m})
        for d in self.exponents:
            if d < 1 or self.level % d:
                raise ValueError(f"{d} does not divide the level {self.level}")

    @property
    def prefactor_exponent(self) -> Fraction:
        return Fraction(self.prefactor_exp_num, self.common_denom)

    def __str__(self):
        parts = [f"eta({d}t)^{m}" for d, m in sorted(self.exponents.items(), reverse=True)]
        pre = self.prefactor_exponent
        if self.prefactor_base != 1 and pre:
            parts.insert(0, f"{self.prefactor_base}^{pre}")
        return " * ".join(parts)


def build_eta_quotient(N: int) -> EtaQuotientSpec:
    """The eta-quotient attached to the order of conductor N.

    For N = prod p_k^r_k it is ``prod_S eta((N/P_S) tau)^(24 (-1)^|S| mu / g)``
    over subsets S of the primes, with ``P_S = prod_{k in S} p_k``,
    ``g = gcd(24, prod (p_k - 1))``; mu is 2 only for N a power of a prime
    p = 1 mod 8, and the prefactor ``p^(12 mu / g)`` only appears for prime
    powers.
    """
    if N < 2:
        raise ValueError("level must be at least 2")
    primes = sorted(factorize(N)[0])
    m = len(primes)
    p_n = math.prod(p - 1 for p in primes)
    mu = 2 if m == 1 and primes[0] % 8 == 1 else 1
    g = math.gcd(24, p_n)
    exps: dict[int, int] = {}
    for mask in range(1 << m):
        ps = math.prod(p for i, p in enumerate(primes) if mask >> i & 1)
        sign = -1 if bin(mask).count("1") % 2 else 1
        key = N // ps
        exps[key] = exps.get(key, 0) + sign * 24 * mu // g
    base = primes[0] if m == 1 else 1
    return EtaQuotientSpec(N, exps, base, 12 * mu, g)


@dataclass(frozen=True)
class OnoReport:
    weight_zero: bool
    order_at_infinity: bool
    order_at_zero: bool
    square_character: bool

    @property
    def ok(self) -> bool:
        return (self.weight_zero and self.order_at_infinity
                and self.order_at_zero and self.square_character)


def check_ono_conditions(spec: EtaQuotientSpec) -> OnoReport:
    """Sufficient conditions for an eta-quotient to be a modular function on Gamma_0(N)."""
    N, ex = spec.level, spec.exponents
    total = sum(ex.values())
    inf = sum(d * m for d, m in ex.items())
    zero = sum((N // d) * m for d, m in ex.items())
    prime_exps: dict[int, int] = {}
    for d, m in ex.items():
        if d > 1:
            for p, e in factorize(d)[0].items():
                prime_exps[p] = prime_exps.get(p, 0) + e * m
    square = all(e % 2 == 0 for e in prime_exps.values())
    return OnoReport(total == 0, inf % 24 == 0, zero % 24 == 0, square)


def eval_eta_quotient(spec: EtaQuotientSpec, point, ctx: PrecisionCtx = DEFAULT_CTX):
    with mpmath.workprec(ctx.working_bits):
        value = mpmath.mpc(1)
        for d, m in spec.exponents.items():
            value *= eta(_scaled(point, d), ctx) ** m
        pre = spec.prefactor_exponent
        if spec.prefactor_base != 1 and pre:
            value *= mpmath.power(spec.prefactor_base, mpmath.mpf(pre.numerator) / pre.denominator)
    return value


# ---------------------------------------------------------------------------
# Siegel functions


@dataclass(frozen=True)
class SiegelIndex:
    r1: Fraction
    r2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r1", Fraction(self.r1))
        object.__setattr__(self, "r2", Fraction(self.r2))
        if self.r1.denominator == 1 and self.r2.denominator == 1:
            raise ValueError("Siegel index must not be integral")

    def __neg__(self):
        return SiegelIndex(-self.r1, -self.r2)


def _mpf(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def siegel(index: SiegelIndex, point, ctx: PrecisionCtx = DEFAULT_CTX):
    """The Siegel function g_[r1, r2](tau) from its product expansion."""
    with mpmath.workprec(ctx.working_bits):
        tau = _to_mpc(point)
        r1, r2 = _mpf(index.r1), _mpf(index.r2)
        eps = mpmath.mpf(2) ** (-ctx.working_bits)

        def qpow(x):
            return mpmath.expjpi(2 * tau * x)

        zeta = mpmath.expjpi(2 * r2)
        zeta_inv = 1 / zeta
        value = -qpow((r1 * r1 - r1 + mpmath.mpf(1) / 6) / 2) * mpmath.expjpi(r2 * (r1 - 1))
        value *= 1 - qpow(r1) * zeta
        aq = abs(qpow(1))
        shift = abs(r1)
        n = 1
        while True:
            t1 = qpow(n + r1) * zeta
            t2 = qpow(n - r1) * zeta_inv
            value *= (1 - t1) * (1 - t2)
            # tail beyond n is bounded by a geometric series in |q|
            if n > shift and aq ** (n + 1 - shift) < eps * (1 - aq):
                break
            n += 1
    return value
