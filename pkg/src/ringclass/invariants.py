"""Ring class invariants from eta-quotients and their integer minimal polynomials."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from .galois import Mat2, canonical_pm, class_number_order, conjugate_data, t_group
from .modular import (
    DEFAULT_CTX,
    EtaQuotientSpec,
    PrecisionCtx,
    SiegelIndex,
    build_eta_quotient,
    delta,
    eta,
    eval_eta_quotient,
    j_invariant,
    siegel,
)
from .polynomial import IntPoly, discriminant, fp_is_irreducible
from .quadratic import OrderSpec, factorize, hypothesis_holds, is_prime

RECOGNITION_TOLERANCE = mpmath.mpf(2) ** -64


class RecognitionError(RuntimeError):
    """Coefficients did not settle on integers within the precision budget."""

    def __init__(self, message, residuals):
        super().__init__(message)
        self.residuals = residuals


class HypothesisWarning(UserWarning):
    pass


@dataclass(frozen=True)
class RecognitionReport:
    precision_used: int
    max_rounding_residual: float
    degree: int
    confirmed_at: int


def default_bits(order: OrderSpec, degree: int | None = None) -> int:
    """Starting precision: 128 + 16 deg + 4 N sqrt|d_K|."""
    if degree is None:
        degree = class_number_order(order.field, order.conductor)
    return int(128 + 16 * degree + 4 * order.conductor * math.sqrt(-order.field.d_k))


def _spec_for(order: OrderSpec, spec: EtaQuotientSpec | None) -> EtaQuotientSpec:
    if spec is None:
        return build_eta_quotient(order.conductor)
    if spec.level != order.conductor:
        raise ValueError(f"spec has level {spec.level}, order has conductor {order.conductor}")
    return spec


def ring_class_invariant(order: OrderSpec, ctx: PrecisionCtx = DEFAULT_CTX,
                         spec: EtaQuotientSpec | None = None):
    """The eta-quotient value at tau_K; real up to rounding."""
    if not hypothesis_holds(order).holds:
        warnings.warn(f"|G| <= 2 for some prime power of {order.conductor}; the value "
                      "may not generate the ring class field", HypothesisWarning, stacklevel=2)
    return eval_eta_quotient(_spec_for(order, spec), order.field.tau_k, ctx)


def conjugates(order: OrderSpec, ctx: PrecisionCtx = DEFAULT_CTX,
               spec: EtaQuotientSpec | None = None, reverse: bool = False) -> list:
    spec = _spec_for(order, spec)
    data = conjugate_data(order.field, order.conductor, reverse)
    return [eval_eta_quotient(spec, g.point, ctx) for g in data]


def j_conjugates(order: OrderSpec, ctx: PrecisionCtx = DEFAULT_CTX,
                 scaled: bool = False, reverse: bool = False) -> list:
    """j at the conjugate evaluation points.

    With ``scaled`` the function evaluated is j(N tau), a modular function on
    Gamma_0(N) whose conjugates are the roots of the ring class polynomial of
    discriminant N^2 d_K.  Without it, j itself is evaluated; since j is
    SL2(Z)-invariant every value is j(tau_K) and the product is
    (X - j(tau_K))^h, e.g. (X - 1728)^6 for conductor 13 over Q(i).
    """
    N = order.conductor
    data = conjugate_data(order.field, N, reverse)
    if scaled:
        return [j_invariant(g.point.scale(N), ctx) for g in data]
    return [j_invariant(g.point, ctx) for g in data]


def expand_product(values) -> list:
    """Coefficients (ascending) of prod (X - v)."""
    coeffs = [mpmath.mpc(1)]
    for v in values:
        nxt = [mpmath.mpc(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= v * c
        coeffs = nxt
    return coeffs


def round_coefficients(coeffs) -> tuple[list[int], float]:
    ints, worst = [], mpmath.mpf(0)
    for c in coeffs:
        n = int(mpmath.nint(c.real))
        worst = max(worst, abs(c.real - n), abs(c.imag))
        ints.append(n)
    return ints, float(worst)


def recognize(values_at: Callable[[PrecisionCtx], list], bits0: int,
              max_doublings: int = 6) -> tuple[IntPoly, RecognitionReport]:
    """Round prod (X - v) to an integer polynomial, doubling precision until
    the rounding is tight and a doubled-precision rerun agrees."""
    bits = bits0
    residuals = []
    previous = None
    for _ in range(max_doublings + 1):
        ctx = PrecisionCtx(bits)
        with mpmath.workprec(ctx.working_bits):
            ints, resid = round_coefficients(expand_product(values_at(ctx)))
        residuals.append((bits, resid))
        ok = resid < RECOGNITION_TOLERANCE
        if ok and previous is not None and previous[1] == ints:
            poly = IntPoly(tuple(ints))
            return poly, RecognitionReport(previous[0], previous[2], poly.degree, bits)
        previous = (bits, ints, resid) if ok else None
        bits *= 2
    raise RecognitionError(f"coefficients did not converge up to {bits // 2} bits", residuals)


def min_poly(order: OrderSpec, ctx0: PrecisionCtx | None = None,
             spec: EtaQuotientSpec | None = None, max_doublings: int = 6):
    """Integer minimal polynomial of the ring class invariant over K."""
    spec = _spec_for(order, spec)
    bits0 = ctx0.bits if ctx0 else default_bits(order)
    return recognize(lambda ctx: conjugates(order, ctx, spec), bits0, max_doublings)


def min_poly_j(order: OrderSpec, ctx0: PrecisionCtx | None = None,
               scaled: bool = False, max_doublings: int = 6):
    bits0 = ctx0.bits if ctx0 else default_bits(order)
    if scaled:
        # log2 of the largest coefficient is about deg * pi sqrt|D| / ln 2
        d = -order.discriminant
        bits0 += int(class_number_order(order.field, order.conductor) * 4.6 * math.sqrt(d))
    return recognize(lambda ctx: j_conjugates(order, ctx, scaled), bits0, max_doublings)


def factor_discriminant(disc: int, bound: int = 10 ** 6) -> tuple[int, dict[int, int], int]:
    """``(sign, {p: e}, cofactor)``; the cofactor is what trial division left."""
    if disc == 0:
        raise ValueError("zero discriminant")
    facs, rest = factorize(disc, bound)
    return (1 if disc > 0 else -1), facs, rest


def format_factorization(sign: int, facs: dict[int, int], rest: int = 1) -> str:
    parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(facs.items())]
    if rest != 1:
        parts.append(f"({rest})")
    body = " * ".join(parts) or "1"
    return f"-{body}" if sign < 0 else body


@dataclass(frozen=True)
class IrreducibilityReport:
    degree: int
    expected_degree: int
    separable: bool
    status: str                # "irreducible", "reducible" or "inconclusive"
    certificate_prime: int | None = None

    @property
    def degree_ok(self) -> bool:
        return self.degree == self.expected_degree


def verify_degree_and_irreducibility(p: IntPoly, order: OrderSpec,
                                     tries: int = 10) -> IrreducibilityReport:
    expected = class_number_order(order.field, order.conductor)
    disc = discriminant(p)
    separable = disc != 0
    if not separable and p.degree > 1:
        return IrreducibilityReport(p.degree, expected, False, "reducible")
    if p.degree > 1 and p.monic and any(p(r) == 0 for r in _int_root_candidates(p)):
        return IrreducibilityReport(p.degree, expected, separable, "reducible")
    q, tried = 2, 0
    while tried < tries:
        if is_prime(q) and disc % q and p.leading % q:
            tried += 1
            if fp_is_irreducible(p.mod(q), q):
                return IrreducibilityReport(p.degree, expected, separable, "irreducible", q)
        q += 1
    return IrreducibilityReport(p.degree, expected, separable, "inconclusive")


def _int_root_candidates(p: IntPoly):
    c0 = abs(p.coeffs[0])
    if c0 == 0:
        return [0]
    if c0 > 10 ** 12:
        return []
    divs = [d for d in range(1, math.isqrt(c0) + 1) if c0 % d == 0]
    divs += [c0 // d for d in divs]
    return [s * d for d in set(divs) for s in (1, -1)]


# ---------------------------------------------------------------------------
# Siegel-Ramachandra invariants and the norm identity


def siegel_ramachandra_principal(order: OrderSpec, ctx: PrecisionCtx = DEFAULT_CTX):
    """g_f(C_0) for f = N O_K, from f = [N tau_K, N] and 1 = 0*(N tau_K)/N + 1*N/N."""
    N = order.conductor
    if N < 2:
        raise ValueError("conductor must be at least 2")
    with mpmath.workprec(ctx.working_bits):
        value = siegel(SiegelIndex(Fraction(0), Fraction(1, N)), order.field.tau_k, ctx) ** (12 * N)
    return value


def norm_orbit(order: OrderSpec) -> list[int]:
    """t representing <T, tI>/T, i.e. Gal(K_f/H_O) acting on the Siegel index [0, 1/N]."""
    field, N = order.field, order.conductor
    T = t_group(field, N)
    seen: set[frozenset] = set()
    out = []
    for t in range(1, N):
        if math.gcd(t, N) != 1:
            continue
        coset = frozenset(canonical_pm(Mat2(t, 0, 0, t) @ h, N) for h in T)
        if coset not in seen:
            seen.add(coset)
            out.append(t)
    return out


def _subset_terms(N: int):
    primes = sorted(factorize(N)[0])
    for mask in range(1 << len(primes)):
        ps = math.prod(p for i, p in enumerate(primes) if mask >> i & 1)
        yield N // ps, (-1) ** bin(mask).count("1")


@dataclass(frozen=True)
class NormIdentityReport:
    lhs: object
    rhs: object
    residual: float             # |LHS/RHS - 1|
    rhs_imag_residual: float    # |Im RHS| / |RHS|
    eta_form_residual: float    # RHS against its eta-only rewriting
    orbit: tuple[int, ...]


def verify_norm_identity(order: OrderSpec, ctx: PrecisionCtx = DEFAULT_CTX) -> NormIdentityReport:
    """Compare the norm of g_f(C_0) down to H_O with the Delta-quotient it equals."""
    N, tau = order.conductor, order.field.tau_k
    orbit = norm_orbit(order)
    primes = sorted(factorize(N)[0])
    nu = primes[0] if len(primes) == 1 else 1
    with mpmath.workprec(ctx.working_bits):
        lhs = mpmath.mpc(1)
        for t in orbit:
            lhs *= siegel(SiegelIndex(Fraction(0), Fraction(t, N)), tau, ctx) ** (12 * N)
        lhs = lhs ** min(2, N - 1)
        rhs = mpmath.mpf(nu) ** (12 * N)
        rhs_eta = mpmath.mpf(nu) ** (12 * N)
        for k, sign in _subset_terms(N):
            rhs *= delta(tau.scale(k), ctx) ** (sign * N)
            rhs_eta *= eta(tau.scale(k), ctx) ** (24 * sign * N)
        res = abs(lhs / rhs - 1)
        imag = abs(rhs.imag) / abs(rhs)
        eta_res = abs(rhs_eta / rhs - 1)
    return NormIdentityReport(lhs, rhs, float(res), float(imag), float(eta_res), tuple(orbit))


def unit_norm_residual(order: OrderSpec, ctx: PrecisionCtx = DEFAULT_CTX,
                       spec: EtaQuotientSpec | None = None) -> float:
    """| |prod of all conjugates| - 1 |, which vanishes when the invariant is a unit."""
    with mpmath.workprec(ctx.working_bits):
        prod = mpmath.mpc(1)
        for v in conjugates(order, ctx, spec):
            prod *= v
        return float(abs(abs(prod) - 1))
