"""Deciding and solving p = x^2 + n y^2 with a ring class polynomial."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .polynomial import IntPoly, discriminant, fp_gcd, fp_powmod, fp_sub
from .quadratic import is_prime, kronecker_symbol

SCAN_LIMIT = 1 << 20
BRUTE_FORCE_LIMIT = 10 ** 7


def roots_mod_p(f: IntPoly, p: int) -> list[int]:
    """All x in [0, p) with f(x) = 0 mod p."""
    coeffs = f.mod(p)
    if not coeffs:
        return list(range(p))
    if p >= SCAN_LIMIT:
        # only scan when X^p - X and f share a factor
        xp = fp_powmod([0, 1], p, coeffs, p)
        if len(fp_gcd(coeffs, fp_sub(xp, [0, 1], p), p)) <= 1:
            return []
        return [x for x in range(p) if f(x) % p == 0]
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * xs + c) % p
    return np.flatnonzero(acc == 0).tolist()


def _sqrt_mod(a: int, p: int) -> int | None:
    """A square root of a mod the odd prime p (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def _exact_sqrt(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def brute_force_represents(p: int, n: int) -> tuple[int, int] | None:
    """Exhaustive search for x^2 + n y^2 = p with x, y >= 0."""
    if p >= BRUTE_FORCE_LIMIT:
        raise ValueError(f"p = {p} is beyond the brute-force range")
    y = 0
    while n * y * y <= p:
        x = _exact_sqrt(p - n * y * y)
        if x is not None:
            return x, y
        y += 1
    return None


def cornacchia(p: int, n: int) -> tuple[int, int] | None:
    """Solve x^2 + n y^2 = p for an odd prime p not dividing n."""
    r = _sqrt_mod(-n, p)
    if r is None:
        return None
    if 2 * r < p:
        r = p - r
    a, b = p, r
    while b * b >= p:
        a, b = b, a % b
    rest = p - b * b
    if rest % n == 0:
        y = _exact_sqrt(rest // n)
        if y is not None:
            return b, y
    if p < 10 ** 6:
        return brute_force_represents(p, n)
    return None


class Outcome(enum.Enum):
    YES = "yes"
    NO = "no"
    NOT_APPLICABLE = "criterion not applicable"


@dataclass(frozen=True)
class RepresentationProblem:
    n: int
    p: int
    f_n: IntPoly
    disc: int | None = None

    @property
    def f_disc(self) -> int:
        return discriminant(self.f_n) if self.disc is None else self.disc

    def blocker(self) -> str | None:
        """Why the polynomial criterion does not apply, or None."""
        if self.p == 2 or not is_prime(self.p):
            return "p is not an odd prime"
        if self.n % self.p == 0:
            return "p | n"
        if self.f_disc % self.p == 0:
            return "p | disc(f_n)"
        return None


@dataclass(frozen=True)
class Decision:
    outcome: Outcome
    witness: tuple[int, int] | None = None
    reason: str = ""

    def __str__(self):
        if self.outcome is Outcome.YES:
            x, y = self.witness
            return f"yes x={x} y={y}"
        if self.outcome is Outcome.NOT_APPLICABLE:
            return f"criterion not applicable ({self.reason})"
        return f"no ({self.reason})" if self.reason else "no"


def represents(problem: RepresentationProblem) -> Decision:
    """p = x^2 + n y^2 iff (-n/p) = 1 and f_n has a root mod p."""
    why = problem.blocker()
    if why:
        return Decision(Outcome.NOT_APPLICABLE, reason=why)
    n, p = problem.n, problem.p
    if kronecker_symbol(-n, p) != 1:
        return Decision(Outcome.NO, reason="(-n/p) != 1")
    if not roots_mod_p(problem.f_n, p):
        return Decision(Outcome.NO, reason="f_n has no root mod p")
    w = cornacchia(p, n)
    if w is None or w[0] ** 2 + n * w[1] ** 2 != p:
        raise AssertionError(f"criterion says {p} = x^2 + {n} y^2 but no witness was found")
    return Decision(Outcome.YES, w)


@dataclass(frozen=True)
class SweepRow:
    p: int
    decision: Decision
    brute: tuple[int, int] | None
    congruence_only: bool

    @property
    def agrees(self) -> bool:
        if self.decision.outcome is Outcome.NOT_APPLICABLE:
            return True
        return (self.decision.outcome is Outcome.YES) == (self.brute is not None)


def sweep(n: int, f_n: IntPoly, bound: int) -> list[SweepRow]:
    """Criterion against brute force for every odd prime p < bound."""
    disc = discriminant(f_n)
    rows = []
    for p in range(3, bound, 2):
        if not is_prime(p):
            continue
        d = represents(RepresentationProblem(n, p, f_n, disc))
        rows.append(SweepRow(p, d, brute_force_represents(p, n),
                             n % p != 0 and kronecker_symbol(-n, p) == 1))
    return rows
