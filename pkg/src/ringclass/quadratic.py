"""Imaginary quadratic fields, orders of given conductor, and exact CM points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import mpmath


class InvalidDiscriminant(ValueError):
    pass


def factorize(n: int, bound: int | None = None) -> tuple[dict[int, int], int]:
    """Trial division of |n|.

    Returns ``(factors, cofactor)`` where ``cofactor`` is 1 when the
    factorisation is complete.  With ``bound`` set, primes above it are not
    tried and whatever is left is returned unfactored (it may be composite).
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    factors: dict[int, int] = {}
    p = 2
    while p * p <= n and (bound is None or p <= bound):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1 and (bound is None or p * p > n):
        factors[n] = factors.get(n, 0) + 1
        n = 1
    return factors, n


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for p in range(3, isqrt(n) + 1, 2):
        if n % p == 0:
            return False
    return True


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n)[0].values())


def is_fundamental(d: int) -> bool:
    if d == 0 or d == 1:
        return False
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


@dataclass(frozen=True)
class SurdPoint:
    """The complex number ``re + im*sqrt(radicand)*i`` with rational ``re``, ``im``.

    Kept exact so that Moebius images of CM points never lose the sign of
    the imaginary part.
    """

    re: Fraction
    im: Fraction
    radicand: int

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))
        if self.radicand <= 0:
            raise ValueError("radicand must be positive")
        if self.im <= 0:
            raise ValueError(f"{self} is not in the upper half-plane")

    def __str__(self):
        return f"{self.re} + {self.im}*sqrt(-{self.radicand})"

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im * self.radicand

    def mobius(self, a: int, b: int, c: int, d: int) -> "SurdPoint":
        """Image under ``[[a, b], [c, d]]``; the determinant must be positive."""
        det = a * d - b * c
        if det <= 0:
            raise ValueError("matrix must have positive determinant")
        x, y2 = self.re, self.abs2()
        denom = (c * x + d) ** 2 + c * c * self.im * self.im * self.radicand
        re = (a * c * y2 + (a * d + b * c) * x + b * d) / denom
        return SurdPoint(re, det * self.im / denom, self.radicand)

    def scale(self, k: int) -> "SurdPoint":
        return SurdPoint(k * self.re, k * self.im, self.radicand)

    def shift(self, n: int) -> "SurdPoint":
        return SurdPoint(self.re + n, self.im, self.radicand)

    def to_mpc(self):
        """Convert at the current mpmath working precision."""
        return mpmath.mpc(
            mpmath.mpf(self.re.numerator) / self.re.denominator,
            mpmath.sqrt(self.radicand) * self.im.numerator / self.im.denominator,
        )


@dataclass(frozen=True)
class QuadField:
    d_k: int
    tau_k: SurdPoint
    unit_count: int

    @property
    def min_poly_tau(self) -> tuple[int, int]:
        """``(b, c)`` with ``X^2 + b X + c`` the minimal polynomial of tau_K."""
        if self.d_k % 4 == 1:
            return 1, (1 - self.d_k) // 4
        return 0, -self.d_k // 4

    def __str__(self):
        return f"Q(sqrt({self.d_k}))" if self.d_k % 4 == 1 else f"Q(sqrt({self.d_k // 4}))"


def make_field(d: int) -> QuadField:
    if d >= 0:
        raise InvalidDiscriminant(f"{d} is not negative")
    if d % 4 not in (0, 1):
        raise InvalidDiscriminant(f"{d} is not 0 or 1 mod 4")
    if not is_fundamental(d):
        raise InvalidDiscriminant(f"{d} is not a fundamental discriminant")
    if d % 4 == 1:
        tau = SurdPoint(Fraction(-1, 2), Fraction(1, 2), -d)
    else:
        tau = SurdPoint(Fraction(0), Fraction(1, 2), -d)
    units = {-4: 4, -3: 6}.get(d, 2)
    return QuadField(d, tau, units)


@dataclass(frozen=True)
class OrderSpec:
    field: QuadField
    conductor: int
    prime_factorization: tuple[tuple[int, int], ...]

    @property
    def discriminant(self) -> int:
        return self.conductor ** 2 * self.field.d_k


def make_order(d: int | QuadField, conductor: int) -> OrderSpec:
    field = d if isinstance(d, QuadField) else make_field(d)
    if conductor < 1:
        raise ValueError("conductor must be positive")
    facs = tuple(sorted(factorize(conductor)[0].items()))
    return OrderSpec(field, conductor, facs)


def order_of_form_x2_ny2(n: int) -> OrderSpec:
    """The order Z[sqrt(-n)], written as (fundamental field, conductor)."""
    if n < 1:
        raise ValueError("n must be positive")
    disc = -4 * n
    facs, _ = factorize(disc)
    f = 1
    for p, e in facs.items():
        f *= p ** (e // 2)
    # the square part may overshoot by 2 when the squarefree kernel is not 1 mod 4
    while not is_fundamental(disc // (f * f)):
        f //= 2
    return make_order(disc // (f * f), f)


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for any integers a, n."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n) for odd n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def group_order_G(field: QuadField, p: int, r: int) -> int:
    """|(O_K/p^r)^x / (image of O_K^x)(image of Z^x)| by the closed formula."""
    num = 2 * p ** (r - 1) * (p - kronecker_symbol(field.d_k, p))
    assert num % field.unit_count == 0
    return num // field.unit_count


def enumerate_group_order_G(field: QuadField, p: int, r: int) -> int:
    """Same quantity as :func:`group_order_G`, by brute force over O_K/p^r.

    Elements are pairs ``(x, y)`` standing for ``x + y*tau_K``.
    """
    m = p ** r
    b, c = field.min_poly_tau

    def mul(u, v):
        x1, y1 = u
        x2, y2 = v
        yy = y1 * y2
        return ((x1 * x2 - c * yy) % m, (x1 * y2 + x2 * y1 - b * yy) % m)

    units = [(x, y) for x in range(m) for y in range(m)
             if gcd((x * x - b * x * y + c * y * y) % m, m) == 1]
    # generators of the image of O_K^x: -1, tau_K (d=-4) or -tau_K-ish (d=-3)
    gens = [(m - 1, 0)]
    if field.d_k == -4:
        gens.append((0, 1))
    elif field.d_k == -3:
        gens.append((1 % m, 1 % m))  # 1 + tau_K is a primitive 6th root of unity
    gens += [(t, 0) for t in range(1, m) if gcd(t, m) == 1]
    sub = {(1 % m, 0)}
    frontier = list(sub)
    while frontier:
        new = []
        for u in frontier:
            for g in gens:
                w = mul(u, g)
                if w not in sub:
                    sub.add(w)
                    new.append(w)
        frontier = new
    assert len(units) % len(sub) == 0
    return len(units) // len(sub)


@dataclass(frozen=True)
class HypothesisReport:
    holds: bool
    orders: tuple[tuple[int, int, int], ...]  # (p, r, |G|)


def hypothesis_holds(order: OrderSpec) -> HypothesisReport:
    if order.conductor < 2:
        raise ValueError("conductor must be at least 2")
    rows = tuple((p, r, group_order_G(order.field, p, r))
                 for p, r in order.prime_factorization)
    return HypothesisReport(all(g > 2 for _, _, g in rows), rows)


def prime_powers(limit: int) -> list[tuple[int, int]]:
    out = []
    for p in range(2, limit + 1):
        if is_prime(p):
            r, q = 1, p
            while q <= limit:
                out.append((p, r))
                r, q = r + 1, q * p
    return sorted(out, key=lambda pr: pr[0] ** pr[1])


def small_G_prime_powers(field: QuadField, limit: int = 50) -> list[int]:
    """Prime powers p^r <= limit with |G| <= 2, i.e. where the hypothesis fails."""
    return [p ** r for p, r in prime_powers(limit) if group_order_G(field, p, r) <= 2]


TABLE1_COLUMNS = ("Q(sqrt(-1))", "Q(sqrt(-3))", "1 mod 24", "9,17 mod 24",
                  "13 mod 24", "otherwise")

# reference classification cells, 2^2 written as 4
TABLE1_REFERENCE = {
    "Q(sqrt(-1))": [2, 4, 3, 5],
    "Q(sqrt(-3))": [2, 4, 3, 5, 7],
    "1 mod 24": [2, 4, 3],
    "9,17 mod 24": [2, 4],
    "13 mod 24": [2, 3],
    "otherwise": [2],
}


def table1_column(d: int) -> str:
    if d == -4:
        return "Q(sqrt(-1))"
    if d == -3:
        return "Q(sqrt(-3))"
    r = d % 24
    if r == 1:
        return "1 mod 24"
    if r in (9, 17):
        return "9,17 mod 24"
    if r == 13:
        return "13 mod 24"
    return "otherwise"


def fundamental_discriminants(bound: int) -> list[int]:
    return [d for d in range(-3, -bound - 1, -1) if is_fundamental(d)]


def reproduce_table1(disc_bound: int = 200, pr_bound: int = 50) -> dict[str, list[int]]:
    """Prime powers with |G| <= 2, collected per column of the classification.

    Each generic column is the union over all fundamental discriminants of
    that congruence class with |d_K| <= ``disc_bound``.
    """
    cells: dict[str, set[int]] = {col: set() for col in TABLE1_COLUMNS}
    for d in fundamental_discriminants(disc_bound):
        cells[table1_column(d)].update(small_G_prime_powers(make_field(d), pr_bound))
    return {col: sorted(v, key=table_order) for col, v in cells.items()}


def table1_by_residue(disc_bound: int = 200, pr_bound: int = 50) -> dict[int, set[frozenset]]:
    """For each residue of d_K mod 24, the distinct |G| <= 2 sets that occur."""
    out: dict[int, set[frozenset]] = {}
    for d in fundamental_discriminants(disc_bound):
        if d in (-3, -4):
            continue
        s = frozenset(small_G_prime_powers(make_field(d), pr_bound))
        out.setdefault(d % 24, set()).add(s)
    return out


def table_order(q: int):
    # the table lists powers of 2 first, then odd primes ascending
    return (0, q) if q & (q - 1) == 0 else (1, q)
