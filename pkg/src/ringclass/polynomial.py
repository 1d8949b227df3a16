"""Dense integer polynomials, exact discriminants, and arithmetic over F_p."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients in ascending degree."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c or (len(c) == 1 and c[0] == 0):
            raise ValueError("zero polynomial")
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_descending(cls, coeffs: Sequence[int]) -> "IntPoly":
        return cls(tuple(reversed(coeffs)))

    @classmethod
    def from_roots(cls, roots: Sequence[int]) -> "IntPoly":
        c = [1]
        for r in roots:
            c = [(c[i - 1] if i else 0) - r * (c[i] if i < len(c) else 0)
                 for i in range(len(c) + 1)]
        return cls(tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def monic(self) -> bool:
        return self.coeffs[-1] == 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        if self.degree == 0:
            raise ValueError("derivative of a constant")
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def mod(self, p: int) -> list[int]:
        return trim([c % p for c in self.coeffs])

    def max_coeff(self) -> int:
        return max(abs(c) for c in self.coeffs)

    def __str__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = "X" if i == 1 else f"X^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not terms:
                terms.append(body if sign == "+" else f"-{body}")
            else:
                terms.append(f"{sign} {body}")
        return " ".join(terms)


def _bareiss_det(m: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    n = len(m)
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) as the Sylvester determinant."""
    m, n = f.degree, g.degree
    if m == 0:
        return f.leading ** n
    if n == 0:
        return g.leading ** m
    size = m + n
    fd = list(reversed(f.coeffs))
    gd = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def discriminant(f: IntPoly) -> int:
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    r = resultant(f, f.derivative())
    q, rem = divmod(r, f.leading)
    assert rem == 0
    return -q if (n * (n - 1) // 2) % 2 else q


# ---------------------------------------------------------------------------
# polynomials over F_p as ascending coefficient lists, [] is zero


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def fp_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                 for i in range(n)])


def fp_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def fp_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = a[:]
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] * inv % p
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] = (a[i + k] - c * y) % p
        trim(a)
    return trim(q), a


def fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, fp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def fp_powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = fp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = fp_divmod(fp_mul(result, base, p), mod, p)[1]
        base = fp_divmod(fp_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def fp_is_irreducible(f: list[int], p: int) -> bool:
    """Ben-Or test; f must have nonzero leading coefficient mod p."""
    n = len(f) - 1
    if n < 1:
        return False
    x = [0, 1]
    h = x
    for _ in range(n // 2):
        h = fp_powmod(h, p, f, p)
        if len(fp_gcd(f, fp_sub(h, x, p), p)) > 1:
            return False
    return True
