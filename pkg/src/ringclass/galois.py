"""Matrix description of Gal(H_O/K) and binary quadratic form class groups.

Galois elements are 2x2 matrices over Z/N.  A conjugate of a value h(tau_K),
with h a modular function on Gamma_0(N) with rational q-expansion, is
h(alpha(tau_Q)) where alpha is an SL2(Z) lift of the SL2 part of
gamma * beta_Q and tau_Q is the CM point of a form class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .quadratic import QuadField, SurdPoint


@dataclass(frozen=True)
class Mat2:
    a: int
    b: int
    c: int
    d: int

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d))

    def __matmul__(self, other: "Mat2") -> "Mat2":
        a, b, c, d = self
        e, f, g, h = other
        return Mat2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def mod(self, n: int) -> "Mat2":
        return Mat2(self.a % n, self.b % n, self.c % n, self.d % n)

    def act(self, z: SurdPoint) -> SurdPoint:
        return z.mobius(self.a, self.b, self.c, self.d)

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = Mat2(1, 0, 0, 1)


def diag(d: int) -> Mat2:
    return Mat2(1, 0, 0, d)


def canonical_pm(m: Mat2, n: int) -> Mat2:
    """Representative of the class of m in GL2(Z/n)/{+-1}."""
    m1, m2 = m.mod(n), (-m).mod(n)
    return min(m1, m2, key=tuple)


def w_group(field: QuadField, N: int) -> list[Mat2]:
    """All [[t - b s, -c s], [s, t]] in GL2(Z/N), X^2 + bX + c = min(tau_K)."""
    b, c = field.min_poly_tau
    out = []
    for t in range(N):
        for s in range(N):
            m = Mat2(t - b * s, -c * s, s, t).mod(N)
            if gcd(m.det, N) == 1:
                out.append(m)
    return out


def w_parameters(m: Mat2, N: int) -> tuple[int, int]:
    """The (t, s) of an element of W_{K,N}."""
    return m.d % N, m.c % N


def t_group(field: QuadField, N: int) -> set[Mat2]:
    """Kernel of W_{K,N} -> Gal(K_f/H_K), as classes mod +-I."""
    if field.d_k == -4:
        gen = Mat2(0, -1, 1, 0)
    elif field.d_k == -3:
        gen = Mat2(1, 1, -1, 0)
    else:
        gen = -IDENTITY
    group = {canonical_pm(IDENTITY, N)}
    g = gen.mod(N)
    while canonical_pm(g, N) not in group:
        group.add(canonical_pm(g, N))
        g = (g @ gen).mod(N)
    return group


def scalar_subgroup(field: QuadField, N: int) -> set[Mat2]:
    """<T_{K,N}, t I : t in (Z/N)^x>, as classes mod +-I."""
    units = [t for t in range(1, N) if gcd(t, N) == 1]
    return {canonical_pm(Mat2(t, 0, 0, t) @ h, N) for t in units for h in t_group(field, N)}


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _centered(x: int, n: int) -> int:
    x %= n
    return x - n if x > n // 2 else x


def sl2_lift(m: Mat2, N: int) -> Mat2:
    """A matrix in SL2(Z) congruent to m mod N; m must have det 1 mod N."""
    if m.det % N != 1 % N:
        raise ValueError(f"{m} does not have determinant 1 mod {N}")
    if m.det == 1:
        return m
    a_t, b_t = m.a % N, m.b % N
    c, d = _centered(m.c, N), _centered(m.d, N)
    if c == 0 and d != 1:
        c = N
    k = 0
    while True:
        for dd in ((d + k * N, d - k * N) if k else (d,)):
            if gcd(c, dd) == 1:
                break
        else:
            k += 1
            continue
        d = dd
        break
    g, x, y = _egcd(c, d)  # x c + y d = g = +-1
    x, y = x * g, y * g
    a0, b0 = y, -x
    k = (a_t - a0) * x + (b_t - b0) * y
    k = _centered(k, N)
    lift = Mat2(a0 + k * c, b0 + k * d, c, d)
    assert lift.det == 1 and lift.mod(N) == m.mod(N)
    return lift


@dataclass(frozen=True)
class BinaryQF:
    a: int
    b: int
    c: int

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def is_reduced(self) -> bool:
        a, b, c = self
        return abs(b) <= a <= c and (b >= 0 if abs(b) == a or a == c else True)

    def transform(self, s: Mat2) -> "BinaryQF":
        """The form (X, Y) -> Q(x X + u Y, y X + v Y) for s = [[x, u], [y, v]]."""
        x, u, y, v = s
        a, b, c = self
        return BinaryQF(self(x, y), 2 * a * x * u + b * (x * v + u * y) + 2 * c * y * v,
                        self(u, v))

    def root(self) -> SurdPoint:
        """(-b + sqrt(D)) / 2a, the root of Q(tau, 1) in the upper half-plane."""
        return SurdPoint(Fraction(-self.b, 2 * self.a), Fraction(1, 2 * self.a),
                         -self.discriminant)

    def __str__(self):
        return f"{self.a} {self.b} {self.c}"


def reduced_forms(D: int) -> list[BinaryQF]:
    """Reduced primitive positive definite forms of discriminant D, sorted by (a, b)."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            q = BinaryQF(a, b, c)
            if c >= a and q.is_reduced() and gcd(gcd(a, b), c) == 1:
                out.append(q)
        a += 1
    return sorted(out, key=lambda q: (q.a, q.b))


def class_number_order(field: QuadField, N: int) -> int:
    return len(reduced_forms(N * N * field.d_k))


def _coprime_form(q: BinaryQF, N: int) -> BinaryQF:
    """A form equivalent to q whose leading coefficient is prime to N."""
    if gcd(q.a, N) == 1:
        return q
    bound = 1
    while True:
        for x in range(-bound, bound + 1):
            for y in (bound, -bound) if abs(x) < bound else range(-bound, bound + 1):
                if gcd(x, y) != 1 or gcd(q(x, y), N) != 1:
                    continue
                g, s, t = _egcd(x, y)  # s x + t y = g = +-1
                s, t = s * g, t * g
                return q.transform(Mat2(x, -t, y, s))
        bound += 1


def form_to_datum(q: BinaryQF, field: QuadField) -> tuple[SurdPoint, Mat2]:
    """``(tau_Q, beta_Q)`` with beta_Q = [[a, (b - B)/2], [0, 1]], so beta_Q(tau_Q) = tau_K."""
    if q.discriminant != field.d_k:
        raise ValueError(f"form {q} does not have discriminant {field.d_k}")
    B = field.d_k % 2
    beta = Mat2(q.a, (q.b - B) // 2, 0, 1)
    tau = q.root()
    assert beta.act(tau) == field.tau_k
    return tau, beta


@dataclass(frozen=True)
class GaloisDatum:
    diag_d: int
    sl2_part: Mat2        # reduced mod N
    sl2_lift: Mat2        # in SL2(Z)
    eval_point: SurdPoint
    matrix: Mat2          # the full element gamma * beta_Q of GL2(Z/N)
    form: BinaryQF | None = None

    @property
    def point(self) -> SurdPoint:
        """Where the conjugate is evaluated: sl2_lift applied to eval_point."""
        return self.sl2_lift.act(self.eval_point)


def decompose(m: Mat2, N: int, point: SurdPoint, form=None) -> GaloisDatum:
    """Write m = diag(1, det m) * (SL2 part) and lift the SL2 part."""
    d = m.det % N
    d_inv = pow(d, -1, N)
    sl2 = (diag(d_inv) @ m).mod(N)
    return GaloisDatum(d, sl2, sl2_lift(sl2, N), point, m.mod(N), form)


def coset_reps(field: QuadField, N: int, reverse: bool = False) -> list[GaloisDatum]:
    """Representatives of W_{K,N} / <T_{K,N}, scalars>, i.e. Gal(H_O/H_K).

    Each coset is represented by its element with lexicographically smallest
    ``(t, s)`` (largest if ``reverse``).
    """
    if N < 2:
        raise ValueError("conductor must be at least 2")
    sub = scalar_subgroup(field, N)
    elems = sorted(w_group(field, N), key=lambda m: w_parameters(m, N), reverse=reverse)
    seen: set[Mat2] = set()
    reps = []
    for m in elems:
        if canonical_pm(m, N) in seen:
            continue
        reps.append(m)
        seen.update(canonical_pm(m @ h, N) for h in sub)
    return [decompose(m, N, field.tau_k) for m in reps]


def conjugate_data(field: QuadField, N: int, reverse: bool = False) -> list[GaloisDatum]:
    """All conjugates over K: coset representatives times the form classes of d_K."""
    out = []
    reps = coset_reps(field, N, reverse)
    for q in reduced_forms(field.d_k):
        tau_q, beta = form_to_datum(_coprime_form(q, N), field)
        for rep in reps:
            out.append(decompose(rep.matrix @ beta, N, tau_q, q))
    return out

