"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Scalars live in Q(zeta_N) represented as Q[x]/Phi_N(x) with integer
coefficient vectors over a common denominator, so every operation is
exact and there is never a floating-point tolerance anywhere downstream.

The intended use is N = 4*p: zeta = zeta_N is a primitive N-th root of
unity, q = zeta^2 is a primitive 2p-th root of unity, and zeta itself
serves as the square root of q that the half-integer q-numbers and the
kappa-type group-like functionals need.

q-combinatorics here is *balanced*: [n] = (q^n - q^-n)/(q - q^-1),
extended to half-integer n via zeta.  Binomials are computed with a
division-free Pascal recursion so they stay well-defined at roots of
unity where the naive factorial quotient would divide by zero.  The
one-sided Gaussian variant is kept around for cross-checks and for the
deliberately-wrong mutation fixtures.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

__all__ = [
    "cyclotomic_polynomial",
    "QContext",
    "Cyc",
    "HalfInt",
]

# A half-integer exponent: plain int, or a Fraction with denominator 1 or 2.
HalfInt = Union[int, Fraction]


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (den monic); raises if inexact."""
    num = list(num)
    dn = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    out = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        out[k - dn] = c
        if c:
            for i, d in enumerate(den):
                num[k - dn + i] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


def cyclotomic_polynomial(n: int) -> list[int]:
    """Coefficient vector (ascending) of the n-th cyclotomic polynomial.

    Computed by recursive exact division: Phi_n = (x^n - 1) / prod of
    Phi_d over proper divisors d of n.  Integer arithmetic throughout.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return [-1, 1]
    poly = [0] * (n + 1)
    poly[0], poly[n] = -1, 1  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide_exact(poly, cyclotomic_polynomial(d))
    return poly


def _content(coeffs: Iterable[int], den: int) -> int:
    g = den
    for c in coeffs:
        if c:
            g = gcd(g, c)
            if g == 1:
                return 1
    return g


class QContext:
    """Everything fixed by the root-of-unity order: N = 4p, Phi_N, caches.

    A context owns the reduction rows for x^k mod Phi_N and memo tables
    for powers of zeta/q, inverses, q-integers and q-binomials.  Scalars
    (Cyc) carry a reference to their context; mixing contexts is an error.
    """

    __slots__ = (
        "p", "order", "phi", "poly", "_red_rows", "zero", "one",
        "_zeta_pows", "_inv_cache", "_qint_cache", "_qbin_cache",
        "_qbin1_cache", "_qfac_cache", "q", "q_inv", "zeta", "qdiff",
        "qdiff_inv",
    )

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("p must be >= 2")
        self.p = p
        self.order = 4 * p
        self.poly = cyclotomic_polynomial(self.order)
        self.phi = len(self.poly) - 1
        # x^(phi+k) mod Phi_N for k = 0 .. phi-2, as integer rows.
        rows: list[tuple[int, ...]] = []
        base = [-c for c in self.poly[:-1]]
        rows.append(tuple(base))
        for _ in range(self.phi - 2):
            prev = rows[-1]
            shifted = [0] + list(prev[:-1])
            top = prev[-1]
            if top:
                for i in range(self.phi):
                    shifted[i] += top * base[i]
            rows.append(tuple(shifted))
        self._red_rows = tuple(rows)
        self.zero = Cyc(self, (0,) * self.phi, 1, _normalized=True)
        one = [0] * self.phi
        one[0] = 1
        self.one = Cyc(self, tuple(one), 1, _normalized=True)
        self._zeta_pows: dict[int, Cyc] = {}
        self._inv_cache: dict[tuple[tuple[int, ...], int], Cyc] = {}
        self._qint_cache: dict[Fraction, Cyc] = {}
        self._qbin_cache: dict[tuple[int, int], Cyc] = {}
        self._qbin1_cache: dict[tuple[int, int], Cyc] = {}
        self._qfac_cache: dict[int, Cyc] = {}
        self.zeta = self.zeta_pow(1)
        self.q = self.zeta_pow(2)
        self.q_inv = self.zeta_pow(-2)
        self.qdiff = self.q - self.q_inv          # q - q^-1
        self.qdiff_inv = self.qdiff.inv()

    def __repr__(self) -> str:
        return f"QContext(p={self.p}, N={self.order})"

    def rational(self, value: Union[int, Fraction]) -> Cyc:
        fr = Fraction(value)
        c = [0] * self.phi
        c[0] = fr.numerator
        return Cyc(self, tuple(c), fr.denominator)

    def zeta_pow(self, j: int) -> Cyc:
        """zeta^j, i.e. q^(j/2); j is reduced mod N."""
        j %= self.order
        hit = self._zeta_pows.get(j)
        if hit is not None:
            return hit
        phi = self.phi
        if j < phi:
            c = [0] * phi
            c[j] = 1
            out = Cyc(self, tuple(c), 1, _normalized=True)
        else:
            out = self.zeta_pow(j - phi + 1) * self.zeta_pow(phi - 1)
        self._zeta_pows[j] = out
        return out

    def q_pow(self, j: int) -> Cyc:
        return self.zeta_pow(2 * j)

    def q_half_pow(self, j2: int) -> Cyc:
        """q^(j2/2) for integer j2 (exponent counted in half units)."""
        return self.zeta_pow(j2)

    def q_int(self, n: HalfInt) -> Cyc:
        """Balanced q-number [n] = (q^n - q^-n)/(q - q^-1); n may be a
        half-integer (denominator 2), resolved through zeta = q^(1/2)."""
        fr = Fraction(n)
        if fr.denominator not in (1, 2):
            raise ValueError("q_int argument must be integer or half-integer")
        hit = self._qint_cache.get(fr)
        if hit is not None:
            return hit
        t = int(fr * 2)  # 2n, always an integer
        val = (self.zeta_pow(t) - self.zeta_pow(-t)) * self.qdiff_inv
        self._qint_cache[fr] = val
        return val

    def q_factorial(self, n: int) -> Cyc:
        """[n]! = [1][2]...[n] (balanced); division-free."""
        if n < 0:
            raise ValueError("q_factorial of negative n")
        hit = self._qfac_cache.get(n)
        if hit is not None:
            return hit
        val = self.one if n == 0 else self.q_factorial(n - 1) * self.q_int(n)
        self._qfac_cache[n] = val
        return val

    def q_binomial(self, n: int, k: int) -> Cyc:
        """Balanced q-binomial via the division-free Pascal recursion

            [n,k] = q^(k-n) [n-1,k-1] + q^k [n-1,k]

        which agrees with [n]!/([k]![n-k]!) whenever that quotient is
        defined, but stays well-defined at roots of unity.
        """
        if k < 0 or k > n:
            return self.zero
        if k == 0 or k == n:
            return self.one
        key = (n, k)
        hit = self._qbin_cache.get(key)
        if hit is not None:
            return hit
        val = self.q_pow(k - n) * self.q_binomial(n - 1, k - 1) \
            + self.q_pow(k) * self.q_binomial(n - 1, k)
        self._qbin_cache[key] = val
        return val

    def q_binomial_onesided(self, n: int, k: int) -> Cyc:
        """One-sided Gaussian binomial (base q), Pascal form

            C[n,k] = C[n-1,k-1] + q^k C[n-1,k].

        Not what the double constructions use; kept for convention
        cross-checks and mutation fixtures.
        """
        if k < 0 or k > n:
            return self.zero
        if k == 0 or k == n:
            return self.one
        key = (n, k)
        hit = self._qbin1_cache.get(key)
        if hit is not None:
            return hit
        val = self.q_binomial_onesided(n - 1, k - 1) \
            + self.q_pow(k) * self.q_binomial_onesided(n - 1, k)
        self._qbin1_cache[key] = val
        return val


class Cyc:
    """An element of Q(zeta_N): integer coefficient tuple over a common
    positive denominator, always in normalized (content-free) form."""

    __slots__ = ("ctx", "c", "d")

    def __init__(self, ctx: QContext, coeffs: Sequence[int], den: int = 1,
                 _normalized: bool = False):
        if not _normalized:
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            if den < 0:
                den = -den
                coeffs = [-x for x in coeffs]
            g = _content(coeffs, den)
            if g > 1:
                coeffs = [x // g for x in coeffs]
                den //= g
            coeffs = tuple(coeffs)
        self.ctx = ctx
        self.c = tuple(coeffs)
        self.d = den

    # -- ring operations -------------------------------------------------

    def __add__(self, other: Cyc) -> Cyc:
        da, db = self.d, other.d
        if da == db:
            return Cyc(self.ctx, [x + y for x, y in zip(self.c, other.c)], da)
        return Cyc(self.ctx,
                   [x * db + y * da for x, y in zip(self.c, other.c)],
                   da * db)

    def __sub__(self, other: Cyc) -> Cyc:
        da, db = self.d, other.d
        if da == db:
            return Cyc(self.ctx, [x - y for x, y in zip(self.c, other.c)], da)
        return Cyc(self.ctx,
                   [x * db - y * da for x, y in zip(self.c, other.c)],
                   da * db)

    def __neg__(self) -> Cyc:
        return Cyc(self.ctx, tuple(-x for x in self.c), self.d,
                   _normalized=True)

    def __mul__(self, other: Cyc) -> Cyc:
        ctx = self.ctx
        phi = ctx.phi
        a, b = self.c, other.c
        prod = [0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        out = prod[:phi]
        rows = ctx._red_rows
        for k in range(phi, 2 * phi - 1):
            pk = prod[k]
            if pk:
                row = rows[k - phi]
                for i in range(phi):
                    ri = row[i]
                    if ri:
                        out[i] += pk * ri
        return Cyc(ctx, out, self.d * other.d)

    def inv(self) -> Cyc:
        """Multiplicative inverse via the extended Euclidean algorithm in
        Q[x] against Phi_N (cached per context)."""
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        key = (self.c, self.d)
        cache = self.ctx._inv_cache
        hit = cache.get(key)
        if hit is not None:
            return hit
        out = self._inv_uncached()
        cache[key] = out
        return out

    def _inv_uncached(self) -> Cyc:
        ctx = self.ctx
        # Extended Euclid over Q[x]: find u with u*a = 1 mod Phi_N.
        a = [Fraction(x, self.d) for x in self.c]
        b = [Fraction(x) for x in ctx.poly]
        # Invariant: r0 = s0*a mod Phi, r1 = s1*a mod Phi.
        r0, s0 = b, [Fraction(0)]
        r1, s1 = list(a), [Fraction(1)]
        while True:
            while r1 and not r1[-1]:
                r1.pop()
            if not r1:
                raise ZeroDivisionError("not invertible (reducible modulus?)")
            if len(r1) == 1:
                c = r1[0]
                coeffs = [x / c for x in s1]
                break
            q_poly, rem = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s_new = _frac_poly_sub(s0, _frac_poly_mul(q_poly, s1))
            s0, s1 = s1, s_new
        coeffs = coeffs[:ctx.phi] + [Fraction(0)] * max(0, ctx.phi - len(coeffs))
        den = 1
        for fr in coeffs:
            den = den * fr.denominator // gcd(den, fr.denominator)
        ints = [int(fr * den) for fr in coeffs]
        out = Cyc(ctx, ints, den)
        # Exactness guard: u * a must be exactly 1.
        if out * self != ctx.one:
            raise ArithmeticError("inverse verification failed")
        return out

    def __pow__(self, n: int) -> Cyc:
        if n < 0:
            return self.inv() ** (-n)
        out = self.ctx.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates / conversions ----------------------------------------

    def __bool__(self) -> bool:
        return any(self.c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Cyc):
            return self.c == other.c and self.d == other.d
        if isinstance(other, (int, Fraction)):
            return self == self.ctx.rational(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.c, self.d))

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational scalar")
        return Fraction(self.c[0], self.d)

    def to_fractions(self) -> list[Fraction]:
        return [Fraction(x, self.d) for x in self.c]

    # -- rendering --------------------------------------------------------

    def __repr__(self) -> str:
        return f"Cyc({self})"

    def __str__(self) -> str:
        return render_scalar(self)


def _frac_poly_divmod(num: list[Fraction],
                      den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    num = list(num)
    while num and not num[-1]:
        num.pop()
    dn = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dn:
        return [Fraction(0)], num
    out = [Fraction(0)] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k] / lead
        out[k - dn] = c
        if c:
            for i, d in enumerate(den):
                num[k - dn + i] -= c * d
    rem = num[:dn]
    while rem and not rem[-1]:
        rem.pop()
    return out, rem


def _frac_poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _frac_poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _render_coeff(fr: Fraction, *, lead: bool) -> tuple[str, str]:
    sign = "-" if fr < 0 else ("" if lead else "+")
    mag = -fr if fr < 0 else fr
    body = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
    return sign, body


def render_scalar(x: Cyc) -> str:
    """Deterministic human-readable form: a Q-combination of q-powers.

    zeta^j is printed as q^(j/2) for odd j and q^(j//2) for even j, so
    the output reads in terms of q wherever possible.
    """
    if not x:
        return "0"
    parts: list[str] = []
    for j, cj in enumerate(x.c):
        if not cj:
            continue
        fr = Fraction(cj, x.d)
        sign, body = _render_coeff(fr, lead=not parts)
        if j == 0:
            term = body
        else:
            if j % 2 == 0:
                e = j // 2
                qp = "q" if e == 1 else f"q^{e}"
            else:
                qp = f"q^({j}/2)"
            term = qp if body == "1" else f"{body}*{qp}"
        parts.append(sign + term if not parts else f" {sign} {term}")
    return "".join(parts)
