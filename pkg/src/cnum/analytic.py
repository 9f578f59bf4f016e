"""Analytic side of the congruent number curves E_n: n y^2 = x^3 - x.

Tunnell's ternary-form counts, twisted Hecke coefficients by point
counting, the central value (or first derivative) of L(E_n, s) by the
rapidly converging exponential series, the real period, the normalized
square root of the central value, a bounded rational point search and the
2-isogeny from A_n: 2n v^2 = u^3 + u.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import integrate, special

from .arith import factor_squarefree, is_probable_prime, primes_upto, root_number
from .errors import InvalidInput, NotPrime, SignMismatch, SingularInput

CURLY_L_TOLERANCE = 1e-5


# --- Tunnell -------------------------------------------------------------


def _count_ternary(m: int, a: int, c: int) -> int:
    """#{(x, y, z) in Z^3 : a x^2 + y^2 + c z^2 = m}."""
    if m < 0:
        return 0
    x = np.arange(-math.isqrt(m // a), math.isqrt(m // a) + 1, dtype=np.int64)
    z = np.arange(-math.isqrt(m // c), math.isqrt(m // c) + 1, dtype=np.int64)
    rest = m - a * x[:, None] ** 2 - c * z[None, :] ** 2
    rest = rest[rest >= 0]
    y = np.floor(np.sqrt(rest.astype(np.float64))).astype(np.int64)
    # guard against float rounding at perfect squares
    y = np.where((y + 1) ** 2 <= rest, y + 1, y)
    y = np.where(y**2 > rest, y - 1, y)
    square = y**2 == rest
    return int(np.sum(np.where(rest == 0, 1, 2)[square]))


def tunnell_counts(n: int) -> tuple[int, int]:
    """Lattice counts (A, B) for odd n, (C, D) for even n.

    odd:  A = #{n = 2x^2 + y^2 + 32z^2},   B = #{n = 2x^2 + y^2 + 8z^2}
    even: C = #{n/2 = 4x^2 + y^2 + 32z^2}, D = #{n/2 = 4x^2 + y^2 + 8z^2}
    """
    factor_squarefree(n)
    if n % 2:
        return _count_ternary(n, 2, 32), _count_ternary(n, 2, 8)
    m = n // 2
    return _count_ternary(m, 4, 32), _count_ternary(m, 4, 8)


def tunnell_nonvanishing(n: int) -> bool:
    """True when the counts prove L(E_n, 1) != 0 (so n is not congruent)."""
    first, second = tunnell_counts(n)
    return 2 * first != second


# --- coefficients --------------------------------------------------------


def _quadratic_character(p: int) -> np.ndarray:
    x = np.arange(p, dtype=np.int64)
    chi = -np.ones(p, dtype=np.int8)
    chi[(x * x) % p] = 1
    chi[0] = 0
    return chi


def count_points(p: int, n: int = 1) -> int:
    """#E_n(F_p) including the point at infinity, for p not dividing 2n."""
    x = np.arange(p, dtype=np.int64)
    f = (x * x % p * x - x) % p
    chi = _quadratic_character(p)
    return p + 1 + int(chi[(n % p) * f % p].sum())


def twisted_ap(n: int, p: int) -> int:
    """a_p(E_n) by direct point count; 0 at primes of bad reduction."""
    if p == 2 or n % p == 0:
        return 0
    return p + 1 - count_points(p, n)


def _two_squares(p: int) -> tuple[int, int]:
    """p = a^2 + b^2 for a prime p = 1 mod 4 (Cornacchia)."""
    c = 2
    while pow(c, (p - 1) // 2, p) != p - 1:
        c += 1
    r0, r1 = p, pow(c, (p - 1) // 4, p)
    limit = math.isqrt(p)
    while r1 > limit:
        r0, r1 = r1, r0 % r1
    a = r1
    b = math.isqrt(p - a * a)
    return a, b


def ap_coefficient(p: int) -> int:
    """a_p of y^2 = x^3 - x from the Gaussian integer decomposition of p."""
    if not is_probable_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2 or p % 4 == 3:
        return 0
    a, b = _two_squares(p)
    if a % 2 == 0:
        a, b = b, a
    # a odd, b even; sign fixed by a + b = 1 mod 4
    if (a + b) % 4 != 1:
        a = -a
    return 2 * a


def conductor(n: int) -> int:
    """Conductor of E_n for square-free n: 32 n^2 (n odd), 16 n^2 (n even)."""
    factor_squarefree(n)
    return 32 * n * n if n % 2 else 16 * n * n


def _spf(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in primes_upto(math.isqrt(limit)):
        block = spf[p * p :: p]
        block[block == 0] = p
    idx = np.arange(limit + 1)
    spf[spf == 0] = idx[spf == 0]
    return spf


def dirichlet_coefficients(n: int, limit: int) -> np.ndarray:
    """a_m(E_n) for 0 <= m <= limit (a_0 unused, set to 0)."""
    factor_squarefree(n)
    a = np.zeros(limit + 1, dtype=np.float64)
    if limit < 1:
        return a
    a[1] = 1.0
    spf = _spf(limit)
    ap = {int(p): twisted_ap(n, int(p)) for p in primes_upto(limit)}
    for m in range(2, limit + 1):
        p = int(spf[m])
        k, r = 0, m
        while r % p == 0:
            r //= p
            k += 1
        if r > 1:
            a[m] = a[r] * a[m // r]
            continue
        # prime power p^k
        if k == 1:
            a[m] = ap[p]
        elif (2 * n) % p == 0:
            a[m] = ap[p] * a[m // p]
        else:
            a[m] = ap[p] * a[m // p] - p * a[m // (p * p)]
    return a


# --- L-values ------------------------------------------------------------


def series_length(N: int, eps: float, t: float = 1.0) -> int:
    """Terms needed so the exponential tail of the series is below eps."""
    c = 2 * math.pi / (t * math.sqrt(N))
    # |a_m|/m <= 2 and E1(x) <= exp(-x) for x >= 1, so the tail is
    # bounded by a geometric series
    tail = lambda M: 4 * math.exp(-c * (M + 1)) / (1 - math.exp(-c))  # noqa: E731
    M = max(1000, math.ceil(8 * math.sqrt(N) * t))
    while tail(M) > eps:
        M = int(M * 1.25) + 1
    return M


def l_value(n: int, derivative_order: int = 0, eps: float = 1e-8) -> float:
    """L(E_n, 1) (order 0, root number +1) or L'(E_n, 1) (order 1, root number -1)."""
    factor_squarefree(n)
    sign = root_number(n)
    if derivative_order not in (0, 1):
        raise InvalidInput("derivative_order must be 0 or 1")
    if (derivative_order == 0) != (sign == 1):
        raise SignMismatch(
            f"root number of E_{n} is {sign:+d}; order {derivative_order} is identically 0"
        )
    N = conductor(n)
    M = series_length(N, eps)
    a = dirichlet_coefficients(n, M)
    m = np.arange(1, M + 1, dtype=np.float64)
    x = 2 * math.pi * m / math.sqrt(N)
    kernel = np.exp(-x) if derivative_order == 0 else special.exp1(x)
    return float(2 * np.sum(a[1:] / m * kernel))


def functional_equation_defect(n: int, t: float = 1.2, eps: float = 1e-10) -> float:
    """|L(E_n,1) via t - L(E_n,1) via t=1| using the conductor from ``conductor``.

    For any t > 0,
        L(1) = sum a_m/m (exp(-2 pi m t/sqrt N) + eps exp(-2 pi m/(t sqrt N)))
    only holds when N and the root number are right; a wrong conductor
    shows up as a nonzero defect.
    """
    return conductor_defect(n, conductor(n), t, eps)


def conductor_defect(n: int, N: int, t: float = 1.2, eps: float = 1e-10) -> float:
    sign = root_number(n)
    M = series_length(N, eps, max(t, 1 / t))
    a = dirichlet_coefficients(n, M)[1:]
    m = np.arange(1, M + 1, dtype=np.float64)
    s = math.sqrt(N)

    def L(tt: float) -> float:
        return float(np.sum(a / m * (np.exp(-2 * math.pi * m * tt / s)
                                     + sign * np.exp(-2 * math.pi * m / (tt * s)))))

    return abs(L(t) - L(1.0))


@lru_cache(maxsize=1)
def _base_period() -> float:
    # x = 1 + s^2 removes the endpoint singularity
    val, _ = integrate.quad(
        lambda s: 2.0 / math.sqrt((1 + s * s) * (2 + s * s)), 0, np.inf,
        epsabs=0, epsrel=1e-13, limit=200,
    )
    return 2.0 * val


def real_period(n: int) -> float:
    """Omega_{n,inf} = (2/sqrt n) * integral_1^inf dx / sqrt(x^3 - x)."""
    factor_squarefree(n)
    return _base_period() / math.sqrt(n)


def curly_L_rank0(n: int, eps: float = 1e-10) -> float:
    """sqrt(L(E_n,1) / (2^(2k-2-a) Omega_n)); an integer for n = 1, 2, 3 mod 8."""
    prof = factor_squarefree(n)
    if root_number(n) != 1:
        raise SignMismatch(f"{n} = {n % 8} mod 8 has root number -1")
    L = l_value(n, 0, eps)
    scale = 2.0 ** (2 * prof.k - 2 - prof.a) * real_period(n)
    return math.sqrt(max(L, 0.0) / scale)


def nearest_integer(x: float) -> tuple[int, float]:
    r = round(x)
    return int(r), abs(x - r)


# --- rational points -----------------------------------------------------

E_CURVE = "E_n"
A_CURVE = "A_n"


@dataclass(frozen=True)
class RationalPoint:
    x: Fraction
    y: Fraction
    curve: str
    n: int

    def on_curve(self) -> bool:
        if self.curve == E_CURVE:
            return self.n * self.y**2 == self.x**3 - self.x
        return 2 * self.n * self.y**2 == self.x**3 + self.x

    def __str__(self) -> str:
        return f"{self.x},{self.y}"


def _qr_table(m: int) -> np.ndarray:
    t = np.zeros(m, dtype=bool)
    t[(np.arange(m, dtype=np.int64) ** 2) % m] = True
    return t


_FILTER_MODULI = (64, 63, 65, 11, 17, 19, 23, 29, 31, 37)
_QR = {m: _qr_table(m) for m in _FILTER_MODULI}


def _square_candidates(coef: int, q: int, p: np.ndarray, plus: bool) -> np.ndarray:
    """Entries of p for which coef*q*p*(p^2 +- q^2) passes quadratic residue filters."""
    qq = q * q
    for m in _FILTER_MODULI:
        pm = p % m
        quad = (pm * pm + (qq if plus else -qq)) % m
        t = (coef * q % m) * pm % m * quad % m
        p = p[_QR[m][t]]
        if not p.size:
            break
    return p


def point_search(n: int, curve: str = E_CURVE, bound: int = 100) -> RationalPoint | None:
    """First non-torsion-looking point with x = p/q, 1 <= q <= bound, |p| <= bound.

    Candidates are visited by increasing q, then increasing |p| (positive p
    first).  Every returned point is verified exactly.
    """
    factor_squarefree(n)
    if curve not in (E_CURVE, A_CURVE):
        raise InvalidInput(f"unknown curve {curve!r}")
    coef = n if curve == E_CURVE else 2 * n
    plus = curve == A_CURVE
    allp = np.arange(1, bound + 1, dtype=np.int64)
    for q in range(1, bound + 1):
        if curve == E_CURVE:
            # need p (p^2 - q^2) > 0: p in (-q, 0) or p > q
            pos = allp[q:]
            neg = -allp[: q - 1]
        else:
            pos = allp
            neg = allp[:0]
        cands = []
        for arr in (pos, neg):
            if arr.size:
                cands.append(_square_candidates(coef, q, arr, plus))
        merged = sorted(
            (int(v) for c in cands for v in c), key=lambda v: (abs(v), v < 0)
        )
        for p in merged:
            if math.gcd(p, q) != 1:
                continue
            T = coef * q * p * (p * p + q * q if plus else p * p - q * q)
            r = math.isqrt(T)
            if r * r == T:
                pt = RationalPoint(Fraction(p, q), Fraction(r, coef * q * q), curve, n)
                assert pt.on_curve()
                return pt
    return None


def isogeny_phi(n: int, P: RationalPoint) -> RationalPoint:
    """phi_n(u, v) = ((u + 1/u)/2, v/(2u) * (u - 1/u)) from A_n to E_n."""
    u, v = Fraction(P.x), Fraction(P.y)
    if u == 0:
        raise SingularInput("u = 0 maps to the point at infinity")
    x = (u + 1 / u) / 2
    y = v / (2 * u) * (u - 1 / u)
    return RationalPoint(x, y, E_CURVE, n)


# --- report --------------------------------------------------------------


@dataclass
class AnalyticReport:
    n: int
    tunnell_counts: tuple[int, int]
    l_value: float
    omega: float
    curlyL: float | None = None
    rho_known: int | None = None
    regulator_known: float | None = None


def analytic_report(n: int, eps: float = 1e-8) -> AnalyticReport:
    sign = root_number(n)
    counts = tunnell_counts(n)
    omega = real_period(n)
    if sign == 1:
        L = l_value(n, 0, eps)
        curly = curly_L_rank0(n, eps)
        return AnalyticReport(n, counts, L, omega, curly)
    return AnalyticReport(n, counts, l_value(n, 1, eps), omega)
