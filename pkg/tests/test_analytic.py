import math
import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.special import gamma

from cnum.analytic import (
    A_CURVE,
    E_CURVE,
    RationalPoint,
    analytic_report,
    ap_coefficient,
    conductor,
    conductor_defect,
    count_points,
    curly_L_rank0,
    dirichlet_coefficients,
    functional_equation_defect,
    isogeny_phi,
    l_value,
    nearest_integer,
    point_search,
    real_period,
    tunnell_counts,
    tunnell_nonvanishing,
    twisted_ap,
)
from cnum.arith import factorize, primes_upto, squarefree_mask
from cnum.errors import NotPrime, NotSquarefree, SignMismatch, SingularInput
from cnum.parity import theorem1_parity


def ternary_count_loop(m, a, c):
    count = 0
    X, Z = math.isqrt(m // a), math.isqrt(m // c)
    for x in range(-X, X + 1):
        for z in range(-Z, Z + 1):
            rest = m - a * x * x - c * z * z
            for y in range(-math.isqrt(max(rest, 0)), math.isqrt(max(rest, 0)) + 1):
                if y * y == rest:
                    count += 1
    return count


def brute_point_count(p, n=1):
    count = 1
    for x in range(p):
        for y in range(p):
            if (n * y * y - (x**3 - x)) % p == 0:
                count += 1
    return count


def squarefree_upto(n):
    return [i + 1 for i, ok in enumerate(squarefree_mask(1, n).tolist()) if ok]


@pytest.mark.parametrize("n,counts", [(1, (2, 2)), (5, (0, 0)), (2, (2, 2))])
def test_tunnell_examples(n, counts):
    assert tunnell_counts(n) == counts


def test_tunnell_nonvanishing_examples():
    assert tunnell_nonvanishing(1) is True
    assert tunnell_nonvanishing(5) is False
    assert tunnell_nonvanishing(2) is True


def test_tunnell_counts_match_loops():
    for n in squarefree_upto(400):
        if n % 2:
            expect = (ternary_count_loop(n, 2, 32), ternary_count_loop(n, 2, 8))
        else:
            expect = (ternary_count_loop(n // 2, 4, 32), ternary_count_loop(n // 2, 4, 8))
        assert tunnell_counts(n) == expect, n


def test_tunnell_rejects_non_squarefree():
    with pytest.raises(NotSquarefree):
        tunnell_counts(8)


@pytest.mark.parametrize("p", [3, 5, 13])
def test_ap_examples(p):
    assert ap_coefficient(p) == p + 1 - brute_point_count(p)


def test_ap_rejects_composite():
    with pytest.raises(NotPrime):
        ap_coefficient(15)


def test_ap_matches_point_count_up_to_2000():
    for p in primes_upto(2000).tolist()[1:]:
        assert ap_coefficient(p) == p + 1 - count_points(p), p


def test_count_points_matches_double_loop():
    for p in (3, 5, 7, 11, 13, 17):
        for n in (1, 2, 3, 5, 6):
            if n % p:
                assert count_points(p, n) == brute_point_count(p, n)


def test_twisted_coefficients_are_multiplicative():
    a = dirichlet_coefficients(15, 400)
    assert a[1] == 1
    for m in range(2, 400):
        fac = factorize(m)
        if len(fac) > 1:
            p, e = next(iter(fac.items()))
            q = p**e
            assert a[m] == a[q] * a[m // q]
    # bad primes vanish
    assert a[2] == a[3] == a[5] == a[9] == 0
    # Hecke relation at a good prime
    assert a[49] == twisted_ap(15, 7) ** 2 - 7


def test_conductor_is_self_consistent():
    for n in (1, 2, 3, 5, 6, 7, 10, 11, 14, 15, 21, 34):
        N = conductor(n)
        assert functional_equation_defect(n) < 1e-9
        # wrong levels break the functional equation
        assert conductor_defect(n, 2 * N) > 1e-5
        assert conductor_defect(n, N // 2) > 1e-5


def test_period_closed_form():
    closed = gamma(0.25) ** 2 / math.sqrt(2 * math.pi)
    assert real_period(1) == pytest.approx(closed, rel=1e-10)
    assert real_period(1) == pytest.approx(5.2441151086, abs=1e-9)


def test_period_scaling():
    for n in squarefree_upto(500):
        assert real_period(n) * math.sqrt(n) == pytest.approx(real_period(1), rel=1e-9)
    with pytest.raises(NotSquarefree):
        real_period(4)


def test_l_value_examples():
    v1 = l_value(1, 0, 1e-8)
    assert abs(8 * v1 / real_period(1) - 1) < 1e-6
    v3 = l_value(3, 0, 1e-8)
    a, b = tunnell_counts(3)
    assert v3 != 0 and 2 * a != b
    assert l_value(5, 1, 1e-6) > 0


def test_l_value_sign_mismatch():
    with pytest.raises(SignMismatch):
        l_value(5, 0)
    with pytest.raises(SignMismatch):
        l_value(3, 1)


def test_curly_L_examples():
    assert curly_L_rank0(1) == pytest.approx(1, abs=1e-6)
    r3, dev3 = nearest_integer(curly_L_rank0(3))
    assert dev3 < 1e-5 and r3 % 2 == 1
    r17, dev17 = nearest_integer(curly_L_rank0(17))
    assert dev17 < 1e-5 and r17 % 2 == 0 and theorem1_parity(17) == 0
    with pytest.raises(SignMismatch):
        curly_L_rank0(5)


def test_tunnell_l_value_concordance():
    # L(E_n,1) sqrt(n) / (B - 2A)^2 is one constant for odd n
    ratios = []
    for n in squarefree_upto(300):
        if n % 2 == 0 or n % 8 not in (1, 3):
            continue
        a, b = tunnell_counts(n)
        if 2 * a == b:
            assert abs(l_value(n, 0)) < 1e-7
            continue
        ratios.append(l_value(n, 0) * math.sqrt(n) / (b - 2 * a) ** 2)
    ratios = np.array(ratios)
    assert len(ratios) > 30
    assert np.ptp(ratios) / ratios.mean() < 1e-3
    # the constant turns out to be Omega_1 / 32
    assert ratios.mean() == pytest.approx(real_period(1) / 32, rel=1e-6)


def test_point_search_examples():
    p6 = point_search(6, E_CURVE, 100)
    assert (p6.x, p6.y) == (2, 1)
    assert point_search(1, E_CURVE, 10**4) is None
    p7 = point_search(7, E_CURVE, 10**4)
    assert p7 is not None and p7.y != 0 and 7 * p7.y**2 == p7.x**3 - p7.x


def test_point_search_on_a_curve():
    pt = point_search(5, A_CURVE, 100)
    assert pt is None or pt.on_curve()
    pt = point_search(1, A_CURVE, 10)
    assert (pt.x, pt.y) == (1, 1)


def test_isogeny_examples():
    img = isogeny_phi(1, RationalPoint(Fraction(1), Fraction(1), A_CURVE, 1))
    assert (img.x, img.y) == (1, 0) and img.on_curve()
    with pytest.raises(SingularInput):
        isogeny_phi(1, RationalPoint(Fraction(0), Fraction(0), A_CURVE, 1))


def _squarefree_part(m):
    out = 1
    for p, e in factorize(m).items():
        if e % 2:
            out *= p
    return out


def test_isogeny_image_on_curve_random():
    rng = random.Random(7)
    done = 0
    while done < 100:
        a, b = rng.randint(1, 300), rng.randint(1, 300)
        if math.gcd(a, b) != 1:
            continue
        # choose n so that (a/b, v) lies on 2n v^2 = u^3 + u
        s = a * b * (a * a + b * b)
        sf = _squarefree_part(s)
        n = sf // 2 if sf % 2 == 0 else 2 * sf
        u = Fraction(a, b)
        v2 = (u**3 + u) / (2 * n)
        v = Fraction(math.isqrt(v2.numerator), math.isqrt(v2.denominator))
        assert v * v == v2
        P = RationalPoint(u, v, A_CURVE, n)
        assert P.on_curve()
        assert isogeny_phi(n, P).on_curve()
        done += 1


def test_analytic_report_fields():
    rep = analytic_report(3)
    assert rep.omega > 0 and rep.curlyL == pytest.approx(1, abs=1e-5)
    assert rep.rho_known is None and rep.regulator_known is None
    rep5 = analytic_report(5)
    assert rep5.curlyL is None and rep5.l_value > 0
