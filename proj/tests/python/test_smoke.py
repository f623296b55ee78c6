import math
import os
import sys
from fractions import Fraction

import pytest

ext_dir = os.environ.get("PRIMROW_EXT_DIR")
if ext_dir:
    sys.path.insert(0, ext_dir)
    import _core as pr
else:
    pr = pytest.importorskip("primrow")


def test_orbit_counts():
    assert pr.a(4, 2) == 15
    assert pr.a_prime(4, 2) == 11
    assert pr.a(3, 4) == 35
    assert pr.a_prime(3, 4) == 17
    assert pr.a(2, 6) == 12
    assert pr.a_prime(2, 6) == 2


def test_density_exact():
    assert pr.density(4, 2) == Fraction(11, 15)
    assert pr.density(2, 6) == Fraction(1, 6)
    assert pr.density_prime_limit(3, 2) == Fraction(27, 64)
    assert abs(pr.density_zero(3) - (6 / math.pi**2) ** 3) < 1e-10


def test_factorization():
    assert pr.factorize(60) == [(2, 2), (3, 1), (5, 1)]
    assert pr.factorize(1) == []
    assert pr.mobius(30) == -1
    assert pr.mobius(12) == 0


def test_constants():
    assert abs(pr.c1(2) - 6.0) < 1e-9
    assert abs(pr.c0(3) - math.pi**4 / 3) < 1e-9
    ratio = pr.c_nk_prime(4, 2) / pr.c_nk(4, 2)
    assert abs(ratio - 11 / 15) < 1e-9


def test_oracle():
    assert pr.count_ball(2, 1, Fraction(2)) == 4
    assert pr.count_ball_fast_n2(1, Fraction(2)) == 4
    assert pr.count_hnf(2, 4) == 7
    assert pr.count_hnf(2, 4, primitive=True) == 2


def test_find_k_for_density():
    k, nprimes, neg_log = pr.find_k_for_density(0.1, 0.01)
    assert nprimes > 0 and k > 1
    assert abs(neg_log - 0.1) < 0.01


def test_verify_entry_points():
    assert "identities" in pr.verify_suites()
    ok, detail = pr.verify("limit")
    assert ok, detail
