"""Entropy, cyclotomic stripping and Salem-factor extraction.

The hyperbolic test vector was found by the brute-force search in
scripts/find_isometry.py (isometries of U + A1 with trace > 3); sympy
provides an independent characteristic-polynomial oracle.
"""

import math
from fractions import Fraction

import pytest
import sympy

from k3cert.exactlinalg import adjugate_inverse, char_poly, identity, mat_mul
from k3cert.lattices import gram_of
from k3cert.spectral import (
    NotIsometryError,
    count_real_roots,
    cyclotomic,
    entropy,
    euler_phi,
    is_isometry,
    is_reciprocal,
    largest_real_root,
    strip_cyclotomic_factors,
)

G3 = [[0, 1, 0], [1, 0, 0], [0, 0, -2]]
# discovered by exhaustive search: smallest-trace hyperbolic example
M_HYP = [[0, 1, 0], [1, 4, -4], [0, -2, 1]]


def test_is_isometry_basics():
    g = gram_of("U+A1").gram_rows()
    assert is_isometry(identity(3), g)
    assert is_isometry([[-1, 0, 0], [0, -1, 0], [0, 0, -1]], g)
    # swap the two U coordinates and flip the A1 sign
    swap_flip = [[0, 1, 0], [1, 0, 0], [0, 0, -1]]
    assert is_isometry(swap_flip, g)
    assert not is_isometry([[1, 1, 0], [0, 1, 0], [0, 0, 1]], g)


def test_cyclotomic_polynomials():
    assert list(cyclotomic(1)) == [-1, 1]
    assert list(cyclotomic(2)) == [1, 1]
    assert list(cyclotomic(4)) == [1, 0, 1]
    assert list(cyclotomic(6)) == [1, -1, 1]
    assert list(cyclotomic(12)) == [1, 0, -1, 0, 1]
    for n in (5, 8, 9, 15):
        assert len(cyclotomic(n)) - 1 == euler_phi(n)


def test_strip_cyclotomic():
    # (x-1)^2 (x^2+x+1)
    p = [-1, 1]
    from k3cert.exactlinalg import poly_mul
    full = poly_mul(poly_mul(p, p), [1, 1, 1])
    rest, orders = strip_cyclotomic_factors(full)
    assert rest == [1]
    assert sorted(orders) == [1, 1, 3]


def test_sturm_root_isolation():
    # x^2 - 2: one root in (1, 2], none in (2, 3]
    p = [-2, 0, 1]
    assert count_real_roots(p, 1, 2) == 1
    assert count_real_roots(p, 2, 3) == 0
    lo, hi = largest_real_root(p, tol=Fraction(1, 10**12))
    mid = (lo + hi) / 2
    assert abs(float(mid) - math.sqrt(2)) < 1e-9


def test_entropy_elliptic():
    g = gram_of("U+A1").gram_rows()
    rep = entropy(identity(3), g)
    assert rep.dynamical_class == "elliptic"
    assert rep.entropy == 0.0 and rep.order == 1
    neg = [[-1, 0, 0], [0, -1, 0], [0, 0, -1]]
    rep2 = entropy(neg, g)
    assert rep2.dynamical_class == "elliptic" and rep2.order == 2
    # exact powering confirms the computed order
    m = neg
    power = identity(3)
    for _ in range(rep2.order):
        power = mat_mul(power, m)
    assert power == identity(3)


def test_entropy_parabolic():
    # unipotent isometry: char poly (x-1)^3, infinite order
    m = [[1, 0, 0], [1, 1, 2], [1, 0, 1]]
    assert is_isometry(m, G3)
    rep = entropy(m, G3)
    assert rep.dynamical_class == "parabolic"
    assert rep.entropy == 0.0 and rep.salem_factor is None


def test_entropy_hyperbolic_discovered_example():
    assert is_isometry(M_HYP, G3)
    rep = entropy(M_HYP, G3)
    assert rep.dynamical_class == "hyperbolic"
    assert rep.spectral_radius > 1
    assert rep.entropy > 0
    assert is_reciprocal(rep.salem_factor)
    # 3 + 2*sqrt(2) is the large root of x^2 - 6x + 1
    assert rep.salem_factor == [1, -6, 1]
    assert abs(rep.spectral_radius - (3 + 2 * math.sqrt(2))) < 1e-9
    lo, hi = rep.radius_interval
    assert hi - lo <= Fraction(1, 10**10)


def test_entropy_stable_across_runs():
    r1 = entropy(M_HYP, G3)
    r2 = entropy(M_HYP, G3)
    assert r1.spectral_radius == r2.spectral_radius
    assert r1.radius_interval == r2.radius_interval


def test_char_poly_against_sympy_oracle():
    for m in (M_HYP, [[1, 0, 0], [1, 1, 2], [1, 0, 1]],
              [[0, 1, 0], [1, 0, 0], [0, 0, -1]]):
        ours = char_poly(m)
        theirs = sympy.Matrix(m).charpoly().all_coeffs()  # descending
        assert ours == [int(c) for c in reversed(theirs)]


def test_char_poly_reciprocity_for_isometries():
    for m in (M_HYP, identity(3), [[-1, 0, 0], [0, -1, 0], [0, 0, -1]],
              [[1, 0, 0], [1, 1, 2], [1, 0, 1]]):
        assert is_isometry(m, G3)
        assert is_reciprocal(char_poly(m))


def test_entropy_of_inverse_and_powers():
    adj, d = adjugate_inverse(M_HYP)
    assert d in (1, -1)
    inv = [[x * d for x in row] for row in adj]  # integer inverse
    assert mat_mul(M_HYP, inv) == identity(3)
    base = entropy(M_HYP, G3).entropy
    assert abs(entropy(inv, G3).entropy - base) < 3e-9
    m2 = mat_mul(M_HYP, M_HYP)
    m3 = mat_mul(m2, M_HYP)
    assert abs(entropy(m2, G3).entropy - 2 * base) < 3e-9
    assert abs(entropy(m3, G3).entropy - 3 * base) < 3e-9


def test_entropy_rejects_non_isometry():
    with pytest.raises(NotIsometryError):
        entropy([[2, 0, 0], [0, 1, 0], [0, 0, 1]], G3)
