"""Entropy and dynamical classification of lattice isometries.

Everything that decides between entropy 0 and entropy > 0 is an exact
sign computation on integer polynomials; the floating refinement of the
spectral radius only narrows an already certified isolating interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactlinalg import (
    char_poly,
    dims,
    identity,
    mat_mul,
    poly_divmod_exact,
    poly_derivative,
    poly_eval,
    poly_primitive,
    poly_trim,
    transpose,
)


class NotIsometryError(ValueError):
    pass


def is_isometry(m, g):
    """Exact test M^T G M = G."""
    rm, cm = dims(m)
    rg, cg = dims(g)
    if rm != cm or rg != cg or rm != rg:
        raise ValueError("dimension mismatch")
    return mat_mul(transpose(m), mat_mul(g, m)) == g


@lru_cache(maxsize=None)
def cyclotomic(n):
    """Coefficients of the n-th cyclotomic polynomial, ascending."""
    # x^n - 1 divided by all proper cyclotomic divisors
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            q, rem = poly_divmod_exact(p, cyclotomic(d))
            assert rem == []
            p = q
    return tuple(p)


def euler_phi(n):
    out = n
    d = 2
    m = n
    while d * d <= m:
        if m % d == 0:
            out -= out // d
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out -= out // m
    return out


def strip_cyclotomic_factors(p):
    """Divide out every cyclotomic factor; returns (rest, orders).

    orders lists n once per removed copy of the n-th cyclotomic.
    """
    deg = len(p) - 1
    orders = []
    candidates = [n for n in range(1, 1000) if euler_phi(n) <= deg]
    changed = True
    while changed and len(p) > 1:
        changed = False
        for n in candidates:
            phi = cyclotomic(n)
            if len(phi) > len(p):
                continue
            q, rem = poly_divmod_exact(p, list(phi))
            if rem == []:
                p = q
                orders.append(n)
                changed = True
    return p, orders


# ---------------------------------------------------------------------------
# Sturm sequences (rational arithmetic, exact signs)

def _to_frac_poly(p):
    return [Fraction(c) for c in p]


def _frac_poly_divmod(a, b):
    a = list(a)
    out = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        out[k] = f
        for i, c in enumerate(b):
            a[k + i] -= f * c
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return out, a


def sturm_sequence(p):
    p0 = _to_frac_poly(p)
    p1 = _to_frac_poly(poly_derivative(p))
    seq = [p0, p1]
    while len(seq[-1]) > 1:
        _, rem = _frac_poly_divmod(seq[-2], seq[-1])
        if not rem:
            break
        seq.append([-c for c in rem])
    return seq


def _sign_changes(seq, x):
    signs = []
    for p in seq:
        v = poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p, a, b):
    """Number of distinct real roots of p in the half-open interval (a, b]."""
    seq = sturm_sequence(p)
    return _sign_changes(seq, Fraction(a)) - _sign_changes(seq, Fraction(b))


def root_bound(p):
    """Cauchy bound on absolute values of roots, as a Fraction."""
    p = poly_trim(list(p))
    lead = abs(p[-1])
    return 1 + max(Fraction(abs(c), lead) for c in p[:-1]) if len(p) > 1 else Fraction(1)


def largest_real_root(p, tol=Fraction(1, 10**12)):
    """Isolate and refine the largest real root of p; exact bisection.

    Returns (lo, hi) with lo < root <= hi and hi - lo <= tol.
    """
    seq = sturm_sequence(p)
    hi = root_bound(p)
    lo = -hi
    if _sign_changes(seq, lo) - _sign_changes(seq, hi) == 0:
        raise ValueError("polynomial has no real root")
    # push lo up until exactly the largest root remains in (lo, hi]
    while _sign_changes(seq, lo) - _sign_changes(seq, hi) > 1:
        mid = (lo + hi) / 2
        if _sign_changes(seq, mid) - _sign_changes(seq, hi) >= 1:
            lo = mid
        else:
            hi = mid
    # now exactly... may still hold several; tighten to a single root
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _sign_changes(seq, mid) - _sign_changes(seq, hi) >= 1:
            lo = mid
        else:
            hi = mid
    return lo, hi


def has_root_above_one(p):
    """Exact: does p have a real root in (1, bound]?"""
    seq = sturm_sequence(p)
    return _sign_changes(seq, Fraction(1)) - _sign_changes(seq, root_bound(p)) > 0


# ---------------------------------------------------------------------------
# Integer polynomial factor extraction (degrees <= 22; no external
# factorization dependency)

def squarefree_part(p):
    """Primitive squarefree part of an integer polynomial."""
    d = poly_derivative(p)
    g = _int_poly_gcd(p, d)
    if len(g) <= 1:
        return poly_primitive(list(p))
    q, rem = poly_divmod_monicized(p, g)
    assert rem == []
    return poly_primitive(q)


def _int_poly_gcd(a, b):
    fa, fb = _to_frac_poly(a), _to_frac_poly(b)
    while fb and any(fb):
        _, rem = _frac_poly_divmod(fa, fb)
        fa, fb = fb, rem
    # clear denominators, make primitive
    den = 1
    for c in fa:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in fa]
    return poly_primitive(ints) if ints else []


def poly_divmod_monicized(p, q):
    """Exact division of integer polynomials with arbitrary leading
    coefficients, via rationals; result must be integral."""
    fq, rem = _frac_poly_divmod(_to_frac_poly(p), _to_frac_poly(q))
    out = []
    for c in fq:
        if c.denominator != 1:
            raise ValueError("inexact division")
        out.append(int(c))
    remi = []
    for c in rem:
        if c.denominator != 1:
            raise ValueError("inexact remainder")
        remi.append(int(c))
    return poly_trim(out), poly_trim(remi)


def _divisors(n):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out | {-x for x in out})


def irreducible_factor_with_root(p, lo, hi):
    """Irreducible monic-up-to-sign factor of p owning the root in (lo, hi].

    Squarefree reduction, rational-root test, then a Kronecker search
    over factor degrees up to deg/2.  Degrees in scope are tiny.
    """
    p = squarefree_part(p)
    while True:
        found = _find_proper_factor(p)
        if found is None:
            return p
        f, g = found
        p = f if count_real_roots(f, lo, hi) > 0 else g


def _find_proper_factor(p):
    deg = len(p) - 1
    if deg <= 1:
        return None
    # rational roots: x - r with r | p(0) (after removing x | p)
    if p[0] == 0:
        q, _ = poly_divmod_exact(p, [0, 1])
        return [0, 1], q
    for r in _divisors(p[0]):
        if poly_eval(p, r) == 0:
            q, rem = poly_divmod_monicized(p, [-r, 1])
            assert rem == []
            return [-r, 1], q
    # Kronecker: interpolate candidate divisors through divisor tuples of
    # values at 0, 1, -1, 2, -2, ...
    for d in range(2, deg // 2 + 1):
        pts = [0]
        k = 1
        while len(pts) < d + 1:
            pts.append(k)
            if len(pts) < d + 1:
                pts.append(-k)
            k += 1
        vals = [poly_eval(p, x) for x in pts]
        if any(v == 0 for v in vals):
            continue  # handled by rational roots above, only x=0 etc.
        from itertools import product
        choices = [_divisors(v) for v in vals]
        for combo in product(*choices):
            cand = _interpolate_int(pts, combo)
            if cand is None or len(cand) - 1 != d:
                continue
            if cand[-1] < 0:
                cand = [-c for c in cand]
            try:
                q, rem = poly_divmod_monicized(p, cand)
            except ValueError:
                continue
            if rem == [] and len(q) > 1:
                return poly_primitive(cand), q
    return None


def _interpolate_int(xs, ys):
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        num = [Fraction(ys[i])]
        den = Fraction(1)
        for j in range(n):
            if j != i:
                num = [Fraction(c) for c in _frac_mul(num, [-Fraction(xs[j]), Fraction(1)])]
                den *= xs[i] - xs[j]
        for k, c in enumerate(num):
            coeffs[k] += c / den
    out = []
    for c in coeffs:
        if c.denominator != 1:
            return None
        out.append(int(c))
    return poly_trim(out)


def _frac_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def is_reciprocal(p):
    """x^deg * p(1/x) == +-p(x), exact."""
    p = poly_trim(list(p))
    rev = list(reversed(p))
    return rev == p or rev == [-c for c in p]


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EntropyReport:
    spectral_radius: float
    radius_interval: tuple       # (Fraction lo, Fraction hi), certified
    entropy: float
    dynamical_class: str         # elliptic | parabolic | hyperbolic
    salem_factor: list | None
    order: int | None            # finite order for elliptic maps


def entropy(m, g, tol=Fraction(1, 10**10)):
    """Classify an isometry and compute its entropy log(spectral radius).

    Hyperbolic vs radius-1 is decided by an exact Sturm count above 1;
    elliptic vs parabolic by exact matrix powering up to the lcm of the
    cyclotomic orders in the characteristic polynomial.
    """
    if not is_isometry(m, g):
        raise NotIsometryError("matrix does not preserve the form")
    n = len(m)
    p = char_poly(m)
    rest, orders = strip_cyclotomic_factors(list(p))
    if has_root_above_one(p):
        lo, hi = largest_real_root(p, tol)
        salem = irreducible_factor_with_root(p, lo, hi)
        if salem[-1] < 0:
            salem = [-c for c in salem]
        radius = float((lo + hi) / 2)
        return EntropyReport(
            spectral_radius=radius,
            radius_interval=(lo, hi),
            entropy=math.log(radius),
            dynamical_class="hyperbolic",
            salem_factor=salem,
            order=None)
    # all eigenvalues on the unit circle (Kronecker: a monic integer
    # polynomial with all roots in the closed unit disk is a product of
    # cyclotomics and a power of x; isometries exclude the latter)
    if len(rest) > 1:
        # non-cyclotomic factor with no root off the unit circle cannot
        # occur for an isometry; defensive
        raise NotIsometryError("spectrum on the unit circle but not cyclotomic")
    order = 1
    for k in orders:
        order = order * k // math.gcd(order, k)
    if _mat_pow(m, order) == identity(n):
        true_order = _exact_order(m, order)
        return EntropyReport(1.0, (Fraction(1), Fraction(1)), 0.0, "elliptic", None, true_order)
    return EntropyReport(1.0, (Fraction(1), Fraction(1)), 0.0, "parabolic", None, None)


def _mat_pow(m, k):
    n = len(m)
    out = identity(n)
    base = [row[:] for row in m]
    while k:
        if k & 1:
            out = mat_mul(out, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return out


def _exact_order(m, bound):
    for d in sorted(_positive_divisors(bound)):
        if _mat_pow(m, d) == identity(len(m)):
            return d
    raise AssertionError("order bound was not an order multiple")


def _positive_divisors(n):
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return out
