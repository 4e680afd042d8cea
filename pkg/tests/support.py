"""Shared independent oracles for the test suite.

These deliberately avoid the library's own code paths: interval evaluation
goes through mpmath, the lattice-width oracle is an unpruned scan, and the
unimodular sampler composes elementary shears directly.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import mpmath

from mbl.lattice import LatticePolygon, UnimodularMap, width_along


def quadratic_interval(value, digits: int = 200):
    """Enclosing interval of q + s*sqrt(r) at ~`digits` decimal digits."""
    iv = mpmath.iv
    iv.prec = int(digits * 3.33) + 40

    def frac(x: Fraction):
        return iv.mpf(x.numerator) / iv.mpf(x.denominator)

    return frac(value.q) + frac(value.s) * iv.sqrt(frac(value.r))


def interval_compare(x, y, digits: int = 200):
    """-1/0/1 when the intervals separate, None when they overlap."""
    ix = quadratic_interval(x, digits)
    iy = quadratic_interval(y, digits)
    if ix < iy:
        return -1
    if ix > iy:
        return 1
    return None


def brute_lattice_width(polygon: LatticePolygon, reach: int = 50):
    """Exhaustive scan over primitive directions with sup-norm <= reach."""
    best = None
    best_xi = None
    for q in range(0, reach + 1):
        for p in range(-reach, reach + 1):
            if q == 0 and p <= 0:
                continue
            if math.gcd(abs(p), q) != 1:
                continue
            w = width_along(polygon, (p, q))
            if best is None or w < best or (w == best and (p, q) < best_xi):
                best, best_xi = w, (p, q)
    return best, best_xi


def random_unimodular(rng: random.Random) -> UnimodularMap:
    m = (1, 0, 0, 1)
    for _ in range(rng.randint(2, 6)):
        k = rng.randint(-3, 3)
        if rng.randint(0, 1):
            m = (m[0], m[1] + k * m[0], m[2], m[3] + k * m[2])
        else:
            m = (m[0] + k * m[1], m[1], m[2] + k * m[3], m[3])
    if rng.randint(0, 1):
        m = (m[1], m[0], m[3], m[2])
    return UnimodularMap(
        m[0], m[1], m[2], m[3],
        Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
        Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
    )


def random_quadratic(rng: random.Random):
    from mbl.capacity import QuadraticValue

    def rand_fraction():
        return Fraction(rng.randint(-60, 60), rng.randint(1, 24))

    return QuadraticValue(rand_fraction(), rand_fraction(), abs(rand_fraction()))
