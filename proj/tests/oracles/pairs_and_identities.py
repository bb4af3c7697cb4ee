#!/usr/bin/env python3
"""Independent reference values for the pair algebra and transform identities.

Everything here is computed symbolically (sympy) or with mpmath quadrature,
without using the C++ library. The resulting constants are frozen into
tests/data/oracle_values.json and compared against the library in the test
suite.
"""
import json
import math
import cmath
import sys

import mpmath as mp
import sympy as sp

mp.mp.dps = 40

OUT = {}


def c2pair(z):
    z = complex(z)
    return [z.real, z.imag]


def half_row_product(ab, cd):
    """(a,b)(c,d) = (ac + b d*, ad + b c*) with f*(z) = conj(f(1/conj(z)))."""
    z = sp.Symbol("z")
    a, b = ab
    c, d = cd

    def star(f):
        return sp.conjugate(f.subs(z, 1 / sp.conjugate(z)))

    return (sp.expand(a * c + b * star(d)), sp.expand(a * d + b * star(c)))


def two_entry_product():
    """Product of the layer factors for entries s at index 0 and t at index 1."""
    z = sp.Symbol("z")
    s = sp.Rational(3, 10) + sp.I * sp.Rational(1, 10)
    t = sp.Rational(-1, 5) + sp.I * sp.Rational(2, 5)
    Cs = 1 / sp.sqrt(1 - sp.Abs(s) ** 2)
    Ct = 1 / sp.sqrt(1 - sp.Abs(t) ** 2)
    a, b = half_row_product((Cs, Cs * s), (Ct, Ct * t * z))
    C = sp.simplify(Cs * Ct)
    # closed form: (C(1 + s conj(t) z^-1), C(s + t z))
    a_closed = C * (1 + s * sp.conjugate(t) / z)
    b_closed = C * (s + t * z)
    assert sp.simplify(a - a_closed) == 0
    assert sp.simplify(b - b_closed) == 0
    OUT["two_entry"] = {
        "s": c2pair(complex(s)),
        "t": c2pair(complex(t)),
        "C": float(C),
        "a_coeff_zm1": c2pair(complex(C * s * sp.conjugate(t))),
        "a_coeff_z0": float(C),
        "b_coeff_z0": c2pair(complex(C * s)),
        "b_coeff_z1": c2pair(complex(C * t)),
    }


def single_entry_values():
    """Layer factor for F = 1/2 at index 0 and its inverse (a*, -b)."""
    C = 1 / math.sqrt(1 - 0.25)  # (4/3)^{1/2}
    OUT["single_half"] = {
        "a": float(C),
        "b": float(C / 2),
        "inv_a": float(C),
        "inv_b": float(-C / 2),  # equals -(1/3)^{1/2}
        "inv_b_closed": float(-math.sqrt(1.0 / 3.0)),
        "op_norm_at_1": float(C + C / 2),  # = sqrt(3)
        "op_norm_closed": float(math.sqrt(3)),
    }
    assert abs(C / 2 - math.sqrt(1.0 / 3.0)) < 1e-15
    assert abs((C + C / 2) - math.sqrt(3)) < 1e-15
    # |a| = 5/4, |b| = 3/4 gives operator norm 2 = exp(arccosh(5/4))
    assert abs(math.exp(math.acosh(1.25)) - 2.0) < 1e-15
    OUT["norm_arccosh"] = {"abs_a": 1.25, "abs_b": 0.75, "norm": 2.0}


def h_distance_single():
    """Distance from (1,0) to the layer pair with F = 1/2: constant integrands."""
    log_term = 0.5 * math.log(4.0 / 3.0)  # integral of log|a|
    ratio_sq = 0.25  # |b/a| = 1/2 on the circle
    OUT["h_distance_single"] = {
        "log_term": log_term,
        "ratio_term": ratio_sq,
        "total": log_term + ratio_sq,
    }


def quadratic_roots():
    """Roots of 2z^2 + 9z + 2 (denominator-cleared 1 + b b* for b = z + 1/2)."""
    r1 = (-9 + math.sqrt(65)) / 4
    r2 = (-9 - math.sqrt(65)) / 4
    OUT["quadratic_roots"] = {"inside": r1, "outside": r2}
    # spectral factor of 1 + b b* for b = z + 1/2, zero rho = r1 inside D:
    # a(z) = g (1 - rho/z) with g > 0 fixed by |a(1)|^2 = P(1) = 13/4.
    g = math.sqrt(13.0 / 4.0) / abs(1 - r1)
    OUT["a_from_b_affine"] = {"rho": r1, "gain": g, "P_at_1": 13.0 / 4.0}


def multilinear_two_point():
    """Order-2 term for support {0,1}: (0, F0)(0, F1 z) = (F0 conj(F1) z^-1, 0)."""
    F0 = 0.3 + 0.2j
    F1 = -0.1 + 0.4j
    OUT["multilinear_n2"] = {
        "F0": c2pair(F0),
        "F1": c2pair(F1),
        "a_coeff_zm1": c2pair(F0 * F1.conjugate()),
    }


def sum_rule_two_entry():
    """First and second moment identities for the two-entry sequence (s, t)."""
    s = mp.mpc("0.3", "0.1")
    t = mp.mpc("-0.2", "0.4")
    C = 1 / mp.sqrt((1 - abs(s) ** 2) * (1 - abs(t) ** 2))

    def loga(theta):
        z = mp.e ** (1j * theta)
        return mp.log(abs(C * (1 + s * mp.conj(t) / z)))

    k1 = 2 * mp.quad(lambda th: loga(th) * mp.e ** (-1j * th), [0, 2 * mp.pi]) / (2 * mp.pi)
    k2 = 4 * mp.quad(lambda th: loga(th) * mp.e ** (-2j * th), [0, 2 * mp.pi]) / (2 * mp.pi)
    st = mp.conj(s) * t
    assert abs(k1 - st) < mp.mpf("1e-30"), abs(k1 - st)
    assert abs(k2 + st ** 2) < mp.mpf("1e-30"), abs(k2 + st ** 2)
    s, t, st = complex(s), complex(t), complex(st)
    OUT["sum_rule_two_entry"] = {
        "s": c2pair(s),
        "t": c2pair(t),
        "k1": c2pair(st),
        "k2": c2pair(-(st ** 2)),
    }


def outer_reconstruction_example():
    """a = 1 + z^{-1}/2 is zero-free on |z| >= 1; frozen samples for the outer test."""
    samples = []
    for j in range(8):
        z = cmath.exp(2j * math.pi * j / 8)
        samples.append(c2pair(1 + 0.5 / z))
    OUT["outer_affine"] = {"M": 8, "samples": samples}


def main():
    two_entry_product()
    single_entry_values()
    h_distance_single()
    quadratic_roots()
    multilinear_two_point()
    sum_rule_two_entry()
    outer_reconstruction_example()
    json.dump(OUT, sys.stdout, indent=1)


if __name__ == "__main__":
    main()
