"""Independent reference computations used by the tests.

Nothing here imports the package: projective spaces and quadrics go through
one-variable power series, and F4/P4 through torus localization on the explicit
F4 root system in R^4 (fixed points are the 24 short roots).
"""

from fractions import Fraction
from itertools import product
from math import comb


# -- power series in one or two variables --------------------------------


def series_mul(a, b, n):
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def series_inv(a, n):
    out = [Fraction(0)] * (n + 1)
    out[0] = Fraction(1) / a[0]
    for k in range(1, n + 1):
        out[k] = -sum(a[j] * out[k - j] for j in range(1, min(k, len(a) - 1) + 1)) / a[0]
    return out


def one_plus_power(c, q, n):
    """Series of 1 + (c h)^q."""
    s = [Fraction(0)] * (n + 1)
    s[0] = Fraction(1)
    if q <= n:
        s[q] += Fraction(c) ** q
    return s


def series_pow(a, e, n):
    out = [Fraction(0)] * (n + 1)
    out[0] = Fraction(1)
    for _ in range(abs(e)):
        out = series_mul(out, a, n)
    return series_inv(out, n) if e < 0 else out


def eta_pre_projective(n, p):
    """deg (c^(p)(T P^n))^-1 = coeff of h^n in (1 + h^(p-1))^-(n+1)."""
    s = series_pow(one_plus_power(1, p - 1, n), -(n + 1), n)
    return s[n]


def eta_pre_quadric(n, p):
    """Q_n in P^(n+1): (1+(2h)^q)(1+h^q)^-(n+2), times deg h^n = 2."""
    s = series_mul(series_pow(one_plus_power(1, p - 1, n), -(n + 2), n), one_plus_power(2, p - 1, n), n)
    return 2 * s[n]


def tangent_series(name, p, n):
    """(one-variable class of c^(p)(T)^-1, degree of h^n) for P<n> or Q<n>."""
    kind, m = name[0], int(name[1:])
    if kind == "P":
        return series_pow(one_plus_power(1, p - 1, n), -(m + 1), n), 1
    s = series_mul(series_pow(one_plus_power(1, p - 1, n), -(m + 2), n), one_plus_power(2, p - 1, n), n)
    return s, 2


def eta_pre_product(names, p):
    """Pre-division integer for a product of P's and Q's (multiplicative in the inverse class)."""
    dims = [int(n[1:]) for n in names]
    total = Fraction(1)
    for name, d in zip(names, dims):
        s, deg = tangent_series(name, p, d)
        total *= s[d] * deg
    return total


# -- Chern classes of P^n: c_k = C(n+1, k) ----------------------------------


def chern_projective(n):
    return [comb(n + 1, k) for k in range(n + 1)]


# -- F4 by localization --------------------------------------------------


def f4_roots():
    roots = set()
    for i in range(4):
        for s in (1, -1):
            v = [0] * 4
            v[i] = s
            roots.add(tuple(Fraction(x) for x in v))
    for i in range(4):
        for j in range(i + 1, 4):
            for s, t in product((1, -1), repeat=2):
                v = [0] * 4
                v[i], v[j] = s, t
                roots.add(tuple(Fraction(x) for x in v))
    for signs in product((1, -1), repeat=4):
        roots.add(tuple(Fraction(s, 2) for s in signs))
    return sorted(roots)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def f4p4_fixed_points():
    """Short roots (orbit of the weight e1) with the tangent weights at each."""
    roots = f4_roots()
    short = [r for r in roots if _dot(r, r) == 1]
    return [(lam, [g for g in roots if _dot(g, lam) > 0]) for lam in short]


GENERIC = (Fraction(7, 3), Fraction(-11, 5), Fraction(13, 17), Fraction(29, 41))


def localize_f4p4(integrand, v=GENERIC):
    """sum over fixed points of integrand(H, weights) / prod(weights).

    ``integrand`` gets the value of the hyperplane class and the list of
    tangent weights (as numbers) at each fixed point.
    """
    total = Fraction(0)
    for lam, ws in f4p4_fixed_points():
        wv = [_dot(g, v) for g in ws]
        e = Fraction(1)
        for w in wv:
            e *= w
        total += integrand(_dot(lam, v), wv) / e
    return total


def elementary(values, k):
    e = [Fraction(1)] + [Fraction(0)] * k
    for x in values:
        for j in range(k, 0, -1):
            e[j] += e[j - 1] * x
    return e


def inverse_powered_component(weights, extra_neg, p, codim):
    """codim-``codim`` part of prod(1 + w^q)^-1 * prod(1 + d^q) as a number (graded by q)."""
    q = p - 1
    if codim % q:
        return Fraction(0)
    k = codim // q
    # series in t: prod (1 + t w^q)^-1 prod (1 + t d^q); coefficient of t^k
    s = [Fraction(1)] + [Fraction(0)] * k
    for w in weights:
        a = w**q
        # multiply by (1 + a t)^-1 = sum (-a t)^j
        out = [Fraction(0)] * (k + 1)
        for i in range(k + 1):
            for j in range(k + 1 - i):
                out[i + j] += s[i] * (-a) ** j
        s = out
    for d in extra_neg:
        a = d**q
        s = [s[i] + (a * s[i - 1] if i else 0) for i in range(k + 1)]
    return s[k]


def f4p4_numbers():
    deg_h15 = localize_f4p4(lambda h, ws: h**15)
    euler = localize_f4p4(lambda h, ws: elementary(ws, 15)[15])
    c1 = localize_f4p4(lambda h, ws: elementary(ws, 1)[1] * h**14)
    eta2 = localize_f4p4(lambda h, ws: inverse_powered_component(ws, [], 2, 15))
    # Z = seven hyperplane sections: T_Z = T_X - 7 H, pushed forward with H^7
    eta3_z = localize_f4p4(lambda h, ws: h**7 * inverse_powered_component(ws, [h] * 7, 3, 8))
    return {"deg_h15": deg_h15, "euler": euler, "c1_h14": c1, "eta2_pre": eta2, "eta3_z_pre": eta3_z}


if __name__ == "__main__":
    print(f4p4_numbers())
    print(eta_pre_quadric(3, 2), eta_pre_projective(2, 3))
