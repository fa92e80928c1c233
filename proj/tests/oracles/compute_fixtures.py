#!/usr/bin/env python3
"""Independent high-precision reference values for the unit and acceptance tests.

Everything here is evaluated with mpmath at 50 significant digits straight from
the closed forms and the Poisson series; nothing calls into the C++ library.
The printed values are frozen into tests/fixtures.hpp.
"""
import mpmath as mp

mp.mp.dps = 50


def g(eps, lam):
    eps, lam = mp.mpf(eps), mp.mpf(lam)
    return eps + (lam + eps) * mp.log(lam / (lam + eps))


def chernoff(theta, r):
    theta, r = mp.mpf(theta), mp.mpf(r)
    if r == 0:
        return mp.e ** (-theta)
    return mp.e ** (-theta) * (theta * mp.e / r) ** r


def pmf(theta, k):
    theta = mp.mpf(theta)
    return mp.e ** (-theta) * theta ** k / mp.factorial(k)


def cdf(theta, k):
    return mp.fsum(pmf(theta, i) for i in range(0, k + 1))


def rhs(ea, er, delta):
    ea, er, delta = mp.mpf(ea), mp.mpf(er), mp.mpf(delta)
    return (er / ea) * mp.log(2 / delta) / ((1 + er) * mp.log(1 + er) - er)


def coverage(n, lam, ea, er):
    n, lam = mp.mpf(n), mp.mpf(lam)
    w = max(mp.mpf(ea), mp.mpf(er) * lam)
    lo, hi = n * (lam - w), n * (lam + w)
    total = mp.mpf(0)
    k = max(0, int(mp.floor(lo)) + 1)
    while k < hi:
        total += pmf(n * lam, k)
        k += 1
    return total


def show(name, value):
    print(f"{name} = {mp.nstr(value, 20)}")


show("g(1,1)", g(1, 1))
show("g(0.1,1)", g(0.1, 1))
show("g(-1,2)", g(-1, 2))
show("chernoff(1,2)", chernoff(1, 2))
show("exact Pr{K>=2|1}", 1 - cdf(1, 1))
show("chernoff(2,1)", chernoff(2, 1))
show("exact Pr{K<=1|2}", cdf(2, 1))
show("e^-3", mp.e ** -3)
show("tail_abs(10,2,1,lower)", mp.e ** (10 * g(-1, 2)))
show("tail_rel(1,1,0.5,lower)", mp.e ** (-0.5 - 0.5 * mp.log(0.5)))
show("rhs(0.1,0.1,0.05)", rhs(0.1, 0.1, 0.05))
show("rhs(0.2,0.1,0.05)", rhs(0.2, 0.1, 0.05))
show("crit(0.1,0.1)", -(mp.mpf(0.1) / mp.mpf(0.1)) * ((1 + mp.mpf(0.1)) * mp.log(1 + mp.mpf(0.1)) - mp.mpf(0.1)))
show("rhs(10,0.9,0.5)", rhs(10, 0.9, 0.5))
show("z(0.975)", mp.sqrt(2) * mp.erfinv(2 * mp.mpf(0.975) - 1))
show("z(0.995)", mp.sqrt(2) * mp.erfinv(2 * mp.mpf(0.995) - 1))
show("z(0.9)", mp.sqrt(2) * mp.erfinv(2 * mp.mpf(0.9) - 1))
z = mp.sqrt(2) * mp.erfinv(2 * mp.mpf(0.975) - 1)
show("normal n(1,0.1,0.05) raw", z ** 2 * 100)
show("normal n(1,1,0.05) raw", z ** 2)
show("pmf(2,0)", pmf(2, 0))
show("pmf(1,1)", pmf(1, 1))
show("cdf(1,1)", cdf(1, 1))
show("pmf(3,3)", pmf(3, 3))
show("pmf(1e6,1e6)", pmf(10**6, 10**6))
show("pmf(1e6,1001000)", pmf(10**6, 1001000))
show("pmf(100,80)", pmf(100, 80))
show("pmf(0.5,30)", pmf(0.5, 30))
show("cov(1,1,1,0.5)", coverage(1, 1, 1, 0.5))
show("cov(1,1,10,0.1)", coverage(1, 1, 10, 0.1))
show("cov(1,3,0.5,0.1)", coverage(1, 3, 0.5, 0.1))
show("cov(762,1,0.1,0.1)", coverage(762, 1, 0.1, 0.1))
show("cov(20,0.45,0.1,0.3)", coverage(20, 0.45, 0.1, 0.3))

print("# 36-budget grid: rhs and formula n (smallest integer > rhs)")
for ea in ("0.01", "0.1", "1"):
    for er in ("0.05", "0.1", "0.5", "0.9"):
        for d in ("0.2", "0.05", "0.01"):
            v = rhs(ea, er, d)
            n = int(mp.floor(v)) + 1
            frac = v - mp.floor(v)
            print(f"{{{ea}, {er}, {d}, {n}}},  // rhs={mp.nstr(v, 15)} frac={mp.nstr(frac, 3)}")
