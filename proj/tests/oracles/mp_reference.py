#!/usr/bin/env python3
"""Arbitrary-precision reference values for the special-function and
Eisenstein-series tests. Run once; the output is frozen into
tests/data/*.inc and is not regenerated by the build."""
import sys
import mpmath as mp

mp.mp.dps = 40


def xi(s):
    return mp.pi ** (-s / 2) * mp.gamma(s / 2) * mp.zeta(s)


def phi(t):
    # constant-term coefficient of E(z, 1/2 + it)
    return xi(2j * t) / xi(1 + 2j * t)


def eis_fourier(x, y, s, terms=60):
    """E(z, s) = 1/2 sum_{gcd(c,d)=1} y^s / |cz+d|^{2s} via its Fourier expansion."""
    s = mp.mpc(s)
    val = y ** s + xi(2 * s - 1) / xi(2 * s) * y ** (1 - s)
    acc = mp.mpc(0)
    for n in range(1, terms + 1):
        sig = sum(mp.mpf(d) ** (1 - 2 * s) for d in range(1, n + 1) if n % d == 0)
        k = mp.besselk(s - mp.mpf(1) / 2, 2 * mp.pi * n * y)
        acc += mp.mpf(n) ** (s - mp.mpf(1) / 2) * sig * k * 2 * mp.cos(2 * mp.pi * n * x)
    return val + 2 / xi(2 * s) * mp.sqrt(y) * acc


def c(z):
    z = mp.mpc(z)
    return "{%s, %s}" % (mp.nstr(z.real, 20, min_fixed=-1, max_fixed=-1),
                         mp.nstr(z.imag, 20, min_fixed=-1, max_fixed=-1))


def main():
    out = []
    w = out.append
    w("// Generated by tests/oracles/mp_reference.py (mpmath, 40 digits). Do not edit.")
    w("#pragma once")
    w("#include <array>")
    w("#include <complex>")
    w("namespace eisl::ref {")
    w("using cd = std::complex<double>;")
    w("struct Pair { cd arg; cd value; };")

    w("inline constexpr double gamma_2_3i[2] = %s;" % c(mp.gamma(2 + 3j)))

    rng = mp.mpf(0)
    import random
    random.seed(20221015)
    gam = []
    while len(gam) < 50:
        re = random.uniform(-60, 60)
        im = random.uniform(-60, 60)
        if abs(complex(re, im)) > 100 or (abs(im) < 1e-3 and re <= 0):
            continue
        gam.append((re, im))
    w("inline const std::array<Pair, 50> gamma_grid = {{")
    for re, im in gam:
        w("  {cd%s, cd%s}," % (c(mp.mpc(re, im)), c(mp.gamma(mp.mpc(re, im)))))
    w("}};")

    zet = []
    while len(zet) < 50:
        re = random.uniform(-0.99, 4.0)
        im = random.uniform(-500, 500)
        zet.append((re, im))
    w("inline const std::array<Pair, 50> zeta_grid = {{")
    for re, im in zet:
        w("  {cd%s, cd%s}," % (c(mp.mpc(re, im)), c(mp.zeta(mp.mpc(re, im)))))
    w("}};")

    g1 = mp.findroot(lambda t: mp.siegelz(t), 14.13)
    w("inline constexpr double first_zero_ordinate = %s;" % mp.nstr(g1, 20))
    w("inline constexpr double scattering_5[2] = %s;" % c(phi(5)))
    w("inline constexpr double scattering_1[2] = %s;" % c(phi(1)))
    w("inline constexpr double scattering_2[2] = %s;" % c(phi(2)))
    # s-derivative of phi(s) / phi(s) at s = 1/2 + it
    for t in (3, 5):
        s0 = mp.mpf(1) / 2 + 1j * t
        f = lambda s: xi(2 * s - 1) / xi(2 * s)
        ld = mp.diff(f, s0) / f(s0)
        w("inline constexpr double scattering_log_deriv_%d[2] = %s;" % (t, c(ld)))
    w("inline constexpr double xi_0p3_2i[2] = %s;" % c(xi(mp.mpc(0.3, 2))))
    w("inline constexpr double eta_mu_0p5i_r1 = %s;" % mp.nstr(
        mp.re(mp.legenp(-mp.mpf(1) / 2 + 0.5j, 0, mp.cosh(2))), 20))

    for (x, y, t) in ((0.0, 2.0, 1.0), (0.1, 1.3, 1.0), (0.3, 1.1, 5.0), (-0.25, 3.0, 10.0)):
        e = eis_fourier(x, y, mp.mpf(1) / 2 + 1j * t)
        w("inline constexpr double eis_%s_%s_%s[2] = %s;" % (
            str(x).replace('.', 'p').replace('-', 'm'), str(y).replace('.', 'p'),
            str(int(t)), c(e)))
    e = eis_fourier(0.2, 1.5, mp.mpc(1.5, 2))
    w("inline constexpr double eis_s1p5_2i_0p2_1p5[2] = %s;" % c(e))
    w("struct GRef { cd a; double x; cd value; };")
    w("inline const std::array<GRef, 12> scaled_upper_gamma_grid = {{")
    for (a, x) in ((0.5 + 1j, 0.01), (0.5 - 3j, 0.3), (0.5 + 10j, 1.9), (0.5 + 10j, 2.1),
                   (0.5 + 5j, 7.0), (0.5 - 10j, 40.0), (1.5 + 2j, 0.7), (-0.5 - 2j, 3.0),
                   (0.5 + 20j, 5.0), (0.5 + 1j, 25.0), (2.5, 1.0), (0.5 + 0.1j, 12.0)):
        a = mp.mpc(a)
        v = mp.mpf(x) ** (-a) * mp.gammainc(a, x)
        w("  {cd%s, %r, cd%s}," % (c(a), x, c(v)))
    w("}};")
    w("}  // namespace eisl::ref")
    print("\n".join(out))


if __name__ == "__main__":
    main()
