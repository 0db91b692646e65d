#!/usr/bin/env python3
"""Frozen scalar reference values used by unit and acceptance tests.

Prints C++ constexpr definitions; paste into tests/common/oracle_values.hpp.
"""
import mpmath as mp
mp.mp.dps = 40

def e_half(w):
    # E_{1/2}(w) = exp(w^2) erfc(-w)
    return mp.exp(w * w) * mp.erfc(-w)

def kummer(n, z):
    w = z ** n; s = mp.exp(w)
    for k in range(1, n):
        a = 1 - mp.mpf(k) / n
        s += z ** (n - k) * mp.hyp1f1(1, a + 1, w) / mp.gamma(a + 1)
    return s

def emit(name, v):
    v = mp.mpc(v)
    print("inline constexpr std::complex<double> %s{%s, %s};" % (
        name, repr(float(v.real)), repr(float(v.imag))))

# E_{1/2}(-1) = e erfc(1)
emit("kHalfAtMinusOne", mp.e * mp.erfc(1))
def ray_double(r, g):
    # rounded to double: the reference is the function value at this exact input
    w = r * mp.expjpi(-mp.mpf(g) / 2)
    return mp.mpc(float(w.real), float(w.imag))

# E_{1/4}(i^{-1/4} 5)
z5 = ray_double(5, mp.mpf(1) / 4)
emit("kQuarterRay5Arg", z5)
emit("kQuarterRay5", kummer(4, z5))
# E_{1/4}(i^{-1/4} 1e4); phase |z|^4 ~ 1e16 so the input must be bit-exact
z4 = ray_double(10 ** 4, mp.mpf(1) / 4)
emit("kQuarterRay1e4Arg", z4)
emit("kQuarterRay1e4", kummer(4, z4))
# symbol alpha=gamma=1/4, beta=1/2, t=1, |xi|=100 -> E_{1/4}(i^{-1/4} 10)
emit("kSymbolQuarterXi100", kummer(4, 10 * mp.expjpi(mp.mpf(-1) / 8)))
# residual multiplier alpha=1/2, t=10, |xi|=100: E_{1/2}(i^{-1/2} sqrt(1000)) - 2 exp(-1000 i)
tau = mp.mpf(1000)
emit("kResidualHalfT10Xi100", e_half(mp.sqrt(tau) * mp.expjpi(mp.mpf(-1) / 4)) - 2 * mp.expj(-tau))

# ||E_{1/2}(t) phi||_2 / ||phi||_2 for phi = exp(-x^2/2), d = 1:
#   ratio(t)^2 = (2/sqrt(pi)) int_0^inf |erfc(e^{-i pi/4} sqrt(t xi))|^2 exp(-xi^2) dxi
mp.mp.dps = 20
def ratio(t):
    f = lambda x: abs(mp.erfc(mp.expjpi(mp.mpf(-1) / 4) * mp.sqrt(t * x))) ** 2 * mp.exp(-x * x)
    pts = [0, mp.mpf(1) / t, mp.mpf(10) / t, mp.mpf(100) / t, 1, 3, 8]
    pts = sorted(set(p for p in pts if p <= 8))
    return mp.sqrt(2 / mp.sqrt(mp.pi) * mp.quad(f, pts))
times = [10 ** (k / 4) for k in range(0, 17)]
print("// strong convergence ratio at t = 10^(k/4), k = 0..16")
print("inline constexpr std::array<double, 17> kStrongRatio{" +
      ", ".join(mp.nstr(ratio(t), 12) for t in times) + "};")
tc = mp.findroot(lambda lt: ratio(mp.e ** lt) - mp.mpf('0.1'), mp.log(150))
print("inline constexpr double kStrongCrossingTime = %s;" % mp.nstr(mp.e ** tc, 12))
