#!/usr/bin/env python3
"""Reference values for the spectral, lpbesov, analysis and fbi tests.

Prints C++ definitions for tests/common/spectral_oracle.hpp. Values come from
direct quadrature in mpmath/scipy; the one discrete Besov sum uses numpy's FFT,
never the library's FFTW path.
"""
import mpmath as mp
import numpy as np
from scipy import integrate
import sympy as sp


mp.mp.dps = 30

def emit(name, v):
    print("inline constexpr double %s = %s;" % (name, repr(float(v))))

def emit_c(name, v):
    v = mp.mpc(v)
    print("inline constexpr std::complex<double> %s{%s, %s};" % (
        name, repr(float(v.real)), repr(float(v.imag))))

# 1. Schroedinger flow of exp(-x^2/2): u = (1+2it)^(-1/2) exp(-x^2 / (2(1+2it))).
x, xi, t = sp.symbols("x xi t", real=True)
u_hat = sp.sqrt(2 * sp.pi) * sp.exp(-xi**2 / 2) * sp.exp(-sp.I * t * xi**2)
u = sp.integrate(u_hat * sp.exp(sp.I * x * xi), (xi, -sp.oo, sp.oo), conds="none") / (2 * sp.pi)
closed = (1 + 4 * t**2) ** sp.Rational(-1, 4) * sp.exp(-x**2 / (2 * (1 + 4 * t**2)))
for tv, xv in [(0.5, 0.3), (2.0, 1.7), (7.0, -4.0)]:
    got = complex(sp.N(sp.Abs(u.subs({t: tv, x: xv})), 20))
    ref = float(closed.subs({t: tv, x: xv}))
    assert abs(abs(got) - ref) < 1e-14 * ref, (tv, xv, got, ref)
print("// |u(x,t)| for the Schroedinger flow of exp(-x^2/2) is")
print("// (1+4t^2)^(-1/4) exp(-x^2/(2(1+4t^2))): checked symbolically")

# 2. Transform of (sin 2x - sin x)/x over the box [-L/2, L/2], L = 512:
#    2 int_0^B (sin 2x - sin x)/x cos(kx) dx = Si((2+k)B) + Si((2-k)B) - Si((1+k)B) - Si((1-k)B)
B = mp.mpf(256)
print("// 2 int_0^256 (sin 2x - sin x)/x cos(x xi) dx at xi = 2 pi m / 512")
for m in [41, 122, 245, 204]:
    k = 2 * mp.pi * m / 512
    val = mp.si((2 + k) * B) + mp.si((2 - k) * B) - mp.si((1 + k) * B) - mp.si((1 - k) * B)
    emit("kAnnulusTransform%d" % m, val)

# 3. ||P_1 f||_2^2 = (1/2pi) int zeta(|xi|)^2 |f^|^2 = pi int_1^2 zeta^2 for the annulus wave.
def glue(s):
    return mp.exp(-1 / s) if s > 0 else mp.mpf(0)
def eta(r):
    if r <= 1: return mp.mpf(1)
    if r >= 2: return mp.mpf(0)
    a = glue(2 - r)
    return a / (a + glue(r - 1))
def zeta(r):
    return eta(r) - eta(2 * r)
emit("kAnnulusBand1L2", mp.sqrt(mp.pi * mp.quad(lambda r: zeta(r) ** 2, [1, 1.5, 2])))

# 4. u(0, t) for alpha = gamma = 1/4, beta = 1/2 and the annulus wave:
#    u(0,t) = (1/2pi) int E(xi) pi 1{1<|xi|<2} dxi = int_1^2 E_{1/4}(e^{-i pi/8} t^{1/4} sqrt(xi)) dxi
def kummer4(z):
    w = z ** 4; s = mp.exp(w)
    for k in range(1, 4):
        a = 1 - mp.mpf(k) / 4
        s += z ** (4 - k) * mp.hyp1f1(1, a + 1, w) / mp.gamma(a + 1)
    return s
ph = mp.expjpi(mp.mpf(-1) / 8)
print("// u(0, t) for the quarter-order flow of the annulus wave")
for tv in [1, 10, 100]:
    val = mp.quad(lambda s: kummer4(ph * mp.mpf(tv) ** 0.25 * mp.sqrt(s)), [1, 1.25, 1.5, 1.75, 2])
    emit_c("kSlowDecayCentre%d" % tv, val)

# 5. I(3) for w = xi^2, t = 1, x0 = 0, xi = 2 by adaptive quadrature on [-12, 12].
lam = 3.0
def integrand(z, part):
    phase = (lam * lam * 2 - lam * z) ** 2
    v = np.exp(-1j * phase) * np.exp(-z * z / 4)
    return v.real if part == 0 else v.imag
edges = np.linspace(-12, 12, 241)
re = sum(integrate.quad(integrand, a, b, args=(0,), epsabs=1e-15, epsrel=1e-12, limit=400)[0]
         for a, b in zip(edges[:-1], edges[1:]))
im = sum(integrate.quad(integrand, a, b, args=(1,), epsabs=1e-15, epsrel=1e-12, limit=400)[0]
         for a, b in zip(edges[:-1], edges[1:]))
A = 0.25 + 1j * lam * lam
closed = np.exp(-1j * (2 * lam * lam) ** 2) * np.sqrt(np.pi / A) * np.exp((2j * lam ** 3 * 2) ** 2 / (4 * A))
assert abs(complex(re, im) - closed) < 1e-9 * abs(closed), (re, im, closed)
emit_c("kFbiSquareLambda3", complex(re, im))

# 6. Homogeneous B^1_{1,1} dyadic sum of the annulus wave on n = 2^16 points,
#    L = 4096: numpy's FFT and a separate window implementation, summed over
#    bands with 4 pi / L <= N <= pi n / (2L).
def eta(r):
    r = np.asarray(r, dtype=float)
    out = np.where(r <= 1.0, 1.0, 0.0)
    mid = (r > 1.0) & (r < 2.0)
    a = np.exp(-1.0 / np.where(mid, 2.0 - r, 1.0))
    b = np.exp(-1.0 / np.where(mid, r - 1.0, 1.0))
    return np.where(mid, a / (a + b), out)
n, L = 2 ** 16, 4096.0
dx = L / n
xs = (np.arange(n) - n // 2) * dx
safe = np.where(xs == 0.0, 1.0, xs)
f = np.where(xs == 0.0, 1.0, (np.sin(2 * safe) - np.sin(safe)) / safe)
fh = np.fft.fft(f)
k = np.abs(2 * np.pi * np.fft.fftfreq(n, dx))
total = 0.0
for j in range(-40, 40):
    N = 2.0 ** j
    if N < 4 * np.pi / L or 2 * N > np.pi * n / L:
        continue
    band = np.fft.ifft(fh * (eta(k / N) - eta(2 * k / N)))
    total += N * np.sum(np.abs(band)) * dx
print("// homogeneous B^1_{1,1} band sum of the annulus wave, n = 2^16, L = 4096")
emit("kAnnulusB111", total)

# 7. sup_x |u(x, t)| for the quarter-order annulus flow, u(x,t) = int_1^2 E cos(x xi) dxi,
#    by composite Gauss-Legendre in xi (E from the Kummer form) and a search in x.
g, gw = np.polynomial.legendre.leggauss(40)
edges = np.linspace(1, 2, 501)
nodes = np.concatenate([(a + b) / 2 + (b - a) / 2 * g for a, b in zip(edges[:-1], edges[1:])])
wts = np.concatenate([(b - a) / 2 * gw for a, b in zip(edges[:-1], edges[1:])])
print("// sup_x |u(x, t)| for the quarter-order flow of the annulus wave")
for tv in [10, 100, 1000]:
    E = np.array([complex(kummer4(ph * mp.mpf(tv) ** 0.25 * mp.sqrt(mp.mpf(s)))) for s in nodes])
    def u(xs):
        out = np.empty(len(xs), complex)
        for i in range(0, len(xs), 2000):
            out[i:i + 2000] = np.cos(np.outer(xs[i:i + 2000], nodes)) @ (wts * E)
        return out
    xs = np.arange(0, 4.6 * tv + 20, 0.05)
    i = int(np.argmax(np.abs(u(xs))))
    fine = np.linspace(xs[max(i - 1, 0)], xs[min(i + 1, len(xs) - 1)], 2001)
    vf = np.abs(u(fine))
    emit("kSlowDecaySup%d" % tv, vf.max())
    emit("kSlowDecayArgSup%d" % tv, fine[int(np.argmax(vf))])
