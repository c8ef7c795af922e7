#!/usr/bin/env python3
"""Independent oracles for the frozen expected values in the C++ test suites.

Every value here is computed by a route that does not share code with the
library: mpmath quadrature / series with 30+ digits, direct trigonometric sums,
or fine-grid numerics in numpy. Run it and paste the printed values into the
tests; it is not part of the build.
"""
import math

import mpmath as mp
import numpy as np

mp.mp.dps = 30
TWO_PI = 2 * mp.pi


def box_pdf(m, x):
    """phi_m on the circle: height m on |x - 1/8| <= 1/(2m), wrapped mod 1."""
    d = (x - mp.mpf(1) / 8 + mp.mpf(1) / 2) % 1 - mp.mpf(1) / 2
    return m if abs(d) <= mp.mpf(1) / (2 * m) else 0


def box_coeff_quad(m, n):
    lo = mp.mpf(1) / 8 - mp.mpf(1) / (2 * m)
    hi = mp.mpf(1) / 8 + mp.mpf(1) / (2 * m)
    return mp.quad(lambda x: m * mp.exp(-1j * TWO_PI * n * x), [lo, hi])


def section(title):
    print()
    print("==", title)


section("phi_4 coefficient n=1 (quadrature vs closed form)")
q = box_coeff_quad(4, 1)
cf = mp.exp(-1j * TWO_PI / 8) * mp.sin(mp.pi / 4) / (mp.pi / 4)
print("quad  ", mp.nstr(q, 20))
print("closed", mp.nstr(cf, 20), "modulus", mp.nstr(abs(cf), 20))

section("phi_2 spectrum n=0..5 by quadrature (support wraps)")
for n in range(6):
    c = mp.quad(lambda x: box_pdf(2, x) * mp.exp(-1j * TWO_PI * n * x), [0, mp.mpf(3) / 8, mp.mpf(7) / 8, 1])
    print(n, mp.nstr(c.real, 17), mp.nstr(c.imag, 17))

section("Fejer mean of phi_2 at x=1/8, N=64, direct convolution on 2^14 grid")
G = 2 ** 14
N = 64
grid = np.arange(G) / G
k = np.arange(-N + 1, N)
w = 1 - np.abs(k) / N
# F_N on the grid as a real cosine sum
fejer = np.ones(G)
for n in range(1, N):
    fejer += 2 * (1 - n / N) * np.cos(2 * np.pi * n * grid)
d = (grid - 0.125 + 0.5) % 1 - 0.5
phi2 = np.where(np.abs(d) <= 0.25, 2.0, 0.0)
x0 = 1 / 8
# (phi2 * F_N)(x0) = integral phi2(y) F_N(x0 - y) dy, midpoint-ish grid sum
idx = (np.round((x0 - grid) * G).astype(int)) % G
print("direct conv value", np.sum(phi2 * fejer[idx]) / G)

section("delta_{1/4} * delta_{1/3} -> delta_{7/12}, coefficients n=1..3")
for n in range(1, 4):
    print(n, mp.nstr(mp.exp(-1j * TWO_PI * n * mp.mpf(7) / 12), 17))

section("prod_{m=1}^{50} |phi_{11^m}^(1)| and limiting modulus for n=1..4")
for n in range(1, 5):
    p = mp.mpf(1)
    for m in range(1, 201):
        t = mp.pi * n / mp.mpf(11) ** m
        p *= mp.sin(t) / t
    print(n, mp.nstr(p, 17))

section("int |F_16 - 1| by direct kernel sum on a fine grid (2^16 points)")
G = 2 ** 16
x = np.arange(G) / G
F = np.ones(G)
for n in range(1, 16):
    F += 2 * (1 - n / 16) * np.cos(2 * np.pi * n * x)
print("L1", np.mean(np.abs(F - 1)))
G = 33
x = np.arange(G) / G
F = np.ones(G)
for n in range(1, 16):
    F += 2 * (1 - n / 16) * np.cos(2 * np.pi * n * x)
print("L1 on 33-point grid", np.mean(np.abs(F - 1)))

section("phi_2 convolved 20 times, N=16: Fejer bound")
b = 0
for n in range(1, 16):
    b += 2 * (1 - n / 16) * abs(math.sin(math.pi * n / 2) / (math.pi * n / 2)) ** 20
print("bound", b)

section("telescoping products")
for M in (1, 2, 10, 10 ** 6):
    print(M, mp.nstr(mp.mpf(M + 2) / (2 * (M + 1)), 20))
p = mp.mpf(1)
for m in range(1, 3):
    p *= mp.mpf(m * m + 2 * m) / (m + 1) ** 2
print("direct M=2", p)

section("Benford constants")
print("log10 2", mp.nstr(mp.log10(2), 20))
print("L1 of point mass on digit 1", mp.nstr(2 * (1 - mp.log10(2)), 20))

section("first-digit probabilities of phi_2 (log10 mantissa density)")
for j in range(1, 10):
    a, bnd = mp.log10(j), mp.log10(j + 1)
    pts = sorted({a, bnd} | {v for v in (mp.mpf(3) / 8, mp.mpf(7) / 8) if a < v < bnd})
    print(j, mp.nstr(mp.quad(lambda t: box_pdf(2, t), pts), 17))

section("box modulus m=11^3, n=1")
m = mp.mpf(11) ** 3
t = mp.pi / m
print(mp.nstr(mp.sin(t) / t, 20), "lower", mp.nstr(1 - t ** 2 / 6, 20))

section("Pareto density and sampler")
print("2/e", mp.nstr(2 / mp.e, 20))
print("1/(4e^2)", mp.nstr(1 / (4 * mp.e ** 2), 20))
print("norm a=1.5,2,3", [mp.nstr(mp.quad(lambda x: a / (x * mp.log(x) ** (a + 1)), [mp.e, mp.inf]), 15) for a in (1.5, 2, 3)])
# numeric CDF inversion oracle for alpha=2, u=1/2
root = mp.findroot(lambda x: mp.quad(lambda y: 2 / (y * mp.log(y) ** 3), [mp.e, x]) - mp.mpf(1) / 2, 4)
print("inverse CDF alpha=2 u=1/2", mp.nstr(root, 20), "exp(sqrt2)", mp.nstr(mp.exp(mp.sqrt(2)), 20))
print("exp(10)", mp.nstr(mp.exp(10), 20))

section("Pareto mantissa (base e) density and CDF, alpha=2")
print("f(1) = 2 zeta(3)", mp.nstr(2 * mp.zeta(3), 20))
s = mp.mpf(2)
print("f(2)", mp.nstr(2 * mp.nsum(lambda m: 1 / (s * mp.log(s * mp.e ** m) ** 3), [1, mp.inf]), 20))
print("F(2)", mp.nstr(mp.zeta(2) - mp.zeta(2, 1 + mp.log(2)), 20))
print("F(2) direct", mp.nstr(mp.nsum(lambda m: m ** -2 - (m + mp.log(2)) ** -2, [1, mp.inf]), 20))
print("int_1^e f = ", mp.nstr(mp.quad(lambda u: 2 * mp.nsum(lambda m: 1 / (u * mp.log(u * mp.e ** m) ** 3), [1, mp.inf]), [1, mp.e]), 15))

section("Pareto log-mantissa (base e) Fourier moduli |g^(n)|, alpha=2, n=1..8")
for n in range(1, 9):
    c = mp.quadosc(lambda y: 2 * y ** -3 * mp.exp(-1j * TWO_PI * n * y), [1, mp.inf], omega=TWO_PI * n)
    print(n, mp.nstr(abs(c), 17), mp.nstr(c, 17))

section("Pareto log10-mantissa moduli, alpha=2, n=1..4")
L = mp.log(10)
for n in range(1, 5):
    # Z = Y/L; E exp(-2 pi i n Z)
    c = mp.quadosc(lambda y: 2 * y ** -3 * mp.exp(-1j * TWO_PI * n * y / L), [1, mp.inf], omega=TWO_PI * n / L)
    print(n, mp.nstr(abs(c), 17))

section("Fejer delta closed-form spot values (direct sum)")
def fejer_direct(alpha, N, x):
    return sum((1 - abs(n) / mp.mpf(N)) * mp.exp(1j * TWO_PI * n * (x - alpha)) for n in range(-N, N + 1)).real
print("alpha=0,N=8,x=1/2", mp.nstr(fejer_direct(0, 8, mp.mpf(1) / 2), 20))
print("alpha=1/4,N=16,x=0.3", mp.nstr(fejer_direct(mp.mpf(1) / 4, 16, mp.mpf("0.3")), 20))

section("Dirichlet kernel for weak pairing of delta_0.3 with flat test coefficients, N=8")
a = mp.mpf("0.3")
print(mp.nstr(sum(mp.exp(-1j * TWO_PI * n * a) for n in range(-8, 9)), 20),
      mp.nstr(mp.sin(17 * mp.pi * a) / mp.sin(mp.pi * a), 20))

section("atoms {0, sqrt2-1}: |g^(n)|^M")
g = mp.sqrt(2) - 1
print("M=200 n=1", mp.nstr(abs(mp.cos(mp.pi * g)) ** 200, 10))
for n in range(1, 9):
    print("M=500 n=%d" % n, mp.nstr(abs(mp.cos(mp.pi * n * g)) ** 500, 10))
print("closest p/q to sqrt2-1 with q<=1024:", min(abs(g - mp.mpf(round(g * q)) / q) for q in range(1, 1025)))

section("counterexample: exact first-digit law of sum_{m=1}^{1000} box(11^m) mod 1, base 10")
# h^(n) = prod_m e^{-2 pi i n/8} sinc(pi n / 11^m); prod of phases = e^{-2 pi i n 125} = 1.
NMAX = 400000
n = np.arange(1, NMAX + 1, dtype=float)
h = np.ones(NMAX)
for m in range(1, 40):
    t = np.pi * n / 11.0 ** m
    h *= np.sinc(t / np.pi)
probs = []
for j in range(1, 10):
    a, bnd = math.log10(j), math.log10(j + 1)
    # int_a^b (1 + 2 sum_n Re h(n) e^{2 pi i n x}) dx, h real here
    integ = (np.sin(2 * np.pi * n * bnd) - np.sin(2 * np.pi * n * a)) / (2 * np.pi * n)
    probs.append((bnd - a) + 2 * np.sum(h * integ))
print("digit probs", ["%.12f" % p for p in probs], "sum", sum(probs))
ben = [math.log10(1 + 1 / j) for j in range(1, 10)]
print("L1 to Benford", sum(abs(p - b) for p, b in zip(probs, ben)))

section("boxmix family 3 + (m mod 5), M=200: max_n<=64 |h^(n)|")
mx = 0
for nn in range(1, 65):
    p = 1.0
    for m in range(1, 201):
        mm = 3 + (m % 5)
        t = math.pi * nn / mm
        p *= abs(math.sin(t) / t)
    mx = max(mx, p)
print("max modulus", mx)

section("phi_4 repeated M=30: Fejer bound N=64")
bound = 0
for nn in range(1, 64):
    t = math.pi * nn / 4
    bound += 2 * (1 - nn / 64) * abs(math.sin(t) / t) ** 30
print("bound", bound)

section("identical boxes i in {4,8,32}, M=200, N=64: Fejer bound")
for i in (4, 8, 32):
    bound = 0
    for nn in range(1, 64):
        t = math.pi * nn / i
        bound += 2 * (1 - nn / 64) * abs(math.sin(t) / t) ** 200
    print(i, bound)
