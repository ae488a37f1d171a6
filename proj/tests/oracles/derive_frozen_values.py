"""Independent oracles for values frozen into the C++ unit and acceptance tests.

Run with: python3 tests/oracles/derive_frozen_values.py
Each block prints the values that the corresponding C++ test asserts.
Nothing here shares code with the C++ implementation.
"""
from fractions import Fraction
from math import comb, factorial, log, sqrt, pi
import sympy as sp
import mpmath as mp

mp.mp.dps = 40


def section(title):
    print(f"\n== {title}")


section("gevrey(0.5, 2)")
print([1.0, 1.0, sqrt(2.0)])

section("(M.1) exact, gevrey(2,10): (p!^2)^2 <= ((p-1)!^2)((p+1)!^2)")
print(all((factorial(p) ** 2) ** 2 <= factorial(p - 1) ** 2 * factorial(p + 1) ** 2 for p in range(1, 10)))

section("(M.2) exact binomial oracle")
def m2_sup(s, P, H, upto=None):
    upto = P if upto is None else upto
    best = Fraction(0)
    for p in range(upto + 1):
        for q in range(p + 1):
            best = max(best, Fraction(comb(p, q) ** s, H ** p))
    return best
print("gevrey1 P=50 H=2 sup =", m2_sup(1, 50, 2), " first-half sup =", m2_sup(1, 50, 2, 25))
print("gevrey2 P=50 H=2 sup =", float(m2_sup(2, 50, 2)), " first-half sup =", float(m2_sup(2, 50, 2, 25)))
print("gevrey2 P=50 H=4 sup =", m2_sup(2, 50, 4), " first-half sup =", m2_sup(2, 50, 4, 25))

section("(M.3) truncated sums, A = 4, P = 400")
def m3_violations(s, P, A):
    bad = []
    for q in range(1, P // 2 + 1):
        lhs = sum(Fraction(1, p ** s) for p in range(q + 1, P + 1))
        rhs = Fraction(A * q, (q + 1) ** s)
        if lhs > rhs:
            bad.append(q)
    return bad
print("gevrey2 violations:", m3_violations(2, 400, 4))
v1 = m3_violations(1, 400, 4)
print("gevrey1 violations: count", len(v1), "first", v1[:5], "last", v1[-3:])

section("associated function M_p = p!, rho = 2")
vals = [2 ** p / factorial(p) for p in range(10)]
print(vals[:4], "M(2) =", log(max(vals)))

section("multi-index: (2!*... ) M_4 for p!^2")
print(factorial(4) ** 2)

section("komatsu L1: 3^p/(p+1)!")
r = [(3 ** p, factorial(p + 1)) for p in range(12)]
print([Fraction(a, b) for a, b in r[:5]], "max", max(Fraction(a, b) for a, b in r))

section("tail shift scan, r = (1,1.2,1.5,2.5,3,3.5), c = 2")
rr = [1, 1.2, 1.5, 2.5, 3, 3.5]
p0 = next(p0 for p0 in range(len(rr)) if all(rr[p + p0] > 2 for p in range(1, len(rr) - p0)))
first = next(p for p in range(len(rr)) if rr[p] > 2)
print("minimal p0 =", p0, "; first index with r_p > c =", first)

section("flat_exp jet at t = 1 (symbolic)")
t = sp.symbols('t', positive=True)
G = sp.exp(-1 / t)
print([sp.N(sp.diff(G, t, k).subs(t, 1), 17) for k in range(3)])

section("cutoff(1,2) symbolic derivatives")
x = sp.symbols('x', real=True)
u = sp.symbols('u', real=True)
Gs = lambda z: sp.exp(-1 / z)
F = Gs(u) / (Gs(u) + Gs(1 - u))
# right transition piece on (1,2): t = (2 - x)/(2 - 1)
right = F.subs(u, 2 - x)
for x0 in [sp.Rational(3, 2), sp.Rational(13, 10), sp.Rational(17, 10)]:
    ders = []
    expr = right
    for k in range(9):
        ders.append(float(sp.N(expr.subs(x, x0), 30)))
        expr = sp.diff(expr, x)
    print("x0 =", x0, ders)

section("cutoff(1,2) sup_k over the transition (mpmath, dense)")
mp.mp.dps = 30
def Gm(z):
    return mp.e ** (-1 / z) if z > 0 else mp.mpf(0)
def theta_right(xx):
    tt = 2 - xx
    return Gm(tt) / (Gm(tt) + Gm(1 - tt))
sups = []
# 401-point grid on [-2,2]: transition points are x = -2 + 0.01 i
pts = [mp.mpf(-2) + mp.mpf(4) * i / 400 for i in range(401)]
trans = [p for p in pts if 1 < p < 2]
for k in range(13):
    s = max(abs(mp.diff(theta_right, p, k)) for p in trans) if k > 0 else mp.mpf(1)
    sups.append(s)
print("s_k on 401-grid:", [mp.nstr(s, 12) for s in sups])
ratios = [sups[k] / (factorial(k + 1) * factorial(k)) for k in range(13)]
print("r_norm ratios, r=(1,2,3,..), M=p!:", [mp.nstr(q, 8) for q in ratios])
best = max(range(13), key=lambda k: (ratios[k], -k))
print("argmax k =", best, "value", mp.nstr(ratios[best], 15))

section("Gaussian pairing with cutoff(20,21)")
print(mp.nstr(mp.sqrt(mp.pi), 12))
section("integral of cutoff(1,2)")
print(mp.nstr(2 + 2 * mp.quad(lambda z: theta_right(z), [1, 2]), 15))
