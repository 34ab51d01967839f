"""Independent derivation of the frozen expected values used by the test suite.

Uses sympy only; nothing from the package is imported.  Run with
``python3 tests/oracles/derive_values.py`` and compare with the constants in the
tests.
"""

import sympy as sp

t, s1, s2, s3 = sp.symbols("t s1 s2 s3")


def series_coeffs(expr, var, order):
    poly = sp.series(expr, var, 0, order + 1).removeO()
    return [sp.Rational(poly.coeff(var, k)) if k else sp.Rational(poly.subs(var, 0)) for k in range(order + 1)]


def trunc2(expr, T):
    """Multivariate truncation at total degree T via a scaling variable."""
    e = sp.symbols("e")
    scaled = expr.subs({s1: e * s1, s2: e * s2}, simultaneous=True)
    ser = sp.series(scaled, e, 0, T + 1).removeO()
    return sp.expand(ser.subs(e, 1))


def reversion():
    # compositional inverse of t + t^2 through order 5
    g = sp.symbols("g")
    sol = (-1 + sp.sqrt(1 + 4 * t)) / 2
    print("reverse(t+t^2, 5) =", series_coeffs(sol, t, 5))


def homography_example():
    T = 7
    print("s1^2/(1+s1) =", trunc2(s1**2 / (1 + s1), T))


def affine_jets_example():
    print("t/(1+t) T=3:", series_coeffs(t / (1 + t), t, 3))
    print("t^2/(1+t) T=3:", series_coeffs(t**2 / (1 + t), t, 3))


def fit_examples():
    X0, X1, X2 = 1 + t, t, t**2
    print("fit target (1+t, t, t^2) jets T=7:",
          series_coeffs(X1 / X0, t, 7), series_coeffs(X2 / X0, t, 7))
    # (t, t^2 + t^7): solve x_j X0 = X_j mod t^8 with X0 = 1 + u1 t + u2 t^2
    u1, u2 = sp.symbols("u1 u2")
    X0 = 1 + u1 * t + u2 * t**2
    eqs = []
    for x in (t, t**2 + t**7):
        prod = sp.expand(x * X0)
        eqs += [prod.coeff(t, d) for d in range(3, 8)]
    print("fit (t, t^2+t^7) solutions:", sp.solve(eqs, [u1, u2], dict=True))


def normalize_param_example():
    X = [2, 2 * t + t**2, 2 * t**2]
    lam = sp.Rational(1, 2)
    X = [sp.expand(lam * p) for p in X]
    a = 1 / sp.diff(X[1], t).subs(t, 0)
    print("normalize_param:", [sp.expand(p.subs(t, a * t)) for p in X])


def reduce_order1_example():
    # raw components (s1+s2, s2, s1^2, s1 s2, s2^2): coefficient matrix C, A = C^-1
    monos = [s1, s2, s1**2, s1 * s2, s2**2]
    comps = [s1 + s2, s2, s1**2, s1 * s2, s2**2]
    C = sp.Matrix([[sp.Poly(c, s1, s2).coeff_monomial(m) for m in monos] for c in comps])
    print("reduce_to_order_1 A =", C.inv().tolist())


def normalize_order_r_example():
    T = 6
    monos = [s1, s2, s1**2, s1 * s2, s2**2]
    comps = [trunc2(m / (1 + s1), T) for m in monos]
    C = sp.Matrix([[sp.Poly(c, s1, s2).coeff_monomial(m) for m in monos] for c in comps])
    A = C.inv()
    red = [sp.expand(sum(A[i, j] * comps[j] for j in range(5))) for i in range(5)]
    red = [trunc2(x, T) for x in red]
    P = {m: sp.Poly(x - m, s1, s2) for m, x in zip(monos, red)}
    cubic = {m: sum(c * s1**e[0] * s2**e[1] for e, c in zip(P[m].monoms(), P[m].coeffs()) if sum(e) == 3)
             for m in monos[2:]}
    print("order-1 germ weight-1:", red[:2], " P (deg 3):", cubic)
    H1, H2 = s1**2 / 2, s1 * s2 / 2
    new = [trunc2(x.subs({s1: s1 + H1, s2: s2 + H2}, simultaneous=True), T) for x in red]
    C2 = sp.Matrix([[sp.Poly(c, s1, s2).coeff_monomial(m) for m in monos] for c in new])
    fixed = [trunc2(sp.expand(sum(C2.inv()[i, j] * new[j] for j in range(5))), T) for i in range(5)]
    P2 = {m: sp.expand(sum(c * s1**e[0] * s2**e[1] for e, c in zip(sp.Poly(x - m, s1, s2).monoms(), sp.Poly(x - m, s1, s2).coeffs()) if sum(e) == 3))
          for m, x in zip(monos[2:], fixed[2:])}
    print("after H: P' (deg 3) =", P2)


def family_line():
    T = 7
    x20 = s1**2 + s1**7
    print("family line sigma=(1,1): xi_20 =", sp.expand(x20.subs({s1: t, s2: t})))


def a_equation_instance():
    print("a_j dividend:", sp.expand(s2**3 * s2 - s2**3 * s1))


if __name__ == "__main__":
    reversion()
    homography_example()
    affine_jets_example()
    fit_examples()
    normalize_param_example()
    reduce_order1_example()
    normalize_order_r_example()
    family_line()
    a_equation_instance()
