"""Independent reference values for the C++ tests.

Computed with mpmath (40 digits) and scipy, without touching the library.
Run `python3 tests/oracles/oracles.py > tests/unit/oracle_values.hpp` to
regenerate; the header is committed and the tests only read it.
"""
import mpmath as mp
from scipy.integrate import solve_ivp
import numpy as np

mp.mp.dps = 40


def sphere_area(n):
    return 2 * mp.pi ** (mp.mpf(n) / 2) / mp.gamma(mp.mpf(n) / 2)


def dr_density(p, q, r):
    return 2 ** (p + q) * mp.sinh(r / 2) ** (p + q) * mp.cosh(r / 2) ** q


def dr_drift(p, q, r):
    return mp.diff(lambda s: mp.log(dr_density(p, q, s)), r)


def dr_green(p, q, r, R=mp.inf):
    n = p + q + 1
    return mp.quad(lambda s: 1 / dr_density(p, q, s), [r, r + 1, r + 10, R]) / sphere_area(n)


def yukawa(n, lam, r):
    nu = mp.mpf(n) / 2 - 1
    k = mp.sqrt(lam)
    return (2 * mp.pi) ** (-mp.mpf(n) / 2) * (k / r) ** nu * mp.besselk(nu, k * r)


def ko_value(big_psi):
    return mp.quad(lambda s: 1 / mp.sqrt(big_psi(s)), [1, mp.inf])


def dr_linear_large(p, q, radii):
    """u'' + c u' = u, u(0) = 1, u'(0) = 0, started from the series at r0."""
    n = p + q + 1
    r0 = 1e-4

    def c(r):
        return (p + q) / 2 / np.tanh(r / 2) + q / 2 * np.tanh(r / 2)

    def rhs(r, y):
        return [y[1], y[0] - c(r) * y[1]]

    y0 = [1 + r0 ** 2 / (2 * n), r0 / n]
    sol = solve_ivp(rhs, (r0, max(radii)), y0, method="DOP853", rtol=1e-13, atol=1e-15,
                    t_eval=radii)
    return list(sol.y[0])


def three_g_lhs():
    # x = 0, y = 0.5 e1 in the unit ball of R^3; the spherical mean of
    # G_B(., y) over |z| = rho is the radial Green function at max(rho, |y|).
    g = lambda s: (1 / s - 1) / (4 * mp.pi)
    f = lambda rho: g(rho) * g(max(rho, mp.mpf("0.5"))) * 4 * mp.pi * rho ** 2
    return mp.quad(f, [0, mp.mpf("0.5"), 1])


values = {}
values["A_dr21_r0p5"] = dr_density(2, 1, mp.mpf("0.5"))
values["A_dr21_r3"] = dr_density(2, 1, mp.mpf(3))
values["logA_dr87_r2"] = mp.log(dr_density(8, 7, mp.mpf(2)))
values["drift_dr43_r1"] = dr_drift(4, 3, mp.mpf(1))
values["drift_dr87_r0p1"] = dr_drift(8, 7, mp.mpf("0.1"))
values["omega_4"] = sphere_area(4)
values["G_dr20_r1"] = dr_green(2, 0, mp.mpf(1))
values["G_dr21_r0p5"] = dr_green(2, 1, mp.mpf("0.5"))
values["G_dr21_r1"] = dr_green(2, 1, mp.mpf(1))
values["G_dr21_r3"] = dr_green(2, 1, mp.mpf(3))
values["G_dr43_r2"] = dr_green(4, 3, mp.mpf(2))
values["G_dr87_r5"] = dr_green(8, 7, mp.mpf(5))
values["GB_dr21_R2_r0p5"] = dr_green(2, 1, mp.mpf("0.5"), mp.mpf(2))
values["invA_dr21_1_3"] = mp.quad(lambda s: 1 / dr_density(2, 1, s), [1, 3])
values["yukawa_3_1_r1"] = yukawa(3, 1, mp.mpf(1))
values["yukawa_4_1_r0p5"] = yukawa(4, 1, mp.mpf("0.5"))
values["yukawa_5_2_r1p5"] = yukawa(5, 2, mp.mpf("1.5"))
values["ko_t2"] = ko_value(lambda s: s ** 3 / 3)
values["ko_t3"] = ko_value(lambda s: s ** 4 / 4)
values["I_euclid_power3"] = mp.quad(lambda r: r * (1 + r) ** -3, [0, mp.inf])
values["I_euclid_exp"] = mp.quad(lambda r: r * mp.exp(-r), [0, mp.inf])
values["I_dr_power3"] = mp.quad(lambda r: (1 + r) ** -3, [0, mp.inf])
values["I_dr_exp"] = mp.quad(lambda r: mp.exp(-r), [0, mp.inf])
u = dr_linear_large(2, 1, [1.0, 2.0, 3.0])
values["dr21_linear_u1"] = u[0]
values["dr21_linear_u2"] = u[1]
values["dr21_linear_u3"] = u[2]
values["three_g_lhs"] = three_g_lhs()

print("#pragma once")
print("// Generated by tests/oracles/oracles.py (mpmath, scipy). Do not edit.")
print("namespace oracle {")
for k, v in values.items():
    print(f"inline constexpr double {k} = {mp.nstr(mp.mpf(v), 17)};")
print("}  // namespace oracle")
