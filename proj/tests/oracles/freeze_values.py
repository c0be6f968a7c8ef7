#!/usr/bin/env python3
# Copyright 2026 The hqrate Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent arbitrary-precision evaluation of the regression constants
frozen into the C++ unit tests.

Everything here is evaluated with mpmath at 60 significant digits using
exact forms (complex exponentials kept complex, alternating binomial sums
evaluated directly since precision is not a concern). Run it to regenerate
the numbers frozen in tests/test_*.cc.
"""

import mpmath as mp

mp.mp.dps = 60


def purify_imp(F, T):
    F, T = mp.mpf(F), mp.mpf(T)
    a = mp.pi * (T - 1) / mp.sqrt(T)
    s = mp.sech(mp.log(T) / 2)
    pair = mp.exp(mp.pi * (T - 1) * (2 - 1j * s) / (2 * mp.sqrt(T))) + mp.exp(
        mp.pi * (T - 1) * (2 + 1j * s) / (2 * mp.sqrt(T)))
    P = mp.mpf(1) / 2 + mp.exp(a) * (F - 1) * F + pair * (2 * (F - 1) * F + 1) / 4
    assert abs(mp.im(P)) < mp.mpf(10) ** -50
    P = mp.re(P)
    Fo = (F + F * mp.exp(-mp.pi * (2 - 2 * T) / mp.sqrt(T))) / (4 * P) + (
        2 * F * mp.exp(a) * (mp.sin(mp.pi * (mp.mpf(3) / 2 - 2 / (T + 1))) * F + F - 1)) / (4 * P)
    return Fo, P


def swap_imp(F, T):
    F, T = mp.mpf(F), mp.mpf(T)
    x = mp.log(T) / 2
    return (mp.mpf(1) / 4 + mp.exp(2 * mp.pi * mp.sinh(x)) * (1 - 2 * F) ** 2 / 4
            + mp.exp(mp.pi * mp.sinh(x)) / 2 * (2 * (F - 1) * F + 1) * mp.cos(mp.pi / 2 * mp.tanh(x)))


def z_exact(N, P):
    P = mp.mpf(P)
    return mp.fsum(mp.binomial(N, k) * (-1) ** (k + 1) / (1 - (1 - P) ** k) for k in range(1, N + 1))


def pur_ideal(F):
    p = F * F + (1 - F) ** 2
    return F * F / p, p


def swap_ideal(F):
    return F * F + (1 - F) ** 2


def forward(F0, n, k, T):
    F = mp.mpf(F0)
    p1 = []
    for _ in range(k):
        if T == 1:
            Fo, p = pur_ideal(F)
        else:
            Fo, p = purify_imp(F, T)
        p1.append(p)
        F = Fo
    for _ in range(n):
        F = swap_ideal(F) if T == 1 else swap_imp(F, T)
    return F, p1


def invert(Ft, n, k, T):
    return mp.findroot(lambda x: forward(x, n, k, T)[0] - Ft, (mp.mpf('0.5000001'), mp.mpf(1)),
                       solver='bisect', tol=mp.mpf(10) ** -40, maxsteps=400)


def p_success(F, eta):
    return 1 - (2 * mp.mpf(F) - 1) ** (eta / (1 - eta))


def eff(P0, p1s):
    p = mp.mpf(P0)
    for q in p1s:
        p = p * q * (2 - p) / (3 - 2 * p)
    return p


def show(name, v):
    print(f"{name:48s} {mp.nstr(v, 17)}")


if __name__ == "__main__":
    show("transmittance(20,25.5)", mp.exp(-mp.mpf(20) / mp.mpf('25.5')))
    eta = mp.exp(-mp.mpf(20) / mp.mpf('25.5'))
    show("fidelity_from_interaction(s=1, eta(20))", (1 + mp.exp(-(1 - eta))) / 2)
    show("required_strength(0.75, 0.5)", -mp.log(mp.mpf('0.5')) / mp.mpf('0.5'))
    show("failure(0.8, eta(20))", (mp.mpf('0.6')) ** (eta / (1 - eta)))
    Fo, P = purify_imp('0.9', 1 - mp.mpf('1e-3'))
    show("purify_imperfect(0.9, 1-1e-3).fidelity", Fo)
    show("purify_imperfect(0.9, 1-1e-3).success", P)
    show("swap_imperfect(0.95, 1-1e-4)", swap_imp('0.95', 1 - mp.mpf('1e-4')))
    show("Z(64, 0.01)", z_exact(64, '0.01'))
    show("Z(64, 0.1)", z_exact(64, '0.1'))
    show("Z(16, 0.05)", z_exact(16, '0.05'))
    show("rate_parallel(6, 0.1, 2e-4)", 1 / (mp.mpf('2e-4') * z_exact(64, '0.1')))
    q = mp.mpf('0.9')
    show("z_multiplexed(4, 0.9)", (1 + 2 * q ** 4) / (1 - q ** 8))
    lo = z_exact(16, '0.1') + z_exact(8, '0.8')
    up = z_exact(16, '0.1') * z_exact(8, '0.8')
    pl = mp.mpf('0.1') * mp.mpf('0.8') * (2 - mp.mpf('0.1')) / (3 - 2 * mp.mpf('0.1'))
    show("bounds(3,0.1,0.8).lower", lo)
    show("bounds(3,0.1,0.8).approx", z_exact(8, pl))
    show("bounds(3,0.1,0.8).upper", up)
    _, p1s = forward('0.8', 0, 2, 1)
    show("effective_p(0.3488, F=0.8 two rounds)", eff('0.3488', p1s))
    show("Z(4, 0.5)", z_exact(4, '0.5'))
    F0 = invert(mp.mpf('0.98'), 6, 2, 1)
    show("invert(0.98, n=6, k=2, T=1)", F0)
    # Direct transmission, L = 80 km, F = 0.9.
    eta80 = mp.exp(-mp.mpf(80) / mp.mpf('25.5'))
    t80 = 2 * mp.mpf(80000) / mp.mpf('2e8')
    show("direct(0.9, 80, no purification)", p_success('0.9', eta80) / t80)
    F0p = mp.findroot(lambda x: pur_ideal(x)[0] - mp.mpf('0.9'), (mp.mpf('0.5000001'), mp.mpf('0.9')),
                      solver='bisect', tol=mp.mpf(10) ** -40, maxsteps=400)
    P0 = p_success(F0p, eta80)
    show("direct(0.9, 80, one purification)", eff(P0, [pur_ideal(F0p)[1]]) / t80)
    # Repeater, 80 km = 4 x 20 km, one round, ideal gates.
    eta20 = eta
    t20 = 2 * mp.mpf(20000) / mp.mpf('2e8')
    F0r = invert(mp.mpf('0.9'), 2, 1, 1)
    _, p1r = forward(F0r, 2, 1, 1)
    show("repeater(0.9, 80, k=1)", 1 / (t20 * z_exact(4, eff(p_success(F0r, eta20), p1r))))
    F0q = invert(mp.mpf('0.9'), 4, 0, 1)
    show("relay(0.9, n=4, L0=20)", p_success(F0q, eta20) ** 16 / t20)
    # Headline-scenario constants, lossy gates.
    T = 1 - mp.mpf('1e-5')
    F0h = invert(mp.mpf('0.98'), 6, 2, T)
    _, p1h = forward(F0h, 6, 2, T)
    ph = eff(p_success(F0h, eta20), p1h)
    show("headline F0", F0h)
    show("headline rate", 1 / (t20 * z_exact(64, ph)))
