r"""
The radial minimizer
====================

The stationary profiles satisfy t phi(w(t)) = tau with w = t H'/H.  The
boundary data fix tau through psi(r, R, tau) = log(R*/r*).  This script
tabulates the solution for n = 4 and compares it with the boundary profile
H_1, which minimizes the lambda -> 0 limit instead.
"""

import numpy as np

from annulus_energy import Annulus, build_radial_minimizer, make_boundary_profile, psi
from annulus_energy.euler_lagrange import el_residual_scaled

domain = Annulus(4, 1.0, 2.0)
target = Annulus(4, 1.0, np.e)

sol = build_radial_minimizer(domain, target)
print(sol.to_json(indent=2))

# psi is increasing in tau, so the boundary condition has one solution
for tau in (0.5, 1.0, 2.0, sol.tau_star, 8.0):
    print(f"psi(tau={tau:.6f}) = {psi(1.0, 2.0, tau, 4):.10f}")

h1 = make_boundary_profile(domain, target)
t = np.linspace(1.0, 2.0, 6)
print()
print(f"{'t':>5}  {'H_*':>12}  {'H_1':>12}  {'w_*':>10}  {'EL res H_*':>11}  {'EL res H_1':>11}")
for ti, a, b, w, ra, rb in zip(t, sol.profile(t), h1(t), sol.w_at(t),
                                el_residual_scaled(sol.profile, t), el_residual_scaled(h1, t)):
    print(f"{ti:>5.2f}  {a:>12.8f}  {b:>12.8f}  {w:>10.6f}  {ra:>11.1e}  {rb:>11.3f}")
