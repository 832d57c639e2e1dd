r"""
Minimizing sequence for n = 4
=============================

For n >= 4 no homeomorphism attains the infimum of the energy.  The maps
H_1(|x|) Phi^lambda(x/|x|) get arbitrarily close as lambda -> 0: the sphere
factor concentrates near one pole and the energy drops toward the bound.
"""

import math

from annulus_energy import (
    Annulus,
    SeparableMap,
    dirichlet_infimum,
    limit_energy,
    make_boundary_profile,
    quasiradial_energy,
)

domain = Annulus(4, 1.0, 2.0)
target = Annulus(4, 1.0, math.e)
h1 = make_boundary_profile(domain, target)

inf = dirichlet_infimum(domain, target)
print(f"infimum               {inf:.10f}")
print(f"lambda -> 0 limit     {limit_energy(h1):.10f}")
print()
print(f"{'lambda':>10}  {'energy':>14}  {'excess':>10}  {'quad err':>9}")

for k in range(11):
    lam = 2.0 ** -k
    rep = quasiradial_energy(SeparableMap(h1, lam))
    print(f"{lam:>10.6f}  {rep.energy:>14.8f}  {rep.relative_gap:>10.3e}  {rep.quadrature_error:>9.1e}")

# inversion symmetry of the sphere factor: lambda and 1/lambda give the same energy
a = quasiradial_energy(SeparableMap(h1, 1 / 16)).energy
b = quasiradial_energy(SeparableMap(h1, 16.0)).energy
print()
print(f"E(1/16) = {a:.12f}")
print(f"E(16)   = {b:.12f}")
