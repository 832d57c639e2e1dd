r"""
Radial maps cannot reach the infimum
====================================

Solve the Euler-Lagrange equation for the best radial profile H_* and
compare three numbers in several dimensions: the infimum over all maps,
the energy of H_* composed with the conformal dilation at lambda = 1/8, and
the minimal radial energy.  For n >= 4 they are strictly ordered; for
n = 3 they agree.
"""

from annulus_energy import Annulus, gap_report

configs = [(1.0, 2.0, 1.0, 2.718281828459045), (1.0, 3.0, 2.0, 5.0)]

for r, R, r_star, R_star in configs:
    print(f"annuli  r={r}  R={R}  r*={r_star}  R*={R_star}")
    print(f"{'n':>3}  {'infimum':>14}  {'E[h*^1/8]':>14}  {'min radial':>14}  {'gap %':>7}")
    for n in range(3, 9):
        rep = gap_report(Annulus(n, r, R), Annulus(n, r_star, R_star))
        pct = 100 * rep.gap / rep.infimum
        print(f"{n:>3}  {rep.infimum:>14.6f}  {rep.quasiradial_eighth:>14.6f}  "
              f"{rep.minimal_radial:>14.6f}  {pct:>7.3f}")
    print()
