"""Normal modes and quantum levels of a four-particle chain.

Walks through the closed-form diagonalization of the coupling matrix,
shows the mode shapes (in-phase breathing up to fully alternating), and
enumerates the lowest quantum levels, whose energies grow like
rank**(1/N) once thousands of levels are in play.
"""

import numpy as np

from harmonic_crystal import (CrystalParams, build_level_table, diagonalize,
                              level_scaling_exponent)

params = CrystalParams(n_particles=4, kappa=1.0, lam=1.0, delta_q=1.0)
spectrum = diagonalize(params)

print("Four particles, site and neighbor springs both at m*omega_LJ^2.")
print(f"eigenvalues mu_n:   {np.round(spectrum.mu, 6)}")
print(f"frequencies omega_n: {np.round(spectrum.omega, 6)} (omega_LJ)\n")

print("Mode shapes (columns of the eigenvector matrix):")
print("the lowest mode moves all particles together, the middle pair")
print("twice as far; the highest alternates every neighbor.")
for n in range(4):
    shape = " ".join(f"{x:+.3f}" for x in spectrum.X[:, n])
    print(f"  mode {n + 1} (omega={spectrum.omega[n]:.3f}):  {shape}")

table = build_level_table(spectrum, 5000)
print("\nLowest multi-mode levels (quanta, energy/hbar omega_LJ):")
for rank in range(1, 9):
    level = table.level(rank)
    print(f"  rank {rank}: {level.quanta}  E = {level.energy:.6f}")

slope = level_scaling_exponent(table)
print(f"\nlog-log slope of E vs rank over ranks 100..5000: {slope:.4f}")
print(f"(sub-linear growth, close to 1/N = {1 / 4})")

print("\nThe same slope flattens further with a fifth particle:")
five = diagonalize(CrystalParams(n_particles=5, kappa=1.0, lam=1.0,
                                 delta_q=1.0))
print(f"  N=5 slope: {level_scaling_exponent(build_level_table(five, 5000)):.4f}"
      f"  (1/N = {1 / 5})")
