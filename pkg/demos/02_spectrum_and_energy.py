"""
Spectrum and energy
===================

Two routes to the same nonzero eigenvalues: Jacobi on the full matrix, and
Jacobi on the small class-reduced matrix (one row per gcd class).
"""

import math

from zdg import class_partition, factorize
from zdg.spectra import Mode, closed_eigenvalues_p3, energy_closed_p3, reduced_class_matrix, spectrum

for p in (2, 3, 5, 7):
    cs = class_partition(factorize(p**3))
    dense = spectrum(cs, mode=Mode.FULL_DENSE)
    reduced = spectrum(cs, mode=Mode.CLASS_REDUCED)
    print(f"Z_{p**3}: N={cs.total_vertices}")
    print("  dense    ", [round(x, 10) for x in dense.nonzero], "zeros:", dense.zero_multiplicity)
    print("  reduced  ", [round(x, 10) for x in reduced.nonzero])
    print("  closed   ", [round(x, 10) for x in closed_eigenvalues_p3(p)])
    print("  energy   ", round(dense.energy, 10), "vs", round(energy_closed_p3(p), 10))

# the reduced matrix for Z_12 has one row per class: 2, 3, 6, 4
print(reduced_class_matrix(class_partition(factorize(12))).entries.round(4))

# the reduced route needs no dense matrix, so big moduli are cheap
big = spectrum(class_partition(factorize(1009**3)))
print("Z_{1009^3}: energy", big.energy, "zeros", big.zero_multiplicity)
print("closed form:", 1008 * math.sqrt(1 + 4 * 1009))
