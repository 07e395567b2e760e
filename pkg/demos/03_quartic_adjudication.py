"""
Which quartic holds for Z_{p^2 q}?
==================================

The nonzero spectrum of Z_{p^2 q} is the root set of a monic quartic. Two
printings of its x^2 coefficient circulate: -2p(p-1)(q-1) and
-2p(p-1)(q-1)^2. Plugging the actual eigenvalues in settles it.
"""

from zdg.spectra import Variant, quartic_p2q, verify_quartic

pairs = [(2, 3), (3, 2), (2, 5), (5, 2), (3, 5), (5, 3), (2, 7), (7, 2)]
print(f"{'(p,q)':>7}  {'proof':>10}  {'statement':>10}")
for p, q in pairs:
    a = verify_quartic(p, q, Variant.PROOF_DERIVATION)
    b = verify_quartic(p, q, Variant.STATEMENT_AS_PRINTED)
    print(f"{str((p, q)):>7}  {a.max_residual:10.1e}  {b.max_residual:10.1e}")

# the two only coincide when (q-1)^2 == q-1, i.e. q = 2
print(quartic_p2q(2, 3, Variant.PROOF_DERIVATION).as_tuple())
print(quartic_p2q(2, 3, Variant.STATEMENT_AS_PRINTED).as_tuple())
