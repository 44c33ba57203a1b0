"""
Segal-Sugawara vectors at the critical level
============================================

The coefficients of cdet(tau + E[-1]) are annihilated by the positive modes
of the loop algebra in the vacuum module at level -n.  A lone generator is
not, and the first probe that sees it is reported.
"""

from shiftalg.affine import LoopAlgebra, is_ss_vector, segal_sugawara_vectors

for family in ("cdet", "psi", "theta"):
    vecs = segal_sugawara_vectors(family, 2)
    print(family, [is_ss_vector(v)[0] for v in vecs])

ok, witnesses = is_ss_vector(LoopAlgebra(2).E(1, 2))
probe, image = witnesses[0]
print("E[1,2;-1] is a vector:", ok, " first witness:", probe, "->", image)
