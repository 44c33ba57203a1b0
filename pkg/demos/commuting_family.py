"""
A commuting family in U(gl_3)
=============================

The column determinant of t + mu + E[-1] acting on 1 gives polynomials in t
whose coefficients are elements of U(gl_n).  For mu of Jordan type (2,1)
they pairwise commute, and the shift t -> t + a matches mu -> mu + a.
"""

from fractions import Fraction
from itertools import combinations

from shiftalg import JordanData, YoungDiagram, u_commutator
from shiftalg import shift as S

jd = JordanData(((Fraction(0), YoungDiagram((2, 1))),))
table = S.phi_table(jd.matrix())

for (m, k), u in sorted(table.generators().items()):
    print(f"phi^({k})_{m} =", u)

gens = list(table.generators().values())
print("all commutators vanish:",
      all(u_commutator(a, b) == 0 for a, b in combinations(gens, 2)))

print("shift identity holds for a = 3/2:", S.check_shift(jd.matrix(), Fraction(3, 2)))
