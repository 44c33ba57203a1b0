"""
Which generators survive for a nilpotent mu
===========================================

Builds the diagram gamma for the nilpotent matrix of Jordan type (2,2,1,1),
prints the staircase with the excluded boxes marked, then checks the
Jacobian rank of the retained symbols against n + (n^2 - dim g^mu)/2.
"""

from fractions import Fraction

from shiftalg import JordanData, YoungDiagram
from shiftalg import shift as S
from shiftalg import verify as V
from shiftalg.cli import render_diagram, diagram_report

jd = JordanData(((Fraction(0), YoungDiagram((2, 2, 1, 1))),))
mu = jd.matrix()
n = jd.n

# x marks a box whose generator is dropped
print(render_diagram(diagram_report(mu, jd)))

sel = S.selection(n, jd.gamma())
dim = V.centralizer_dim(mu, jd)
print("dim g^mu =", dim, " expected rank =", n + (n * n - dim) // 2)

# rank at a seeded random point, exact over Q
res = V.independence_rank(S.symbol_table(mu), sel, seed=0)
print("rank", res.rank, "of", res.expected, "after", res.attempts, "attempt(s)")
