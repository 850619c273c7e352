"""F(G): the largest lcm over translations, compared with |G|."""

from holomorph.affine import frak_f, maffo
from holomorph.autgrp import automorphism_group
from holomorph.groups import builtin_group

rows = []
for spec in ["cyclic:12", "dihedral:5", "quaternion:16", "symmetric:4", "alternating:4", "alternating:5",
             "symmetric:5", "cyclic:4*cyclic:4", "cyclic:3*symmetric:3", "elementary_abelian:2:4", "elementary_abelian:3:3"]:
    G = builtin_group(spec)
    A = automorphism_group(G)
    res = frak_f(G, A)
    rows.append((G.label, G.order, A.max_order(), maffo(G, A), res.value))

print(f"{'group':<28}{'|G|':>6}{'mao':>6}{'maffo':>7}{'F':>6}  F/|G|")
for label, n, m, mf, f in rows:
    print(f"{label:<28}{n:>6}{m:>6}{mf:>7}{f:>6}  {f / n:.3f}")

# one automorphism per conjugacy class gives the same answer
G = builtin_group("alternating:6")
A = automorphism_group(G)
print("\nA6:", frak_f(G, A, class_reps=True).value, "with", len(A.class_representatives()), "classes of Aut(A6)")
