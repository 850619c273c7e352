"""Automorphism groups by backtracking, and what they look like."""

from holomorph.autgrp import automorphism_group, characteristic_subgroups, mao
from holomorph.groups import builtin_group

for spec in ["cyclic:8", "quaternion:8", "dihedral:6", "elementary_abelian:2:3", "alternating:5", "alternating:6"]:
    G = builtin_group(spec)
    A = automorphism_group(G)
    print(f"{G.label:<26} |G|={G.order:<4} |Aut|={A.order:<6} |Inn|={A.inner_order:<4} "
          f"|Out|={A.out_order:<3} exp(Out)={A.out_exponent:<3} mao={A.max_order()}")

# groups with a huge GL are kept as matrices; only class representatives are enumerated
A = automorphism_group(builtin_group("elementary_abelian:2:6"))
print("\nAut(C2^6): order", A.order, "enumerated:", A.enumerated, "classes:", len(A.class_representatives()))
print("mao(C2^6) =", A.max_order())

G = builtin_group("dihedral:6")
print("\ncharacteristic subgroups of", G.label)
for N in characteristic_subgroups(G):
    print("  order", N.order, "members", list(N.members))
print("mao(S3) =", mao(builtin_group("symmetric:3")))
