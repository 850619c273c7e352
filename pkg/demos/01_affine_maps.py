"""Affine maps g -> x * alpha(g) on a small dihedral group."""

import numpy as np

from holomorph.affine import AffineMap, affine_order, affine_order_oracle, cycle_lengths, ell_lower_bound, shift
from holomorph.groups import dihedral

G = dihedral(4)  # order 8; index i is r^i, index 4 + i is r^i s
r, s = 1, 4
print(G, "element orders:", G.element_orders.tolist())

# conjugation by r is an automorphism
alpha = np.asarray(G.mul(G.mul(r, np.arange(8)), G.inv(r)))
print("alpha =", alpha.tolist())

A = AffineMap.make(G, s, alpha)
print("A as a permutation:", A.as_permutation().tolist())

# ord(alpha) = 2, so A^2 is left translation by the shift s * alpha(s)
sh = shift(G, s, alpha)
print("shift:", sh, "of order", G.element_order(sh))
print("order by shift:", affine_order(A), " by walking cycles:", affine_order_oracle(A))
print("cycle lengths:", cycle_lengths(A))
print("every cycle length is a multiple of", ell_lower_bound(G, s, alpha))

# all x at once
orders = [affine_order(AffineMap.make(G, x, alpha)) for x in range(8)]
print("orders over x:", orders, "lcm =", np.lcm.reduce(orders))
