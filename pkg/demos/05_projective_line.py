"""Element orders of PGammaL_2(q) acting on the projective line."""

import time

from holomorph.lie import matrix_order_p_part
from holomorph.simple import aut_order_histogram, psl2_order, verify_aut_orders_divide

for q in (8, 9, 27):
    hist, count, psl = aut_order_histogram(q)
    print(f"q={q}: |PGammaL|={count} |PSL|={psl} orders {hist}")

t = time.perf_counter()
rec = verify_aut_orders_divide(27)
print("\nq=27: every order divides", psl2_order(27), "->", rec.passed, f"({time.perf_counter() - t:.2f}s)")

# p-parts of matrix orders stay small
rec = matrix_order_p_part(2, 8, samples=2000)
print("GL_8(2): nu_2 histogram", rec.details["nu_p_histogram"], "bound", rec.details["bound"])
