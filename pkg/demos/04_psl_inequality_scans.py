"""Integer inequality scans over PSL_2(p^f) and PSL_d(q)."""

from holomorph.lie import check_inequality, monotone_in_f, psl_params, scan_psl2, scan_psl_d

for d, p, f in [(2, 2, 3), (2, 7, 3), (3, 2, 2), (4, 3, 1)]:
    c = check_inequality(psl_params(d, p, f))
    print(f"PSL({d},{p}^{f}): |S|={c.params.group_order} |Out|={c.params.out_order} lhs={c.lhs} rhs={c.rhs} holds={c.holds}")

r = scan_psl2(10**6)
print("\nPSL_2, f >= 3, q <= 10^6:", len(r.checks), "cases, exceptions (p, f):", r.exceptions)
r = scan_psl_d(10, 100)
print("PSL_d, 3 <= d <= 10, q <= 100:", len(r.checks), "cases, exceptions (d, q):", r.exceptions)
print("families that fail again after holding:", monotone_in_f(r))
