"""Run the per-group checks over a handful of groups and read the report."""

import json

from holomorph.harness import VerifyOptions, dump_report, run_verify

sources = ["builtin:dihedral:8", "builtin:quaternion:16", "builtin:symmetric:4", "builtin:cyclic:2*cyclic:6"]
report = run_verify(sources, VerifyOptions(seed=1, samples=500))

for r in report["records"]:
    print(r["label"], "F =", r["f_value"], "of", r["order"])
    print("   ", {k: v for k, v in r["checks"].items()})
print(report["summary"])

text = dump_report(report, None)
print("\nreport is", len(text), "bytes; first record keys:", sorted(json.loads(text)["records"][0]))
