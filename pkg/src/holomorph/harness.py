"""Corpus loading and the per-group verification record.

A group source is ``builtin:<spec>``, ``ctab:<path>`` or ``pgrp:<path>``; a
bare string is read as a builtin spec. Records depend only on the group, the
seed and the options, so the report is the same for any number of workers.
"""

from __future__ import annotations

import json
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .affine import (
    check_pairs,
    frak_f,
    lcm_decomposition_batch,
    maffo,
    verify_csub_inequality,
    verify_lcm_div_conditions,
    verify_monotonicity,
)
from .autgrp import automorphism_group, characteristic_subgroups
from .errors import ParseError
from .groups import FiniteGroup, builtin_group
from .io import read_ctab, read_pgrp

EXHAUSTIVE_PAIRS = 24
EXHAUSTIVE_DECOMPOSITION = 48
DEFAULT_SAMPLES = 2000
DECOMPOSITION_SAMPLE_AUTOS = 32
_PAIR_CHUNK = 1 << 21


def load_group(source: str) -> FiniteGroup:
    kind, sep, rest = source.partition(":")
    if sep and kind == "ctab":
        return read_ctab(rest)
    if sep and kind == "pgrp":
        return read_pgrp(rest)
    if sep and kind == "builtin":
        return builtin_group(rest)
    return builtin_group(source)


def default_corpus() -> list[str]:
    """Builtins up to order 64, small symmetric and alternating groups, and C_a x C_b."""
    from .arith import primes_up_to

    out = [f"builtin:cyclic:{n}" for n in range(1, 65)]
    out += [f"builtin:dihedral:{n}" for n in range(1, 33)]
    for p in primes_up_to(64):
        k = 1
        while p**k <= 64:
            out.append(f"builtin:elementary_abelian:{p}:{k}")
            k += 1
    out += [f"builtin:quaternion:{m}" for m in (8, 16, 32, 64)]
    out += [f"builtin:symmetric:{n}" for n in range(1, 6)]
    out += [f"builtin:alternating:{n}" for n in range(1, 7)]
    out += [f"builtin:cyclic:{a}*cyclic:{b}" for a in range(1, 9) for b in range(a, 9)]
    return out


@dataclass
class Manifest:
    entries: list[str]
    caps: dict[str, int] = field(default_factory=dict)
    tiers: dict[str, bool] = field(default_factory=dict)


def read_manifest(path: str | Path) -> Manifest:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if isinstance(data, list):
        data = {"entries": data}
    entries = data.get("entries")
    if not entries or not all(isinstance(e, str) for e in entries):
        raise ParseError(f"{path}: 'entries' must be a non-empty list of group sources")
    base = Path(path).parent
    resolved = []
    for e in entries:
        kind, sep, rest = e.partition(":")
        if sep and kind in ("ctab", "pgrp") and not Path(rest).is_absolute():
            e = f"{kind}:{base / rest}"
        resolved.append(e)
    return Manifest(resolved, dict(data.get("caps", {})), dict(data.get("tiers", {})))


@dataclass(frozen=True)
class VerifyOptions:
    seed: int = 0
    samples: int = DEFAULT_SAMPLES
    timings: bool = False
    max_order: int = 1024


def _rng(seed: int, label: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(label.encode())])


def _pair_checks(G, aut, rng, samples: int) -> tuple[dict, list[dict]]:
    """Shift formula against cycle structure, and the cycle-length divisor bound."""
    n = G.order
    failures: list[dict] = []
    stats = {"pairs": 0, "mode": ""}
    if aut.enumerated and n <= EXHAUSTIVE_PAIRS:
        stats["mode"] = "exhaustive"
        orders = aut.as_group.element_orders.astype(np.int64)
        step = max(1, _PAIR_CHUNK // (n * n))
        batches = []
        for lo in range(0, aut.order, step):
            hi = min(lo + step, aut.order)
            alphas = aut.as_group.perms[lo:hi].astype(np.int64)
            rows = np.repeat(np.arange(hi - lo), n)
            xs = np.tile(np.arange(n), hi - lo)
            batches.append((alphas, orders[lo:hi], xs, rows, lo))
    else:
        stats["mode"] = "sampled"
        alphas = aut.sample(rng, samples)
        orders = np.asarray([int(o) for o in _orders_of(alphas)], dtype=np.int64)
        xs = rng.integers(0, n, size=samples)
        batches = [(alphas, orders, xs, np.arange(samples), None)]
    ok_oracle = ok_div = True
    for alphas, ords, xs, rows, offset in batches:
        pc = check_pairs(G, alphas, ords, xs, rows)
        stats["pairs"] += len(xs)
        bad_o = np.flatnonzero(pc.formula != pc.oracle)
        bad_d = np.flatnonzero(~(pc.cycles_divisible & pc.ell_divides_order))
        for t in bad_o[:5]:
            ok_oracle = False
            failures.append(_repro(G, "oracle", alphas[rows[t]], int(xs[t]), formula=int(pc.formula[t]), oracle=int(pc.oracle[t])))
        for t in bad_d[:5]:
            ok_div = False
            failures.append(_repro(G, "divisor", alphas[rows[t]], int(xs[t]), ell=int(pc.ell[t])))
        ok_oracle &= len(bad_o) == 0
        ok_div &= len(bad_d) == 0
    return {"oracle": ok_oracle, "divisor": ok_div, **stats}, failures


def _orders_of(alphas: np.ndarray):
    from .perm import batch_orders

    return batch_orders(alphas)


def _repro(G, check: str, alpha, x: int | None = None, **extra) -> dict:
    out = {"check": check, "group": G.label, "automorphism": [int(v) for v in alpha]}
    if x is not None:
        out["element"] = x
    out.update(extra)
    return out


def _decomposition(G, aut, chars, rng) -> tuple[bool | None, dict, list[dict]]:
    if not chars:
        return None, {"subgroups": 0}, []
    failures: list[dict] = []
    if aut.enumerated and G.order <= EXHAUSTIVE_DECOMPOSITION:
        idx = np.arange(aut.order)
        mode = "exhaustive"
    elif aut.enumerated:
        k = min(aut.order, DECOMPOSITION_SAMPLE_AUTOS)
        idx = np.sort(rng.choice(aut.order, size=k, replace=False))
        mode = "sampled"
    else:
        idx = None
        mode = "sampled"
    alphas = aut.as_group.perms[idx].astype(np.int64) if idx is not None else aut.sample(rng, DECOMPOSITION_SAMPLE_AUTOS)
    maps = 0
    ok = True
    for N in chars:
        for policy in ("min", "max"):
            for alpha in alphas:
                orders, k, parts, _ = lcm_decomposition_batch(G, N, alpha, rep_policy=policy)
                maps += len(orders)
                bad = np.flatnonzero(orders != k * parts)
                if len(bad):
                    ok = False
                    t = int(bad[0])
                    failures.append(
                        _repro(G, "decomposition", alpha, t, N=list(N.members), policy=policy, order=int(orders[t]), k=int(k[t]), lcm_part=int(parts[t]))
                    )
    return ok, {"subgroups": len(chars), "maps": maps, "mode": mode}, failures


def verify_group(source: str, options: VerifyOptions = VerifyOptions()) -> dict[str, Any]:
    """Run every check on one group and return its report record."""
    t0 = time.perf_counter()
    G = load_group(source)
    rng = _rng(options.seed, G.label)
    aut = automorphism_group(G, cap=options.max_order)
    fres = frak_f(G, aut)
    mao_val = aut.max_order()
    maffo_val = maffo(G, aut)
    n = G.order
    failures: list[dict] = []

    theorem_ok = fres.value <= n
    if not theorem_ok:
        failures.append(_repro(G, "theorem", fres.witness_auto, f_value=fres.value))
    chain_ok = mao_val <= maffo_val <= fres.value
    mao_ok = n == 1 or mao_val <= n - 1

    pairs, pf = _pair_checks(G, aut, rng, options.samples)
    failures += pf

    one, two = verify_lcm_div_conditions(G, aut)
    for rec in (one, two):
        for f in rec.failures[:5]:
            i = f["auto_index"]
            alpha = aut.images(i) if aut.enumerated else aut.class_representatives()[i].images
            failures.append(_repro(G, rec.name, alpha, **{k: v for k, v in f.items() if k not in ("group", "auto_index")}))

    chars = [N for N in characteristic_subgroups(G, aut) if not N.is_trivial and not N.is_whole]
    decomp_ok, decomp_stats, dfail = _decomposition(G, aut, chars, rng)
    failures += dfail

    csub_ok = mono_ok = None
    sub_details = []
    for N in chars:
        c = verify_csub_inequality(G, N, aut, f_value=fres.value)
        m = verify_monotonicity(G, N, aut)
        csub_ok = bool(c.passed) and csub_ok is not False
        mono_ok = bool(m.passed) and mono_ok is not False
        sub_details.append({"N_order": N.order, **{k: v for k, v in c.details.items() if k != "N_order"}, **{k: v for k, v in m.details.items() if k != "N_order"}})
        failures += [dict(check="csub", **f) for f in c.failures] + [dict(check="monotonicity", **f) for f in m.failures]

    checks = {
        "theorem": theorem_ok,
        "oracle": pairs["oracle"],
        "divisor": pairs["divisor"],
        "lcmdiv1": bool(one.passed),
        "lcmdiv2": bool(two.passed),
        "decomposition": decomp_ok,
        "csub": csub_ok,
        "monotonicity": mono_ok,
        "mao_bound": mao_ok,
        "order_chain": chain_ok,
    }
    record = {
        "label": G.label,
        "source": source,
        "order": n,
        "aut_order": aut.order,
        "out_order": aut.out_order,
        "out_exponent": aut.out_exponent,
        "f_value": fres.value,
        "f_witness": fres.witness_list,
        "mao": mao_val,
        "maffo": maffo_val,
        "theorem_ok": theorem_ok,
        "checks": checks,
        "details": {
            "aut_enumerated": aut.enumerated,
            "pairs": pairs["pairs"],
            "pair_mode": pairs["mode"],
            "lcmdiv1_applicable": one.details["applicable"],
            "decomposition": decomp_stats,
            "characteristic": sub_details,
        },
        "violations": failures,
    }
    if options.timings:
        record["runtime_ms"] = round((time.perf_counter() - t0) * 1000)
    return record


def _verify_star(args):
    return verify_group(*args)


def run_verify(sources: list[str], options: VerifyOptions = VerifyOptions(), jobs: int = 1) -> dict[str, Any]:
    """Verify every source; records sorted by label, summary counts violations."""
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            records = list(ex.map(_verify_star, [(s, options) for s in sources], chunksize=1))
    else:
        records = [verify_group(s, options) for s in sources]
    records.sort(key=lambda r: (r["label"], r["source"]))
    violations = sum(sum(1 for v in r["checks"].values() if v is False) for r in records)
    return {
        "options": {k: v for k, v in asdict(options).items() if k != "timings"},
        "records": records,
        "summary": {"groups_checked": len(records), "violations": violations},
    }


def dump_report(report: dict, path: str | Path | None) -> str:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
