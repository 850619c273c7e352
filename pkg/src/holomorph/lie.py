"""Defining-characteristic inequality for PSL_d(q) and a matrix-order sampler.

For S = PSL_d(p^f) the inequality checked is

    p^(2 * ceil(log_p d_p(S))) * |Out(S)|  <=  p^(nu_p(|S|))

entirely in Python integers; logarithms are counted by repeated multiplication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .arith import ceil_log, nu_p, prime_power, prime_powers_up_to, require_prime
from .checks import CheckRecord
from .errors import NotSimple, ParameterOutOfRange, ParseError
from .fp import gl_order, matrix_orders, random_invertible, rank_mod_p

NON_SIMPLE = {(2, 2), (2, 3)}  # (d, q)

DpTable = dict[tuple[int, int], int]


@dataclass(frozen=True)
class PslParams:
    d: int
    p: int
    f: int
    group_order: int
    out_order: int
    d_p: int

    @property
    def q(self) -> int:
        return self.p**self.f

    @property
    def nu_p_order(self) -> int:
        """``nu_p(|S|)`` from the structure of the order formula."""
        return self.f * self.d * (self.d - 1) // 2


def psl_order(d: int, q: int) -> int:
    out = q ** (d * (d - 1) // 2)
    for i in range(2, d + 1):
        out *= q**i - 1
    return out // math.gcd(d, q - 1)


def psl_params(d: int, p: int, f: int, dp_table: DpTable | None = None) -> PslParams:
    require_prime(p)
    if d < 2 or f < 1:
        raise ParameterOutOfRange("need d >= 2 and f >= 1")
    q = p**f
    if (d, q) in NON_SIMPLE:
        raise NotSimple(f"PSL_{d}({q}) is not simple")
    out = math.gcd(d, q - 1) * f * (2 if d >= 3 else 1)
    dp = (dp_table or {}).get((d, q), 2 if d == 2 else d)
    return PslParams(d, p, f, psl_order(d, q), out, dp)


@dataclass(frozen=True)
class InequalityCheck:
    params: PslParams
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    def to_dict(self) -> dict:
        P = self.params
        return {"d": P.d, "p": P.p, "f": P.f, "lhs": self.lhs, "rhs": self.rhs, "holds": self.holds}


def check_inequality(params: PslParams) -> InequalityCheck:
    p = params.p
    lhs = p ** (2 * ceil_log(params.d_p, p)) * params.out_order
    rhs = p**params.nu_p_order
    return InequalityCheck(params, lhs, rhs)


def load_dp_table(path: str | Path) -> DpTable:
    """Read ``family d q d_p`` lines; only the PSL family is recognised."""
    table: DpTable = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ParseError(f"{path}:{lineno}: expected 'family d q d_p'")
        fam, *nums = parts
        if fam.upper() != "PSL":
            raise ParseError(f"{path}:{lineno}: unsupported family {fam!r}")
        try:
            d, q, dp = (int(v) for v in nums)
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: non-integer field") from exc
        if prime_power(q) is None or d < 2 or dp < 1:
            raise ParseError(f"{path}:{lineno}: invalid parameters")
        table[(d, q)] = dp
    return table


@dataclass
class ScanResult:
    family: str
    grid: dict
    checks: list[InequalityCheck] = field(repr=False)
    exceptions: list[tuple[int, int]]
    skipped: list[tuple[int, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "grid": self.grid,
            "results": [c.to_dict() for c in self.checks],
            "exceptions": [list(e) for e in self.exceptions],
            "skipped": [list(s) for s in self.skipped],
        }


def scan_psl2(q_max: int, f_min: int = 3, *, include_small: bool = False, dp_table: DpTable | None = None) -> ScanResult:
    """All PSL_2(p^f), p^f <= q_max, f >= f_min; exceptions as ``(p, f)``.

    ``include_small`` lowers ``f_min`` to 1 (simple cases only), for information.
    """
    lo = 1 if include_small else f_min
    checks, skipped = [], []
    for q, p, f in prime_powers_up_to(q_max, lo):
        if (2, q) in NON_SIMPLE:
            skipped.append((p, f))
            continue
        checks.append(check_inequality(psl_params(2, p, f, dp_table)))
    exc = sorted((c.params.p, c.params.f) for c in checks if not c.holds)
    return ScanResult("psl2", {"q_max": q_max, "f_min": lo}, checks, exc, skipped)


def scan_psl_d(d_max: int, q_max: int, d_min: int = 3, *, dp_table: DpTable | None = None) -> ScanResult:
    """All PSL_d(q) with d_min <= d <= d_max and q <= q_max; exceptions as ``(d, q)``."""
    if d_max < d_min or d_min < 2:
        raise ParameterOutOfRange("need 2 <= d_min <= d_max")
    checks, skipped = [], []
    for d in range(d_min, d_max + 1):
        for q, p, f in prime_powers_up_to(q_max):
            if (d, q) in NON_SIMPLE:
                skipped.append((d, q))
                continue
            checks.append(check_inequality(psl_params(d, p, f, dp_table)))
    exc = sorted((c.params.d, c.params.q) for c in checks if not c.holds)
    return ScanResult("psld", {"d_min": d_min, "d_max": d_max, "q_max": q_max}, checks, exc, skipped)


def monotone_in_f(result: ScanResult) -> list[tuple[int, int]]:
    """``(d, p)`` families where the inequality fails again after first holding."""
    fams: dict[tuple[int, int], list[tuple[int, bool]]] = {}
    for c in result.checks:
        fams.setdefault((c.params.d, c.params.p), []).append((c.params.f, c.holds))
    flagged = []
    for key, vals in sorted(fams.items()):
        seen = False
        for _, ok in sorted(vals):
            if seen and not ok:
                flagged.append(key)
                break
            seen = seen or ok
    return flagged


# ---------------------------------------------------------------------------
# p-part of matrix orders
# ---------------------------------------------------------------------------


def _record_orders(rec: CheckRecord, mats: np.ndarray, orders: list[int], p: int, bound: int) -> None:
    hist: dict[int, int] = rec.details.setdefault("nu_p_histogram", {})
    for m, o in zip(mats, orders):
        v = nu_p(o, p)
        hist[v] = hist.get(v, 0) + 1
        if v > bound:
            rec.fail(matrix=m.tolist(), order=o, nu_p=v, bound=bound)


def matrix_order_p_part(p: int, d: int, samples: int = 10_000, seed: int = 0) -> CheckRecord:
    """``nu_p(ord A) <= ceil(log_p d)`` on seeded uniform samples from GL_d(p)."""
    require_prime(p)
    if d < 1 or samples < 0:
        raise ParameterOutOfRange("need d >= 1 and samples >= 0")
    bound = ceil_log(d, p)
    rec = CheckRecord("matrix_lemma", True, {"p": p, "d": d, "samples": samples, "seed": seed, "bound": bound})
    rng = np.random.default_rng([seed, p, d])
    mats = random_invertible(rng, p, d, samples)
    _record_orders(rec, mats, matrix_orders(mats, p) if samples else [], p, bound)
    rec.details["nu_p_histogram"] = dict(sorted(rec.details.get("nu_p_histogram", {}).items()))
    rec.details["max_nu_p"] = max(rec.details["nu_p_histogram"], default=0)
    return rec


def all_invertible(p: int, d: int) -> np.ndarray:
    """Every element of GL_d(p), in lexicographic entry order (small cases only)."""
    if gl_order(d, p) > 1 << 20:
        raise ParameterOutOfRange("GL_d(p) too large to enumerate")
    digits = (np.arange(p ** (d * d))[:, None] // p ** np.arange(d * d - 1, -1, -1)[None, :]) % p
    mats = digits.reshape(-1, d, d)
    return mats[rank_mod_p(mats, p) == d]


def matrix_order_p_part_exhaustive(p: int, d: int) -> CheckRecord:
    bound = ceil_log(d, p)
    mats = all_invertible(p, d)
    rec = CheckRecord("matrix_lemma_exhaustive", True, {"p": p, "d": d, "elements": len(mats), "bound": bound})
    _record_orders(rec, mats, matrix_orders(mats, p), p, bound)
    rec.details["nu_p_histogram"] = dict(sorted(rec.details["nu_p_histogram"].items()))
    return rec

