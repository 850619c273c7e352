"""Bijective affine maps ``g -> x * alpha(g)`` and the invariants built on them.

Orders come from the shift element: with ``m = ord(alpha)`` and
``sh = x * alpha(x) * ... * alpha^(m-1)(x)`` the m-th power of the map is left
translation by ``sh``, so ``ord = m * ord(sh)``. Everything that loops over
``x`` is vectorised; lcm values are exact because every factor divides either
``exp(G)`` or ``ord(alpha)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .arith import factorize, lcm_all, nu_p
from .autgrp import AutomorphismGroup, automorphism_group, is_characteristic
from .checks import CheckRecord
from .errors import GroupMismatch, NotCharacteristic, NotInvariant
from .groups import FiniteGroup, QuotientMap, SubgroupHandle, quotient, subgroup_as_group
from .perm import batch_orders, cycle_decomposition

_CHUNK = 1 << 20


@dataclass(frozen=True, eq=False)
class AffineMap:
    group: FiniteGroup
    translation: int
    auto: np.ndarray

    @classmethod
    def make(cls, G: FiniteGroup, x: int, alpha=None) -> "AffineMap":
        a = np.arange(G.order) if alpha is None else np.asarray(alpha, dtype=np.int64)
        if a.shape != (G.order,):
            raise GroupMismatch("automorphism has the wrong length for this group")
        return cls(G, int(x), a)

    def __call__(self, g):
        return affine_apply(self, g)

    def as_permutation(self) -> np.ndarray:
        return np.asarray(self.group.mul(self.translation, self.auto), dtype=np.int64)


def affine_apply(A: AffineMap, g):
    return A.group.mul(A.translation, A.auto[g])


def affine_compose(A: AffineMap, B: AffineMap) -> AffineMap:
    """``A o B``: ``(x, alpha) o (y, beta) = (x * alpha(y), alpha o beta)``."""
    if A.group is not B.group:
        raise GroupMismatch(f"cannot compose maps on {A.group.label} and {B.group.label}")
    G = A.group
    x = int(G.mul(A.translation, A.auto[B.translation]))
    return AffineMap(G, x, A.auto[B.auto])


def _perm_order(images: np.ndarray) -> int:
    return int(batch_orders(np.asarray(images, dtype=np.int64)[None])[0])


def shift(G: FiniteGroup, x: int, alpha, m: int | None = None) -> int:
    """``x * alpha(x) * ... * alpha^(m-1)(x)`` with ``m = ord(alpha)``."""
    alpha = np.asarray(alpha, dtype=np.int64)
    m = m or _perm_order(alpha)
    return int(shifts(G, alpha[None], np.array([m]), np.array([x]))[0, 0])


def shifts(G: FiniteGroup, alphas: np.ndarray, orders: np.ndarray, xs: np.ndarray | None = None) -> np.ndarray:
    """Shift elements for every automorphism row and every ``x`` in ``xs``.

    ``xs`` is shared by all rows (1-d) or given per row (shape ``(k, t)``);
    the result has shape ``(k, t)``.
    """
    alphas = np.asarray(alphas, dtype=np.int64)
    orders = np.asarray(orders, dtype=np.int64)
    xs = np.arange(G.order) if xs is None else np.asarray(xs, dtype=np.int64)
    k = len(alphas)
    acc = np.broadcast_to(xs, (k, xs.shape[-1])).copy()
    cur = acc.copy()
    top = int(orders.max()) if k else 1
    for i in range(1, top):
        live = np.flatnonzero(orders > i)
        cur[live] = np.take_along_axis(alphas[live], cur[live], axis=1)
        acc[live] = np.asarray(G.mul(acc[live], cur[live]))
    return acc


def affine_order(A: AffineMap) -> int:
    m = _perm_order(A.auto)
    sh = shift(A.group, A.translation, A.auto, m)
    return m * A.group.element_order(sh)


def affine_order_oracle(A: AffineMap) -> int:
    """Lcm of the cycle lengths found by walking every orbit of the map."""
    return lcm_all(len(c) for c in cycle_decomposition(A.as_permutation().tolist()))


def cycle_lengths(A: AffineMap) -> list[int]:
    return sorted(len(c) for c in cycle_decomposition(A.as_permutation().tolist()))


def ell_lower_bound(G: FiniteGroup, x: int, alpha) -> int:
    """``ord(sh) * prod p^nu_p(ord(alpha))`` over primes dividing both ``ord(sh)`` and ``ord(alpha)``."""
    alpha = np.asarray(alpha, dtype=np.int64)
    m = _perm_order(alpha)
    s = G.element_order(shift(G, x, alpha, m))
    out = s
    for p in factorize(math.gcd(s, m)) if math.gcd(s, m) > 1 else ():
        out *= p ** nu_p(m, p)
    return out


# ---------------------------------------------------------------------------
# F(G) and maffo
# ---------------------------------------------------------------------------


@dataclass
class FValueResult:
    value: int
    witness_auto: np.ndarray
    witness_index: int
    per_auto_lcms: dict[int, int] = field(repr=False)
    class_representatives: bool = False

    @property
    def witness_list(self) -> list[int]:
        return [int(v) for v in self.witness_auto]


def _auto_rows(aut: AutomorphismGroup, class_reps: bool):
    """``(indices, images, orders)`` of the automorphisms to scan, in chunks."""
    G = aut.base
    if class_reps or not aut.enumerated:
        reps = aut.class_representatives()
        imgs = np.stack([a.images for a in reps])
        ords = np.array([a.order for a in reps], dtype=np.int64)
        if aut.enumerated:
            idx = np.array([aut.as_group.index_of_perm(r) for r in imgs])
        else:
            idx = np.arange(len(reps))
        yield idx, imgs, ords
        return
    step = max(1, _CHUNK // max(1, G.order))
    all_orders = aut.as_group.element_orders
    for lo in range(0, aut.order, step):
        hi = min(lo + step, aut.order)
        yield np.arange(lo, hi), aut.as_group.perms[lo:hi].astype(np.int64), all_orders[lo:hi].astype(np.int64)


def _row_lcm(vals: np.ndarray) -> np.ndarray:
    return np.lcm.reduce(vals, axis=1) if vals.shape[1] else np.ones(len(vals), dtype=np.int64)


def per_auto_stats(G: FiniteGroup, aut: AutomorphismGroup, *, class_reps: bool = False):
    """Yield ``(index, ord(alpha), lcm_x ord(A), max_x ord(A))`` per scanned automorphism."""
    eo = G.element_orders
    for idx, imgs, ords in _auto_rows(aut, class_reps):
        sh = shifts(G, imgs, ords)
        so = eo[sh]
        lcms = _row_lcm(so)
        maxs = so.max(axis=1)
        for i, m, l_, mx in zip(idx, ords, lcms, maxs):
            yield int(i), int(m), int(m) * int(l_), int(m) * int(mx)


def frak_f(G: FiniteGroup, aut: AutomorphismGroup | None = None, *, class_reps: bool = False) -> FValueResult:
    """max over alpha of lcm over x of ord(A_{x,alpha}); ties go to the smallest index."""
    aut = aut or automorphism_group(G)
    per: dict[int, int] = {}
    best, best_i = 0, -1
    for i, _, lcm_val, _ in per_auto_stats(G, aut, class_reps=class_reps):
        per[i] = lcm_val
        if lcm_val > best:
            best, best_i = lcm_val, i
    used_reps = class_reps or not aut.enumerated
    if aut.enumerated:
        witness = aut.images(best_i)
    else:
        witness = aut.class_representatives()[best_i].images
    return FValueResult(best, np.asarray(witness), best_i, per, used_reps)


def maffo(G: FiniteGroup, aut: AutomorphismGroup | None = None, *, class_reps: bool = False) -> int:
    """Maximum order of a bijective affine map of G."""
    aut = aut or automorphism_group(G)
    return max(mx for _, _, _, mx in per_auto_stats(G, aut, class_reps=class_reps))


def affine_orders_for(G: FiniteGroup, alpha, xs=None) -> np.ndarray:
    """``ord(A_{x,alpha})`` for every ``x`` in ``xs`` (default all of G)."""
    alpha = np.asarray(alpha, dtype=np.int64)
    m = _perm_order(alpha)
    sh = shifts(G, alpha[None], np.array([m]), xs)[0]
    return m * G.element_orders[sh]


def ell_lower_bounds_for(G: FiniteGroup, alpha, xs=None) -> np.ndarray:
    """Vectorised :func:`ell_lower_bound` over ``xs``."""
    alpha = np.asarray(alpha, dtype=np.int64)
    m = _perm_order(alpha)
    s = G.element_orders[shifts(G, alpha[None], np.array([m]), xs)[0]].astype(np.int64)
    out = s.copy()
    for p in factorize(m) if m > 1 else ():
        out = np.where(s % p == 0, out * p ** nu_p(m, p), out)
    return out


# ---------------------------------------------------------------------------
# decomposition over a characteristic subgroup
# ---------------------------------------------------------------------------


@dataclass
class DecompositionWitness:
    order: int
    quotient_order_part: int
    coset_elements: dict[int, int]
    m_set: tuple[int, ...]
    lcm_part: int

    @property
    def holds(self) -> bool:
        return self.order == self.quotient_order_part * self.lcm_part


@dataclass(eq=False)
class _DecompContext:
    G: FiniteGroup
    N: np.ndarray
    Q: QuotientMap
    in_N: np.ndarray


@lru_cache(maxsize=64)
def _context(G: FiniteGroup, members: tuple[int, ...], rep_policy: str) -> _DecompContext:
    N = SubgroupHandle(G, members, True, False)
    Q = quotient(G, N, rep_policy=rep_policy)
    in_N = np.zeros(G.order, dtype=bool)
    in_N[list(members)] = True
    return _DecompContext(G, np.asarray(members, dtype=np.int64), Q, in_N)


def _restricted_order(alpha: np.ndarray, members: np.ndarray) -> int:
    pos = np.searchsorted(members, alpha[members])
    return _perm_order(pos)


def lcm_decomposition_batch(
    G: FiniteGroup,
    N: SubgroupHandle,
    alpha,
    xs=None,
    *,
    rep_policy: str = "min",
):
    """Both sides of the decomposition identity for ``A_{x,alpha}``, every ``x`` in ``xs``.

    Returns ``(orders, k, lcm_parts, coset_elements)`` where ``coset_elements``
    has shape ``(len(xs), |G/N|)`` and ``orders == k * lcm_parts`` is the identity.
    """
    alpha = np.asarray(alpha, dtype=np.int64)
    ctx = _context(G, tuple(int(v) for v in N.members), rep_policy)
    if not ctx.in_N[alpha[ctx.N]].all():
        raise NotInvariant("automorphism does not map the subgroup onto itself")
    xs = np.arange(G.order) if xs is None else np.asarray(xs, dtype=np.int64)
    Q, proj, reps = ctx.Q.target, ctx.Q.projection, ctx.Q.coset_reps
    m = _perm_order(alpha)

    # induced map on G/N and its orders
    abar = proj[alpha[reps]]
    mbar = _perm_order(abar)
    k = mbar * Q.element_orders[shifts(Q, abar[None], np.array([mbar]), proj[xs])[0]]

    # powers of alpha, and of alpha restricted to N
    powers = np.empty((m, G.order), dtype=np.int64)
    powers[0] = np.arange(G.order)
    for j in range(1, m):
        powers[j] = alpha[powers[j - 1]]
    ord_on_N = np.array([_restricted_order(powers[j], ctx.N) for j in range(m)], dtype=np.int64)

    # y = A^k(1) = x * alpha(x) * ... * alpha^(k-1)(x)
    y = xs.copy()
    cur = xs.copy()
    for i in range(1, int(k.max())):
        live = k > i
        cur[live] = alpha[cur[live]]
        y[live] = np.asarray(G.mul(y[live], cur[live]))

    # n_C = g^-1 * A^k(g) = g^-1 * y * alpha^k(g) for the representative g of C
    j = k % m
    akg = powers[j][:, reps]
    nC = np.asarray(G.mul(G.inv(reps)[None, :], np.asarray(G.mul(y[:, None], akg))))
    if not ctx.in_N[nC].all():
        raise AssertionError("coset element outside the subgroup")

    # ord(A_{n_C, beta}) on N with beta = alpha^k restricted to N
    o = ord_on_N[j]
    acc = nC.copy()
    c = nC.copy()
    for i in range(1, int(o.max())):
        live = o > i
        rows = np.flatnonzero(live)
        c[rows] = powers[j[rows, None], c[rows]]
        acc[rows] = np.asarray(G.mul(acc[rows], c[rows]))
    part_orders = o[:, None] * G.element_orders[acc]
    lcm_parts = _row_lcm(part_orders)
    orders = m * G.element_orders[shifts(G, alpha[None], np.array([m]), xs)[0]]
    return orders, k, lcm_parts, nC


def lcm_decomposition(G: FiniteGroup, N: SubgroupHandle, A: AffineMap, *, rep_policy: str = "min") -> DecompositionWitness:
    if A.group is not G:
        raise GroupMismatch("affine map lives on a different group")
    orders, k, parts, nC = lcm_decomposition_batch(G, N, A.auto, np.array([A.translation]), rep_policy=rep_policy)
    coset = {int(c): int(v) for c, v in enumerate(nC[0])}
    return DecompositionWitness(int(orders[0]), int(k[0]), coset, tuple(sorted(set(coset.values()))), int(parts[0]))


# ---------------------------------------------------------------------------
# verifiers
# ---------------------------------------------------------------------------


def verify_lcm_div_conditions(G: FiniteGroup, aut: AutomorphismGroup | None = None, *, class_reps: bool = False) -> tuple[CheckRecord, CheckRecord]:
    """Both divisibility conditions on ``lcm_x ord(A_{x,alpha})`` for every alpha.

    (1) if ``ord(alpha) | |G|`` the lcm divides |G|;
    (2) for each prime ``p | |G|`` the lcm divides
        ``|G|_{p'} * p^(2 nu_p(exp G)) * exp(Out G)``.
    """
    aut = aut or automorphism_group(G)
    n = G.order
    fac = factorize(n) if n > 1 else {}
    expo = G.exponent()
    bounds = {}
    for p, e in fac.items():
        bounds[p] = (n // p**e) * p ** (2 * nu_p(expo, p)) * aut.out_exponent
    one = CheckRecord("lcmdiv1", True, {"applicable": 0})
    two = CheckRecord("lcmdiv2", True, {"checked": 0})
    for i, m, lcm_val, _ in per_auto_stats(G, aut, class_reps=class_reps):
        if n % m == 0:
            one.details["applicable"] += 1
            if n % lcm_val:
                one.fail(group=G.label, auto_index=i, lcm=lcm_val, order=n)
        for p, b in bounds.items():
            two.details["checked"] += 1
            if b % lcm_val:
                two.fail(group=G.label, auto_index=i, prime=p, lcm=lcm_val, bound=b)
    return one, two


def _require_characteristic(G: FiniteGroup, N: SubgroupHandle, aut: AutomorphismGroup) -> None:
    if not is_characteristic(G, N.as_array(), aut):
        raise NotCharacteristic(f"subgroup of order {N.order} is not characteristic in {G.label}")
    if N.is_trivial or N.is_whole:
        raise NotCharacteristic("expected a proper nontrivial characteristic subgroup")


def verify_csub_inequality(
    G: FiniteGroup,
    N: SubgroupHandle,
    aut: AutomorphismGroup | None = None,
    *,
    f_value: int | None = None,
) -> CheckRecord:
    """``F(G) <= F(N) * F(G/N)`` in exact integers."""
    aut = aut or automorphism_group(G)
    _require_characteristic(G, N, aut)
    fG = f_value if f_value is not None else frak_f(G, aut).value
    sub, _ = subgroup_as_group(N)
    Q = quotient(G, N).target
    fN = frak_f(sub).value
    fQ = frak_f(Q).value
    rec = CheckRecord("csub", fG <= fN * fQ, {"N_order": N.order, "F_G": fG, "F_N": fN, "F_Q": fQ})
    if not rec.passed:
        rec.failures.append({"group": G.label, "N": list(N.members), "F_G": fG, "F_N": fN, "F_Q": fQ})
    return rec


def verify_monotonicity(G: FiniteGroup, N: SubgroupHandle, aut: AutomorphismGroup | None = None) -> CheckRecord:
    """``mao`` and ``maffo`` relative to the order do not decrease on passing to G/N."""
    aut = aut or automorphism_group(G)
    _require_characteristic(G, N, aut)
    Q = quotient(G, N).target
    qaut = automorphism_group(Q)
    mao_g, mao_q = aut.max_order(), qaut.max_order()
    maffo_g, maffo_q = maffo(G, aut), maffo(Q, qaut)
    ok_mao = mao_q * G.order >= mao_g * Q.order
    ok_maffo = maffo_q * G.order >= maffo_g * Q.order
    rec = CheckRecord(
        "monotonicity",
        ok_mao and ok_maffo,
        {"N_order": N.order, "mao_G": mao_g, "mao_Q": mao_q, "maffo_G": maffo_g, "maffo_Q": maffo_q},
    )
    if not rec.passed:
        rec.failures.append({"group": G.label, "N": list(N.members), "mao_ok": ok_mao, "maffo_ok": ok_maffo})
    return rec


# ---------------------------------------------------------------------------
# batched pair checks
# ---------------------------------------------------------------------------


@dataclass
class PairCheck:
    """Per-pair results for a batch of ``(x, alpha)``."""

    xs: np.ndarray
    auto_rows: np.ndarray  # index into the alphas passed in
    formula: np.ndarray  # ord(alpha) * ord(sh)
    oracle: np.ndarray  # lcm of cycle lengths of the permutation
    ell: np.ndarray
    cycles_divisible: np.ndarray  # every cycle length divisible by ell
    ell_divides_order: np.ndarray


def check_pairs(G: FiniteGroup, alphas: np.ndarray, orders: np.ndarray, xs: np.ndarray, rows: np.ndarray) -> PairCheck:
    """Shift-formula orders against cycle structure, plus the cycle-length lower bound.

    Pair ``t`` is ``(xs[t], alphas[rows[t]])``. Cycle structure comes from
    pointer doubling on the explicit permutations ``g -> x * alpha(g)``.
    """
    from .perm import batch_cycle_lengths

    alphas = np.asarray(alphas, dtype=np.int64)
    orders = np.asarray(orders, dtype=np.int64)
    xs = np.asarray(xs, dtype=np.int64)
    rows = np.asarray(rows, dtype=np.int64)
    a = alphas[rows]
    m = orders[rows]
    s = G.element_orders[shifts(G, a, m, xs[:, None])[:, 0]].astype(np.int64)
    formula = m * s
    perms = np.asarray(G.mul(xs[:, None], a), dtype=np.int64)
    cl = batch_cycle_lengths(perms)
    oracle = np.lcm.reduce(cl, axis=1)
    ell = s.copy()
    expo = lcm_all(np.unique(orders).tolist())
    for p in factorize(expo) if expo > 1 else ():
        pm = np.ones_like(m)
        mm = m.copy()
        while True:
            hit = mm % p == 0
            if not hit.any():
                break
            pm[hit] *= p
            mm[hit] //= p
        ell = np.where(s % p == 0, ell * pm, ell)
    div = (cl % ell[:, None] == 0).all(axis=1)
    return PairCheck(xs, rows, formula, oracle, ell, div, G.order % ell == 0)
