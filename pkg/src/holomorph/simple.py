"""PSL_2(q) and PGammaL_2(q) on the projective line, plus Aut(PSL_3(4)).

Points of the line are field codes ``0..q-1`` for ``(z : 1)`` and ``q`` for
``(1 : 0)``. A semilinear map ``(A, i)`` sends ``z`` to the Moebius image under
``A`` of ``z^(p^i)``; composition is ``(A, i)(B, j) = (A B^(sigma^i), i + j)``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .arith import prime_power
from .checks import CheckRecord
from .errors import BudgetExceeded, OrderMismatch, ParameterOutOfRange
from .fields import FiniteField, make_field
from .groups import FiniteGroup, from_permutation_generators
from .perm import batch_orders

FAST_TIER = 1 << 20  # |PGammaL_2(q)| allowed without the slow flag
SLOW_TIER = 1 << 25
BFS_CAP = 1 << 17


def _field_of(q: int) -> FiniteField:
    pf = prime_power(q)
    if pf is None:
        raise ParameterOutOfRange(f"{q} is not a prime power")
    return make_field(*pf)


def pgammal2_order(q: int) -> int:
    return q * (q * q - 1) * prime_power(q)[1]


def psl2_order(q: int) -> int:
    return q * (q * q - 1) // math.gcd(2, q - 1)


# ---------------------------------------------------------------------------
# semilinear maps
# ---------------------------------------------------------------------------


def _normalise(F: FiniteField, a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    s = c if c else d
    inv = int(F.inverse[s])
    return tuple(int(F.mul(v, inv)) for v in (a, b, c, d))


@dataclass(frozen=True)
class SemilinearMap:
    field: FiniteField
    matrix: tuple[int, int, int, int]  # (a, b, c, d), last nonzero of (c, d) scaled to 1
    field_power: int

    @classmethod
    def make(cls, F: FiniteField, matrix, field_power: int = 0) -> "SemilinearMap":
        a, b, c, d = (int(v) for v in matrix)
        det = F.sub(F.mul(a, d), F.mul(b, c))
        if int(det) == 0:
            raise ValueError("matrix is singular")
        return cls(F, _normalise(F, a, b, c, d), field_power % F.f)

    def compose(self, other: "SemilinearMap") -> "SemilinearMap":
        """``self o other``."""
        F = self.field
        a, b, c, d = self.matrix
        e, f_, g, h = (int(F.frobenius(v, self.field_power)) for v in other.matrix)
        m = (
            F.add(F.mul(a, e), F.mul(b, g)),
            F.add(F.mul(a, f_), F.mul(b, h)),
            F.add(F.mul(c, e), F.mul(d, g)),
            F.add(F.mul(c, f_), F.mul(d, h)),
        )
        return SemilinearMap(F, _normalise(F, *(int(v) for v in m)), (self.field_power + other.field_power) % F.f)

    def apply(self, point: int) -> int:
        return int(self.as_permutation()[point])

    def as_permutation(self) -> np.ndarray:
        a, b, c, d = (np.array([v]) for v in self.matrix)
        return _images(self.field, a, b, c, d, self.field_power)[0]

    @property
    def determinant(self) -> int:
        F = self.field
        a, b, c, d = self.matrix
        return int(F.sub(F.mul(a, d), F.mul(b, c)))


def _images(F: FiniteField, a, b, c, d, i: int) -> np.ndarray:
    """Point images for a batch of matrices sharing the Frobenius power ``i``."""
    q = F.q
    w = np.asarray(F.frobenius(np.arange(q), i))[None, :]
    a, b, c, d = (np.asarray(v, dtype=np.int64)[:, None] for v in (a, b, c, d))
    num = F.add(F.mul(a, w), b)
    den = F.add(F.mul(c, w), d)
    fin = np.where(den == 0, q, F.mul(num, F.inverse[den]))
    inf = np.where(c[:, 0] == 0, q, F.mul(a[:, 0], F.inverse[c[:, 0]]))
    return np.concatenate([fin, inf[:, None]], axis=1).astype(np.int64)


def _canonical_block(F: FiniteField, a: int):
    """Canonical matrices with top-left entry ``a``: ``(a, b, 1, d)`` then ``(a, b, 0, 1)``."""
    q = F.q
    b, d = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    b, d = b.ravel(), d.ravel()
    keep = F.mul(a, d) != b  # det = ad - b
    b1, d1 = b[keep], d[keep]
    blocks = [(np.full(len(b1), a), b1, np.ones(len(b1), dtype=np.int64), d1)]
    if a:
        bb = np.arange(q)
        blocks.append((np.full(q, a), bb, np.zeros(q, dtype=np.int64), np.ones(q, dtype=np.int64)))
    return [np.concatenate(col) for col in zip(*blocks)]


def _det_square(F: FiniteField, a, b, c, d) -> np.ndarray:
    det = F.sub(F.mul(a, d), F.mul(b, c))
    return F.squares[det]


# ---------------------------------------------------------------------------
# groups as permutation groups
# ---------------------------------------------------------------------------


def _generators(F: FiniteField, psl: bool) -> list[np.ndarray]:
    lam = F.generator
    scale = lam if (F.p == 2 or not psl) else int(F.mul(lam, lam))
    maps = [
        (1, 1, 0, 1),  # z -> z + 1
        (scale, 0, 0, 1),  # z -> scale * z
        (0, int(F.neg[1]), 1, 0),  # z -> -1/z
    ]
    return [_images(F, *([v] for v in m), 0)[0] for m in maps]


def psl2_group(q: int, *, cap: int = BFS_CAP) -> FiniteGroup:
    F = _field_of(q)
    G = from_permutation_generators(q + 1, _generators(F, psl=True), label=f"PSL(2,{q})", cap=cap)
    if G.order != psl2_order(q):
        raise OrderMismatch(f"PSL(2,{q}) closure has {G.order} elements, expected {psl2_order(q)}")
    return G


def frobenius_permutation(F: FiniteField) -> np.ndarray:
    return np.concatenate([np.asarray(F.frob), [F.q]]).astype(np.int64)


def pgammal2_group(q: int, *, cap: int = BFS_CAP) -> FiniteGroup:
    F = _field_of(q)
    gens = _generators(F, psl=False) + ([frobenius_permutation(F)] if F.f > 1 else [])
    G = from_permutation_generators(q + 1, gens, label=f"PGammaL(2,{q})", cap=cap)
    if G.order != pgammal2_order(q):
        raise OrderMismatch(f"PGammaL(2,{q}) closure has {G.order} elements, expected {pgammal2_order(q)}")
    return G


def psl2_generators(q: int) -> list[np.ndarray]:
    return _generators(_field_of(q), psl=True)


def pgammal2_generators(q: int) -> list[np.ndarray]:
    F = _field_of(q)
    return _generators(F, psl=False) + ([frobenius_permutation(F)] if F.f > 1 else [])


# ---------------------------------------------------------------------------
# streaming order check
# ---------------------------------------------------------------------------


def _scan_chunk(args) -> tuple[Counter, int, int]:
    q, pairs = args
    F = _field_of(q)
    hist: Counter = Counter()
    count = psl_count = 0
    for i, a in pairs:
        a_, b, c, d = _canonical_block(F, a)
        perms = _images(F, a_, b, c, d, i)
        orders = np.asarray(batch_orders(perms), dtype=np.int64)
        vals, cnts = np.unique(orders, return_counts=True)
        hist.update({int(v): int(n) for v, n in zip(vals, cnts)})
        count += len(orders)
        if i == 0:
            psl_count += int(_det_square(F, a_, b, c, d).sum()) if F.p != 2 else len(orders)
    return hist, count, psl_count


def aut_order_histogram(q: int, *, jobs: int = 1) -> tuple[dict[int, int], int, int]:
    """Order histogram of every element of PGammaL_2(q), streamed by canonical matrix.

    Returns ``(histogram, element_count, psl_element_count)``.
    """
    F = _field_of(q)
    pairs = [(i, a) for i in range(F.f) for a in range(q)]
    if jobs <= 1:
        parts = [_scan_chunk((q, pairs))]
    else:
        chunks = [(q, pairs[k::jobs]) for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_scan_chunk, chunks))
    hist: Counter = Counter()
    count = psl_count = 0
    for h, c, s in parts:
        hist.update(h)
        count += c
        psl_count += s
    return dict(sorted(hist.items())), count, psl_count


def verify_aut_orders_divide(q: int, *, slow: bool = False, jobs: int = 1) -> CheckRecord:
    """Every element order of Aut(PSL_2(q)) = PGammaL_2(q) divides |PSL_2(q)|."""
    _field_of(q)
    total = pgammal2_order(q)
    limit = SLOW_TIER if slow else FAST_TIER
    if total > limit:
        raise BudgetExceeded(f"|PGammaL(2,{q})| = {total} exceeds the {'slow' if slow else 'fast'} tier; pass slow=True")
    if q < 4:
        raise ParameterOutOfRange(f"PSL(2,{q}) is not simple")
    s_order = psl2_order(q)
    hist, count, psl_count = aut_order_histogram(q, jobs=jobs)
    rec = CheckRecord(
        "aut_orders_divide",
        True,
        {
            "q": q,
            "S_order": s_order,
            "aut_order": count,
            "psl_elements": psl_count,
            "histogram": hist,
        },
    )
    if count != total:
        rec.fail(check="element_count", found=count, expected=total)
    if psl_count != s_order:
        rec.fail(check="psl_count", found=psl_count, expected=s_order)
    for o in hist:
        if s_order % o:
            rec.fail(check="divides", order=o, count=hist[o])
    return rec


# ---------------------------------------------------------------------------
# Aut(PSL_3(4)) on points and lines of the plane over F_4
# ---------------------------------------------------------------------------


def _plane_points(F: FiniteField) -> np.ndarray:
    """Normalised vectors (first nonzero coordinate 1) of the projective plane."""
    vecs = [v for v in itertools.product(range(F.q), repeat=3) if any(v)]
    return np.array([v for v in vecs if v[next(k for k in range(3) if v[k])] == 1], dtype=np.int64)


def _matvec(F: FiniteField, mats: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    """``mats (B,3,3)`` times each column vector in ``vecs (P,3)``; shape ``(B,P,3)``."""
    prod = F.mul(mats[:, None, :, :], vecs[None, :, None, :])  # (B,P,3,3): m[r,c]*v[c]
    out = prod[..., 0]
    for c in range(1, 3):
        out = F.add(out, prod[..., c])
    return out


def _normalise_vectors(F: FiniteField, v: np.ndarray) -> np.ndarray:
    lead_idx = np.argmax(v != 0, axis=-1)
    lead = np.take_along_axis(v, lead_idx[..., None], axis=-1)
    return F.mul(v, F.inverse[lead])


def psl3_4_automorphism_orders() -> tuple[dict[int, int], int]:
    """Order histogram of Aut(PSL_3(4)) acting on the 21 points and 21 lines.

    Elements are ``g`` and ``g * delta`` for ``g`` in PGammaL_3(4) and ``delta``
    the polarity swapping the point ``v`` with the line ``v^T``.
    """
    F = make_field(2, 2)
    pts = _plane_points(F)
    npts = len(pts)
    weights = F.q ** np.arange(3)
    code_arr = np.full(F.q**3, -1, dtype=np.int64)
    for k, v in enumerate(pts):
        code_arr[int(v @ weights)] = k
    # lines indexed like points: line k = {v : pts[k] . v = 0}
    dots = np.zeros((npts, npts), dtype=np.int64)
    for k in range(npts):
        prod = F.mul(pts[k][None, :], pts)
        dots[k] = F.add(F.add(prod[:, 0], prod[:, 1]), prod[:, 2])
    on_line = [np.flatnonzero(dots[k] == 0) for k in range(npts)]
    through = {}
    for k, members in enumerate(on_line):
        for x, y in itertools.combinations(members.tolist(), 2):
            through[(x, y)] = k
            through[(y, x)] = k
    line_pair = np.array([m[:2] for m in on_line])  # two points spanning each line
    through_arr = np.full((npts, npts), -1, dtype=np.int64)
    for (x, y), k in through.items():
        through_arr[x, y] = k

    digits = np.array(list(itertools.product(range(F.q), repeat=9)), dtype=np.int64).reshape(-1, 3, 3)
    first = digits.reshape(-1, 9)
    lead = first[np.arange(len(first)), np.argmax(first != 0, axis=1)]
    digits = digits[lead == 1]
    imgs = _matvec(F, digits, pts)
    nonsingular = (imgs != 0).any(axis=-1).all(axis=1)
    normed = _normalise_vectors(F, imgs[nonsingular])
    pt_perm = code_arr[normed @ weights]
    pt_perm = pt_perm[np.array([len(set(r)) == npts for r in pt_perm.tolist()])]
    frob = code_arr[np.asarray(F.frob)[pts] @ weights]

    delta = np.concatenate([np.arange(npts, 2 * npts), np.arange(npts)])
    perms = []
    for fp in (np.arange(npts), frob):
        pp = pt_perm[:, fp]
        ln = through_arr[pp[:, line_pair[:, 0]], pp[:, line_pair[:, 1]]]
        g = np.concatenate([pp, ln + npts], axis=1)
        perms.append(g)
        perms.append(g[:, delta])
    allp = np.concatenate(perms)
    count = len({r.tobytes() for r in allp})
    orders = np.asarray(batch_orders(allp), dtype=np.int64)
    vals, cnts = np.unique(orders, return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, cnts)}, count


def verify_psl3_4(*, stretch: bool = False) -> CheckRecord:
    """Element orders of Aut(PSL_3(4)) (order 241920) divide |PSL_3(4)| = 20160."""
    if not stretch:
        raise BudgetExceeded("PSL(3,4) is behind the stretch flag")
    s_order = 20160
    hist, count = psl3_4_automorphism_orders()
    rec = CheckRecord("aut_orders_divide", True, {"case": "psl3_4", "S_order": s_order, "aut_order": count, "histogram": hist})
    if count != 12 * s_order:
        rec.fail(check="element_count", found=count, expected=12 * s_order)
    for o, c in hist.items():
        if s_order % o:
            rec.fail(check="divides", order=o, count=c)
    return rec
