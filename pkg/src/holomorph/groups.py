"""Concrete finite groups on dense element indices.

Every group here has elements ``0 .. order-1`` with ``0`` the identity. Groups
of order at most ``TABLE_CAP`` carry a full multiplication table; larger
permutation groups multiply by composing stored permutations, and large
quotients multiply through their coset representatives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from .arith import lcm_all, require_prime
from .errors import (
    ClosureTooLarge,
    GroupTooLarge,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotClosed,
    NotNormal,
    GroupTableError,
    ParameterOutOfRange,
    UnknownFamily,
)
from .perm import Permutation, batch_orders

TABLE_CAP = 4096
ASSOC_CHECK_CAP = 512
DEFAULT_CLOSURE_CAP = 1 << 24
SUBGROUP_CAP = 128

_ORDER_BATCH = 1 << 22  # entries per chunk in batched permutation orders


def _index_dtype(n: int):
    return np.int32


class FiniteGroup:
    """A finite group on element indices, identity at 0.

    Immutable after construction. Build instances with the module-level
    constructors rather than calling ``__init__`` directly.
    """

    def __init__(
        self,
        order: int,
        label: str,
        *,
        table: np.ndarray | None = None,
        perms: np.ndarray | None = None,
        lookup: dict[bytes, int] | None = None,
        mul_fn: Callable | None = None,
        inv_fn: Callable | None = None,
    ):
        self.order = int(order)
        self.label = label
        self.table = table
        self.perms = perms
        self._lookup = lookup
        self._mul_fn = mul_fn
        self._inv_fn = inv_fn
        if table is not None:
            table.setflags(write=False)
        if perms is not None:
            perms.setflags(write=False)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label!r}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    @property
    def degree(self) -> int | None:
        return None if self.perms is None else self.perms.shape[1]

    def elements(self) -> range:
        return range(self.order)

    # -- multiplication -------------------------------------------------

    def mul(self, a, b):
        """Product ``a*b``; accepts ints or broadcastable integer arrays."""
        if self.table is not None:
            return self.table[a, b]
        if self.perms is not None:
            return self._perm_mul(a, b)
        return self._mul_fn(a, b)

    def _perm_mul(self, a, b):
        a_arr, b_arr = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        prods = np.take_along_axis(self.perms[a_arr.ravel()], self.perms[b_arr.ravel()].astype(np.int64), axis=1)
        out = np.fromiter((self._lookup[row.tobytes()] for row in prods), dtype=np.int64, count=len(prods))
        if a_arr.ndim == 0:
            return int(out[0])
        return out.reshape(a_arr.shape)

    def index_of_perm(self, images) -> int:
        """Index of the element acting as ``images`` (permutation groups only)."""
        arr = np.asarray(images, dtype=self.perms.dtype)
        return self._lookup[arr.tobytes()]

    @cached_property
    def inverses(self) -> np.ndarray:
        if self.table is not None:
            rows, cols = np.nonzero(self.table == 0)
            inv = np.empty(self.order, dtype=np.int64)
            inv[rows] = cols
        elif self.perms is not None:
            inv_perms = np.argsort(self.perms, axis=1).astype(self.perms.dtype)
            inv = np.fromiter((self._lookup[r.tobytes()] for r in inv_perms), dtype=np.int64, count=self.order)
        else:
            inv = np.asarray(self._inv_fn(np.arange(self.order)), dtype=np.int64)
        inv.setflags(write=False)
        return inv

    def inv(self, a):
        return self.inverses[a]

    def power(self, g: int, k: int) -> int:
        k %= int(self.element_orders[g])
        result, base = 0, int(g)
        while k:
            if k & 1:
                result = int(self.mul(result, base))
            base = int(self.mul(base, base))
            k >>= 1
        return result

    # -- orders ----------------------------------------------------------

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        if self.perms is not None:
            out = np.empty(n, dtype=np.int64)
            step = max(1, _ORDER_BATCH // max(1, self.perms.shape[1]))
            for lo in range(0, n, step):
                out[lo : lo + step] = batch_orders(self.perms[lo : lo + step].astype(np.int64))
        else:
            out = np.zeros(n, dtype=np.int64)
            idx = np.arange(n)
            cur = idx.copy()
            k = 1
            while True:
                hit = (cur == 0) & (out == 0)
                out[hit] = k
                if out.all():
                    break
                cur = np.asarray(self.mul(cur, idx))
                k += 1
        out.setflags(write=False)
        return out

    def element_order(self, g: int) -> int:
        return int(self.element_orders[g])

    def exponent(self) -> int:
        return lcm_all(np.unique(self.element_orders))

    # -- structure -------------------------------------------------------

    @cached_property
    def is_abelian(self) -> bool:
        if self.table is not None:
            return bool((self.table == self.table.T).all())
        idx = np.arange(self.order)
        gens = generating_sequence(self)
        return all(np.array_equal(self.mul(idx, g), self.mul(g, idx)) for g in gens)

    def center(self) -> np.ndarray:
        idx = np.arange(self.order)
        mask = np.ones(self.order, dtype=bool)
        for g in generating_sequence(self):
            mask &= np.asarray(self.mul(idx, g)) == np.asarray(self.mul(g, idx))
        return np.flatnonzero(mask)

    def conjugate(self, h, g):
        """``g * h * g^-1`` (vectorised in either argument)."""
        return self.mul(self.mul(g, h), self.inv(g))

    def histogram(self) -> dict[int, int]:
        vals, counts = np.unique(self.element_orders, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}

    def table_digest(self) -> str:
        import hashlib

        if self.table is not None:
            data = np.ascontiguousarray(self.table, dtype=np.int32).tobytes()
        elif self.perms is not None:
            data = np.ascontiguousarray(self.perms, dtype=np.int32).tobytes()
        else:
            data = np.ascontiguousarray(self.mul(np.arange(self.order)[:, None], np.arange(self.order)[None, :]), dtype=np.int32).tobytes()
        return hashlib.sha256(data).hexdigest()


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def _check_table(t: np.ndarray) -> int:
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise GroupTableError("multiplication table must be a non-empty square array")
    n = t.shape[0]
    bad = np.argwhere((t < 0) | (t >= n))
    if len(bad):
        a, b = map(int, bad[0])
        raise NotClosed(f"product of {a} and {b} is {int(t[a, b])}, outside [0, {n})")
    idx = np.arange(n)
    ident = [e for e in range(n) if np.array_equal(t[e], idx) and np.array_equal(t[:, e], idx)]
    if not ident:
        raise NoIdentity("no element acts as a two-sided identity")
    return ident[0]


def from_multiplication_table(table, label: str = "G", *, check_associativity: bool | None = None) -> FiniteGroup:
    """Validate a Cayley table on ``range(n)`` and return the group.

    If the identity sits at index ``e != 0`` the labels ``0`` and ``e`` are
    swapped so that the identity becomes 0.
    """
    t = np.array(table, dtype=np.int64)
    e = _check_table(t)
    n = t.shape[0]
    if e != 0:
        sigma = np.arange(n)
        sigma[[0, e]] = [e, 0]
        # relabel: new index i corresponds to old index sigma[i]; sigma is an involution
        t = sigma[t[np.ix_(sigma, sigma)]]
    has_inv = (t == 0).any(axis=1) & (t == 0).any(axis=0)
    for a in range(n):
        row_hits = np.flatnonzero(t[a] == 0)
        if not has_inv[a] or not any(t[b, a] == 0 for b in row_hits):
            raise NoInverse(f"element {a} has no two-sided inverse")
    if check_associativity is None:
        check_associativity = n <= ASSOC_CHECK_CAP
    if check_associativity:
        for a in range(n):
            left = t[t[a]]  # (a*b)*c over all b, c
            right = t[a][t]  # a*(b*c)
            diff = np.argwhere(left != right)
            if len(diff):
                b, c = map(int, diff[0])
                raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")
    dt = _index_dtype(n)
    return FiniteGroup(n, label, table=t.astype(dt))


def _table_from_right_mult(n: int, right: list[np.ndarray]) -> np.ndarray:
    """Full Cayley table from right-multiplication-by-generator maps.

    ``right[s][e]`` is the index of ``e * g_s``. A BFS tree over these edges
    gives every element as ``parent * g_s``, and then column
    ``table[:, parent*g_s] = right[s][table[:, parent]]``.
    """
    dt = _index_dtype(n)
    parent = np.full(n, -1, dtype=np.int64)
    via = np.full(n, -1, dtype=np.int64)
    order = [0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    while len(frontier):
        nxt = []
        for s, r in enumerate(right):
            kids = r[frontier]
            fresh = ~seen[kids]
            kids_f, pars = kids[fresh], frontier[fresh]
            # a child may be reached twice within one layer; keep the first
            kids_f, first = np.unique(kids_f, return_index=True)
            pars = pars[first]
            keep = ~seen[kids_f]
            kids_f, pars = kids_f[keep], pars[keep]
            seen[kids_f] = True
            parent[kids_f] = pars
            via[kids_f] = s
            nxt.append(kids_f)
            order.extend(kids_f.tolist())
        frontier = np.concatenate(nxt) if nxt else np.array([], dtype=np.int64)
    if len(order) != n:
        raise GroupTableError("generators do not generate the given element set")
    table = np.empty((n, n), dtype=dt)
    table[:, 0] = np.arange(n)
    for c in order[1:]:
        table[:, c] = right[via[c]][table[:, parent[c]]]
    return table


def from_permutation_generators(
    degree: int,
    gens: Sequence[Permutation | Sequence[int] | np.ndarray],
    *,
    label: str = "G",
    cap: int = DEFAULT_CLOSURE_CAP,
) -> FiniteGroup:
    """Breadth-first closure of permutation generators.

    Element 0 is the identity; the rest are numbered in discovery order,
    expanding each element by every generator in the given order.
    """
    dt = np.int16 if degree < (1 << 15) else np.int32
    garr = []
    for g in gens:
        arr = np.asarray(g.images if isinstance(g, Permutation) else g, dtype=np.int64)
        if arr.shape != (degree,) or not np.array_equal(np.sort(arr), np.arange(degree)):
            raise ValueError(f"generator {list(arr)} is not a permutation of degree {degree}")
        garr.append(arr)
    ident = np.arange(degree, dtype=dt)
    elems = [ident]
    lookup = {ident.tobytes(): 0}
    right: list[list[int]] = [[] for _ in garr]
    i = 0
    while i < len(elems):
        e = elems[i]
        for s, g in enumerate(garr):
            prod = e[g]
            key = prod.tobytes()
            j = lookup.get(key)
            if j is None:
                j = len(elems)
                if j >= cap:
                    raise ClosureTooLarge(f"closure exceeds {cap} elements")
                lookup[key] = j
                elems.append(prod)
            right[s].append(j)
        i += 1
    n = len(elems)
    perms = np.stack(elems)
    table = None
    if n <= TABLE_CAP:
        table = _table_from_right_mult(n, [np.asarray(r, dtype=np.int64) for r in right])
    return FiniteGroup(n, label, table=table, perms=perms, lookup=lookup)


def from_permutation_list(perms, *, label: str = "G") -> FiniteGroup:
    """Group from an explicit, complete list of permutations (row 0 the identity)."""
    perms = np.asarray(perms)
    n, degree = perms.shape
    dt = np.int16 if degree < (1 << 15) else np.int32
    perms = perms.astype(dt)
    if not np.array_equal(perms[0], np.arange(degree)):
        raise GroupTableError("row 0 must be the identity permutation")
    lookup = {row.tobytes(): i for i, row in enumerate(perms)}
    if len(lookup) != n:
        raise GroupTableError("duplicate permutations in element list")
    group = FiniteGroup(n, label, perms=perms, lookup=lookup)
    if n <= TABLE_CAP:
        right = []
        covered = np.zeros(n, dtype=bool)
        covered[0] = True
        while not covered.all():
            g = int(np.flatnonzero(~covered)[0])
            prods = perms[:, perms[g].astype(np.int64)]
            right.append(np.fromiter((lookup[r.tobytes()] for r in prods), dtype=np.int64, count=n))
            covered = _closure_mask(n, right)
        table = _table_from_right_mult(n, right) if right else np.zeros((1, 1), dtype=dt)
        group = FiniteGroup(n, label, table=table, perms=perms, lookup=lookup)
    return group


def _closure_mask(n: int, right: list[np.ndarray]) -> np.ndarray:
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    while len(frontier):
        kids = np.unique(np.concatenate([r[frontier] for r in right]))
        kids = kids[~seen[kids]]
        seen[kids] = True
        frontier = kids
    return seen


# ---------------------------------------------------------------------------
# built-in families
# ---------------------------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    """Cyclic group; element ``i`` is ``g**i``."""
    if n < 1:
        raise ParameterOutOfRange("cyclic(n) needs n >= 1")
    i = np.arange(n)
    return FiniteGroup(n, f"cyclic({n})", table=((i[:, None] + i[None, :]) % n).astype(_index_dtype(n)))


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n``: index ``i`` is ``r**i``, index ``n+i`` is ``r**i * s``."""
    if n < 1:
        raise ParameterOutOfRange("dihedral(n) needs n >= 1")
    i = np.arange(n)
    rot = (i[:, None] + i[None, :]) % n
    flip = (i[:, None] - i[None, :]) % n
    t = np.block([[rot, rot + n], [flip + n, flip]])
    return FiniteGroup(2 * n, f"dihedral({n})", table=t.astype(_index_dtype(2 * n)))


def quaternion(order: int) -> FiniteGroup:
    """Generalised quaternion group of order ``2**k``, ``3 <= k <= 6``.

    Index ``i`` is ``a**i`` and ``m+i`` is ``a**i * b`` where ``m = order/2``,
    ``a**m = 1``, ``b**2 = a**(m/2)`` and ``b a b^-1 = a^-1``.
    """
    k = order.bit_length() - 1
    if order != 1 << k or not 3 <= k <= 6:
        raise ParameterOutOfRange("quaternion(order) needs order in {8, 16, 32, 64}")
    m = order // 2
    i = np.arange(m)
    rot = (i[:, None] + i[None, :]) % m
    flip = (i[:, None] - i[None, :]) % m
    t = np.block([[rot, rot + m], [flip + m, (flip + m // 2) % m]])
    return FiniteGroup(order, f"quaternion({order})", table=t.astype(_index_dtype(order)))


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    """``(Z/p)^k``; index ``sum v_i p^i`` is the vector ``v`` (little-endian digits)."""
    require_prime(p)
    if k < 1:
        raise ParameterOutOfRange("elementary_abelian(p, k) needs k >= 1")
    n = p**k
    digits = (np.arange(n)[:, None] // p ** np.arange(k)[None, :]) % p
    weights = p ** np.arange(k)
    summed = (digits[:, None, :] + digits[None, :, :]) % p
    t = summed @ weights
    return FiniteGroup(n, f"elementary_abelian({p},{k})", table=t.astype(_index_dtype(n)))


def symmetric(n: int) -> FiniteGroup:
    """Symmetric group on ``n <= 6`` points, generated by ``(0 1)`` and ``(0 1 ... n-1)``;
    elements numbered in BFS discovery order."""
    if not 1 <= n <= 6:
        raise ParameterOutOfRange("symmetric(n) needs 1 <= n <= 6")
    gens = []
    if n >= 2:
        gens = [Permutation.from_cycles(n, [(0, 1)]), Permutation.from_cycles(n, [tuple(range(n))])]
    return from_permutation_generators(n, gens, label=f"symmetric({n})")


def alternating(n: int) -> FiniteGroup:
    """Alternating group on ``n <= 6`` points, generated by ``(0 1 2)`` and an
    ``(n-1)``- or ``n``-cycle of even parity; BFS numbering."""
    if not 1 <= n <= 6:
        raise ParameterOutOfRange("alternating(n) needs 1 <= n <= 6")
    gens = []
    if n >= 3:
        long = tuple(range(n)) if n % 2 else tuple(range(1, n))
        gens = [Permutation.from_cycles(n, [(0, 1, 2)]), Permutation.from_cycles(n, [long])]
    return from_permutation_generators(n, gens, label=f"alternating({n})")


def direct_product(a: FiniteGroup, b: FiniteGroup, *, cap: int = DEFAULT_CLOSURE_CAP, label: str | None = None) -> FiniteGroup:
    """Componentwise product; ``(i, j)`` has index ``i*|B| + j``."""
    n = a.order * b.order
    if n > cap:
        raise ClosureTooLarge(f"direct product of order {n} exceeds cap {cap}")
    label = label or f"{a.label} x {b.label}"
    nb = b.order
    if n <= TABLE_CAP and a.table is not None and b.table is not None:
        ta = a.table.astype(np.int64)
        tb = b.table.astype(np.int64)
        t = (ta[:, None, :, None] * nb + tb[None, :, None, :]).reshape(n, n)
        return FiniteGroup(n, label, table=t.astype(_index_dtype(n)))

    def mul(x, y):
        x, y = np.asarray(x), np.asarray(y)
        return np.asarray(a.mul(x // nb, y // nb)) * nb + np.asarray(b.mul(x % nb, y % nb))

    def inv(x):
        x = np.asarray(x)
        return a.inv(x // nb) * nb + b.inv(x % nb)

    return FiniteGroup(n, label, mul_fn=mul, inv_fn=inv)


_FAMILIES = {
    "cyclic": (cyclic, 1),
    "dihedral": (dihedral, 1),
    "symmetric": (symmetric, 1),
    "alternating": (alternating, 1),
    "quaternion": (quaternion, 1),
    "elementary_abelian": (elementary_abelian, 2),
}


def builtin_group(spec: str | tuple) -> FiniteGroup:
    """Named family member.

    ``spec`` is ``"family:arg[:arg]"`` (e.g. ``"dihedral:4"``,
    ``"elementary_abelian:2:3"``), a tuple ``("family", *args)``, or several of
    these joined by ``"*"`` for a direct product.
    """
    if isinstance(spec, tuple):
        parts = [spec]
    else:
        parts = [tuple(s.strip().split(":")) for s in spec.split("*")]
    groups = []
    for fam, *args in parts:
        if fam not in _FAMILIES:
            raise UnknownFamily(f"unknown group family {fam!r}")
        ctor, arity = _FAMILIES[fam]
        if len(args) != arity:
            raise ParameterOutOfRange(f"{fam} takes {arity} argument(s), got {len(args)}")
        try:
            ints = [int(x) for x in args]
        except ValueError as exc:
            raise ParameterOutOfRange(f"non-integer argument in {fam}:{':'.join(map(str, args))}") from exc
        groups.append(ctor(*ints))
    g = groups[0]
    for h in groups[1:]:
        g = direct_product(g, h)
    return g


# ---------------------------------------------------------------------------
# subgroups and quotients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubgroupHandle:
    parent: FiniteGroup = field(repr=False, compare=False)
    members: tuple[int, ...]
    is_normal: bool = False
    is_characteristic: bool = False

    @property
    def order(self) -> int:
        return len(self.members)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.int64)

    def __contains__(self, g) -> bool:
        return int(g) in set(self.members)

    @property
    def is_trivial(self) -> bool:
        return len(self.members) == 1

    @property
    def is_whole(self) -> bool:
        return len(self.members) == self.parent.order


def closure(G: FiniteGroup, gens: Iterable[int]) -> np.ndarray:
    """Sorted members of the subgroup generated by ``gens``."""
    gens = np.unique(np.asarray(list(gens), dtype=np.int64))
    gens = gens[gens != 0]
    seen = np.zeros(G.order, dtype=bool)
    seen[0] = True
    frontier = np.array([0], dtype=np.int64)
    if not len(gens):
        return frontier
    while len(frontier):
        kids = np.asarray(G.mul(frontier[:, None], gens[None, :])).ravel()
        kids = np.unique(kids)
        kids = kids[~seen[kids]]
        seen[kids] = True
        frontier = kids
    return np.flatnonzero(seen)


def generating_sequence(G: FiniteGroup) -> list[int]:
    """Greedy generators: repeatedly the smallest index outside the current closure."""
    gens: list[int] = []
    inside = np.zeros(G.order, dtype=bool)
    inside[0] = True
    while not inside.all():
        g = int(np.flatnonzero(~inside)[0])
        gens.append(g)
        inside[:] = False
        inside[closure(G, gens)] = True
    return gens


def is_normal_subset(G: FiniteGroup, members: np.ndarray) -> bool:
    mask = np.zeros(G.order, dtype=bool)
    mask[members] = True
    for g in generating_sequence(G):
        if not mask[np.asarray(G.conjugate(members, g))].all():
            return False
    return True


def make_subgroup(G: FiniteGroup, members, *, is_characteristic: bool = False) -> SubgroupHandle:
    members = np.unique(np.asarray(members, dtype=np.int64))
    normal = is_characteristic or is_normal_subset(G, members)
    return SubgroupHandle(G, tuple(int(m) for m in members), normal, is_characteristic)


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> SubgroupHandle:
    return make_subgroup(G, closure(G, gens))


def subgroups(G: FiniteGroup, *, cap: int = SUBGROUP_CAP) -> list[SubgroupHandle]:
    """Every subgroup, by cyclic extension; sorted by size then member tuple."""
    if G.order > cap:
        raise GroupTooLarge(f"subgroup lattice enumeration capped at order {cap}, got {G.order}")
    cyc: dict[tuple[int, ...], int] = {}
    for g in range(G.order):
        key = tuple(closure(G, [g]).tolist())
        cyc.setdefault(key, g)
    cyclic_items = [(frozenset(k), g) for k, g in cyc.items()]
    found: dict[tuple[int, ...], list[int]] = {k: ([g] if g else []) for k, g in cyc.items()}
    layer = list(found.items())
    while layer:
        nxt = []
        for members, gens in layer:
            mset = set(members)
            for cset, c in cyclic_items:
                if c in mset or cset <= mset:
                    continue
                key = tuple(closure(G, gens + [c]).tolist())
                if key not in found:
                    found[key] = gens + [c]
                    nxt.append((key, gens + [c]))
        layer = nxt
    keys = sorted(found, key=lambda k: (len(k), k))
    return [SubgroupHandle(G, k, is_normal_subset(G, np.asarray(k)), False) for k in keys]


def subgroup_as_group(H: SubgroupHandle, label: str | None = None) -> tuple[FiniteGroup, np.ndarray]:
    """Standalone copy of ``H``; returns the group and the embedding ``local -> parent``."""
    G = H.parent
    members = H.as_array()
    prods = np.asarray(G.mul(members[:, None], members[None, :]))
    t = np.searchsorted(members, prods)
    m = len(members)
    label = label or f"{G.label}>N{m}"
    return FiniteGroup(m, label, table=t.astype(_index_dtype(m))), members


@dataclass(frozen=True)
class QuotientMap:
    source: FiniteGroup = field(repr=False)
    kernel: SubgroupHandle = field(repr=False)
    target: FiniteGroup
    projection: np.ndarray = field(repr=False)
    coset_reps: np.ndarray = field(repr=False)

    def __call__(self, g):
        return self.projection[g]

    def coset(self, c: int) -> np.ndarray:
        return np.flatnonzero(self.projection == c)


def quotient(G: FiniteGroup, N: SubgroupHandle, *, rep_policy: str = "min", label: str | None = None) -> QuotientMap:
    """``G/N`` on coset indices.

    Cosets are numbered by their smallest member; ``rep_policy`` picks the
    smallest (``"min"``) or largest (``"max"``) member as representative.
    """
    if not N.is_normal:
        raise NotNormal(f"subgroup of order {N.order} is not normal in {G.label}")
    if rep_policy not in ("min", "max"):
        raise ValueError("rep_policy must be 'min' or 'max'")
    nmem = N.as_array()
    proj = np.full(G.order, -1, dtype=np.int64)
    mins, maxs = [], []
    for g in range(G.order):
        if proj[g] >= 0:
            continue
        coset = np.asarray(G.mul(g, nmem))
        proj[coset] = len(mins)
        mins.append(g)
        maxs.append(int(coset.max()))
    k = len(mins)
    reps = np.asarray(mins if rep_policy == "min" else maxs, dtype=np.int64)
    label = label or f"{G.label}/N{N.order}"
    if k <= TABLE_CAP:
        prods = np.asarray(G.mul(reps[:, None], reps[None, :]))
        target = FiniteGroup(k, label, table=proj[prods].astype(_index_dtype(k)))
    else:
        def mul(x, y):
            return proj[np.asarray(G.mul(reps[np.asarray(x)], reps[np.asarray(y)]))]

        def inv(x):
            return proj[G.inv(reps[np.asarray(x)])]

        target = FiniteGroup(k, label, mul_fn=mul, inv_fn=inv)
    proj.setflags(write=False)
    reps.setflags(write=False)
    return QuotientMap(G, N, target, proj, reps)


def conjugacy_classes(G: FiniteGroup) -> list[np.ndarray]:
    """Conjugacy classes, each sorted, listed by their smallest member."""
    seen = np.zeros(G.order, dtype=bool)
    idx = np.arange(G.order)
    out = []
    for x in range(G.order):
        if seen[x]:
            continue
        cls = np.unique(np.asarray(G.conjugate(x, idx)))
        seen[cls] = True
        out.append(cls)
    return out


def exponent(G: FiniteGroup) -> int:
    return G.exponent()


def element_order(G: FiniteGroup, g: int) -> int:
    return G.element_order(g)


def order_histogram(G: FiniteGroup) -> dict[int, int]:
    return G.histogram()


def table_of(G: FiniteGroup) -> np.ndarray:
    """Full Cayley table (materialised on demand for table-less groups)."""
    if G.table is not None:
        return G.table
    if G.order > TABLE_CAP:
        raise GroupTooLarge(f"refusing to materialise a {G.order}x{G.order} table")
    idx = np.arange(G.order)
    return np.asarray(G.mul(idx[:, None], idx[None, :]))
