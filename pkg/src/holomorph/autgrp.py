"""Automorphism groups by generator-image backtracking.

Aut(G) is materialised as a permutation group on the |G| element indices and
handed back to :mod:`holomorph.groups`, so orders, exponents and the Out
quotient come from the same code as for any other group. Elementary abelian
groups whose GL_k(p) is too large to enumerate are handled through matrices
and rational canonical forms instead.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .checks import CheckRecord
from .errors import CapExceeded, GroupTooLarge
from .fp import gl_class_representatives, gl_order, random_invertible
from .groups import (
    TABLE_CAP,
    FiniteGroup,
    SubgroupHandle,
    closure,
    conjugacy_classes,
    direct_product,
    from_permutation_list,
    generating_sequence,
    quotient,
)
from .arith import leq_power, less_than_power, lcm_all
from .perm import batch_orders

log = logging.getLogger(__name__)

AUT_BASE_CAP = 1024
DEFAULT_MAX_AUT = 1 << 17


@dataclass(frozen=True, eq=False)
class Automorphism:
    images: np.ndarray
    order: int

    @classmethod
    def from_images(cls, images) -> "Automorphism":
        arr = np.asarray(images, dtype=np.int64)
        arr.setflags(write=False)
        return cls(arr, int(batch_orders(arr[None])[0]))

    def __call__(self, g):
        return self.images[g]

    def as_list(self) -> list[int]:
        return [int(v) for v in self.images]


@dataclass(frozen=True, eq=False)
class LinearStructure:
    """Coordinates identifying an elementary abelian group with F_p^k."""

    p: int
    k: int
    elem_of_code: np.ndarray  # vector code (little-endian base p) -> element index
    vectors: np.ndarray  # element index -> coordinate vector, shape (|G|, k)

    def images_of_matrix(self, m: np.ndarray) -> np.ndarray:
        new = (self.vectors @ np.asarray(m, dtype=np.int64).T) % self.p
        codes = new @ (self.p ** np.arange(self.k))
        return self.elem_of_code[codes]


@dataclass(eq=False)
class AutomorphismGroup:
    base: FiniteGroup
    order: int
    generators: np.ndarray
    as_group: FiniteGroup | None
    inner: SubgroupHandle | None
    inner_order: int
    out_order: int
    out_exponent: int
    linear: LinearStructure | None = None
    _class_reps: list | None = field(default=None, repr=False)

    @property
    def enumerated(self) -> bool:
        return self.as_group is not None

    def images(self, i: int) -> np.ndarray:
        return self.as_group.perms[i].astype(np.int64)

    def automorphism(self, i: int) -> Automorphism:
        return Automorphism(self.images(i), int(self.as_group.element_orders[i]))

    def __iter__(self) -> Iterator[Automorphism]:
        if not self.enumerated:
            raise GroupTooLarge("automorphism group is not enumerated; use class_representatives()")
        for i in range(self.order):
            yield self.automorphism(i)

    def __len__(self) -> int:
        return self.order

    def class_representatives(self) -> list[Automorphism]:
        """One automorphism per Aut(G)-conjugacy class."""
        if self._class_reps is None:
            if self.enumerated:
                reps = [int(c[0]) for c in conjugacy_classes(self.as_group)]
                self._class_reps = [self.automorphism(i) for i in reps]
            else:
                lin = self.linear
                self._class_reps = [
                    Automorphism.from_images(lin.images_of_matrix(m)) for m in gl_class_representatives(lin.p, lin.k)
                ]
        return self._class_reps

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """``n`` automorphisms drawn uniformly, as an ``(n, |G|)`` image array."""
        if self.enumerated:
            idx = rng.integers(0, self.order, size=n)
            return self.as_group.perms[idx].astype(np.int64)
        lin = self.linear
        mats = random_invertible(rng, lin.p, lin.k, n)
        return np.stack([lin.images_of_matrix(m) for m in mats])

    def max_order(self) -> int:
        if self.enumerated:
            return int(self.as_group.element_orders.max())
        return max(a.order for a in self.class_representatives())


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


def _bfs_layers(T: np.ndarray, gens: list[int]):
    """BFS of <gens> from the identity by right multiplication.

    Returns the layers as ``(children, parents, generator_position)`` triples
    and the sorted member array.
    """
    n = T.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    frontier = np.array([0], dtype=np.int64)
    g = np.asarray(gens, dtype=np.int64)
    layers = []
    while len(frontier):
        kids = T[frontier[:, None], g[None, :]]
        pars = np.broadcast_to(frontier[:, None], kids.shape).ravel()
        pos = np.broadcast_to(np.arange(len(g))[None, :], kids.shape).ravel()
        kids = kids.ravel()
        fresh = ~seen[kids]
        kids, pars, pos = kids[fresh], pars[fresh], pos[fresh]
        kids, first = np.unique(kids, return_index=True)
        pars, pos = pars[first], pos[first]
        seen[kids] = True
        if len(kids):
            layers.append((kids, pars, pos))
        frontier = kids
    return layers, np.flatnonzero(seen)


def _extend(T, layers, members, gens, imgs) -> np.ndarray | None:
    """Extend generator images along the BFS tree and check the homomorphism law.

    Returns the partial map (``-1`` outside the subgroup) or None on failure.
    """
    n = T.shape[0]
    imgs = np.asarray(imgs, dtype=np.int64)
    phi = np.full(n, -1, dtype=np.int64)
    phi[0] = 0
    for kids, pars, pos in layers:
        phi[kids] = T[phi[pars], imgs[pos]]
    pm = phi[members]
    if len(np.unique(pm)) != len(members):
        return None
    g = np.asarray(gens, dtype=np.int64)
    lhs = phi[T[members[:, None], g[None, :]]]
    rhs = T[pm[:, None], imgs[None, :]]
    if not np.array_equal(lhs, rhs):
        return None
    return phi


def backtrack_automorphisms(G: FiniteGroup, *, max_aut: int = DEFAULT_MAX_AUT) -> np.ndarray:
    """All automorphisms of ``G`` as a sorted ``(|Aut|, |G|)`` image array.

    Images of a greedy generating sequence are chosen one level at a time among
    elements of the same order; each partial choice is extended over the
    subgroup generated so far and pruned as soon as it fails to be an injective
    homomorphism there.
    """
    if G.table is None:
        raise GroupTooLarge(f"backtracking needs a multiplication table (|G| <= {TABLE_CAP})")
    T = G.table.astype(np.int64)
    n = G.order
    if n == 1:
        return np.zeros((1, 1), dtype=np.int64)
    gens = generating_sequence(G)
    levels = [_bfs_layers(T, gens[: i + 1]) for i in range(len(gens))]
    orders = G.element_orders
    cand = [np.flatnonzero(orders == orders[g]) for g in gens]
    last = len(gens) - 1
    found: list[np.ndarray] = []
    chosen = [0] * len(gens)

    def rec(i: int) -> None:
        layers, members = levels[i]
        for c in cand[i]:
            chosen[i] = int(c)
            phi = _extend(T, layers, members, gens[: i + 1], chosen[: i + 1])
            if phi is None:
                continue
            if i == last:
                found.append(phi)
                if len(found) > max_aut:
                    raise GroupTooLarge(f"|Aut({G.label})| exceeds {max_aut}")
            else:
                rec(i + 1)

    rec(0)
    out = np.stack(found)
    order = np.lexsort(out.T[::-1])
    return out[order]


def automorphisms_brute_force(G: FiniteGroup) -> np.ndarray:
    """Independent oracle: filter candidate maps with no order pruning.

    For ``|G| <= 8`` every bijection fixing the identity is tested; beyond that
    every tuple of generator images is extended and tested. Sorted like
    :func:`backtrack_automorphisms`.
    """
    import itertools

    T = np.asarray(G.table, dtype=np.int64)
    n = G.order
    out = []
    if n <= 8:
        for rest in itertools.permutations(range(1, n)):
            phi = np.array((0,) + rest, dtype=np.int64)
            if np.array_equal(phi[T], T[phi[:, None], phi[None, :]]):
                out.append(phi)
    else:
        gens = generating_sequence(G)
        layers, members = _bfs_layers(T, gens)
        for imgs in itertools.product(range(n), repeat=len(gens)):
            phi = np.zeros(n, dtype=np.int64)
            im = np.asarray(imgs)
            for kids, pars, pos in layers:
                phi[kids] = T[phi[pars], im[pos]]
            if len(np.unique(phi)) == n and np.array_equal(phi[T], T[phi[:, None], phi[None, :]]):
                out.append(phi)
    arr = np.stack(out) if out else np.zeros((0, n), dtype=np.int64)
    return arr[np.lexsort(arr.T[::-1])] if len(arr) else arr


# ---------------------------------------------------------------------------
# elementary abelian groups
# ---------------------------------------------------------------------------


def elementary_abelian_structure(G: FiniteGroup) -> LinearStructure | None:
    """Coordinates for ``G ~ F_p^k`` if ``G`` is elementary abelian (and nontrivial)."""
    if G.order == 1 or not G.is_abelian:
        return None
    ords = np.unique(G.element_orders[1:])
    if len(ords) != 1:
        return None
    p = int(ords[0])
    basis = generating_sequence(G)
    k = len(basis)
    if p**k != G.order:
        return None
    elem = np.zeros(1, dtype=np.int64)
    for b in basis:
        blocks = [elem]
        cur = elem
        for _ in range(p - 1):
            cur = np.asarray(G.mul(cur, b), dtype=np.int64)
            blocks.append(cur)
        elem = np.concatenate(blocks)
    vectors = np.zeros((G.order, k), dtype=np.int64)
    codes = np.arange(G.order)
    vectors[elem] = (codes[:, None] // p ** np.arange(k)[None, :]) % p
    return LinearStructure(p, k, elem, vectors)


def _linear_aut_group(G: FiniteGroup, lin: LinearStructure) -> AutomorphismGroup:
    p, k = lin.p, lin.k
    mats = []
    for i in range(k):
        for j in range(k):
            if i != j:
                m = np.eye(k, dtype=np.int64)
                m[i, j] = 1
                mats.append(m)
    if p > 2:
        m = np.eye(k, dtype=np.int64)
        m[0, 0] = _primitive_root(p)
        mats.append(m)
    gens = np.stack([lin.images_of_matrix(m) for m in mats]) if mats else np.zeros((0, G.order), dtype=np.int64)
    order = gl_order(k, p)
    agrp = AutomorphismGroup(G, order, gens, None, None, 1, order, 0, lin)
    agrp.out_exponent = lcm_all(a.order for a in agrp.class_representatives())
    return agrp


def _primitive_root(p: int) -> int:
    from .arith import factorize

    for g in range(1, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in factorize(p - 1)):
            return g
    return 1


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------


def _cache_path(G: FiniteGroup) -> Path | None:
    root = os.environ.get("HOLO_CACHE_DIR")
    if not root:
        return None
    return Path(root) / f"aut-{G.table_digest()[:32]}.npy"


def automorphism_group(
    G: FiniteGroup,
    *,
    cap: int = AUT_BASE_CAP,
    max_aut: int = DEFAULT_MAX_AUT,
) -> AutomorphismGroup:
    """Complete Aut(G) with Inn(G), |Out(G)| and exp(Out(G))."""
    if G.order > cap:
        raise GroupTooLarge(f"automorphism search capped at |G| <= {cap}, got {G.order}")
    key = (G.table_digest(), max_aut)
    hit = _MEMO.get(key)
    if hit is not None and hit.base.order == G.order:
        return _rebase(hit, G)
    lin = elementary_abelian_structure(G)
    if lin is not None and gl_order(lin.k, lin.p) > max_aut:
        out = _linear_aut_group(G, lin)
        _MEMO[key] = out
        return out

    path = _cache_path(G)
    images = None
    if path is not None and path.exists():
        images = np.load(path)
        if images.shape[1] != G.order:
            images = None
    if images is None:
        images = backtrack_automorphisms(G, max_aut=max_aut)
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            np.save(path, images)
    out = assemble(G, images)
    _MEMO[key] = out
    return out


_MEMO: dict[tuple[str, int], AutomorphismGroup] = {}


def _rebase(A: AutomorphismGroup, G: FiniteGroup) -> AutomorphismGroup:
    """Share a memoised result between equal-table groups with different labels."""
    if A.base is G:
        return A
    import copy

    B = copy.copy(A)
    B.base = G
    return B


def assemble(G: FiniteGroup, images: np.ndarray) -> AutomorphismGroup:
    """Wrap a complete, sorted automorphism list as an AutomorphismGroup."""
    A = from_permutation_list(images, label=f"Aut({G.label})")
    idx = np.arange(G.order)
    conj = np.stack([np.asarray(G.conjugate(idx, g), dtype=np.int64) for g in range(G.order)])
    inner_idx = sorted({A.index_of_perm(row) for row in conj})
    inner = SubgroupHandle(A, tuple(inner_idx), True, False)
    Q = quotient(A, inner)
    gens = np.stack([A.perms[g].astype(np.int64) for g in generating_sequence(A)]) if A.order > 1 else np.zeros((0, G.order), dtype=np.int64)
    return AutomorphismGroup(
        base=G,
        order=A.order,
        generators=gens,
        as_group=A,
        inner=inner,
        inner_order=len(inner_idx),
        out_order=Q.target.order,
        out_exponent=Q.target.exponent(),
    )


def out_stats(A: AutomorphismGroup) -> tuple[int, int]:
    return A.out_order, A.out_exponent


def mao(G: FiniteGroup, aut: AutomorphismGroup | None = None) -> int:
    """Maximum order of an automorphism of ``G``."""
    aut = aut or automorphism_group(G)
    return aut.max_order()


def aut_orbits(G: FiniteGroup, aut: AutomorphismGroup) -> list[np.ndarray]:
    """Orbits of Aut(G) on the elements of G, each sorted, listed by minimum."""
    n = G.order
    if len(aut.generators) == 0:
        return [np.array([i]) for i in range(n)]
    src = np.tile(np.arange(n), len(aut.generators))
    dst = aut.generators.ravel()
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    groups: dict[int, list[int]] = {}
    for i, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(i)
    return sorted((np.asarray(v) for v in groups.values()), key=lambda a: int(a[0]))


def is_characteristic(G: FiniteGroup, members, aut: AutomorphismGroup) -> bool:
    mask = np.zeros(G.order, dtype=bool)
    mask[np.asarray(members)] = True
    return all(mask[gen[np.asarray(members)]].all() for gen in aut.generators)


def characteristic_subgroups(G: FiniteGroup, aut: AutomorphismGroup | None = None) -> list[SubgroupHandle]:
    """All characteristic subgroups, sorted by size then members.

    A characteristic subgroup is a union of Aut(G)-orbits, so every one is a
    join of subgroups generated by single orbits.
    """
    aut = aut or automorphism_group(G)
    base = {}
    for orb in aut_orbits(G, aut):
        mem = tuple(closure(G, orb.tolist()).tolist())
        base[mem] = None
    found = set(base) | {(0,)}
    frontier = set(found)
    atoms = list(base)
    while frontier:
        nxt = set()
        for h in frontier:
            hs = set(h)
            for a in atoms:
                if set(a) <= hs:
                    continue
                j = tuple(closure(G, list(h) + list(a)).tolist())
                if j not in found:
                    found.add(j)
                    nxt.add(j)
        frontier = nxt
    keys = sorted(found, key=lambda k: (len(k), k))
    return [SubgroupHandle(G, k, True, True) for k in keys]


def is_simple(G: FiniteGroup) -> bool:
    """Nontrivial and without proper nontrivial normal subgroups."""
    if G.order == 1:
        return False
    for cls in conjugacy_classes(G)[1:]:
        if len(closure(G, cls.tolist())) != G.order:
            return False
    return True


# ---------------------------------------------------------------------------
# S^n bound
# ---------------------------------------------------------------------------


def _wreath_images(aut_images: np.ndarray, m: int, choice: tuple[int, ...], perm: tuple[int, ...]) -> np.ndarray:
    """Action of ``(alpha_1, ..., alpha_n; pi)`` on S^n in row-major coordinates.

    Coordinate ``i`` of the image is ``alpha_i(s_{pi^-1(i)})``.
    """
    n = len(choice)
    coords = np.indices((m,) * n).reshape(n, -1)
    inv = [0] * n
    for i, j in enumerate(perm):
        inv[j] = i
    new = np.stack([aut_images[choice[i]][coords[inv[i]]] for i in range(n)])
    weights = m ** np.arange(n - 1, -1, -1)
    return (new * weights[:, None]).sum(axis=0)


def wreath_automorphism_orders(S: FiniteGroup, n: int, aut: AutomorphismGroup | None = None) -> tuple[int, np.ndarray]:
    """Orders of all elements of Aut(S) wr Sym(n) acting on S^n; returns ``(count, orders)``."""
    import itertools

    aut = aut or automorphism_group(S)
    ims = np.stack([aut.images(i) for i in range(aut.order)])
    m = S.order
    orders = []
    batch = []
    limit = max(1, (1 << 22) // (m**n))
    count = 0
    for perm in itertools.permutations(range(n)):
        for choice in itertools.product(range(aut.order), repeat=n):
            batch.append(_wreath_images(ims, m, choice, perm))
            count += 1
            if len(batch) >= limit:
                orders.append(np.asarray(batch_orders(np.stack(batch))))
                batch = []
    if batch:
        orders.append(np.asarray(batch_orders(np.stack(batch))))
    return count, np.concatenate(orders)


def verify_char_simple_bound(S: FiniteGroup, n: int = 2, *, cap: int = TABLE_CAP) -> CheckRecord:
    """Check ``mao(S^n) < |S^n|^0.438`` and ``exp(S^n) <= |S| <= |S^n|^0.5`` exactly."""
    rec = CheckRecord("char_simple_bound", True, {"S": S.label, "n": n})
    if n < 2:
        raise ValueError("n must be at least 2")
    if S.is_abelian or not is_simple(S):
        rec.passed = None
        rec.details["precondition"] = "S is not a nonabelian simple group"
        return rec
    order = S.order**n
    if order > cap:
        raise CapExceeded(f"|S^n| = {order} exceeds cap {cap}")
    aut = automorphism_group(S)
    count, orders = wreath_automorphism_orders(S, n, aut)
    mao_val = int(orders.max())
    P = S
    for _ in range(n - 1):
        P = direct_product(P, S)
    exp_val = P.exponent()
    bound_mao = less_than_power(mao_val, order, 438, 1000)
    bound_exp = exp_val <= S.order and leq_power(S.order, order, 1, 2)
    rec.details.update(
        {
            "order": order,
            "aut_order": count,
            "expected_aut_order": aut.order**n * math.factorial(n),
            "mao": mao_val,
            "exponent": exp_val,
            "mao_lt_order_pow_0_438": bound_mao,
            "exp_le_order_pow_0_5": bound_exp,
            "lcm_bound_lt_order": less_than_power(mao_val * exp_val, order, 1, 1),
        }
    )
    if not bound_mao:
        rec.fail(check="mao", mao=mao_val, order=order)
    if not bound_exp:
        rec.fail(check="exponent", exponent=exp_val, order=order)
    return rec
