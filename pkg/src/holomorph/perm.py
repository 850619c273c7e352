"""Permutations on ``range(degree)`` and batched cycle-structure orders.

Composition convention: ``(p * q)(i) == p(q(i))``, i.e. ``q`` acts first.
As arrays this is ``p[q]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

_INT64_MAX = np.iinfo(np.int64).max


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("images do not form a bijection on range(degree)")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        img = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(tuple(img))

    @classmethod
    def from_array(cls, arr) -> "Permutation":
        return cls(tuple(int(v) for v in arr))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        return cycle_decomposition(self.images)

    def cycle_lengths(self) -> list[int]:
        return [len(c) for c in self.cycles()]

    def order(self) -> int:
        return math.lcm(*self.cycle_lengths()) if self.degree else 1

    def as_array(self, dtype=np.int64) -> np.ndarray:
        return np.asarray(self.images, dtype=dtype)

    def __repr__(self) -> str:
        cyc = [c for c in self.cycles() if len(c) > 1]
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"
        return f"Permutation{body}"


def cycle_decomposition(images: Sequence[int]) -> list[tuple[int, ...]]:
    """Orbit walk: every cycle, including fixed points, each started at its minimum."""
    n = len(images)
    seen = bytearray(n)
    out = []
    for start in range(n):
        if seen[start]:
            continue
        cyc = []
        j = start
        while not seen[j]:
            seen[j] = 1
            cyc.append(j)
            j = int(images[j])
        out.append(tuple(cyc))
    return out


def cycle_labels(perms: np.ndarray) -> np.ndarray:
    """For a batch ``(B, n)`` of permutations, label every point by the minimum of its cycle.

    Pointer doubling: after round ``t`` the label of ``j`` is the minimum over
    ``j, P(j), ..., P^(2^t - 1)(j)``, so ``ceil(log2 n)`` rounds cover every cycle.
    """
    perms = np.asarray(perms)
    b, n = perms.shape
    lab = np.broadcast_to(np.arange(n, dtype=perms.dtype), (b, n)).copy()
    jump = perms.copy()
    span = 1
    while span < n:
        np.minimum(lab, np.take_along_axis(lab, jump, axis=1), out=lab)
        jump = np.take_along_axis(jump, jump, axis=1)
        span *= 2
    return lab


def batch_cycle_lengths(perms: np.ndarray) -> np.ndarray:
    """``(B, n)`` array whose entry ``[r, j]`` is the length of the cycle through ``j``."""
    perms = np.asarray(perms)
    b, n = perms.shape
    if n == 0:
        return np.zeros((b, 0), dtype=np.int64)
    return _lengths_from_labels(cycle_labels(perms))


def _lengths_from_labels(lab: np.ndarray) -> np.ndarray:
    b, n = lab.shape
    lab = lab.astype(np.int64)
    flat = lab + (np.arange(b, dtype=np.int64) * n)[:, None]
    counts = np.bincount(flat.ravel(), minlength=b * n).reshape(b, n)
    return np.take_along_axis(counts, lab, axis=1)


def batch_orders(perms: np.ndarray) -> list[int] | np.ndarray:
    """Orders of a batch of permutations, as lcm of cycle lengths.

    The reduction runs in int64 with an overflow guard; rows that would overflow
    are recomputed with Python integers, so the result is always exact.
    """
    perms = np.asarray(perms)
    b, n = perms.shape
    if n == 0 or b == 0:
        return np.ones(b, dtype=np.int64)
    lab = cycle_labels(perms)
    lens = _lengths_from_labels(lab)
    # only the cycle minima contribute, everything else becomes 1
    is_min = lab == np.arange(n)
    lens = np.where(is_min, lens, 1)
    acc = np.ones(b, dtype=np.int64)
    overflow = np.zeros(b, dtype=bool)
    for col in range(n):
        x = lens[:, col]
        g = np.gcd(acc, x)
        a = acc // g
        overflow |= a > (_INT64_MAX // x)
        acc = np.where(overflow, 1, a * x)
    if overflow.any():
        out = acc.astype(object)
        for r in np.flatnonzero(overflow):
            out[r] = math.lcm(*(int(v) for v in lens[r]))
        return out
    return acc
