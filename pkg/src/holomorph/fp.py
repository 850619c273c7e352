"""Polynomials and matrices over a prime field F_p.

Polynomials are tuples of coefficients, constant term first, with no trailing
zeros (the zero polynomial is ``()``). Matrices are integer numpy arrays with
entries in ``[0, p)``; batched routines take arrays of shape ``(B, d, d)``.
"""

from __future__ import annotations

import itertools
from typing import Iterator

import numpy as np

from .arith import factorize, lcm_all

Poly = tuple[int, ...]


def trim(a) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return trim(out)


def poly_sub(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return trim((x - y) % p for x, y in zip(a, b))


def poly_divmod(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        a = list(trim(a))
    return trim(q), trim(a)


def poly_mod(a: Poly, m: Poly, p: int) -> Poly:
    return poly_divmod(a, m, p)[1]


def poly_gcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, poly_mod(a, b, p)
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return tuple((c * inv) % p for c in a)


def poly_powmod(a: Poly, e: int, m: Poly, p: int) -> Poly:
    result: Poly = (1,)
    base = poly_mod(a, m, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), m, p)
        base = poly_mod(poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(f: Poly, p: int) -> bool:
    """Ben-Or style test: no irreducible factor of degree <= deg/2."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x: Poly = (0, 1)
    xp = x
    for _ in range(n // 2):
        xp = poly_powmod(xp, p, f, p)
        if len(poly_gcd(f, poly_sub(xp, x, p), p)) > 1:
            return False
    return True


def is_primitive(f: Poly, p: int) -> bool:
    """Irreducible and ``x`` generates the multiplicative group of F_p[x]/(f)."""
    if not is_irreducible(f, p):
        return False
    n = len(f) - 1
    order = p**n - 1
    for r in factorize(order) if order > 1 else {}:
        if poly_powmod((0, 1), order // r, f, p) == (1,):
            return False
    return True


def monic_polys(p: int, degree: int, *, nonzero_constant: bool = False) -> Iterator[Poly]:
    """All monic polynomials of the given degree in lexicographic coefficient order."""
    lows = range(1, p) if nonzero_constant else range(p)
    if degree == 0:
        yield (1,)
        return
    for const in lows:
        for mid in itertools.product(range(p), repeat=degree - 1):
            yield (const, *mid, 1)


def companion(f: Poly, p: int) -> np.ndarray:
    """Companion matrix of a monic ``f``, acting on column vectors."""
    d = len(f) - 1
    c = np.zeros((d, d), dtype=np.int64)
    if d > 1:
        c[np.arange(1, d), np.arange(d - 1)] = 1
    c[:, d - 1] = [(-a) % p for a in f[:d]]
    return c


def block_diag(blocks) -> np.ndarray:
    d = sum(b.shape[0] for b in blocks)
    out = np.zeros((d, d), dtype=np.int64)
    o = 0
    for b in blocks:
        k = b.shape[0]
        out[o : o + k, o : o + k] = b
        o += k
    return out


def rational_canonical_forms(p: int, d: int) -> list[tuple[Poly, ...]]:
    """Invariant-factor sequences ``f_1 | f_2 | ... | f_r`` of total degree ``d``
    with nonzero constant terms: one per conjugacy class of GL_d(p)."""
    by_degree = {k: list(monic_polys(p, k, nonzero_constant=True)) for k in range(1, d + 1)}
    out = []

    def extend(prefix, prev, remaining):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        lo = len(prev) - 1 if prev else 1
        for k in range(max(lo, 1), remaining + 1):
            for f in by_degree[k]:
                if prev and poly_mod(f, prev, p):
                    continue
                # later factors are multiples of f, so each needs degree >= deg f
                if remaining - k != 0 and remaining - k < k:
                    continue
                prefix.append(f)
                extend(prefix, f, remaining - k)
                prefix.pop()

    extend([], (), d)
    return out


def gl_class_representatives(p: int, d: int) -> list[np.ndarray]:
    return [block_diag([companion(f, p) for f in seq]) for seq in rational_canonical_forms(p, d)]


def gl_order(d: int, q: int) -> int:
    out = 1
    for i in range(d):
        out *= q**d - q**i
    return out


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return np.matmul(a, b) % p


def matpow_mod(a: np.ndarray, e, p: int) -> np.ndarray:
    """Batched power ``a**e`` mod p; ``e`` is a Python int shared by the batch."""
    d = a.shape[-1]
    result = np.broadcast_to(np.eye(d, dtype=np.int64), a.shape).copy()
    base = a % p
    e = int(e)
    while e:
        if e & 1:
            result = matmul_mod(result, base, p)
        base = matmul_mod(base, base, p)
        e >>= 1
    return result


def is_identity(a: np.ndarray) -> np.ndarray:
    d = a.shape[-1]
    return (a == np.eye(d, dtype=a.dtype)).all(axis=(-2, -1))


def rank_mod_p(mats: np.ndarray, p: int) -> np.ndarray:
    """Batched rank over F_p by Gaussian elimination."""
    m = np.array(mats, dtype=np.int64) % p
    if m.ndim == 2:
        return rank_mod_p(m[None], p)[0]
    b, rows, cols = m.shape
    rank = np.zeros(b, dtype=np.int64)
    inv = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
    ar = np.arange(b)
    for c in range(cols):
        # pivot: first row at or below the current rank with a nonzero entry in column c
        row_idx = np.arange(rows)[None, :]
        cand = (m[:, :, c] != 0) & (row_idx >= rank[:, None])
        has = cand.any(axis=1)
        piv = np.argmax(cand, axis=1)
        sel = ar[has]
        if not len(sel):
            continue
        r = rank[sel]
        pr = piv[sel]
        top = m[sel, r].copy()
        m[sel, r] = m[sel, pr]
        m[sel, pr] = top
        pivot_rows = (m[sel, r] * inv[m[sel, r, c]][:, None]) % p
        m[sel, r] = pivot_rows
        factors = m[sel, :, c].copy()
        factors[np.arange(len(sel)), r] = 0
        m[sel] = (m[sel] - factors[:, :, None] * pivot_rows[:, None, :]) % p
        rank[sel] += 1
    return rank


def random_invertible(rng: np.random.Generator, p: int, d: int, n: int) -> np.ndarray:
    """``n`` uniform samples from GL_d(p) by rejection on singular matrices."""
    out = []
    have = 0
    while have < n:
        batch = rng.integers(0, p, size=(max(2 * (n - have), 16), d, d), dtype=np.int64)
        ok = batch[rank_mod_p(batch, p) == d]
        out.append(ok)
        have += len(ok)
    return np.concatenate(out)[:n]


def matrix_orders(mats: np.ndarray, p: int) -> list[int]:
    """Exact orders of invertible d x d matrices over F_p.

    With ``M = lcm(p^i - 1, i <= d)`` and ``J = d(d-1)/2`` every order is
    ``p^a * m`` with ``m | M`` and ``a <= J`` (Lagrange on a Sylow p-subgroup).
    ``A^M`` has order ``p^a`` and ``A^(p^J)`` has order ``m``; the latter is
    resolved prime by prime with a product tree over the factors of ``M``.
    """
    mats = np.asarray(mats, dtype=np.int64) % p
    if mats.ndim == 2:
        return matrix_orders(mats[None], p)
    d = mats.shape[-1]
    M = lcm_all(p**i - 1 for i in range(1, d + 1))
    J = d * (d - 1) // 2
    orders = np.ones(len(mats), dtype=object)

    u = matpow_mod(mats, M, p)
    for _ in range(J + 1):
        done = is_identity(u)
        if done.all():
            break
        orders[~done] *= p
        u = matpow_mod(u, p, p)
    else:
        raise ArithmeticError("unipotent part exceeds the Sylow bound")

    semi = matpow_mod(mats, p**J, p)
    _prime_parts(semi, sorted(factorize(M).items()) if M > 1 else [], p, orders)
    return [int(v) for v in orders]


def _prime_parts(b: np.ndarray, primes: list[tuple[int, int]], p: int, orders: np.ndarray) -> None:
    if not primes:
        return
    if len(primes) == 1:
        (ell, e), = primes
        for _ in range(e + 1):
            done = is_identity(b)
            if done.all():
                return
            orders[~done] *= ell
            b = matpow_mod(b, ell, p)
        raise ArithmeticError(f"{ell}-part exceeds {ell}^{e}")
    half = len(primes) // 2
    left, right = primes[:half], primes[half:]
    cof_left = 1
    for ell, e in right:
        cof_left *= ell**e
    cof_right = 1
    for ell, e in left:
        cof_right *= ell**e
    _prime_parts(matpow_mod(b, cof_left, p), left, p, orders)
    _prime_parts(matpow_mod(b, cof_right, p), right, p, orders)


def matrix_order_naive(a: np.ndarray, p: int, cap: int | None = None) -> int:
    """Order by repeated multiplication, stopping after ``cap`` steps."""
    a = np.asarray(a, dtype=np.int64) % p
    d = a.shape[0]
    cap = cap or gl_order(d, p)
    cur = a.copy()
    for k in range(1, cap + 1):
        if is_identity(cur):
            return k
        cur = matmul_mod(cur, a, p)
    raise ArithmeticError("order exceeds cap")
