"""Finite fields F_q, q = p^f, as integer-coded lookup tables.

An element is the integer ``sum c_i p^i`` of its coefficient vector in
F_p[x]/(modulus). The default modulus is the lexicographically first primitive
polynomial of degree f, so ``x`` (code ``p``, or ``1`` when f = 1 it is a
primitive root) generates the unit group and log/antilog tables are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .arith import factorize, require_prime
from .errors import NotIrreducible, ParameterOutOfRange
from .fp import Poly, is_irreducible, is_primitive, monic_polys, poly_mod, poly_mul

MAX_FIELD = 1 << 16
ADD_TABLE_CAP = 1024


def default_modulus(p: int, f: int) -> Poly:
    """First primitive monic polynomial of degree ``f`` in lexicographic order."""
    for cand in monic_polys(p, f, nonzero_constant=True):
        if is_primitive(cand, p):
            return cand
    raise AssertionError("no primitive polynomial found")  # cannot happen


@dataclass(frozen=True, eq=False)
class FiniteField:
    p: int
    f: int
    modulus: Poly
    add_table: np.ndarray | None = field(repr=False)
    neg: np.ndarray = field(repr=False)
    exp: np.ndarray = field(repr=False)  # exp[i] = gen^i for i in [0, q-1)
    log: np.ndarray = field(repr=False)  # log[a] for a != 0; log[0] = -1
    inverse: np.ndarray = field(repr=False)  # inverse[0] = 0 by convention
    frob: np.ndarray = field(repr=False)  # a -> a^p

    @property
    def q(self) -> int:
        return self.p**self.f

    @property
    def generator(self) -> int:
        return int(self.exp[1]) if self.q > 2 else 1

    def add(self, a, b):
        if self.add_table is not None:
            return self.add_table[a, b]
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        w = 1
        for _ in range(self.f):
            out += ((a // w + b // w) % self.p) * w
            w *= self.p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg[b])

    def mul(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        la, lb = self.log[a], self.log[b]
        out = self.exp[(la + lb) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def div(self, a, b):
        return self.mul(a, self.inverse[b])

    def power(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k > 0 else 1
        return int(self.exp[(int(self.log[a]) * k) % (self.q - 1)])

    def frobenius(self, a, i: int = 1):
        """``a -> a^(p^i)``."""
        out = np.asarray(a)
        for _ in range(i % self.f):
            out = self.frob[out]
        return out

    @property
    def squares(self) -> np.ndarray:
        """Boolean mask of nonzero squares."""
        mask = np.zeros(self.q, dtype=bool)
        nz = np.arange(1, self.q)
        if self.p == 2:
            mask[nz] = True
        else:
            mask[nz] = self.log[nz] % 2 == 0
        return mask

    def elements(self) -> range:
        return range(self.q)


def _poly_of(code: int, p: int, f: int) -> Poly:
    digits = []
    for _ in range(f):
        digits.append(code % p)
        code //= p
    return tuple(digits)


def _code_of(poly: Poly, p: int) -> int:
    return sum(int(c) * p**i for i, c in enumerate(poly))


@lru_cache(maxsize=None)
def make_field(p: int, f: int = 1, modulus: Poly | None = None) -> FiniteField:
    require_prime(p)
    if f < 1 or p**f > MAX_FIELD:
        raise ParameterOutOfRange(f"field size {p}^{f} outside supported range")
    q = p**f
    if modulus is None:
        modulus = default_modulus(p, f)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != f + 1 or not is_irreducible(modulus, p):
            raise NotIrreducible(f"{modulus} is not an irreducible polynomial of degree {f} over F_{p}")
        if modulus[-1] != 1:
            inv = pow(modulus[-1], -1, p)
            modulus = tuple((c * inv) % p for c in modulus)

    digits = (np.arange(q)[:, None] // p ** np.arange(f)[None, :]) % p
    weights = p ** np.arange(f)
    add_table = None
    if q <= ADD_TABLE_CAP:
        add_table = (((digits[:, None, :] + digits[None, :, :]) % p) @ weights).astype(np.int64)
    neg = (((-digits) % p) @ weights).astype(np.int64)

    # a generator of the unit group: x when the modulus is primitive, else search
    gen_poly: Poly = (0, 1) if f > 1 else None
    if f == 1:
        units = q - 1
        for g in range(1, q):
            if all(pow(g, units // r, q) != 1 for r in (factorize(units) if units > 1 else {})):
                gen_poly = (g,)
                break
    exp = np.zeros(max(q - 1, 1), dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    cur: Poly = (1,)
    for i in range(q - 1):
        code = _code_of(cur, p)
        exp[i] = code
        log[code] = i
        cur = poly_mod(poly_mul(cur, gen_poly, p), modulus, p) if f > 1 else ((cur[0] * gen_poly[0]) % p,)
    if (log[1:] < 0).any():
        # supplied modulus is irreducible but x is not primitive: rebuild logs from a true generator
        exp, log = _logs_by_search(q, p, f, modulus)

    inverse = np.zeros(q, dtype=np.int64)
    inverse[1:] = exp[(-log[1:]) % (q - 1)]
    frob = np.zeros(q, dtype=np.int64)
    frob[1:] = exp[(log[1:] * p) % (q - 1)]
    for arr in (add_table, neg, exp, log, inverse, frob):
        if arr is not None:
            arr.setflags(write=False)
    return FiniteField(p, f, tuple(modulus), add_table, neg, exp, log, inverse, frob)


def _logs_by_search(q: int, p: int, f: int, modulus: Poly):
    units = q - 1
    primes = list(factorize(units)) if units > 1 else []

    def mulcode(a, b):
        return _code_of(poly_mod(poly_mul(_poly_of(a, p, f), _poly_of(b, p, f), p), modulus, p), p)

    def powcode(a, e):
        r, base = 1, a
        while e:
            if e & 1:
                r = mulcode(r, base)
            base = mulcode(base, base)
            e >>= 1
        return r

    for g in range(2, q):
        if all(powcode(g, units // r) != 1 for r in primes):
            break
    exp = np.zeros(units, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    cur = 1
    for i in range(units):
        exp[i] = cur
        log[cur] = i
        cur = mulcode(cur, g)
    return exp, log


def check_field_axioms(F: FiniteField, *, samples: int | None = None, seed: int = 0) -> bool:
    """Ring and field axioms on all triples (q <= 64) or on sampled triples."""
    q = F.q
    if samples is None and q <= 64:
        a, b, c = np.meshgrid(np.arange(q), np.arange(q), np.arange(q), indexing="ij")
        a, b, c = a.ravel(), b.ravel(), c.ravel()
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, q, size=(3, samples or 10_000))
    ok = np.array_equal(F.add(a, b), F.add(b, a))
    ok &= np.array_equal(F.mul(a, b), F.mul(b, a))
    ok &= np.array_equal(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)))
    ok &= np.array_equal(F.add(F.add(a, b), c), F.add(a, F.add(b, c)))
    ok &= np.array_equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))
    nz = np.arange(1, q)
    ok &= bool((F.mul(nz, F.inverse[nz]) == 1).all())
    ok &= bool((F.add(np.arange(q), F.neg) == 0).all())
    # Frobenius is additive and multiplicative, and has exact order f
    ok &= np.array_equal(F.frob[F.add(a, b)], F.add(F.frob[a], F.frob[b]))
    ok &= np.array_equal(F.frob[F.mul(a, b)], F.mul(F.frob[a], F.frob[b]))
    return bool(ok) and frobenius_order(F) == F.f


def frobenius_order(F: FiniteField) -> int:
    ident = np.arange(F.q)
    cur = F.frob.copy()
    k = 1
    while not np.array_equal(cur, ident):
        cur = F.frob[cur]
        k += 1
    return k
