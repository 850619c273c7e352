"""Exact integer helpers: valuations, prime powers, integer logarithms.

Everything here works on Python ints so that no comparison ever passes
through floating point.
"""

from __future__ import annotations

import math
from functools import reduce
from typing import Iterable, Iterator

from sympy import factorint, isprime

from .errors import NotPrime


def is_prime(n: int) -> bool:
    return n >= 2 and bool(isprime(n))


def require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


def nu_p(n: int, p: int) -> int:
    """Exponent of the prime ``p`` in ``n``."""
    require_prime(p)
    if n < 1:
        raise ValueError("nu_p expects a positive integer")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    return {int(p): int(e) for p, e in sorted(factorint(n).items())}


def prime_divisors(n: int) -> list[int]:
    return list(factorize(n))


def lcm_all(values: Iterable[int]) -> int:
    return reduce(math.lcm, (int(v) for v in values), 1)


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, f)`` with ``q == p**f`` or None."""
    if q < 2:
        return None
    fac = factorint(q)
    if len(fac) != 1:
        return None
    (p, f), = fac.items()
    return int(p), int(f)


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i in range(n + 1) if sieve[i]]


def prime_powers_up_to(n: int, f_min: int = 1) -> Iterator[tuple[int, int, int]]:
    """Yield ``(q, p, f)`` for every prime power ``q = p**f <= n`` with ``f >= f_min``,
    sorted by ``q``."""
    out = []
    for p in primes_up_to(n):
        q, f = p, 1
        while q <= n:
            if f >= f_min:
                out.append((q, p, f))
            q *= p
            f += 1
    yield from sorted(out)


def ceil_log(x: int, base: int) -> int:
    """Smallest ``k >= 0`` with ``base**k >= x``, by repeated multiplication."""
    if x < 1 or base < 2:
        raise ValueError("ceil_log expects x >= 1 and base >= 2")
    k, acc = 0, 1
    while acc < x:
        acc *= base
        k += 1
    return k


def less_than_power(a: int, b: int, num: int, den: int) -> bool:
    """Decide ``a < b**(num/den)`` exactly, for positive integers."""
    return a**den < b**num


def leq_power(a: int, b: int, num: int, den: int) -> bool:
    """Decide ``a <= b**(num/den)`` exactly."""
    return a**den <= b**num


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result
