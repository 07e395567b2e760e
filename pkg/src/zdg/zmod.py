"""Factorization, zero divisors and the gcd-class partition of Z_n."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

MAX_MODULUS = 2**63 - 1

_TRIAL_BOUND = 10_000
# Deterministic Miller-Rabin witnesses for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class InvalidModulusError(ValueError):
    pass


class NotPrimeError(ValueError):
    pass


class EmptyGraphError(ValueError):
    """Raised when Z_n has no nonzero zero divisors (n prime)."""


@dataclass(frozen=True)
class PCubed:
    p: int


@dataclass(frozen=True)
class PSquaredQ:
    p: int
    q: int


@dataclass(frozen=True)
class General:
    pass


Form = PCubed | PSquaredQ | General


@dataclass(frozen=True)
class FactoredModulus:
    n: int
    factors: tuple[tuple[int, int], ...]
    form: Form

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def totient(self) -> int:
        phi = self.n
        for p, _ in self.factors:
            phi = phi // p * (p - 1)
        return phi

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(*ps: int) -> None:
    for p in ps:
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")


def _pollard_brent(n: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the odd composite n."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int], rng: random.Random) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    f = _pollard_brent(n, rng)
    _split(f, out, rng)
    _split(n // f, out, rng)


def classify(factors: tuple[tuple[int, int], ...]) -> Form:
    if len(factors) == 1 and factors[0][1] == 3:
        return PCubed(factors[0][0])
    if len(factors) == 2 and sorted(e for _, e in factors) == [1, 2]:
        p = next(f for f, e in factors if e == 2)
        q = next(f for f, e in factors if e == 1)
        return PSquaredQ(p, q)
    return General()


def factorize(n: int) -> FactoredModulus:
    """Factor ``n`` by trial division, falling back to Pollard-Brent.

    Primes below 10^4 are stripped by trial division. Whatever cofactor
    remains is tested with deterministic Miller-Rabin and, if composite,
    split with Brent's variant of Pollard rho (seeded, so reproducible).
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise InvalidModulusError(f"modulus must be an integer, got {n!r}")
    n = int(n)
    if n < 2 or n > MAX_MODULUS:
        raise InvalidModulusError(f"modulus must satisfy 2 <= n <= 2^63-1, got {n}")
    found: dict[int, int] = {}
    m = n
    p = 2
    while p <= _TRIAL_BOUND and p * p <= m:
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        _split(m, found, random.Random(n))
    factors = tuple(sorted(found.items()))
    return FactoredModulus(n, factors, classify(factors))


def zero_divisors(m: FactoredModulus) -> list[int]:
    """All x with 0 < x < n and gcd(x, n) > 1, ascending."""
    xs = np.arange(1, m.n, dtype=np.int64)
    return xs[np.gcd(xs, m.n) > 1].tolist()


@dataclass(frozen=True)
class VertexClass:
    divisor: int
    size: int
    looped: bool
    n: int = field(repr=False)

    @cached_property
    def members(self) -> list[int]:
        # x = d*u with gcd(u, n/d) = 1 and 0 < u < n/d
        k = self.n // self.divisor
        us = np.arange(1, k, dtype=np.int64)
        return (us[np.gcd(us, k) == 1] * self.divisor).tolist()


def canonical_divisor_order(m: FactoredModulus) -> list[int]:
    match m.form:
        case PCubed(p):
            return [p, p * p]
        case PSquaredQ(p, q):
            return [p, q, p * q, p * p]
        case _:
            return [d for d in m.divisors() if 1 < d < m.n]


@dataclass(frozen=True)
class ClassStructure:
    modulus: FactoredModulus
    classes: tuple[VertexClass, ...]

    @property
    def n(self) -> int:
        return self.modulus.n

    @property
    def total_vertices(self) -> int:
        return sum(c.size for c in self.classes)

    @property
    def sizes(self) -> list[int]:
        return [c.size for c in self.classes]

    @property
    def divisors(self) -> list[int]:
        return [c.divisor for c in self.classes]

    def labels(self) -> list[int]:
        """Vertices in canonical order: class by class, ascending inside."""
        return [x for c in self.classes for x in c.members]

    def offsets(self) -> list[int]:
        return [0, *np.cumsum(self.sizes).tolist()]


def class_partition(m: FactoredModulus) -> ClassStructure:
    """Group the nonzero zero divisors of Z_n by gcd(x, n).

    Class sizes come from the totient, |{x : gcd(x, n) = d}| = phi(n/d),
    so the partition is available without enumerating the ring; members
    are materialized lazily.
    """
    if len(m.factors) == 1 and m.factors[0][1] == 1:
        raise EmptyGraphError(f"Z_{m.n} has no nonzero zero divisors")
    classes = []
    for d in canonical_divisor_order(m):
        size = factorize(m.n // d).totient()
        classes.append(VertexClass(d, size, (d * d) % m.n == 0, m.n))
    return ClassStructure(m, tuple(classes))
