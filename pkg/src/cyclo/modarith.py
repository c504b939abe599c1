"""Modular arithmetic, primality, primitive roots and the discrete log
(Z/NZ)^x -> Z/p^nu Z that every other module is built on."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import CongruenceFailure, NotAUnit, NotPrime, RangeError

# Largest modulus whose residue products still fit in int64.
VECTOR_LIMIT = 3_037_000_499


def pow_mod(x: int, e: int, m: int) -> int:
    """x^e mod m.  The builtin three-argument pow is square-and-multiply."""
    if m < 2:
        raise RangeError(f"modulus must be >= 2, got {m}")
    if e < 0:
        raise RangeError("negative exponent")
    return pow(x, e, m)


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# Bases 2..41 are a proven deterministic witness set below this bound.
_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_EXTRA_ROUNDS = 24


def _mr_witness(a: int, d: int, s: int, n: int) -> bool:
    """True if a proves n composite."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> bool:
    """Miller-Rabin.

    Exact for n < 3.3e24 (so for every 64-bit input).  Above that, 24 extra
    rounds with bases drawn from a generator seeded by n are added, so the
    answer is reproducible and the error probability is at most 4**-24.
    """
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if any(_mr_witness(a, d, s, n) for a in _SMALL_PRIMES):
        return False
    if n < _DETERMINISTIC_BOUND:
        return True
    rng = random.Random(n)
    return not any(_mr_witness(rng.randrange(2, n - 1), d, s, n)
                   for _ in range(_EXTRA_ROUNDS))


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of the odd composite n."""
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
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


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation {prime: exponent} by trial division then Pollard rho."""
    out: dict[int, int] = {}
    for q in range(2, 1000):
        if q * q > n:
            break
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        f = _pollard_brent(m)
        stack.extend((f, m // f))
    return dict(sorted(out.items()))


def valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_primitive_root(g: int, N: int, prime_factors) -> bool:
    if g % N == 0:
        return False
    return all(pow(g, (N - 1) // q, N) != 1 for q in prime_factors)


def primitive_roots(N: int, prime_factors=None):
    """Primitive roots of the prime N in increasing order."""
    if prime_factors is None:
        prime_factors = factorize(N - 1)
    for g in range(2, N):
        if is_primitive_root(g, N, prime_factors):
            yield g
    if N == 2:
        yield 1


@dataclass(frozen=True)
class ModCtx:
    """The pair (p, N) together with the constants fixed from it.

    zeta = g^((N-1)/p) is the image of zeta_p; every reduction map in the
    package sends zeta_p to this element.
    """

    p: int
    N: int
    nu: int
    g: int
    h: int
    zeta: int

    @property
    def q(self) -> int:
        """p^nu, the modulus of log."""
        return self.p ** self.nu

    @property
    def half(self) -> int:
        return (self.N - 1) // 2


def make_ctx(p: int, N: int, g: int | None = None) -> ModCtx:
    """Build the context for (p, N).

    g defaults to the smallest primitive root of N; an explicit g must be a
    primitive root and changes log by a unit scalar.
    """
    if p < 5 or N < 5:
        raise RangeError(f"p and N must be >= 5 (got p={p}, N={N})")
    if not is_prime(p):
        raise NotPrime(p)
    if not is_prime(N):
        raise NotPrime(N)
    if N % p != 1:
        raise CongruenceFailure(p, N)
    facs = factorize(N - 1)
    if g is None:
        g = next(primitive_roots(N, facs))
    elif not is_primitive_root(g, N, facs):
        raise RangeError(f"{g} is not a primitive root mod {N}")
    nu = facs[p]
    h = pow(g, (N - 1) // p ** nu, N)
    zeta = pow(g, (N - 1) // p, N)
    return ModCtx(p=p, N=N, nu=nu, g=g, h=h, zeta=zeta)


def next_primitive_root(ctx: ModCtx) -> int:
    """The smallest primitive root of N greater than ctx.g."""
    for r in primitive_roots(ctx.N):
        if r > ctx.g:
            return r
    raise RangeError(f"no primitive root of {ctx.N} above {ctx.g}")


def _bsgs(base: int, target: int, order: int, N: int) -> int:
    """x in [0, order) with base^x == target (mod N)."""
    m = math.isqrt(order - 1) + 1
    baby = {}
    cur = 1
    for j in range(m):
        baby.setdefault(cur, j)
        cur = cur * base % N
    giant = pow(base, -m, N)
    cur = target
    for i in range(m + 1):
        j = baby.get(cur)
        if j is not None:
            x = i * m + j
            if x < order:
                return x
        cur = cur * giant % N
    raise NotAUnit(f"{target} is not a power of {base} mod {N}")


class DLog:
    """The surjection log : (Z/NZ)^x -> Z/p^nu Z with log(g) = 1.

    Scalar values come from Pohlig-Hellman on the p^nu-torsion quotient with
    baby-step/giant-step per base-p digit.  `table()` is a vectorised
    alternative returning log(k) for every k in [1, N-1] at once.
    """

    def __init__(self, ctx: ModCtx):
        self.ctx = ctx
        p, nu, N = ctx.p, ctx.nu, ctx.N
        self._cofactor = (N - 1) // ctx.q
        self._gamma = pow(ctx.h, p ** (nu - 1), N)  # order exactly p
        self._h_inv = pow(ctx.h, -1, N)

    def __call__(self, x: int) -> int:
        return self.log(x)

    def log(self, x: int) -> int:
        ctx = self.ctx
        N, p, nu = ctx.N, ctx.p, ctx.nu
        x %= N
        if x == 0:
            raise NotAUnit(f"{N} divides the argument")
        y = pow(x, self._cofactor, N)
        acc = 0
        for j in range(nu):
            # strip the digits already found, then project to order p
            t = pow(y * pow(self._h_inv, acc, N) % N, p ** (nu - 1 - j), N)
            acc += _bsgs(self._gamma, t, p, N) * p ** j
        return acc

    @cached_property
    def _table(self) -> np.ndarray:
        ctx = self.ctx
        N = ctx.N
        if N > VECTOR_LIMIT:
            out = np.zeros(N, dtype=np.int64)
            for k in range(1, N):
                out[k] = self.log(k)
            return out
        y = np.ones(N, dtype=np.int64)
        base = np.arange(N, dtype=np.int64)
        e = self._cofactor
        while e:
            if e & 1:
                y = y * base % N
            e >>= 1
            if e:
                base = base * base % N
        powers = np.empty(ctx.q, dtype=np.int64)
        cur = 1
        for j in range(ctx.q):
            powers[j] = cur
            cur = cur * ctx.h % N
        order = np.argsort(powers)
        idx = np.searchsorted(powers[order], y[1:])
        out = np.zeros(N, dtype=np.int64)
        out[1:] = order[idx]
        out.setflags(write=False)
        return out

    def table(self) -> np.ndarray:
        """Read-only int64 array whose entry k is log(k); entry 0 is unused."""
        return self._table


def discrete_log(d: DLog, x: int) -> int:
    return d.log(x)
