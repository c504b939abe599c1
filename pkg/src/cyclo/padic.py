"""Truncated p-adic integers: Teichmuller lifts, powers of omega, Bernoulli
numbers mod p and the generalized Bernoulli numbers B_{1,chi^-1}."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import ExcludedCharacter, InternalError, NotAUnit, RangeError


@dataclass(frozen=True)
class PadicResidue:
    """value mod p^k."""

    value: int
    p: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p ** self.k)

    @property
    def modulus(self) -> int:
        return self.p ** self.k

    def reduce(self, k: int) -> "PadicResidue":
        if k > self.k:
            raise RangeError("cannot raise precision by reduction")
        return PadicResidue(self.value, self.p, k)

    def __int__(self):
        return self.value

    def __str__(self):
        return f"{self.value} mod {self.modulus}"


@dataclass(frozen=True)
class CharOmegaPower:
    """The character chi = omega^i of (Z/pZ)^x."""

    i: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "i", self.i % (self.p - 1))

    @property
    def parity(self) -> int:
        """chi(-1)."""
        return -1 if self.i % 2 else 1

    @property
    def is_odd(self) -> bool:
        return self.parity == -1

    def inverse(self) -> "CharOmegaPower":
        return CharOmegaPower(-self.i, self.p)

    def __call__(self, a: int, k: int) -> int:
        """chi(a) mod p^k, with chi(a) = 0 when p | a."""
        a %= self.p
        if a == 0:
            return 0
        return pow(teichmuller_int(a, self.p, k), self.i, self.p ** k)

    def values(self, k: int) -> list[int]:
        """[chi(0), chi(1), ..., chi(p-1)] mod p^k."""
        return [self(a, k) for a in range(self.p)]


def omega_power(i: int, p: int) -> CharOmegaPower:
    return CharOmegaPower(i, p)


@lru_cache(maxsize=4096)
def teichmuller_int(a: int, p: int, k: int) -> int:
    a %= p
    if a == 0:
        raise NotAUnit(f"{p} divides the argument")
    m = p ** k
    return pow(a, p ** (k - 1), m)


def teichmuller(a: int, p: int, k: int) -> PadicResidue:
    """omega(a) mod p^k, computed as a^(p^(k-1))."""
    return PadicResidue(teichmuller_int(a, p, k), p, k)


@lru_cache(maxsize=None)
def bernoulli_exact(n: int) -> Fraction:
    """B_n with the convention B_1 = -1/2."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return B[n]


def bernoulli_mod_p(n: int, p: int) -> int:
    """B_n mod p for even 2 <= n <= p-3 (p-integral by von Staudt-Clausen)."""
    if n % 2 or n < 2 or n > p - 3:
        raise RangeError(f"need even n in [2, {p - 3}], got {n}")
    b = bernoulli_exact(n)
    return b.numerator * pow(b.denominator, -1, p) % p


def is_regular(p: int) -> bool:
    return all(bernoulli_mod_p(n, p) != 0 for n in range(2, p - 2, 2))


def b1_chi_inverse(chi: CharOmegaPower, nu: int) -> PadicResidue:
    """B_{1,chi^-1} = (1/p) * sum_{a<p} a * chi^-1(a), returned mod p^nu.

    The sum is taken mod p^(nu+1) and must be divisible by p.
    """
    p = chi.p
    if chi.i in (0, 1):
        raise ExcludedCharacter(f"B_1 undefined for omega^{chi.i}")
    inv = chi.inverse()
    m = p ** (nu + 1)
    total = sum(a * inv(a, nu + 1) for a in range(1, p)) % m
    if total % p:
        raise InternalError("generalized Bernoulli sum is not divisible by p")
    return PadicResidue(total // p, p, nu)
