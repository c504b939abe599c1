"""Order-p characters of F_N valued in Z[zeta_p], Jacobi sums, the Gauss sum
p-th power beta, the logarithm Lambda on Q_N^x (x) Z_p, and the p-th power
residue symbol."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .cyclotomic import CycInt, EmbeddingND, reduce_mod_N, reduce_mod_N2
from .errors import DegenerateCharacters, NotAUnit, RangeError, ValuationMismatch
from .modarith import DLog, ModCtx, _bsgs
from .padic import PadicResidue


@dataclass(frozen=True)
class OrderPChar:
    """chi'(x) = zeta_p^k(x), where zeta^k(x) = x^(-(N-1)/p) mod N.

    Under zeta_p -> zeta this reduces to x^(-(N-1)/p), i.e. the inverse
    (N-1)/p-th power of the Teichmuller character of F_N.  Since
    x^((N-1)/p) = zeta^(log x), k(x) = -log(x) mod p.
    """

    ctx: ModCtx
    d: DLog

    @cached_property
    def exponents(self) -> np.ndarray:
        """k(x) for x in [0, N); entry 0 unused."""
        k = (-self.d.table()) % self.ctx.p
        k[0] = 0
        return k

    def exponent(self, x: int) -> int:
        x %= self.ctx.N
        if x == 0:
            raise NotAUnit("chi' is undefined at 0")
        return int(self.exponents[x])

    def value(self, x: int, power: int = 1) -> CycInt:
        return CycInt.zeta_power(power * self.exponent(x), self.ctx.p)


def jacobi_sum(chi: OrderPChar, i: int, j: int) -> CycInt:
    """J(chi'^i, chi'^j) = sum_{a != 0, 1} chi'^i(a) chi'^j(1 - a)."""
    p, N = chi.ctx.p, chi.ctx.N
    if i % p == 0 or j % p == 0 or (i + j) % p == 0:
        raise DegenerateCharacters(f"J(chi^{i}, chi^{j}) needs i, j, i+j nonzero mod {p}")
    k = chi.exponents
    a = np.arange(2, N, dtype=np.int64)
    e = (i * k[a] + j * k[(1 - a) % N]) % p
    counts = np.bincount(e, minlength=p)
    return CycInt.from_cyclic([int(c) for c in counts], p)


def jacobi_product(chi: OrderPChar) -> CycInt:
    """prod_{j=1}^{p-2} J(chi', chi'^j)."""
    p = chi.ctx.p
    out = CycInt.integer(1, p)
    for j in range(1, p - 1):
        out = out * jacobi_sum(chi, 1, j)
    return out


def gauss_p_power(chi: OrderPChar) -> CycInt:
    """beta = G^p = -N * prod_j J(chi', chi'^j), with G = -sum chi'(a) zeta_N^a.

    g(chi')^p = chi'(-1) N prod J and chi'(-1) = 1 since chi' has odd order.
    """
    return jacobi_product(chi) * (-chi.ctx.N)


def lambda_log(e: EmbeddingND, d: DLog, x: CycInt, valuation: int = 0) -> PadicResidue:
    """Lambda(x): log of the unit part of x in Q_N, for N-adic valuation 0 or 1."""
    ctx = e.ctx
    N = ctx.N
    if valuation == 0:
        r = reduce_mod_N(e, x)
        if r == 0:
            raise ValuationMismatch("element reduces to 0 mod N; valuation is not 0")
        return PadicResidue(d.log(r), ctx.p, ctx.nu)
    if valuation == 1:
        r2 = reduce_mod_N2(e, x)
        if r2 % N or (r2 // N) % N == 0:
            raise ValuationMismatch("element does not have valuation exactly 1")
        return PadicResidue(d.log(r2 // N), ctx.p, ctx.nu)
    raise RangeError("only valuations 0 and 1 are supported")


def beta_over_N(chi: OrderPChar) -> CycInt:
    beta = gauss_p_power(chi)
    N = chi.ctx.N
    if any(c % N for c in beta.coeffs):
        raise ValuationMismatch("beta is not divisible by N coefficientwise")
    return CycInt(tuple(c // N for c in beta.coeffs), beta.p)


def kummer_lambda(e: EmbeddingND, d: DLog) -> PadicResidue:
    """Lambda(beta / N) mod p^nu.

    beta/N is formed by exact coefficient division; if it still reduces to 0
    at the prime, the unit part is read off modulo N^2 instead.
    """
    quotient = beta_over_N(OrderPChar(e.ctx, d))
    if reduce_mod_N(e, quotient) != 0:
        return lambda_log(e, d, quotient, 0)
    return lambda_log(e, d, quotient, 1)


def kummer_check(e: EmbeddingND, d: DLog) -> bool:
    """Whether Lambda(beta/N) = 0 mod p, i.e. beta/N is a p-th power at the prime."""
    return kummer_lambda(e, d).value % e.ctx.p == 0


class PowerResidue:
    """The k in Z/pZ with zeta^k = x^((N-1)/p) mod N.

    Solved by baby-step/giant-step in the order-p subgroup generated by
    zeta, without going through DLog.
    """

    def __init__(self, ctx: ModCtx):
        self.ctx = ctx

    def __call__(self, x: int) -> int:
        ctx = self.ctx
        x %= ctx.N
        if x == 0:
            raise NotAUnit("power residue symbol needs a unit")
        y = pow(x, (ctx.N - 1) // ctx.p, ctx.N)
        return _bsgs(ctx.zeta, y, ctx.p, ctx.N)


def power_residue(e: EmbeddingND, x: int) -> int:
    return PowerResidue(e.ctx)(x)
