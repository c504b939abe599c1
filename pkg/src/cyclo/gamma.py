"""Morita's N-adic Gamma function, modulo N."""

from __future__ import annotations

from .errors import RangeError
from .modarith import ModCtx


class GammaCache:
    """Gamma_N(m) mod N for integers 0 <= m <= N.

    With ``table=True`` the whole prefix table is built once (O(N)); without
    it each value costs O(m) and nothing is stored.
    """

    def __init__(self, ctx: ModCtx, table: bool = True):
        self.ctx = ctx
        self.prefix = None
        if table:
            N = ctx.N
            pref = [1] * (N + 1)
            prod = 1  # product of 1..m-1 prime to N
            for m in range(1, N + 1):
                pref[m] = prod if m % 2 == 0 else (-prod) % N
                if m % N:
                    prod = prod * m % N
            self.prefix = pref

    def __call__(self, m: int) -> int:
        return gamma_int(self.ctx, m, self)


def gamma_int(ctx: ModCtx, m: int, cache: GammaCache | None = None) -> int:
    """Gamma_N(m) = (-1)^m * prod_{1 <= i < m, N !| i} i  (mod N)."""
    N = ctx.N
    if not 0 <= m <= N:
        raise RangeError(f"m must lie in [0, {N}], got {m}")
    if m == 0:
        return 1
    if cache is not None and cache.prefix is not None:
        return cache.prefix[m]
    prod = 1
    for i in range(1, m):
        if i % N:
            prod = prod * i % N
    return (-prod) % N if m % 2 else prod


def gamma_residue(ctx: ModCtx, x: int, cache: GammaCache | None = None) -> int:
    """Gamma_N(x) mod N for any N-adic integer x, which depends on x mod N only."""
    return gamma_int(ctx, x % ctx.N, cache)


def gamma_rational(ctx: ModCtx, a: int, cache: GammaCache | None = None) -> int:
    """Gamma_N(a/p) mod N."""
    p, N = ctx.p, ctx.N
    if a % p == 0:
        raise RangeError(f"a must be prime to p, got {a}")
    return gamma_residue(ctx, a * pow(p, -1, N), cache)


def gamma_fractions(ctx: ModCtx) -> list[int]:
    """[Gamma_N(a/p) mod N for a = 1..p-1] from a single running product."""
    p, N = ctx.p, ctx.N
    pinv = pow(p, -1, N)
    args = {a: a * pinv % N for a in range(1, p)}
    want = sorted(set(args.values()))
    vals = {0: 1}
    prod, i = 1, 1
    for m in want:
        if m == 0:
            continue
        while i < m:
            prod = prod * i % N
            i += 1
        vals[m] = (-prod) % N if m % 2 else prod
    return [vals[args[a]] for a in range(1, p)]
