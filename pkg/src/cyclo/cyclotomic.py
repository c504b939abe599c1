"""Exact arithmetic in Z[zeta_p], its reductions modulo the prime above N
fixed by zeta_p -> zeta, and a bounded norm-equation search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb

import numpy as np

from .errors import InternalError, NotFound, RangeError
from .modarith import ModCtx


@dataclass(frozen=True)
class CycInt:
    """sum_j coeffs[j] * zeta_p^j in the basis 1, zeta_p, ..., zeta_p^(p-2)."""

    coeffs: tuple
    p: int

    def __post_init__(self):
        if len(self.coeffs) != self.p - 1:
            raise RangeError(f"expected {self.p - 1} coefficients")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def from_cyclic(cls, cyc, p: int) -> "CycInt":
        """Canonicalise a length-p vector indexed by exponents mod p."""
        top = cyc[p - 1]
        return cls(tuple(cyc[j] - top for j in range(p - 1)), p)

    @classmethod
    def integer(cls, m: int, p: int) -> "CycInt":
        return cls((m,) + (0,) * (p - 2), p)

    @classmethod
    def zeta_power(cls, k: int, p: int) -> "CycInt":
        cyc = [0] * p
        cyc[k % p] = 1
        return cls.from_cyclic(cyc, p)

    def cyclic(self) -> list:
        return list(self.coeffs) + [0]

    def __add__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(other, self.p)
        return CycInt(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.p)

    __radd__ = __add__

    def __neg__(self):
        return CycInt(tuple(-c for c in self.coeffs), self.p)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(tuple(c * other for c in self.coeffs), self.p)
        return cyc_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out, base = CycInt.integer(1, self.p), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if j == 0 else f"{c}*z^{j}")
        return " + ".join(terms) or "0"


def cyc_mul(x: CycInt, y: CycInt) -> CycInt:
    p = x.p
    if y.p != p:
        raise RangeError("mismatched primes")
    cyc = [0] * p
    for i, a in enumerate(x.coeffs):
        if a:
            for j, b in enumerate(y.coeffs):
                if b:
                    cyc[(i + j) % p] += a * b
    return CycInt.from_cyclic(cyc, p)


def galois(a: int, x: CycInt) -> CycInt:
    """sigma_a : zeta_p -> zeta_p^a."""
    p = x.p
    if a % p == 0:
        raise RangeError("sigma_a needs a prime to p")
    cyc = [0] * p
    for j, c in enumerate(x.coeffs):
        cyc[a * j % p] += c
    return CycInt.from_cyclic(cyc, p)


def conj(x: CycInt) -> CycInt:
    return galois(-1, x)


def norm(x: CycInt) -> int:
    out = x
    for a in range(2, x.p):
        out = out * galois(a, x)
    if not out.is_rational():
        raise InternalError(f"norm of {x} is not rational")
    return out.coeffs[0]


def _evaluate(x: CycInt, z: int, m: int) -> int:
    acc, zp = 0, 1
    for c in x.coeffs:
        acc += c * zp
        zp = zp * z % m
    return acc % m


@dataclass(frozen=True)
class EmbeddingND:
    """Reductions of Z[zeta_p] modulo the prime (N, zeta_p - zeta) and its square."""

    ctx: ModCtx

    @cached_property
    def zeta2(self) -> int:
        N = self.ctx.N
        return pow(self.ctx.zeta, N, N * N)


def make_embedding(ctx: ModCtx) -> EmbeddingND:
    return EmbeddingND(ctx)


def reduce_mod_N(e: EmbeddingND, x: CycInt) -> int:
    return _evaluate(x, e.ctx.zeta, e.ctx.N)


def reduce_mod_N2(e: EmbeddingND, x: CycInt) -> int:
    return _evaluate(x, e.zeta2, e.ctx.N ** 2)


_BLOCK = 200_000


def _search_key(c):
    # smallest L1 norm first, then larger leading coefficients
    return (sum(abs(v) for v in c), tuple(-v for v in c))


def _shell_hits(ctx: ModCtx, s: int) -> list[tuple]:
    """Vectors with sup-norm exactly s, vanishing at zeta mod N, of norm N."""
    p, N = ctx.p, ctx.N
    n = p - 1
    zpow = np.array([pow(ctx.zeta, j, N) for j in range(1, n)], dtype=np.int64)
    roots = np.exp(2j * np.pi * np.arange(1, (p - 1) // 2 + 1) / p)
    # evaluation matrix: row j = powers of the j-th embedding
    V = np.power.outer(roots, np.arange(n)).T  # shape (n, (p-1)/2)
    rng = np.arange(-s, s + 1, dtype=np.int64)
    width = 2 * s + 1
    # enumerate c_1..c_(n-1); the leading `fixed` of them are looped in
    # Python so each numpy block stays below _BLOCK rows
    fixed = 0
    while width ** (n - 1 - fixed) > _BLOCK and fixed < n - 1:
        fixed += 1
    free = n - 1 - fixed
    if free:
        grid = np.array(np.meshgrid(*[rng] * free, indexing="ij")).reshape(free, -1).T
    else:
        grid = np.zeros((1, 0), dtype=np.int64)
    hits = []
    for lead in itertools.product(range(-s, s + 1), repeat=fixed):
        tail = np.column_stack([np.tile(np.array(lead, dtype=np.int64), (len(grid), 1)), grid])
        r = (tail % N) @ zpow % N
        base = (-r + s) % N - s
        for t in range(0, 2 * s // N + 1):
            c0 = base + t * N
            ok = c0 <= s
            if not ok.any():
                continue
            C = np.column_stack([c0[ok], tail[ok]])
            C = C[np.abs(C).max(axis=1) == s]
            if not len(C):
                continue
            vals = C.astype(np.float64) @ V
            nrm = np.prod(np.abs(vals) ** 2, axis=1)
            for row in C[np.abs(nrm - N) < 0.5]:
                hits.append(tuple(int(v) for v in row))
    return hits


def _count_l1_ball(d: int, L: int) -> int:
    return sum(comb(d, k) * comb(L, k) * 2 ** k for k in range(min(d, L) + 1))


def _l1_layer_hits(ctx: ModCtx, L: int, bound: int) -> list[tuple]:
    """Vectors of L1 norm exactly L, sup-norm <= bound, vanishing at zeta."""
    p, N = ctx.p, ctx.N
    n = p - 1
    zpow = [pow(ctx.zeta, j, N) for j in range(n)]
    hits = []
    tail = [0] * n

    def rec(j, budget, r):
        if j == 0:
            for c0 in {budget, -budget}:
                if abs(c0) <= bound and (c0 + r) % N == 0:
                    tail[0] = c0
                    hits.append(tuple(tail))
            return
        for c in range(-min(budget, bound), min(budget, bound) + 1):
            tail[j] = c
            rec(j - 1, budget - abs(c), (r + c * zpow[j]) % N)
        tail[j] = 0

    rec(n - 1, L, 0)
    return hits


def solve_norm_equation(ctx: ModCtx, bound: int = 10) -> CycInt:
    """A generator u of the prime above N on which zeta_p reduces to zeta.

    Among vectors in [-bound, bound]^(p-1) the answer minimises the L1 norm,
    ties broken by reverse lexicographic order, so results are reproducible.
    Only vectors with u(zeta) = 0 mod N are visited, i.e. raw solutions
    already twisted by the right sigma_a.

    Small L1 layers are enumerated directly; past a size cap the search
    switches to shells of growing sup-norm, stopping once the shell radius
    reaches the best L1 norm seen.
    """
    if bound < 1:
        raise RangeError("bound must be >= 1")
    p, N = ctx.p, ctx.N
    L = 1
    while L <= bound * (p - 1) and _count_l1_ball(p - 2, L) <= _BLOCK:
        for c in sorted(_l1_layer_hits(ctx, L, bound), key=_search_key):
            if norm(CycInt(c, p)) == N:
                return CycInt(c, p)
        L += 1
    best = None
    for s in range(1, bound + 1):
        if best is not None and s > _search_key(best)[0]:
            break
        for c in sorted(_shell_hits(ctx, s), key=_search_key):
            if best is not None and _search_key(c) >= _search_key(best):
                break
            if norm(CycInt(c, p)) == N:
                best = c
                break
    if best is None:
        raise NotFound(bound)
    return CycInt(best, p)
