"""Twisted Stickelberger elements and the discrete-log sums built from them.

Every hot-path sum here reads the vectorised log table once; prefix sums of
chi^-1(a) and a^i are periodic in k mod p, so each sum reduces to p bucket
totals of log(k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import ExcludedCharacter, InternalError, RangeError
from .modarith import DLog, ModCtx
from .padic import CharOmegaPower, PadicResidue, b1_chi_inverse, bernoulli_exact


def periodic_b1(x) -> Fraction:
    """x - floor(x) - 1/2, and 0 on integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def _check_chi(chi: CharOmegaPower):
    if chi.i in (0, 1):
        raise ExcludedCharacter(f"omega^{chi.i} is excluded (need chi != 1, omega)")


def _residue_buckets(ctx: ModCtx, logs: np.ndarray) -> list[int]:
    """B[r] = sum of log(k) over 1 <= k <= N-1 with k = r mod p."""
    p = ctx.p
    out = []
    for r in range(p):
        start = r if r else p
        out.append(int(logs[start::p].sum()))
    return out


def _prefix_chi_inv(chi: CharOmegaPower, k: int) -> list[int]:
    """W[r] = sum_{a=1}^{r-1} chi^-1(a) mod p^k for r = 0..p-1 (W[0] = 0)."""
    p = chi.p
    m = p ** k
    inv = chi.inverse()
    W = [0] * p
    acc = 0
    for r in range(1, p):
        W[r] = acc
        acc = (acc + inv(r, k)) % m
    if acc:
        raise InternalError("character sum over a full period is not zero")
    return W


@dataclass(frozen=True)
class StickCoeffs:
    """Coefficients alpha_r (mod p^nu) of phi_chi at [r^-1], r = 1..N-1."""

    chi: CharOmegaPower
    nu: int
    alpha: np.ndarray  # index r; entry 0 unused

    def __getitem__(self, r: int) -> int:
        return int(self.alpha[r])

    @property
    def modulus(self) -> int:
        return self.chi.p ** self.nu

    def augmentation(self) -> int:
        return int(self.alpha[1:].sum()) % self.modulus


def stick_coeffs(ctx: ModCtx, chi: CharOmegaPower) -> StickCoeffs:
    """alpha_r = B_{1,chi^-1} + sum_{a<r} chi^-1(a), by prefix sums."""
    _check_chi(chi)
    q = ctx.q
    b1 = b1_chi_inverse(chi, ctx.nu).value
    W = np.array(_prefix_chi_inv(chi, ctx.nu), dtype=np.int64)
    r = np.arange(ctx.N, dtype=np.int64)
    alpha = (W[r % ctx.p] + b1) % q
    alpha[0] = 0
    alpha.setflags(write=False)
    return StickCoeffs(chi, ctx.nu, alpha)


def stick_coeffs_oracle(ctx: ModCtx, chi: CharOmegaPower) -> StickCoeffs:
    """alpha_r from the defining sum over a in (Z/NpZ)^x with a = r mod N.

    Periodic B_1 values are exact rationals; Teichmuller values are integers
    mod p^(nu+1).  p * alpha_r is then p-integral and must vanish mod p.
    """
    _check_chi(chi)
    p, N, nu = ctx.p, ctx.N, ctx.nu
    inv = chi.inverse()
    hi = p ** (nu + 1)
    vals = inv.values(nu + 1)
    alpha = np.zeros(N, dtype=np.int64)
    for r in range(1, N):
        total = Fraction(0)
        for k in range(p):
            a = k * N + r
            if a % p == 0:
                continue
            total += periodic_b1(Fraction(a, N * p)) * vals[a % p]
        scaled = total * p
        if scaled.denominator % p == 0:
            raise InternalError("p * alpha_r is not p-integral")
        num = scaled.numerator * pow(scaled.denominator, -1, hi) % hi
        if num % p:
            raise InternalError(f"alpha_{r} is not p-integral")
        alpha[r] = num // p
    alpha.setflags(write=False)
    return StickCoeffs(chi, nu, alpha)


def twisted_log_sum(ctx: ModCtx, d: DLog, chi: CharOmegaPower) -> int:
    """sum_{k=1}^{N-1} (sum_{a=1}^{k-1} chi^-1(a)) * log(k)  mod p^nu."""
    W = _prefix_chi_inv(chi, ctx.nu)
    buckets = _residue_buckets(ctx, d.table())
    return sum(w * b for w, b in zip(W, buckets)) % ctx.q


def l_of_phi(ctx: ModCtx, d: DLog, chi: CharOmegaPower) -> PadicResidue:
    """Image of phi_chi under [a] - 1 -> log(a)."""
    _check_chi(chi)
    return PadicResidue(-twisted_log_sum(ctx, d, chi), ctx.p, ctx.nu)


def pair_with_log(ctx: ModCtx, d: DLog, sc: StickCoeffs) -> int:
    """sum_r alpha_r * log(r^-1) mod p^nu, directly from the coefficients."""
    logs = d.table()
    q = ctx.q
    return -int((sc.alpha[1:] * logs[1:] % q).sum()) % q


def half_sum(ctx: ModCtx, d: DLog) -> PadicResidue:
    """sum_{k=1}^{(N-1)/2} k * log(k) mod p^nu."""
    q = ctx.q
    logs = d.table()[1:ctx.half + 1]
    k = np.arange(1, ctx.half + 1, dtype=np.int64) % q
    return PadicResidue(int((k * logs % q).sum()), ctx.p, ctx.nu)


def weighted_log_sum(ctx: ModCtx, d: DLog, power: int, upto: int | None = None) -> int:
    """sum_{k=1}^{upto} k^power * log(k) mod p^nu (upto defaults to N-1)."""
    q = ctx.q
    upto = ctx.N - 1 if upto is None else upto
    logs = d.table()[1:upto + 1]
    k = np.arange(1, upto + 1, dtype=np.int64) % q
    w = np.ones_like(k)
    for _ in range(power):
        w = w * k % q
    return int((w * logs % q).sum()) % q


def _power_prefix_mod_p(p: int, i: int) -> list[int]:
    P, acc = [0] * p, 0
    for r in range(1, p):
        P[r] = acc
        acc = (acc + pow(r, i, p)) % p
    return P


def s_i(ctx: ModCtx, d: DLog, i: int) -> int:
    """S_i = sum_k (sum_{a<k} a^i) * log(k) mod p, for 1 <= i <= p-2."""
    p = ctx.p
    if not 1 <= i <= p - 2:
        raise RangeError(f"i must lie in [1, {p - 2}]")
    P = _power_prefix_mod_p(p, i)
    buckets = _residue_buckets(ctx, d.table())
    return sum(w * b for w, b in zip(P, buckets)) % p


def s_i_bernoulli(ctx: ModCtx, d: DLog, i: int) -> int:
    """S_i via (1/(i+1)) sum_k B_{i+1}(k) log(k) mod p.

    Only for i <= p-3: B_{p-1} is not p-integral, so the constant term of
    B_{p-1}(k) does not vanish against sum log(k) at precision p.
    """
    p = ctx.p
    if not 1 <= i <= p - 3:
        raise RangeError(f"Bernoulli form needs i in [1, {p - 3}]")
    n = i + 1
    coef = []
    for j in range(n + 1):
        b = comb(n, j) * bernoulli_exact(j)
        coef.append(b.numerator * pow(b.denominator, -1, p) % p)
    poly = [sum(c * pow(r, n - j, p) for j, c in enumerate(coef)) % p for r in range(p)]
    buckets = _residue_buckets(ctx, d.table())
    total = sum(w * b for w, b in zip(poly, buckets))
    return total * pow(n, -1, p) % p


def power_log_sum(ctx: ModCtx, d: DLog, j: int) -> int:
    """sum_{k=1}^{(N-1)/2} k * (log k)^j mod p."""
    if j < 1:
        raise RangeError("j must be >= 1")
    p = ctx.p
    v = d.table()[1:ctx.half + 1] % p
    powers = np.array([pow(t, j, p) for t in range(p)], dtype=np.int64)
    k = np.arange(1, ctx.half + 1, dtype=np.int64) % p
    return int((k * powers[v] % p).sum()) % p


def rectangle_sum(a: int, N: int) -> int:
    """sum_{k=1}^{N-1} floor(a*k/N), exactly."""
    k = np.arange(1, N, dtype=np.int64)
    return int((a * k // N).sum())


def floor_power_product(a: int, N: int) -> int:
    """prod_{k=1}^{N-1} k^floor(a*k/N) mod N."""
    out = 1
    for k in range(1, N):
        e = a * k // N
        if e:
            out = out * pow(k, e, N) % N
    return out
