"""Acceptance criteria 1-9, each at its stated tolerance and time budget.

Every criterion prints one PASS/FAIL line; the lines are repeated in the
pytest terminal summary.  Run standalone with ``python3 tests/test_acceptance.py``.
"""

import random
import time
from contextlib import contextmanager

import numpy as np
import pytest

import conftest
from conftest import primes_1_mod
from cyclo import stickelberger as stk
from cyclo.criteria import (
    SKIPPED, Workspace, ab_norm, check_ab, check_ce, check_kummer, check_p5,
    check_power_log, check_prop_gamma, check_si, check_thm_p, rank_bounds,
)
from cyclo.cyclotomic import CycInt, conj
from cyclo.gausssums import OrderPChar, jacobi_sum, kummer_check
from cyclo.modarith import DLog, is_prime, make_ctx, next_primitive_root
from cyclo.padic import CharOmegaPower, bernoulli_mod_p


@contextmanager
def criterion(n, title):
    t0 = time.perf_counter()
    info = {}
    try:
        yield info
    except BaseException as exc:
        line = f"criterion {n} FAIL: {title} ({type(exc).__name__}: {exc})"
        print(line)
        conftest.ACCEPTANCE_LINES.append(line)
        raise
    dt = time.perf_counter() - t0
    extra = "; ".join(f"{k}={v}" for k, v in info.items())
    line = f"criterion {n} PASS: {title} [{dt:.3f} s{'; ' + extra if extra else ''}]"
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)


def test_c1_ab_single():
    with criterion(1, "a+b congruence at (p, a, b) = (5, 2, 1), N = 11") as info:
        make_ctx(5, 11)  # warm imports outside the timing of the check itself
        t0 = time.perf_counter()
        r = check_ab(5, 2, 1)
        ms = (time.perf_counter() - t0) * 1000
        # hand index table base 2 mod 11: ind(1..5) = 0, 1, 8, 2, 4
        ind = {1: 0, 2: 1, 3: 8, 4: 2, 5: 4}
        assert (ind[3] + 8 * sum(k * ind[k] for k in range(1, 6))) % 5 == 0
        prod = 3
        for k in range(1, 6):
            prod = prod * pow(k, 8 * k, 11) % 11
        assert pow(prod, 2, 11) == 1  # a 5th power in F_11 iff x^2 = 1
        assert r.N == 11 and r.holds and r.lhs == r.rhs == 3
        assert r.aux["pth_power_form"] and r.aux["log_form"]
        assert ms < 10, f"{ms:.2f} ms"
        info["ms"] = f"{ms:.2f}"


def test_c2_ab_sweep():
    with criterion(2, "a+b sweep, p in {5,7}, 1 <= b < a <= 12, prime N < 10^7") as info:
        t0 = time.perf_counter()
        ran, skipped = 0, 0
        for p in (5, 7):
            for a in range(2, 13):
                for b in range(1, a):
                    N = ab_norm(p, a, b)
                    if N >= 10 ** 7 or not is_prime(N):
                        continue
                    r = check_ab(p, a, b)
                    if r.verdict == SKIPPED:
                        skipped += 1
                        continue
                    assert r.holds, (p, a, b, r)
                    ran += 1
        dt = time.perf_counter() - t0
        assert ran > 0 and dt < 60
        info.update(checked=ran, skipped=skipped)


def test_c3_prop_gamma():
    with criterion(3, "Proposition Gamma, p in {5,7,11}, N < 2000, all admissible chi") as info:
        t0 = time.perf_counter()
        count, nu2 = 0, 0
        for p in (5, 7, 11):
            for N in primes_1_mod(p, 5, 1999):
                ws = Workspace.build(p, N, norm_bound=1)
                nu2 += ws.ctx.nu >= 2
                for i in range(2, p - 1):  # chi = omega^-(p-1-i); every chi != 1, omega
                    r = check_prop_gamma(ws, CharOmegaPower(i, p))
                    assert r.holds, r
                    count += 1
        assert check_prop_gamma(Workspace.build(5, 101), CharOmegaPower(-1, 5)).aux["modulus"] == 25
        dt = time.perf_counter() - t0
        assert nu2 > 0 and dt < 120
        info.update(checks=count, nu2_contexts=nu2)


def test_c4_theorem_p():
    with criterion(4, "Theorem P, p in {5,7}, N < 1000, B = 10") as info:
        ran = skipped = 0
        for p in (5, 7):
            chis = [CharOmegaPower(-1, p)]
            if p == 7 and bernoulli_mod_p(4, 7) != 0:
                chis.append(CharOmegaPower(-3, 7))
            for N in primes_1_mod(p, 5, 999):
                ws = Workspace.build(p, N, norm_bound=10)
                for chi in chis:
                    r = check_thm_p(ws, chi)
                    if r.verdict == SKIPPED:
                        skipped += 1
                        continue
                    assert r.holds, r
                    ran += 1
        assert ran >= 20
        info.update(non_skipped=ran, skipped=skipped)


def test_c5_survey():
    with criterion(5, "survey: S_3 = 0 at p = 7 for N <= 1723; half-sum = 0 at (5, 211)") as info:
        flagged = []
        for N in primes_1_mod(7, 5, 1723):
            ctx = make_ctx(7, N)
            if stk.s_i(ctx, DLog(ctx), 3) == 0:
                flagged.append(N)
        assert flagged == [337, 631, 659, 1303, 1723], flagged
        ctx = make_ctx(5, 211)
        assert stk.half_sum(ctx, DLog(ctx)).value % 5 == 0
        assert check_ce(Workspace(ctx)).holds
        info["flagged"] = flagged


def test_c6_kummer_gauss():
    with criterion(6, "Kummer check and J * conj(J) = N, p in {5,7}, N < 200") as info:
        true_ctx = sums = 0
        for p in (5, 7):
            for N in primes_1_mod(p, 5, 199):
                ctx = make_ctx(p, N)
                d = DLog(ctx)
                ws = Workspace(ctx)
                assert kummer_check(ws.e, d)
                true_ctx += 1
                chi = OrderPChar(ctx, d)
                for j in range(1, p - 1):
                    J = jacobi_sum(chi, 1, j)
                    assert J * conj(J) == CycInt.integer(N, p)
                    sums += 1
        assert true_ctx >= 5
        info.update(contexts=true_ctx, jacobi_sums=sums)


def test_c7_lemmas():
    with criterion(7, "Lemma B_2, rectangle and fourth-power lemmas, 100 random instances each") as info:
        rng = random.Random(20261019)
        pool = [(p, N) for p in (5, 7, 11, 13) for N in primes_1_mod(p, 5, 3000)]
        for _ in range(100):
            p, N = rng.choice(pool)
            ctx = make_ctx(p, N)
            d = DLog(ctx)
            lhs = stk.weighted_log_sum(ctx, d, 2)
            rhs = -4 * pow(3, -1, ctx.q) * stk.half_sum(ctx, d).value % ctx.q
            assert lhs == rhs, (p, N)
        for _ in range(100):
            p, N = rng.choice(pool)
            a = rng.randint(1, p)
            assert stk.rectangle_sum(a, N) == (a - 1) * (N - 1) // 2, (a, N)
        for _ in range(100):
            p, N = rng.choice(pool)
            a = rng.randint(1, p)
            assert pow(stk.floor_power_product(a, N), 4, N) == 1, (a, N)
        info["instances"] = 300


def test_c8_stickelberger_oracle():
    with criterion(8, "stick_coeffs equals the defining-sum oracle at (5,11), (5,101), (7,29)") as info:
        compared = 0
        for p, N in ((5, 11), (5, 101), (7, 29)):
            ctx = make_ctx(p, N)
            for i in range(2, p - 1):
                chi = CharOmegaPower(i, p)
                fast = stk.stick_coeffs(ctx, chi)
                slow = stk.stick_coeffs_oracle(ctx, chi)
                assert np.array_equal(fast.alpha, slow.alpha), (p, N, i)
                assert fast.augmentation() == 0 and slow.augmentation() == 0
                compared += N - 1
        info["coefficients"] = compared


def _vanishing_signature(ws):
    sig = {"ce": check_ce(ws).verdict,
           "si": tuple(check_si(ws, i).verdict for i in range(1, ws.ctx.p - 1)),
           "powerlog": check_power_log(ws, ws.ctx.p - 1).aux["vanishing"],
           "kummer": check_kummer(ws).verdict,
           "thmP": check_thm_p(ws, CharOmegaPower(-1, ws.ctx.p)).verdict,
           "gamma": tuple(check_prop_gamma(ws, CharOmegaPower(i, ws.ctx.p)).verdict
                          for i in range(2, ws.ctx.p - 1))}
    b = rank_bounds(ws).aux
    sig["mu"] = (b["mu"], b["mu1"])
    p5 = check_p5(ws).aux
    sig["p5"] = (p5["A"], p5["B"], p5.get("C"))
    return sig


def test_c9_normalization():
    with criterion(9, "vanishing verdicts invariant under the next primitive root, p = 5, N < 500") as info:
        count = 0
        for N in primes_1_mod(5, 5, 499):
            ws = Workspace.build(5, N)
            alt = Workspace.build(5, N, g=next_primitive_root(ws.ctx))
            assert alt.ctx.g != ws.ctx.g
            assert _vanishing_signature(ws) == _vanishing_signature(alt), N
            count += 1
        info["contexts"] = count


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
