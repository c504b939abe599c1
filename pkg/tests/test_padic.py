from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cyclo.errors import ExcludedCharacter, RangeError
from cyclo.padic import (
    CharOmegaPower, PadicResidue, b1_chi_inverse, bernoulli_exact, bernoulli_mod_p,
    is_regular, omega_power, teichmuller, teichmuller_int,
)

PRIMES = [5, 7, 11, 13]


def test_teichmuller_examples():
    assert teichmuller(2, 5, 2) == PadicResidue(7, 5, 2)
    assert all(teichmuller_int(1, p, k) == 1 for p in PRIMES for k in (1, 2, 3))
    assert all(teichmuller_int(p - 1, p, 1) == p - 1 for p in PRIMES)


@given(st.sampled_from(PRIMES), st.integers(1, 4), st.integers(1, 10**6))
def test_teichmuller_properties(p, k, a):
    if a % p == 0:
        return
    m = p ** k
    w = teichmuller_int(a, p, k)
    assert w % p == a % p
    assert pow(w, p - 1, m) == 1
    # multiplicative
    b = a + 1 if (a + 1) % p else a + 2
    assert teichmuller_int(a * b, p, k) == w * teichmuller_int(b, p, k) % m


def test_bernoulli_exact():
    assert [bernoulli_exact(n) for n in range(5)] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]
    assert bernoulli_exact(12) == Fraction(-691, 2730)


@pytest.mark.parametrize("n,p,out", [(2, 5, 1), (2, 7, 6), (4, 7, 3)])
def test_bernoulli_mod_p(n, p, out):
    assert bernoulli_mod_p(n, p) == out


def test_bernoulli_mod_p_range():
    with pytest.raises(RangeError):
        bernoulli_mod_p(3, 7)
    with pytest.raises(RangeError):
        bernoulli_mod_p(6, 7)


def test_regularity():
    assert [p for p in (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 59, 67) if not is_regular(p)] == [37, 59, 67]


@pytest.mark.parametrize("p,out", [(7, 3), (5, 3)])
def test_b1_omega_inverse(p, out):
    assert b1_chi_inverse(CharOmegaPower(-1, p), 1).value == out


def test_b1_even_is_zero():
    for p in PRIMES:
        for i in range(2, p - 1, 2):
            assert b1_chi_inverse(CharOmegaPower(i, p), 2).value == 0


def test_b1_excluded():
    with pytest.raises(ExcludedCharacter):
        b1_chi_inverse(CharOmegaPower(0, 7), 1)
    with pytest.raises(ExcludedCharacter):
        b1_chi_inverse(CharOmegaPower(1, 7), 1)


@pytest.mark.parametrize("p", PRIMES)
def test_b1_matches_bernoulli(p):
    """B_{1,omega^i} = B_{i+1}/(i+1) mod p for odd i <= p-4."""
    for i in range(1, p - 3, 2):
        chi = CharOmegaPower(-i, p)  # chi^-1 = omega^i
        want = bernoulli_exact(i + 1) / (i + 1)
        assert b1_chi_inverse(chi, 1).value == want.numerator * pow(want.denominator, -1, p) % p


@given(st.sampled_from(PRIMES), st.integers(-50, 50), st.integers(1, 3))
@settings(max_examples=100)
def test_b1_against_exact_sum(p, i, nu):
    """p-adic value of (1/p) sum a chi^-1(a) with the Teichmuller lift at high precision."""
    chi = CharOmegaPower(i, p)
    if chi.i in (0, 1):
        return
    hi = p ** (nu + 1)
    total = sum(a * chi.inverse()(a, nu + 1) for a in range(1, p)) % hi
    assert total % p == 0
    assert b1_chi_inverse(chi, nu).value == total // p % p ** nu


def test_char_basics():
    chi = omega_power(-1, 7)
    assert chi.i == 5 and chi.is_odd and chi.parity == -1
    assert chi.inverse().i == 1
    assert chi(7, 2) == 0
    assert CharOmegaPower(2, 7).parity == 1


@given(st.sampled_from(PRIMES), st.integers(0, 20), st.integers(1, 3), st.integers(1, 500))
def test_char_values(p, i, k, a):
    chi = CharOmegaPower(i, p)
    m = p ** k
    if a % p:
        assert chi(a, k) * chi.inverse()(a, k) % m == 1
        assert chi(a, k) == pow(teichmuller_int(a, p, k), chi.i, m)
    assert chi(-1, k) == chi.parity % m


def test_residue():
    r = PadicResidue(-3, 5, 2)
    assert r.value == 22 and r.modulus == 25 and int(r) == 22
    assert r.reduce(1) == PadicResidue(2, 5, 1)
    assert str(r) == "22 mod 25"
