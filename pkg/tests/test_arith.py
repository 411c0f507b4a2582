import os

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lemfact.arith import (
    PrimePower,
    char_composite,
    discrete_log,
    factorize,
    is_fundamental_discriminant,
    is_prime,
    is_squarefree,
    kronecker,
    max_disc,
    omega,
    power_residue_char,
    prime_discriminants,
    prime_star,
    primitive_root,
    underlying_prime,
)

ODD_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


@given(st.integers(2, 10**6))
@settings(max_examples=300)
def test_is_prime_matches_trial_division(n):
    naive = n > 1 and all(n % k for k in range(2, int(n**0.5) + 1))
    assert is_prime(n) == naive


@given(st.integers(1, 10**9))
@settings(max_examples=200)
def test_factorize_reconstructs(n):
    out = factorize(n)
    prod = 1
    for pp in out:
        assert is_prime(pp.q)
        prod *= pp.value
    assert prod == n
    assert [pp.q for pp in out] == sorted({pp.q for pp in out})


def test_omega_and_squarefree():
    assert omega(60) == 3
    assert omega(-60) == 3
    assert omega(1) == 0
    assert is_squarefree(30)
    assert not is_squarefree(12)


def test_fundamental_discriminants():
    for d in (5, 8, -4, -8, -3, 12, 13, -20, 21, 205):
        assert is_fundamental_discriminant(d)
    for d in (2, 3, -5, 25, -12, 45, 0):
        assert not is_fundamental_discriminant(d)


@pytest.mark.parametrize("p,expected", [(5, 5), (13, 13), (3, -3), (7, -7), (11, -11)])
def test_prime_star(p, expected):
    assert prime_star(p) == expected


def test_prime_star_rejects_two():
    with pytest.raises(ValueError):
        prime_star(2)


@given(st.sampled_from(ODD_PRIMES), st.integers(1, 200))
@settings(max_examples=400)
def test_kronecker_matches_euler_criterion(p, a):
    if a % p == 0:
        assert kronecker(a, p) == 0
    else:
        euler = pow(a, (p - 1) // 2, p)
        assert kronecker(a, p) == (1 if euler == 1 else -1)


@given(st.integers(-100, 100), st.integers(-100, 100), st.integers(1, 60))
@settings(max_examples=400)
def test_kronecker_multiplicative_in_top(a, b, n):
    assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


@given(st.integers(-60, 60), st.integers(1, 40), st.integers(1, 40))
@settings(max_examples=400)
def test_kronecker_multiplicative_in_bottom(a, m, n):
    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


@given(st.integers(-2000, 2000))
@settings(max_examples=500)
def test_prime_discriminant_factorization(d):
    if d in (0, 1) or not is_fundamental_discriminant(d):
        return
    parts = prime_discriminants(d)
    prod = 1
    for v in parts:
        assert is_fundamental_discriminant(v)
        assert v in (-4, 8, -8) or is_prime(abs(v))
        prod *= v
    assert prod == d
    assert len({underlying_prime(v) for v in parts}) == len(parts)


@pytest.mark.parametrize("q", ODD_PRIMES)
def test_primitive_root_generates(q):
    g = primitive_root(q)
    seen = set()
    x = 1
    for _ in range(q * (q - 1)):
        x = x * g % (q * q)
        seen.add(x)
    assert len(seen) == q * (q - 1)


@given(st.sampled_from(ODD_PRIMES), st.integers(1, 10**4))
@settings(max_examples=200)
def test_discrete_log_inverts_power(q, x):
    if x % q == 0:
        return
    g = primitive_root(q)
    k = discrete_log(g, x % q, q)
    assert pow(g, k, q) == x % q


def test_power_residue_char_is_legendre_for_n2():
    for q in ODD_PRIMES:
        for p in ODD_PRIMES:
            if p == q:
                continue
            chi = power_residue_char(p, PrimePower(q, 1), 2)
            assert (-1) ** chi == kronecker(p, q)


@given(st.sampled_from(ODD_PRIMES), st.data())
@settings(max_examples=300)
def test_power_residue_char_is_homomorphism(q, data):
    n = data.draw(st.sampled_from([2, 3, 4, 5, 6]))
    p1 = data.draw(st.integers(1, 500).filter(lambda x: x % q))
    p2 = data.draw(st.integers(1, 500).filter(lambda x: x % q))
    qp = PrimePower(q, 1)
    lhs = power_residue_char(p1 * p2, qp, n)
    rhs = (power_residue_char(p1, qp, n) + power_residue_char(p2, qp, n)) % n
    assert lhs == rhs


def test_power_residue_char_prime_power_modulus():
    # mod q^2 the character has more room: gcd(n, q(q-1)) can exceed gcd(n, q-1)
    qp = PrimePower(3, 2)
    vals = {power_residue_char(p, qp, 3) for p in (2, 5, 7, 11, 13, 17)}
    assert vals == {0, 1, 2}


def test_char_composite_splits_over_factors():
    assert char_composite(2, 15, 4) == (
        power_residue_char(2, PrimePower(3, 1), 4)
        + power_residue_char(2, PrimePower(5, 1), 4)
    ) % 4
    with pytest.raises(ValueError):
        char_composite(3, 6, 2)


def test_max_disc_env_override(monkeypatch):
    monkeypatch.setenv("LEMFACT_MAX_DISC", "1000")
    assert max_disc() == 1000
    with pytest.raises(ValueError):
        factorize(10**6)
    monkeypatch.delenv("LEMFACT_MAX_DISC")
    assert max_disc() == 2**63
