"""Exact elementary number theory: factorization, discriminants, Kronecker
symbols, primitive roots, discrete logs, and power-residue characters."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

_DEFAULT_MAX_DISC = 2**63

# bases giving a deterministic Miller-Rabin test below 3.3 * 10^24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def max_disc() -> int:
    return int(os.environ.get("LEMFACT_MAX_DISC", _DEFAULT_MAX_DISC))


@lru_cache(maxsize=1 << 16)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimePower:
    q: int
    e: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise ValueError(f"{self.q} is not prime")
        if self.e < 1:
            raise ValueError("exponent must be >= 1")

    @property
    def value(self) -> int:
        return self.q**self.e


def factorize(n: int) -> list[PrimePower]:
    """Trial-division factorization, primes ascending; [] for n = 1."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > max_disc():
        raise ValueError(f"{n} exceeds discriminant bound {max_disc()}")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append(PrimePower(p, e))
    d = 5
    step = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append(PrimePower(d, e))
        d += step
        step = 6 - step
    if n > 1:
        out.append(PrimePower(n, 1))
    return out


def omega(n: int) -> int:
    """Number of distinct prime divisors of |n| (0 for units)."""
    return len(factorize(abs(n))) if abs(n) != 1 else 0


def is_squarefree(n: int) -> bool:
    return all(pp.e == 1 for pp in factorize(abs(n)))


def is_fundamental_discriminant(d: int) -> bool:
    if d == 0:
        return False
    if d == 1:
        return True
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def prime_star(p: int) -> int:
    """The prime discriminant (-1)^((p-1)/2) * p attached to an odd prime."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    return p if p % 4 == 1 else -p


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), extending the Jacobi symbol to all n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    if a == 0 and abs(n) != 1:
        return 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    # factor out 2s from n
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 == 1 and a % 8 in (3, 5):
            result = -result
    a %= n
    # Jacobi for odd n >= 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def prime_discriminants(d: int) -> list[int]:
    """Unique factorization of a fundamental discriminant into prime
    discriminants (p* for odd p; one of -4, 8, -8 at 2)."""
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    if d == 1:
        return []
    parts = [prime_star(pp.q) for pp in factorize(abs(d)) if pp.q != 2]
    rest = d
    for v in parts:
        rest //= v
    if rest != 1:
        if rest not in (-4, 8, -8):
            raise AssertionError(f"bad 2-part {rest} of {d}")
        parts.append(rest)
    return sorted(parts, key=abs)


def underlying_prime(disc_factor: int) -> int:
    """The prime a prime discriminant is ramified at."""
    return 2 if disc_factor % 2 == 0 else abs(disc_factor)


_proot_cache: dict[int, int] = {}


def primitive_root(q: int, e: int = 1) -> int:
    """Smallest positive generator of (Z/q^2)^x, which also generates
    (Z/q^e)^x for every e >= 1.  q must be an odd prime."""
    g = _proot_cache.get(q)
    if g is not None:
        return g
    if q == 2 or not is_prime(q):
        raise ValueError(f"{q} is not an odd prime")
    order = q * (q - 1)
    prime_divs = [pp.q for pp in factorize(order)]
    g = 2
    while True:
        if all(pow(g, order // r, q * q) != 1 for r in prime_divs):
            _proot_cache[q] = g
            return g
        g += 1


@lru_cache(maxsize=1 << 18)
def discrete_log(g: int, x: int, modulus: int) -> int:
    """Least k >= 0 with g^k = x mod modulus, baby-step giant-step."""
    x %= modulus
    if gcd(x, modulus) != 1:
        raise ValueError(f"{x} is not a unit mod {modulus}")
    if x == 1:
        return 0
    m = isqrt(modulus) + 1
    table = {}
    cur = 1
    for j in range(m):
        table.setdefault(cur, j)
        cur = cur * g % modulus
    # cur = g^m; giant steps multiply x by g^{-m}
    ginv_m = pow(cur, -1, modulus)
    y = x
    for i in range(m):
        j = table.get(y)
        if j is not None:
            k = i * m + j
            if k > 0:
                return k
        y = y * ginv_m % modulus
    raise ValueError(f"{x} is not a power of {g} mod {modulus}")


@lru_cache(maxsize=1 << 18)
def power_residue_char(p: int, qp: PrimePower, n: int) -> int:
    """Image of p in (Z/q^e)^x modulo n-th powers, as a residue in Z/nZ.

    With phi = q^(e-1)(q-1) and m = gcd(n, phi), p maps to its discrete
    log (base the engine-wide smallest primitive root) reduced mod m, then
    embedded into Z/nZ via multiplication by n/m.
    """
    q, e = qp.q, qp.e
    if q == 2:
        raise ValueError("power-residue characters require odd q")
    if p % q == 0:
        raise ValueError(f"ramified argument: {p} not coprime to {q}")
    if n == 1:
        return 0
    phi = q ** (e - 1) * (q - 1)
    m = gcd(n, phi)
    if m == 1:
        return 0
    mod = q**e
    g = primitive_root(q, e)
    # dlog only needed mod m; when m | q-1 the residue mod q determines it
    if (q - 1) % m == 0:
        k = discrete_log(g, p % q, q)
    else:
        k = discrete_log(g, p % mod, mod)
    return (n // m) * (k % m) % n


def char_composite(p: int, a: int, n: int) -> int:
    """Sum of power_residue_char over the prime-power divisors of |a|.

    The sign of a is ignored; a must be odd and coprime to p.
    """
    a = abs(a)
    if a % 2 == 0:
        raise ValueError("composite character requires odd a")
    if a == 1:
        return 0
    if gcd(p, a) != 1:
        raise ValueError(f"{p} not coprime to {a}")
    return sum(power_residue_char(p, pp, n) for pp in factorize(a)) % n
