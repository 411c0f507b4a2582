"""Imaginary-quadratic class groups from scratch: reduced binary
quadratic forms, Gauss composition via ideal multiplication, 2- and
4-ranks, and the Redei matrix.

This is the ground truth the classical criteria are checked against, so
it deliberately shares no code path with them beyond the Kronecker
symbol (which the Redei matrix needs by definition).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd, isqrt, prod

from .abelian import AbGroup
from .arith import (
    factorize,
    is_fundamental_discriminant,
    kronecker,
    max_disc,
    prime_discriminants,
    underlying_prime,
)


@dataclass(frozen=True)
class QuadForm:
    """Positive definite integral binary quadratic form a x^2 + b xy + c y^2."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.disc >= 0:
            raise ValueError(f"({self.a},{self.b},{self.c}) is not positive definite")

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not -a < b <= a <= c:
            return False
        return b >= 0 if a == c else True

    def is_ambiguous(self) -> bool:
        """Order at most 2 in the class group (for reduced forms)."""
        return self.b == 0 or self.a == self.b or self.a == self.c


def reduce_form(f: QuadForm) -> QuadForm:
    a, b, c = f.a, f.b, f.c
    while True:
        if a > c:
            a, b, c = c, -b, a
            continue
        if b > a or b <= -a:
            # translate b into (-a, a]
            k = (a - b) // (2 * a)
            b2 = b + 2 * k * a
            c = c + k * (b + k * a)
            b = b2
            continue
        break
    if a == c and b < 0:
        b = -b
    return QuadForm(a, b, c)


def principal_form(d: int) -> QuadForm:
    if d >= 0 or d % 4 not in (0, 1):
        raise ValueError(f"{d} is not a negative discriminant")
    if d % 4 == 0:
        return QuadForm(1, 0, -d // 4)
    return QuadForm(1, 1, (1 - d) // 4)


def opposite(f: QuadForm) -> QuadForm:
    return reduce_form(QuadForm(f.a, -f.b, f.c))


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _module_to_form(gens, d) -> QuadForm:
    """The reduced form of the ideal class spanned by the given
    generators, written as (x, y) for the element (x + y sqrt(d)) / 2."""
    # column reduction to a basis (alpha, 0), (beta, gamma)
    beta_x, gamma = 0, 0
    xs = []
    for x, y in gens:
        if y == 0:
            xs.append(x)
            continue
        if gamma == 0:
            beta_x, gamma = x, y
            continue
        g, u, v = _xgcd(gamma, y)
        new_bx = u * beta_x + v * x
        xs.append((gamma // g) * x - (y // g) * beta_x)
        beta_x, gamma = new_bx, g
    if gamma < 0:
        beta_x, gamma = -beta_x, -gamma
    alpha = abs(reduce(gcd, xs, 0))
    if alpha == 0 or gamma == 0:
        raise ValueError("generators do not span a full module")
    a, r = divmod(alpha, 2 * gamma)
    if r:
        raise AssertionError("module is not an ideal: bad norm")
    b = (beta_x // gamma) % (2 * a)
    if (b * b - d) % (4 * a):
        raise AssertionError("module is not an ideal: bad trace")
    return reduce_form(QuadForm(a, b, (b * b - d) // (4 * a)))


def compose(f: QuadForm, g: QuadForm) -> QuadForm:
    """Gauss composition: multiply the corresponding ideals [a, (-b+sqrt d)/2]
    and read the product lattice back off in Hermite form."""
    d = f.disc
    if g.disc != d:
        raise ValueError(f"discriminant mismatch: {d} vs {g.disc}")
    a1, b1 = f.a, -f.b
    a2, b2 = g.a, -g.b
    gens = (
        (2 * a1 * a2, 0),
        (a1 * b2, a1),
        (a2 * b1, a2),
        ((b1 * b2 + d) // 2, (b1 + b2) // 2),
    )
    h = _module_to_form(gens, d)
    return reduce_form(QuadForm(h.a, -h.b, h.c))


def square(f: QuadForm) -> QuadForm:
    """compose(f, f), with the three-generator shortcut."""
    d = f.disc
    a, b = f.a, -f.b
    gens = ((2 * a * a, 0), (a * b, a), ((b * b + d) // 2, b))
    h = _module_to_form(gens, d)
    return reduce_form(QuadForm(h.a, -h.b, h.c))


def form_pow(f: QuadForm, n: int) -> QuadForm:
    if n < 0:
        return form_pow(opposite(f), -n)
    result = principal_form(f.disc)
    base = reduce_form(f)
    while n:
        if n & 1:
            result = compose(result, base)
        base = square(base)
        n >>= 1
    return result


def _check_disc(d: int, bound: int | None = None):
    if d >= 0:
        raise ValueError(f"imaginary quadratic oracle needs d < 0, got {d}")
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    limit = bound if bound is not None else min(10**6, max_disc())
    if -d > limit:
        raise ValueError(f"|{d}| exceeds oracle bound {limit}")


def reduced_forms(d: int, bound: int | None = None) -> list[QuadForm]:
    """All reduced forms of discriminant d, lexicographic in (a, b)."""
    _check_disc(d, bound)
    out = []
    amax = isqrt(-d // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - d
            c, r = divmod(num, 4 * a)
            if r or c < a:
                continue
            if a == c and b < 0:
                continue
            out.append(QuadForm(a, b, c))
    return out


def class_number(d: int, bound: int | None = None) -> int:
    return len(reduced_forms(d, bound))


def naive_form_count(d: int) -> int:
    """Independent count of reduced forms: loop over b and the divisors
    of (b^2 - d)/4; shares no code with reduced_forms."""
    _check_disc(d)
    count = 0
    b = d & 1
    while 3 * b * b <= -d:
        n = (b * b - d) // 4
        a = b if b else 1
        while a * a <= n:
            if a and n % a == 0:
                c = n // a
                if b < a < c:
                    count += 2 if b else 1
                elif b <= a <= c:
                    count += 1
            a += 1
        b += 2
    return count


def class_group_structure(d: int, bound: int | None = None) -> tuple[AbGroup, int]:
    """Invariant factors and order of the form class group, built from
    element orders of the reduced forms."""
    forms = reduced_forms(d, bound)
    h = len(forms)
    e = principal_form(d)
    orders = []
    h_factors = factorize(h)
    for f in forms:
        n = h
        for pp in h_factors:
            for _ in range(pp.e):
                if n % pp.q == 0 and form_pow(f, n // pp.q) == e:
                    n //= pp.q
                else:
                    break
        orders.append(n)
    # cyclic p-power factors from kernel sizes: a form is killed by p^j
    # exactly when its order divides p^j, so #ker(p^j) = p^t_j and
    # t_j - t_{j-1} counts the cyclic factors of order >= p^j
    factors_by_prime: dict[int, list[int]] = {}
    for pp in h_factors:
        p = pp.q
        t = [0]
        for j in range(1, pp.e + 1):
            ker = sum(1 for n in orders if p**j % n == 0)
            lg = 0
            while p**lg < ker:
                lg += 1
            if p**lg != ker:
                raise AssertionError(f"kernel size {ker} is not a power of {p}")
            t.append(lg)
        counts = [t[j] - t[j - 1] for j in range(1, pp.e + 1)]
        facs = []
        for j, cnt in enumerate(counts, start=1):
            while len(facs) < cnt:
                facs.append(0)
            for i in range(cnt):
                facs[i] = j
        factors_by_prime[p] = sorted((p**j for j in facs), reverse=True)
    width = max((len(v) for v in factors_by_prime.values()), default=0)
    invariants = []
    for i in range(width):
        m = prod(
            v[i] if i < len(v) else 1 for v in factors_by_prime.values()
        )
        invariants.append(m)
    invariants = [m for m in sorted(invariants) if m > 1]
    if prod(invariants) != h:
        raise AssertionError("invariant factors do not multiply to h")
    return AbGroup(tuple(invariants)), h


def two_rank(d: int, bound: int | None = None) -> int:
    """log2 of the number of ambiguous reduced forms."""
    n = sum(1 for f in reduced_forms(d, bound) if f.is_ambiguous())
    r = n.bit_length() - 1
    if 1 << r != n:
        raise AssertionError(f"ambiguous form count {n} is not a power of 2")
    return r


def four_rank(d: int, bound: int | None = None) -> int:
    """Dimension of Cl[2] intersected with the squares, by squaring
    every reduced form."""
    forms = reduced_forms(d, bound)
    amb_squares = {g for g in (square(f) for f in forms) if g.is_ambiguous()}
    n = len(amb_squares)
    r = n.bit_length() - 1
    if 1 << r != n:
        raise AssertionError(f"ambiguous square count {n} is not a power of 2")
    return r


def rank_sweep(lo: int, hi: int):
    """two_rank and four_rank for every fundamental discriminant in
    [lo, hi), d < 0, via one global form enumeration.

    Returns {d: (two_rank, four_rank)}.  The per-d work is identical to
    two_rank/four_rank; the enumeration order is just transposed so the
    whole range costs one pass over all (a, b, c).
    """
    if lo >= hi or hi > 0:
        raise ValueError("need lo < hi <= 0")
    fundamental = [
        d for d in range(lo, hi) if d < 0 and is_fundamental_discriminant(d)
    ]
    amb_count = {d: 0 for d in fundamental}
    amb_squares = {d: set() for d in fundamental}
    wanted = amb_count.keys()
    amax = isqrt(-lo // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            bb = b * b
            # smallest c with d = bb - 4ac < hi, but also c >= a
            cmin = max(a, (bb - hi) // (4 * a) + 1)
            cmax = (bb - lo) // (4 * a)
            for c in range(cmin, cmax + 1):
                d = bb - 4 * a * c
                if d < lo or d not in wanted:
                    continue
                if a == c and b < 0:
                    continue
                f = QuadForm(a, b, c)
                if f.is_ambiguous():
                    amb_count[d] += 1
                g = square(f)
                if g.is_ambiguous():
                    amb_squares[d].add(g)
    out = {}
    for d in fundamental:
        n2, n4 = amb_count[d], len(amb_squares[d])
        r2, r4 = n2.bit_length() - 1, n4.bit_length() - 1
        if 1 << r2 != n2 or 1 << r4 != n4:
            raise AssertionError(f"non-power-of-2 ambiguous counts at {d}")
        out[d] = (r2, r4)
    return out


def redei_matrix(d: int):
    """Matrix over F2 indexed by the prime discriminant factors of d;
    rows as bitmasks, bit j set when the symbol is -1."""
    if not is_fundamental_discriminant(d) or d == 1:
        raise ValueError(f"{d} is not a fundamental discriminant of a field")
    parts = prime_discriminants(d)
    t = len(parts)
    rows = []
    for i in range(t):
        row = 0
        for j in range(t):
            if i == j:
                sym = kronecker(d // parts[i], underlying_prime(parts[i]))
            else:
                sym = kronecker(parts[j], underlying_prime(parts[i]))
            if sym == -1:
                row |= 1 << j
        rows.append(row)
    return rows


def _f2_rank(rows) -> int:
    rank = 0
    basis = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
            rank += 1
    return rank


def redei_rank(d: int) -> int:
    """4-rank of the narrow class group: t - 1 - rank of the Redei matrix."""
    rows = redei_matrix(d)
    return len(rows) - 1 - _f2_rank(rows)
