"""Ramification assignments, discriminant factorizations, and the
existence/counting pipeline for unramified central embedding problems.

An assignment maps each ramified odd prime q to an inertia image y_q in
Y_E; it is the primitive representation, with the signed coprime
discriminant factorization {d_y} a derived view.  The general engine is
restricted to tame odd ramification: every q must be coprime to
2 * |Gab| * |A|.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import gcd, prod

from .abelian import (
    Elem,
    elem_order,
    generates,
    hom_count,
    is_subgroup,
    subgroup_generated,
    subgroup_index,
    torsion_count,
)
from .arith import PrimePower, factorize, is_prime, power_residue_char, prime_star
from .cocycle import CentralExtension, aut_stabilizer_order, class_orbit_size

logger = logging.getLogger("lemfact")

DEFAULT_ASSIGNMENT_BOUND = 10**6


@dataclass(frozen=True)
class RamAssignment:
    """Inertia data of a homomorphism: ramified prime -> element of Y_E."""

    ext: CentralExtension
    entries: tuple[tuple[int, Elem], ...]  # sorted by prime

    def __post_init__(self):
        if not self.entries:
            raise ValueError("assignment needs at least one ramified prime")
        object.__setattr__(self, "entries", tuple(sorted(self.entries)))
        gab = self.ext.gab
        wild = 2 * gab.order * self.ext.a.order
        ye = self.ext.y_set()
        for q, y in self.entries:
            if not is_prime(q) or gcd(q, wild) != 1:
                raise ValueError(f"prime {q} is not tame/odd for this extension")
            if y not in ye:
                raise ValueError(f"inertia image {y} is not in Y_E")
            n = elem_order(gab, y)
            if n == 1:
                raise ValueError(f"prime {q} carries trivial inertia")
            if (q - 1) % n != 0:
                raise ValueError(f"order {n} of {y} does not divide {q}-1")
        if len({q for q, _ in self.entries}) != len(self.entries):
            raise ValueError("duplicate prime in assignment")

    @property
    def primes(self):
        return [q for q, _ in self.entries]

    def image_of(self, p: int) -> Elem:
        for q, y in self.entries:
            if q == p:
                return y
        raise KeyError(p)

    def image_subgroup(self) -> frozenset:
        return subgroup_generated(self.ext.gab, [y for _, y in self.entries])


@dataclass(frozen=True)
class DiscFactorization:
    """Signed coprime discriminant factors d_y indexed by Y_E; factors not
    listed default to 1."""

    ext: CentralExtension
    factors: tuple[tuple[Elem, int], ...]  # sorted, d_y != 1 only

    def __post_init__(self):
        object.__setattr__(
            self, "factors", tuple(sorted((y, d) for y, d in self.factors if d != 1))
        )
        vals = [abs(d) for _, d in self.factors]
        for i, a in enumerate(vals):
            for b in vals[i + 1 :]:
                if gcd(a, b) != 1:
                    raise ValueError("discriminant factors are not coprime")
        for _, d in self.factors:
            if d % 4 not in (0, 1):
                raise ValueError(f"factor {d} is not a discriminant")

    def factor_of(self, y: Elem) -> int:
        for yy, d in self.factors:
            if yy == y:
                return d
        return 1

    def support(self):
        return [y for y, _ in self.factors]

    def image_subgroup(self) -> frozenset:
        return subgroup_generated(self.ext.gab, self.support())

    def disc(self) -> int:
        """disc(f) = prod |d_y| ^ [Im : <y>]."""
        gab = self.ext.gab
        im = self.image_subgroup()
        out = 1
        for y, d in self.factors:
            idx = len(im) // len(subgroup_generated(gab, [y]))
            out *= abs(d) ** idx
        return out


def factorization_of(assignment: RamAssignment) -> DiscFactorization:
    """Group the prime discriminants by inertia image:
    d_y = prod over {q : y_q = y} of (q*)^(|y|-1)."""
    gab = assignment.ext.gab
    by_y: dict[Elem, int] = {}
    for q, y in assignment.entries:
        n = elem_order(gab, y)
        by_y[y] = by_y.get(y, 1) * prime_star(q) ** (n - 1)
    return DiscFactorization(assignment.ext, tuple(by_y.items()))


def assignment_from_factorization(
    ext: CentralExtension, fact: DiscFactorization
) -> RamAssignment:
    """Inverse of factorization_of: each prime dividing d_y gets inertia
    image y.  Validates the order-divisibility and shape conditions."""
    gab = ext.gab
    entries = []
    for y, d in fact.factors:
        n = elem_order(gab, y)
        sign = 1
        for pp in factorize(abs(d)):
            if pp.q == 2:
                raise ValueError("general engine requires odd discriminant factors")
            if pp.e != n - 1:
                raise ValueError(
                    f"prime {pp.q} appears to the power {pp.e}, expected |y|-1 = {n - 1}"
                )
            if (pp.q - 1) % n != 0:
                raise ValueError(f"prime {pp.q} incompatible with order {n}")
            sign *= (1 if pp.q % 4 == 1 else -1) ** (n - 1)
            entries.append((pp.q, y))
        if sign != (1 if d > 0 else -1):
            raise ValueError(f"sign of {d} does not match its prime stars")
    return RamAssignment(ext, tuple(entries))


def infinite_place_ok(ext: CentralExtension, fact: DiscFactorization) -> bool:
    """Sign condition at the infinite place: the product of y^(|y|/2) over
    negative factors must land in Y_E."""
    gab = ext.gab
    acc = gab.zero()
    for y, d in fact.factors:
        if d < 0:
            n = elem_order(gab, y)
            if n % 2 != 0:
                raise ValueError(f"negative factor {d} at odd-order {y}")
            acc = gab.add(acc, gab.smul(n // 2, y))
    return acc in ext.y_set()


def frobenius_pairing_sum(ext: CentralExtension, assignment: RamAssignment, p: int) -> Elem:
    """Character-weighted commutator sum at a ramified prime p, with the
    characters taken mod exp(A) as in the factorized existence criterion.

    The self term q = p has vanishing pairing and is omitted.
    """
    y_p = assignment.image_of(p)
    gab, a = ext.gab, ext.a
    n = a.exponent
    acc = a.zero()
    for q, y_q in assignment.entries:
        if q == p:
            continue
        b_q = elem_order(gab, y_q) - 1
        chi = power_residue_char(p, PrimePower(q, b_q), n)
        acc = a.add(acc, a.smul(chi, ext.pairing(y_q, y_p)))
    return acc


def frobenius_pairing_sum_direct(
    ext: CentralExtension, assignment: RamAssignment, p: int
) -> Elem:
    """Independent evaluation: assemble the Frobenius image coordinatewise
    in the product of the <y_q> and pair it with the inertia image, i.e.
    weight each pairing by the discrete-log class of p mod |y_q|."""
    y_p = assignment.image_of(p)
    gab, a = ext.gab, ext.a
    acc = a.zero()
    for q, y_q in assignment.entries:
        if q == p:
            continue
        n_q = elem_order(gab, y_q)
        k = power_residue_char(p, PrimePower(q, n_q - 1), n_q)
        acc = a.add(acc, a.smul(k, ext.pairing(y_q, y_p)))
    return acc


def has_unramified_lift(
    ext: CentralExtension, assignment: RamAssignment, check_infinity: bool = False
):
    """Whether the assignment admits an unramified solution: every
    Frobenius pairing sum vanishes (and, optionally, the infinite-place
    sign condition holds).

    Returns (bool, failing_primes).  Decisions use the intrinsic
    (discrete-log) evaluation; a disagreement with the literal mod-exp(A)
    character sum is possible only for composite exponents and is logged,
    never silently resolved.
    """
    failing = []
    for p in assignment.primes:
        direct = frobenius_pairing_sum_direct(ext, assignment, p)
        literal = frobenius_pairing_sum(ext, assignment, p)
        if literal != direct:
            logger.warning(
                "character scaling mismatch at p=%d: literal %s vs direct %s",
                p,
                literal,
                direct,
            )
        if direct != ext.a.zero():
            failing.append(p)
    ok = not failing
    if ok and check_infinity:
        ok = infinite_place_ok(ext, factorization_of(assignment))
    return ok, failing


@dataclass(frozen=True)
class BaseFieldData:
    """The abelian base field K: a subgroup H of Gab (K corresponds to
    Gab/H) and, per ramified prime q, the inertia image in Gab/H given by
    a coset representative in Gab coordinates."""

    h_sub: frozenset
    primes: tuple[tuple[int, Elem], ...]

    def validate(self, ext: CentralExtension):
        gab = ext.gab
        if not is_subgroup(gab, self.h_sub):
            raise ValueError("H is not a subgroup of Gab")
        if not self.primes:
            raise ValueError("base field data needs at least one ramified prime")
        gens = list(self.h_sub) + [g for _, g in self.primes]
        if len(subgroup_generated(gab, gens)) != gab.order:
            raise ValueError("inertia images do not generate Gab/H: K is too small")
        for q, g in self.primes:
            if not is_prime(q) or q == 2:
                raise ValueError(f"{q} is not an odd prime")
            if g in self.h_sub:
                raise ValueError(f"prime {q} is unramified in K (image in H)")
            n = _coset_order(ext, self.h_sub, g)
            if (q - 1) % n != 0:
                raise ValueError(f"inertia order {n} at {q} does not divide {q}-1")

    @classmethod
    def from_json(cls, data: dict, ext: CentralExtension) -> "BaseFieldData":
        h_sub = subgroup_generated(ext.gab, [tuple(g) for g in data["H"]])
        primes = tuple((int(e["q"]), tuple(e["image"])) for e in data["primes"])
        out = cls(h_sub, primes)
        out.validate(ext)
        return out


def _coset_order(ext: CentralExtension, h_sub: frozenset, g: Elem) -> int:
    gab = ext.gab
    n = 1
    cur = g
    while cur not in h_sub:
        cur = gab.add(cur, g)
        n += 1
    return n


def enumerate_assignments(
    ext: CentralExtension,
    h_sub: frozenset,
    kdata: BaseFieldData,
    bound: int = DEFAULT_ASSIGNMENT_BOUND,
):
    """All assignments compatible with the base field: y_q in Y_E outside
    H, congruent to the given inertia image mod H, with the y_q jointly
    generating Gab.  Deterministic order (primes sorted, candidates in
    lexicographic order)."""
    kdata.validate(ext)
    gab = ext.gab
    ye = ext.y_set()
    candidates = []
    prime_list = sorted(kdata.primes)
    for q, g in prime_list:
        cands = sorted(
            y
            for y in ye
            if y not in h_sub
            and gab.sub(y, g) in h_sub
            and (q - 1) % elem_order(gab, y) == 0
        )
        if not cands:
            return
        candidates.append(cands)
    total = prod(len(c) for c in candidates)
    if total > bound:
        raise ValueError(f"{total} candidate assignments exceed bound {bound}")
    surjective_cache: dict[tuple, bool] = {}
    import itertools

    for choice in itertools.product(*candidates):
        key = tuple(sorted(set(choice)))
        ok = surjective_cache.get(key)
        if ok is None:
            ok = generates(gab, key)
            surjective_cache[key] = ok
        if ok:
            yield RamAssignment(ext, tuple((q, y) for (q, _), y in zip(prime_list, choice)))


def count_extensions(ext: CentralExtension, assignment: RamAssignment) -> int:
    """Number of unramified solutions per extension class for a witness
    assignment: prod_y #A[|y|]^omega(d_y) over the automorphism-stabilizer
    order times #Hom(Gab, A).  Raises if the formula is not integral."""
    gab, a = ext.gab, ext.a
    fact = factorization_of(assignment)
    numerator = 1
    for y, d in fact.factors:
        n_primes = len(factorize(abs(d)))
        numerator *= torsion_count(a, elem_order(gab, y)) ** n_primes
    denominator = aut_stabilizer_order(ext) * hom_count(gab, a)
    q, r = divmod(numerator, denominator)
    if r != 0 or q <= 0:
        raise ArithmeticError(
            f"counting formula inconsistency: {numerator}/{denominator}"
        )
    return q


@dataclass(frozen=True)
class Witness:
    assignment: RamAssignment
    factorization: DiscFactorization
    count_per_class: int
    classes: int

    def to_json(self) -> dict:
        return {
            "assignment": {
                str(q): list(y) for q, y in self.assignment.entries
            },
            "factorization": {
                ",".join(map(str, y)): d for y, d in self.factorization.factors
            },
            "count_per_class": self.count_per_class,
            "classes": self.classes,
        }


@dataclass(frozen=True)
class Report:
    exists: bool
    witnesses: tuple[Witness, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "exists": self.exists,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def classify(
    ext: CentralExtension,
    h_sub: frozenset,
    kdata: BaseFieldData,
    check_infinity: bool = False,
    bound: int = DEFAULT_ASSIGNMENT_BOUND,
) -> Report:
    """Existence report: every enumerated assignment that passes the
    unramified-lift test, with its factorization and counts."""
    witnesses = []
    for assignment in enumerate_assignments(ext, h_sub, kdata, bound=bound):
        ok, _ = has_unramified_lift(ext, assignment, check_infinity=check_infinity)
        if ok:
            witnesses.append(
                Witness(
                    assignment,
                    factorization_of(assignment),
                    count_extensions(ext, assignment),
                    class_orbit_size(ext),
                )
            )
    witnesses.sort(key=lambda w: w.assignment.entries)
    return Report(bool(witnesses), tuple(witnesses))
