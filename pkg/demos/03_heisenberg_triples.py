"""Unramified Heisenberg extensions over a degree-ell cyclic field.

Take three primes p, q, r congruent to 1 mod ell.  Whether the cyclic
field of conductor pqr admits an unramified extension with Galois group
the Heisenberg group of order ell^3 comes down to three linear equations
in the six ell-th power residue characters among p, q, r.  The general
engine reproduces the verdict prime by prime.
"""

from lemfact import (
    BaseFieldData,
    classify,
    heisenberg_criterion,
    is_prime,
    preset,
)

ell = 3
ext, h = preset("Heisenberg", ell)
pool = [p for p in range(ell + 1, 200) if is_prime(p) and p % ell == 1]
print(f"ell = {ell}, prime pool: {pool}")
print()

import itertools

shown = 0
for triple in itertools.combinations(pool, 3):
    crit = heisenberg_criterion(ell, *triple)
    kdata = BaseFieldData(h, tuple((q, (0, 0, 1)) for q in triple))
    rep = classify(ext, h, kdata)
    assert rep.exists == crit.exists
    if crit.exists:
        print(f"(p, q, r) = {triple}: solutions {crit.solutions}")
        print(f"  characters {crit.characters}")
        print(f"  engine witnesses: {len(rep.witnesses)}, "
              f"count per class {rep.witnesses[0].count_per_class}, "
              f"classes in the orbit {rep.witnesses[0].classes}")
        shown += 1
        if shown == 4:
            break

print()
print(f"expected solution count when nonempty: ell - 1 = {ell - 1}")
