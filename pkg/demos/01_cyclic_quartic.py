"""Walk through the C4 story for a few real quadratic fields.

For an odd fundamental discriminant d, a cyclic quartic field containing
Q(sqrt(d)) and unramified over it exists exactly when d splits into two
coprime factors that are mutual quadratic residues.  The same answer
falls out of the general engine run on the D4-type central extension,
and (for imaginary d) out of the 4-rank of the form class group.
"""

from lemfact import (
    BaseFieldData,
    c4_criterion,
    classify,
    factorize,
    four_rank,
    preset,
)

ext, h = preset("C4_D4")

for d in (205, 65, -84, 1885, 8633):
    crit = c4_criterion(d)
    print(f"d = {d}: exists = {crit.exists}")
    for w in crit.witnesses:
        print(f"  split {w.parts}  symbol checks {w.symbol_checks}")
    if crit.exists:
        print(f"  unramified C4 extensions per witness: {crit.count_per_witness}")

    if d % 2 != 0:
        kdata = BaseFieldData(h, tuple((pp.q, (0, 1)) for pp in factorize(abs(d))))
        rep = classify(ext, h, kdata)
        print(f"  engine agrees: exists = {rep.exists}, "
              f"{len(rep.witnesses)} labeled witnesses")

    if d < 0:
        r4 = four_rank(d)
        print(f"  class group oracle: 4-rank = {r4} "
              f"({'consistent' if (r4 >= 1) == crit.exists else 'MISMATCH'})")
    print()
