"""The independent check: binary quadratic forms and Redei matrices.

Class groups of imaginary quadratic fields computed from scratch by
form composition, compared against genus theory and the Redei 4-rank.
Nothing here shares code with the embedding-problem engine, which is
the point.
"""

from lemfact import (
    class_group_structure,
    class_number,
    prime_discriminants,
    rank_sweep,
    redei_matrix,
    redei_rank,
    reduced_forms,
)

for d in (-23, -420, -3299, -4027):
    group, hnum = class_group_structure(d)
    print(f"d = {d}: h = {hnum}, Cl(d) = {group.moduli}")
    if hnum <= 8:
        for f in reduced_forms(d):
            print(f"  reduced form ({f.a}, {f.b}, {f.c})")

print()
d = -1155
parts = prime_discriminants(d)
print(f"Redei matrix of d = {d} over prime discriminants {parts}:")
for row in redei_matrix(d):
    print("  " + format(row, f"0{len(parts)}b"))
print(f"Redei 4-rank: {redei_rank(d)}")
print()

sweep = rank_sweep(-2000, -3)
agree = sum(
    1
    for dd, (r2, r4) in sweep.items()
    if r2 == len(prime_discriminants(dd)) - 1 and r4 == redei_rank(dd)
)
print(f"sweep -2000 < d < -3: {len(sweep)} fundamental discriminants, "
      f"{agree} agree with genus theory and Redei (expected all)")
assert agree == len(sweep)
assert all(class_number(dd) >= 1 for dd in list(sweep)[:50])
