"""Quaternion extensions of biquadratic fields.

Over Gab = C2 x C2 x C2 with kernel C2 there is, up to equivalence and
symmetry, exactly one central extension class admitting a quaternion
pair.  For a totally real biquadratic field cut out by a 3-part coprime
splitting d = d1 d2 d3, existence of an unramified H8 extension is
governed by the rotation symbols (d_i d_j / p_k), and when witnesses
exist each extension class carries 2^(omega - 3) of them.
"""

from lemfact import (
    BaseFieldData,
    classify,
    factorize,
    h8_criterion,
    preset,
    quaternion_pair_class_count,
    quaternion_pair_hits,
)

hits = quaternion_pair_hits()
print(f"admissible (class, H) pairs over (C2^3, C2): {len(hits)}")
print(f"equivalence classes under Aut(Gab): {quaternion_pair_class_count()}")
print()

ext, h = preset("H8_pair")
rep_outside = next(g for g in sorted(ext.gab.elements()) if g not in h)

for d in (-420, 1820, 105, 34689):
    crit = h8_criterion(d)
    print(f"d = {d}: exists = {crit.exists}")
    for w in crit.witnesses:
        print(f"  split {w.parts}")
    if crit.exists:
        print(f"  count per witness: {crit.count_per_witness}")
    if d > 0 and d % 4 == 1:
        kdata = BaseFieldData(h, tuple((pp.q, rep_outside) for pp in factorize(d)))
        rep = classify(ext, h, kdata)
        print(f"  engine: {len(rep.witnesses)} witnesses, "
              f"counts {[w.count_per_class for w in rep.witnesses]}")
    print()
