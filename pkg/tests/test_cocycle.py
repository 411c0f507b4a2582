import itertools
import json
import random
from math import gcd

import pytest

from lemfact.abelian import (
    AbGroup,
    elem_order,
    enumerate_automorphisms,
    subgroup_generated,
    torsion_subgroup,
)
from lemfact.cocycle import (
    CentralExtension,
    _bilinear_table,
    _carry_table,
    add_tables,
    aut_stabilizer_order,
    class_orbit_size,
    coboundary_table,
    cohomologous,
    enumerate_central_extensions,
    is_admissible_pair,
    is_coboundary,
    map_table,
    order_preserving_lifts,
    preset,
    quaternion_pair_class_count,
    quaternion_pair_hits,
    split_extension,
    sub_tables,
)

SMALL_PAIRS = [
    (AbGroup((2,)), AbGroup((2,))),
    (AbGroup((2, 2)), AbGroup((2,))),
    (AbGroup((4,)), AbGroup((2,))),
    (AbGroup((3,)), AbGroup((3,))),
    (AbGroup((2, 4)), AbGroup((2,))),
    (AbGroup((2, 2)), AbGroup((4,))),
    (AbGroup((2, 2, 2)), AbGroup((2,))),
    (AbGroup((6,)), AbGroup((2, 2))),
]


def random_cocycle(gab, a, rng):
    """Random linear combination of carry and bilinear generator tables
    plus a random coboundary: covers every class and many representatives."""
    table = {}
    for i, m in enumerate(gab.moduli):
        av = tuple(rng.randrange(n) for n in a.moduli)
        table = add_tables(a, table, _carry_table(gab, a, i, av))
    for i in range(gab.rank):
        for j in range(i + 1, gab.rank):
            g = gcd(gab.moduli[i], gab.moduli[j])
            bv = rng.choice(sorted(torsion_subgroup(a, g)))
            table = add_tables(a, table, _bilinear_table(gab, a, i, j, bv))
    phi = {
        g: tuple(rng.randrange(n) for n in a.moduli)
        for g in gab.elements()
        if g != gab.zero()
    }
    phi[gab.zero()] = a.zero()
    return add_tables(a, table, coboundary_table(gab, a, phi))


@pytest.fixture(scope="module")
def rng():
    return random.Random(991)


def test_random_cocycles_satisfy_identity(rng):
    for gab, a in SMALL_PAIRS:
        for _ in range(20):
            ext = CentralExtension(gab, a, random_cocycle(gab, a, rng))
            ext.check_cocycle()


def test_preset_cocycles_valid():
    for name, param in (("C4_D4", None), ("H8_pair", None), ("Heisenberg", 3), ("Heisenberg", 5)):
        ext, _ = preset(name, param)
        ext.check_cocycle()


def test_pairing_bilinear_and_antisymmetric(rng):
    cases = 0
    for gab, a in SMALL_PAIRS:
        for _ in range(8):
            ext = CentralExtension(gab, a, random_cocycle(gab, a, rng))
            els = list(gab.elements())
            for _ in range(20):
                x, xp, y = (rng.choice(els) for _ in range(3))
                assert ext.pairing(gab.add(x, xp), y) == a.add(
                    ext.pairing(x, y), ext.pairing(xp, y)
                )
                assert ext.pairing(y, gab.add(x, xp)) == a.add(
                    ext.pairing(y, x), ext.pairing(y, xp)
                )
                assert ext.pairing(x, y) == a.neg(ext.pairing(y, x))
                assert ext.pairing(x, x) == a.zero()
                cases += 1
    assert cases >= 1000


def test_pairing_equals_total_group_commutator(rng):
    for gab, a in SMALL_PAIRS[:5]:
        ext = CentralExtension(gab, a, random_cocycle(gab, a, rng))
        for x in gab.elements():
            for y in gab.elements():
                lx, ly = (a.zero(), x), (a.zero(), y)
                xy = ext.ext_mul(lx, ly)
                yx = ext.ext_mul(ly, lx)
                comm = (a.sub(xy[0], yx[0]), gab.sub(xy[1], yx[1]))
                assert comm == (ext.pairing(x, y), gab.zero())


def test_d4_preset_basics():
    ext, h = preset("C4_D4", None)
    assert ext.gab.moduli == (2, 2)
    assert ext.a.moduli == (2,)
    assert ext.pairing((1, 0), (0, 1)) == (1,)
    assert ext.y_set() == {(0, 0), (0, 1), (1, 1)}
    assert ext.commutator_subgroup() == {(0,), (1,)}
    ok, _ = is_admissible_pair(ext, h)
    assert ok
    # the total group is D4: element orders 1,2,2,2,2,2,4,4
    orders = sorted(ext.ext_order(x) for x in ext.ext_elements())
    assert orders == [1, 2, 2, 2, 2, 2, 4, 4]


def test_c4_class_over_c2():
    gab, a = AbGroup((2,)), AbGroup((2,))
    table = {((1,), (1,)): (1,)}
    ext = CentralExtension(gab, a, table)
    ext.check_cocycle()
    assert ext.y_set() == {(0,)}
    assert not is_coboundary(gab, a, table)[0]
    orders = sorted(ext.ext_order(x) for x in ext.ext_elements())
    assert orders == [1, 2, 4, 4]


@pytest.mark.parametrize("ell", [3, 5])
def test_heisenberg_preset(ell):
    ext, h = preset("Heisenberg", ell)
    assert ext.gab.moduli == (ell, ell, ell)
    assert ext.a.moduli == (ell,)
    z = (1,)
    e1, e2, e3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    assert ext.pairing(e1, e2) == z
    assert ext.pairing(e1, e3) == z
    assert ext.pairing(e2, e3) == z
    assert ext.y_set() == frozenset(ext.gab.elements())
    assert ext.commutator_subgroup() == {(i,) for i in range(ell)}
    assert h == frozenset((i, j, 0) for i in range(ell) for j in range(ell))
    ok, _ = is_admissible_pair(ext, h)
    assert ok
    assert aut_stabilizer_order(ext) == 1
    assert class_orbit_size(ext) == ell - 1
    # H(l^3) inside E: the preimage of H has exponent ell and is nonabelian
    preim = [(av, g) for av in ext.a.elements() for g in h]
    assert all(ext.ext_order(x) in (1, ell) for x in preim)


@pytest.mark.parametrize("ell", [3, 5])
def test_heisenberg_determinant_identity(ell):
    # pairing of two lifts with sigma-component 1 is the 2x2 determinant
    # det[[a1-1, b1+1], [a2-1, b2+1]] mod ell
    ext, _ = preset("Heisenberg", ell)
    for a1, b1, a2, b2 in itertools.product(range(ell), repeat=4):
        lhs = ext.pairing((a1, b1, 1), (a2, b2, 1))
        det = ((a1 - 1) * (b2 + 1) - (a2 - 1) * (b1 + 1)) % ell
        assert lhs == (det,)


def test_split_extension_trivialities():
    gab, a = AbGroup((2, 3)), AbGroup((4,))
    ext = split_extension(gab, a)
    assert all(
        ext.pairing(x, y) == a.zero()
        for x in gab.elements()
        for y in gab.elements()
    )
    assert ext.y_set() == frozenset(gab.elements())
    assert is_coboundary(gab, a, ext.table)[0]
    assert class_orbit_size(ext) == 1


def brute_force_coboundary(gab, a, table):
    zero = gab.zero()
    els = [g for g in gab.elements() if g != zero]
    for values in itertools.product(list(a.elements()), repeat=len(els)):
        phi = dict(zip(els, values))
        phi[zero] = a.zero()
        if all(
            table.get((g, h), a.zero())
            == a.sub(a.add(phi[g], phi[h]), phi[gab.add(g, h)])
            for g in gab.elements()
            for h in gab.elements()
        ):
            return True
    return False


def test_is_coboundary_matches_brute_force(rng):
    pairs = [
        (AbGroup((2,)), AbGroup((2,))),
        (AbGroup((2,)), AbGroup((4,))),
        (AbGroup((2, 2)), AbGroup((2,))),
        (AbGroup((4,)), AbGroup((2,))),
        (AbGroup((3,)), AbGroup((3,))),
        (AbGroup((2, 2)), AbGroup((2, 2))),
        (AbGroup((8,)), AbGroup((2,))),
        (AbGroup((2, 4)), AbGroup((3,))),
    ]
    cases = 0
    for gab, a in pairs:
        trials = 1500 // len(pairs)
        for _ in range(trials):
            table = random_cocycle(gab, a, rng)
            got, phi = is_coboundary(gab, a, table)
            assert got == brute_force_coboundary(gab, a, table)
            if got:
                for g in gab.elements():
                    for h in gab.elements():
                        assert table.get((g, h), a.zero()) == a.sub(
                            a.add(phi[g], phi[h]), phi[gab.add(g, h)]
                        )
            cases += 1
    assert cases >= 1000


def test_y_set_is_class_invariant(rng):
    for gab, a in SMALL_PAIRS[:6]:
        for _ in range(10):
            table = random_cocycle(gab, a, rng)
            phi = {
                g: tuple(rng.randrange(n) for n in a.moduli) for g in gab.elements()
            }
            phi[gab.zero()] = a.zero()
            shifted = add_tables(a, table, coboundary_table(gab, a, phi))
            e1 = CentralExtension(gab, a, table)
            e2 = CentralExtension(gab, a, shifted)
            assert e1.y_set() == e2.y_set()
            assert cohomologous(e1, e2)


def test_orbit_times_stabilizer(rng):
    for gab, a in SMALL_PAIRS:
        n_aut = len(enumerate_automorphisms(a))
        for _ in range(5):
            ext = CentralExtension(gab, a, random_cocycle(gab, a, rng))
            assert class_orbit_size(ext) * aut_stabilizer_order(ext) == n_aut


@pytest.mark.parametrize(
    "gab_moduli,a_moduli,classes",
    [((2,), (2,), 2), ((2, 2), (2,), 8), ((3,), (3,), 3), ((2,), (4,), 2), ((4,), (2,), 2), ((2, 3), (6,), 6)],
)
def test_enumerate_central_extensions_class_counts(gab_moduli, a_moduli, classes):
    # |H^2(Gab, A)| = prod |A/m_i A| * prod_{i<j} |A[gcd(m_i, m_j)]|
    got = enumerate_central_extensions(AbGroup(gab_moduli), AbGroup(a_moduli))
    assert len(got) == classes
    for e1, e2 in itertools.combinations(got, 2):
        assert not cohomologous(e1, e2)


def test_lemma_32_pullback_pairing_is_coordinatewise():
    # pull the extension back along the product of the cyclic groups
    # generated by Y_E: the pairing of tuples is the sum of the
    # coordinate pairings
    for name, param in (("C4_D4", None), ("Heisenberg", 3)):
        ext, _ = preset(name, param)
        gab, a = ext.gab, ext.a
        ys = sorted(y for y in ext.y_set() if y != gab.zero())[:4]
        prod_group = AbGroup(tuple(elem_order(gab, y) for y in ys))

        def push(u):
            out = gab.zero()
            for coef, y in zip(u, ys):
                out = gab.add(out, gab.smul(coef, y))
            return out

        pull = {
            (u, v): ext.c(push(u), push(v))
            for u in prod_group.elements()
            for v in prod_group.elements()
        }
        pulled = CentralExtension(prod_group, a, pull)
        pulled.check_cocycle()
        for u in prod_group.elements():
            for v in prod_group.elements():
                acc = a.zero()
                for i in range(len(ys)):
                    for j in range(len(ys)):
                        term = a.smul(u[i] * v[j], ext.pairing(ys[i], ys[j]))
                        acc = a.add(acc, term)
                assert pulled.pairing(u, v) == acc


def test_order_preserving_lifts_d4():
    ext, h = preset("C4_D4", None)
    lifts = list(order_preserving_lifts(ext, h))
    # reflections: lifts of order 2 over the two cosets outside <r>
    assert all(ext.ext_order(x) == elem_order(ext.gab, x[1]) for x in lifts)
    assert all(x[1] not in h for x in lifts)
    assert ext.ext_generated(lifts) == frozenset(ext.ext_elements())


def test_admissibility_rejects_full_h():
    ext, _ = preset("C4_D4", None)
    full = frozenset(ext.gab.elements())
    ok, diag = is_admissible_pair(ext, full)
    assert not ok
    assert diag


def test_quaternion_hits_and_class_count():
    hits = quaternion_pair_hits()
    assert len(hits) == 28
    for ext, h_sub in hits[:3]:
        orders = sorted(ext.ext_order(x) for x in ext.ext_elements())
        assert orders.count(4) == 8 and orders.count(2) == 7
        preim = [(av, g) for av in ext.a.elements() for g in h_sub]
        sub = ext.ext_generated(preim)
        inv = [x for x in sub if ext.ext_order(x) == 2]
        assert len(sub) == 8 and len(inv) == 1
    assert quaternion_pair_class_count() == 1


def test_map_table_respects_automorphism():
    gab, a = AbGroup((2, 2)), AbGroup((4,))
    rng2 = random.Random(5)
    table = random_cocycle(gab, a, rng2)
    neg = lambda v: a.neg(v)
    mapped = map_table(neg, table)
    e = CentralExtension(gab, a, mapped)
    e.check_cocycle()
    base = CentralExtension(gab, a, table)
    for x in gab.elements():
        for y in gab.elements():
            assert e.pairing(x, y) == a.neg(base.pairing(x, y))


def test_json_round_trip():
    for name, param in (("C4_D4", None), ("Heisenberg", 3)):
        ext, _ = preset(name, param)
        data = json.loads(ext.dumps())
        back = CentralExtension.from_json(data)
        assert back.gab == ext.gab and back.a == ext.a
        assert back.dumps() == ext.dumps()


def test_from_json_rejects_bad_tables():
    bad = {"Gab": [2], "A": [2], "cocycle": [[[0], [0]], [[0], [1]]]}
    # c(g,0) != 0: not normalized
    bad["cocycle"] = [[[0], [0]], [[1], [1]]]
    with pytest.raises(ValueError):
        CentralExtension.from_json(bad)
    with pytest.raises(ValueError):
        CentralExtension.from_json({"Gab": [2], "A": [2], "cocycle": [[[0]]]})
