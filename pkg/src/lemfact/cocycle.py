"""Central extensions of finite abelian groups via normalized 2-cocycles.

An extension of Gab by A is stored as an explicit table c(g,h) in A with
c(0,g) = c(g,0) = 0.  The total group E is the set A x Gab with
(a1,g1)*(a2,g2) = (a1+a2+c(g1,g2), g1+g2); it is materialized on demand.
All class-level questions (pairing, lift orders, coboundary equivalence)
are cocycle computations.
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache

from .abelian import (
    AbGroup,
    Elem,
    elem_order,
    enumerate_automorphisms,
    is_subgroup,
    multiple_subgroup,
    solve_modular_linear,
    subgroup_generated,
)

Cocycle = dict[tuple[Elem, Elem], Elem]


class CentralExtension:
    def __init__(self, gab: AbGroup, a: AbGroup, table: Cocycle):
        self.gab = gab
        self.a = a
        self.table = table
        self._ye = None
        self._commutator = None
        self._stab_order = None

    def c(self, g: Elem, h: Elem) -> Elem:
        v = self.table.get((g, h))
        return v if v is not None else self.a.zero()

    def check_cocycle(self):
        """Raise unless the table is normalized and satisfies the
        2-cocycle identity.  Cubic in |Gab|; call it in tests, not on
        every construction."""
        zero_a = self.a.zero()
        zero_g = self.gab.zero()
        els = list(self.gab.elements())
        for g in els:
            if self.c(zero_g, g) != zero_a or self.c(g, zero_g) != zero_a:
                raise ValueError(f"cocycle not normalized at {g}")
        add = self.gab.add
        aadd = self.a.add
        for g in els:
            for h in els:
                gh = add(g, h)
                cgh = self.c(g, h)
                for k in els:
                    if aadd(cgh, self.c(gh, k)) != aadd(self.c(h, k), self.c(g, add(h, k))):
                        raise ValueError(f"cocycle identity fails at {(g, h, k)}")

    # --- pairing and restriction ------------------------------------

    def pairing(self, x: Elem, y: Elem) -> Elem:
        """Commutator of lifts of x and y: c(x,y) - c(y,x)."""
        self.gab.check_elem(x)
        self.gab.check_elem(y)
        return self.a.sub(self.c(x, y), self.c(y, x))

    def power_class(self, y: Elem) -> Elem:
        """A-part of the |y|-th power of the canonical lift (0, y)."""
        n = elem_order(self.gab, y)
        acc = self.a.zero()
        cur = y
        for _ in range(n - 1):
            acc = self.a.add(acc, self.c(cur, y))
            cur = self.gab.add(cur, y)
        return acc

    def y_set(self) -> frozenset:
        """Y_E: elements whose cyclic restriction class vanishes, i.e.
        power_class(y) lies in |y|*A."""
        if self._ye is None:
            by_order: dict[int, frozenset] = {}
            out = []
            for y in self.gab.elements():
                n = elem_order(self.gab, y)
                if n not in by_order:
                    by_order[n] = multiple_subgroup(self.a, n)
                if self.power_class(y) in by_order[n]:
                    out.append(y)
            self._ye = frozenset(out)
        return self._ye

    def commutator_subgroup(self) -> frozenset:
        """Subgroup of A generated by all pairing values; equals [E,E]."""
        if self._commutator is None:
            gens = {self.pairing(x, y) for x in self.gab.elements() for y in self.gab.elements()}
            self._commutator = subgroup_generated(self.a, gens)
        return self._commutator

    # --- total group -------------------------------------------------

    def ext_zero(self):
        return (self.a.zero(), self.gab.zero())

    def ext_mul(self, x, y):
        a1, g1 = x
        a2, g2 = y
        return (self.a.add(self.a.add(a1, a2), self.c(g1, g2)), self.gab.add(g1, g2))

    def ext_elements(self):
        return ((a, g) for a in self.a.elements() for g in self.gab.elements())

    def ext_order(self, x) -> int:
        zero = self.ext_zero()
        cur = x
        n = 1
        while cur != zero:
            cur = self.ext_mul(cur, x)
            n += 1
        return n

    def ext_generated(self, gens) -> frozenset:
        seen = {self.ext_zero()}
        frontier = [self.ext_zero()]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.ext_mul(x, g)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    # --- serialization ----------------------------------------------

    def to_json(self) -> dict:
        els = list(self.gab.elements())
        return {
            "Gab": list(self.gab.moduli),
            "A": list(self.a.moduli),
            "cocycle": [[list(self.c(g, h)) for h in els] for g in els],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CentralExtension":
        gab = AbGroup(tuple(data["Gab"]))
        a = AbGroup(tuple(data["A"]))
        els = list(gab.elements())
        rows = data["cocycle"]
        if len(rows) != len(els) or any(len(r) != len(els) for r in rows):
            raise ValueError("cocycle array has wrong shape")
        table = {}
        for i, g in enumerate(els):
            for j, h in enumerate(els):
                v = tuple(rows[i][j])
                if not a.contains(v):
                    raise ValueError(f"entry {v} not reduced in A")
                if v != a.zero():
                    table[(g, h)] = v
        ext = cls(gab, a, table)
        ext.check_cocycle()
        return ext

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# --- table arithmetic ----------------------------------------------------

def add_tables(a: AbGroup, t1: Cocycle, t2: Cocycle) -> Cocycle:
    out = dict(t1)
    for k, v in t2.items():
        w = a.add(out.get(k, a.zero()), v)
        if w == a.zero():
            out.pop(k, None)
        else:
            out[k] = w
    return out


def sub_tables(a: AbGroup, t1: Cocycle, t2: Cocycle) -> Cocycle:
    neg = {k: a.neg(v) for k, v in t2.items()}
    return add_tables(a, t1, neg)


def map_table(alpha, t: Cocycle) -> Cocycle:
    """Push a table forward along an endomorphism of A."""
    return {k: alpha(v) for k, v in t.items()}


# --- coboundary decision -------------------------------------------------

def _class_invariants(gab: AbGroup, a: AbGroup, table: Cocycle):
    """Cohomology invariants of a cocycle class: the commutator pairing on
    the standard basis and the lift-power sums of the basis vectors (the
    latter read modulo m_i*A).  Both vanish on coboundaries."""
    ext = CentralExtension(gab, a, table)
    k = gab.rank
    basis = [tuple(1 if t == i else 0 for t in range(k)) for i in range(k)]
    betas = tuple(ext.pairing(basis[i], basis[j]) for i in range(k) for j in range(i + 1, k))
    sums = []
    for i in range(k):
        acc = a.zero()
        cur = basis[i]
        for _ in range(gab.moduli[i] - 1):
            acc = a.add(acc, ext.c(cur, basis[i]))
            cur = gab.add(cur, basis[i])
        sums.append(acc)
    return betas, tuple(sums)


def is_coboundary(gab: AbGroup, a: AbGroup, table: Cocycle):
    """Decide whether c(g,h) = phi(g) + phi(h) - phi(g+h) for some
    1-cochain phi with phi(0) = 0.

    Returns (True, phi) with phi a dict Gab -> A, or (False, None).
    The final decision runs through solve_modular_linear; a vanishing
    check of the class invariants screens out the bulk of the negatives
    without building the linear system.
    """
    zero_a = a.zero()
    if not table or all(v == zero_a for v in table.values()):
        return True, {g: zero_a for g in gab.elements()}
    betas, sums = _class_invariants(gab, a, table)
    if any(b != zero_a for b in betas):
        return False, None
    for i, s in enumerate(sums):
        if s not in multiple_subgroup(a, gab.moduli[i]):
            return False, None

    ext = CentralExtension(gab, a, table)
    els = [g for g in gab.elements() if g != gab.zero()]
    index = {g: i for i, g in enumerate(els)}
    n_unknown = len(els)
    witness = {gab.zero(): zero_a}
    cols_per_elem = []
    # one independent system per coordinate of A
    for coord, modulus in enumerate(a.moduli):
        rows, rhs, mods = [], [], []
        for g in els:
            for h in els:
                row = [0] * n_unknown
                row[index[g]] += 1
                row[index[h]] += 1
                gh = gab.add(g, h)
                if gh != gab.zero():
                    row[index[gh]] -= 1
                rows.append(row)
                rhs.append(ext.c(g, h)[coord])
                mods.append(modulus)
        sol = solve_modular_linear(rows, rhs, mods)
        if sol is None:
            return False, None
        cols_per_elem.append([v % modulus for v in sol])
    for g in els:
        witness[g] = tuple(cols_per_elem[coord][index[g]] for coord in range(a.rank))
    return True, witness


def coboundary_table(gab: AbGroup, a: AbGroup, phi: dict) -> Cocycle:
    """The 2-coboundary of a 1-cochain phi (with phi(0) = 0)."""
    table = {}
    for g in gab.elements():
        for h in gab.elements():
            v = a.sub(a.add(phi[g], phi[h]), phi[gab.add(g, h)])
            if v != a.zero():
                table[(g, h)] = v
    return table


def cohomologous(e1: CentralExtension, e2: CentralExtension) -> bool:
    if e1.gab != e2.gab or e1.a != e2.a:
        raise ValueError("extensions live over different groups")
    ok, _ = is_coboundary(e1.gab, e1.a, sub_tables(e1.a, e1.table, e2.table))
    return ok


# --- automorphism action -------------------------------------------------

def aut_stabilizer_order(ext: CentralExtension) -> int:
    """Number of automorphisms of A fixing the class [c] (i.e. alpha∘c
    cohomologous to c)."""
    if ext._stab_order is not None:
        return ext._stab_order
    count = 0
    for alpha in enumerate_automorphisms(ext.a):
        moved = map_table(alpha, ext.table)
        ok, _ = is_coboundary(ext.gab, ext.a, sub_tables(ext.a, moved, ext.table))
        if ok:
            count += 1
    ext._stab_order = count
    return count


def class_orbit_size(ext: CentralExtension) -> int:
    n_aut = len(enumerate_automorphisms(ext.a))
    stab = aut_stabilizer_order(ext)
    assert n_aut % stab == 0
    return n_aut // stab


# --- admissible pairs ----------------------------------------------------

def order_preserving_lifts(ext: CentralExtension, h_sub: frozenset):
    """Elements x of E with |x| = |pi(x)| and pi(x) outside H: the
    possible inertia generators of an extension unramified over the field
    cut out by Gab/H."""
    for x in ext.ext_elements():
        g = x[1]
        if g in h_sub:
            continue
        if ext.ext_order(x) == elem_order(ext.gab, g):
            yield x


def is_admissible_pair(ext: CentralExtension, h_sub: frozenset):
    """Whether (pi^{-1}(H), E) is an admissible pair: the total group must
    be generated by lifts x with |x| = |pi(x)| and pi(x) outside H.

    Returns (bool, diagnostic string).
    """
    if not is_subgroup(ext.gab, h_sub):
        return False, "H is not a subgroup of Gab"
    gens = list(order_preserving_lifts(ext, frozenset(h_sub)))
    if not gens:
        return False, "no order-preserving lifts outside H"
    generated = ext.ext_generated(gens)
    if len(generated) == ext.a.order * ext.gab.order:
        return True, "ok"
    return False, f"lifts generate only {len(generated)} of {ext.a.order * ext.gab.order} elements"


# --- enumeration of H^2 --------------------------------------------------

DESK_H2_BOUND = 2**20


def _carry_table(gab: AbGroup, a: AbGroup, i: int, av: Elem) -> Cocycle:
    """Cocycle inflated from the standard extension of C_{m_i}: value av
    times the carry of coordinate i."""
    table = {}
    m = gab.moduli[i]
    if av == a.zero():
        return table
    for g in gab.elements():
        for h in gab.elements():
            if g[i] + h[i] >= m:
                table[(g, h)] = av
    return table


def _bilinear_table(gab: AbGroup, a: AbGroup, i: int, j: int, bv: Elem) -> Cocycle:
    """Cocycle g_i * h_j * bv; bv must be killed by gcd(m_i, m_j)."""
    table = {}
    if bv == a.zero():
        return table
    for g in gab.elements():
        if g[i] == 0:
            continue
        for h in gab.elements():
            if h[j] == 0:
                continue
            v = a.smul(g[i] * h[j], bv)
            if v != a.zero():
                table[(g, h)] = v
    return table


def enumerate_central_extensions(gab: AbGroup, a: AbGroup, bound: int = DESK_H2_BOUND):
    """One normalized-cocycle representative per class of H^2(Gab, A).

    Candidate tables are sums of inflated cyclic-extension cocycles (one
    per factor of Gab) and basis bilinear cocycles (one per factor pair);
    duplicates are filtered with is_coboundary against previously kept
    representatives.  Deterministic: representatives are kept in candidate
    order, candidates in lexicographic order of their defining data.
    """
    if gab.order**2 * a.order > bound:
        raise ValueError("H^2 enumeration exceeds desk-scale bound")
    k = gab.rank
    a_els = list(a.elements())
    from math import gcd as _gcd

    pair_choices = []
    for i in range(k):
        for j in range(i + 1, k):
            g = _gcd(gab.moduli[i], gab.moduli[j])
            pair_choices.append(
                (i, j, [x for x in a_els if all((g * c) % m == 0 for c, m in zip(x, a.moduli))])
            )
    kept: list[CentralExtension] = []
    for carries in itertools.product(a_els, repeat=k):
        base = {}
        for i, av in enumerate(carries):
            base = add_tables(a, base, _carry_table(gab, a, i, av))
        for bils in itertools.product(*(choices for _, _, choices in pair_choices)):
            table = base
            for (i, j, _), bv in zip(pair_choices, bils):
                table = add_tables(a, table, _bilinear_table(gab, a, i, j, bv))
            cand = CentralExtension(gab, a, table)
            if not any(cohomologous(cand, e) for e in kept):
                kept.append(cand)
    return kept


# --- presets -------------------------------------------------------------

def split_extension(gab: AbGroup, a: AbGroup) -> CentralExtension:
    return CentralExtension(gab, a, {})


def _d4_extension():
    """D4 = <r, s | r^4 = s^2 = 1, srs = r^-1> as a central extension of
    C2 x C2 (images of r, s) by <r^2> = C2, via the section (i,j) -> r^i s^j."""
    gab = AbGroup((2, 2))
    a = AbGroup((2,))

    def mul(x, y):
        # (r^i s^j)(r^k s^l) = r^(i + (-1)^j k) s^(j+l)
        i, j = x
        k, l = y
        return ((i + (k if j == 0 else -k)) % 4, (j + l) % 2)

    table = {}
    for g in gab.elements():
        for h in gab.elements():
            i, j = mul((g[0], g[1]), (h[0], h[1]))
            ref = ((g[0] + h[0]) % 2, (g[1] + h[1]) % 2)
            diff = (i - ref[0]) % 4
            assert diff in (0, 2) and j == ref[1]
            if diff:
                table[(g, h)] = (1,)
    ext = CentralExtension(gab, a, table)
    h_sub = frozenset({(0, 0), (1, 0)})  # <rbar>; preimage is <r> = C4
    return ext, h_sub


def _heisenberg_extension(ell: int):
    """Extension of C_ell^3 (basis xbar, ybar, sigmabar) by C_ell with
    commutator pairing [e_i, e_j] = z for i < j and all lifts of order ell."""
    from .arith import is_prime

    if ell == 2 or not is_prime(ell):
        raise ValueError("Heisenberg preset needs an odd prime")
    gab = AbGroup((ell, ell, ell))
    a = AbGroup((ell,))
    table = {}
    for g in gab.elements():
        for h in gab.elements():
            v = (g[0] * h[1] + g[0] * h[2] + g[1] * h[2]) % ell
            if v:
                table[(g, h)] = (v,)
    ext = CentralExtension(gab, a, table)
    h_sub = frozenset((i, j, 0) for i in range(ell) for j in range(ell))  # <xbar, ybar>
    return ext, h_sub


def _is_quaternion8(ext: CentralExtension, subset) -> bool:
    """Order 8, a unique involution, nonabelian."""
    subset = list(subset)
    if len(subset) != 8:
        return False
    involutions = sum(1 for x in subset if x != ext.ext_zero() and ext.ext_order(x) == 2)
    if involutions != 1:
        return False
    return any(
        ext.ext_mul(x, y) != ext.ext_mul(y, x) for x in subset for y in subset
    )


def _pullback_table(ext: CentralExtension, phi) -> Cocycle:
    """Pull the cocycle back along an automorphism of Gab."""
    table = {}
    for g in ext.gab.elements():
        for h in ext.gab.elements():
            v = ext.c(phi(g), phi(h))
            if v != ext.a.zero():
                table[(g, h)] = v
    return table


@lru_cache(maxsize=None)
def quaternion_pair_hits():
    """All (class, H) pairs over (C2^3, C2) whose middle group contains
    the quaternion group as an index-2 admissible subgroup, in
    deterministic enumeration order."""
    gab = AbGroup((2, 2, 2))
    a = AbGroup((2,))
    index2 = []
    for gens in itertools.combinations([g for g in gab.elements() if g != gab.zero()], 2):
        h = subgroup_generated(gab, gens)
        if len(h) == 4 and h not in index2:
            index2.append(h)
    index2.sort(key=sorted)
    hits = []
    for ext in enumerate_central_extensions(gab, a):
        for h_sub in index2:
            preimage = [(av, g) for av in a.elements() for g in h_sub]
            if _is_quaternion8(ext, preimage) and is_admissible_pair(ext, h_sub)[0]:
                hits.append((ext, h_sub))
                break
    return tuple(hits)


def quaternion_pair_class_count() -> int:
    """Number of quaternion (class, H) hits up to simultaneous relabeling
    of the C2^3 basis: cohomology distinguishes base-changed copies of
    one pair, so uniqueness of the pair means a single orbit here."""
    hits = quaternion_pair_hits()
    gab = AbGroup((2, 2, 2))
    a = AbGroup((2,))
    auts = enumerate_automorphisms(gab, bound=512)
    reps = []
    for ext, h_sub in hits:
        matched = False
        for rext, rh in reps:
            for phi in auts:
                if frozenset(phi(x) for x in h_sub) != rh:
                    continue
                diff = sub_tables(a, _pullback_table(rext, phi), ext.table)
                if is_coboundary(gab, a, diff)[0]:
                    matched = True
                    break
            if matched:
                break
        if not matched:
            reps.append((ext, h_sub))
    return len(reps)


def _h8_pair():
    """Canonical representative of the unique quaternion pair over
    (C2^3, C2): the first hit of the deterministic enumeration."""
    hits = quaternion_pair_hits()
    if not hits:
        raise AssertionError("no quaternion pair found over (C2^3, C2)")
    return hits[0]


_PRESET_NAMES = ("C4_D4", "H8_pair", "Heisenberg", "split")


def preset(name: str, param=None):
    """Named extensions with their designated subgroup H of Gab.

    Returns (CentralExtension, H) where H is a frozenset of Gab elements
    (None for "split" with no designated subgroup).
    """
    if name == "C4_D4":
        return _d4_extension()
    if name == "H8_pair":
        return _h8_pair()
    if name == "Heisenberg":
        if param is None:
            raise ValueError("Heisenberg preset needs the odd prime ell")
        return _heisenberg_extension(int(param))
    if name == "split":
        if param is None:
            raise ValueError("split preset needs (Gab moduli, A moduli)")
        gab_moduli, a_moduli = param
        return split_extension(AbGroup(tuple(gab_moduli)), AbGroup(tuple(a_moduli))), None
    raise ValueError(f"unknown preset {name!r}; choose from {_PRESET_NAMES}")
