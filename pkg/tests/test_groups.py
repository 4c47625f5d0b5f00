import random
from itertools import combinations, product

import pytest

from rankgrad import smallgroups as sg
from rankgrad.errors import CapExceeded, NotNormal, NotSurjective
from rankgrad.groups import (
    Homomorphism,
    SubgroupLattice,
    automorphisms,
    center,
    closure,
    commutator_subgroup,
    d_min,
    d_normal_min,
    direct_product,
    fiber_product,
    find_isomorphism,
    full_handle,
    handle_from_elements,
    is_isomorphic,
    is_normal,
    minimal_generating_tuple,
    normal_closure,
    quotient,
    sylow_subgroup,
    trivial_handle,
)

# ---------------------------------------------------------------------------
# independent permutation oracle for the S3 examples


def _perm_mul(p, q):
    return tuple(q[p[i]] for i in range(len(p)))


def _perm_closure(gens):
    identity = tuple(range(len(gens[0])))
    elems = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _perm_mul(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return elems


S3 = sg.symmetric(3)
THREE_CYCLE = next(
    x for x in range(6) if S3.element_order(x) == 3
)
TRANSPOSITION = next(x for x in range(6) if S3.element_order(x) == 2)


def test_closure_examples():
    assert closure(S3, []).elements == (S3.identity,)
    # oracle: closure of a 3-cycle in the permutation model has size 3
    assert len(_perm_closure([(1, 2, 0)])) == 3
    assert closure(S3, [THREE_CYCLE]).order == 3
    z6 = sg.cyclic(6)
    assert closure(z6, [1]).order == 6


def test_closure_is_a_subgroup():
    rng = random.Random(5)
    for g in [S3, sg.dihedral(4), sg.abelian([4, 2])]:
        for _ in range(10):
            seed = [rng.randrange(g.order) for _ in range(rng.randrange(3))]
            h = closure(g, seed)
            assert g.identity in h
            for x in h.elements:
                assert g.inv[x] in h
                for y in h.elements:
                    assert g.mult[x][y] in h


def test_normal_closure_examples():
    # transpositions normally generate S3 (oracle: conjugates of (0 1)
    # in the permutation model give all three transpositions)
    conj = _perm_closure([(1, 0, 2), (1, 2, 0)])
    transposition_perms = {p for p in conj if sorted(p) == [0, 1, 2] and p != (0, 1, 2)}
    assert len(_perm_closure([(1, 0, 2)])) == 2
    assert normal_closure(S3, full_handle(S3), [TRANSPOSITION]).order == 6
    assert normal_closure(S3, trivial_handle(S3), [TRANSPOSITION]).order == 2
    g = direct_product(sg.cyclic(4), sg.cyclic(4))
    nc = normal_closure(g, full_handle(g), [2 * 4 + 0])
    assert nc.elements == (0, 2 * 4 + 0)


def test_normal_closure_always_normal():
    for g in [S3, sg.dihedral(4), sg.dicyclic(3)]:
        for x in range(g.order):
            nc = normal_closure(g, full_handle(g), [x])
            assert is_normal(g, nc)


def test_d_min_examples():
    assert d_min(sg.cyclic(6)) == 1
    # oracle: exhaustive subset search over S3
    assert all(
        len(_perm_closure([p])) < 6
        for p in _perm_closure([(1, 0, 2), (1, 2, 0)])
        if p != (0, 1, 2)
    )
    assert d_min(S3) == 2
    e3 = sg.abelian([2, 2, 2])
    # oracle: no 2 elements generate an 8-element F2-space
    for x, y in combinations(range(8), 2):
        assert closure(e3, [x, y]).order <= 4
    assert d_min(e3) == 3
    assert d_min(sg.trivial_group()) == 0


def test_d_min_cap():
    with pytest.raises(CapExceeded):
        d_min(sg.cyclic(20), cap=10)


def test_d_min_subgroup_handle():
    a3 = closure(S3, [THREE_CYCLE])
    assert d_min(a3) == 1
    assert d_min(trivial_handle(S3)) == 0


def test_d_normal_min_examples():
    a3 = closure(S3, [THREE_CYCLE])
    assert d_normal_min(S3, a3) == 1
    assert d_normal_min(S3, trivial_handle(S3)) == 0
    v4 = sg.abelian([2, 2])
    assert d_normal_min(v4, full_handle(v4)) == 2
    with pytest.raises(NotNormal):
        d_normal_min(S3, closure(S3, [TRANSPOSITION]))


def test_d_normal_min_at_most_d_min():
    for g in [S3, sg.dihedral(4), sg.dicyclic(2), sg.alternating(4)]:
        lattice = SubgroupLattice(g)
        for h in lattice.subgroups():
            if is_normal(g, h):
                assert d_normal_min(g, h) <= d_min(h)


def test_commutator_subgroup_examples():
    full = full_handle(S3)
    derived = commutator_subgroup(S3, full, full)
    assert derived.order == 3
    d4 = sg.dihedral(4)
    z = center(d4)
    assert z.order == 2
    assert commutator_subgroup(d4, full_handle(d4), z).order == 1
    z6 = sg.cyclic(6)
    assert commutator_subgroup(z6, full_handle(z6), full_handle(z6)).order == 1


def test_sylow_examples():
    assert sylow_subgroup(S3, 3).order == 3
    assert sylow_subgroup(S3, 2).order == 2
    assert sylow_subgroup(sg.cyclic(5), 2).order == 1
    s4 = sg.symmetric(4)
    assert sylow_subgroup(s4, 2).order == 8
    assert sylow_subgroup(s4, 3).order == 3
    # determinism
    assert sylow_subgroup(S3, 2).elements == sylow_subgroup(S3, 2).elements


def test_direct_product_examples():
    z2z3 = direct_product(sg.cyclic(2), sg.cyclic(3))
    assert is_isomorphic(z2z3, sg.cyclic(6))
    b = sg.dihedral(4)
    tb = direct_product(sg.trivial_group(), b)
    assert is_isomorphic(tb, b)
    assert direct_product(S3, S3).order == 36
    with pytest.raises(CapExceeded):
        direct_product(sg.cyclic(100), sg.cyclic(100))


def test_direct_product_encoding():
    a, b = sg.cyclic(4), sg.cyclic(3)
    g = direct_product(a, b)
    for (i, j), (k, l) in product(product(range(4), range(3)), repeat=2):
        x = i * 3 + j
        y = k * 3 + l
        assert g.mult[x][y] == ((i + k) % 4) * 3 + (j + l) % 3


def test_quotient_examples():
    a3 = closure(S3, [THREE_CYCLE])
    q, hom = quotient(S3, a3)
    assert q.order == 2
    q2, _ = quotient(S3, trivial_handle(S3))
    assert is_isomorphic(q2, S3)
    z4 = sg.cyclic(4)
    q3, _ = quotient(z4, closure(z4, [2]))
    assert is_isomorphic(q3, sg.cyclic(2))
    with pytest.raises(NotNormal):
        quotient(S3, closure(S3, [TRANSPOSITION]))


def test_quotient_projection_is_homomorphism():
    for g in [S3, sg.dihedral(4), sg.dicyclic(3)]:
        lattice = SubgroupLattice(g)
        for h in lattice.subgroups():
            if is_normal(g, h):
                q, hom = quotient(g, h)
                hom.verify()
                assert hom.is_surjective()


def test_fiber_product_z4_over_z2():
    z4, z2 = sg.cyclic(4), sg.cyclic(2)
    q, hom = quotient(z4, closure(z4, [2]))
    mapping = [hom(x) for x in range(4)]
    data = fiber_product(z4, Homomorphism(z4, q, mapping))
    assert data.subgroup.order == 8
    assert data.index == 2
    assert data.kernel_central
    assert data.onto_kernel is not None
    assert data.onto_kernel.is_surjective()
    assert d_min(data.subgroup) == 2
    assert d_min(data.kernel) == 1
    # diagonal normal in the fiber product when the kernel is central
    sub_group = data.subgroup.as_group()
    pos = {x: i for i, x in enumerate(data.subgroup.elements)}
    diag_in_sub = handle_from_elements(
        sub_group, [pos[x] for x in data.diagonal.elements]
    )
    assert is_normal(sub_group, diag_in_sub)


def test_fiber_product_degenerate_cases():
    z4 = sg.cyclic(4)
    ident = Homomorphism(z4, z4, list(range(4)))
    data = fiber_product(z4, ident)
    assert data.subgroup.elements == data.diagonal.elements
    assert data.index == 4
    triv = sg.trivial_group()
    to_triv = Homomorphism(z4, triv, [0, 0, 0, 0])
    data = fiber_product(z4, to_triv)
    assert data.subgroup.order == 16
    assert data.index == 1
    q, hom = quotient(S3, closure(S3, [THREE_CYCLE]))
    not_onto = Homomorphism(S3, q, [q.identity] * 6, check=False)
    with pytest.raises(NotSurjective):
        fiber_product(S3, not_onto)


def test_generator_bound_under_index():
    # d(H) <= d(G) [G:H] across the small-group subgroup universe
    for g in [S3, sg.dihedral(4), sg.alternating(4), sg.abelian([4, 2])]:
        lattice = SubgroupLattice(g)
        dg = lattice.d_min_of(full_handle(g).elements)
        for h in lattice.subgroups():
            index = g.order // h.order
            assert lattice.d_min_of(h) <= dg * index


def test_lattice_counts_and_exactness():
    lattice = SubgroupLattice(S3)
    assert len(lattice) == 6
    d4 = sg.dihedral(4)
    assert len(SubgroupLattice(d4)) == 10
    q8 = sg.dicyclic(2)
    assert len(SubgroupLattice(q8)) == 6
    # lattice ranks agree with the standalone search
    lat = SubgroupLattice(d4)
    for h in lat.subgroups():
        assert lat.d_min_of(h) == d_min(h)


def test_homomorphism_validation():
    z4 = sg.cyclic(4)
    z2 = sg.cyclic(2)
    Homomorphism(z4, z2, [0, 1, 0, 1]).verify()
    with pytest.raises(ValueError):
        Homomorphism(z4, z2, [0, 1, 1, 0])
    hom = Homomorphism(z4, z2, [0, 1, 0, 1])
    assert hom.kernel().elements == (0, 2)


def test_find_isomorphism_positive_and_negative():
    assert find_isomorphism(sg.dihedral(4), sg.dicyclic(2)) is None
    m = find_isomorphism(sg.abelian([2, 3]), sg.cyclic(6))
    assert m is not None
    a, b = sg.abelian([2, 3]), sg.cyclic(6)
    for x in range(6):
        for y in range(6):
            assert m[a.mult[x][y]] == b.mult[m[x]][m[y]]


def test_automorphism_counts():
    assert len(automorphisms(sg.cyclic(6))) == 2
    assert len(automorphisms(sg.abelian([2, 2]))) == 6
    assert len(automorphisms(S3)) == 6
    assert len(automorphisms(sg.dicyclic(2))) == 24
    assert len(automorphisms(sg.abelian([2, 2, 2]))) == 168


def test_validate_catches_bad_tables():
    from rankgrad.groups import FiniteGroup

    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [1, 1]], [1])  # not a latin square / no inverse
    g = sg.cyclic(5)
    assert g.validate()
