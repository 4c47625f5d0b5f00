from fractions import Fraction

import pytest

from rankgrad import smallgroups as sg
from rankgrad.bounds import (
    check_recursion_step,
    construct_generators,
    evaluate_bounds,
    goursat_data,
    presentation_bound,
    recursion_sweep,
    three_bound_chain_holds,
    verify_normality,
    verify_torsion_bound,
)
from rankgrad.errors import DomainError
from rankgrad.exactmath import iroot
from rankgrad.groups import (
    SubgroupLattice,
    closure,
    d_min,
    direct_product,
    full_handle,
    handle_from_elements,
    normal_closure,
)

S3 = sg.symmetric(3)


def _diagonal(g, n):
    return handle_from_elements(g, [x * n + x for x in range(n)])


def test_goursat_diagonal_example():
    g = direct_product(S3, S3)
    gd = goursat_data(S3, S3, _diagonal(g, 6))
    assert gd.pi_a.order == 6
    assert gd.a_cap_h.order == 1
    assert gd.index_g_h == 6
    assert gd.index_g_ah == 1
    assert gd.index_ah_h == 6


def test_goursat_full_and_factor():
    a, b = S3, sg.cyclic(4)
    g = direct_product(a, b)
    gd = goursat_data(a, b, full_handle(g))
    assert gd.index_g_h == 1 and gd.a_cap_h.order == a.order
    # H = A x 1
    h = handle_from_elements(g, [x * 4 + 0 for x in range(6)])
    gd = goursat_data(a, b, h)
    assert gd.pi_b.order == 1
    assert gd.index_g_bh == 1  # BH = G
    assert gd.index_bh_h == 4


def test_verify_normality_examples():
    g = direct_product(S3, S3)
    res = verify_normality(S3, S3, _diagonal(g, 6))
    assert res.hypothesis_holds and res.conclusion_holds
    h = handle_from_elements(g, [x * 6 + 0 for x in range(6)])
    res = verify_normality(S3, S3, h)
    assert res.hypothesis_holds and res.conclusion_holds
    # BK != G: hypothesis fails, conclusion not asserted
    k = closure(g, [next(x for x in range(6) if S3.element_order(x) == 2) * 6])
    res = verify_normality(S3, S3, k)
    assert not res.hypothesis_holds and res.conclusion_holds is None
    assert res.passed


def test_construct_generators_examples():
    g = direct_product(S3, S3)
    gd = goursat_data(S3, S3, _diagonal(g, 6))
    gc = construct_generators(gd)
    assert len(gc.s_elements) == 0
    assert len(gc.r_a) == 2
    assert gc.combined.elements == _diagonal(g, 6).elements
    # full product: S normally generates A inside A
    gd = goursat_data(S3, S3, full_handle(g))
    gc = construct_generators(gd)
    assert len(gc.s_elements) == 1  # a 3-cycle normally generates... no:
    # A meet H = A = S3 needs d_normal(S3, S3) elements
    from rankgrad.groups import d_normal_min

    assert len(gc.s_elements) == d_normal_min(S3, full_handle(S3))
    # 2Z4 x Z4 inside Z4 x Z4
    z4 = sg.cyclic(4)
    g2 = direct_product(z4, z4)
    h2 = handle_from_elements(g2, [i * 4 + j for i in (0, 2) for j in range(4)])
    gd2 = goursat_data(z4, z4, h2)
    gc2 = construct_generators(gd2)
    assert (len(gc2.s_elements), len(gc2.r_a), len(gc2.r_b)) == (1, 1, 1)
    assert gc2.combined.elements == h2.elements


def test_construction_normal_closure_property():
    # <S>^{pi_A(H)} = A meet H on a nontrivial instance
    z4 = sg.cyclic(4)
    g = direct_product(z4, z4)
    h = handle_from_elements(g, [i * 4 + j for i in (0, 2) for j in range(4)])
    gd = goursat_data(z4, z4, h)
    gc = construct_generators(gd)
    s_in_a = [x // 4 for x in gc.s_elements]
    pia_group = gd.pi_a.as_group()
    pos = {x: i for i, x in enumerate(gd.pi_a.elements)}
    nc = normal_closure(
        pia_group, full_handle(pia_group), [pos[x] for x in s_in_a]
    )
    assert [gd.pi_a.elements[i] for i in nc.elements] == list(gd.a_cap_h.elements)


def test_evaluate_bounds_examples():
    g = direct_product(S3, S3)
    gd = goursat_data(S3, S3, _diagonal(g, 6))
    rep = evaluate_bounds(gd, d_g=2)
    assert rep.d_h == 2
    assert rep.bound1 == 2 * (1 + 6) == 14
    assert rep.pass1
    # H = G: bound1 = 2 d(G)
    gd_full = goursat_data(S3, S3, full_handle(g))
    d_g = d_min(g)
    rep = evaluate_bounds(gd_full, d_g=d_g)
    assert rep.bound1 == 2 * d_g and rep.pass1
    # 2Z4 x Z4 in Z4 x Z4
    z4 = sg.cyclic(4)
    g2 = direct_product(z4, z4)
    h2 = handle_from_elements(g2, [i * 4 + j for i in (0, 2) for j in range(4)])
    rep = evaluate_bounds(goursat_data(z4, z4, h2), d_g=2)
    assert rep.d_h == 2 and rep.bound1 == 6 and rep.pass1


def test_presentation_bound_examples():
    assert presentation_bound(1, 0) == 0
    # floor(256 * 6^(3/7)): certified by the 7th-root sandwich
    val = presentation_bound(6, 2)
    assert val == 551
    assert 551**7 <= 256**7 * 6**3 < 552**7
    assert presentation_bound(128, 1) == 1024
    with pytest.raises(DomainError):
        presentation_bound(0, 1)


def test_check_recursion_step_examples():
    assert check_recursion_step(1, 4, 2).passed
    assert check_recursion_step(3, 60, 5).passed
    assert check_recursion_step(1, 2, 2).passed
    with pytest.raises(DomainError):
        check_recursion_step(0, 4, 2)
    with pytest.raises(DomainError):
        check_recursion_step(1, 4, 3)  # n does not divide k
    with pytest.raises(DomainError):
        check_recursion_step(1, 4, 1)


def test_recursion_sweep_small():
    assert recursion_sweep(5000) == []


def test_torsion_bound_examples():
    z4 = sg.cyclic(4)
    g = direct_product(z4, z4)
    res = verify_torsion_bound(z4, z4, _diagonal(g, 4))
    assert res.torsion_h == 4
    assert res.passed
    res = verify_torsion_bound(z4, z4, full_handle(g))
    assert res.index == 1
    assert res.torsion_h == 16 == res.torsion_pi_a * res.torsion_pi_b
    assert res.bound_floor == 16  # equality side: index factor is 1
    assert res.passed
    g6 = direct_product(S3, S3)
    res = verify_torsion_bound(S3, S3, _diagonal(g6, 6))
    assert res.torsion_h == 2
    assert res.sandwich_lower and res.sandwich_upper
    assert res.passed


def test_three_bound_chain():
    g = direct_product(S3, S3)
    ok, lhs, rhs = three_bound_chain_holds(goursat_data(S3, S3, _diagonal(g, 6)))
    assert ok and lhs == 2 and rhs >= 2


def test_construction_size_dominates_rank():
    a, b = sg.dihedral(4), sg.cyclic(4)
    g = direct_product(a, b)
    lattice = SubgroupLattice(g)
    for h in lattice.subgroups():
        gd = goursat_data(a, b, h)
        gc = construct_generators(gd)
        assert gc.size >= lattice.d_min_of(h)
        assert gc.combined.elements == h.elements


def test_floor_power_is_conservative():
    for x in (1, 2, 5, 36, 64, 100):
        f = iroot(x**3, 7)
        assert f**7 <= x**3 < (f + 1) ** 7
