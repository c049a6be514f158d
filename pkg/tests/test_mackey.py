import itertools

import pytest
from hypothesis import given, settings, strategies as st

from equihom.intalg import FGAbelianGroup, GroupHom
from equihom.mackey import (
    AxiomViolation,
    BGreen,
    MackeyFunctor,
    MackeyMap,
    box,
    burnside,
    constant_z,
    direct_sum,
    direct_sum_all,
    find_isomorphism,
    induced,
    isomorphic,
    make_mackey,
    norm_F2,
    same_invariants,
    zero_functor,
)

FAMILY = {
    "A": burnside(),
    "Z": constant_z(),
    "B": norm_F2(),
    "AC": induced(burnside()),
    "BC": induced(norm_F2()),
}


def cyc(n):
    return FGAbelianGroup.cyclic(n)


def test_burnside_and_constant_z_valid():
    a = burnside()
    assert a.top == FGAbelianGroup.free(2) and a.bot == FGAbelianGroup.free(1)
    assert a.res.matrix.to_lists() == [[1, 2]]
    z = constant_z()
    assert z.tr.matrix.to_lists() == [[2]]


def test_transfer_one_on_constant_z_fails():
    z = FGAbelianGroup.free(1)
    with pytest.raises(AxiomViolation) as err:
        make_mackey(z, z, [[1]], [[1]], [[1]])
    assert "res o tr" in err.value.axiom


def test_weyl_must_be_involution():
    z = FGAbelianGroup.free(1)
    with pytest.raises(AxiomViolation):
        make_mackey(z, z, [[1]], [[2]], [[2]])


def test_norm_f2_exact_shape():
    b = norm_F2()
    assert b.top == cyc(4) and b.bot == cyc(2)
    assert b.res((1,)) == (1,)
    assert b.tr((1,)) == (2,)
    assert b.weyl == GroupHom.identity(cyc(2))


def test_green_structure():
    assert BGreen.check() == []
    # Frobenius: tr(1 * res(1)) = 2 = tr(1) * 1
    b = norm_F2()
    x = BGreen.mul_bot(1, b.res((1,))[0])
    assert b.tr((x,)) == (2,)
    assert BGreen.mul_top(b.tr((1,))[0], 1) == 2


def test_box_examples():
    a, b = burnside(), norm_F2()
    assert isomorphic(box(a, b), b)
    assert isomorphic(box(b, b), b)
    ac = FAMILY["AC"]
    assert isomorphic(box(ac, ac), direct_sum(ac, ac))


def test_box_bottom_level_is_tensor():
    b, z = norm_F2(), constant_z()
    assert box(b, z).bot == cyc(2)
    assert box(FAMILY["AC"], b).bot == FGAbelianGroup((2, 2), 0)
    assert box(FAMILY["BC"], FAMILY["BC"]).bot == FGAbelianGroup((2, 2, 2, 2), 0)


def test_induced_examples():
    bc = induced(norm_F2())
    assert bc.top == cyc(2) and bc.bot == FGAbelianGroup((2, 2), 0)
    zc = induced(constant_z())
    assert zc.top == FGAbelianGroup.free(1) and zc.bot == FGAbelianGroup.free(2)
    assert zc.res((1,)) == (1, 1)
    assert bc.res @ bc.tr == GroupHom.identity(bc.bot) + bc.weyl


def test_direct_sum_examples():
    b = norm_F2()
    assert isomorphic(direct_sum(b, zero_functor()), b)
    assert direct_sum(b, b).top == FGAbelianGroup((4, 4), 0)
    assert direct_sum(burnside(), b).bot == FGAbelianGroup((2,), 1)
    assert direct_sum_all([]).is_zero()


def test_same_invariants_examples():
    b = norm_F2()
    rep = same_invariants(b, b)
    assert rep.invariants_match and rep.iso_status == "found"
    rep = same_invariants(b, burnside())
    assert not rep.top_match and rep.verdict == "not-isomorphic"
    rep = same_invariants(induced(b), direct_sum(b, b))
    assert not rep.top_match


def test_same_invariants_distinguishes_by_maps():
    # Z/2 over Z/2 with zero res and zero tr vs the induced-style weyl swap
    g = cyc(2)
    flat = make_mackey(g, g, [[0]], [[0]], [[1]])
    rep = same_invariants(flat, make_mackey(g, g, [[1]], [[0]], [[1]]))
    assert rep.verdict == "not-isomorphic"


def test_mackey_map_validation():
    b = norm_F2()
    ident = MackeyMap(b, b, GroupHom.identity(b.top), GroupHom.identity(b.bot))
    assert ident.is_isomorphism()
    with pytest.raises(ValueError):
        MackeyMap(b, b, GroupHom.identity(b.top), GroupHom.zero(b.bot, b.bot))


def test_found_isomorphism_is_a_valid_map():
    m = box(FAMILY["B"], FAMILY["BC"])
    iso, complete = find_isomorphism(m, FAMILY["BC"])
    assert iso is not None and iso.is_isomorphism()


def test_nonisomorphic_search_is_complete():
    iso, complete = find_isomorphism(FAMILY["B"], FAMILY["BC"])
    assert iso is None


@pytest.mark.parametrize("name", sorted(FAMILY))
def test_record_round_trip(name):
    m = FAMILY[name]
    again = MackeyFunctor.from_record(m.to_record())
    assert again == m


def test_record_rejects_bad_shape():
    rec = norm_F2().to_record()
    rec["res"] = [[1], [0]]
    with pytest.raises(ValueError):
        MackeyFunctor.from_record(rec)


@pytest.mark.parametrize("name", sorted(FAMILY))
def test_unit_law_exact(name):
    m = FAMILY[name]
    assert isomorphic(box(burnside(), m), m)


@pytest.mark.parametrize("name", sorted(FAMILY))
def test_induced_agrees_with_box(name):
    m = FAMILY[name]
    assert isomorphic(induced(m), box(FAMILY["AC"], m))


@pytest.mark.parametrize("p,q", list(itertools.combinations(sorted(FAMILY), 2)))
def test_box_commutative(p, q):
    assert isomorphic(box(FAMILY[p], FAMILY[q]), box(FAMILY[q], FAMILY[p]))


family_members = st.sampled_from(sorted(FAMILY))


@given(family_members, family_members, family_members)
@settings(max_examples=25, deadline=None)
def test_box_associative(p, q, r):
    x, y, z = FAMILY[p], FAMILY[q], FAMILY[r]
    assert isomorphic(box(box(x, y), z), box(x, box(y, z)))


@given(st.lists(family_members, max_size=3), family_members)
@settings(max_examples=20, deadline=None)
def test_box_distributes_over_sums(parts, other):
    summed = direct_sum_all([FAMILY[p] for p in parts])
    lhs = box(summed, FAMILY[other])
    rhs = direct_sum_all([box(FAMILY[p], FAMILY[other]) for p in parts])
    assert lhs.top == rhs.top and lhs.bot == rhs.bot
    assert same_invariants(lhs, rhs).verdict != "not-isomorphic"


@given(st.integers(1, 6), st.booleans())
@settings(max_examples=40, deadline=None)
def test_induced_always_valid(n, twist):
    # Z/n (or Z) with Weyl action +-1, res = 1 and tr = 1 + weyl
    g = cyc(n) if n > 1 else FGAbelianGroup.free(1)
    sign = -1 if twist else 1
    try:
        m = make_mackey(g, g, [[1]], [[1 + sign]], [[sign]])
    except AxiomViolation:
        return
    ind = induced(m)
    assert ind.top == m.bot
    assert ind.res @ ind.tr == GroupHom.identity(ind.bot) + ind.weyl
    assert MackeyFunctor.from_record(ind.to_record()) == ind
