import pytest

from rootring.abelian import FinAbGroup
from rootring.errors import (BlockMismatch, BoundExceeded, IndexClash,
                             NotIdempotent, NotQuasiInvertible, RankTooSmall)
from rootring.glgroup import (QuasiUnit, circ, elementary_subgroup,
                              eval_st_word, identity_unit,
                              perfectness_and_center, quasi_inverse,
                              transvection, verify_steinberg)
from rootring.rings import FinRing, PeirceRing, mat_ring

from oracles import quasi_inverse_oracle


def _zero_ring(rank, n):
    Z = FinAbGroup([n])
    blocks = {(i, j): Z for i in range(rank) for j in range(rank)}
    return PeirceRing(rank, n, blocks, {})


def _quasi_units(ring):
    out = []
    for x in ring.additive.elements():
        try:
            out.append(QuasiUnit(ring, x))
        except NotQuasiInvertible:
            pass
    return out


def test_quasi_inverse_matches_oracle_zmod():
    for n in (2, 4, 6, 9):
        R = FinRing.zmod(n)
        for x in R.additive.elements():
            want = quasi_inverse_oracle(R, x)
            if want is None:
                with pytest.raises(NotQuasiInvertible):
                    quasi_inverse(R, x)
            else:
                assert quasi_inverse(R, x) == want


def test_quasi_inverse_matches_oracle_mat2():
    R = FinRing.matrix_ring(FinRing.zmod(2), 2)
    hits = 0
    for x in R.additive.elements():
        want = quasi_inverse_oracle(R, x)
        if want is None:
            with pytest.raises(NotQuasiInvertible):
                quasi_inverse(R, x)
        else:
            assert quasi_inverse(R, x) == want
            hits += 1
    assert hits == 6


def test_quasi_units_form_a_group():
    R = FinRing.matrix_ring(FinRing.zmod(2), 2)
    units = _quasi_units(R)
    assert len(units) == 6
    for x in units:
        assert x.circle(x.inverse()).is_identity()
        assert x.inverse().circle(x).is_identity()
        for y in units:
            xy = x.circle(y)
            assert any(xy == u for u in units)
            for z in units:
                assert xy.circle(z) == x.circle(y.circle(z))


def test_act_is_ring_automorphism():
    R = mat_ring(3, FinRing.zmod(4))
    G = R.additive
    u = transvection(R, 0, 1, (3,)).circle(transvection(R, 1, 2, (1,)))
    gens = G.gens()
    for a in gens:
        for b in gens:
            assert u.act(G.add(a, b)) == G.add(u.act(a), u.act(b))
            assert u.act(R.mul(a, b)) == R.mul(u.act(a), u.act(b))
    v = u.inverse()
    for a in gens:
        assert v.act(u.act(a)) == G.reduce(a)


def test_act_composes_with_circle():
    R = mat_ring(3, FinRing.zmod(2))
    x = transvection(R, 0, 2, (1,))
    y = transvection(R, 2, 1, (1,))
    xy = x.circle(y)
    for g in R.additive.gens():
        assert xy.act(g) == x.act(y.act(g))


def test_transvection_validation():
    R = mat_ring(3, FinRing.zmod(2))
    with pytest.raises(IndexClash):
        transvection(R, 1, 1, (1,))
    with pytest.raises(BlockMismatch):
        transvection(R, 0, 1, (1, 0))


def test_eval_st_word():
    R = mat_ring(3, FinRing.zmod(2))
    assert eval_st_word(R, []).is_identity()
    word = [(0, 1, (1,)), (1, 2, (1,)), (0, 2, (1,))]
    w = eval_st_word(R, word)
    back = eval_st_word(R, [(i, j, (1,)) for (i, j, _) in reversed(word)])
    assert w.circle(back).is_identity()


def test_elementary_subgroup_orders():
    assert len(elementary_subgroup(mat_ring(2, FinRing.zmod(2)))) == 6
    assert len(elementary_subgroup(mat_ring(3, FinRing.zmod(2)))) == 168
    assert len(elementary_subgroup(mat_ring(2, FinRing.zmod(3)))) == 24


def test_elementary_subgroup_zero_ring():
    E = elementary_subgroup(_zero_ring(3, 2))
    assert len(E) == 64


def test_elementary_subgroup_bound():
    with pytest.raises(BoundExceeded) as info:
        elementary_subgroup(mat_ring(3, FinRing.zmod(2)), size_bound=10)
    assert info.value.partial_size > 10


def test_verify_steinberg_clean():
    rep = verify_steinberg(mat_ring(3, FinRing.zmod(2)))
    assert rep.ok
    assert rep.checked > 200


def test_verify_steinberg_all_letters():
    rep = verify_steinberg(mat_ring(3, FinRing.zmod(2)),
                           identity_triples="all")
    assert rep.ok


def test_verify_steinberg_flags_corrupted_table():
    clean = mat_ring(3, FinRing.zmod(2))
    tables = dict(clean.tables)
    bad = dict(tables[(0, 1, 2)])
    bad[(0, 0)] = (0,)
    tables[(0, 1, 2)] = bad
    R = PeirceRing(3, 2, dict(clean.blocks), tables, check=False)
    assert R.associativity_failures(limit=1)
    rep = verify_steinberg(R)
    assert not rep.ok
    assert rep.identity_failures


def test_perfectness_and_center_mat3():
    rep = perfectness_and_center(mat_ring(3, FinRing.zmod(2)))
    assert rep.ok
    assert rep.perfect
    assert rep.upper_size == 8
    assert rep.central_violations == []
    assert rep.action_injective is True


def test_perfectness_and_center_mat3_z4():
    rep = perfectness_and_center(mat_ring(3, FinRing.zmod(4)))
    assert rep.ok
    assert rep.upper_size == 64


def test_perfectness_preconditions():
    with pytest.raises(RankTooSmall):
        perfectness_and_center(mat_ring(2, FinRing.zmod(2)))
    with pytest.raises(NotIdempotent):
        perfectness_and_center(_zero_ring(3, 2))
