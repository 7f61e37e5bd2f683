from fractions import Fraction

import pytest

from iwasawalab.localize import (PlaceAbovePrime, places_above,
                                 completions_above_p, embed, loc, loc_p,
                                 is_loc_torsion, eq_membership, inertia_rank,
                                 zp_matrix_rank, TRUE, FALSE, INDET)
from iwasawalab.padic import PAdicNumber, UnramifiedQuadElem
from iwasawalab.quadfield import (RealQuadraticField, SUnitBasisData,
                                  SUnitProduct, factor_rational_prime,
                                  fundamental_unit, rational_ideal)

QQ = RealQuadraticField.rationals()
Q2 = RealQuadraticField(2)


def test_completions_split():
    pl = completions_above_p(Q2, 7)
    assert len(pl) == 2
    r0 = embed(Q2.from_sqrt_pair(0, Fraction(1, 2)), pl[0], 2)  # sqrt2
    r1 = embed(Q2.from_sqrt_pair(0, Fraction(1, 2)), pl[1], 2)
    vals = sorted((r0.residue(2), r1.residue(2)))
    assert vals == [10, 39]  # 10^2 = 2 mod 49, other root is -10
    x = Q2.from_sqrt_pair(3, Fraction(1, 2))  # 3 + sqrt2
    images = sorted(embed(x, v, 2).residue(2) for v in pl)
    assert images == [13, 42]  # 3+10 and 3-10 mod 49


def test_completions_inert():
    pl = completions_above_p(Q2, 5)
    assert len(pl) == 1 and pl[0].residue_degree == 2
    im = embed(Q2.from_sqrt_pair(0, Fraction(1, 2)), pl[0], 3)
    assert isinstance(im, UnramifiedQuadElem)
    sq = im * im
    assert sq.a.residue(3) == 2 % 125 and sq.b.is_marker


def test_completions_ramified_rejected():
    with pytest.raises(ValueError):
        completions_above_p(RealQuadraticField(5), 5)


def test_loc_multiplicative():
    pl = completions_above_p(Q2, 7)[0]
    x = Q2.from_sqrt_pair(3, Fraction(1, 2))
    y = Q2.from_sqrt_pair(1, Fraction(1, 2))
    lx = embed(x, pl, 4)
    ly = embed(y, pl, 4)
    lxy = embed(x * y, pl, 4)
    assert (lx * ly - lxy).is_marker


def test_loc_of_rational_7_at_split_7():
    for v in completions_above_p(Q2, 7):
        lv = loc(Q2.element(7), v, 7, 4)
        assert lv.valuation == 1


def test_loc_of_one():
    for v in completions_above_p(Q2, 7):
        lv = loc(Q2.one(), v, 7, 4)
        assert lv.valuation == 0
        for c in lv.log_coords():
            assert c.is_marker


def test_is_loc_torsion_minus_one():
    for K, p in ((QQ, 7), (Q2, 5), (Q2, 7)):
        for v in completions_above_p(K, p):
            assert is_loc_torsion(K.element(-1), v, p, 5) == TRUE
    v5 = places_above(QQ, 5)[0]
    assert is_loc_torsion(QQ.element(-1), v5, 3, 5) == TRUE


def test_is_loc_torsion_2_at_7():
    v = completions_above_p(QQ, 7)[0]
    assert is_loc_torsion(QQ.element(2), v, 7, 4) == FALSE


def test_is_loc_torsion_eps_inert_5():
    v = completions_above_p(Q2, 5)[0]
    assert is_loc_torsion(fundamental_unit(Q2), v, 5, 6) == FALSE


def test_eq_membership():
    basis = SUnitBasisData(QQ, [rational_ideal(QQ, 2), rational_ideal(QQ, 5),
                                rational_ideal(QQ, 7)])
    Q = [rational_ideal(QQ, 2), rational_ideal(QQ, 5)]
    a = PAdicNumber.exact(3, 3, 8)
    x = SUnitProduct(basis, 3, [0, a, 1, 0], 8)
    assert eq_membership(x, Q)
    y = SUnitProduct(basis, 3, [0, 0, 0, 1], 8)  # the element 7
    assert not eq_membership(y, Q)
    eps_only = SUnitProduct(SUnitBasisData(Q2, []), 3, [0, 1], 8)
    assert eq_membership(eps_only, [])


def test_inertia_rank_cases():
    v5 = places_above(QQ, 5)
    assert inertia_rank([QQ.element(5)], v5, 3, 6).rank == 1
    assert inertia_rank([QQ.element(-1)], v5, 3, 6).rank == 0
    v2 = places_above(QQ, 2)
    r = inertia_rank([QQ.element(2), QQ.element(8)], v2, 3, 6)
    assert r.rank == 1 and r.certified


def test_inertia_rank_above_p():
    v3 = completions_above_p(QQ, 3)
    r = inertia_rank([QQ.element(4)], v3, 3, 6)
    assert r.rank == 1 and r.certified
    # 2 has valuation 0 and nontrivial angle at 3: rank 1 via the log column
    r2 = inertia_rank([QQ.element(2)], v3, 3, 6)
    assert r2.rank == 1


def test_inertia_rank_monotone():
    places = places_above(QQ, 2) + places_above(QQ, 5)
    t1 = [QQ.element(2)]
    t2 = [QQ.element(2), QQ.element(5)]
    r1 = inertia_rank(t1, places, 3, 6).rank
    r2 = inertia_rank(t2, places, 3, 6).rank
    assert r1 <= r2 == 2
    r3 = inertia_rank(t2, places_above(QQ, 2), 3, 6).rank
    assert r3 <= r2


def test_rank_stabilization():
    places = completions_above_p(Q2, 5)
    eps = fundamental_unit(Q2)
    for N in (5, 7):
        r = inertia_rank([eps], places, 5, N)
        assert r.rank == 1 and r.certified


def test_zp_matrix_rank_markers():
    p = 3
    M = [[PAdicNumber.exact(3, p, 6), PAdicNumber.zero_marker(p, 2)],
         [PAdicNumber.exact(9, p, 6), PAdicNumber.zero_marker(p, 2)]]
    r = zp_matrix_rank(M)
    assert r.rank == 1 and not r.certified


def test_loc_of_sunit_product_matches_elementwise():
    K = Q2
    q7 = factor_rational_prime(K, 7).ideals[0]
    basis = SUnitBasisData(K, [q7])
    x = SUnitProduct(basis, 5, [1, 2, 3], 6)
    place = completions_above_p(K, 5)[0]
    lv = loc(x, place, 5, 6)
    # compare with the log of the honest product (-1) * eps^2 * gamma^3
    elt = K.element(-1) * fundamental_unit(K)**2 * basis.entries[2].element**3
    lv2 = loc(elt, place, 5, 6)
    a = lv.log_coords()
    b = lv2.log_coords()
    assert all((u - w).is_marker for u, w in zip(a, b))
    assert lv.valuation.is_marker or lv.valuation.residue(3) == 0


def test_loc_p_vector_multiplicative():
    K = Q2
    places = completions_above_p(K, 7)
    x = K.from_sqrt_pair(3, Fraction(1, 2))
    y = K.from_sqrt_pair(1, Fraction(1, 2))
    vx = loc_p(x, places, 7, 5)
    vy = loc_p(y, places, 7, 5)
    vxy = loc_p(x * y, places, 7, 5)
    for key in vxy:
        assert vxy[key].valuation == vx[key].valuation + vy[key].valuation
        for a, b, c in zip(vxy[key].log_coords(), vx[key].log_coords(),
                           vy[key].log_coords()):
            assert (a - b - c).is_marker


def test_prop_22_consistency_sunits_away_from_support():
    # a global S-unit is locally torsion at every prime outside S and
    # away from p, and its valuation there vanishes
    K = Q2
    eps = fundamental_unit(K)
    g7 = K.from_sqrt_pair(3, Fraction(1, 2))  # norm 7
    for ell in (3, 11, 13):
        for v in places_above(K, ell):
            for x in (eps, g7):
                verdict = is_loc_torsion(x, v, 5, 6)
                assert verdict == TRUE
                from iwasawalab.quadfield import ideal_valuation
                assert ideal_valuation(x, v.ideal) == 0
