import pytest

from iwasawalab.abgroup import subgroup_image_order
from iwasawalab.classfield import group_G
from iwasawalab.iwasawa import (is_inert_in_cyclotomic, mq_generator,
                                mq_order, leopoldt_defect, greenberg_wiles,
                                defect_never_one_scan,
                                degree_zero_pair_element)
from iwasawalab.quadfield import (RealQuadraticField, factor_rational_prime,
                                  rational_ideal)

QQ = RealQuadraticField.rationals()
Q2 = RealQuadraticField(2)


def test_inert_in_cyclotomic():
    assert is_inert_in_cyclotomic(2, QQ, 3)
    assert not is_inert_in_cyclotomic(17, QQ, 3)  # v3(288) = 2
    with pytest.raises(ValueError):
        is_inert_in_cyclotomic(3, QQ, 3)


def test_mq_generator_q_2_5():
    rep = mq_generator(QQ, 3, (2, 5), 3)
    assert rep.a1.residue(2) == 4  # a1 = 4 mod 9
    # <2>^4 <5> = 1 mod 27
    assert pow(25, 4, 27) * 22 % 27 == 1


def test_mq_generator_rejects():
    with pytest.raises(ValueError):
        mq_generator(QQ, 3, (2, 2), 3)
    with pytest.raises(ValueError):
        mq_generator(QQ, 3, (17, 5), 3)


def test_mq_order_rational():
    rep = mq_order(QQ, 3, (2, 5), 3)
    assert rep.m_q == 1 and rep.stable


def test_mq_order_d2_p5():
    # oracle-frozen: Q = {(sqrt2), (3)}, a1 = 11 mod 25, m_Q = 1
    q1 = factor_rational_prime(Q2, 2).ideals[0]   # (sqrt2), norm 2
    q2 = rational_ideal(Q2, 3)                    # inert, norm 9
    rep = mq_order(Q2, 5, (q1, q2), 2)
    assert rep.a1.residue(2) == 11
    assert rep.m_q == 1 and rep.stable


def test_mq_order_d3_p5():
    # oracle-frozen: norms (2, 3), a1 = 18 mod 25, m_Q = 1
    K = RealQuadraticField(3)
    q1 = factor_rational_prime(K, 2).ideals[0]
    q2 = factor_rational_prime(K, 3).ideals[0]
    rep = mq_order(K, 5, (q1, q2), 2)
    assert rep.a1.residue(2) == 18
    assert rep.m_q == 1 and rep.stable


def test_mq_order_d10_p3():
    # oracle-frozen: norms (49, 41), a1 = 2 mod 9, m_Q = 1
    from iwasawalab.quadfield import ideal_valuation
    K = RealQuadraticField(10)
    q1 = rational_ideal(K, 7)                    # inert, norm 49
    elt = K.from_sqrt_pair(9, 1)                 # 9 + 2*sqrt(10), norm 41
    assert elt.norm() == 41
    q2 = next(q for q in factor_rational_prime(K, 41).ideals
              if ideal_valuation(elt, q) > 0)
    rep = mq_order(K, 3, (q1, q2), 2)
    assert rep.a1.residue(2) == 2
    assert rep.m_q == 1 and rep.stable


def test_mq_order_d79_p3_nontrivial():
    # oracle-frozen: m_Q = 9 for Q = {prime over 2, prime over 5}
    K = RealQuadraticField(79)
    q1 = factor_rational_prime(K, 2).ideals[0]   # ramified, norm 2
    q5 = factor_rational_prime(K, 5).ideals[0]
    rep = mq_order(K, 3, (q1, q5), 2)
    assert rep.a1.residue(2) == 4   # same logs as (2, 5) over Q
    assert rep.m_q == 9 and rep.stable


def test_mq_symmetric_subgroup():
    # swapping (q1, q2) changes a1 but generates the same subgroup
    K = RealQuadraticField(79)
    q1 = factor_rational_prime(K, 2).ideals[0]
    q5 = factor_rational_prime(K, 5).ideals[0]
    G = group_G(K, 3, 2)
    g12 = degree_zero_pair_element(G, q1, q5)
    g21 = degree_zero_pair_element(G, q5, q1)
    assert subgroup_image_order(G.group, [g12]) == \
        subgroup_image_order(G.group, [g21]) == \
        subgroup_image_order(G.group, [g12, g21])


def test_mq_divides_group_order():
    K = RealQuadraticField(79)
    q1 = factor_rational_prime(K, 2).ideals[0]
    q5 = factor_rational_prime(K, 5).ideals[0]
    rep = mq_order(K, 3, (q1, q5), 2)
    order = 1
    for f in rep.group_invariants:
        order *= f
    assert order % rep.m_q == 0


def test_pairwise_span_property_rational():
    # pairwise degree-0 modules span the full degree-0 image (F = Q, p = 3)
    G = group_G(QQ, 3, 3)
    qs = [rational_ideal(QQ, ell) for ell in (2, 5, 11)]
    for q in qs:
        assert is_inert_in_cyclotomic(q, QQ, 3)
    g13 = degree_zero_pair_element(G, qs[0], qs[2])
    g23 = degree_zero_pair_element(G, qs[1], qs[2])
    g12 = degree_zero_pair_element(G, qs[0], qs[1])
    span_two = subgroup_image_order(G.group, [g13, g23])
    span_all = subgroup_image_order(G.group, [g12, g13, g23])
    assert span_two == span_all


def test_pairwise_span_property_d79():
    K = RealQuadraticField(79)
    G = group_G(K, 3, 2)
    q2 = factor_rational_prime(K, 2).ideals[0]
    q5a, q5b = factor_rational_prime(K, 5).ideals
    g_ab = degree_zero_pair_element(G, q5a, q2)
    g_bb = degree_zero_pair_element(G, q5b, q2)
    g_ab2 = degree_zero_pair_element(G, q5a, q5b)
    span_two = subgroup_image_order(G.group, [g_ab, g_bb])
    span_all = subgroup_image_order(G.group, [g_ab, g_bb, g_ab2])
    assert span_two == span_all


def test_leopoldt_rational():
    rep = leopoldt_defect(QQ, 3, 8)
    assert rep.defect == 0 and rep.status == "ok"
    assert rep.standing_assumption


def test_leopoldt_d2_p5():
    rep = leopoldt_defect(Q2, 5, 8)
    assert rep.defect == 0
    assert rep.status == "ok"
    assert rep.regulator_valuation is not None
    assert not rep.standing_assumption


def test_leopoldt_ramified_rejected():
    with pytest.raises(ValueError):
        leopoldt_defect(RealQuadraticField(5), 5, 8)


def test_leopoldt_precision_consistency():
    for d, p in ((2, 5), (3, 7), (7, 3), (10, 3)):
        K = RealQuadraticField(d)
        r1 = leopoldt_defect(K, p, 6)
        r2 = leopoldt_defect(K, p, 8)
        assert r1.defect == r2.defect == 0
        assert r1.regulator_valuation == r2.regulator_valuation


def test_greenberg_wiles_arithmetic():
    assert greenberg_wiles(0, 0, []) == 0
    assert greenberg_wiles(1, 0, [(2, 1), (0, 0)]) == 2
    with pytest.raises(ValueError):
        greenberg_wiles(-1, 0, [])
    with pytest.raises(ValueError):
        greenberg_wiles(0, 0, [(0, -2)])


def test_greenberg_wiles_qp1_fixture():
    # V = Q_p(1) over Q, unramified-everywhere conditions, L_p = 0:
    # h0(Q, V) = 0; h0(Q, V*(1)) = h0(Q, Q_p) = 1;
    # at p: dim L_p = 0, h0(Q_p, Q_p(1)) = 0;
    # at infinity: dim L = 0, h0(R, Q_p(1)) = 0 (conjugation acts by -1);
    # at unramified ell: dim H^1_ur = h0, contributing 0 each.
    rhs = greenberg_wiles(0, 1, [(0, 0), (0, 0)])
    delta = 0
    assert rhs == -(1 + delta)


def test_scan_small():
    report = defect_never_one_scan(12, [3, 5], N=6)
    assert report["violations"] == []
    assert report["indeterminates"] == []
    deltas = {(r["d"], r["p"]): r["delta"] for r in report["rows"]}
    assert deltas[(1, 3)] == 0          # F = Q included
    assert deltas[(5, 5)] is None       # ramified pair skipped
    statuses = {(r["d"], r["p"]): r["status"] for r in report["rows"]}
    assert statuses[(5, 5)] == "skipped_ramified"
    assert statuses[(10, 3)] == "ok"
