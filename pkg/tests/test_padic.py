import random

import pytest
from hypothesis import given, settings, strategies as st

from iwasawalab.padic import (PAdicNumber, UnramifiedQuadElem, AtLeast, arith,
                              val_and_unit, teichmueller, angle, plog,
                              log_ratio, angle_log, vp)


def pexp_oracle(x: PAdicNumber) -> PAdicNumber:
    """Series exponential, used only as a test oracle (input in pZ_p, p odd)."""
    p = x.p
    A = x.abs_prec
    if x.is_marker:
        return PAdicNumber.from_residue(1, p, A)
    c = x.valuation()
    assert c >= 1
    # v(x^k/k!) = k*c - (k - s_p(k))/(p-1) >= k(c - 1/(p-1)) -> choose K
    K = 1
    while K * c - (K // (p - 1) + 2) < A:
        K += 1
    guard = 1
    while p**guard <= K:
        guard += 1
    modg = p**(A + 2 * guard)
    z = x.residue(A) % modg
    total, zk, fact_unit, fact_val = 1, 1, 1, 0
    for k in range(1, K + 1):
        zk = zk * z % modg
        j = vp(k, p) if k % p == 0 else 0
        fact_val += j
        fact_unit = fact_unit * (k // p**j) % modg
        term = zk // p**fact_val * pow(fact_unit, -1, modg) % modg
        total = (total + term) % modg
    return PAdicNumber.from_residue(total, p, A)


# ------------------------------------------------------------------ arith

def test_add_simple():
    x = PAdicNumber.of(12, 5, 3)
    y = PAdicNumber.of(20, 5, 3)
    assert arith(x, y, "add").residue(3) == 32


def test_inv_7_mod_125():
    x = PAdicNumber.of(7, 5, 3)
    assert arith(x, None, "inv" if False else "inv") is not None  # smoke
    inv = x.inv()
    assert inv.residue(3) == 18
    assert 7 * 18 % 125 == 1


def test_mul_identity_random():
    rng = random.Random(1)
    for _ in range(50):
        p = rng.choice([3, 5, 7])
        n = rng.randrange(1, p**6)
        x = PAdicNumber.of(n, p, 6)
        one = PAdicNumber.one(p, 6)
        y = x * one
        if x.is_marker:
            assert y.is_marker
        else:
            assert y.residue(y.abs_prec) == x.residue(y.abs_prec)


def test_mixed_primes_rejected():
    with pytest.raises(ValueError):
        PAdicNumber.of(1, 3, 3) + PAdicNumber.of(1, 5, 3)


def test_inv_of_marker_rejected():
    with pytest.raises(ZeroDivisionError):
        PAdicNumber.zero_marker(5, 3).inv()


def test_even_p_rejected():
    with pytest.raises(ValueError):
        PAdicNumber.of(1, 2, 3)


def test_cancellation_loses_precision():
    x = PAdicNumber.of(1 + 9, 3, 4)
    y = PAdicNumber.of(1, 3, 4)
    d = x - y  # = 9, known mod 3^4
    assert d.valuation() == 2
    assert d.digits == 2


# ------------------------------------------------------------------ val/unit

def test_val_and_unit_18():
    v, u = val_and_unit(PAdicNumber.of(18, 3, 3))
    assert v == 2 and u.residue(1) == 2


def test_val_and_unit_50():
    v, u = val_and_unit(PAdicNumber.of(50, 5, 3))
    assert v == 2 and u.residue(1) == 2


def test_val_and_unit_zero_marker():
    v, u = val_and_unit(PAdicNumber.of(27, 3, 3))
    assert v == AtLeast(3) and u is None


# ------------------------------------------------------------------ omega

def test_teichmueller_one():
    assert teichmueller(PAdicNumber.of(1, 5, 3)).residue(3) == 1


def test_teichmueller_2_mod_125():
    assert teichmueller(PAdicNumber.of(2, 5, 3)).residue(3) == 57


def test_teichmueller_2_mod_27():
    assert teichmueller(PAdicNumber.of(2, 3, 3)).residue(3) == 26


def test_teichmueller_nonunit_rejected():
    with pytest.raises(ValueError):
        teichmueller(PAdicNumber.of(6, 3, 3))


# ------------------------------------------------------------------ angle

def test_angle_2_at_3():
    a = angle(PAdicNumber.of(2, 3, 3))
    assert a.residue(3) == 25
    assert (a - PAdicNumber.one(3, 3)).valuation() == 1


def test_angle_fixed_on_one_units():
    x = PAdicNumber.of(1 + 3, 3, 4)
    assert angle(x).residue(4) == 4


def test_angle_7_at_3():
    assert angle(PAdicNumber.of(7, 3, 3)).residue(3) == 7


# ------------------------------------------------------------------ plog

def test_plog_one():
    assert plog(PAdicNumber.of(1, 3, 3)).is_marker


def test_plog_4_mod_27():
    assert plog(PAdicNumber.of(4, 3, 3)).residue(3) == 21


def test_plog_16_mod_27():
    assert plog(PAdicNumber.of(16, 3, 3)).residue(3) == 15


def test_plog_rejects_non_one_unit():
    with pytest.raises(ValueError):
        plog(PAdicNumber.of(2, 3, 3))


def test_plog_valuation_equals_input():
    rng = random.Random(2)
    for _ in range(60):
        p = rng.choice([3, 5, 7])
        c = rng.randrange(1, 3)
        u = 1 + p**c * rng.randrange(1, p**3)
        if vp(u - 1, p) != c:
            continue
        lg = plog(PAdicNumber.of(u, p, 8))
        assert lg.valuation() == c


# ------------------------------------------------------------------ log_ratio

def test_log_ratio_self():
    u = PAdicNumber.of(4, 3, 6)
    assert log_ratio(u, u).residue(4) == 1


def test_log_ratio_cube():
    u = PAdicNumber.of(4, 3, 6)
    w = PAdicNumber.of(4**3, 3, 6)
    assert log_ratio(u, w).residue(4) == 3


def test_log_ratio_angles_2_5():
    u = angle(PAdicNumber.of(2, 3, 3))
    w = angle(PAdicNumber.of(5, 3, 3))
    r = log_ratio(u, w)
    assert r.abs_prec >= 2
    assert r.residue(2) == 5  # -4 mod 9


def test_log_ratio_rejects_log_zero():
    one = PAdicNumber.of(1, 3, 4)
    with pytest.raises(ValueError):
        log_ratio(one, PAdicNumber.of(4, 3, 4))


# ------------------------------------------------------------------ identities

@settings(max_examples=120, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(min_value=1, max_value=10**9),
       st.integers(min_value=4, max_value=12))
def test_omega_angle_reconstruction(p, n, N):
    if n % p == 0:
        n += 1
    x = PAdicNumber.of(n, p, N)
    y = teichmueller(x) * angle(x)
    assert y.residue(N) == x.residue(N)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(min_value=0, max_value=10**8),
       st.integers(min_value=0, max_value=10**8))
def test_log_homomorphism(p, a, b):
    N = 8
    x = PAdicNumber.of(1 + p * (a % p**(N - 1)), p, N)
    y = PAdicNumber.of(1 + p * (b % p**(N - 1)), p, N)
    lhs = plog(x * y)
    rhs = plog(x) + plog(y)
    assert (lhs - rhs).is_marker


def test_exp_log_roundtrip_on_deep_units():
    rng = random.Random(3)
    for _ in range(40):
        p = rng.choice([3, 5, 7])
        N = rng.randrange(4, 9)
        u = 1 + p**2 * rng.randrange(0, p**(N - 2))
        x = PAdicNumber.of(u, p, N)
        back = pexp_oracle(plog(x))
        assert back.residue(N) == u % p**N


def test_precision_monotonicity():
    rng = random.Random(4)
    for _ in range(60):
        p = rng.choice([3, 5, 7])
        N = rng.randrange(3, 9)
        n = rng.randrange(1, p**N)
        if n % p == 0:
            n += 1
        lo = angle(PAdicNumber.of(n, p, N))
        hi = angle(PAdicNumber.of(n, p, N + 2))
        assert hi.residue(lo.abs_prec) == lo.residue(lo.abs_prec)
        llo, lhi = plog(lo), plog(hi)
        if not llo.is_marker:
            assert lhi.residue(llo.abs_prec) == llo.residue(llo.abs_prec)


def test_pow_zp_matches_integer_pow():
    p, N = 5, 7
    x = PAdicNumber.of(1 + 5 * 3, p, N)
    a = PAdicNumber.exact(11, p, 6)
    y = x.pow_zp(a)
    assert y.residue(y.abs_prec) == pow(6 + 10, 11, 5**y.abs_prec)


def test_pow_zp_respects_exponent_precision():
    p = 3
    x = PAdicNumber.of(4, p, 8)
    a = PAdicNumber.from_residue(2, p, 2)  # exponent known mod 9 only
    y = x.pow_zp(a)
    assert y.abs_prec == 3  # c=1 plus two exponent digits
    assert y.residue(3) == pow(4, 2, 27)


# ------------------------------------------------------------------ quad ext

def quad(a, b, p=5, N=6, r=None):
    if r is None:
        r = {3: 2, 5: 2, 7: 3}[p]
    return UnramifiedQuadElem.from_residues(a, b, r, p, N)


def test_quad_norm_trace():
    x = quad(3, 1)
    assert x.norm().residue(6) == (9 - 2) % 5**6
    assert x.trace().residue(6) == 6


def test_quad_mul_commutative_associative():
    rng = random.Random(5)
    for _ in range(40):
        xs = [quad(rng.randrange(0, 5**4), rng.randrange(0, 5**4), N=4)
              for _ in range(3)]
        x, y, z = xs
        l = (x * y) * z
        r = x * (y * z)
        assert (l - r).a.is_marker and (l - r).b.is_marker
        c = x * y
        d = y * x
        assert (c - d).a.is_marker and (c - d).b.is_marker


def test_quad_inv():
    x = quad(3, 1)
    y = x * x.inv()
    assert y.is_one_within_precision()


def test_quad_valuation():
    assert quad(5, 10, N=4).valuation() == 1
    assert quad(0, 5, N=4).valuation() == 1
    assert quad(3, 5, N=4).valuation() == 0


def test_quad_log_homomorphism():
    rng = random.Random(6)
    p, N = 5, 6
    for _ in range(20):
        x = quad(1 + 5 * rng.randrange(0, 5**4), 5 * rng.randrange(0, 5**4), N=N)
        y = quad(1 + 5 * rng.randrange(0, 5**4), 5 * rng.randrange(0, 5**4), N=N)
        l = (x * y).log_one_unit()
        r = x.log_one_unit() + y.log_one_unit()
        assert (l - r).a.is_marker and (l - r).b.is_marker


def test_quad_angle_log_of_torsion_is_zero():
    # -1 has trivial 1-unit part
    x = quad(5**6 - 1, 0)
    lg = x.angle_log()
    assert lg.a.is_marker and lg.b.is_marker


def test_angle_log_scalar_matches_composition():
    for n in (2, 7, 11):
        x = PAdicNumber.of(n, 3, 6)
        direct = angle_log(x)
        composed = plog(angle(x))
        assert (direct - composed).is_marker


def test_log_ratio_exponentiates_back():
    rng = random.Random(9)
    for _ in range(30):
        p = rng.choice([3, 5, 7])
        N = rng.randrange(5, 9)
        u = PAdicNumber.of(1 + p * rng.randrange(1, p**(N - 1)), p, N)
        k = rng.randrange(1, 40)
        w = u ** k
        a = log_ratio(u, w)
        back = u.pow_zp(a)
        assert (back - w).is_marker
        assert a.residue(min(2, a.abs_prec)) == k % p**min(2, a.abs_prec)
