"""Kummer elements of the completed Q-unit group: construction of the
element alpha whose p-power roots generate the Kummer Z_p-extension ramified
exactly at Q, certificates for its valuation and local-torsion properties,
and Z_p-ranks of Kummer extensions attached to finitely generated subgroups.

alpha is always a formal product over an S-unit basis with Z_p exponents;
its exponents are genuinely p-adic and it is never a single field element.
"""

from __future__ import annotations

from dataclasses import dataclass

from .iwasawa import _check_q_pair, mq_order
from .localize import (INDET, TRUE, FALSE, completions_above_p, eq_membership,
                       is_loc_torsion, loc, zp_matrix_rank, RankReport)
from .ntheory import factorint
from .padic import PAdicNumber, PrecisionError, vp
from .quadfield import (FieldElement, RealQuadraticField, SUnitBasisData,
                        SUnitBasisEntry, SUnitProduct, fundamental_unit,
                        ideal_valuation, prime_ideals_above,
                        principal_generator, rational_ideal)


@dataclass
class KummerCertificate:
    alpha: SUnitProduct
    field: RealQuadraticField
    p: int
    N: int
    Q: tuple
    val_q1: PAdicNumber = None
    val_q2: PAdicNumber = None
    loc_p_torsion: str = INDET
    a_exponent: object = None
    m_q: int = 0
    status: str = "indeterminate"

    @property
    def predicted_intersection_degree(self):
        """p^a, the predicted index [L_Q ∩ (minus part) : cyclotomic field];
        a prediction from the valuation data only, not a field construction."""
        if self.a_exponent is None:
            return None
        return self.p ** self.a_exponent

    def to_json(self):
        return {
            "schema": 1,
            "field": self.field.spec_string(),
            "p": self.p,
            "N": self.N,
            "alpha": self.alpha.to_json() if self.alpha else None,
            "Q": [str(q) for q in self.Q],
            "valuations": [repr(self.val_q1), repr(self.val_q2)],
            "loc_p_torsion": self.loc_p_torsion == TRUE,
            "a_exponent": self.a_exponent,
            "m_Q": self.m_q,
            "predicted_intersection_degree":
                self.predicted_intersection_degree,
            "status": self.status,
        }


def _adhoc_entry(K, element, primes, label):
    vals = {}
    for q in primes:
        v = ideal_valuation(element, q)
        if v:
            vals[q.key()] = v
    return SUnitBasisEntry(element, vals, label, "lattice")


def _pi_for(data: SUnitBasisData, idx: int, order: int):
    """Generator of q_idx^order (order = class order of q_idx)."""
    w = [order if i == idx else 0 for i in range(len(data.primes))]
    return data._realize(w)


def construct_alpha(K: RealQuadraticField, p: int, Q, N: int) \
        -> KummerCertificate:
    """The explicit Kummer element: loc_p(alpha) torsion, supported on Q,
    with both Q-valuations generating the ideal (m_Q)."""
    q1, q2 = _check_q_pair(K, p, *Q)
    rep = mq_order(K, p, (q1, q2), N)
    if not rep.stable:
        raise PrecisionError("m_Q did not stabilize; raise the precision")
    m_q = rep.m_q
    a1 = rep.a1

    clg_h = 1
    w_exp = 0
    if not K.is_rational:
        from .quadfield import class_group
        clg = class_group(K)
        clg_h = clg.h
        for d in clg.invariant_factors:
            if d % p == 0:
                w_exp = max(w_exp, vp(d, p))
    n_prime_to_p = clg_h // p**(vp(clg_h, p) if clg_h % p == 0 else 0)

    m = w_exp
    if a1.abs_prec <= m:
        raise PrecisionError("insufficient precision for the congruence split")
    b1 = a1.residue(m) if m > 0 else 0
    b2 = 1
    c1 = (a1 - PAdicNumber.exact(b1, p, a1.abs_prec + 2)).shift(-m)
    c2 = PAdicNumber.exact(0, p, N + 4)

    scale = n_prime_to_p * m_q
    J = q1**(b1 * scale) * q2**(b2 * scale)
    beta = principal_generator(J)
    assert beta is not None, "congruence-split ideal failed to be principal"

    primes = [q1, q2]
    data = SUnitBasisData(K, primes)
    h1 = _class_order(K, q1)
    h2 = _class_order(K, q2)
    pi1 = _pi_for(data, 0, h1)
    pi2 = _pi_for(data, 1, h2)
    entries = [e for e in data.entries if e.kind in ("torsion", "unit")]
    entries.append(_adhoc_entry(K, beta, primes, "beta"))
    entries.append(_adhoc_entry(K, pi1, primes, "pi1"))
    entries.append(_adhoc_entry(K, pi2, primes, "pi2"))
    basis = SUnitBasisData.__new__(SUnitBasisData)
    basis.field = K
    basis.primes = primes
    basis.entries = entries
    basis.lattice = data.lattice

    t1 = c1 * PAdicNumber.exact(n_prime_to_p * p**m // h1 * m_q, p,
                                a1.abs_prec + 2)
    t2 = c2
    zero = PAdicNumber.exact(0, p, N + 4)
    one = PAdicNumber.exact(1, p, N + 4)
    if K.is_rational:
        exponents = [zero, one, t1, t2]
    else:
        exponents = [zero, zero, one, t1, t2]
    alpha0 = SUnitProduct(basis, p, exponents, N)

    # unit correction: divide by eps^x so that the local 1-unit part dies
    places = completions_above_p(K, p)
    if not K.is_rational:
        eps_idx = 1
        x = _solve_unit_exponent(alpha0, places, p, N)
        new_exp = list(alpha0.exponents)
        new_exp[eps_idx] = new_exp[eps_idx] - x
        alpha = SUnitProduct(basis, p, new_exp, N)
    else:
        alpha = alpha0
    return verify_alpha(alpha, K, p, (q1, q2), N)


def _class_order(K, q) -> int:
    if K.is_rational:
        return 1
    from .abgroup import element_order
    from .quadfield import class_group
    clg = class_group(K)
    if not clg.gen_orders:
        return 1
    return element_order(clg.group, clg.class_of(q))


def _solve_unit_exponent(alpha0: SUnitProduct, places, p: int, N: int):
    """x in Z_p with log loc(alpha0) = x * log loc(eps) at every place."""
    K = alpha0.field
    eps = fundamental_unit(K)
    x = None
    checks = []
    for place in places:
        la = loc(alpha0, place, p, N).log_coords()
        le = loc(eps, place, p, N).log_coords()
        for ca, ce in zip(la, le):
            if ce.is_marker:
                continue
            cand = ca / ce
            if cand.m is not None and cand.v < 0:
                raise AssertionError("unit correction is not integral")
            if x is None:
                x = cand
            else:
                checks.append((ca, ce))
    if x is None:
        raise PrecisionError("precision underflow in the unit-correction solve")
    for (ca, ce) in checks:
        resid = ca - x * ce
        if not resid.is_marker:
            raise AssertionError("unit correction inconsistent across places")
    return x


def verify_alpha(alpha: SUnitProduct, K: RealQuadraticField, p: int, Q,
                 N: int) -> KummerCertificate:
    """Check the four certificate clauses; accept, reject naming the failed
    clause, or report indeterminate when the data sits below precision."""
    q1, q2 = Q
    if isinstance(q1, int):
        q1 = rational_ideal(K, q1)
    if isinstance(q2, int):
        q2 = rational_ideal(K, q2)
    cert = KummerCertificate(alpha, K, p, N, (q1, q2))

    rep = mq_order(K, p, (q1, q2), N)
    cert.m_q = rep.m_q
    if not rep.stable:
        cert.status = "indeterminate"
        return cert

    # (i) support confined to Q
    if not eq_membership(alpha, [q1, q2]):
        cert.status = "rejected:support"
        return cert

    # (ii) nonzero valuations generating the same ideal of Z_p
    v1 = alpha.valuation_at(q1.key())
    v2 = alpha.valuation_at(q2.key())
    cert.val_q1, cert.val_q2 = v1, v2
    if v1.is_marker or v2.is_marker:
        cert.status = "indeterminate"
        return cert
    if v1.v != v2.v:
        cert.status = "rejected:valuations"
        return cert
    cert.a_exponent = v1.v

    # (iii) loc_p(alpha) torsion
    verdicts = [is_loc_torsion(alpha, place, p, N)
                for place in completions_above_p(K, p)]
    if FALSE in verdicts:
        cert.loc_p_torsion = FALSE
        cert.status = "rejected:loc_p"
        return cert
    if INDET in verdicts:
        cert.loc_p_torsion = INDET
        cert.status = "indeterminate"
        return cert
    cert.loc_p_torsion = TRUE

    # (iv) m_Q divides p^a
    if cert.a_exponent < (vp(cert.m_q, p) if cert.m_q % p == 0 else 0):
        cert.status = "rejected:divisibility"
        return cert
    cert.status = "accepted"
    return cert


# ------------------------------------------------------------- Kummer ranks

def _support_primes(K, elements):
    ells = set()
    for t in elements:
        nn = t.norm()
        for n in (nn.numerator, nn.denominator):
            for ell in factorint(abs(n)):
                ells.add(ell)
    primes = []
    for ell in sorted(ells):
        for q in prime_ideals_above(K, ell):
            if any(ideal_valuation(t, q) for t in elements):
                primes.append(q)
    return primes


def kummer_rank(T, K: RealQuadraticField, p: int, N: int) -> RankReport:
    """Z_p-rank of the closure of <T> in the completed multiplicative group.

    Field elements are decomposed exactly over an S-unit basis (the
    completed S-unit group injects into the completed multiplicative group),
    so the rank is the exact rank of the integer exponent matrix; formal
    products contribute p-adic exponent rows with precision certificates.
    """
    if not T:
        return RankReport(0, True)
    if all(isinstance(t, FieldElement) for t in T):
        primes = _support_primes(K, T)
        data = SUnitBasisData(K, primes)
        rows = []
        for t in T:
            coords = data.decompose(t)
            rows.append([PAdicNumber.exact(c, p, N + 4)
                         for c in coords[1:]])  # drop the torsion sign
        return zp_matrix_rank(rows)
    if all(isinstance(t, SUnitProduct) for t in T):
        basis = T[0].basis
        for t in T:
            if t.basis is not basis:
                raise ValueError("formal products must share a basis")
        rows = []
        for t in T:
            rows.append([e for e, entry in zip(t.exponents, basis.entries)
                         if entry.kind != "torsion"])
        return zp_matrix_rank(rows)
    raise TypeError("mixed element kinds in kummer_rank")


def same_kummer_extension(x, y, K: RealQuadraticField, p: int, N: int) -> str:
    """Do x and y generate the same Kummer Z_p-extension?  True iff their
    joint closure has rank 1."""
    for t in (x, y):
        r = kummer_rank([t], K, p, N)
        if r.rank == 0 and r.certified:
            raise ValueError("input is torsion; no Kummer extension")
        if r.rank == 0:
            return INDET  # cannot certify the non-torsion precondition
    r = kummer_rank([x, y], K, p, N)
    if r.rank == 1 and r.certified:
        return TRUE
    if r.rank == 2:
        return FALSE
    return INDET
