"""Headline computables: the degree-0 Frobenius module attached to a pair of
primes, its image order m_Q, Leopoldt defects, the Greenberg-Wiles dimension
bookkeeping, and the defect-never-one scan over quadratic fields.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abgroup import (element_order, lattice_intersection,
                      subgroup_order_from_lattice)
from .classfield import GaloisGroupG, group_G
from .localize import completions_above_p, loc, zp_matrix_rank
from .ntheory import isprime
from .padic import PAdicNumber, PrecisionError, angle_log, vp
from .quadfield import (IntegralIdeal, RealQuadraticField,
                        fundamental_unit, rational_ideal)


def standing_assumption_holds(K: RealQuadraticField, p: int) -> bool:
    """Whether [F(mu_p):F] = 2.  For p unramified in a real quadratic F the
    field cannot sit inside Q(mu_p), so this reduces to p = 3."""
    return p == 3


def is_inert_in_cyclotomic(q, K: RealQuadraticField, p: int) -> bool:
    """True iff the Frobenius of q generates the cyclotomic Z_p-quotient,
    i.e. v_p(N(q)^(p-1) - 1) = 1."""
    if isinstance(q, int):
        q = rational_ideal(K, q)
    n = q.norm
    if n % p == 0:
        raise ValueError("q lies above p")
    m = pow(n, p - 1) - 1
    return vp(m, p) == 1


@dataclass
class FrobeniusModuleReport:
    field: RealQuadraticField
    p: int
    N: int
    q1: IntegralIdeal
    q2: IntegralIdeal
    a1: PAdicNumber
    a2: int
    degree_zero_margin: int          # certified valuation of a1*d1 + d2
    m_q: int = 0
    stable: bool = False
    provisional_orders: tuple = ()
    group_invariants: tuple = ()

    def to_json(self):
        return {
            "field": self.field.spec_string(),
            "p": self.p,
            "N": self.N,
            "q1": str(self.q1),
            "q2": str(self.q2),
            "a1": repr(self.a1),
            "a1_residue": self.a1.residue(self.a1.abs_prec)
            if not self.a1.is_marker else None,
            "a1_precision": self.a1.abs_prec,
            "a2": self.a2,
            "m_q": self.m_q,
            "stable": self.stable,
            "group_invariants": list(self.group_invariants),
            "gamma_convention": "chi(gamma) = 1 + p",
        }


def _check_q_pair(K, p, q1, q2):
    if isinstance(q1, int):
        q1 = rational_ideal(K, q1)
    if isinstance(q2, int):
        q2 = rational_ideal(K, q2)
    if q1 == q2:
        raise ValueError("the two primes must be distinct")
    for q in (q1, q2):
        if not is_inert_in_cyclotomic(q, K, p):
            raise ValueError("%s is not inert in the cyclotomic tower "
                             "(norm %d)" % (q, q.norm))
    return q1, q2


def mq_generator(K: RealQuadraticField, p: int, Q, N: int) \
        -> FrobeniusModuleReport:
    """a1 = -log<N(q2)>/log<N(q1)>, a2 = 1: the degree-0 generator data."""
    q1, q2 = _check_q_pair(K, p, *Q)
    work = N + 2
    l1 = angle_log(PAdicNumber.exact(q1.norm, p, work))
    l2 = angle_log(PAdicNumber.exact(q2.norm, p, work))
    a1 = -(l2 / l1)
    # degree-0 check: a1*log<N(q1)> + log<N(q2)> vanishes within precision
    resid = a1 * l1 + l2
    if not resid.is_marker:
        raise AssertionError("degree-0 combination failed to vanish")
    return FrobeniusModuleReport(K, p, N, q1, q2, a1, 1, resid.v)


def _image_order_at_level(K, p, L, q1, q2, a1_digits_needed=None):
    """(order of the rounded degree-0 element in G_L, GaloisGroupG)."""
    G = group_G(K, p, L)
    F1 = G.frobenius_class(q1)
    F2 = G.frobenius_class(q2)
    v1 = vp(element_order(G.group, F1), p) \
        if element_order(G.group, F1) % p == 0 else 0
    work = max(L + 2, v1 + 3)
    l1 = angle_log(PAdicNumber.exact(q1.norm, p, work))
    l2 = angle_log(PAdicNumber.exact(q2.norm, p, work))
    a1 = -(l2 / l1)
    if a1.abs_prec < v1:
        return None, G, a1
    a1_int = a1.residue(v1) if v1 > 0 else 0
    g = G.group.add(G.group.scale(a1_int, F1), F2)
    order = element_order(G.group, g)
    # cross-check by the exact subgroup route when the level is high enough
    if L >= v1:
        S = G.group.subgroup_lattice([F1, F2])
        D = G.degree_kernel_lattice()
        inter = lattice_intersection(S, D)
        m_sub = subgroup_order_from_lattice(G.group, inter)
        assert m_sub == order, "subgroup and element orders disagree"
    return order, G, a1


def mq_order(K: RealQuadraticField, p: int, Q, N: int) \
        -> FrobeniusModuleReport:
    """Order m_Q of the image of the degree-0 Frobenius module in G' = G,
    certified by agreement at precisions N and N+2."""
    q1, q2 = _check_q_pair(K, p, *Q)
    rep = mq_generator(K, p, (q1, q2), N)
    orders = []
    groups = []
    for L in (N, N + 2):
        order, G, _ = _image_order_at_level(K, p, L, q1, q2)
        if order is None:
            raise PrecisionError("insufficient precision to fix the class "
                                 "of the degree-0 element at level %d" % L)
        orders.append(order)
        groups.append(G)
    rep.m_q = orders[0]
    rep.stable = orders[0] == orders[1]
    rep.provisional_orders = tuple(orders)
    rep.group_invariants = groups[0].group.invariant_factors
    return rep


def degree_zero_pair_element(G: GaloisGroupG, q1, q2):
    """Rounded image of the degree-0 generator for (q1, q2) in G."""
    p = G.p
    F1 = G.frobenius_class(q1)
    o1 = element_order(G.group, F1)
    v1 = vp(o1, p) if o1 % p == 0 else 0
    work = max(G.N + 2, v1 + 3)
    l1 = angle_log(PAdicNumber.exact(q1.norm, p, work))
    l2 = angle_log(PAdicNumber.exact(q2.norm, p, work))
    a1 = -(l2 / l1)
    a1_int = a1.residue(v1) if v1 > 0 else 0
    return G.group.add(G.group.scale(a1_int, F1), G.frobenius_class(q2))


@dataclass
class LeopoldtReport:
    field: RealQuadraticField
    p: int
    precision: int
    defect: int
    regulator_valuation: object      # int or None
    status: str                      # "ok" | "indeterminate"
    standing_assumption: bool

    def to_json(self):
        return {
            "field": self.field.spec_string(),
            "d": 1 if self.field.is_rational else self.field.d,
            "p": self.p,
            "delta": self.defect,
            "regulator_valuation": self.regulator_valuation,
            "precision": self.precision,
            "status": self.status,
            "standing_assumption": self.standing_assumption,
        }


def leopoldt_defect(K: RealQuadraticField, p: int, N: int) -> LeopoldtReport:
    """delta = unit rank minus the Z_p-rank of the log image of the closure
    of the global units in the principal local units at p."""
    if p % 2 == 0 or not isprime(p):
        raise ValueError("p must be an odd prime")
    if K.is_rational:
        return LeopoldtReport(K, p, N, 0, None, "ok",
                              standing_assumption_holds(K, p))
    if K.D % p == 0:
        raise ValueError("p = %d ramifies in %s" % (p, K.spec_string()))
    places = completions_above_p(K, p)
    eps = fundamental_unit(K)
    row = []
    for place in places:
        lv = loc(eps, place, p, N)
        row.extend(lv.log_coords())
    rank = zp_matrix_rank([row])
    defect = K.unit_rank() - rank.rank
    reg_val = None
    nonzero = [c.v for c in row if not c.is_marker]
    if nonzero:
        reg_val = min(nonzero)
    status = "ok" if rank.certified else "indeterminate"
    return LeopoldtReport(K, p, N, defect, reg_val, status,
                          standing_assumption_holds(K, p))


def greenberg_wiles(h0_v: int, h0_vdual: int, local_terms) -> int:
    """Right-hand side of the global Euler-characteristic formula:
    h0(V) - h0(V*(1)) + sum_v (dim L_v - h0(F_v, V))."""
    for n in (h0_v, h0_vdual):
        if not isinstance(n, int) or n < 0:
            raise ValueError("cohomology dimensions must be nonnegative ints")
    total = h0_v - h0_vdual
    for (dim_l, h0_loc) in local_terms:
        if dim_l < 0 or h0_loc < 0:
            raise ValueError("local terms must be nonnegative")
        total += dim_l - h0_loc
    return total


def _squarefree_up_to(n: int):
    out = []
    for d in range(2, n + 1):
        m, q, ok = d, 2, True
        while q * q <= m:
            if m % (q * q) == 0:
                ok = False
                break
            while m % q == 0:
                m //= q
            q += 1
        if ok:
            out.append(d)
    return out


def defect_never_one_scan(d_max: int, primes, N: int = 8):
    """Scan all squarefree d <= d_max (d = 1 meaning Q) and odd primes,
    asserting the Leopoldt defect is never 1 at certified precision."""
    rows = []
    violations = []
    indeterminates = []
    for d in [1] + _squarefree_up_to(d_max):
        K = RealQuadraticField.rationals() if d == 1 \
            else RealQuadraticField(d)
        for p in sorted(primes):
            if p % 2 == 0:
                raise ValueError("primes must be odd")
            if not K.is_rational and K.D % p == 0:
                rows.append({"d": d, "p": p, "delta": None,
                             "regulator_valuation": None, "precision": N,
                             "status": "skipped_ramified"})
                continue
            rep = leopoldt_defect(K, p, N)
            rows.append(rep.to_json())
            if rep.status == "indeterminate":
                indeterminates.append((d, p))
            elif rep.defect == 1:
                violations.append((d, p))
    return {
        "schema": 1,
        "d_max": d_max,
        "primes": sorted(primes),
        "precision": N,
        "rows": rows,
        "violations": violations,
        "indeterminates": indeterminates,
    }
