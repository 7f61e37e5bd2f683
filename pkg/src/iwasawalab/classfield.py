"""Finite-precision model of the Galois group of the maximal abelian
p-extension of F unramified outside p, as the p-part of the ray class group
of conductor p^(N+1), together with Frobenius images, the degree map
(normalized by log(1+p)), and the even-side inertia-order criterion.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abgroup import (FiniteAbelianGroup, GroupElement,
                      solve_congruence_lattice)
from .ntheory import isprime
from .padic import PAdicNumber, angle_log, plog, vp
from .quadfield import (IntegralIdeal, RealQuadraticField, _residue_char,
                        rational_ideal, ray_class_group)

_Q_CYC_CACHE = {}


def e_of_q(q, p: int) -> int:
    """p-part of N(q) - 1, the target inertia order of the even criterion."""
    n = q.norm if isinstance(q, IntegralIdeal) else int(q)
    if n % p == 0:
        raise ValueError("q must be coprime to p")
    m = n - 1
    return p ** (vp(m, p) if m % p == 0 else 0) if m else 1


def cyclotomic_dlog(n: int, p: int, M: int) -> int:
    """Position of the ray class of (n) in the cyclotomic quotient Z/p^(M-1),
    i.e. log<n>/log(1+p) mod p^(M-1); exact for exact integer input."""
    if n % p == 0:
        raise ValueError("n must be coprime to p")
    key = (abs(n), p, M)
    if key not in _Q_CYC_CACHE:
        x = PAdicNumber.exact(abs(n), p, M)
        deg = angle_log(x) / plog(PAdicNumber.exact(1 + p, p, M))
        if deg.is_marker:
            _Q_CYC_CACHE[key] = 0
        else:
            _Q_CYC_CACHE[key] = deg.residue(M - 1)
    return _Q_CYC_CACHE[key]


@dataclass
class GaloisGroupG:
    """p-part of Cl(p^M) at M = N+1, modelling G at precision N."""
    field: RealQuadraticField
    p: int
    N: int
    rc: object                       # RayClassGroupData
    group: FiniteAbelianGroup
    stable: bool
    cyc_hom: list                    # phi on the invariant coordinates
    mu_image: tuple = ()             # image of local p-power roots of unity

    @property
    def modulus_exponent(self) -> int:
        return self.N + 1

    def g_prime(self):
        """G modulo the image of the local p-power roots of unity.

        For p odd and unramified that image is trivial, so G' = G; the
        quotient path exists for completeness."""
        if not self.mu_image:
            return self
        raise NotImplementedError("nontrivial mu-quotient is unreachable "
                                  "for supported (unramified) inputs")

    def frobenius_class(self, q: IntegralIdeal) -> GroupElement:
        if _residue_char(q) == self.p:
            raise ValueError("q must be coprime to p")
        return self.rc.p_class_of_ideal(q)

    def degree(self, q: IntegralIdeal) -> PAdicNumber:
        """deg(Frob_q) = log<N(q)> / log(1+p), with precision tracking."""
        p = self.p
        M = self.modulus_exponent
        x = PAdicNumber.exact(q.norm, p, M + 2)
        return angle_log(x) / plog(PAdicNumber.exact(1 + p, p, M + 2))

    def degree_exact(self, q: IntegralIdeal) -> int:
        """Exact cyclotomic-quotient position of Frob_q, mod p^N."""
        return cyclotomic_dlog(q.norm, self.p, self.modulus_exponent)

    def degree_kernel_lattice(self):
        """Lattice (in invariant coordinates) of classes with trivial image
        in the cyclotomic quotient Z/p^N."""
        k = len(self.group.invariant_factors)
        if k == 0:
            return []
        rows = [list(self.cyc_hom)]
        return solve_congruence_lattice(rows, [self.p**self.N])

    def stabilization_pattern(self, other: "GaloisGroupG") -> bool:
        """Factor-by-factor comparison with the next-level group: every
        invariant factor must persist or scale by exactly p at the top."""
        a = sorted(self.group.invariant_factors)
        b = sorted(other.group.invariant_factors)
        if len(a) != len(b):
            return False
        scaled = 0
        for x, y in zip(a, b):
            if y == x:
                continue
            if y == self.p * x:
                scaled += 1
            else:
                return False
        return True

    def report(self):
        inv = list(self.group.invariant_factors)
        return {
            "field": self.field.spec_string(),
            "p": self.p,
            "N": self.N,
            "invariant_factors": inv,
            "stable": self.stable,
            "gamma_convention": "chi(gamma) = 1 + p",
        }


def _cyc_hom_on_invariants(rc, p: int, M: int):
    """phi_cyc on the p-part invariant coordinates of the ray class group.

    Built from the norms of the ambient generators, transported through the
    inverse of the SNF transform; consistency on all relations is checked.
    """
    K = rc.field
    c_ambient = []
    norms = rc.units.gen_norm_ints()
    for n in norms:
        c_ambient.append(cyclotomic_dlog(n, p, M))
    for g_ideal in rc.class_gen_ideals:
        c_ambient.append(cyclotomic_dlog(g_ideal.norm, p, M))
    mod = p**(M - 1)
    for row in rc.relations:
        s = sum(a * c for a, c in zip(row, c_ambient)) % mod
        assert s == 0, "cyclotomic map is inconsistent with the relations"
    U = rc.presentation.transform  # rows for kept coordinates only
    # recover phi on invariant coordinates: solve c = phi o U over kept rows
    # using the full unimodular transform stored in the presentation
    return _transport_hom(rc, c_ambient, mod)


def _transport_hom(rc, c_ambient, mod):
    """Express an ambient hom (mod `mod`) in p-part invariant coordinates.

    With z = U x the invariant coordinates, the hom c.x becomes y.z for
    y = c U^{-1}; coordinates whose order is prime to p must carry y_i = 0.
    """
    from fractions import Fraction
    n = rc.ambient_rank
    U = rc.full_transform
    A = [[Fraction(U[i][j]) for i in range(n)] for j in range(n)]  # U^T
    y = _solve_linear(A, [Fraction(c) for c in c_ambient])
    for yi in y:
        assert yi.denominator == 1, "transform inverse is not integral"
    yint = [int(t) % mod for t in y]
    keep = set(rc.p_keep)
    for i in range(n):
        if i not in keep:
            assert yint[i] % mod == 0, \
                "cyclotomic map does not factor through the p-part"
    return [yint[i] for i in rc.p_keep]


def _solve_linear(A, rhs):
    """Solve A x = rhs over the rationals (A square, invertible)."""
    from fractions import Fraction
    n = len(A)
    M = [row[:] + [rhs[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        M[col] = [v / M[col][col] for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                M[r] = [a - M[r][col] * b for a, b in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def group_G(K: RealQuadraticField, p: int, N: int) -> GaloisGroupG:
    """The Galois group model at precision N (ray conductor p^(N+1)),
    with stabilization checked against conductor p^(N+2)."""
    if N < 1:
        raise ValueError("N must be at least 1")
    if p % 2 == 0 or not isprime(p):
        raise ValueError("p must be an odd prime")
    if not K.is_rational and K.D % p == 0:
        raise ValueError("p = %d ramifies in %s" % (p, K.spec_string()))
    M = N + 1
    rc = ray_class_group(K, p**M, p)
    rc_next = ray_class_group(K, p**(M + 1), p)
    cyc = _cyc_hom_on_invariants(rc, p, M)
    G = GaloisGroupG(K, p, N, rc, rc.p_group, True, cyc)
    G_next = GaloisGroupG(K, p, N + 1, rc_next, rc_next.p_group, True, [])
    G.stable = G.stabilization_pattern(G_next)
    return G


def frobenius_image(G: GaloisGroupG, q: IntegralIdeal):
    """(class of q in G_N, degree as a PAdicNumber)."""
    cls = G.frobenius_class(q)
    deg = G.degree(q)
    if not deg.is_marker:
        # cross-check the log-based degree against the exact dlog
        k = min(deg.abs_prec, G.N)
        if k > 0 and deg.v >= 0:
            assert deg.residue(k) == G.degree_exact(q) % G.p**k
    return cls, deg


def even_criterion(K: RealQuadraticField, p: int, q: IntegralIdeal, N: int):
    """Even-side inertia test: the inertia image at q in the ray tower
    must have order e(q), computed as a ratio of ray class orders at two
    conductor levels."""
    if isinstance(q, int):
        q = rational_ideal(K, q)
    eq = e_of_q(q, p)
    orders = []
    for M in (N + 1, N + 2):
        top = ray_class_group(K, q * rational_ideal(K, p**M), p)
        bot = ray_class_group(K, p**M, p)
        assert top.p_order % bot.p_order == 0
        orders.append(top.p_order // bot.p_order)
    status = "pass" if orders[0] == orders[1] == eq else \
        ("indeterminate" if orders[0] != orders[1] else "fail")
    return {
        "field": K.spec_string(),
        "p": p,
        "q": str(q),
        "norm_q": q.norm,
        "e_q": eq,
        "inertia_orders": orders,
        "status": status,
    }
