"""Exact arithmetic in F = Q or F = Q(sqrt d): integers, ideals in Hermite
normal form, prime splitting, class groups, fundamental units, S-units and
principality tests.

All class-group work runs through the cycle structure of reduced quadratic
irrationals (P + sqrt D)/Q under the continued-fraction step, which
classifies ideals up to (wide) equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .abgroup import (FiniteAbelianGroup, GroupElement, decompose_abelian,
                      smith_presentation, solve_congruence_lattice)
from .ntheory import extgcd, isprime, sqrt_mod_prime
from .padic import PAdicNumber


_SQUAREFREE_CACHE = {}


def _is_squarefree(n: int) -> bool:
    if n in _SQUAREFREE_CACHE:
        return _SQUAREFREE_CACHE[n]
    ok = True
    q = 2
    m = n
    while q * q <= m:
        if m % (q * q) == 0:
            ok = False
            break
        while m % q == 0:
            m //= q
        q += 1
    _SQUAREFREE_CACHE[n] = ok
    return ok


class RealQuadraticField:
    """F = Q(sqrt d) for squarefree d > 1, or F = Q (d is None).

    Integral basis {1, w} with w = (D + sqrt D)/2, D the discriminant.
    """

    _cache = {}

    def __new__(cls, d):
        if d in cls._cache:
            return cls._cache[d]
        self = super().__new__(cls)
        if d is None:
            self.d = None
            self.D = 1
        else:
            if d <= 1 or not _is_squarefree(d):
                raise ValueError("d must be squarefree and > 1, got %r" % d)
            self.d = d
            self.D = d if d % 4 == 1 else 4 * d
        self.sqrtD_floor = isqrt(self.D)
        self._class_group = None
        self._fundamental_unit = None
        self._o_walk = None
        cls._cache[d] = self
        return self

    @property
    def is_rational(self) -> bool:
        return self.d is None

    @classmethod
    def rationals(cls) -> "RealQuadraticField":
        return cls(None)

    @classmethod
    def parse(cls, spec: str) -> "RealQuadraticField":
        s = spec.strip().replace(" ", "")
        if s in ("Q", "q"):
            return cls(None)
        for pre, post in (("Q(sqrt{", "})"), ("Q(sqrt(", "))"), ("Q(sqrt", ")")):
            if s.startswith(pre) and s.endswith(post):
                return cls(int(s[len(pre):-len(post)]))
        raise ValueError("cannot parse field spec %r" % spec)

    def spec_string(self) -> str:
        return "Q" if self.is_rational else "Q(sqrt{%d})" % self.d

    # trace/norm data for w
    @property
    def w_trace(self) -> int:
        return self.D

    @property
    def w_norm(self) -> int:
        return (self.D * self.D - self.D) // 4

    def element(self, x, y=0) -> "FieldElement":
        return FieldElement(self, Fraction(x), Fraction(y))

    def from_sqrt_pair(self, u, v) -> "FieldElement":
        """The element u + v*sqrt(D)."""
        u, v = Fraction(u), Fraction(v)
        if self.is_rational:
            if v != 0:
                raise ValueError("no sqrt part over Q")
            return FieldElement(self, u, Fraction(0))
        return FieldElement(self, u - v * self.D, 2 * v)

    def one(self):
        return self.element(1)

    def unit_rank(self) -> int:
        return 0 if self.is_rational else 1

    def __repr__(self):
        return self.spec_string()


@dataclass(frozen=True)
class FieldElement:
    """x + y*w in coordinates over the integral basis {1, w}."""
    field: RealQuadraticField
    x: Fraction
    y: Fraction

    def _check(self, other):
        if self.field is not other.field:
            raise ValueError("elements of different fields")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field, self.x + other.x, self.y + other.y)

    def __neg__(self):
        return FieldElement(self.field, -self.x, -self.y)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.element(other)
        self._check(other)
        K = self.field
        a, b, c, d = self.x, self.y, other.x, other.y
        return FieldElement(K, a * c - b * d * K.w_norm,
                            a * d + b * c + b * d * K.w_trace)

    __rmul__ = __mul__

    def conj(self) -> "FieldElement":
        return FieldElement(self.field, self.x + self.y * self.field.w_trace,
                            -self.y)

    def norm(self) -> Fraction:
        K = self.field
        return self.x * self.x + K.w_trace * self.x * self.y \
            + K.w_norm * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x + self.field.w_trace * self.y

    def inv(self) -> "FieldElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverting 0")
        c = self.conj()
        return FieldElement(self.field, c.x / n, c.y / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, self.x / other, self.y / other)
        self._check(other)
        return self * other.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        r = self.field.one()
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def sqrt_coords(self):
        """(u, v) with self = u + v*sqrt(D)."""
        return (self.x + self.y * self.field.w_trace / 2, self.y / 2)

    def real_sign(self) -> int:
        """Sign of the image under the embedding with sqrt(D) > 0."""
        u, v = self.sqrt_coords()
        if v == 0:
            return (u > 0) - (u < 0)
        if u == 0:
            return (v > 0) - (v < 0)
        if u > 0 and v > 0:
            return 1
        if u < 0 and v < 0:
            return -1
        # mixed signs: compare u^2 with v^2 D
        big = u * u > v * v * self.field.D
        return (1 if u > 0 else -1) if big else (1 if v > 0 else -1)

    def compare_real(self, other) -> int:
        if isinstance(other, (int, Fraction)):
            other = self.field.element(other)
        return (self - other).real_sign()

    def __str__(self):
        K = self.field
        if K.is_rational:
            return str(self.x)
        u, v = self.sqrt_coords()
        if v == 0:
            return str(u)
        d = K.d
        # render over sqrt(d): u + v*sqrt(D) = u + v'*sqrt(d)
        vp = v * 2 if K.D == 4 * d else v
        s = "sqrt(%d)" % d
        if u == 0:
            return "%s*%s" % (vp, s) if vp != 1 else s
        return "%s %s %s*%s" % (u, "+" if vp > 0 else "-", abs(vp), s)


@dataclass(frozen=True)
class IntegralIdeal:
    """Nonzero integral ideal a*Z + (b + c*w)*Z in HNF: c | a, c | b,
    0 <= b < a.  Over Q, c = b = 0 and the ideal is (a)."""
    field: RealQuadraticField
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.field.is_rational:
            if self.b or self.c or self.a <= 0:
                raise ValueError("rational ideal must be (a)")
            return
        if self.a <= 0 or self.c <= 0 or not (0 <= self.b < self.a):
            raise ValueError("bad HNF triple (%d; %d; %d)"
                             % (self.a, self.b, self.c))
        if self.a % self.c or self.b % self.c:
            raise ValueError("HNF triple is not an ideal")

    @property
    def norm(self) -> int:
        return self.a if self.field.is_rational else self.a * self.c

    def key(self):
        return (self.a, self.b, self.c)

    def __str__(self):
        return "(%d; %d; %d)" % (self.a, self.b, self.c)

    def __mul__(self, other):
        K = self.field
        if K.is_rational:
            return IntegralIdeal(K, self.a * other.a, 0, 0)
        pairs = []
        for (u1, v1) in ((self.a, 0), (self.b, self.c)):
            for (u2, v2) in ((other.a, 0), (other.b, other.c)):
                pairs.append((u1 * u2 - v1 * v2 * K.w_norm,
                              u1 * v2 + u2 * v1 + v1 * v2 * K.w_trace))
        a, b, c = _hnf_pairs(pairs)
        return IntegralIdeal(K, a, b, c)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("integral ideals only")
        r = unit_ideal(self.field)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def conj(self) -> "IntegralIdeal":
        K = self.field
        if K.is_rational:
            return self
        pairs = []
        for (u, v) in ((self.a, 0), (self.b, self.c)):
            # conj(u + v w) = u + v D - v w
            pairs.append((u + v * K.w_trace, -v))
        a, b, c = _hnf_pairs(pairs)
        return IntegralIdeal(K, a, b, c)

    def contains(self, e: FieldElement) -> bool:
        if not e.is_integral():
            return False
        u, v = int(e.x), int(e.y)
        if self.field.is_rational:
            return v == 0 and u % self.a == 0
        if v % self.c:
            return False
        n = v // self.c
        return (u - n * self.b) % self.a == 0

    def content_and_primitive(self):
        if self.field.is_rational:
            return self.a, IntegralIdeal(self.field, 1, 0, 0)
        prim = IntegralIdeal(self.field, self.a // self.c,
                             (self.b // self.c) % (self.a // self.c), 1)
        return self.c, prim


def unit_ideal(K: RealQuadraticField) -> IntegralIdeal:
    return IntegralIdeal(K, 1, 0, 0) if K.is_rational \
        else IntegralIdeal(K, 1, 0, 1)


def ideal_from_element(e: FieldElement) -> IntegralIdeal:
    K = e.field
    if not e.is_integral() or e.is_zero():
        raise ValueError("need a nonzero integral element")
    if K.is_rational:
        return IntegralIdeal(K, abs(int(e.x)), 0, 0)
    u, v = int(e.x), int(e.y)
    ew = e * K.element(0, 1)
    pairs = [(u, v), (int(ew.x), int(ew.y))]
    a, b, c = _hnf_pairs(pairs)
    return IntegralIdeal(K, a, b, c)


def rational_ideal(K: RealQuadraticField, n: int) -> IntegralIdeal:
    n = abs(n)
    if n == 0:
        raise ValueError("zero ideal")
    return IntegralIdeal(K, n, 0, 0) if K.is_rational \
        else IntegralIdeal(K, n, 0, n)


def _hnf_pairs(pairs):
    """HNF (a, b, c) of the Z-module spanned by coordinate pairs (u, v)."""
    b, c = 0, 0
    xs = []
    for (u, v) in pairs:
        if v == 0:
            xs.append(u)
            continue
        g, s, t = extgcd(c, v)
        xs.append((v // g) * b - (c // g) * u)
        b, c = s * b + t * u, g
    a = 0
    for x in xs:
        a = gcd(a, x)
    if a == 0 or c == 0:
        raise ValueError("module does not have full rank")
    a = abs(a)
    b %= a
    return a, b, c


# ----------------------------------------------------------- prime splitting

@dataclass(frozen=True)
class SplittingReport:
    kind: str                      # "rational" | "split" | "inert" | "ramified"
    ideals: tuple
    residue_degree: int
    ramification: int


def factor_rational_prime(K: RealQuadraticField, ell: int) -> SplittingReport:
    if not isprime(ell):
        raise ValueError("%d is not prime" % ell)
    if K.is_rational:
        return SplittingReport("rational", (rational_ideal(K, ell),), 1, 1)
    D = K.D
    if D % ell == 0:
        t = _min_poly_roots_mod(K, ell)[0]
        q = IntegralIdeal(K, ell, (-t) % ell, 1)
        return SplittingReport("ramified", (q,), 1, 2)
    roots = _min_poly_roots_mod(K, ell)
    if not roots:
        return SplittingReport("inert", (rational_ideal(K, ell),), 2, 1)
    t1, t2 = roots
    q1 = IntegralIdeal(K, ell, (-t1) % ell, 1)
    q2 = IntegralIdeal(K, ell, (-t2) % ell, 1)
    return SplittingReport("split", (q1, q2), 1, 1)


def _min_poly_roots_mod(K: RealQuadraticField, ell: int):
    """Roots of T^2 - D T + (D^2-D)/4 modulo ell."""
    D, wn = K.D, K.w_norm
    if ell == 2:
        return sorted(t for t in (0, 1) if (t * t - D * t + wn) % 2 == 0)
    if D % ell == 0:
        return [D * pow(2, -1, ell) % ell]
    from .ntheory import legendre
    if legendre(D, ell) == -1:
        return []
    r = sqrt_mod_prime(D, ell)
    inv2 = pow(2, -1, ell)
    return sorted({(D + r) * inv2 % ell, (D - r) * inv2 % ell})


def prime_ideals_above(K: RealQuadraticField, ell: int):
    return list(factor_rational_prime(K, ell).ideals)


def ideal_valuation(x, q: IntegralIdeal) -> int:
    """Exact valuation v_q(x) for a field element or rational number x."""
    K = q.field
    if isinstance(x, (int, Fraction)):
        x = K.element(x)
    if x.is_zero():
        raise ValueError("valuation of 0")
    den = Fraction(x.x.denominator * x.y.denominator // gcd(
        x.x.denominator, x.y.denominator))
    num = x * den
    ell = _residue_char(q)
    e_q = 2 if (not K.is_rational and K.D % ell == 0) else 1
    vden = 0
    d = int(den)
    while d % ell == 0:
        d //= ell
        vden += 1
    v = 0
    power = q
    while power.contains(num):
        v += 1
        power = power * q
    return v - e_q * vden


def _residue_char(q: IntegralIdeal) -> int:
    n = q.norm
    if isprime(n):
        return n
    r = isqrt(n)
    if r * r == n and isprime(r):
        return r
    raise ValueError("not a prime ideal: %s" % (q,))


def residue_degree(q: IntegralIdeal) -> int:
    return 1 if isprime(q.norm) else 2


# ----------------------------------------------- reduction (cycles of ideals)

def _floor_quadirr(P: int, Q: int, s: int) -> int:
    """floor((P + sqrt(D))/Q), where s = isqrt(D), D not a square."""
    if Q > 0:
        return (P + s) // Q
    return (P + s + 1) // Q


def _rho(K: RealQuadraticField, P: int, Q: int):
    """One continued-fraction step on (P + sqrt D)/Q.

    Returns (P', Q', gamma) with Z + Z*tau = gamma * (Z + Z*tau')."""
    D, s = K.D, K.sqrtD_floor
    n = _floor_quadirr(P, Q, s)
    P2 = n * Q - P
    if (D - P2 * P2) % Q:
        raise AssertionError("invariant Q | D - P^2 broken")
    Q2 = (D - P2 * P2) // Q
    gamma = K.from_sqrt_pair(Fraction(-P2, Q), Fraction(1, Q))
    return P2, Q2, gamma


def _ideal_to_pair(I: IntegralIdeal):
    _, prim = I.content_and_primitive()
    return (2 * prim.b + prim.field.D, 2 * prim.a)


def _pair_to_ideal(K: RealQuadraticField, P: int, Q: int) -> IntegralIdeal:
    a = Q // 2
    b = ((P - K.D) // 2) % a if a > 1 else 0
    return IntegralIdeal(K, a, b, 1)


def _is_reduced_pair(K, P, Q):
    s = K.sqrtD_floor
    return 0 < P <= s and s - P < Q <= s + P


def _cycle_of(K: RealQuadraticField, P: int, Q: int):
    """The cycle of reduced states reached from (P, Q), as a sorted tuple."""
    seen = {}
    seq = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(seq)
        seq.append((P, Q))
        P, Q, _ = _rho(K, P, Q)
    start = seen[(P, Q)]
    return tuple(sorted(seq[start:]))


def _reduced_pairs(K: RealQuadraticField):
    D, s = K.D, K.sqrtD_floor
    out = []
    for P in range(1, s + 1):
        R = D - P * P
        for Q in range(s - P + 1, s + P + 1):
            if Q > 0 and R % Q == 0 and Q % 2 == 0 and (R // Q) % 2 == 0:
                out.append((P, Q))
    return out


class ClassGroupData:
    """Ideal class group with a concrete dlog map via reduction cycles."""

    def __init__(self, K: RealQuadraticField):
        self.field = K
        if K.is_rational:
            self.h = 1
            self.cycle_keys = []
            self.gen_keys, self.gen_orders = [], []
            self._dlog = {}
            self.group = smith_presentation([], 0)
            self.principal_key = None
            return
        pairs = _reduced_pairs(K)
        keys = set()
        for (P, Q) in pairs:
            keys.add(_cycle_of(K, P, Q))
        self.cycle_keys = sorted(keys)
        self.h = len(self.cycle_keys)
        self.principal_key = _cycle_of(K, K.D, 2)
        assert self.principal_key in keys

        def kmul(k1, k2):
            I = _pair_to_ideal(K, *k1[0]) * _pair_to_ideal(K, *k2[0])
            return self.key_of(I)

        gens, orders, dlog = decompose_abelian(self.cycle_keys, kmul,
                                               self.principal_key)
        self.gen_keys = gens
        self.gen_orders = orders
        self._dlog = dlog
        rels = [[orders[i] if j == i else 0 for j in range(len(orders))]
                for i in range(len(orders))]
        self.group = smith_presentation(rels, len(orders))

    def key_of(self, I: IntegralIdeal):
        if self.field.is_rational:
            return None
        return _cycle_of(self.field, *_ideal_to_pair(I))

    def ambient_dlog(self, I: IntegralIdeal):
        """Exponent vector of [I] over the decomposition generators."""
        if self.field.is_rational:
            return ()
        return self._dlog[self.key_of(I)]

    def class_of(self, I: IntegralIdeal) -> GroupElement:
        return self.group.project(list(self.ambient_dlog(I)))

    def is_principal(self, I: IntegralIdeal) -> bool:
        if self.field.is_rational:
            return True
        return self.key_of(I) == self.principal_key

    def rep_ideal(self, key) -> IntegralIdeal:
        return _pair_to_ideal(self.field, *key[0])

    def gen_rep_ideals(self):
        return [self.rep_ideal(k) for k in self.gen_keys]

    @property
    def invariant_factors(self):
        return self.group.invariant_factors

    def exponent(self) -> int:
        e = 1
        for d in self.group.invariant_factors:
            e = e * d // gcd(e, d)
        return e


def class_group(K: RealQuadraticField) -> ClassGroupData:
    if K._class_group is None:
        K._class_group = ClassGroupData(K)
    return K._class_group


# ----------------------------------------------------------------- units

def _o_walk(K: RealQuadraticField):
    """Walk of the unit ideal: dict (P,Q) -> accumulated gamma product,
    plus the fundamental unit from one full period."""
    if K._o_walk is not None:
        return K._o_walk
    acc = {}
    P, Q = K.D, 2
    cur = K.one()
    first_repeat = None
    while (P, Q) not in acc:
        acc[(P, Q)] = cur
        P, Q, gamma = _rho(K, P, Q)
        cur = cur * gamma
    u = cur / acc[(P, Q)]
    eps = u.inv()
    if eps.compare_real(0) < 0:
        eps = -eps
    assert eps.is_integral() and abs(eps.norm()) == 1
    assert eps.compare_real(1) > 0
    K._o_walk = (acc, eps)
    return K._o_walk


def fundamental_unit(K: RealQuadraticField) -> FieldElement:
    """The unit eps > 1 generating the units modulo {-1}."""
    if K.is_rational:
        raise ValueError("Q has no fundamental unit")
    if K._fundamental_unit is None:
        K._fundamental_unit = _o_walk(K)[1]
    return K._fundamental_unit


def principal_generator(I: IntegralIdeal):
    """A generator of I when principal, else None."""
    K = I.field
    if K.is_rational:
        return K.element(I.a)
    clg = class_group(K)
    if not clg.is_principal(I):
        return None
    content, prim = I.content_and_primitive()
    o_acc, _ = _o_walk(K)
    P, Q = 2 * prim.b + K.D, 2 * prim.a
    cur = K.one()
    steps = 0
    while (P, Q) not in o_acc:
        P, Q, gamma = _rho(K, P, Q)
        cur = cur * gamma
        steps += 1
        if steps > 10000 + 64 * (prim.a.bit_length() + K.D):
            raise AssertionError("reduction walk did not terminate")
    g = cur / o_acc[(P, Q)] * prim.a
    assert g.is_integral() and abs(g.norm()) == prim.norm
    assert ideal_from_element(g) == prim
    return g * content


def unit_decompose(K: RealQuadraticField, u: FieldElement):
    """Write a unit as (-1)^sign * eps^k; returns (sign in {0,1}, k)."""
    if abs(u.norm()) != 1 or not u.is_integral():
        raise ValueError("not a unit")
    eps = fundamental_unit(K)
    sign = 0
    y = u
    if y.real_sign() < 0:
        y = -y
        sign = 1
    k = 0
    guard = 0
    one = K.one()
    while y != one:
        if y.compare_real(1) > 0:
            y = y / eps
            k += 1
        else:
            y = y * eps
            k -= 1
        guard += 1
        if guard > 10000:
            raise AssertionError("unit ladder did not terminate")
    return sign, k


# ----------------------------------------------------------------- S-units

@dataclass
class SUnitBasisEntry:
    element: FieldElement
    valuations: dict          # prime-ideal key -> exact integer valuation
    label: str
    kind: str                 # "torsion" | "unit" | "lattice"


class SUnitBasisData:
    """Generators of the Q-unit group E_Q with exact valuation bookkeeping."""

    def __init__(self, K: RealQuadraticField, Q_ideals):
        self.field = K
        self.primes = list(Q_ideals)
        for q in self.primes:
            _residue_char(q)  # validates primality
        self.entries = []
        minus_one = K.element(-1)
        self.entries.append(SUnitBasisEntry(minus_one, {}, "-1", "torsion"))
        if not K.is_rational:
            eps = fundamental_unit(K)
            self.entries.append(SUnitBasisEntry(eps, {}, "eps", "unit"))
        if not self.primes:
            self.lattice = []
            return
        if K.is_rational:
            self.lattice = [[1 if i == j else 0 for j in range(len(self.primes))]
                            for i in range(len(self.primes))]
            for i, q in enumerate(self.primes):
                ell = q.a
                vals = {q.key(): 1}
                self.entries.append(SUnitBasisEntry(K.element(ell), vals,
                                                    str(ell), "lattice"))
            return
        clg = class_group(K)
        r = len(clg.gen_orders)
        if r == 0:
            lattice = [[1 if i == j else 0 for j in range(len(self.primes))]
                       for i in range(len(self.primes))]
        else:
            C = [[clg.ambient_dlog(q)[i] for q in self.primes]
                 for i in range(r)]
            lattice = [list(v) for v in
                       solve_congruence_lattice(C, list(clg.gen_orders))]
        self.lattice = lattice
        for w in lattice:
            gamma = self._realize(w)
            vals = {}
            for q, wq in zip(self.primes, w):
                if wq:
                    vals[q.key()] = wq
            for q, wq in zip(self.primes, w):
                assert ideal_valuation(gamma, q) == wq
            label = "g[" + ",".join(str(t) for t in w) + "]"
            self.entries.append(SUnitBasisEntry(gamma, vals, label, "lattice"))

    def _realize(self, w):
        """Element with divisor sum(w_i * q_i)."""
        K = self.field
        num = unit_ideal(K)
        denom_rat = 1
        for q, wq in zip(self.primes, w):
            if wq > 0:
                num = num * q**wq
            elif wq < 0:
                ell = _residue_char(q)
                kind = factor_rational_prime(K, ell).kind
                if kind == "split":
                    num = num * q.conj()**(-wq)
                    denom_rat *= ell**(-wq)
                elif kind == "inert":
                    denom_rat *= ell**(-wq)
                else:  # ramified
                    num = num * q**(-wq)
                    denom_rat *= ell**(-wq)
        g = principal_generator(num)
        if g is None:
            raise AssertionError("lattice vector is not principal")
        g = g / denom_rat
        if g.norm() < 0 and not K.is_rational:
            eps = fundamental_unit(K)
            if eps.norm() == -1:
                g = g * eps
        return g

    def elements(self):
        return [e.element for e in self.entries]

    def entry_valuation(self, idx: int, q_key) -> int:
        return self.entries[idx].valuations.get(q_key, 0)

    def support_keys(self):
        keys = []
        for q in self.primes:
            keys.append(q.key())
        return keys

    def decompose(self, x: FieldElement):
        """Exact exponents of x over the basis entries, for x in E_Q."""
        K = self.field
        vals = [ideal_valuation(x, q) for q in self.primes]
        if K.is_rational:
            coords = vals
            rest = x
            for e, c in zip(self.entries[1:], coords):
                rest = rest / e.element**c
            if rest.x == 1:
                sgn = 0
            elif rest.x == -1:
                sgn = 1
            else:
                raise ValueError("element is not supported on Q")
            return [sgn] + coords
        if self.lattice:
            B = [[self.lattice[j][i] for j in range(len(self.lattice))]
                 for i in range(len(self.primes))]
            coords = _solve_int_system(B, vals)
        else:
            coords = []
            if any(vals):
                raise ValueError("element is not supported on Q")
        rest = x
        for c, entry in zip(coords, [e for e in self.entries
                                     if e.kind == "lattice"]):
            rest = rest / entry.element**c
        sgn, k = unit_decompose(K, rest)
        return [sgn, k] + list(coords)


def _solve_int_system(B, target):
    """Solve B * x = target exactly over the integers (B square-ish)."""
    n = len(B)
    m = len(B[0]) if n else 0
    M = [[Fraction(B[i][j]) for j in range(m)] + [Fraction(target[i])]
         for i in range(n)]
    piv_cols = []
    r = 0
    for j in range(m):
        piv = next((i for i in range(r, n) if M[i][j] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        M[r] = [v / M[r][j] for v in M[r]]
        for i in range(n):
            if i != r and M[i][j] != 0:
                M[i] = [a - M[i][j] * b for a, b in zip(M[i], M[r])]
        piv_cols.append(j)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if M[i][m] != 0:
            raise ValueError("element is not in the S-unit lattice")
    x = [Fraction(0)] * m
    for i, j in enumerate(piv_cols):
        x[j] = M[i][m]
    out = []
    for v in x:
        if v.denominator != 1:
            raise ValueError("non-integral solution")
        out.append(int(v))
    return out


def s_unit_basis(K: RealQuadraticField, Q_ideals) -> list:
    """Generators {-1, eps, ...} of the Q-unit group."""
    return SUnitBasisData(K, Q_ideals).elements()


# ------------------------------------------------------------ formal products

class SUnitProduct:
    """Formal product of S-unit basis entries with Z_p exponents."""

    def __init__(self, basis: SUnitBasisData, p: int, exponents, prec: int):
        self.basis = basis
        self.field = basis.field
        self.p = p
        self.prec = prec
        self.exponents = [self._promote(e) for e in exponents]
        if len(self.exponents) != len(basis.entries):
            raise ValueError("exponent vector has wrong length")

    def _promote(self, e):
        if isinstance(e, PAdicNumber):
            return e
        return PAdicNumber.exact(int(e), self.p, self.prec + 4)

    def valuation_at(self, q_key) -> PAdicNumber:
        total = PAdicNumber.exact(0, self.p, self.prec + 4)
        for e, entry in zip(self.exponents, self.basis.entries):
            v = entry.valuations.get(q_key, 0)
            if v:
                total = total + e * PAdicNumber.exact(v, self.p, self.prec + 4)
        return total

    def support_keys(self):
        keys = set()
        for e, entry in zip(self.exponents, self.basis.entries):
            if not (e.is_marker and e.is_exact_zero):
                keys.update(entry.valuations.keys())
        return keys

    def scale_exponents(self, n: int) -> "SUnitProduct":
        return SUnitProduct(self.basis, self.p,
                            [e * PAdicNumber.exact(n, self.p, self.prec + 4)
                             for e in self.exponents], self.prec)

    def to_json(self):
        return {
            "basis": [e.label for e in self.basis.entries],
            "exponents": [repr(e) for e in self.exponents],
        }


def ray_class_group(K: RealQuadraticField, modulus, p: int):
    """p-part of the ray class group of conductor `modulus` (delegates to
    the rayclass helper module)."""
    from .rayclass import ray_class_group as _impl
    return _impl(K, modulus, p)
