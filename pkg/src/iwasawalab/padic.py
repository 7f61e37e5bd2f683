"""Arbitrary-precision arithmetic in Z_p / Q_p and its unramified quadratic
extension, with explicit tracking of how many p-adic digits are certified.

A nonzero value is stored as p^v * m where m is a unit mantissa known modulo
p^digits.  Quantities that cannot be distinguished from zero are carried as a
marker "valuation >= bound" rather than silently treated as equal to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

# bound used for zero markers that arise from exact integer zeros
EXACT_ZERO_BOUND = 10**9

# relative digits given to exact integer inputs beyond what callers request
_EXACT_SLACK = 6


class PrecisionError(ValueError):
    """A quantity sits below working precision; raising N may resolve it."""


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class AtLeast:
    """Marker for a valuation only known to be >= bound."""
    bound: int

    def __repr__(self):
        return ">=%d" % self.bound


class PAdicNumber:
    """Element of Q_p known to a finite number of significant digits.

    Nonzero: value is p^v * (m + O(p^digits)) with 0 < m < p^digits, p ∤ m.
    Zero marker: m is None and v is a lower bound for the valuation.
    """

    __slots__ = ("p", "v", "m", "digits")

    def __init__(self, p: int, v: int, m, digits: int):
        if p < 3 or p % 2 == 0:
            raise ValueError("p must be an odd prime, got %r" % (p,))
        self.p = p
        self.v = v
        self.m = m
        self.digits = digits
        if m is not None:
            if digits < 1 or not (0 < m < p**digits) or m % p == 0:
                raise ValueError("bad mantissa %r (digits=%d)" % (m, digits))

    # ------------------------------------------------------------ constructors
    @classmethod
    def zero_marker(cls, p: int, bound: int) -> "PAdicNumber":
        return cls(p, bound, None, 0)

    @classmethod
    def exact(cls, n, p: int, digits: int) -> "PAdicNumber":
        """Exact integer or Fraction input, kept to `digits` significant digits."""
        if isinstance(n, Fraction):
            if n == 0:
                return cls.zero_marker(p, EXACT_ZERO_BOUND)
            vnum = vp(n.numerator, p)
            vden = vp(n.denominator, p)
            v = vnum - vden
            num = n.numerator // p**vnum
            den = n.denominator // p**vden
            m = num * pow(den, -1, p**digits) % p**digits
            return cls(p, v, m, digits)
        if n == 0:
            return cls.zero_marker(p, EXACT_ZERO_BOUND)
        v = vp(n, p)
        m = (n // p**v) % p**digits
        return cls(p, v, m, digits)

    @classmethod
    def of(cls, n, p: int, N: int) -> "PAdicNumber":
        """Input read modulo p^N: N absolute digits of information."""
        if isinstance(n, Fraction):
            if n.denominator % p == 0:
                raise ValueError("denominator not a p-unit")
            n = n.numerator * pow(n.denominator, -1, p**N)
        r = n % p**N
        return cls.from_residue(r, p, N)

    @classmethod
    def from_residue(cls, r: int, p: int, abs_prec: int) -> "PAdicNumber":
        """Value known to be ≡ r mod p^abs_prec."""
        r %= p**abs_prec
        if r == 0:
            return cls.zero_marker(p, abs_prec)
        v = vp(r, p)
        digits = abs_prec - v
        return cls(p, v, (r // p**v) % p**digits, digits)

    @classmethod
    def one(cls, p: int, digits: int) -> "PAdicNumber":
        return cls(p, 0, 1, digits)

    # ------------------------------------------------------------- inspection
    @property
    def is_marker(self) -> bool:
        return self.m is None

    @property
    def is_exact_zero(self) -> bool:
        return self.m is None and self.v >= EXACT_ZERO_BOUND

    @property
    def abs_prec(self) -> int:
        """Exponent A such that the value is certified modulo p^A."""
        return self.v if self.m is None else self.v + self.digits

    def valuation(self):
        """Exact valuation, or an AtLeast marker."""
        return AtLeast(self.v) if self.m is None else self.v

    def residue(self, abs_prec: int) -> int:
        """Integer representative modulo p^abs_prec (abs_prec <= certified)."""
        if abs_prec > self.abs_prec:
            raise ValueError("requesting %d digits, only %d certified"
                             % (abs_prec, self.abs_prec))
        if self.m is None:
            return 0
        if self.v < 0:
            raise ValueError("negative valuation has no integer residue")
        return (self.p**self.v * self.m) % self.p**abs_prec

    def is_unit(self) -> bool:
        return self.m is not None and self.v == 0

    def is_one_unit(self) -> bool:
        """True if the value is certified ≡ 1 mod p."""
        return self.is_unit() and self.m % self.p == 1

    def same_within_precision(self, other: "PAdicNumber") -> bool:
        """True when self - other is indistinguishable from zero."""
        return (self - other).is_marker

    def definitely_differs(self, other: "PAdicNumber") -> bool:
        return not self.same_within_precision(other)

    # ------------------------------------------------------------- arithmetic
    def _check(self, other: "PAdicNumber"):
        if not isinstance(other, PAdicNumber):
            raise TypeError("expected PAdicNumber, got %r" % type(other))
        if self.p != other.p:
            raise ValueError("mixed primes %d and %d" % (self.p, other.p))

    def __neg__(self):
        if self.m is None:
            return self
        return PAdicNumber(self.p, self.v, (-self.m) % self.p**self.digits,
                           self.digits)

    def __add__(self, other):
        self._check(other)
        p = self.p
        A = min(self.abs_prec, other.abs_prec)
        if self.m is None and other.m is None:
            return PAdicNumber.zero_marker(p, A)
        if self.m is None or other.m is None:
            x = other if self.m is None else self
            if x.v >= A:
                return PAdicNumber.zero_marker(p, A)
            return PAdicNumber.from_residue(x.m * p**x.v % p**A, p, A)
        if min(self.v, other.v) >= A:
            return PAdicNumber.zero_marker(p, A)
        s = (self.m * p**self.v + other.m * p**other.v) % p**A
        return PAdicNumber.from_residue(s, p, A)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = PAdicNumber.exact(other, self.p, self.digits or _EXACT_SLACK)
        self._check(other)
        p = self.p
        if self.m is None or other.m is None:
            # v(xy) >= bound(x) + v_or_bound(y)
            return PAdicNumber.zero_marker(p, self.v + other.v)
        digits = min(self.digits, other.digits)
        m = self.m * other.m % p**digits
        return PAdicNumber(p, self.v + other.v, m, digits)

    __rmul__ = __mul__

    def inv(self):
        if self.m is None:
            raise ZeroDivisionError("inversion of a zero marker")
        m = pow(self.m, -1, self.p**self.digits)
        return PAdicNumber(self.p, -self.v, m, self.digits)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = PAdicNumber.exact(other, self.p, self.digits or _EXACT_SLACK)
        self._check(other)
        return self * other.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("integer exponent required; use pow_zp for Z_p")
        if k < 0:
            return self.inv() ** (-k)
        if self.m is None:
            if k == 0:
                return PAdicNumber.one(self.p, _EXACT_SLACK)
            return PAdicNumber.zero_marker(self.p, self.v * k)
        if k == 0:
            return PAdicNumber.one(self.p, self.digits)
        m = pow(self.m, k, self.p**self.digits)
        return PAdicNumber(self.p, self.v * k, m, self.digits)

    def shift(self, j: int) -> "PAdicNumber":
        """Exact multiplication by p^j."""
        if self.m is None:
            return PAdicNumber.zero_marker(self.p, self.v + j)
        return PAdicNumber(self.p, self.v + j, self.m, self.digits)

    def pow_zp(self, a: "PAdicNumber") -> "PAdicNumber":
        """self^a for a in Z_p; requires self ≡ 1 mod p.

        The result is certified mod p^min(abs(self), c + abs(a)) where
        c = v(self - 1).
        """
        p = self.p
        if not self.is_one_unit():
            raise ValueError("base of a Z_p power must be a 1-unit")
        if a.m is not None and a.v < 0:
            raise ValueError("exponent must lie in Z_p")
        diff = self - PAdicNumber.one(p, self.digits)
        if diff.is_marker:
            # self = 1 + O(p^bound): self^a = 1 + O(p^{bound + v(a)})
            av = a.v if a.m is None else max(a.v, 0)
            return PAdicNumber.from_residue(1, p, min(self.abs_prec,
                                                      diff.v + av))
        c = diff.v
        target = min(self.abs_prec, c + a.abs_prec)
        k_digits = max(target - c, 0)
        b = 0 if a.m is None else a.residue(k_digits) if k_digits > 0 else 0
        r = pow(self.residue(target), b, p**target)
        return PAdicNumber.from_residue(r, p, target)

    # -------------------------------------------------------------- rendering
    def __repr__(self):
        if self.m is None:
            return "O(%d^%d)" % (self.p, min(self.v, EXACT_ZERO_BOUND))
        return "%d^%d * %d (mod %d^%d)" % (self.p, self.v, self.m,
                                           self.p, self.digits)

    def __str__(self):
        return self.__repr__()


# ------------------------------------------------------------------ operations

def arith(x: PAdicNumber, y: PAdicNumber, kind: str) -> PAdicNumber:
    """Dispatcher for the four basic operations."""
    if kind == "add":
        return x + y
    if kind == "mul":
        return x * y
    if kind == "inv":
        return x.inv()
    if kind == "pow":
        if not isinstance(y, int):
            raise TypeError("pow expects an integer exponent")
        return x ** y
    raise ValueError("unknown operation %r" % kind)


def val_and_unit(x: PAdicNumber):
    """Split x as p^v * u.  Zero markers yield (AtLeast(bound), None)."""
    if x.m is None:
        return AtLeast(x.v), None
    return x.v, PAdicNumber(x.p, 0, x.m, x.digits)


def teichmueller(x: PAdicNumber) -> PAdicNumber:
    """The (p-1)-st root of unity congruent to x mod p, as lim x^(p^k)."""
    if not x.is_unit():
        raise ValueError("Teichmueller lift requires a unit")
    p, digits = x.p, x.digits
    mod = p**digits
    t = x.m % mod
    for _ in range(digits + 1):
        t2 = pow(t, p, mod)
        if t2 == t:
            break
        t = t2
    return PAdicNumber(p, 0, t, digits)


def angle(x: PAdicNumber) -> PAdicNumber:
    """Projection of a unit onto 1 + pZ_p: x divided by its Teichmueller part."""
    return x * teichmueller(x).inv()


def _log_terms_needed(c: int, p: int, A: int) -> int:
    """First K with k*c - v_p(k) >= A for every k >= K.

    Uses v_p(k) <= log_p(k) and that k*c - log_p(k) increases in k for
    c >= 1, p >= 3; so K = first k with k*c >= A and p^(k*c - A) >= k.
    """
    k = max(1, -(-A // c))
    while p**(k * c - A) < k:
        k += 1
    return k


def _log_series_int(z: int, p: int, A: int) -> int:
    """sum (-1)^(k+1) z^k / k mod p^A for an integer z with v_p(z) >= 1."""
    if z % p**A == 0:
        return 0
    c = vp(z % p**A, p)
    K = _log_terms_needed(c, p, A)
    guard = 1
    while p**guard <= K:
        guard += 1
    modg = p**(A + guard)
    z %= modg
    total = 0
    zk = 1
    for k in range(1, K):
        zk = zk * z % modg
        j = vp(k, p) if k % p == 0 else 0
        term = (zk // p**j) * pow(k // p**j, -1, modg) % modg
        total = (total + term if k % 2 == 1 else total - term) % modg
    return total % p**A


def plog(x: PAdicNumber) -> PAdicNumber:
    """Logarithm of a 1-unit via the truncated alternating series."""
    p = x.p
    if x.m is None or x.v != 0 or x.m % p != 1:
        raise ValueError("plog requires an element of 1 + pZ_p")
    A = x.abs_prec
    val = _log_series_int(x.residue(A) - 1, p, A)
    return PAdicNumber.from_residue(val, p, A)


def log_ratio(u: PAdicNumber, w: PAdicNumber) -> PAdicNumber:
    """a = log(w)/log(u) for 1-units, so that u^a = w within precision."""
    lu = plog(u)
    if lu.is_marker:
        raise ValueError("log of base is indistinguishable from 0")
    return plog(w) / lu


def angle_log(x: PAdicNumber) -> PAdicNumber:
    """log of the 1-unit projection of a unit x, via log(x^(p-1))/(p-1)."""
    if not x.is_unit():
        raise ValueError("angle_log requires a unit")
    p = x.p
    return plog(x ** (p - 1)) / PAdicNumber.exact(p - 1, p, x.digits)


# --------------------------------------------------- unramified quadratic ext

class UnramifiedQuadElem:
    """Element a + b*s of the unramified quadratic extension of Q_p,
    where s^2 = r for a fixed quadratic non-residue r mod p."""

    __slots__ = ("a", "b", "r")

    def __init__(self, a: PAdicNumber, b: PAdicNumber, r: int):
        if a.p != b.p:
            raise ValueError("mixed primes in quadratic element")
        if pow(r % a.p, (a.p - 1) // 2, a.p) != a.p - 1:
            raise ValueError("%d is not a non-residue mod %d" % (r, a.p))
        self.a = a
        self.b = b
        self.r = r

    @property
    def p(self) -> int:
        return self.a.p

    @classmethod
    def from_residues(cls, a: int, b: int, r: int, p: int, abs_prec: int):
        return cls(PAdicNumber.from_residue(a, p, abs_prec),
                   PAdicNumber.from_residue(b, p, abs_prec), r)

    @classmethod
    def one(cls, r: int, p: int, abs_prec: int):
        return cls.from_residues(1, 0, r, p, abs_prec)

    def _check(self, other):
        if self.p != other.p or self.r != other.r:
            raise ValueError("incompatible quadratic extensions")

    def __add__(self, other):
        self._check(other)
        return UnramifiedQuadElem(self.a + other.a, self.b + other.b, self.r)

    def __neg__(self):
        return UnramifiedQuadElem(-self.a, -self.b, self.r)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        a = self.a * other.a + (self.b * other.b) * self.r
        b = self.a * other.b + self.b * other.a
        return UnramifiedQuadElem(a, b, self.r)

    def norm(self) -> PAdicNumber:
        return self.a * self.a - (self.b * self.b) * self.r

    def trace(self) -> PAdicNumber:
        return self.a * 2

    def conj(self):
        return UnramifiedQuadElem(self.a, -self.b, self.r)

    def inv(self):
        n = self.norm()
        ni = n.inv()
        c = self.conj()
        return UnramifiedQuadElem(c.a * ni, c.b * ni, self.r)

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = UnramifiedQuadElem.one(self.r, self.p,
                                        max(self.abs_prec, 1))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    @property
    def abs_prec(self) -> int:
        return min(self.a.abs_prec, self.b.abs_prec)

    def valuation(self):
        """min of coordinate valuations (the unramified valuation)."""
        va, vb = self.a.valuation(), self.b.valuation()
        if isinstance(va, AtLeast) and isinstance(vb, AtLeast):
            return AtLeast(min(va.bound, vb.bound))
        if isinstance(va, AtLeast):
            return vb if vb <= va.bound else AtLeast(va.bound)
        if isinstance(vb, AtLeast):
            return va if va <= vb.bound else AtLeast(vb.bound)
        return min(va, vb)

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def is_one_within_precision(self) -> bool:
        d = self - UnramifiedQuadElem.one(self.r, self.p, self.abs_prec)
        va, vb = d.a, d.b
        return va.is_marker and vb.is_marker

    def shift(self, j: int):
        return UnramifiedQuadElem(self.a.shift(j), self.b.shift(j), self.r)

    def log_one_unit(self) -> "UnramifiedQuadElem":
        """Series logarithm; requires self ≡ 1 mod p."""
        p = self.p
        one = UnramifiedQuadElem.one(self.r, p, self.abs_prec)
        z = self - one
        zv = z.valuation()
        if isinstance(zv, AtLeast):
            bound = zv.bound
            return UnramifiedQuadElem(PAdicNumber.zero_marker(p, bound),
                                      PAdicNumber.zero_marker(p, bound), self.r)
        if zv < 1:
            raise ValueError("log requires a 1-unit")
        A = self.abs_prec
        total = UnramifiedQuadElem(PAdicNumber.zero_marker(p, A),
                                   PAdicNumber.zero_marker(p, A), self.r)
        zk = one
        K = _log_terms_needed(zv, p, A)
        for k in range(1, K):
            zk = zk * z
            j = vp(k, p) if k % p == 0 else 0
            inv_kk = PAdicNumber.exact(k // p**j, p, A + 2).inv()
            term = UnramifiedQuadElem(zk.a * inv_kk, zk.b * inv_kk,
                                      self.r).shift(-j)
            total = total + term if k % 2 == 1 else total - term
        return total

    def angle_log(self) -> "UnramifiedQuadElem":
        """log of the 1-unit part of a unit, via u^(p^2-1)."""
        if not self.is_unit():
            raise ValueError("angle_log requires a unit")
        p = self.p
        n = p * p - 1
        w = self ** n
        lg = w.log_one_unit()
        inv_n = PAdicNumber.exact(n, p, max(self.abs_prec, 1) + 2).inv()
        return UnramifiedQuadElem(lg.a * inv_n, lg.b * inv_n, self.r)

    def __repr__(self):
        return "(%r) + (%r)*s  [s^2=%d]" % (self.a, self.b, self.r)
