"""Multiplicative groups (O/q^e)* of residue rings of prime-ideal powers,
with explicit generators, orders, and discrete logarithms.

Residues are ints (rational, split and ramified components) or coordinate
pairs over the integral basis {1, w} (inert components).
"""

from __future__ import annotations

from math import gcd, isqrt

from .ntheory import factorint
from .padic import _log_series_int, vp
from .quadfield import (FieldElement, IntegralIdeal, RealQuadraticField,
                        _residue_char, factor_rational_prime)


def _bsgs(mul, one, g, h, n: int):
    """k in [0, n) with g^k = h, for elements hashable under ==/hash."""
    m = isqrt(n) + 1
    table = {}
    x = one
    for j in range(m):
        table.setdefault(x, j)
        x = mul(x, g)
    # giant step: g^{-m}
    gm = one
    for _ in range(m):
        gm = mul(gm, g)
    # invert by powering to n-1 (order divides n)
    ginv_m = _pow(mul, one, gm, n - 1)
    y = h
    for i in range(m):
        if y in table:
            return (i * m + table[y]) % n
        y = mul(y, ginv_m)
    raise ValueError("dlog: element not in the cyclic subgroup")


def _pow(mul, one, g, k: int):
    r = one
    b = g
    while k:
        if k & 1:
            r = mul(r, b)
        b = mul(b, b)
        k >>= 1
    return r


class _Component:
    """Base: multiplicative group of O/q^e for one prime ideal q."""

    def __init__(self, K, q, ell, e):
        self.field = K
        self.q = q
        self.ell = ell
        self.e = e

    # subclasses define: one, mul, reduce, gens, orders, dlog, size, norm_int


class RationalComponent(_Component):
    """(Z/ell^e)*; also used for split components through the root map."""

    def __init__(self, K, q, ell, e, root=None):
        super().__init__(K, q, ell, e)
        self.mod = ell**e
        self.root = root  # image of w, for split components
        self.one = 1 % self.mod
        if ell == 2:
            if e == 1:
                self.gens, self.orders = [], []
            elif e == 2:
                self.gens, self.orders = [self.mod - 1], [2]
            else:
                self.gens = [self.mod - 1, 5 % self.mod]
                self.orders = [2, 2**(e - 2)]
        elif e == 1:
            g = _primitive_root_cyclic(lambda a, b: a * b % self.mod, 1,
                                       self._iter_units(), ell - 1)
            self.gens, self.orders = [g], [ell - 1]
        else:
            g = _primitive_root_mod_odd_prime_power(ell, e)
            self.gens, self.orders = [g], [(ell - 1) * ell**(e - 1)]

    def _iter_units(self):
        for a in range(1, min(self.mod, 10000)):
            if a % self.ell:
                yield a

    def mul(self, a, b):
        return a * b % self.mod

    def reduce(self, x: FieldElement):
        num_x, num_y, den = _fraction_parts(x)
        if self.root is None:
            if num_y:
                raise ValueError("nonrational element in rational component")
            val = num_x
        else:
            val = num_x + num_y * self.root
        if den % self.ell == 0 or val % self.ell == 0:
            raise ValueError("element is not a unit at this component")
        return val * pow(den, -1, self.mod) % self.mod

    def dlog(self, a):
        ell, e = self.ell, self.e
        if ell == 2:
            if e == 1:
                return []
            if e == 2:
                return [0 if a % 4 == 1 else 1]
            s = 0 if a % 4 == 1 else 1
            y = a * (self.mod - 1 if s else 1) % self.mod
            l5 = _log_series_int(4, 2, e)
            ly = _log_series_int(y - 1, 2, e)
            k = (ly // 4) * pow(l5 // 4, -1, 2**(e - 2)) % 2**(e - 2)
            return [s, k]
        if e == 1:
            return [_bsgs(self.mul, 1, self.gens[0], a, ell - 1)]
        g = self.gens[0]
        # torsion part
        proj = pow(a, ell**(e - 1), self.mod)
        gproj = pow(g, ell**(e - 1), self.mod)
        k1 = _bsgs(self.mul, 1, gproj, proj, ell - 1)
        # 1-unit part via the ell-adic log
        la = _log_series_int(pow(a, ell - 1, self.mod) - 1, ell, e)
        lg = _log_series_int(pow(g, ell - 1, self.mod) - 1, ell, e)
        k2 = (la // ell) * pow(lg // ell, -1, ell**(e - 1)) % ell**(e - 1)
        k = _crt(k1, ell - 1, k2, ell**(e - 1))
        return [k]

    @property
    def size(self):
        s = 1
        for o in self.orders:
            s *= o
        return s

    def norm_int(self, a):
        # norm to Z/ell^e of an element supported in this component only:
        # for split components the conjugate component carries 1
        return a % self.mod


class InertComponent(_Component):
    """(O/ell^e)* for an inert prime, residues as pairs over {1, w}."""

    def __init__(self, K, q, ell, e):
        super().__init__(K, q, ell, e)
        self.mod = ell**e
        self.one = (1, 0)
        n_res = ell * ell - 1
        if e == 1:
            g = _primitive_root_cyclic(self.mul, self.one,
                                       self._iter_units(), n_res)
            self.gens, self.orders = [g], [n_res]
        else:
            g0 = _primitive_root_cyclic(
                lambda a, b: self._mul_mod(a, b, ell), (1, 0),
                self._iter_units_mod(ell), n_res)
            t = (g0[0] % self.mod, g0[1] % self.mod)
            for _ in range(2 * e + 2):
                t2 = _pow(self.mul, self.one, t, ell * ell)
                if t2 == t:
                    break
                t = t2
            self.gens = [t, (1 + ell, 0), (1, ell)]
            self.orders = [n_res, ell**(e - 1), ell**(e - 1)]
            self._log_u1 = self._log_one_unit(self.gens[1])
            self._log_u2 = self._log_one_unit(self.gens[2])

    def _mul_mod(self, u, v, m):
        K = self.field
        return ((u[0] * v[0] - u[1] * v[1] * K.w_norm) % m,
                (u[0] * v[1] + u[1] * v[0] + u[1] * v[1] * K.w_trace) % m)

    def mul(self, u, v):
        return self._mul_mod(u, v, self.mod)

    def _iter_units(self):
        for x in range(self.mod):
            for y in range(self.mod):
                if self._unit((x, y)):
                    yield (x, y)

    def _iter_units_mod(self, m):
        for x in range(m):
            for y in range(m):
                if (x * x + self.field.w_trace * x * y
                        + self.field.w_norm * y * y) % self.ell:
                    yield (x, y)

    def _unit(self, u):
        n = (u[0] * u[0] + self.field.w_trace * u[0] * u[1]
             + self.field.w_norm * u[1] * u[1])
        return n % self.ell != 0

    def reduce(self, x: FieldElement):
        num_x, num_y, den = _fraction_parts(x)
        if den % self.ell == 0:
            raise ValueError("denominator not invertible")
        inv = pow(den, -1, self.mod)
        u = (num_x * inv % self.mod, num_y * inv % self.mod)
        if not self._unit(u):
            raise ValueError("element is not a unit at this component")
        return u

    def _log_one_unit(self, u):
        """log of a 1-unit pair, exact mod ell^e, as a coordinate pair."""
        ell, e = self.ell, self.e
        K = _log_terms_bound(1, ell, e)
        guard = 1
        while ell**guard <= K:
            guard += 1
        modg = ell**(e + guard)
        z = ((u[0] - 1) % modg, u[1] % modg)
        total = (0, 0)
        zk = (1 % modg, 0)
        for k in range(1, K):
            zk = self._mul_mod(zk, z, modg)
            j = vp(k, ell) if k % ell == 0 else 0
            inv = pow(k // ell**j, -1, modg)
            term = ((zk[0] // ell**j) * inv % modg,
                    (zk[1] // ell**j) * inv % modg)
            if k % 2 == 1:
                total = ((total[0] + term[0]) % modg,
                         (total[1] + term[1]) % modg)
            else:
                total = ((total[0] - term[0]) % modg,
                         (total[1] - term[1]) % modg)
        return (total[0] % self.mod, total[1] % self.mod)

    def dlog(self, u):
        ell, e = self.ell, self.e
        n_res = ell * ell - 1
        if e == 1:
            return [_bsgs(self.mul, self.one, self.gens[0], u, n_res)]
        unit_sz = ell**(2 * (e - 1))
        proj = _pow(self.mul, self.one, u, unit_sz)
        gproj = _pow(self.mul, self.one, self.gens[0], unit_sz)
        k1 = _bsgs(self.mul, self.one, gproj, proj, n_res)
        i = k1 * pow(unit_sz % n_res, -1, n_res) % n_res
        w = self.mul(u, _pow(self.mul, self.one, self.gens[0], n_res - i)) \
            if i else u
        lw = self._log_one_unit(_pow(self.mul, self.one, w, 1))
        # solve alpha * log(u1) + beta * log(u2) = log(w) mod ell^(e-1)
        m1 = ell**(e - 1)
        a11, a21 = self._log_u1[0] // ell, self._log_u1[1] // ell
        a12, a22 = self._log_u2[0] // ell, self._log_u2[1] // ell
        b1, b2 = lw[0] // ell, lw[1] // ell
        det = a11 * a22 - a12 * a21
        if det % ell == 0:
            raise AssertionError("1-unit log basis is degenerate")
        det_inv = pow(det, -1, m1)
        alpha = (b1 * a22 - b2 * a12) * det_inv % m1
        beta = (a11 * b2 - a21 * b1) * det_inv % m1
        return [i, alpha, beta]

    @property
    def size(self):
        s = 1
        for o in self.orders:
            s *= o
        return s

    def norm_int(self, u):
        K = self.field
        return (u[0] * u[0] + K.w_trace * u[0] * u[1]
                + K.w_norm * u[1] * u[1]) % self.mod


class RamifiedComponent(_Component):
    """(O/q)* for a ramified prime, e = 1 only: the residue field F_ell."""

    def __init__(self, K, q, ell):
        super().__init__(K, q, ell, 1)
        self.mod = ell
        # w maps to the double root of its minimal polynomial mod ell
        from .quadfield import _min_poly_roots_mod
        self.root = _min_poly_roots_mod(K, ell)[0]
        self.one = 1 % ell
        if ell == 2:
            self.gens, self.orders = [], []
        else:
            g = _primitive_root_cyclic(lambda a, b: a * b % ell, 1,
                                       (a for a in range(1, ell)), ell - 1)
            self.gens, self.orders = [g], [ell - 1]

    def mul(self, a, b):
        return a * b % self.mod

    def reduce(self, x: FieldElement):
        num_x, num_y, den = _fraction_parts(x)
        val = num_x + num_y * self.root
        if den % self.ell == 0 or val % self.ell == 0:
            raise ValueError("element is not a unit at this component")
        return val * pow(den, -1, self.mod) % self.mod

    def dlog(self, a):
        if self.ell == 2:
            return []
        return [_bsgs(self.mul, 1, self.gens[0], a, self.ell - 1)]

    @property
    def size(self):
        return self.ell - 1

    def norm_int(self, a):
        return a * a % self.mod  # norm of a rational residue at e(q)=2


def _fraction_parts(x: FieldElement):
    """(num_x, num_y, den) with x = (num_x + num_y*w)/den, integers."""
    den = x.x.denominator
    den = den * (x.y.denominator // gcd(den, x.y.denominator))
    nx = int(x.x * den)
    ny = int(x.y * den)
    return nx, ny, den


def _primitive_root_cyclic(mul, one, candidates, n: int):
    fac = factorint(n)
    for g in candidates:
        if g == one:
            continue
        ok = True
        for q in fac:
            if _pow(mul, one, g, n // q) == one:
                ok = False
                break
        if ok:
            return g
    raise AssertionError("no generator found")


def _primitive_root_mod_odd_prime_power(ell: int, e: int) -> int:
    g = _primitive_root_cyclic(lambda a, b: a * b % ell, 1,
                               (a for a in range(2, ell)), ell - 1)
    if pow(g, ell - 1, ell * ell) == 1:
        g += ell
    return g % ell**e


def _crt(r1, m1, r2, m2):
    g = gcd(m1, m2)
    assert (r2 - r1) % g == 0
    l = m1 // g * m2
    if m2 == g:
        return r1 % l
    t = (r2 - r1) // g * pow(m1 // g, -1, m2 // g) % (m2 // g)
    return (r1 + m1 * t) % l


def _log_terms_bound(c: int, p: int, A: int) -> int:
    k = max(1, -(-A // c))
    while p**(k * c - A) < k:
        k += 1
    return k


def make_component(K: RealQuadraticField, q: IntegralIdeal, e: int):
    ell = _residue_char(q)
    if K.is_rational:
        return RationalComponent(K, q, ell, e)
    kind = factor_rational_prime(K, ell).kind
    if kind == "split":
        root = _split_root(K, q, ell, e)
        return RationalComponent(K, q, ell, e, root=root)
    if kind == "inert":
        return InertComponent(K, q, ell, e)
    if e != 1:
        raise ValueError("ramified prime-power moduli are unsupported")
    return RamifiedComponent(K, q, ell)


def _split_root(K, q, ell, e):
    """Image of w in Z/ell^e determined by the split prime q (Hensel)."""
    t = (-q.b) % ell
    f = lambda x: (x * x - K.w_trace * x + K.w_norm)
    mod = ell
    while mod < ell**e:
        mod = min(mod * mod, ell**e)
        der = (2 * t - K.w_trace) % mod
        t = (t - f(t) * pow(der, -1, mod)) % mod
    assert f(t) % ell**e == 0
    return t % ell**e


class UnitGroupModM:
    """(O/m)* presented by independent cyclic generators across components."""

    def __init__(self, K: RealQuadraticField, factored):
        self.field = K
        self.factored = list(factored)  # [(prime ideal, exponent)]
        self.components = [make_component(K, q, e) for q, e in self.factored]
        self.gen_span = []   # (component index, index within component)
        self.orders = []
        for ci, comp in enumerate(self.components):
            for gi, o in enumerate(comp.orders):
                self.gen_span.append((ci, gi))
                self.orders.append(o)

    @property
    def size(self) -> int:
        s = 1
        for comp in self.components:
            s *= comp.size
        return s

    @property
    def ngens(self) -> int:
        return len(self.orders)

    def dlog(self, x: FieldElement):
        out = []
        for comp in self.components:
            out.extend(comp.dlog(comp.reduce(x)))
        return out

    def gen_norm_ints(self):
        """Norm of each generator to Z, modulo ell^e of its component."""
        out = []
        for (ci, gi) in self.gen_span:
            comp = self.components[ci]
            out.append(comp.norm_int(comp.gens[gi]))
        return out
