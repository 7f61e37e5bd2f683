"""Completions of F at finite places, localization maps, and the rank and
torsion criteria on them: local torsion tests, S-unit membership, and the
Z_p-rank of inertia images.

Places above p carry a 1-unit logarithm (scalar for split places, a
coordinate pair for inert ones); places away from p only contribute their
valuation to any Z_p-rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .ntheory import isprime
from .padic import PAdicNumber, UnramifiedQuadElem, vp
from .quadfield import (FieldElement, IntegralIdeal, RealQuadraticField,
                        SUnitProduct, _residue_char, factor_rational_prime,
                        ideal_valuation)

TRUE, FALSE, INDET = "true", "false", "indeterminate"


@dataclass(frozen=True)
class PlaceAbovePrime:
    """A finite place of F over the rational prime ell."""
    field: RealQuadraticField
    ell: int
    kind: str          # "rational" | "split" | "inert" | "ramified"
    index: int         # 0/1 distinguishes the two split places
    ideal: IntegralIdeal
    residue_degree: int

    def key(self):
        return (self.ell, self.kind, self.index)

    def __str__(self):
        if self.kind == "split":
            return "%d%s" % (self.ell, "ab"[self.index])
        return str(self.ell)


def places_above(K: RealQuadraticField, ell: int):
    rep = factor_rational_prime(K, ell)
    out = []
    for i, q in enumerate(rep.ideals):
        out.append(PlaceAbovePrime(K, ell, rep.kind, i, q,
                                   rep.residue_degree))
    return out


def place_of_ideal(q: IntegralIdeal) -> PlaceAbovePrime:
    ell = _residue_char(q)
    for v in places_above(q.field, ell):
        if v.ideal == q:
            return v
    raise ValueError("no place for ideal %s" % (q,))


def completions_above_p(K: RealQuadraticField, p: int):
    """The places of K above p; p must be odd and unramified in K."""
    if p % 2 == 0 or not isprime(p):
        raise ValueError("p must be an odd prime")
    if not K.is_rational and K.D % p == 0:
        raise ValueError("p = %d ramifies in %s" % (p, K.spec_string()))
    return places_above(K, p)


def _embedding_root(place: PlaceAbovePrime, abs_prec: int) -> int:
    """Hensel-lifted image of w in Z/ell^abs_prec for a split place."""
    K, ell = place.field, place.ell
    t = (-place.ideal.b) % ell
    mod = ell
    f = lambda x: x * x - K.w_trace * x + K.w_norm
    while mod < ell**abs_prec:
        mod = min(mod * mod, ell**abs_prec)
        t = (t - f(t) * pow(2 * t - K.w_trace, -1, mod)) % mod
    assert f(t) % ell**abs_prec == 0
    return t % ell**abs_prec


def embed(x: FieldElement, place: PlaceAbovePrime, abs_prec: int):
    """Image of x in the completion at `place`, certified mod p^abs_prec.

    Split/rational places give a PAdicNumber; inert places give an
    UnramifiedQuadElem with s = sqrt(D).
    """
    K, p = place.field, place.ell
    if place.kind == "ramified":
        raise ValueError("ramified completions are unsupported")
    den = x.x.denominator
    den = den * (x.y.denominator // gcd(den, x.y.denominator))
    nx, ny = int(x.x * den), int(x.y * den)
    vden = vp(den, p) if den % p == 0 else 0
    work = abs_prec + vden + 1
    if place.kind in ("rational", "split"):
        if place.kind == "rational":
            num = nx
        else:
            num = nx + ny * _embedding_root(place, work)
        val = PAdicNumber.from_residue(num % p**work, p, work)
        return val / PAdicNumber.exact(den, p, work)
    # inert: w = (D + s)/2 in coordinates over {1, s}
    inv2 = pow(2, -1, p**work)
    a = (nx + ny * K.D * inv2) % p**work
    b = ny * inv2 % p**work
    u = UnramifiedQuadElem.from_residues(a, b, K.D, p, work)
    deninv = PAdicNumber.exact(den, p, work).inv()
    return UnramifiedQuadElem(u.a * deninv, u.b * deninv, K.D)


@dataclass
class LocalValue:
    """Valuation and 1-unit log data of an element at one place."""
    place: PlaceAbovePrime
    valuation: object            # int, or PAdicNumber for formal products
    unit_log: object             # None away from p; PAdic or quad pair at p

    def log_coords(self):
        """The 1-unit log as a list of PAdicNumber coordinates."""
        if self.unit_log is None:
            return []
        if isinstance(self.unit_log, UnramifiedQuadElem):
            return [self.unit_log.a, self.unit_log.b]
        return [self.unit_log]


def _element_unit_log(x: FieldElement, place: PlaceAbovePrime, N: int):
    """log of the 1-unit part of x at a place above p."""
    p = place.ell
    v = ideal_valuation(x, place.ideal)
    w = embed(x, place, N + max(v, 0) + 1)
    if place.kind == "inert":
        u = w.shift(-v)
        return v, u.angle_log()
    u = w.shift(-v)
    from .padic import angle_log
    return v, angle_log(u)


def loc(x, place: PlaceAbovePrime, p: int, N: int) -> LocalValue:
    """Localization of a field element or formal S-unit product.

    The 1-unit log is computed only at places above the working prime p;
    away from p the unit part is torsion in the pro-p completion and only
    the valuation matters.
    """
    with_log = place.ell == p and place.kind != "ramified"
    if isinstance(x, FieldElement):
        if not with_log:
            return LocalValue(place, ideal_valuation(x, place.ideal), None)
        vv, lg = _element_unit_log(x, place, N)
        return LocalValue(place, vv, lg)
    if not isinstance(x, SUnitProduct):
        raise TypeError("loc expects a FieldElement or SUnitProduct")
    val = x.valuation_at(place.ideal.key())
    if not with_log:
        return LocalValue(place, val, None)
    total = None
    for e, entry in zip(x.exponents, x.basis.entries):
        _, lg = _element_unit_log(entry.element, place, N)
        if isinstance(lg, UnramifiedQuadElem):
            term = UnramifiedQuadElem(lg.a * e, lg.b * e, lg.r)
        else:
            term = lg * e
        total = term if total is None else total + term
    return LocalValue(place, val, total)


def loc_p(x, places, p: int, N: int):
    """LocalizationVector: the per-place images at the given places."""
    return {place.key(): loc(x, place, p, N) for place in places}


def _val_status(v):
    """(is_zero, certified) for an exact int or PAdicNumber valuation."""
    if isinstance(v, int):
        return v == 0, True
    if v.is_marker:
        return True, v.is_exact_zero or v.v >= 1
    return False, True


def is_loc_torsion(x, place: PlaceAbovePrime, p: int, N: int) -> str:
    """Whether loc(x) is torsion in the pro-p completion at `place`."""
    lv = loc(x, place, p, N)
    zero, certified = _val_status(lv.valuation)
    if not zero:
        return FALSE
    if place.ell != p:
        # away from p the unit part is torsion in the pro-p completion
        return TRUE if certified else INDET
    for c in lv.log_coords():
        if not c.is_marker:
            return FALSE
    return TRUE if certified else INDET


def eq_membership(x: SUnitProduct, Q_ideals) -> bool:
    """Does x lie in the completed Q-unit group, i.e. supported on Q only?"""
    allowed = {q.key() for q in Q_ideals}
    for key in x.support_keys():
        if key in allowed:
            continue
        v = x.valuation_at(key)
        if not v.is_marker:
            return False
    return True


@dataclass
class RankReport:
    rank: int
    certified: bool

    def __int__(self):
        return self.rank


def zp_matrix_rank(rows) -> RankReport:
    """Z_p-rank of a matrix of PAdicNumbers by valuation-pivoted elimination.

    The rank counts certified pivots; `certified` is False when entries
    below working precision could hide further pivots.
    """
    rows = [list(r) for r in rows]
    rank = 0
    certified = True
    while rows and rows[0]:
        best = None
        for i, r in enumerate(rows):
            for j, e in enumerate(r):
                if not e.is_marker and (best is None or e.v < best[2].v):
                    best = (i, j, e)
        if best is None:
            if any(not e.is_exact_zero for r in rows for e in r):
                certified = False
            break
        bi, bj, piv = best
        rank += 1
        inv = piv.inv()
        new_rows = []
        for i, r in enumerate(rows):
            if i == bi:
                continue
            coef = r[bj] * inv
            nr = [r[j] - coef * rows[bi][j] for j in range(len(r)) if j != bj]
            new_rows.append(nr)
        rows = new_rows
    return RankReport(rank, certified)


def inertia_rank(T, places, p: int, N: int) -> RankReport:
    """Z_p-rank of the closure of T in the product of the completions at
    `places` (equivalently, of the inertia image in the Kummer extension)."""
    rows = []
    for t in T:
        row = []
        for place in places:
            lv = loc(t, place, p, N)
            v = lv.valuation
            if isinstance(v, int):
                row.append(PAdicNumber.exact(v, p, N + 2))
            else:
                row.append(v)
            if place.ell == p:
                row.extend(lv.log_coords())
        rows.append(row)
    return zp_matrix_rank(rows)
