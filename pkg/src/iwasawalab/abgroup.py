"""Finite abelian group engine: Smith normal form presentations, element
orders, subgroup image orders, discrete logs, and integer-lattice helpers.

All matrices are lists of rows of Python ints; everything is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd


# ------------------------------------------------------------- integer matrices

def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def _mat_vec(A, x):
    return [sum(A[i][j] * x[j] for j in range(len(x))) for i in range(len(A))]


def smith_normal_form(A):
    """Smith normal form with transforms: returns (D, U, V) with D = U*A*V,
    U, V unimodular, D diagonal with d1 | d2 | ... and nonnegative entries."""
    n = len(A)
    m = len(A[0]) if n else 0
    D = [row[:] for row in A]
    U = _identity(n)
    V = _identity(m)

    def row_op(i, j, q):  # row_i -= q * row_j
        D[i] = [a - q * b for a, b in zip(D[i], D[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in D:
            row[i] -= q * row[j]
        for row in V:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def pivot_at(t):
        best = None
        for i in range(t, n):
            for j in range(t, m):
                if D[i][j] != 0 and (best is None or
                                     abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(n, m):
        pos = pivot_at(t)
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        cleared = False
        while not cleared:
            cleared = True
            for i in range(t + 1, n):
                if D[i][t] != 0:
                    q = D[i][t] // D[t][t]
                    row_op(i, t, q)
                    if D[i][t] != 0:
                        swap_rows(i, t)
                        cleared = False
            for j in range(t + 1, m):
                if D[t][j] != 0:
                    q = D[t][j] // D[t][t]
                    col_op(j, t, q)
                    if D[t][j] != 0:
                        swap_cols(j, t)
                        cleared = False
        t += 1

    rank = sum(1 for i in range(min(n, m)) if D[i][i] != 0)
    # sign normalization
    for i in range(rank):
        if D[i][i] < 0:
            D[i] = [-a for a in D[i]]
            U[i] = [-a for a in U[i]]
    # enforce divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            a, b = D[i][i], D[i + 1][i + 1]
            if b % a != 0:
                changed = True
                # col_i += col_{i+1}; then re-clear the 2x2 block
                for row in D:
                    row[i] += row[i + 1]
                for row in V:
                    row[i] += row[i + 1]
                while D[i + 1][i] != 0 or D[i][i + 1] != 0:
                    if D[i + 1][i] != 0:
                        q = D[i + 1][i] // D[i][i]
                        row_op(i + 1, i, q)
                        if D[i + 1][i] != 0:
                            swap_rows(i, i + 1)
                    if D[i][i + 1] != 0:
                        q = D[i][i + 1] // D[i][i]
                        col_op(i + 1, i, q)
                        if D[i][i + 1] != 0:
                            swap_cols(i, i + 1)
                if D[i][i] < 0:
                    D[i] = [-a for a in D[i]]
                    U[i] = [-a for a in U[i]]
                if D[i + 1][i + 1] < 0:
                    D[i + 1] = [-a for a in D[i + 1]]
                    U[i + 1] = [-a for a in U[i + 1]]
    return D, U, V


def kernel_basis(A):
    """Columns x with A x = 0; returns a list of basis column vectors."""
    n = len(A)
    m = len(A[0]) if n else 0
    D, U, V = smith_normal_form(A)
    out = []
    for j in range(m):
        if j >= min(n, m) or D[j][j] == 0:
            out.append([V[i][j] for i in range(m)])
    return out


def lattice_index(B):
    """Index [Z^n : L] for the lattice L spanned by the columns of B
    (requires full rank n); the product of SNF diagonal entries."""
    D, _, _ = smith_normal_form(B)
    n = len(B)
    idx = 1
    for i in range(n):
        if i >= len(D[0]) or D[i][i] == 0:
            raise ValueError("lattice does not have full rank")
        idx *= D[i][i]
    return idx


def solve_congruence_lattice(C, moduli):
    """Basis of the lattice {x in Z^k : C x ≡ 0 componentwise mod moduli}.

    C is an r x k integer matrix, moduli a length-r list (0 = no reduction).
    """
    r = len(C)
    k = len(C[0]) if r else 0
    # kernel of [C | diag(moduli)] projected to the first k coordinates,
    # plus anything in the kernel of C itself
    ext = [C[i][:] + [moduli[i] if j == i else 0 for j in range(r)]
           for i in range(r)]
    basis = []
    for col in kernel_basis(ext):
        basis.append(col[:k])
    # the projection of a kernel basis spans the solution lattice
    mat = [[b[i] for b in basis] for i in range(k)]
    if not basis:
        return []
    # clean up: HNF via SNF-free column reduction (drop dependent columns)
    return _column_lattice_basis(mat)


def _column_lattice_basis(B):
    """Reduce the columns of B (n x m) to a triangular basis of the column
    lattice, via gcd column operations."""
    n = len(B)
    m = len(B[0]) if n else 0
    cols = [[B[i][j] for i in range(n)] for j in range(m)]
    cols = [c for c in cols if any(c)]
    basis = []
    for r in range(n):
        while True:
            nz = [c for c in cols if c[r] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda c: abs(c[r]))
            a = nz[0]
            for c in nz[1:]:
                q = c[r] // a[r]
                for i in range(n):
                    c[i] -= q * a[i]
            cols = [c for c in cols if any(c)]
        piv = next((c for c in cols if c[r] != 0), None)
        if piv is not None:
            basis.append(piv)
            cols = [c for c in cols if c is not piv]
    return basis


def lattice_intersection(B1, B2):
    """Basis of L1 ∩ L2 for column lattices B1 (n x a), B2 (n x b)."""
    n = len(B1)
    a = len(B1[0]) if B1 and B1[0] is not None else 0
    b = len(B2[0]) if B2 and B2[0] is not None else 0
    stacked = [[B1[i][j] for j in range(a)] + [-B2[i][j] for j in range(b)]
               for i in range(n)]
    out = []
    for col in kernel_basis(stacked):
        x = col[:a]
        vec = [sum(B1[i][j] * x[j] for j in range(a)) for i in range(n)]
        out.append(vec)
    mat = [[v[i] for v in out] for i in range(n)]
    return _column_lattice_basis(mat) if out else []


# ---------------------------------------------------------------- group types

@dataclass(frozen=True)
class GroupElement:
    """Exponent vector in the invariant-factor coordinates of its group."""
    coords: tuple

    def __iter__(self):
        return iter(self.coords)


@dataclass
class FiniteAbelianGroup:
    """Z/d1 x ... x Z/dk (+ a free part of rank free_rank), d1 | d2 | ...

    `transform` maps ambient integer exponent vectors (length ambient_rank)
    to reduced coordinates; it is the row-selection of the SNF change of
    basis retained for the torsion (and free) coordinates.
    """
    invariant_factors: tuple
    free_rank: int = 0
    ambient_rank: int = 0
    transform: list = field(default_factory=list)  # rows: torsion then free
    full_transform: list = field(default_factory=list)  # all SNF rows
    full_diag: list = field(default_factory=list)       # all diagonal entries

    @property
    def order(self) -> int:
        if self.free_rank:
            raise ValueError("infinite group has no order")
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def identity(self) -> GroupElement:
        return GroupElement(tuple(0 for _ in self.invariant_factors))

    def element(self, coords) -> GroupElement:
        return GroupElement(tuple(c % d for c, d in
                                  zip(coords, self.invariant_factors)))

    def project(self, ambient_vector) -> GroupElement:
        """Image of an ambient exponent vector in the torsion coordinates."""
        if len(ambient_vector) != self.ambient_rank:
            raise ValueError("ambient vector has wrong length")
        y = _mat_vec(self.transform, list(ambient_vector))
        tor = y[:len(self.invariant_factors)]
        return self.element(tor)

    def add(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return self.element([a + b for a, b in zip(g.coords, h.coords)])

    def scale(self, n: int, g: GroupElement) -> GroupElement:
        return self.element([n * a for a in g.coords])

    def neg(self, g: GroupElement) -> GroupElement:
        return self.element([-a for a in g.coords])

    def subgroup_lattice(self, gens):
        """Columns spanning the lattice of <gens> + relation lattice in Z^k."""
        k = len(self.invariant_factors)
        cols = [list(g.coords) for g in gens]
        cols += [[self.invariant_factors[i] if j == i else 0
                  for i in range(k)] for j in range(k)]
        return [[c[i] for c in cols] for i in range(k)]


def smith_presentation(relations, ambient_rank: int) -> FiniteAbelianGroup:
    """Group presented by Z^ambient_rank modulo the rows of `relations`."""
    rows = [list(r) for r in relations]
    for r in rows:
        if len(r) != ambient_rank:
            raise ValueError("relation of wrong length")
    if not rows:
        rows = [[0] * ambient_rank] if ambient_rank else []
    # columns of R^T span the relation lattice
    A = [[rows[i][j] for i in range(len(rows))] for j in range(ambient_rank)]
    D, U, V = smith_normal_form(A)
    diag = [D[i][i] if i < (len(D[0]) if D else 0) else 0
            for i in range(ambient_rank)]
    tor_idx = [i for i in range(ambient_rank) if diag[i] > 1]
    free_idx = [i for i in range(ambient_rank) if diag[i] == 0]
    transform = [U[i] for i in tor_idx] + [U[i] for i in free_idx]
    return FiniteAbelianGroup(
        invariant_factors=tuple(diag[i] for i in tor_idx),
        free_rank=len(free_idx),
        ambient_rank=ambient_rank,
        transform=transform,
        full_transform=U,
        full_diag=diag,
    )


# ----------------------------------------------------------------- operations

def element_order(G: FiniteAbelianGroup, g: GroupElement) -> int:
    n = 1
    for d, c in zip(G.invariant_factors, g.coords):
        o = d // gcd(d, c % d)
        n = n * o // gcd(n, o)
    return n


def subgroup_image_order(G: FiniteAbelianGroup, gens) -> int:
    """Order of the subgroup of G generated by gens."""
    if G.free_rank:
        raise ValueError("subgroup orders require a finite group")
    if not G.invariant_factors:
        return 1
    if not gens:
        return 1
    B = G.subgroup_lattice(gens)
    return G.order // lattice_index(B)


def subgroup_order_from_lattice(G: FiniteAbelianGroup, lattice_cols) -> int:
    """Order of (L + R)/R for a column lattice L inside Z^k, R the relations."""
    k = len(G.invariant_factors)
    cols = [[lattice_cols[i][j] for i in range(k)]
            for j in range(len(lattice_cols[0]) if lattice_cols else 0)]
    cols += [[G.invariant_factors[i] if t == i else 0 for i in range(k)]
             for t in range(k)]
    B = [[c[i] for c in cols] for i in range(k)]
    return G.order // lattice_index(B)


def _crt_merge(r1, m1, r2, m2):
    g = gcd(m1, m2)
    if (r2 - r1) % g != 0:
        return None
    l = m1 // g * m2
    t = (r2 - r1) // g * pow(m1 // g, -1, m2 // g) % (m2 // g) if m2 != g else 0
    return ((r1 + m1 * t) % l, l)


def solve_dlog(G: FiniteAbelianGroup, g: GroupElement, h: GroupElement):
    """n with n*g = h in G, or None."""
    r, m = 0, 1
    for d, gi, hi in zip(G.invariant_factors, g.coords, h.coords):
        a, b = gi % d, hi % d
        q = gcd(a, d)
        if b % q != 0:
            return None
        if d == q:
            continue  # a = 0, b = 0: no constraint
        ri = (b // q) * pow(a // q, -1, d // q) % (d // q)
        merged = _crt_merge(r, m, ri, d // q)
        if merged is None:
            return None
        r, m = merged
    return r


# ------------------------------------------- decomposition of abstract groups

def _power(op, ident, g, k):
    r = ident
    b = g
    while k:
        if k & 1:
            r = op(r, b)
        b = op(b, b)
        k >>= 1
    return r


def _order_of(op, ident, g):
    o = 1
    x = g
    while x != ident:
        x = op(x, g)
        o += 1
    return o


def _decompose_rec(elems, op, ident):
    """[(g_i, order_i)] realizing elems = direct sum of the <g_i>."""
    if len(elems) == 1:
        return []
    orders = {e: _order_of(op, ident, e) for e in elems}
    g = max(elems, key=lambda e: (orders[e], repr(e)))
    og = orders[g]
    cyc = [ident]
    x = g
    while x != ident:
        cyc.append(x)
        x = op(x, g)

    def coset(e):  # canonical representative of e<g>
        return min(op(e, c) for c in cyc)

    reps = sorted({coset(e) for e in elems})

    def qop(a, b):
        return coset(op(a, b))

    out = [(g, og)]
    for hbar, m in _decompose_rec(reps, qop, coset(ident)):
        # lift: hbar^m lies in <g>, say g^s with m | s; correct by g^(-s/m)
        s = cyc.index(_power(op, ident, hbar, m))
        assert s % m == 0, "maximal-order correction failed"
        h = op(hbar, _power(op, ident, g, (og - (s // m) % og) % og))
        assert _order_of(op, ident, h) == m
        out.append((h, m))
    return out


def decompose_abelian(elements, op, identity):
    """Decompose a finite abelian group given by its multiplication law.

    Elements must be hashable and orderable.  Returns (gens, orders, dlog)
    where the gens realize a direct-sum decomposition with the given cyclic
    orders and dlog maps every element to its exponent tuple.
    """
    elements = list(elements)
    pairs = _decompose_rec(elements, op, identity)
    gens = [g for g, _ in pairs]
    orders = [o for _, o in pairs]
    total = 1
    for o in orders:
        total *= o
    dlog = {identity: tuple(0 for _ in gens)}
    frontier = [(identity, tuple(0 for _ in gens))]
    while frontier:
        nxt = []
        for (e, vec) in frontier:
            for i, g in enumerate(gens):
                w = op(e, g)
                if w not in dlog:
                    v2 = list(vec)
                    v2[i] = (v2[i] + 1) % orders[i]
                    dlog[w] = tuple(v2)
                    nxt.append((w, tuple(v2)))
        frontier = nxt
    assert len(dlog) == len(elements) == total, "decomposition does not span"
    return gens, orders, dlog
