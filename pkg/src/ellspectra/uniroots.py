"""Exact univariate root bookkeeping.

Rational roots are found without integer factorisation: real roots are
isolated with a Sturm sequence, each isolating interval is narrowed below
the minimal spacing of candidate rationals (denominators divide the leading
coefficient), and the simplest fraction in the interval is tested exactly.
Everything returns Fractions; nothing here is approximate.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

from .errors import DomainError
from .poly import Poly, coeffs_in, derivative, divide_exact, gcd, squarefree_part

Coeffs = list[Fraction]  # index = degree


def univariate_coeffs(p: Poly, var: str) -> Coeffs:
    """Dense coefficient list of a polynomial in a single variable."""
    used = p.used_vars()
    if used not in ((), (var,)):
        raise DomainError(f"{p} is not univariate in {var!r}")
    by_deg = coeffs_in(p, var)
    n = p.degree(var)
    out = [Fraction(0)] * (max(n, 0) + 1)
    for k, c in by_deg.items():
        out[k] = c.as_const()
    return out


def _trim(c: Coeffs) -> Coeffs:
    while c and c[-1] == 0:
        c.pop()
    return c


def _ev(c: Coeffs, x: Fraction) -> Fraction:
    total = Fraction(0)
    for coeff in reversed(c):
        total = total * x + coeff
    return total


def _deriv(c: Coeffs) -> Coeffs:
    return [c[i] * i for i in range(1, len(c))]


def _rem(a: Coeffs, b: Coeffs) -> Coeffs:
    a = _trim(list(a))
    b = _trim(list(b))
    db = len(b) - 1
    lb = b[-1]
    while a and len(a) - 1 >= db:
        da = len(a) - 1
        f = a[-1] / lb
        for i in range(db + 1):
            a[da - db + i] -= f * b[i]
        a.pop()
        _trim(a)
    return a


def _primitive(c: Coeffs) -> Coeffs:
    """Scale by a positive rational so coefficients are coprime integers."""
    lcm = 1
    for f in c:
        if f:
            lcm = lcm * f.denominator // _int_gcd(lcm, f.denominator)
    ints = [f.numerator * (lcm // f.denominator) for f in c]
    g = 0
    for n in ints:
        g = _int_gcd(g, abs(n))
    if g == 0:
        return [Fraction(0) for _ in c]
    return [Fraction(n, g) for n in ints]


def _squarefree(c: Coeffs) -> Coeffs:
    d = _deriv(list(c))
    g = _poly_gcd(list(c), d)
    if len(g) <= 1:
        return _primitive(list(c))
    q = _exact_div(list(c), g)
    return _primitive(q)


def _poly_gcd(a: Coeffs, b: Coeffs) -> Coeffs:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _trim(_rem(a, b))
        a = _primitive(a)
    return a


def _exact_div(a: Coeffs, b: Coeffs) -> Coeffs:
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    a = list(a)
    while _trim(a) and len(a) >= len(b):
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        out[k] = f
        for i in range(len(b)):
            a[k + i] -= f * b[i]
    if _trim(a):
        raise DomainError("division was not exact")
    return out


def sturm_sequence(c: Coeffs) -> list[Coeffs]:
    seq = [_primitive(list(c)), _primitive(_deriv(c))]
    while _trim(seq[-1]):
        r = _rem(seq[-2], seq[-1])
        if not _trim(r):
            break
        seq.append(_primitive([-f for f in r]))
    return [s for s in seq if _trim(list(s))]


def _sign_changes(seq: list[Coeffs], x: Fraction) -> int:
    signs = []
    for s in seq:
        val = _ev(s, x)
        if val != 0:
            signs.append(1 if val > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(c: Coeffs, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of a squarefree c in (lo, hi]."""
    seq = sturm_sequence(c)
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def root_bound(c: Coeffs) -> Fraction:
    """Cauchy bound: all real roots lie strictly within (-M, M)."""
    lead = abs(c[-1])
    m = max((abs(f) for f in c[:-1]), default=Fraction(0))
    return 1 + m / lead


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Fraction with the smallest denominator in the closed interval [lo, hi]."""
    if lo > hi:
        raise DomainError("empty interval")
    if lo == hi:
        return lo
    fl = -((-lo.numerator) // lo.denominator)  # ceil(lo)
    if fl <= hi:
        return Fraction(fl)
    a0 = lo.numerator // lo.denominator  # floor; lo, hi share it here
    frac = simplest_between(1 / (hi - a0), 1 / (lo - a0))
    return a0 + 1 / frac


def rational_roots(p: Poly, var: str) -> list[tuple[Fraction, int]]:
    """All rational roots with multiplicities, sorted increasingly.

    Complete: every rational root is found, irrational roots are ignored.
    """
    c = _trim(univariate_coeffs(p, var))
    if not c:
        raise DomainError("rational roots of the zero polynomial")
    if len(c) == 1:
        return []
    roots: list[Fraction] = []
    # factor out powers of var
    shift = 0
    while c[0] == 0:
        c = c[1:]
        shift += 1
    if shift:
        roots.append(Fraction(0))
    sf = _squarefree(c)
    if len(sf) > 1:
        roots.extend(_rational_roots_squarefree(sf))
    out = []
    for r in sorted(set(roots)):
        out.append((r, _multiplicity(univariate_coeffs(p, var), r)))
    return out


def _multiplicity(c: Coeffs, r: Fraction) -> int:
    m = 0
    c = _trim(list(c))
    while c and _ev(c, r) == 0:
        c = _exact_div(c, [-r, Fraction(1)])
        m += 1
    return m


def _exact_sqrt(f: Fraction) -> Fraction | None:
    if f < 0:
        return None
    from math import isqrt

    rn, rd = isqrt(f.numerator), isqrt(f.denominator)
    if rn * rn == f.numerator and rd * rd == f.denominator:
        return Fraction(rn, rd)
    return None


def _rational_roots_squarefree(c: Coeffs) -> list[Fraction]:
    if len(c) == 2:
        return [-c[0] / c[1]]
    if len(c) == 3:
        a2, a1, a0 = c[2], c[1], c[0]
        root = _exact_sqrt(a1 * a1 - 4 * a2 * a0)
        if root is None:
            return []
        return sorted({(-a1 + root) / (2 * a2), (-a1 - root) / (2 * a2)})
    found: list[Fraction] = []
    bound = root_bound(c)
    denom_cap = abs(c[-1].numerator)  # primitive: denominators divide the leading coefficient
    gap = Fraction(1, 2 * denom_cap * denom_cap)
    seq = sturm_sequence(c)

    def varcount(x: Fraction) -> int:
        return _sign_changes(seq, x)

    stack = [(-bound, bound, varcount(-bound), varcount(bound))]
    intervals = []
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        mid = (lo + hi) / 2
        if _ev(c, mid) == 0:
            found.append(mid)
            eps = min(hi - mid, mid - lo) / 4
            stack.append((lo, mid - eps, vlo, varcount(mid - eps)))
            stack.append((mid + eps, hi, varcount(mid + eps), vhi))
            continue
        if n == 1:
            intervals.append((lo, hi, vlo, vhi))
            continue
        vmid = varcount(mid)
        stack.append((lo, mid, vlo, vmid))
        stack.append((mid, hi, vmid, vhi))
    for lo, hi, vlo, vhi in intervals:
        # narrow until at most one candidate rational can remain
        while hi - lo > gap:
            mid = (lo + hi) / 2
            val = _ev(c, mid)
            if val == 0:
                found.append(mid)
                break
            if varcount(lo) - varcount(mid) == 1:
                hi = mid
            else:
                lo = mid
        else:
            cand = simplest_between(lo, hi)
            if cand.denominator <= denom_cap and _ev(c, cand) == 0:
                found.append(cand)
    return found


def has_rational_root(p: Poly, var: str) -> bool:
    return bool(rational_roots(p, var))


# -- homogeneous binary forms -------------------------------------------------


def form_rational_zeros(form: Poly, uvar: str, vvar: str) -> list[tuple[tuple[int, int], int]]:
    """Rational projective zeros ((p : q), multiplicity) of a binary form.

    The point at infinity (1 : 0) corresponds to the content of v-powers.
    """
    if form.is_zero():
        raise DomainError("zero form has no zero divisor")
    if not form.is_homogeneous():
        raise DomainError("not a homogeneous form")
    zeros: list[tuple[tuple[int, int], int]] = []
    v_mult = min(
        e[form.vars.index(vvar)] if vvar in form.vars else 0 for e in form.terms
    ) if form.terms else 0
    if vvar in form.vars and v_mult > 0:
        zeros.append(((1, 0), v_mult))
    affine = form.subs({vvar: 1})
    if not affine.is_const():
        for r, m in rational_roots(affine, uvar):
            zeros.append(((r.numerator, r.denominator), m))
    return zeros


def multiple_zero_part(form: Poly) -> Poly:
    """gcd of a form with its partials: carries exactly the repeated zeros."""
    sf = squarefree_part(form)
    return divide_exact(form, sf) if sf.total_degree() < form.total_degree() else Poly.const(1, form.vars)
