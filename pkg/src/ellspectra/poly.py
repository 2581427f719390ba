"""Exact sparse multivariate polynomials with rational coefficients.

Variables come from the fixed alphabet ``u, v, t, x, y``.  A polynomial
stores an ordered variable tuple and a map from exponent vectors to nonzero
``Fraction`` coefficients; the zero polynomial has an empty term map.  The
canonical term order is degree-lexicographic with ``u > v > t > x > y``.

Everything here is exact: no floating point is used anywhere in the package.
Only gcd, squarefree part, resultants and derivatives are provided; full
factorisation over Q is deliberately out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DomainError

VAR_ORDER = ("u", "v", "t", "x", "y")

Exponent = tuple[int, ...]


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise DomainError(f"not an exact rational: {c!r}")


def _check_vars(names: Iterable[str]) -> tuple[str, ...]:
    names = tuple(names)
    for n in names:
        if n not in VAR_ORDER:
            raise DomainError(f"unknown variable {n!r}; allowed: {VAR_ORDER}")
    if len(set(names)) != len(names):
        raise DomainError(f"repeated variable in {names}")
    return tuple(sorted(names, key=VAR_ORDER.index))


@dataclass(frozen=True, eq=False)
class Poly:
    """Immutable sparse polynomial.  Use the module helpers to build one."""

    vars: tuple[str, ...]
    terms: dict  # Exponent -> Fraction, no zero coefficients stored

    # -- construction ------------------------------------------------------

    @staticmethod
    def zero(vars: Iterable[str] = ()) -> "Poly":
        return Poly(_check_vars(vars), {})

    @staticmethod
    def const(c, vars: Iterable[str] = ()) -> "Poly":
        vars = _check_vars(vars)
        c = _as_fraction(c)
        if c == 0:
            return Poly(vars, {})
        return Poly(vars, {(0,) * len(vars): c})

    @staticmethod
    def var(name: str) -> "Poly":
        vars = _check_vars([name])
        return Poly(vars, {(1,): Fraction(1)})

    @staticmethod
    def from_terms(vars: Iterable[str], terms: Mapping[Exponent, object]) -> "Poly":
        vars = _check_vars(vars)
        out: dict = {}
        for exp, c in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(vars) or any(e < 0 for e in exp):
                raise DomainError(f"bad exponent vector {exp} for vars {vars}")
            c = _as_fraction(c)
            if c != 0:
                out[exp] = out.get(exp, Fraction(0)) + c
        return Poly(vars, {e: c for e, c in out.items() if c != 0})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def as_const(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_const():
            raise DomainError(f"not a constant: {self}")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, var: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def lead(self) -> tuple[Exponent, Fraction]:
        """Leading (exponent, coefficient) in degree-lex order."""
        if not self.terms:
            raise DomainError("zero polynomial has no leading term")
        exp = max(self.terms, key=lambda e: (sum(e), e))
        return exp, self.terms[exp]

    def used_vars(self) -> tuple[str, ...]:
        used = [v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms)]
        return tuple(used)

    def prune(self) -> "Poly":
        """Drop variables that do not actually occur."""
        keep = self.used_vars()
        if keep == self.vars:
            return self
        idx = [self.vars.index(v) for v in keep]
        return Poly(keep, {tuple(e[i] for i in idx): c for e, c in self.terms.items()})

    # -- variable bookkeeping ----------------------------------------------

    def with_vars(self, vars: Iterable[str]) -> "Poly":
        """Reindex onto a superset of the current variables."""
        vars = _check_vars(vars)
        if vars == self.vars:
            return self
        if not set(self.vars) <= set(vars):
            raise DomainError(f"{vars} does not contain {self.vars}")
        pos = {v: vars.index(v) for v in self.vars}
        out: dict = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for v, ev in zip(self.vars, e):
                ne[pos[v]] = ev
            out[tuple(ne)] = c
        return Poly(vars, out)

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        new = [mapping.get(v, v) for v in self.vars]
        order = _check_vars(new)
        perm = [new.index(v) for v in order]
        return Poly(order, {tuple(e[i] for i in perm): c for e, c in self.terms.items()})

    # -- arithmetic ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = unify(self, other)
        return a.terms == b.terms

    __hash__ = None  # mutable dict inside; use key() for dedup maps

    def key(self):
        return (self.vars, tuple(sorted(self.terms.items())))

    def __add__(self, other) -> "Poly":
        other = _coerce(other, self.vars)
        a, b = unify(self, other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return Poly(a.vars, out)

    def __radd__(self, other) -> "Poly":
        return self.__add__(other)

    def __neg__(self) -> "Poly":
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self.__add__(-_coerce(other, self.vars))

    def __rsub__(self, other) -> "Poly":
        return (-self).__add__(_coerce(other, self.vars))

    def __mul__(self, other) -> "Poly":
        other = _coerce(other, self.vars)
        a, b = unify(self, other)
        out: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Poly(a.vars, out)

    def __rmul__(self, other) -> "Poly":
        return self.__mul__(other)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise DomainError("negative power of a polynomial")
        result = Poly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = _as_fraction(c)
        if c == 0:
            return Poly(self.vars, {})
        return Poly(self.vars, {e: c * k for e, k in self.terms.items()})

    # -- evaluation and substitution ---------------------------------------

    def eval(self, assignment: Mapping[str, object]) -> Fraction:
        """Exact evaluation; every occurring variable must be assigned."""
        for v in self.used_vars():
            if v not in assignment:
                raise DomainError(f"missing assignment for variable {v!r}")
        vals = [
            _as_fraction(assignment[v]) if v in assignment else Fraction(0)
            for v in self.vars
        ]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for ev, val in zip(e, vals):
                if ev:
                    term *= val**ev
            total += term
        return total

    def subs(self, assignment: Mapping[str, object]) -> "Poly":
        """Partial evaluation; substituted variables are removed."""
        keep = [v for v in self.vars if v not in assignment]
        out: dict = {}
        for e, c in self.terms.items():
            coeff = c
            ne = []
            for v, ev in zip(self.vars, e):
                if v in assignment:
                    if ev:
                        coeff *= _as_fraction(assignment[v]) ** ev
                else:
                    ne.append(ev)
            if coeff != 0:
                ne = tuple(ne)
                s = out.get(ne, Fraction(0)) + coeff
                if s == 0:
                    out.pop(ne, None)
                else:
                    out[ne] = s
        return Poly(tuple(keep), out)

    # -- display --------------------------------------------------------------

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            if not mono:
                bits.append(str(c))
            elif c == 1:
                bits.append(mono)
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{c}*{mono}")
        s = " + ".join(bits)
        return s.replace("+ -", "- ")


def _coerce(value, vars: tuple[str, ...]) -> Poly:
    if isinstance(value, Poly):
        return value
    return Poly.const(value, vars)


def unify(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Reindex both polynomials onto the union of their variables."""
    if p.vars == q.vars:
        return p, q
    vars = _check_vars(sorted(set(p.vars) | set(q.vars), key=VAR_ORDER.index))
    return p.with_vars(vars), q.with_vars(vars)


# -- calculus ---------------------------------------------------------------


def derivative(p: Poly, var: str) -> Poly:
    """Partial derivative with respect to one variable."""
    if var not in p.vars:
        return Poly.zero(p.vars)
    i = p.vars.index(var)
    out: dict = {}
    for e, c in p.terms.items():
        if e[i] == 0:
            continue
        ne = list(e)
        ne[i] -= 1
        out[tuple(ne)] = c * e[i]
    return Poly(p.vars, out)


# -- exact division, content, primitive part --------------------------------


def divide_exact(p: Poly, d: Poly) -> Poly:
    """Quotient p/d when the division is exact; DomainError otherwise."""
    p, d = unify(p, d)
    if d.is_zero():
        raise DomainError("division by the zero polynomial")
    if p.is_zero():
        return p
    quot: dict = {}
    rem = p
    d_exp, d_coeff = d.lead()
    while not rem.is_zero():
        r_exp, r_coeff = rem.lead()
        diff = tuple(a - b for a, b in zip(r_exp, d_exp))
        if any(e < 0 for e in diff):
            raise DomainError("division is not exact")
        c = r_coeff / d_coeff
        quot[diff] = quot.get(diff, Fraction(0)) + c
        rem = rem - Poly(p.vars, {diff: c}) * d
    return Poly(p.vars, {e: c for e, c in quot.items() if c != 0})


def divides(d: Poly, p: Poly) -> bool:
    try:
        divide_exact(p, d)
        return True
    except DomainError:
        return False


def coeffs_in(p: Poly, var: str) -> dict[int, Poly]:
    """View p as a univariate polynomial in ``var`` with Poly coefficients."""
    if var not in p.vars:
        return {0: p} if not p.is_zero() else {}
    i = p.vars.index(var)
    rest = tuple(v for v in p.vars if v != var)
    out: dict[int, dict] = {}
    for e, c in p.terms.items():
        k = e[i]
        ne = tuple(ev for j, ev in enumerate(e) if j != i)
        out.setdefault(k, {})[ne] = c
    return {k: Poly(rest, terms) for k, terms in sorted(out.items())}


def from_coeffs(coeffs: Mapping[int, Poly], var: str) -> Poly:
    """Inverse of coeffs_in."""
    total = Poly.zero((var,))
    xv = Poly.var(var)
    for k, c in coeffs.items():
        total = total + c * xv**k
    return total


def monic(p: Poly) -> Poly:
    """Divide by the leading coefficient (degree-lex)."""
    if p.is_zero():
        return p
    _, c = p.lead()
    return p.scale(1 / c)


def primitive_normalized(p: Poly) -> Poly:
    """Clear denominators, remove integer content, make the leading sign positive."""
    if p.is_zero():
        return p
    denoms = [c.denominator for c in p.terms.values()]
    lcm = 1
    for d in denoms:
        lcm = lcm * d // _int_gcd(lcm, d)
    nums = [c.numerator * (lcm // c.denominator) for c in p.terms.values()]
    g = 0
    for n in nums:
        g = _int_gcd(g, abs(n))
    scaled = p.scale(Fraction(lcm, g))
    if scaled.lead()[1] < 0:
        scaled = -scaled
    return scaled


def _int_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# -- gcd via primitive pseudo-remainder sequences ----------------------------


def _prem(a: Poly, b: Poly, var: str) -> Poly:
    """Pseudo-remainder of a by b with respect to var (up to a unit)."""
    db = b.degree(var)
    lb = coeffs_in(b, var)[db].with_vars(a.vars)
    r = a
    while not r.is_zero() and r.degree(var) >= db:
        dr = r.degree(var)
        lr = coeffs_in(r, var)[dr].with_vars(a.vars)
        shift = Poly(a.vars, {tuple(dr - db if v == var else 0 for v in a.vars): Fraction(1)})
        r = lb * r - lr * shift * b
    return r


def _content_in(p: Poly, var: str) -> Poly:
    parts = list(coeffs_in(p, var).values())
    c = parts[0]
    for q in parts[1:]:
        c = gcd(c, q)
        if c.is_const():
            break
    return c


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor; DomainError when both inputs are zero."""
    p, q = unify(p, q)
    if p.is_zero() and q.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    if p.is_zero():
        return monic(q)
    if q.is_zero():
        return monic(p)
    if p.is_const() or q.is_const():
        return Poly.const(1, p.vars)
    g = _gcd_rec(p.prune(), q.prune())
    return monic(g.with_vars(p.vars))


def _gcd_rec(p: Poly, q: Poly) -> Poly:
    p, q = unify(p, q)
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    if p.is_const() or q.is_const():
        return Poly.const(1, p.vars)
    # main variable: last used variable in canonical order
    used = tuple(v for v in p.vars if v in set(p.used_vars()) | set(q.used_vars()))
    var = used[-1]
    if p.degree(var) == 0:
        return _gcd_rec(p, _content_in(q, var))
    if q.degree(var) == 0:
        return _gcd_rec(_content_in(p, var), q)
    cp, cq = _content_in(p, var), _content_in(q, var)
    a = divide_exact(p, cp.with_vars(p.vars))
    b = divide_exact(q, cq.with_vars(q.vars))
    cont = _gcd_rec(cp, cq)
    if a.degree(var) < b.degree(var):
        a, b = b, a
    while not b.is_zero():
        r = _prem(a, b, var)
        if not r.is_zero():
            r = divide_exact(r, _content_in(r, var).with_vars(r.vars))
        a, b = b, r
    return cont.with_vars(p.vars) * divide_exact(a, _content_in(a, var).with_vars(a.vars))


def squarefree_part(p: Poly) -> Poly:
    """Product of the distinct irreducible factors, primitively normalized.

    Computed as p / gcd(p, all partial derivatives); valid in characteristic 0.
    """
    if p.is_zero():
        raise DomainError("squarefree part of 0 is undefined")
    if p.is_const():
        return Poly.const(1, p.vars)
    g = None
    for v in p.used_vars():
        d = derivative(p, v)
        g = d if g is None else gcd(g, d)
        if not g.is_zero() and g.is_const():
            break
    g = gcd(p, g)
    return primitive_normalized(divide_exact(p, g.with_vars(p.vars)))


def is_squarefree(p: Poly) -> bool:
    sf = squarefree_part(p)
    return sf.total_degree() == p.total_degree()


# -- resultants ---------------------------------------------------------------


def resultant(p: Poly, q: Poly, var: str) -> Poly:
    """Sylvester-matrix determinant of p and q with respect to var.

    Vanishes identically iff p and q share a factor of positive degree in var.
    If var occurs in only one argument the usual degenerate convention
    res(p, q) = p^deg(q) (resp. q^deg(p)) applies; var absent from both is a
    domain error.
    """
    p, q = unify(p, q)
    m, n = p.degree(var), q.degree(var)
    if p.is_zero() or q.is_zero():
        raise DomainError("resultant of the zero polynomial")
    if m <= 0 and n <= 0:
        raise DomainError(f"variable {var!r} occurs in neither argument")
    if m == 0:
        return p**n
    if n == 0:
        return q**m
    pc = coeffs_in(p, var)
    qc = coeffs_in(q, var)
    rest = tuple(v for v in p.vars if v != var)
    zero = Poly.zero(rest)
    prow = [pc.get(m - i, zero) for i in range(m + 1)]
    qrow = [qc.get(n - i, zero) for i in range(n + 1)]
    size = m + n
    matrix = []
    for i in range(n):
        matrix.append([zero] * i + prow + [zero] * (size - i - m - 1))
    for i in range(m):
        matrix.append([zero] * i + qrow + [zero] * (size - i - n - 1))
    return _det_bareiss(matrix)


def _det_bareiss(matrix: list[list[Poly]]) -> Poly:
    """Fraction-free determinant; entries must live in a common variable set."""
    n = len(matrix)
    vars = matrix[0][0].vars
    m = [[entry.with_vars(vars) for entry in row] for row in matrix]
    sign = 1
    prev = Poly.const(1, vars)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if pivot is None:
                return Poly.zero(vars)
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = divide_exact(num, prev)
            m[i][k] = Poly.zero(vars)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


# -- JSON interchange ---------------------------------------------------------


def poly_to_json(p: Poly) -> dict:
    """Sparse term-list encoding with coefficients as decimal strings."""
    terms = []
    for e in sorted(p.terms, key=lambda e: (sum(e), e), reverse=True):
        c = p.terms[e]
        text = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
        terms.append([list(e), text])
    return {"vars": list(p.vars), "terms": terms}


def poly_from_json(obj: Mapping) -> Poly:
    try:
        vars = obj["vars"]
        raw = obj["terms"]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed polynomial JSON: {obj!r}") from exc
    return Poly.from_terms(vars, {tuple(e): c for e, c in raw})


# -- text parser ----------------------------------------------------------------


def parse_poly(text: str) -> Poly:
    """Parse expressions like ``x^2 - 2x*y + 3/4``.

    Supports + - * ^, parentheses, rational constants and implicit
    multiplication by juxtaposition (``2x``, ``x y``).
    """
    tokens = _tokenize(text)
    poly, pos = _parse_sum(tokens, 0)
    if pos != len(tokens):
        raise DomainError(f"trailing input in polynomial: {text!r}")
    return poly


def _tokenize(text: str) -> list[str]:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^()":
            out.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and (text[j].isdigit() or text[j] == "/"):
                j += 1
            out.append(text[i:j])
            i = j
        elif ch in VAR_ORDER:
            out.append(ch)
            i += 1
        else:
            raise DomainError(f"unexpected character {ch!r} in polynomial")
    return out


def _parse_sum(tokens, pos):
    sign = 1
    while pos < len(tokens) and tokens[pos] in "+-":
        if tokens[pos] == "-":
            sign = -sign
        pos += 1
    total, pos = _parse_product(tokens, pos)
    if sign < 0:
        total = -total
    while pos < len(tokens) and tokens[pos] in "+-":
        sign = 1
        while pos < len(tokens) and tokens[pos] in "+-":
            if tokens[pos] == "-":
                sign = -sign
            pos += 1
        term, pos = _parse_product(tokens, pos)
        total = total + (term if sign > 0 else -term)
    return total, pos


def _parse_product(tokens, pos):
    total, pos = _parse_power(tokens, pos)
    while pos < len(tokens) and (
        tokens[pos] == "*" or tokens[pos] == "(" or tokens[pos] in VAR_ORDER or tokens[pos][0].isdigit()
    ):
        if tokens[pos] == "*":
            pos += 1
        factor, pos = _parse_power(tokens, pos)
        total = total * factor
    return total, pos


def _parse_power(tokens, pos):
    base, pos = _parse_atom(tokens, pos)
    if pos < len(tokens) and tokens[pos] == "^":
        pos += 1
        if pos >= len(tokens) or not tokens[pos].isdigit():
            raise DomainError("exponent must be a nonnegative integer")
        base = base ** int(tokens[pos])
        pos += 1
    return base, pos


def _parse_atom(tokens, pos):
    if pos >= len(tokens):
        raise DomainError("unexpected end of polynomial")
    tok = tokens[pos]
    if tok == "(":
        inner, pos = _parse_sum(tokens, pos + 1)
        if pos >= len(tokens) or tokens[pos] != ")":
            raise DomainError("unbalanced parenthesis")
        return inner, pos + 1
    if tok in VAR_ORDER:
        return Poly.var(tok), pos + 1
    if tok[0].isdigit():
        return Poly.const(Fraction(tok)), pos + 1
    raise DomainError(f"unexpected token {tok!r}")
