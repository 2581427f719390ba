"""Exact polynomial arithmetic: worked examples and ring properties."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ellspectra.errors import DomainError
from ellspectra.poly import (
    Poly,
    derivative,
    divide_exact,
    gcd,
    parse_poly,
    poly_from_json,
    poly_to_json,
    resultant,
    squarefree_part,
)

U, V, T, X, Y = (Poly.var(n) for n in "uvtxy")


def _random_poly(rng: random.Random, vars=("x", "y"), max_deg=2, max_terms=4) -> Poly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exp = tuple(rng.randint(0, max_deg) for _ in vars)
        terms[exp] = rng.randint(-3, 3)
    return Poly.from_terms(vars, terms)


# -- gcd -----------------------------------------------------------------------


def test_gcd_common_factor_by_construction():
    assert gcd(X**2 - Y**2, X - Y) == X - Y


def test_gcd_coprime_pair():
    assert gcd(X, Y) == Poly.const(1, ("x", "y"))


def test_gcd_discriminant_form_is_squarefree():
    p = U**12 * 4 + V**12 * 27
    assert gcd(p, derivative(p, "u")) == Poly.const(1, ("u", "v"))


def test_gcd_both_zero_rejected():
    with pytest.raises(DomainError):
        gcd(Poly.zero(("x",)), Poly.zero(("x",)))


def test_gcd_divides_both_on_random_pairs():
    rng = random.Random(20240901)
    for _ in range(40):
        p = _random_poly(rng)
        q = _random_poly(rng)
        if p.is_zero() or q.is_zero():
            continue
        g = gcd(p, q)
        divide_exact(p, g)
        divide_exact(q, g)


def test_gcd_detects_planted_common_factor():
    rng = random.Random(7)
    for _ in range(20):
        common = _random_poly(rng, max_deg=1) + Poly.const(rng.randint(1, 3))
        p = common * _random_poly(rng)
        q = common * _random_poly(rng)
        if p.is_zero() or q.is_zero() or common.is_const():
            continue
        g = gcd(p, q)
        divide_exact(Poly(g.vars, dict(g.terms)), common)  # common | gcd


# -- squarefree part -------------------------------------------------------------


def test_squarefree_constructed_square():
    p = (U - V) ** 2 * (U + V)
    assert squarefree_part(p) == U**2 - V**2


def test_squarefree_discriminant_form_unchanged():
    p = U**12 * 4 + V**12 * 27
    assert squarefree_part(p) == p


def test_squarefree_of_unit():
    assert squarefree_part(Poly.const(5)) == Poly.const(1)


def test_squarefree_zero_rejected():
    with pytest.raises(DomainError):
        squarefree_part(Poly.zero(("x",)))


def test_squarefree_square_insensitive_on_random_inputs():
    rng = random.Random(99)
    done = 0
    while done < 20:
        p = _random_poly(rng)
        q = _random_poly(rng)
        if p.is_const() or q.is_zero() or p.is_zero():
            continue
        assert squarefree_part(p**2 * q) == squarefree_part(p * q)
        done += 1


# -- resultants -------------------------------------------------------------------


def test_resultant_linear_substitution():
    assert resultant(Y**2 - X, Y - 1, "y") == 1 - X


def test_resultant_direct_sylvester():
    assert resultant(X - T, X**2 - T, "x") == T**2 - T


def test_resultant_weierstrass_elimination():
    # res_y(y, y^2 - x^3 - x) = product of y-roots of the cubic relation,
    # i.e. the Sylvester determinant -(x^3 + x); cross-checked by the product
    # formula res(f, g) = lc(f)^deg(g) * prod g(root of f) = g(0).
    w = Y**2 - X**3 - X
    assert resultant(Y, w, "y") == -(X**3) - X
    assert resultant(Y, w, "y") == w.subs({"y": 0}).with_vars(("x", "y"))


def test_resultant_var_absent_rejected():
    with pytest.raises(DomainError):
        resultant(X, X + 1, "y")


def test_resultant_vanishes_iff_common_factor():
    rng = random.Random(4242)
    done_common = done_coprime = 0
    while done_common < 12 or done_coprime < 12:
        p = _random_poly(rng)
        q = _random_poly(rng)
        if p.degree("x") < 1 or q.degree("x") < 1:
            continue
        r = resultant(p, q, "x")
        has_common = gcd(p, q).degree("x") >= 1
        if has_common and done_common < 12:
            assert r.is_zero()
            done_common += 1
        elif not has_common and done_coprime < 12:
            assert not r.is_zero()
            done_coprime += 1
        # planted common factor
        f = _random_poly(rng, max_deg=1)
        if f.degree("x") >= 1 and not p.is_zero() and not q.is_zero():
            assert resultant(p * f, q * f, "x").is_zero()


# -- evaluation --------------------------------------------------------------------


def test_eval_basic():
    assert (X**2 + Y).eval({"x": 2, "y": 3}) == 7


def test_eval_discriminant_point():
    p = (U**12 * 4 + V**12 * 27).scale(-16)
    assert p.eval({"u": 0, "v": 1}) == -432


def test_eval_zero_empty_assignment():
    assert Poly.zero(()).eval({}) == 0


def test_eval_missing_variable_rejected():
    with pytest.raises(DomainError):
        (X + Y).eval({"x": 1})


def test_eval_is_ring_homomorphism():
    rng = random.Random(31337)
    for _ in range(25):
        p = _random_poly(rng)
        q = _random_poly(rng)
        point = {"x": Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
                 "y": Fraction(rng.randint(-4, 4), rng.randint(1, 3))}
        assert (p + q).eval(point) == p.eval(point) + q.eval(point)
        assert (p * q).eval(point) == p.eval(point) * q.eval(point)


# -- plumbing -------------------------------------------------------------------------


def test_degree_lex_leading_term():
    p = X * Y + X**2 + Y**2  # same total degree: x^2 wins (x before y)
    exp, coeff = p.lead()
    assert exp == (2, 0) and coeff == 1


def test_divide_exact_and_failure():
    assert divide_exact(X**2 - Y**2, X + Y) == X - Y
    with pytest.raises(DomainError):
        divide_exact(X**2 + Y, X + Y)


def test_substitution_partial():
    p = U**2 * X + V
    assert p.subs({"u": 2}) == (X * 4 + V).with_vars(("v", "x"))


def test_homogeneous_check():
    assert (U**2 + U * V).is_homogeneous()
    assert not (U**2 + V).is_homogeneous()


def test_json_round_trip():
    p = Poly.from_terms(("u", "v"), {(12, 0): 4, (0, 12): 27})
    blob = poly_to_json(p)
    assert blob == {"vars": ["u", "v"], "terms": [[[12, 0], "4"], [[0, 12], "27"]]}
    assert poly_from_json(blob) == p


def test_json_fractions():
    p = Poly.from_terms(("x",), {(1,): Fraction(-3, 2)})
    assert poly_to_json(p)["terms"] == [[[1], "-3/2"]]
    assert poly_from_json(poly_to_json(p)) == p


def test_parse_poly_expressions():
    assert parse_poly("x^2 - 2x*y + 3/4") == X**2 - X * Y * 2 + Fraction(3, 4)
    assert parse_poly("2x") == X.scale(2)
    assert parse_poly("(u - v)^2 (u + v)") == (U - V) ** 2 * (U + V)
    assert parse_poly("-x") == -X
    with pytest.raises(DomainError):
        parse_poly("x + w")
