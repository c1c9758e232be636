import itertools
import random
from fractions import Fraction

import pytest

from ekl.poly import (
    DEGREVLEX,
    LEX,
    MonomialOrder,
    ParseError,
    Polynomial,
    elementary_symmetric,
    format_poly,
    parse_poly,
    partial_derivative,
    poly_det,
    substitute,
)
from ekl.scalar import GF, QQ

XY = ("x", "y")
XYZ = ("x", "y", "z")


def P(text, ring=XY, field=QQ):
    return parse_poly(text, ring, field)


def random_poly(rng, ring, max_deg=3, terms=4, field=QQ):
    out = Polynomial.zero(ring, field)
    n = len(ring)
    for _ in range(terms):
        mono = tuple(rng.randint(0, max_deg) for _ in range(n))
        coeff = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        out = out + Polynomial(ring, field, {mono: field.from_int(0) + coeff if field is QQ else field.from_int(int(coeff))})
    return out


# ---------------------------------------------------------------------------
# parsing

def test_parse_examples():
    assert P("x + y") == P("y + x")
    assert P("(x+y)^2 - x^2 - y^2") == P("2*x*y")
    assert P("x*y - 3/2*y^2").terms == {
        (1, 1): Fraction(1),
        (0, 2): Fraction(-3, 2),
    }


def test_parse_unary_minus_and_power():
    # the grammar binds '^' after the (possibly negated) base
    assert P("-x^2") == P("x^2")
    assert P("-(x^2)") == -P("x^2")
    assert P("-3*x^2") == P("x^2").scale(-3)
    assert P("2^3") == Polynomial.constant(8, XY, QQ)


def test_parse_rational_literals():
    assert P("3/2") == Polynomial.constant(Fraction(3, 2), XY, QQ)
    assert P("- 5/3 * x") == Polynomial.variable("x", XY, QQ).scale(Fraction(-5, 3))


def test_parse_error_positions():
    with pytest.raises(ParseError) as info:
        P("x +* 2")
    assert info.value.position == 3
    with pytest.raises(ParseError):
        P("x + ")
    with pytest.raises(ParseError):
        P("(x + y")


def test_parse_unknown_variable():
    with pytest.raises(ParseError) as info:
        P("x + q")
    assert "unknown variable" in str(info.value)


def test_parse_division_by_nonconstant():
    with pytest.raises(ParseError) as info:
        P("1/x")
    assert "non-constant" in str(info.value)


def test_parse_no_implicit_multiplication():
    with pytest.raises(ParseError):
        P("2x")


def test_print_parse_round_trip():
    rng = random.Random(5)
    for _ in range(120):
        p = random_poly(rng, XYZ, max_deg=3, terms=4)
        assert parse_poly(format_poly(p), XYZ) == p
    # the leading negative-unit corner
    p = P("-1*x^2 + y")
    assert parse_poly(format_poly(p), XY) == p
    assert format_poly(P("0")) == "0"


def test_print_over_prime_field():
    f5 = GF(5)
    p = parse_poly("4*x + 3", XY, f5)
    assert format_poly(p) in ("4*x + 3", "3 + 4*x")
    assert parse_poly(format_poly(p), XY, f5) == p


# ---------------------------------------------------------------------------
# ring axioms

def test_ring_axioms_randomized():
    rng = random.Random(13)
    for _ in range(60):
        a = random_poly(rng, XY)
        b = random_poly(rng, XY)
        c = random_poly(rng, XY)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    assert a - a == Polynomial.zero(XY, QQ)


def test_pow():
    x = Polynomial.variable("x", XY, QQ)
    assert (x + x) ** 0 == Polynomial.constant(1, XY, QQ)
    p = P("x + y")
    assert p ** 3 == p * p * p


# ---------------------------------------------------------------------------
# orders

def test_degrevlex_vs_lex():
    # degrevlex: higher total degree wins; ties broken against the last variable
    x2 = (2, 0)
    xy = (1, 1)
    y2 = (0, 2)
    assert DEGREVLEX.max([x2, xy, y2]) == x2
    assert DEGREVLEX.sorted([y2, x2, xy]) == [y2, xy, x2]
    assert LEX.max([(1, 0), (0, 5)]) == (1, 0)
    assert DEGREVLEX.max([(1, 0), (0, 5)]) == (0, 5)


def test_order_precedence_permutation():
    rev = MonomialOrder("lex", precedence=(1, 0))
    assert rev.max([(1, 0), (0, 1)]) == (0, 1)


def test_order_compatible_with_multiplication():
    rng = random.Random(23)
    monos = [tuple(rng.randint(0, 4) for _ in range(3)) for _ in range(40)]
    for order in (DEGREVLEX, LEX):
        for a, b in itertools.combinations(monos, 2):
            if order.key(a) < order.key(b):
                shift = (1, 2, 0)
                am = tuple(u + v for u, v in zip(a, shift))
                bm = tuple(u + v for u, v in zip(b, shift))
                assert order.key(am) < order.key(bm)


# ---------------------------------------------------------------------------
# elementary symmetric functions

def test_elementary_symmetric_examples():
    assert elementary_symmetric(1, XYZ, XYZ) == P("x + y + z", XYZ)
    assert elementary_symmetric(2, XYZ, XYZ) == P("x*y + x*z + y*z", XYZ)
    assert elementary_symmetric(0, XY, XY) == Polynomial.constant(1, XY, QQ)
    with pytest.raises(ValueError):
        elementary_symmetric(3, XY, XY)


def test_generating_function_identity():
    # sum_k e_k t^k = prod (1 + v t) for up to 6 variables
    for n in range(1, 7):
        names = tuple(f"v{i}" for i in range(n))
        ring = names + ("t",)
        t = Polynomial.variable("t", ring, QQ)
        lhs = Polynomial.zero(ring, QQ)
        for k in range(n + 1):
            lhs = lhs + elementary_symmetric(k, names, ring, QQ) * t**k
        rhs = Polynomial.constant(1, ring, QQ)
        for name in names:
            rhs = rhs * (Polynomial.constant(1, ring, QQ) + Polynomial.variable(name, ring, QQ) * t)
        assert lhs == rhs


# ---------------------------------------------------------------------------
# determinants

def leibniz_det(matrix):
    """Independent oracle: the permutation sum."""
    n = len(matrix)
    first = matrix[0][0]
    total = Polynomial.zero(first.ring, first.field)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Polynomial.constant(sign, first.ring, first.field)
        for i in range(n):
            term = term * matrix[i][perm[i]]
        total = total + term
    return total


def test_det_examples():
    one = Polynomial.constant(1, XY, QQ)
    zero = Polynomial.zero(XY, QQ)
    y = Polynomial.variable("y", XY, QQ)
    x = Polynomial.variable("x", XY, QQ)
    assert poly_det([[one, one], [y, zero]]) == -y
    assert poly_det([[one, zero], [zero, one]]) == one
    assert poly_det([[x, zero], [zero, y]]) == x * y


def test_det_identity_3x3():
    one = Polynomial.constant(1, XYZ, QQ)
    zero = Polynomial.zero(XYZ, QQ)
    m = [[one if i == j else zero for j in range(3)] for i in range(3)]
    assert poly_det(m) == one


def test_det_against_leibniz():
    rng = random.Random(31)
    for n in (2, 3, 4):
        for _ in range(6):
            m = [
                [random_poly(rng, XY, max_deg=1, terms=2) for _ in range(n)]
                for _ in range(n)
            ]
            assert poly_det(m) == leibniz_det(m)


def test_det_with_zero_pivot_rows():
    zero = Polynomial.zero(XY, QQ)
    one = Polynomial.constant(1, XY, QQ)
    x = Polynomial.variable("x", XY, QQ)
    assert poly_det([[zero, one], [x, zero]]) == -x
    assert poly_det([[zero, zero], [x, one]]) == zero


def test_det_rejects_ragged():
    one = Polynomial.constant(1, XY, QQ)
    with pytest.raises(ValueError):
        poly_det([[one, one], [one]])


# ---------------------------------------------------------------------------
# derivatives and substitution

def test_partial_derivative_examples():
    assert partial_derivative(P("x^2*y"), "x") == P("2*x*y")
    assert partial_derivative(P("y^3"), "x") == Polynomial.zero(XY, QQ)
    assert partial_derivative(P("x*y"), "y") == P("x")
    with pytest.raises(ValueError):
        partial_derivative(P("x"), "q")


def test_derivative_product_rule():
    rng = random.Random(41)
    for _ in range(40):
        f = random_poly(rng, XY)
        g = random_poly(rng, XY)
        lhs = partial_derivative(f * g, "x")
        rhs = partial_derivative(f, "x") * g + f * partial_derivative(g, "x")
        assert lhs == rhs


def test_substitute_examples():
    f = P("x^2")
    image = substitute(f, {"x": P("x + y")})
    assert image == P("x^2 + 2*x*y + y^2")
    idy = {"x": P("x"), "y": P("y")}
    assert substitute(P("x + y"), idy) == P("x + y")
    uv = ("u", "v")
    f = P("x*y")
    image = substitute(f, {"x": P("u + v", uv), "y": P("u - v", uv)})
    assert image == P("u^2 - v^2", uv)


def test_substitute_missing_entry():
    with pytest.raises(ValueError):
        substitute(P("x + y"), {"x": P("x")})


def test_substitute_composition_associativity():
    rng = random.Random(43)
    for _ in range(20):
        f = random_poly(rng, XY, max_deg=2, terms=3)
        g = {v: random_poly(rng, XY, max_deg=2, terms=2) for v in XY}
        h = {v: random_poly(rng, XY, max_deg=1, terms=2) for v in XY}
        lhs = substitute(substitute(f, g), h)
        gh = {v: substitute(g[v], h) for v in XY}
        rhs = substitute(f, gh)
        assert lhs == rhs
