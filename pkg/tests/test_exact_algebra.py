"""Exact scalar and homogeneous-polynomial layer."""

import math
import random
from fractions import Fraction

import pytest

from smtlab.scalars import GaussianRational, parse_gaussian
from smtlab.exact_algebra import (
    ExactEchelon,
    HomogPoly,
    Monomial,
    WeightVector,
    grevlex_key,
    monomial_count,
    monomials_of_degree,
    parse_homog_poly,
    poly_eval,
    rank_of_vectors,
    substitute_linear,
)

GR = GaussianRational


def rand_gauss(rng, span=6):
    return GR(Fraction(rng.randint(-span, span), rng.randint(1, 4)),
              Fraction(rng.randint(-span, span), rng.randint(1, 4)))


def rand_poly(rng, num_vars, degree):
    monos = monomials_of_degree(num_vars, degree)
    terms = {m: rand_gauss(rng) for m in monos if rng.random() < 0.6}
    return HomogPoly(num_vars, degree, terms)


# -- scalars ----------------------------------------------------------------

def test_gaussian_division_frozen():
    # (1+2i)/(3-i) = (1+7i)/10, worked by hand
    q = GR(1, 2) / GR(3, -1)
    assert q == GR(Fraction(1, 10), Fraction(7, 10))


def test_gaussian_negative_power():
    # (1+i)^-2 = 1/(2i) = -i/2
    assert GR(1, 1) ** -2 == GR(0, Fraction(-1, 2))


def test_gaussian_field_axioms_random():
    rng = random.Random(7)
    for _ in range(50):
        a, b, c = (rand_gauss(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        if not b.is_zero():
            assert (a / b) * b == a


def test_gaussian_immutable():
    a = GR(1, 2)
    with pytest.raises(AttributeError):
        a.re = Fraction(5)


@pytest.mark.parametrize("text,expected", [
    ("3/2", GR(Fraction(3, 2))),
    ("-i", GR(0, -1)),
    ("i", GR(0, 1)),
    ("3i", GR(0, 3)),
    ("1/2+3i", GR(Fraction(1, 2), 3)),
    ("2-i", GR(2, -1)),
    ("-1/3+2i", GR(Fraction(-1, 3), 2)),
])
def test_parse_gaussian(text, expected):
    assert parse_gaussian(text) == expected


@pytest.mark.parametrize("bad", ["", "2+", "i+i", "1+2", "foo"])
def test_parse_gaussian_rejects(bad):
    with pytest.raises(ValueError):
        parse_gaussian(bad)


# -- monomials ---------------------------------------------------------------

def test_monomials_of_degree_two_vars():
    got = monomials_of_degree(2, 2)
    assert got == [Monomial((2, 0)), Monomial((1, 1)), Monomial((0, 2))]


def test_monomials_count_matches_binomial():
    # count C(num_vars-1+u, u); the (4,5) case is C(8,5) = 56
    assert len(monomials_of_degree(4, 5)) == math.comb(8, 5) == 56
    for v in range(1, 6):
        for u in range(0, 7):
            monos = monomials_of_degree(v, u)
            assert len(monos) == monomial_count(v, u)
            assert len(set(monos)) == len(monos)
            assert all(m.degree == u for m in monos)


def test_grevlex_order_three_vars_frozen():
    # standard grevlex listing of the degree-2 monomials in 3 variables
    expected = [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
    got = [tuple(m) for m in monomials_of_degree(3, 2)]
    assert got == expected


def test_grevlex_key_is_total_order():
    monos = monomials_of_degree(3, 4)
    keys = [grevlex_key(m) for m in monos]
    assert len(set(keys)) == len(keys)
    assert keys == sorted(keys, reverse=True)


# -- homogeneous polynomials ---------------------------------------------------

def test_parse_homog_poly_frozen():
    p = parse_homog_poly("3/2*x0^2*x1 - i*x2^3", 3)
    assert p.degree == 3
    assert p.terms == {
        Monomial((2, 1, 0)): GR(Fraction(3, 2)),
        Monomial((0, 0, 3)): GR(0, -1),
    }


def test_parse_homog_poly_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        parse_homog_poly("x0^2 + x1", 2)


def test_parse_homog_poly_gaussian_factor():
    p = parse_homog_poly("(1+2i)*x0*x1", 2)
    assert p.terms == {Monomial((1, 1)): GR(1, 2)}


def test_parse_roundtrip_random():
    rng = random.Random(11)
    for _ in range(20):
        p = rand_poly(rng, 3, rng.randint(1, 3))
        if p.is_zero():
            continue
        q = parse_homog_poly(str(p).replace(" ", ""), 3)
        assert q == p


def test_poly_eval_exact_frozen():
    # (1+i)^2 + 2^2 = 4+2i
    p = parse_homog_poly("x0^2 + x1^2", 2)
    value = poly_eval(p, [GR(1, 1), GR(2)])
    assert value == GR(4, 2)


def test_poly_eval_float_path():
    p = parse_homog_poly("x0^2 + x1^2", 2)
    value = poly_eval(p, [1 + 1j, 2.0])
    assert isinstance(value, complex)
    assert abs(value - (4 + 2j)) < 1e-12


def test_poly_eval_matches_exact_on_rational_points():
    rng = random.Random(13)
    for _ in range(10):
        p = rand_poly(rng, 3, 2)
        pt = [rand_gauss(rng) for _ in range(3)]
        exact = poly_eval(p, pt)
        approx = poly_eval(p, [z.to_complex() for z in pt])
        assert abs(exact.to_complex() - approx) < 1e-9


def test_ring_axioms_random():
    rng = random.Random(3)
    for _ in range(30):
        a = rand_poly(rng, 3, 2)
        b = rand_poly(rng, 3, 2)
        c = rand_poly(rng, 3, 2)
        assert (a + b) + c == a + (b + c)
        d = rand_poly(rng, 3, 1)
        assert d * (a + b) == d * a + d * b
        assert a * b == b * a
        assert (a * b) * d == a * (b * d)


def test_add_degree_mismatch_raises():
    a = parse_homog_poly("x0", 2)
    b = parse_homog_poly("x0^2", 2)
    with pytest.raises(ValueError):
        a + b


def test_pow_matches_repeated_mul():
    p = parse_homog_poly("x0 + 2*x1", 2)
    assert p ** 3 == p * p * p
    one = p ** 0
    assert one.degree == 0 and not one.is_zero()


def test_substitute_linear_frozen():
    p = parse_homog_poly("x0^2 + x1^2", 2)
    swapped = substitute_linear(p, [[0, 1], [1, 0]])
    assert swapped == p
    sheared = substitute_linear(p, [[1, 1], [0, 1]])
    assert sheared == parse_homog_poly("x0^2 + 2*x0*x1 + 2*x1^2", 2)


def test_leading_monomial_grevlex():
    p = parse_homog_poly("x1^2 + x0*x2", 3)
    # grevlex: x1^2 > x0*x2
    assert p.leading_monomial() == Monomial((0, 2, 0))


# -- weight vectors -----------------------------------------------------------

def test_weight_vector_basics():
    c = WeightVector([1, Fraction(1, 2), 0])
    assert c.dot((2, 1, 0)) == Fraction(5, 2)
    assert c.total() == Fraction(3, 2)
    assert c.max_entry() == 1
    with pytest.raises(ValueError):
        WeightVector([1, -1])


# -- exact elimination ----------------------------------------------------------

def test_echelon_rank_against_sympy():
    sympy = pytest.importorskip("sympy")
    rng = random.Random(5)
    for _ in range(8):
        rows, cols = rng.randint(2, 5), rng.randint(2, 7)
        data = [[complex(rng.randint(-3, 3), rng.randint(-3, 3))
                 for _ in range(cols)] for _ in range(rows)]
        vecs = []
        for row in data:
            vec = {j: GR(int(z.real), int(z.imag))
                   for j, z in enumerate(row) if z != 0}
            vecs.append(vec)
        got = rank_of_vectors(vecs, keyfunc=lambda k: k)
        mat = sympy.Matrix([[sympy.Integer(int(z.real)) + sympy.I * int(z.imag)
                             for z in row] for row in data])
        assert got == mat.rank()


def test_echelon_reduce_membership():
    ech = ExactEchelon(keyfunc=lambda k: k)
    ech.insert({0: GR(1), 1: GR(2)})
    ech.insert({1: GR(1), 2: GR(1)})
    # (1,2,0) + (0,1,1) = (1,3,1) lies in the span
    assert ech.reduce({0: GR(1), 1: GR(3), 2: GR(1)}) == {}
    assert ech.reduce({2: GR(1)}) != {}
