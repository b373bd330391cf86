import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import Z, random_gaussian, random_uni, to_sympy, uni_to_sympy, xsyms
from geodesic_smt.algebra import linear
from geodesic_smt.algebra.gaussian import GaussianRational, I
from geodesic_smt.algebra.matrix import adjugate, bareiss_determinant, cofactor_determinant, determinant
from geodesic_smt.algebra.polynomial import HomogeneousPolynomial, Polynomial
from geodesic_smt.algebra.rational import RationalFunction
from geodesic_smt.algebra.univariate import UniPolynomial, UniRational, gcd, radical, square_free
from geodesic_smt.errors import DegreeMismatch, NotDivisible, ParseError

small = st.integers(-6, 6)
gaussians = st.builds(lambda a, b, c: GaussianRational(a, b) / c, small, small, st.integers(1, 4))
exponents = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(exponents, gaussians, max_size=5).map(lambda t: Polynomial(3, t))


# -- Gaussian rationals ----------------------------------------------------
def test_gaussian_field_operations():
    a = GaussianRational(Fraction(1, 2), 3)
    assert a * a.inverse() == 1
    assert I * I == -1
    assert a.conjugate() == GaussianRational(Fraction(1, 2), -3)
    assert a.norm() == Fraction(1, 4) + 9
    assert complex(a) == complex(0.5, 3)


@pytest.mark.parametrize("text,value", [
    ("3/4", GaussianRational(Fraction(3, 4))),
    ("-i", GaussianRational(0, -1)),
    ("1/2+3*i", GaussianRational(Fraction(1, 2), 3)),
    ("2-i", GaussianRational(2, -1)),
])
def test_gaussian_parse_and_print(text, value):
    assert GaussianRational.parse(text) == value
    assert GaussianRational.parse(str(value)) == value


def test_gaussian_coerce_float_is_exact():
    assert GaussianRational.coerce(0.1) == GaussianRational(Fraction(1, 10))


@given(gaussians, gaussians, gaussians)
@settings(max_examples=100, deadline=None)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c
    if b:
        assert (a / b) * b == a


# -- multivariate polynomials ------------------------------------------------
def test_parse_print_roundtrip():
    p = Polynomial.parse("X0^2*X1 + (-1/2-3*i)*X0*X1^2 + 3")
    assert str(p) == "X0^2*X1 + (-1/2-3*i)*X0*X1^2 + 3"
    assert Polynomial.parse(str(p), 2) == p


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        Polynomial.parse("X0 + * X1")
    assert info.value.column == 6


def test_homogeneous_parse_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        HomogeneousPolynomial.parse("X0^2 + X1^2", 2, 3)
    with pytest.raises(ParseError):
        HomogeneousPolynomial.parse("X0^2 + X1", 2)


def test_evaluate_exact_and_numeric():
    p = Polynomial.parse("X0^2 + X1^2")
    assert p.evaluate_exact([I, 1]) == 0
    assert abs(p.evaluate([1j, 1])) < 1e-15


@given(polys, polys, polys)
@settings(max_examples=100, deadline=None)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Polynomial.zero(3)


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_multiplication_matches_sympy(p, q):
    X = xsyms(3)
    assert sp.expand(to_sympy(p * q, X) - to_sympy(p, X) * to_sympy(q, X)) == 0


@given(polys, st.integers(0, 2))
@settings(max_examples=60, deadline=None)
def test_derivative_matches_sympy(p, i):
    X = xsyms(3)
    assert sp.expand(to_sympy(p.derivative(i), X) - sp.diff(to_sympy(p, X), X[i])) == 0


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_exact_division(p, q):
    if q.is_zero():
        return
    assert (p * q).exquo(q) == p


def test_not_divisible():
    with pytest.raises(NotDivisible):
        Polynomial.parse("X0^2 + X1").exquo(Polynomial.parse("X0", 2))


def test_homogeneous_zero_keeps_degree():
    z = Polynomial.zero(3, 2)
    assert z.is_zero() and z.degree == 2
    assert Polynomial.zero(3).degree == -1


def test_dehomogenize_then_homogenize():
    p = Polynomial.parse("X0^3 + 2*X0*X1*X2 - X2^3", 3)
    assert p.dehomogenize(0).homogenize(0, 3) == p


# -- determinants -------------------------------------------------------------
def _random_poly_matrix(rng, n):
    return [[Polynomial.parse(f"{rng.randint(-3, 3)}*X0 + {rng.randint(-3, 3)}*X1^2 + {rng.randint(-2, 2)}", 2)
             for _ in range(n)] for _ in range(n)]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_determinant_methods_agree_with_sympy(n):
    rng = random.Random(n)
    M = _random_poly_matrix(rng, n)
    X = xsyms(2)
    oracle = sp.expand(sp.Matrix([[to_sympy(e, X) for e in row] for row in M]).det())
    for method in ("cofactor", "bareiss"):
        assert sp.expand(to_sympy(determinant(M, method), X) - oracle) == 0


@given(st.lists(st.lists(gaussians, min_size=3, max_size=3), min_size=3, max_size=3),
       gaussians, st.integers(0, 2), st.integers(0, 2))
@settings(max_examples=60, deadline=None)
def test_determinant_invariant_under_row_addition(M, c, i, j):
    if i == j:
        return
    N = [list(row) for row in M]
    N[i] = [a + c * b for a, b in zip(N[i], N[j])]
    assert bareiss_determinant(N) == bareiss_determinant(M) == cofactor_determinant(M)
    swapped = [list(row) for row in M]
    swapped[i], swapped[j] = swapped[j], swapped[i]
    assert bareiss_determinant(swapped) == -bareiss_determinant(M)


def test_adjugate_identity():
    rng = random.Random(7)
    M = [[random_gaussian(rng) for _ in range(3)] for _ in range(3)]
    A = adjugate(M)
    det = determinant(M)
    for i in range(3):
        for j in range(3):
            assert sum((M[i][m] * A[m][j] for m in range(3)), GaussianRational(0)) == (det if i == j else 0)


def test_linear_solve_and_rank():
    A = [[1, 2], [2, 4]]
    assert linear.rank(A) == 1
    assert linear.solve(A, [1, 3]) is None
    x = linear.solve([[1, 1], [1, -1]], [3, 1])
    assert x == [2, 1]


# -- univariate ----------------------------------------------------------------
def test_square_free_and_gcd():
    z = UniPolynomial.z()
    p = (z - 1) ** 2 * (z + 2)
    assert square_free(p) == [(z + 2, 1), (z - 1, 2)]
    assert gcd(z ** 2 - 1, z - 1) == z - 1
    assert radical(p) == (z - 1) * (z + 2)


@pytest.mark.parametrize("seed", range(10))
def test_square_free_matches_sympy(seed):
    rng = random.Random(seed)
    p = UniPolynomial.constant(1)
    for _ in range(3):
        p = p * random_uni(rng, rng.randint(1, 2)) ** rng.randint(1, 3)
    ours = sorted((m, str(uni_to_sympy(f).expand())) for f, m in square_free(p))
    _, factors = sp.sqf_list(uni_to_sympy(p), Z)
    theirs = sorted((m, str(sp.Poly(f, Z).monic().as_expr().expand())) for f, m in factors)
    assert [m for m, _ in ours] == [m for m, _ in theirs]
    for (_, a), (_, b) in zip(ours, theirs):
        assert sp.expand(sp.sympify(a) - sp.sympify(b)) == 0


def test_order_at_exact():
    z = UniPolynomial.z()
    assert (z ** 3 * (z - 1)).order_at(0) == 3
    assert ((z - I) ** 2).order_at(I) == 2


def test_univariate_parse_print():
    p = UniPolynomial.parse("2 - 3*z + z^3")
    assert str(p) == "2 - 3*z + z^3"


def test_roots_multiplicity_free():
    z = UniPolynomial.z()
    roots = sorted(((z - 2) * (z + 1)).roots(), key=lambda c: c.real)
    assert abs(roots[0] + 1) < 1e-12 and abs(roots[1] - 2) < 1e-12


def test_unirational_cancels():
    z = UniPolynomial.z()
    r = UniRational(z ** 2 - 1, z - 1)
    assert r.den == UniPolynomial.constant(1) and r.num == z + 1


def test_rational_function_homogeneity_and_derivative():
    r = RationalFunction(Polynomial.parse("X1", 2), Polynomial.parse("X0^2", 2))
    assert r.hom_degree == -1
    X = xsyms(2)
    d = r.derivative(0)
    assert sp.simplify(to_sympy(d.num, X) / to_sympy(d.den, X) - sp.diff(X[1] / X[0] ** 2, X[0])) == 0
