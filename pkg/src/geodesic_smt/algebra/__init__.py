from .gaussian import GaussianRational
from .matrix import adjugate, bareiss_determinant, cofactor_determinant, determinant
from .polynomial import HomogeneousPolynomial, Polynomial
from .rational import HomRationalFunction, RationalFunction
from .univariate import UniPolynomial, UniRational, gcd, gcd_many, radical, square_free


def partial_derivative(P: Polynomial, i: int) -> Polynomial:
    return P.derivative(i)


def evaluate(P: Polynomial, point):
    return P.evaluate(point)


__all__ = [
    "GaussianRational",
    "HomogeneousPolynomial",
    "HomRationalFunction",
    "Polynomial",
    "RationalFunction",
    "UniPolynomial",
    "UniRational",
    "adjugate",
    "bareiss_determinant",
    "cofactor_determinant",
    "determinant",
    "evaluate",
    "gcd",
    "gcd_many",
    "partial_derivative",
    "radical",
    "square_free",
]
