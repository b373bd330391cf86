"""Shared helpers: sympy conversions and random fixtures."""

import random

import sympy as sp

from geodesic_smt.algebra.gaussian import GaussianRational
from geodesic_smt.algebra.polynomial import Polynomial
from geodesic_smt.algebra.univariate import UniPolynomial
from geodesic_smt.connection import LinearSystemBasis

Z = sp.Symbol("z")


def xsyms(n):
    return sp.symbols(f"X0:{n}")


def to_sympy_scalar(c: GaussianRational):
    return sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(c.im.numerator, c.im.denominator)


def to_sympy(p: Polynomial, syms=None):
    syms = syms or xsyms(p.nvars)
    return sp.Add(*[to_sympy_scalar(c) * sp.Mul(*[s ** e for s, e in zip(syms, exps)])
                    for exps, c in p.terms.items()])


def uni_to_sympy(p: UniPolynomial):
    return sp.Add(*[to_sympy_scalar(c) * Z ** n for n, c in enumerate(p.coeffs)])


def random_gaussian(rng: random.Random, size: int = 5) -> GaussianRational:
    return GaussianRational(rng.randint(-size, size), rng.randint(-size, size)) / rng.randint(1, 3)


def random_uni(rng: random.Random, degree: int) -> UniPolynomial:
    return UniPolynomial([rng.randint(-4, 4) for _ in range(degree)] + [rng.choice([-2, -1, 1, 2, 3])])


def perturbed_basis(k: int, d: int, seed: int) -> LinearSystemBasis:
    """Fermat basis plus a few random integer monomials of degree d."""
    rng = random.Random(seed)
    n = k + 1
    S = []
    for mu in range(n):
        p = Polynomial.variable(n, mu) ** d
        for _ in range(2):
            e = [0] * n
            for _ in range(d):
                e[rng.randrange(n)] += 1
            p = p + Polynomial.monomial(tuple(e), rng.randint(1, 3))
        S.append(p)
    return LinearSystemBasis(k, d, tuple(S))


def admissible_bases():
    """Flat, Fermat and perturbed bases used across several tests."""
    out = [LinearSystemBasis.coordinates(k) for k in (1, 2, 3)]
    out += [LinearSystemBasis.fermat(k, d) for k in (1, 2, 3) for d in (2, 3)]
    for seed, (k, d) in enumerate([(1, 2), (2, 2), (2, 3), (3, 2), (1, 3)]):
        out.append(perturbed_basis(k, d, seed + 1))
    out.append(LinearSystemBasis.parse(1, 2, ["X0^2", "X0*X1"]))
    out.append(LinearSystemBasis.parse(2, 2, ["X0^2", "X0*X1", "X1^2 + X0*X2"]))
    return out


def classical_wronskian(curve, chart: int = 0):
    """det of the k x k matrix of derivatives w_i^(m), m = 1..k, of the affine
    coordinates w_i = f_i / f_chart (sympy)."""
    comps = [uni_to_sympy(c) for c in curve.components]
    w = [c / comps[chart] for i, c in enumerate(comps) if i != chart]
    k = len(w)
    return sp.Matrix([[sp.diff(wi, Z, m) for wi in w] for m in range(1, k + 1)]).det()


# -- acceptance summary ---------------------------------------------------------
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
