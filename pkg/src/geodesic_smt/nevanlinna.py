"""Characteristic, proximity and counting functions of polynomial curves.

Circle averages use the uniform trapezoid rule with node doubling; counting
functions use exact multiplicities from square-free factorization over Q(i)
and double-precision root locations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .algebra.polynomial import Polynomial
from .algebra.univariate import UniPolynomial, radical, square_free
from .curve import ProjectiveCurve, pullback
from .errors import MissingGrowthIndex, NearSingularRadius, QuadratureFailure, ZeroPullback

QUAD_TOL = 1e-9
QUAD_START = 64
QUAD_BUDGET = 2 ** 20
ROOT_TOL = 1e-6
NUDGE = 1e-4


def periodic_mean(func: Callable[[np.ndarray], np.ndarray], tol: float = QUAD_TOL,
                  start: int = QUAD_START, budget: int = QUAD_BUDGET) -> float:
    """(1/2pi) * integral of a 2pi-periodic function by trapezoid doubling.

    Stops when two successive estimates differ by less than ``tol``.
    """
    n = start
    theta = 2.0 * np.pi * np.arange(n) / n
    estimate = float(np.mean(func(theta)))
    while True:
        if 2 * n > budget:
            raise QuadratureFailure(f"no convergence to {tol:g} within {budget} nodes")
        mid = 2.0 * np.pi * (np.arange(n) + 0.5) / n
        refined = 0.5 * (estimate + float(np.mean(func(mid))))
        n *= 2
        if abs(refined - estimate) < tol:
            return refined
        estimate = refined


# -- divisors -------------------------------------------------------------
@dataclass
class DivisorOnDisk:
    """Zeros of a polynomial: exact multiplicity at 0 plus numeric nonzero roots."""

    points: list  # (location: complex, multiplicity: int)
    zero_multiplicity: int = 0

    @classmethod
    def of(cls, p: UniPolynomial) -> "DivisorOnDisk":
        if p.is_zero():
            raise ZeroPullback("pullback vanishes identically")
        m0 = p.order_at(0)
        q = p
        if m0:
            q = UniPolynomial._raw(list(p.coeffs[m0:]))
        points = []
        if m0:
            points.append((0j, m0))
        for factor, mult in square_free(q):
            for a in factor.roots():
                points.append((complex(a), mult))
        return cls(points, m0)

    def moduli(self) -> list[float]:
        return [abs(a) for a, _ in self.points if a != 0]

    def counting(self, r: float, truncation: int | None = None) -> float:
        """N(r) = sum_{0<|a|<r} m log(r/|a|) + m_0 log r (m truncated at k)."""
        if r <= 0:
            raise ValueError("radius must be positive")
        total = 0.0
        logr = math.log(r)
        for a, m in self.points:
            mm = m if truncation is None else min(m, truncation)
            if a == 0:
                total += mm * logr
            elif abs(a) < r:
                total += mm * (logr - math.log(abs(a)))
        return total

    def n(self, t: float, truncation: int | None = None) -> int:
        """Number of zeros in |z| < t (the unintegrated counting function)."""
        return sum(m if truncation is None else min(m, truncation)
                   for a, m in self.points if abs(a) < t)


def counting_function(pull: UniPolynomial, r: float, truncation: int | None = None) -> float:
    return DivisorOnDisk.of(pull).counting(r, truncation)


# -- radius grids ---------------------------------------------------------
@dataclass
class RadiusGrid:
    radii: list
    R: float = math.inf

    def __post_init__(self):
        radii = [float(r) for r in self.radii]
        if not radii or radii[0] <= 0 or any(b <= a for a, b in zip(radii, radii[1:])):
            raise ValueError("radii must be positive and strictly increasing")
        if radii[-1] >= self.R:
            raise ValueError("radii must lie inside the disk")
        self.radii = radii

    @classmethod
    def spaced(cls, r_min: float, r_max: float, count: int, spacing: str = "log",
               R: float = math.inf) -> "RadiusGrid":
        if spacing == "log":
            radii = np.geomspace(r_min, r_max, count)
        elif spacing == "linear":
            radii = np.linspace(r_min, r_max, count)
        else:
            raise ValueError(f"unknown spacing {spacing!r}")
        return cls(radii.tolist(), R)

    @property
    def anchor(self) -> float:
        return self.radii[0] / 2.0

    def screened(self, moduli: Sequence[float], tol: float = ROOT_TOL, nudge: float = NUDGE) -> "RadiusGrid":
        """Move every radius within ``tol`` of a root modulus outward by ``nudge``."""
        out = []
        for r in self.radii:
            for _ in range(1000):
                if all(abs(r - m) >= tol for m in moduli):
                    break
                r += nudge
            out.append(r)
        return RadiusGrid(out, self.R)


# -- circle averages ------------------------------------------------------
def mean_log_norm(curve: ProjectiveCurve, r: float, tol: float = QUAD_TOL) -> float:
    """(1/2pi) int log max_i |f_i(r e^{it})| dt."""
    coeffs = [c.numeric_coeffs()[::-1] for c in curve.components if not c.is_zero()]

    def integrand(theta):
        z = r * np.exp(1j * theta)
        with np.errstate(divide="ignore"):
            logs = np.array([np.log(np.abs(np.polyval(c, z))) for c in coeffs])
        return logs.max(axis=0)

    return periodic_mean(integrand, tol)


def cartan_characteristic(curve: ProjectiveCurve, r: float, anchor: float, tol: float = QUAD_TOL) -> float:
    """Max-norm characteristic normalized so that T(anchor) = 0."""
    return mean_log_norm(curve, r, tol) - mean_log_norm(curve, anchor, tol)


def _check_circle(div: DivisorOnDisk, r: float, tol: float = ROOT_TOL):
    for a, _ in div.points:
        if abs(abs(a) - r) < tol:
            raise NearSingularRadius(f"zero at {a:.6g} lies within {tol:g} of |z| = {r:g}")


def proximity(curve: ProjectiveCurve, sigma: Polynomial, r: float, tol: float = QUAD_TOL,
              pull: UniPolynomial | None = None) -> float:
    """(1/2pi) int log(||f||^d / |sigma(f)|) over |z| = r."""
    if pull is None:
        pull = pullback(curve, sigma)
    div = DivisorOnDisk.of(pull)
    _check_circle(div, r)
    d = sigma.degree
    comps = [c.numeric_coeffs()[::-1] for c in curve.components if not c.is_zero()]
    sc = pull.numeric_coeffs()[::-1]

    def integrand(theta):
        z = r * np.exp(1j * theta)
        lognorm = np.max([np.log(np.abs(np.polyval(c, z))) for c in comps], axis=0)
        return d * lognorm - np.log(np.abs(np.polyval(sc, z)))

    return periodic_mean(integrand, tol)


def fmt_residual(curve: ProjectiveCurve, sigma: Polynomial, grid: RadiusGrid,
                 tol: float = QUAD_TOL) -> list[float]:
    """d T_f(r) - m_f(r, sigma) - N(r, f*sigma) on the grid (should be flat)."""
    pull = pullback(curve, sigma)
    div = DivisorOnDisk.of(pull)
    grid = grid.screened(div.moduli())
    anchor = grid.anchor
    base = mean_log_norm(curve, anchor, tol)
    d = sigma.degree
    out = []
    for r in grid.radii:
        T = mean_log_norm(curve, r, tol) - base
        m = proximity(curve, sigma, r, tol, pull)
        out.append(d * T - m - div.counting(r))
    return out


# -- sharing sets ---------------------------------------------------------
@dataclass
class SharingSet:
    divisor: DivisorOnDisk
    radical: UniPolynomial  # monic, square-free, vanishing exactly on S

    def counting(self, r: float) -> float:
        return self.divisor.counting(r)

    def points(self) -> list[complex]:
        return [a for a, _ in self.divisor.points]


def sharing_set(f: ProjectiveCurve, g: ProjectiveCurve, sigmas: Sequence[Polynomial]) -> SharingSet:
    """S = union of zeros of sigma_j(f) and sigma_j(g), multiplicities dropped."""
    product = UniPolynomial.constant(1)
    for s in sigmas:
        for curve in (f, g):
            p = pullback(curve, s)
            if p.is_zero():
                raise ZeroPullback(f"{s} vanishes identically on a curve")
            product = product * radical(p) if p.degree > 0 else product
    rad = radical(product) if product.degree > 0 else UniPolynomial.constant(1)
    div = DivisorOnDisk.of(rad)
    return SharingSet(div, rad)


# -- growth index ---------------------------------------------------------
@dataclass(frozen=True)
class GrowthIndex:
    value: float
    by_theorem: bool = False  # True when forced to 0 by R = infinity


def growth_index(R: float = math.inf, user_value: float | None = None) -> GrowthIndex:
    if math.isinf(R):
        return GrowthIndex(0.0, True)
    if user_value is None:
        raise MissingGrowthIndex("a finite disk needs a user-supplied growth index")
    if user_value < 0:
        raise ValueError("growth index must be nonnegative")
    return GrowthIndex(float(user_value))


# -- per-radius tables ----------------------------------------------------
@dataclass
class NevanlinnaValues:
    radii: list
    anchor: float
    T: list
    m: list = field(default_factory=list)  # m[j][r]
    N: list = field(default_factory=list)
    Nk: list = field(default_factory=list)
    residual: list = field(default_factory=list)
    truncation: int | None = None


def evaluate_table(curve: ProjectiveCurve, sigmas: Sequence[Polynomial], grid: RadiusGrid,
                   truncation: int | None = None, tol: float = QUAD_TOL,
                   anchor: float | None = None) -> NevanlinnaValues:
    pulls = [pullback(curve, s) for s in sigmas]
    divs = [DivisorOnDisk.of(p) for p in pulls]
    moduli = [m for d in divs for m in d.moduli()]
    grid = grid.screened(moduli)
    if anchor is None:
        anchor = grid.anchor
    base = mean_log_norm(curve, anchor, tol)
    k = truncation if truncation is not None else curve.k
    vals = NevanlinnaValues(grid.radii, anchor, [], truncation=k)
    for r in grid.radii:
        vals.T.append(mean_log_norm(curve, r, tol) - base)
    for s, p, div in zip(sigmas, pulls, divs):
        d = s.degree
        mj, Nj, Nkj, rj = [], [], [], []
        for r, T in zip(grid.radii, vals.T):
            m = proximity(curve, s, r, tol, p)
            N = div.counting(r)
            mj.append(m)
            Nj.append(N)
            Nkj.append(div.counting(r, k))
            rj.append(d * T - m - N)
        vals.m.append(mj)
        vals.N.append(Nj)
        vals.Nk.append(Nkj)
        vals.residual.append(rj)
    return vals


def min_inequality(a: int, b: int, k: int) -> bool:
    """min{a, b} >= min{a, k} + min{b, k} - k."""
    return min(a, b) >= min(a, k) + min(b, k) - k
