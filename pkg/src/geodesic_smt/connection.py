"""Meromorphic connection on C^{k+1} induced by a basis S_0..S_k of degree-d forms.

The Christoffel symbols solve, for every mu, i, j,

    sum_lambda dS_mu/dX_lambda * Gamma^lambda_{ij} = d^2 S_mu / dX_i dX_j,

i.e. J Gamma_{.ij} = H_{.ij} with J the Jacobian.  We take the adjugate of J
once and read every Gamma^lambda_{ij} = (adj(J) H_{.ij})_lambda / det J off
it, which is Cramer's rule with the cofactors shared across all (i, j).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import linear
from .algebra.gaussian import GaussianRational
from .algebra.matrix import adjugate, determinant
from .algebra.polynomial import HomogeneousPolynomial, Polynomial
from .algebra.rational import HomRationalFunction, RationalFunction
from .errors import DegreeMismatch, NotDivisible, SamplingFailure, SingularSystem


def jacobian_matrix(S: Sequence[Polynomial]) -> list[list[Polynomial]]:
    """Entry (mu, lambda) is dS_mu/dX_lambda."""
    n = len(S)
    return [[S[mu].derivative(lam) for lam in range(n)] for mu in range(n)]


@dataclass(frozen=True)
class LinearSystemBasis:
    k: int
    d: int
    S: tuple
    jacobian: list = field(init=False, repr=False, compare=False)
    delta: Polynomial = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.k < 1 or self.d < 1:
            raise ValueError("need k >= 1 and d >= 1")
        S = tuple(self.S)
        if len(S) != self.k + 1:
            raise ValueError(f"need k+1 = {self.k + 1} polynomials, got {len(S)}")
        for mu, s in enumerate(S):
            if s.nvars != self.k + 1:
                raise ValueError(f"S_{mu} has {s.nvars} variables, expected {self.k + 1}")
            if s.is_zero() or not s.is_homogeneous() or s.degree != self.d:
                raise DegreeMismatch(f"S_{mu} is not homogeneous of degree {self.d}")
        object.__setattr__(self, "S", S)
        J = jacobian_matrix(S)
        delta = determinant(J)
        if delta.is_zero():
            raise SingularSystem("Jacobian determinant of the basis vanishes identically")
        object.__setattr__(self, "jacobian", J)
        object.__setattr__(self, "delta", delta)

    @property
    def nvars(self) -> int:
        return self.k + 1

    @classmethod
    def parse(cls, k: int, d: int, texts: Sequence[str]) -> "LinearSystemBasis":
        return cls(k, d, tuple(HomogeneousPolynomial.parse(t, k + 1, d) for t in texts))

    @classmethod
    def coordinates(cls, k: int) -> "LinearSystemBasis":
        return cls(k, 1, tuple(Polynomial.variable(k + 1, i) for i in range(k + 1)))

    @classmethod
    def fermat(cls, k: int, d: int) -> "LinearSystemBasis":
        return cls(k, d, tuple(Polynomial.variable(k + 1, i) ** d for i in range(k + 1)))

    def member(self, coeffs: Sequence) -> Polynomial:
        """sum_mu coeffs[mu] * S_mu."""
        if len(coeffs) != len(self.S):
            raise ValueError("need one coefficient per basis element")
        total = Polynomial.zero(self.nvars, self.d)
        for c, s in zip(coeffs, self.S):
            total = total + s * GaussianRational.coerce(c)
        return total

    def span_coefficients(self, sigma: Polynomial) -> list[GaussianRational] | None:
        """Coefficients a with sigma = sum a_mu S_mu, or None if sigma is not
        in the linear system."""
        if sigma.nvars != self.nvars:
            return None
        monos = sorted({e for s in (*self.S, sigma) for e in s.terms})
        A = [[s.coefficient(m) for s in self.S] for m in monos]
        b = [sigma.coefficient(m) for m in monos]
        return linear.solve(A, b)


@dataclass
class ChristoffelTensor:
    """gamma[lam][i][j] = Gamma^lam_{ij}; delta is the common denominator."""

    k: int
    d: int
    gamma: list
    delta: Polynomial

    def entry(self, lam: int, i: int, j: int) -> RationalFunction:
        return self.gamma[lam][i][j]

    def entries(self):
        n = self.k + 1
        for lam in range(n):
            for i in range(n):
                for j in range(n):
                    yield (lam, i, j), self.gamma[lam][i][j]

    def is_flat(self) -> bool:
        return all(g.is_zero() for _, g in self.entries())

    def is_symmetric(self) -> bool:
        n = self.k + 1
        return all(
            self.gamma[lam][i][j] == self.gamma[lam][j][i]
            for lam in range(n) for i in range(n) for j in range(i + 1, n)
        )

    def copy_with(self, lam: int, i: int, j: int, value: RationalFunction) -> "ChristoffelTensor":
        gamma = [[list(row) for row in plane] for plane in self.gamma]
        gamma[lam][i][j] = value
        return ChristoffelTensor(self.k, self.d, gamma, self.delta)


def hessians(S: Sequence[Polynomial]) -> list[list[list[Polynomial]]]:
    n = len(S)
    out = []
    for s in S:
        first = [s.derivative(i) for i in range(n)]
        out.append([[first[i].derivative(j) for j in range(n)] for i in range(n)])
    return out


def solve_christoffel(basis: LinearSystemBasis) -> ChristoffelTensor:
    n = basis.k + 1
    J = basis.jacobian
    delta = basis.delta
    adj = adjugate(J)
    H = hessians(basis.S)
    gamma = [[[None] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            for lam in range(n):
                num = Polynomial.zero(n)
                for mu in range(n):
                    if not adj[lam][mu].is_zero() and not H[mu][i][j].is_zero():
                        num = num + adj[lam][mu] * H[mu][i][j]
                g = HomRationalFunction(num, delta)
                gamma[lam][i][j] = g
                gamma[lam][j][i] = g
    return ChristoffelTensor(basis.k, basis.d, gamma, delta)


def defining_residuals(tensor: ChristoffelTensor, sigma: Polynomial) -> list[list[RationalFunction]]:
    """R_{ij} = sum_lam dsigma/dX_lam Gamma^lam_{ij} - d^2 sigma/dX_i dX_j."""
    n = tensor.k + 1
    grad = [sigma.derivative(lam) for lam in range(n)]
    hess = [[grad[i].derivative(j) for j in range(n)] for i in range(n)]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(_residual_entry(tensor, grad, hess[i][j], i, j))
        out.append(row)
    return out


def _residual_entry(tensor, grad, hess_ij, i, j) -> RationalFunction:
    n = tensor.k + 1
    delta = tensor.delta
    # fast path: every denominator divides delta, so delta * residual is a polynomial
    try:
        total = -(hess_ij * delta)
        for lam in range(n):
            g = tensor.gamma[lam][i][j]
            if g.is_zero() or grad[lam].is_zero():
                continue
            total = total + grad[lam] * g.num * delta.exquo(g.den)
        return RationalFunction(total, delta)
    except NotDivisible:
        pass
    acc = RationalFunction(-hess_ij)
    for lam in range(n):
        acc = acc + tensor.gamma[lam][i][j] * grad[lam]
    return acc


@dataclass
class GeodesicReport:
    holds: bool
    nonzero: list  # (i, j, residual string)


def verify_geodesic_identity(tensor: ChristoffelTensor, sigma: Polynomial) -> GeodesicReport:
    """Exact check that (sigma) satisfies the defining identity of the
    connection, i.e. is totally geodesic with a = b = c = 0."""
    if sigma.nvars != tensor.k + 1:
        raise DegreeMismatch(f"sigma has {sigma.nvars} variables, expected {tensor.k + 1}")
    if not sigma.is_homogeneous() or (not sigma.is_zero() and sigma.degree != tensor.d):
        raise DegreeMismatch(f"sigma must be homogeneous of degree {tensor.d}")
    res = defining_residuals(tensor, sigma)
    bad = []
    for i, row in enumerate(res):
        for j, r in enumerate(row):
            if not r.is_zero():
                bad.append((i, j, str(r)))
    return GeodesicReport(not bad, bad)


def check_homogeneity_degree(tensor: ChristoffelTensor) -> bool:
    return all(g.is_zero() or g.hom_degree == -1 for _, g in tensor.entries())


@dataclass
class EulerReport:
    holds: bool
    worst_residual: float
    worst_rank_ratio: float
    samples: int
    alpha_samples: list


def _numeric_gamma(tensor: ChristoffelTensor, pts: np.ndarray) -> np.ndarray:
    n = tensor.k + 1
    G = np.zeros((pts.shape[0], n, n, n), dtype=complex)
    for (lam, i, j), g in tensor.entries():
        if j < i or g.is_zero():
            continue
        vals = g.num.evaluate(pts) / g.den.evaluate(pts)
        G[:, lam, i, j] = vals
        G[:, lam, j, i] = vals
    return G


def check_euler_property(tensor: ChristoffelTensor, samples: int = 100, seed: int = 0,
                         tol: float = 1e-8, delta_floor: float = 1e-6) -> EulerReport:
    """Numeric test that Gamma(X, v) = alpha v + gamma(v) X and
    Gamma(w, X) = beta w + eta(w) X at random points of the unit polydisk.

    Per point and random v the 3-column matrix [w v X] must have rank <= 2;
    since for k = 1 that is automatic, the operator v -> Gamma(X, v) is also
    required to be a scalar modulo the line spanned by X (alpha independent
    of v, gamma linear).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    n = tensor.k + 1
    rng = np.random.default_rng(seed)
    pts = []
    attempts = 0
    while len(pts) < samples and attempts < 50 * samples:
        attempts += 1
        radius = np.sqrt(rng.uniform(0.0, 1.0, n))
        X = radius * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, n))
        if abs(tensor.delta.evaluate(X)) < delta_floor:
            continue
        pts.append(X)
    if not pts:
        raise SamplingFailure("every sampled point fell on the polar locus delta = 0")
    pts = np.array(pts)
    G = _numeric_gamma(tensor, pts)
    worst = 0.0
    worst_rank = 0.0
    alphas = []
    for s in range(pts.shape[0]):
        X = pts[s]
        A = np.einsum("lij,i->lj", G[s], X)  # v -> Gamma(X, v)
        B = np.einsum("lij,j->li", G[s], X)  # w -> Gamma(w, X)
        Q = np.eye(n) - np.outer(X, X.conj()) / np.vdot(X, X).real
        for op in (A, B):
            scale = np.linalg.norm(op)
            if scale == 0.0:
                alpha = 0.0
                rel = 0.0
            else:
                QA = Q @ op
                alpha = np.trace(QA) / (n - 1)
                rel = np.linalg.norm(QA - alpha * Q) / scale
            worst = max(worst, rel)
            alphas.append(complex(alpha))
            v = rng.normal(size=n) + 1j * rng.normal(size=n)
            w = op @ v
            sv = np.linalg.svd(np.column_stack([w, v, X]), compute_uv=False)
            ratio = 0.0 if len(sv) < 3 or sv[0] == 0 else sv[2] / sv[0]
            worst_rank = max(worst_rank, ratio)
    holds = worst <= tol and worst_rank <= tol
    return EulerReport(holds, float(worst), float(worst_rank), int(pts.shape[0]), alphas[:8])


@dataclass
class PolarLocus:
    delta: Polynomial
    degree: int
    bound: int


def polar_degree(tensor: ChristoffelTensor) -> PolarLocus:
    bound = (tensor.k + 1) * (tensor.d - 1)
    deg = tensor.delta.degree
    if deg > bound:
        raise AssertionError(f"deg delta = {deg} exceeds (k+1)(d-1) = {bound}")
    return PolarLocus(tensor.delta, deg, bound)


@dataclass
class ChartConnection:
    """Christoffel symbols on U_j = {X_j != 0} in affine coordinates
    w_i = X_i / X_j (i != j); gamma[a][b][c] uses affine positions."""

    chart: int
    k: int
    gamma: list
    indices: tuple  # affine position -> homogeneous index

    def entry(self, a: int, b: int, c: int) -> RationalFunction:
        return self.gamma[a][b][c]

    def is_flat(self) -> bool:
        return all(g.is_zero() for plane in self.gamma for row in plane for g in row)


def chart_restrict(tensor: ChristoffelTensor, j: int) -> ChartConnection:
    """Substitute X_j = 1 and drop every index equal to j."""
    if not 0 <= j <= tensor.k:
        raise IndexError(f"chart index {j} out of range 0..{tensor.k}")
    idx = tuple(i for i in range(tensor.k + 1) if i != j)
    gamma = [[[tensor.gamma[lam][i][m].dehomogenize(j) for m in idx] for i in idx] for lam in idx]
    return ChartConnection(j, tensor.k, gamma, idx)


def flat_chart(k: int, j: int = 0) -> ChartConnection:
    return chart_restrict(solve_christoffel(LinearSystemBasis.coordinates(k)), j)
