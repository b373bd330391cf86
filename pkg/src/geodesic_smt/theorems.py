"""Desk-scale verification of the Second Main Theorem and uniqueness bounds."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

import numpy as np

from .algebra import linear
from .algebra.gaussian import GaussianRational
from .algebra.polynomial import Polynomial
from .algebra.univariate import UniPolynomial, gcd, gcd_many
from .connection import LinearSystemBasis, chart_restrict, solve_christoffel
from .curve import ProjectiveCurve, connection_wronskian, cross_products, pullback
from .errors import (
    CurvesIdentical,
    DegenerateCurve,
    NotInLinearSystem,
    SharingViolated,
    ZeroPullback,
)
from .nevanlinna import (
    QUAD_TOL,
    DivisorOnDisk,
    GrowthIndex,
    RadiusGrid,
    growth_index,
    mean_log_norm,
    sharing_set,
)

DEFAULT_EPSILON = 0.1
ASYMPTOTIC_FLOOR = -0.05
BURN_IN = 2.0


def _exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def log_plus(x: float) -> float:
    return math.log(x) if x > 1.0 else 0.0


# -- SMT ------------------------------------------------------------------
def smt_coefficient(k: int, d: int, q: int) -> Fraction:
    """q - (k+1)/d - (k-1)k(k+1)(d-1)/(2d)."""
    if k < 1 or d < 1 or q < 1:
        raise ValueError("need k, d, q >= 1")
    return Fraction(q) - Fraction(k + 1, d) - Fraction((k - 1) * k * (k + 1) * (d - 1), 2 * d)


def smt_error_term_principal(k: int, epsilon: float, c: float, T: float, r: float,
                             charts: int | None = None, log_constant: float = 0.0) -> float:
    """charts * k^2 (k+1)/2 * (1+eps)(c+eps) T  +  C (log+ T + log+ r).

    With the default ``charts = k+1`` the first term is k^2(k+1)^2/2 (1+eps)(c+eps) T.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if c < 0 or T < 0:
        raise ValueError("need c >= 0 and T >= 0")
    if charts is None:
        charts = k + 1
    principal = charts * k * k * (k + 1) / 2.0 * (1.0 + epsilon) * (c + epsilon) * T
    return principal + log_constant * (log_plus(T) + log_plus(r))


def general_position_hyperplanes(sigmas: Sequence[Polynomial], k: int) -> bool:
    """Every k+1 of the linear forms have a full-rank coefficient matrix."""
    rows = []
    for s in sigmas:
        if s.degree != 1 or not s.is_homogeneous():
            raise ValueError("general position by rank applies to linear forms only")
        row = [GaussianRational(0)] * (k + 1)
        for e, c in s.terms.items():
            row[e.index(1)] = c
        rows.append(row)
    if len(rows) < k + 1:
        return linear.rank(rows) == len(rows)
    return all(linear.rank(sub) == k + 1 for sub in itertools.combinations(rows, k + 1))


def linearly_nondegenerate(basis: LinearSystemBasis, curve: ProjectiveCurve) -> bool:
    """No nonzero member of span{S_mu} vanishes identically on the curve."""
    pulls = [pullback(curve, s) for s in basis.S]
    width = max(p.degree for p in pulls) + 1
    rows = [[p[n] for n in range(width)] for p in pulls]
    return linear.rank(rows) == len(pulls)


def snc_spot_check(sigmas: Sequence[Polynomial], k: int, seed: int = 0, tol: float = 1e-6,
                   tries: int = 3) -> list[str]:
    """Numeric smoothness / transversality spot checks; returns warnings."""
    out = []
    if k == 1:
        for a, s in enumerate(sigmas):
            if _binary_form_repeated_root(s):
                out.append(f"sigma_{a + 1} has a repeated point (not smooth)")
        for a, b in itertools.combinations(range(len(sigmas)), 2):
            if _binary_forms_share_root(sigmas[a], sigmas[b]):
                out.append(f"sigma_{a + 1} and sigma_{b + 1} meet (not normal crossing)")
        return out
    rng = np.random.default_rng(seed)
    n = k + 1
    for a, s in enumerate(sigmas):
        for _ in range(tries):
            P = rng.normal(size=n) + 1j * rng.normal(size=n)
            Q = rng.normal(size=n) + 1j * rng.normal(size=n)
            for x in _line_points(s, P, Q):
                g = np.array([s.derivative(i).evaluate(x) for i in range(n)])
                if np.linalg.norm(g) < tol * max(1.0, np.linalg.norm(x)) ** (s.degree - 1):
                    out.append(f"sigma_{a + 1} looks singular near {np.round(x, 6).tolist()}")
                    break
    for a, b in itertools.combinations(range(len(sigmas)), 2):
        for _ in range(tries):
            x = _intersection_point(sigmas[a], sigmas[b], rng, n)
            if x is None:
                continue
            ga = np.array([sigmas[a].derivative(i).evaluate(x) for i in range(n)])
            gb = np.array([sigmas[b].derivative(i).evaluate(x) for i in range(n)])
            sv = np.linalg.svd(np.vstack([ga, gb]), compute_uv=False)
            if sv[0] == 0 or sv[1] / sv[0] < tol:
                out.append(f"sigma_{a + 1} and sigma_{b + 1} are tangent near {np.round(x, 6).tolist()}")
                break
    return out


def _binary_dehomogenized(s: Polynomial) -> tuple[UniPolynomial, int]:
    """Return (s(1, t), multiplicity of the point [0:1])."""
    d = s.degree
    coeffs = [s.coefficient((d - j, j)) for j in range(d + 1)]
    p = UniPolynomial(coeffs)
    return p, d - p.degree


def _binary_form_repeated_root(s: Polynomial) -> bool:
    p, at_inf = _binary_dehomogenized(s)
    if at_inf > 1:
        return True
    return p.degree > 0 and gcd(p, p.derivative()).degree > 0


def _binary_forms_share_root(s: Polynomial, t: Polynomial) -> bool:
    p, pi = _binary_dehomogenized(s)
    q, qi = _binary_dehomogenized(t)
    if pi and qi:
        return True
    if p.degree <= 0 or q.degree <= 0:
        return False
    return gcd(p, q).degree > 0


def _line_points(s: Polynomial, P: np.ndarray, Q: np.ndarray) -> list[np.ndarray]:
    d = s.degree
    ts = np.exp(2j * np.pi * np.arange(d + 1) / (d + 1))
    vals = np.array([s.evaluate(P + t * Q) for t in ts])
    coeffs = np.fft.fft(vals) / (d + 1)  # interpolation on roots of unity, ascending powers
    roots = np.roots(coeffs[::-1]) if d >= 1 else []
    return [P + t * Q for t in roots]


def _intersection_point(s: Polynomial, t: Polynomial, rng, n: int, iters: int = 60):
    x = rng.normal(size=n) + 1j * rng.normal(size=n)
    ell = rng.normal(size=n) + 1j * rng.normal(size=n)
    grads_s = [s.derivative(i) for i in range(n)]
    grads_t = [t.derivative(i) for i in range(n)]
    for _ in range(iters):
        F = np.array([s.evaluate(x), t.evaluate(x), ell @ x - 1.0])
        if np.linalg.norm(F) < 1e-13:
            return x
        Jm = np.vstack([[g.evaluate(x) for g in grads_s], [g.evaluate(x) for g in grads_t], ell])
        step, *_ = np.linalg.lstsq(Jm, -F, rcond=None)
        x = x + step
    F = np.array([s.evaluate(x), t.evaluate(x)])
    return x if np.linalg.norm(F) < 1e-10 else None


@dataclass
class SMTConfig:
    basis: LinearSystemBasis
    sigmas: list
    curve: ProjectiveCurve
    grid: RadiusGrid
    epsilon: float = DEFAULT_EPSILON
    growth: GrowthIndex = field(default_factory=growth_index)
    quad_tol: float = QUAD_TOL
    log_constant: float = 0.0
    chart: int | None = None
    seed: int = 0


@dataclass
class SMTReport:
    k: int
    d: int
    q: int
    coefficient: Fraction
    radii: list
    anchor: float
    T: list
    lhs: list
    nk_sum: list
    error_term: list
    rhs: list
    margin: list
    verdicts: dict
    overall: bool
    fitted_constant: float
    notes: list = field(default_factory=list)
    warnings: list = field(default_factory=list)


def _check_members(basis: LinearSystemBasis, sigmas: Sequence[Polynomial]) -> None:
    if not sigmas:
        raise ValueError("need at least one divisor")
    for j, s in enumerate(sigmas):
        if basis.span_coefficients(s) is None:
            raise NotInLinearSystem(f"sigma_{j + 1} = {s} is not in span(S_0..S_k)")


def hypothesis_warnings(basis: LinearSystemBasis, sigmas: Sequence[Polynomial], seed: int = 0) -> list[str]:
    out = []
    if basis.d == 1:
        if not general_position_hyperplanes(sigmas, basis.k):
            out.append("hyperplanes are not in general position")
    else:
        out.append("general position of degree >= 2 hypersurfaces is not verified")
    out.extend(snc_spot_check(sigmas, basis.k, seed))
    return out


def _fit_log_constant(margin, ell) -> float:
    num = sum(-m * l for m, l in zip(margin, ell))
    den = sum(l * l for l in ell)
    if den == 0:
        return 0.0
    return max(0.0, num / den)


def smt_verify(config: SMTConfig) -> SMTReport:
    basis, sigmas, curve = config.basis, list(config.sigmas), config.curve
    k, d, q = basis.k, basis.d, len(sigmas)
    if curve.k != k:
        raise ValueError(f"curve lives in P^{curve.k}, basis in P^{k}")
    _check_members(basis, sigmas)
    pulls = [pullback(curve, s) for s in sigmas]
    for j, p in enumerate(pulls):
        if p.is_zero():
            raise ZeroPullback(f"curve lies in the divisor of sigma_{j + 1}")
    if not linearly_nondegenerate(basis, curve):
        raise DegenerateCurve("curve lies in the support of a member of the linear system")
    tensor = solve_christoffel(basis)
    chart = config.chart if config.chart is not None else curve.default_chart()
    W = connection_wronskian(curve, chart_restrict(tensor, chart))
    if W.identically_zero:
        raise DegenerateCurve("connection Wronskian vanishes identically")

    coef = smt_coefficient(k, d, q)
    divs = [DivisorOnDisk.of(p) for p in pulls]
    grid = config.grid.screened([m for dv in divs for m in dv.moduli()])
    anchor = grid.anchor
    base = mean_log_norm(curve, anchor, config.quad_tol)
    c = config.growth.value
    rep = SMTReport(k, d, q, coef, list(grid.radii), anchor, [], [], [], [], [], [], {}, False, 0.0)
    for r in grid.radii:
        T = mean_log_norm(curve, r, config.quad_tol) - base
        lhs = float(coef) * d * T
        nk = sum(dv.counting(r, k) for dv in divs)
        err = smt_error_term_principal(k, config.epsilon, c, max(T, 0.0), r,
                                       log_constant=config.log_constant)
        rep.T.append(T)
        rep.lhs.append(lhs)
        rep.nk_sum.append(nk)
        rep.error_term.append(err)
        rep.rhs.append(nk + err)
        rep.margin.append(nk + err - lhs)

    slack = 10.0 * config.quad_tol * max(1.0, abs(float(coef)) * d)
    idx = [i for i, r in enumerate(rep.radii) if r >= BURN_IN] or list(range(len(rep.radii)))
    raw = all(rep.margin[i] >= -slack for i in idx)
    ell = [log_plus(max(rep.T[i], 0.0)) + log_plus(rep.radii[i]) for i in idx]
    C = _fit_log_constant([rep.margin[i] for i in idx], ell)
    fitted = all(rep.margin[i] + C * l >= -slack for i, l in zip(idx, ell))
    tail = idx[-max(1, len(idx) // 4):]
    asym_vals = [rep.margin[i] / rep.T[i] for i in tail if rep.T[i] > 0]
    asymptotic = bool(asym_vals) and min(asym_vals) >= ASYMPTOTIC_FLOOR
    rep.fitted_constant = C
    rep.verdicts = {"raw": raw, "fitted": fitted, "asymptotic": asymptotic}
    rep.overall = raw or fitted or (c == 0 and asymptotic)
    if coef <= 0:
        rep.notes.append(f"coefficient {coef} <= 0: inequality holds trivially")
    rep.warnings = hypothesis_warnings(basis, sigmas, config.seed)
    return rep


# -- Proposition 1 --------------------------------------------------------
@dataclass
class Prop1Report:
    radii: list
    anchor: float
    Tf: list
    Tg: list
    NS: list
    margin: list
    sharing_points: list
    negative_spread: float
    holds: bool


def check_sharing(f: ProjectiveCurve, g: ProjectiveCurve, sigmas: Sequence[Polynomial]):
    """Raise CurvesIdentical / SharingViolated; return the sharing set."""
    crosses = cross_products(f, g)
    if all(c.is_zero() for c in crosses):
        raise CurvesIdentical("f and g define the same map")
    S = sharing_set(f, g, sigmas)
    if S.radical.degree > 0:
        common = gcd_many([S.radical] + [c for c in crosses if not c.is_zero()])
        if common.degree < S.radical.degree:
            bad = S.radical.exquo(common)
            pts = ", ".join(f"{z:.6g}" for z in bad.roots())
            raise SharingViolated(f"f(z) != g(z) at shared-divisor points: {pts}")
    return S


def prop1_check(f: ProjectiveCurve, g: ProjectiveCurve, sigmas: Sequence[Polynomial], grid: RadiusGrid,
                tol: float = QUAD_TOL, enforce_sharing: bool = True) -> Prop1Report:
    """Margin T_f + T_g - N(r, S) for a pair sharing the divisors."""
    if enforce_sharing:
        S = check_sharing(f, g, sigmas)
    else:
        if f.same_point_as(g):
            raise CurvesIdentical("f and g define the same map")
        S = sharing_set(f, g, sigmas)
    anchor = grid.anchor
    bf = mean_log_norm(f, anchor, tol)
    bg = mean_log_norm(g, anchor, tol)
    rep = Prop1Report(list(grid.radii), anchor, [], [], [], [], S.points(), 0.0, True)
    for r in grid.radii:
        Tf = mean_log_norm(f, r, tol) - bf
        Tg = mean_log_norm(g, r, tol) - bg
        N = S.counting(r)
        rep.Tf.append(Tf)
        rep.Tg.append(Tg)
        rep.NS.append(N)
        rep.margin.append(Tf + Tg - N)
    neg = [min(m, 0.0) for m in rep.margin]
    rep.negative_spread = max(neg) - min(neg)
    rep.holds = rep.negative_spread < 0.1
    return rep


def diagonal_section(a: Mapping[tuple[int, int], object], z: Sequence, w: Sequence):
    """sum_{m<l} a_ml (z_m w_l - z_l w_m)."""
    if not any(a.values()):
        raise ValueError("all coefficients vanish")
    total = 0
    for (m, l), c in a.items():
        if not m < l:
            raise ValueError("keys must satisfy m < l")
        total = total + c * (z[m] * w[l] - z[l] * w[m])
    return total


# -- thresholds -----------------------------------------------------------
@dataclass
class ThresholdRow:
    name: str
    bound: Fraction | int
    relation: str  # ">" (strict lower bound on q) or ">=" (q at least bound) or "=" (reference value)
    min_q: int | None
    formula: str


@dataclass
class ThresholdTable:
    k: int
    d: int
    c: Fraction
    rows: list

    def row(self, name: str) -> ThresholdRow:
        return next(r for r in self.rows if r.name == name)


def _strict_min(bound: Fraction) -> int:
    return math.floor(bound) + 1


def uniqueness_thresholds(k: int, d: int, c_max=0) -> ThresholdTable:
    if k < 1 or d < 1:
        raise ValueError("need k, d >= 1")
    c = _exact(c_max)
    if c < 0:
        raise ValueError("growth index must be nonnegative")
    geo = Fraction((k - 1) * k * (k + 1) * (d - 1), 2 * d)
    t5i_curve = Fraction(3 * k + 1, d) + geo
    t5ii_curve = 2 * (Fraction(k + 1, d) + geo)
    t5i = t5i_curve + Fraction(k * k * (k + 1) ** 2, 2) * c
    t5ii = t5ii_curve + Fraction(k * k * (k + 1) ** 2, d) * c
    M = 2 * d * (2 ** (k - 1) * (k + 1) * k * d * (d + 1)) ** k
    d0 = d
    dr = Fraction(k + 1) + Fraction(2 * M, d0) + Fraction(1, 2)
    H = comb(k + d, d)
    # V = P^k, hypersurfaces in general position: N = m = k
    qa_a = Fraction(2 * (H - 1), d) + Fraction((2 * k - k + 1) * H, k + 1)
    qa_b = Fraction(2 * (2 * k - k + 1) * H, k + 1)
    rows = [
        ThresholdRow("thm5curve_i", t5i_curve, ">", _strict_min(t5i_curve),
                     "(3k+1)/d + (k-1)k(k+1)(d-1)/(2d)"),
        ThresholdRow("thm5curve_ii", t5ii_curve, ">", _strict_min(t5ii_curve),
                     "2((k+1)/d + (k-1)k(k+1)(d-1)/(2d))"),
        ThresholdRow("thm5_i", t5i, ">", _strict_min(t5i),
                     "thm5curve_i + k^2(k+1)^2/2 * c"),
        ThresholdRow("thm5_ii", t5ii, ">", _strict_min(t5ii),
                     "thm5curve_ii + k^2(k+1)^2/d * c"),
        ThresholdRow("dulock_ru", dr, ">", _strict_min(dr),
                     "(k+1) + 2M/d0 + 1/2, M = 2d[2^(k-1)(k+1)kd(d+1)]^k"),
        ThresholdRow("hilbert_upper", Fraction(H), "=", None, "(k+d)!/(k!d!)"),
        ThresholdRow("quang_an_a_upper", qa_a, ">", _strict_min(qa_a),
                     "2(H-1)/d + (2N-m+1)H/(m+1), N=m=k, H=(k+d)!/(k!d!)"),
        ThresholdRow("quang_an_b_upper", qa_b, ">", _strict_min(qa_b),
                     "2(2N-m+1)H/(m+1), N=m=k, H=(k+d)!/(k!d!)"),
        ThresholdRow("fujimoto", 3 * k + 2, ">=", 3 * k + 2, "3k+2 hyperplanes"),
        ThresholdRow("chen_yan", 2 * k + 3, ">=", 2 * k + 3, "2k+3 hyperplanes"),
    ]
    return ThresholdTable(k, d, c, rows)


# -- ratio groups ---------------------------------------------------------
def pairing(q: int, k: int) -> list[int]:
    """p(i) = i+k if i+k <= q else i+k-q, for positions i = 1..q."""
    return [i + k if i + k <= q else i + k - q for i in range(1, q + 1)]


@dataclass
class GroupPartition:
    classes: list  # lists of 1-based sigma indices
    order: list  # indices regrouped so that classes are contiguous
    pairing: dict  # original index -> original index of its partner
    auxiliaries: dict  # original index -> P_i
    all_small: bool  # every class has <= k members
    auxiliaries_nonzero: bool | None


def ratio_groups(f: ProjectiveCurve, g: ProjectiveCurve, sigmas: Sequence[Polynomial], k: int | None = None) -> GroupPartition:
    if k is None:
        k = f.k
    q = len(sigmas)
    sf = [pullback(f, s) for s in sigmas]
    sg = [pullback(g, s) for s in sigmas]
    for j in range(q):
        if sf[j].is_zero() or sg[j].is_zero():
            raise ZeroPullback(f"sigma_{j + 1} vanishes identically on a curve")
    parent = list(range(q))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(q):
        for j in range(i + 1, q):
            if find(i) != find(j) and (sf[i] * sg[j] - sf[j] * sg[i]).is_zero():
                parent[find(j)] = find(i)
    groups: dict = {}
    for i in range(q):
        groups.setdefault(find(i), []).append(i + 1)
    classes = sorted(groups.values(), key=lambda c: c[0])
    order = [i for c in classes for i in c]
    pos_pair = pairing(q, k)
    pair = {order[p - 1]: order[pos_pair[p - 1] - 1] for p in range(1, q + 1)}
    aux = {}
    for i, pi in pair.items():
        aux[i] = sf[i - 1] * sg[pi - 1] - sg[i - 1] * sf[pi - 1]
    all_small = all(len(c) <= k for c in classes)
    nonzero = all(not p.is_zero() for p in aux.values()) if all_small else None
    return GroupPartition(classes, order, pair, aux, all_small, nonzero)


def auxiliary_counting_margins(f: ProjectiveCurve, g: ProjectiveCurve, sigmas: Sequence[Polynomial],
                               groups: GroupPartition, radii: Sequence[float], k: int) -> dict:
    """Per i: N(r, P_i) minus the lower bound
    sum_{j in {i,p(i)}} (N_k(f*s_j) + N_k(g*s_j) - k N_1(f*s_j)) + sum_{j not in} N_1(f*s_j)."""
    df = [DivisorOnDisk.of(pullback(f, s)) for s in sigmas]
    dg = [DivisorOnDisk.of(pullback(g, s)) for s in sigmas]
    out = {}
    q = len(sigmas)
    for i, P in groups.auxiliaries.items():
        if P.is_zero():
            continue
        dp = DivisorOnDisk.of(P)
        pair = {i, groups.pairing[i]}
        margins = []
        for r in radii:
            bound = 0.0
            for j in range(1, q + 1):
                if j in pair:
                    bound += df[j - 1].counting(r, k) + dg[j - 1].counting(r, k) - k * df[j - 1].counting(r, 1)
                else:
                    bound += df[j - 1].counting(r, 1)
            margins.append(dp.counting(r) - bound)
        out[i] = margins
    return out


# -- Uniqueness harness ----------------------------------------------------
@dataclass
class HarnessReport:
    verdict: str
    q: int
    threshold: Fraction
    thresholds: ThresholdTable
    radii: list = field(default_factory=list)
    smt_f: SMTReport | None = None
    smt_g: SMTReport | None = None
    domination_margin: list = field(default_factory=list)
    prop1: Prop1Report | None = None
    combined_margin: list = field(default_factory=list)
    groups: GroupPartition | None = None
    auxiliary_margins: dict = field(default_factory=dict)
    passed: dict = field(default_factory=dict)
    failing: list = field(default_factory=list)
    warnings: list = field(default_factory=list)


def theorem5_harness(f: ProjectiveCurve, g: ProjectiveCurve, basis: LinearSystemBasis,
                     sigmas: Sequence[Polynomial], grid: RadiusGrid, c: float = 0.0,
                     epsilon: float = DEFAULT_EPSILON, quad_tol: float = QUAD_TOL,
                     enforce_sharing: bool = True, seed: int = 0) -> HarnessReport:
    """Run every inequality the uniqueness proof chains together and report margins."""
    k, d, q = basis.k, basis.d, len(sigmas)
    table = uniqueness_thresholds(k, d, c)
    bound = table.row("thm5_i").bound
    above = q > bound
    if f.same_point_as(g):
        verdict = "consistent with f = g conclusion" if above else "f = g (identical curves)"
        return HarnessReport(verdict, q, bound, table)
    _check_members(basis, sigmas)
    if enforce_sharing:
        check_sharing(f, g, sigmas)
    gi = growth_index(math.inf) if math.isinf(grid.R) else growth_index(grid.R, c)
    cfg_f = SMTConfig(basis, list(sigmas), f, grid, epsilon, gi, quad_tol, seed=seed)
    cfg_g = SMTConfig(basis, list(sigmas), g, grid, epsilon, gi, quad_tol, seed=seed)
    smt_f = smt_verify(cfg_f)
    smt_g = smt_verify(cfg_g)
    # a common grid for the pair: f and g may screen differently
    radii = smt_f.radii if smt_f.radii == smt_g.radii else list(grid.radii)
    common = RadiusGrid(radii, grid.R)
    prop = prop1_check(f, g, sigmas, common, quad_tol, enforce_sharing=False)
    S = sharing_set(f, g, sigmas)
    df = [DivisorOnDisk.of(pullback(f, s)) for s in sigmas]
    dg = [DivisorOnDisk.of(pullback(g, s)) for s in sigmas]
    dom = []
    for r in radii:
        lhs = sum(a.counting(r, k) + b.counting(r, k) for a, b in zip(df, dg))
        dom.append(2 * k * S.counting(r) - lhs)
    coef = float(smt_coefficient(k, d, q))
    combined = []
    for Tf, Tg, r in zip(prop.Tf, prop.Tg, radii):
        err = (smt_error_term_principal(k, epsilon, gi.value, max(Tf, 0.0), r)
               + smt_error_term_principal(k, epsilon, gi.value, max(Tg, 0.0), r))
        combined.append((2.0 * k / d) * (Tf + Tg) + err - coef * (Tf + Tg))
    groups = ratio_groups(f, g, sigmas, k)
    aux = {}
    if groups.all_small and groups.auxiliaries_nonzero:
        aux = auxiliary_counting_margins(f, g, sigmas, groups, radii, k)

    idx = [i for i, r in enumerate(radii) if r >= BURN_IN] or list(range(len(radii)))
    slack = 1e-7
    passed = {
        "smt_f": smt_f.overall,
        "smt_g": smt_g.overall,
        "domination": all(dom[i] >= -slack for i in idx),
        "prop1": prop.holds,
        "combined": all(combined[i] >= -slack for i in idx),
    }
    if aux:
        passed["auxiliary"] = all(m[i] >= -slack for m in aux.values() for i in idx)
    failing = [name for name, ok in passed.items() if not ok]
    if above:
        verdict = "contradiction: " + (", ".join(failing) if failing else "none") + " fail"
    else:
        verdict = "inequalities hold, no contradiction" if not failing else \
            "below threshold; failing: " + ", ".join(failing)
    rep = HarnessReport(verdict, q, bound, table, radii, smt_f, smt_g, dom, prop, combined,
                        groups, aux, passed, failing)
    rep.warnings = sorted(set(smt_f.warnings) | set(smt_g.warnings))
    return rep
