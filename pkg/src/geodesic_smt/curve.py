"""Polynomial holomorphic curves in P^k and their connection Wronskians."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra.gaussian import GaussianRational
from .algebra.matrix import determinant
from .algebra.polynomial import Polynomial
from .algebra.rational import RationalFunction
from .algebra.univariate import UniPolynomial, UniRational, gcd_many
from .connection import ChartConnection
from .errors import ChartDegenerate, PolarLocusCurve, ZeroCurve


@dataclass(frozen=True)
class ProjectiveCurve:
    components: tuple
    reduced: bool = False

    def __post_init__(self):
        comps = tuple(_as_uni(c) for c in self.components)
        object.__setattr__(self, "components", comps)
        if all(c.is_zero() for c in comps):
            raise ZeroCurve("all components vanish identically")

    @classmethod
    def parse(cls, texts: Sequence[str]) -> "ProjectiveCurve":
        return reduce(cls(tuple(UniPolynomial.parse(t) for t in texts)))

    @property
    def k(self) -> int:
        return len(self.components) - 1

    def max_degree(self) -> int:
        return max(c.degree for c in self.components)

    def default_chart(self) -> int:
        return next(j for j, c in enumerate(self.components) if not c.is_zero())

    def evaluate(self, z) -> np.ndarray:
        """Component values, shape (k+1,) + shape(z)."""
        return np.array([c.evaluate(z) for c in self.components])

    def strings(self) -> list[str]:
        return [str(c) for c in self.components]

    def same_point_as(self, other: "ProjectiveCurve") -> bool:
        """True iff f and g define the same map (all 2x2 cross products vanish)."""
        return all(c.is_zero() for c in cross_products(self, other))


def _as_uni(c) -> UniPolynomial:
    if isinstance(c, UniPolynomial):
        return c
    if isinstance(c, str):
        return UniPolynomial.parse(c)
    return UniPolynomial.constant(c)


def reduce(curve: ProjectiveCurve) -> ProjectiveCurve:
    """Divide all components by their monic gcd."""
    g = gcd_many(curve.components)
    if g.degree == 0:
        return ProjectiveCurve(curve.components, True)
    return ProjectiveCurve(tuple(c.exquo(g) for c in curve.components), True)


def cross_products(f: ProjectiveCurve, g: ProjectiveCurve) -> list[UniPolynomial]:
    if f.k != g.k:
        raise ValueError("curves live in different projective spaces")
    n = f.k + 1
    return [f.components[i] * g.components[j] - f.components[j] * g.components[i]
            for i in range(n) for j in range(i + 1, n)]


def pullback(curve: ProjectiveCurve, sigma: Polynomial) -> UniPolynomial:
    """sigma(f_0(z), ..., f_k(z))."""
    if sigma.nvars != curve.k + 1:
        raise ValueError(f"sigma has {sigma.nvars} variables, curve lives in P^{curve.k}")
    return sigma.compose(list(curve.components), one=UniPolynomial.constant(1))


def affine_coordinates(curve: ProjectiveCurve, chart: int) -> list[UniRational]:
    fj = curve.components[chart]
    if fj.is_zero():
        raise ChartDegenerate(f"component f_{chart} vanishes identically")
    return [UniRational(c, fj) for i, c in enumerate(curve.components) if i != chart]


def compose_affine(P: Polynomial, curve: ProjectiveCurve, chart: int) -> tuple[UniPolynomial, UniPolynomial]:
    """P(f_i/f_j) as (numerator, denominator) via P^h(f) / f_j^deg P."""
    deg = max(P.degree, 0)
    num = pullback(curve, P.homogenize(chart, deg))
    den = curve.components[chart] ** deg
    return num, den


def compose_rational(R: RationalFunction, curve: ProjectiveCurve, chart: int) -> UniRational:
    if R.is_zero():
        return UniRational(UniPolynomial())
    nn, nd = compose_affine(R.num, curve, chart)
    dn, dd = compose_affine(R.den, curve, chart)
    if dn.is_zero():
        raise PolarLocusCurve("curve lies in the polar locus of the connection")
    return UniRational(nn * dd, nd * dn)


def covariant_derivative(V: Sequence[UniRational], curve: ProjectiveCurve, conn: ChartConnection,
                         _cache: dict | None = None) -> list[UniRational]:
    """(Lambda_{f'} V)^a = (V^a)' + sum_{b,c} Gamma^a_{bc}(f) (f^b)' V^c."""
    k = conn.k
    if len(V) != k:
        raise ValueError(f"vector needs {k} entries")
    cache = _cache if _cache is not None else {}
    if "df" not in cache:
        cache["df"] = [w.derivative() for w in affine_coordinates(curve, conn.chart)]
    df = cache["df"]
    out = []
    for a in range(k):
        acc = V[a].derivative()
        for b in range(k):
            if df[b].is_zero():
                continue
            for c in range(k):
                G = conn.gamma[a][b][c]
                if G.is_zero() or V[c].is_zero():
                    continue
                key = (a, b, c)
                if key not in cache:
                    cache[key] = compose_rational(G, curve, conn.chart)
                acc = acc + cache[key] * df[b] * V[c]
        out.append(acc)
    return out


@dataclass
class CovariantFrame:
    chart: int
    vectors: list  # V_0 = f', V_m = Lambda^{(m)}_{f'} f'


def covariant_frame(curve: ProjectiveCurve, conn: ChartConnection) -> CovariantFrame:
    coords = affine_coordinates(curve, conn.chart)
    cache: dict = {}
    # polar-locus check up front so it fires even when the frame would not need it
    for a in range(conn.k):
        for b in range(conn.k):
            for c in range(conn.k):
                G = conn.gamma[a][b][c]
                if not G.is_zero():
                    cache[(a, b, c)] = compose_rational(G, curve, conn.chart)
    V = [w.derivative() for w in coords]
    cache["df"] = V
    vectors = [V]
    for _ in range(conn.k - 1):
        V = covariant_derivative(V, curve, conn, cache)
        vectors.append(V)
    return CovariantFrame(conn.chart, vectors)


@dataclass
class WronskianValue:
    value: UniRational
    identically_zero: bool
    frame: CovariantFrame

    def order_at(self, z0) -> float:
        if self.identically_zero:
            return float("inf")
        return self.value.order_at(z0)


def connection_wronskian(curve: ProjectiveCurve, conn: ChartConnection) -> WronskianValue:
    """det of the k x k matrix whose rows are f', Lambda f', ..., Lambda^{(k-1)} f'."""
    frame = covariant_frame(curve, conn)
    W = determinant(frame.vectors)
    return WronskianValue(W, W.is_zero(), frame)


def numeric_order(p: UniPolynomial, z0: complex, tol: float = 1e-8) -> int:
    """Multiplicity of z0 by repeated deflation in double precision."""
    coeffs = p.numeric_coeffs()[::-1].tolist()  # highest degree first
    if not coeffs:
        raise ValueError("order of the zero polynomial is infinite")
    order = 0
    while len(coeffs) > 1:
        scale = max(abs(c) for c in coeffs) * max(1.0, abs(z0)) ** (len(coeffs) - 1)
        out = [coeffs[0]]
        for c in coeffs[1:]:
            out.append(c + out[-1] * z0)
        if abs(out[-1]) > tol * scale:
            break
        coeffs = out[:-1]
        order += 1
    return order


def _is_exact_point(z0) -> bool:
    return isinstance(z0, (GaussianRational, int, str)) or (
        hasattr(z0, "numerator") and hasattr(z0, "denominator"))


def order_at(p: UniPolynomial, z0) -> int:
    if _is_exact_point(z0):
        return p.order_at(GaussianRational.coerce(z0))
    return numeric_order(p, complex(z0))


@dataclass
class ZeroOrderResult:
    holds: bool
    vacuous: bool
    ord_sigma: int
    ord_lhs: float
    k: int

    def __bool__(self):
        return self.holds


def zero_order_inequality_check(curve: ProjectiveCurve, conn: ChartConnection, delta: Polynomial,
                                sigma: Polynomial, z0, wronskian: WronskianValue | None = None) -> ZeroOrderResult:
    """If ord_{z0}(sigma o f) >= k+1, check
    ord_{z0} delta(f)^{k(k-1)/2} W(f) >= ord_{z0}(sigma o f) - k.

    The divisor of sigma is assumed smooth; for a non-reduced sigma such as
    X1^2 the order on the right doubles and the inequality need not hold.
    """
    k = curve.k
    ps = pullback(curve, sigma)
    if ps.is_zero():
        raise ValueError("sigma o f vanishes identically")
    ord_s = order_at(ps, z0)
    if ord_s < k + 1:
        return ZeroOrderResult(True, True, ord_s, float("nan"), k)
    W = wronskian if wronskian is not None else connection_wronskian(curve, conn)
    if W.identically_zero:
        return ZeroOrderResult(True, False, ord_s, float("inf"), k)
    pd = pullback(curve, delta)
    power = k * (k - 1) // 2
    if pd.is_zero():
        lhs = float("inf") if power else order_at(W.value.num, z0) - order_at(W.value.den, z0)
    else:
        lhs = power * order_at(pd, z0) + order_at(W.value.num, z0) - order_at(W.value.den, z0)
    return ZeroOrderResult(lhs >= ord_s - k, False, ord_s, lhs, k)


def chart_zero_sets(curve: ProjectiveCurve, tensor) -> dict:
    """Cross-chart diagnostic: per chart hosting the curve, whether W vanishes
    identically and the numeric zeros of its numerator."""
    from .connection import chart_restrict

    out = {}
    for j, comp in enumerate(curve.components):
        if comp.is_zero():
            continue
        try:
            W = connection_wronskian(curve, chart_restrict(tensor, j))
        except PolarLocusCurve:
            out[j] = {"polar": True}
            continue
        zeros = [] if W.identically_zero else sorted(W.value.num.roots().tolist(), key=lambda z: (z.real, z.imag))
        out[j] = {"polar": False, "identically_zero": W.identically_zero, "zeros": zeros}
    return out
