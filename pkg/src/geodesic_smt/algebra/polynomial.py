"""Sparse multivariate polynomials over the Gaussian rationals.

Terms are stored as ``{exponent tuple: GaussianRational}``; monomials are
ordered graded-lexicographically (total degree first, then lex on the
exponent tuple), which fixes both printing order and the leading term used
by exact division.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..errors import NotDivisible
from .gaussian import ONE, ZERO, GaussianRational, _fmt
from .parsing import parse_expression

Exponent = tuple[int, ...]


def grlex_key(exps: Exponent):
    return (sum(exps), exps)


class Polynomial:
    """Multivariate polynomial in ``nvars`` variables ``X0 .. X{nvars-1}``.

    Instances are immutable.  The zero polynomial remembers a conventional
    degree (``zero_degree``) so degree bookkeeping survives cancellation.
    """

    __slots__ = ("nvars", "terms", "_zero_degree", "_numeric")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None,
                 zero_degree: int = -1):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                c = GaussianRational.coerce(c)
                if c:
                    exps = tuple(exps)
                    if len(exps) != nvars or min(exps, default=0) < 0:
                        raise ValueError(f"bad exponent {exps} for {nvars} variables")
                    clean[exps] = c
        self.terms = clean
        self._zero_degree = zero_degree
        self._numeric = None

    @classmethod
    def _raw(cls, nvars, terms, zero_degree=-1):
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._zero_degree = zero_degree
        obj._numeric = None
        return obj

    # -- constructors -------------------------------------------------
    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        exps = [0] * nvars
        exps[i] = 1
        return HomogeneousPolynomial._raw(nvars, {tuple(exps): ONE}, 1)

    @classmethod
    def constant(cls, nvars: int, c=1) -> "Polynomial":
        c = GaussianRational.coerce(c)
        return HomogeneousPolynomial._raw(nvars, {(0,) * nvars: c} if c else {}, 0)

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "Polynomial":
        exps = tuple(exps)
        c = GaussianRational.coerce(c)
        return HomogeneousPolynomial._raw(len(exps), {exps: c} if c else {}, sum(exps))

    @classmethod
    def zero(cls, nvars: int, degree: int = -1) -> "Polynomial":
        if degree >= 0:
            return HomogeneousPolynomial._raw(nvars, {}, degree)
        return Polynomial._raw(nvars, {}, degree)

    # -- basic properties --------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int:
        if not self.terms:
            return self._zero_degree
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        degs = {sum(e) for e in self.terms}
        return len(degs) == 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def sorted_terms(self, descending: bool = True) -> list[tuple[Exponent, GaussianRational]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=descending)

    def leading_term(self) -> tuple[Exponent, GaussianRational]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=grlex_key)
        return exps, self.terms[exps]

    def coefficient(self, exps: Sequence[int]) -> GaussianRational:
        return self.terms.get(tuple(exps), ZERO)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        c = GaussianRational.coerce(other)
        return Polynomial.constant(self.nvars, c)

    def _make(self, terms, other=None, zero_degree=None):
        """Pick the result class: homogeneous when every term shares a degree."""
        if zero_degree is None:
            zero_degree = -1
        if terms:
            degs = {sum(e) for e in terms}
            if len(degs) == 1:
                return HomogeneousPolynomial._raw(self.nvars, terms, degs.pop())
            return Polynomial._raw(self.nvars, terms)
        if zero_degree >= 0:
            return HomogeneousPolynomial._raw(self.nvars, terms, zero_degree)
        return Polynomial._raw(self.nvars, terms, zero_degree)

    def _add(self, other, sign):
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = (c if sign > 0 else -c) if v is None else (v + c if sign > 0 else v - c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        zd = self.degree if self.degree == other.degree else -1
        return self._make(out, zero_degree=zd)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        return self._add(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not other.terms:
            return self
        return self._add(other, -1)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return self._make({e: -c for e, c in self.terms.items()}, zero_degree=self._zero_degree)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            zd = -1
            if self.degree >= 0 and other.degree >= 0:
                zd = self.degree + other.degree
            if not self.terms or not other.terms:
                return self._make({}, zero_degree=zd)
            out: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    v = out.get(e)
                    out[e] = c1 * c2 if v is None else v + c1 * c2
            out = {e: c for e, c in out.items() if c}
            return self._make(out, zero_degree=zd)
        try:
            c = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        if not c:
            return self._make({}, zero_degree=self.degree)
        return self._make({e: v * c for e, v in self.terms.items()}, zero_degree=self._zero_degree)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            return self.exquo(other)
        c = GaussianRational.coerce(other)
        return self * c.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            c = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        if not c:
            return not self.terms
        return self.terms == {(0,) * self.nvars: c}

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def exquo(self, divisor: "Polynomial") -> "Polynomial":
        """Exact quotient ``self / divisor``; raises NotDivisible otherwise."""
        divisor = self._coerce(divisor)
        if not divisor.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            zd = self.degree - divisor.degree if self.degree >= 0 else -1
            return self._make({}, zero_degree=zd)
        lt_e, lt_c = divisor.leading_term()
        lt_inv = lt_c.inverse()
        rem = dict(self.terms)
        quo: dict = {}
        while rem:
            e = max(rem, key=grlex_key)
            shift = tuple(a - b for a, b in zip(e, lt_e))
            if min(shift) < 0:
                raise NotDivisible("polynomial is not divisible")
            q = rem[e] * lt_inv
            quo[shift] = q
            for de, dc in divisor.terms.items():
                te = tuple(a + b for a, b in zip(de, shift))
                v = rem.get(te, ZERO) - q * dc
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return self._make(quo)

    def divides(self, other: "Polynomial") -> bool:
        try:
            other.exquo(self)
        except NotDivisible:
            return False
        return True

    # -- calculus -----------------------------------------------------
    def derivative(self, i: int) -> "Polynomial":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        zd = self.degree - 1 if self.degree >= 1 else (0 if self.degree == 0 else -1)
        return self._make(out, zero_degree=zd)

    # -- content / monomial factors ----------------------------------
    def monomial_content(self) -> Exponent:
        """Componentwise minimum exponent (largest monomial dividing self)."""
        if not self.terms:
            return (0,) * self.nvars
        exps = list(self.terms)
        return tuple(min(e[i] for e in exps) for i in range(self.nvars))

    def shift_down(self, exps: Exponent) -> "Polynomial":
        out = {tuple(a - b for a, b in zip(e, exps)): c for e, c in self.terms.items()}
        return self._make(out, zero_degree=self._zero_degree)

    def integer_content(self) -> Fraction:
        """Positive rational c such that self / c has coprime Gaussian-integer
        coefficients (gcd taken over real and imaginary parts jointly)."""
        if not self.terms:
            return Fraction(1)
        g = 0
        den = 1
        for c in self.terms.values():
            for part in (c.re, c.im):
                if part:
                    g = gcd(g, part.numerator)
                    den = den * part.denominator // gcd(den, part.denominator)
        return Fraction(g, den)

    # -- evaluation / substitution ------------------------------------
    def evaluate_exact(self, point: Sequence) -> GaussianRational:
        point = [GaussianRational.coerce(p) for p in point]
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        total = ZERO
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            total = total + v
        return total

    def _numeric_form(self):
        if self._numeric is None:
            if self.terms:
                exps = np.array(list(self.terms), dtype=np.int64)
                coeffs = np.array([complex(c) for c in self.terms.values()], dtype=complex)
            else:
                exps = np.zeros((0, self.nvars), dtype=np.int64)
                coeffs = np.zeros(0, dtype=complex)
            self._numeric = (exps, coeffs)
        return self._numeric

    def evaluate(self, point) -> complex | np.ndarray:
        """Double-precision evaluation at one point or an ``(n, nvars)`` array."""
        exps, coeffs = self._numeric_form()
        pts = np.asarray(point, dtype=complex)
        single = pts.ndim == 1
        if single:
            pts = pts[None, :]
        if pts.shape[1] != self.nvars:
            raise ValueError("point has wrong length")
        if not len(coeffs):
            out = np.zeros(pts.shape[0], dtype=complex)
        else:
            # Horner in the first variable on grouped terms would save flops;
            # power products keep the error at O(eps * term count) regardless
            powers = np.ones((pts.shape[0], len(coeffs)), dtype=complex)
            for v in range(self.nvars):
                col = exps[:, v]
                if col.any():
                    powers *= pts[:, v:v + 1] ** col[None, :]
            out = powers @ coeffs
        return complex(out[0]) if single else out

    def compose(self, values: Sequence, one=None):
        """Substitute ring elements ``values[i]`` for ``X_i``."""
        if len(values) != self.nvars:
            raise ValueError("need one value per variable")
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = values[i] ** k
            return cache[key]

        total = None
        for e, c in self.sorted_terms():
            term = None
            for i, k in enumerate(e):
                if k:
                    p = power(i, k)
                    term = p if term is None else term * p
            if term is None:
                term = c if one is None else one * c
            else:
                term = term * c
            total = term if total is None else total + term
        if total is None:
            total = ZERO if one is None else one * ZERO
        return total

    def dehomogenize(self, j: int) -> "Polynomial":
        """Set ``X_j = 1`` and drop that variable."""
        out: dict = {}
        for e, c in self.terms.items():
            ne = e[:j] + e[j + 1:]
            v = out.get(ne)
            out[ne] = c if v is None else v + c
        out = {e: c for e, c in out.items() if c}
        poly = Polynomial._raw(self.nvars - 1, {})
        return poly._make(out)

    def homogenize(self, j: int, degree: int | None = None) -> "HomogeneousPolynomial":
        """Insert a variable at slot ``j`` making every term of ``degree``."""
        if degree is None:
            degree = max(self.degree, 0)
        out = {}
        for e, c in self.terms.items():
            extra = degree - sum(e)
            if extra < 0:
                raise ValueError("target degree below polynomial degree")
            out[e[:j] + (extra,) + e[j:]] = c
        return HomogeneousPolynomial._raw(self.nvars + 1, out, degree)

    # -- text -------------------------------------------------------
    def __str__(self):
        return format_polynomial(self.sorted_terms(), _mono_x)

    def __repr__(self):
        return f"{type(self).__name__}({self.nvars}, {str(self)!r})"

    @classmethod
    def parse(cls, text: str, nvars: int | None = None) -> "Polynomial":
        names = _scan_xvars(text)
        if nvars is None:
            nvars = (max(names) + 1) if names else 1
        elif names and max(names) >= nvars:
            from ..errors import ParseError

            raise ParseError(f"variable X{max(names)} out of range for {nvars} variables")

        def resolve(name):
            if name.startswith("X") and name[1:].isdigit():
                idx = int(name[1:])
                if idx < nvars:
                    return Polynomial.variable(nvars, idx)
            raise KeyError(name)

        value = parse_expression(text, resolve)
        if isinstance(value, GaussianRational):
            value = Polynomial.constant(nvars, value)
        return value


class HomogeneousPolynomial(Polynomial):
    """A Polynomial whose terms all share one total degree.

    Arithmetic on Polynomial already returns this class whenever the result
    is homogeneous; constructing one directly validates the invariant.
    """

    __slots__ = ()

    def __init__(self, nvars: int, terms=None, degree: int | None = None):
        super().__init__(nvars, terms)
        degs = {sum(e) for e in self.terms}
        if len(degs) > 1:
            raise ValueError(f"terms of mixed degree {sorted(degs)}")
        if degs:
            actual = degs.pop()
            if degree is not None and degree != actual:
                raise ValueError(f"declared degree {degree} but terms have degree {actual}")
            degree = actual
        if degree is None:
            degree = 0
        self._zero_degree = degree

    @classmethod
    def parse(cls, text: str, nvars: int | None = None, degree: int | None = None):
        poly = Polynomial.parse(text, nvars)
        if not poly.is_homogeneous():
            from ..errors import ParseError

            raise ParseError(f"polynomial {text!r} is not homogeneous")
        if poly.is_zero():
            return HomogeneousPolynomial._raw(poly.nvars, {}, degree if degree is not None else 0)
        if degree is not None and poly.degree != degree:
            from ..errors import DegreeMismatch

            raise DegreeMismatch(f"expected degree {degree}, got {poly.degree}")
        return poly


def _scan_xvars(text: str) -> list[int]:
    import re

    return [int(m) for m in re.findall(r"\bX(\d+)\b", text)]


def _mono_x(e: Exponent) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"X{i}")
        elif k > 1:
            parts.append(f"X{i}^{k}")
    return "*".join(parts)


def format_coefficient_term(c: GaussianRational, mono: str, first: bool) -> str:
    if c.is_real():
        neg = c.re < 0
        mag = -c.re if neg else c.re
        if mono:
            body = mono if mag == 1 else f"{_fmt(mag)}*{mono}"
        else:
            body = _fmt(mag)
        if first:
            return f"-{body}" if neg else body
        return f" - {body}" if neg else f" + {body}"
    coeff = f"({c})"
    body = f"{coeff}*{mono}" if mono else coeff
    return body if first else f" + {body}"


def format_polynomial(terms: Iterable[tuple[object, GaussianRational]], mono_fn) -> str:
    out = []
    for e, c in terms:
        out.append(format_coefficient_term(c, mono_fn(e), not out))
    return "".join(out) if out else "0"
