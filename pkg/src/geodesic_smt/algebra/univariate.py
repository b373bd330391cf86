"""Univariate polynomials and rational functions in the disk parameter z."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from ..errors import NotDivisible
from .gaussian import ONE, ZERO, GaussianRational
from .parsing import parse_expression
from .polynomial import format_polynomial


def _trim(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


class UniPolynomial:
    """Dense polynomial ``c0 + c1*z + ...`` with exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = tuple(_trim([GaussianRational.coerce(c) for c in coeffs]))

    @classmethod
    def _raw(cls, coeffs: list) -> "UniPolynomial":
        obj = object.__new__(cls)
        obj.coeffs = tuple(_trim(coeffs))
        return obj

    @classmethod
    def z(cls) -> "UniPolynomial":
        return cls._raw([ZERO, ONE])

    @classmethod
    def constant(cls, c) -> "UniPolynomial":
        return cls._raw([GaussianRational.coerce(c)])

    @classmethod
    def from_roots(cls, roots: Sequence, lead=1) -> "UniPolynomial":
        p = cls.constant(lead)
        for r in roots:
            p = p * cls._raw([-GaussianRational.coerce(r), ONE])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def lead(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __getitem__(self, n: int) -> GaussianRational:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else ZERO

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def _coerce(other) -> "UniPolynomial":
        if isinstance(other, UniPolynomial):
            return other
        return UniPolynomial.constant(other)

    def __add__(self, other):
        if isinstance(other, UniRational):
            return NotImplemented
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPolynomial._raw([
            (a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO) for i in range(n)
        ])

    __radd__ = __add__

    def __neg__(self):
        return UniPolynomial._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, UniRational):
            return NotImplemented
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, UniRational):
            return NotImplemented
        if not isinstance(other, UniPolynomial):
            try:
                c = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
            return UniPolynomial._raw([x * c for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPolynomial._raw([])
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return UniPolynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = UniPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (UniPolynomial, UniRational)):
            return UniRational(self) / other
        c = GaussianRational.coerce(other)
        return self * c.inverse()

    def __eq__(self, other):
        if isinstance(other, UniPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, UniRational):
            return other == self
        try:
            return self == UniPolynomial.constant(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def divmod(self, divisor: "UniPolynomial") -> tuple["UniPolynomial", "UniPolynomial"]:
        divisor = self._coerce(divisor)
        if not divisor.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = divisor.degree
        inv = divisor.lead().inverse()
        if len(rem) - 1 < dd:
            return UniPolynomial._raw([]), self
        quo = [ZERO] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            q = rem[i] * inv
            if not q:
                continue
            quo[i - dd] = q
            for j, c in enumerate(divisor.coeffs):
                rem[i - dd + j] = rem[i - dd + j] - q * c
        return UniPolynomial._raw(quo), UniPolynomial._raw(rem[:dd])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def exquo(self, divisor) -> "UniPolynomial":
        q, r = self.divmod(divisor)
        if r:
            raise NotDivisible("polynomial is not divisible")
        return q

    def divides(self, other: "UniPolynomial") -> bool:
        return not (other % self)

    def monic(self) -> "UniPolynomial":
        if not self.coeffs:
            return self
        inv = self.lead().inverse()
        return UniPolynomial._raw([c * inv for c in self.coeffs])

    def derivative(self) -> "UniPolynomial":
        return UniPolynomial._raw([c * n for n, c in enumerate(self.coeffs)][1:])

    # -- evaluation ---------------------------------------------------
    def evaluate_exact(self, z0) -> GaussianRational:
        z0 = GaussianRational.coerce(z0)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * z0 + c
        return acc

    def numeric_coeffs(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    def evaluate(self, z):
        """Horner evaluation in double precision (scalar or array)."""
        coeffs = self.numeric_coeffs()
        if not len(coeffs):
            return np.zeros_like(np.asarray(z, dtype=complex)) if np.ndim(z) else 0j
        return np.polyval(coeffs[::-1], z)

    def order_at(self, z0) -> int:
        """Exact multiplicity of z0 as a root (0 when p(z0) != 0)."""
        if not self.coeffs:
            raise ValueError("order of the zero polynomial is infinite")
        z0 = GaussianRational.coerce(z0)
        lin = UniPolynomial._raw([-z0, ONE])
        p = self
        order = 0
        while True:
            q, r = p.divmod(lin)
            if r:
                return order
            order += 1
            p = q

    def roots(self) -> np.ndarray:
        """Numeric roots via companion-matrix eigenvalues (numpy.roots)."""
        if self.degree < 1:
            return np.zeros(0, dtype=complex)
        return np.roots(self.numeric_coeffs()[::-1])

    def compose(self, inner):
        acc = None
        for c in reversed(self.coeffs):
            acc = (inner * ZERO + c) if acc is None else acc * inner + c
        return UniPolynomial._raw([]) if acc is None else acc

    # -- text ---------------------------------------------------------
    def __str__(self):
        terms = [(n, c) for n, c in enumerate(self.coeffs) if c]
        return format_polynomial(terms, _mono_z)

    def __repr__(self):
        return f"UniPolynomial({str(self)!r})"

    @classmethod
    def parse(cls, text: str, var: str = "z") -> "UniPolynomial":
        def resolve(name):
            if name == var:
                return UniPolynomial.z()
            raise KeyError(name)

        value = parse_expression(text, resolve)
        if isinstance(value, GaussianRational):
            value = UniPolynomial.constant(value)
        return value


def _mono_z(n: int) -> str:
    if n == 0:
        return ""
    if n == 1:
        return "z"
    return f"z^{n}"


def gcd(p: UniPolynomial, q: UniPolynomial) -> UniPolynomial:
    """Monic gcd by the Euclidean algorithm over Q(i)."""
    if not p and not q:
        raise ValueError("gcd(0, 0) is undefined")
    a, b = p, q
    while b:
        a, b = b, a % b
    return a.monic()


def gcd_many(polys: Iterable[UniPolynomial]) -> UniPolynomial:
    g = None
    for p in polys:
        if not p:
            continue
        g = p.monic() if g is None else gcd(g, p)
        if g.degree == 0:
            return g
    if g is None:
        raise ValueError("gcd of only zero polynomials")
    return g


def square_free(p: UniPolynomial) -> list[tuple[UniPolynomial, int]]:
    """Yun's square-free decomposition.

    Returns monic pairwise-coprime factors ``(a_i, i)`` with
    ``p = lead(p) * prod a_i**i``; trivial factors are omitted.
    """
    if not p:
        raise ValueError("square-free decomposition of zero")
    if p.degree == 0:
        return []
    out = []
    dp = p.derivative()
    a = gcd(p, dp)
    b = p.exquo(a)
    c = dp.exquo(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = gcd(b, d)
        b = b.exquo(a)
        c = d.exquo(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a.monic(), i))
        i += 1
    return out


def radical(p: UniPolynomial) -> UniPolynomial:
    """Monic square-free part (product of the distinct monic factors)."""
    r = UniPolynomial.constant(1)
    for factor, _ in square_free(p):
        r = r * factor
    return r


class UniRational:
    """Normalized quotient of UniPolynomials: gcd cancelled, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, UniPolynomial) else UniPolynomial.constant(num)
        if den is None:
            den = UniPolynomial.constant(1)
        elif not isinstance(den, UniPolynomial):
            den = UniPolynomial.constant(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num = num
            self.den = UniPolynomial.constant(1)
            return
        if den.degree > 0:
            g = gcd(num, den)
            if g.degree > 0:
                num = num.exquo(g)
                den = den.exquo(g)
        lead_inv = den.lead().inverse()
        self.num = num * lead_inv
        self.den = den * lead_inv

    @classmethod
    def _coerce(cls, other) -> "UniRational":
        if isinstance(other, UniRational):
            return other
        if isinstance(other, UniPolynomial):
            return cls(other)
        return cls(UniPolynomial.constant(other))

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return UniRational(self.num + other.num, self.den)
        return UniRational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return UniRational(-self.num, self.den)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return UniRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return UniRational(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return UniRational(1) / (self ** (-n))
        return UniRational(self.num ** n, self.den ** n)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self) -> "UniRational":
        return UniRational(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def evaluate(self, z):
        return self.num.evaluate(z) / self.den.evaluate(z)

    def order_at(self, z0) -> int:
        return self.num.order_at(z0) - self.den.order_at(z0)

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"UniRational({str(self)!r})"
