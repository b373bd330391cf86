"""Multivariate rational functions with cheap canonicalization.

Only monomial factors, scalar content and exact divisibility of the
numerator by the denominator are cancelled; no multivariate gcd is taken.
Degree bookkeeping (``hom_degree``) is unaffected by that choice.
"""

from __future__ import annotations

from ..errors import NotDivisible
from .gaussian import GaussianRational
from .polynomial import Polynomial


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None, normalize: bool = True):
        if den is None:
            den = Polynomial.constant(num.nvars, 1)
        if not isinstance(num, Polynomial):
            num = Polynomial.constant(den.nvars, num)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.nvars != den.nvars:
            raise ValueError("numerator and denominator live in different rings")
        if normalize:
            num, den = _canonical(num, den)
        self.num = num
        self.den = den

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @property
    def hom_degree(self) -> int | None:
        """deg(num) - deg(den) when both are homogeneous, else None."""
        if not (self.num.is_homogeneous() and self.den.is_homogeneous()):
            return None
        if self.num.is_zero():
            return None
        return self.num.degree - self.den.degree

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def _wrap(self, num, den):
        cls = HomRationalFunction if (num.is_homogeneous() and den.is_homogeneous()) else RationalFunction
        obj = object.__new__(cls)
        num, den = _canonical(num, den)
        obj.num = num
        obj.den = den
        return obj

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        c = GaussianRational.coerce(other)
        return RationalFunction(Polynomial.constant(self.nvars, c))

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return self._wrap(self.num + other.num, self.den)
        return self._wrap(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.num, self.den)

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
        return self._wrap(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return self._wrap(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        # cross-multiplication: canonical form is not unique without a full gcd
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("RationalFunction is unhashable (equality is by cross-multiplication)")

    def evaluate(self, point):
        return self.num.evaluate(point) / self.den.evaluate(point)

    def dehomogenize(self, j: int) -> "RationalFunction":
        return self._wrap(self.num.dehomogenize(j), self.den.dehomogenize(j))

    def derivative(self, i: int) -> "RationalFunction":
        return self._wrap(
            self.num.derivative(i) * self.den - self.num * self.den.derivative(i),
            self.den * self.den,
        )

    def __str__(self):
        if self.den.is_constant():
            return str(self.num * self.den.coefficient((0,) * self.nvars).inverse())
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


class HomRationalFunction(RationalFunction):
    """Quotient of homogeneous polynomials; ``hom_degree`` = deg num - deg den."""

    __slots__ = ()

    def __init__(self, num, den=None, normalize: bool = True):
        super().__init__(num, den, normalize)
        if not (self.num.is_homogeneous() and self.den.is_homogeneous()):
            raise ValueError("numerator and denominator must be homogeneous")


def _canonical(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    nvars = num.nvars
    if num.is_zero():
        return Polynomial.zero(nvars), Polynomial.constant(nvars, 1)
    # common monomial factor
    mn, md = num.monomial_content(), den.monomial_content()
    common = tuple(min(a, b) for a, b in zip(mn, md))
    if any(common):
        num = num.shift_down(common)
        den = den.shift_down(common)
    # exact divisibility (also catches den | num for constant dens)
    if not den.is_constant():
        try:
            num = num.exquo(den)
            den = Polynomial.constant(nvars, 1)
        except NotDivisible:
            pass
    lead = den.leading_term()[1]
    if lead != 1:
        inv = lead.inverse()
        num = num * inv
        den = den * inv
    return num, den

