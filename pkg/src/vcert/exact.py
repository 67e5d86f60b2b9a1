"""Exact scalars and polynomials.

Everything is built on :class:`fractions.Fraction`; there is no floating
point anywhere in the package.  Three coefficient shapes are used:

* :class:`CPoly` -- a polynomial in the formal central charge ``c``.  The
  vertex algebra engine works with these, since products of general states
  can carry ``c**2`` and higher.
* :class:`CLin` -- ``a0 + a1*c``.  Quantities entering the certificate are at
  most linear in ``c``; multiplying two ``c``-dependent values raises.
* :class:`PolyM` / :class:`CLinPolyM` -- polynomials in the instance parameter
  ``m`` (optionally with a linear ``c`` part).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence, Union

Rat = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "Rat",
    "binom",
    "fmt_rat",
    "parse_rat",
    "CPoly",
    "cpoly_gcd",
    "CLin",
    "PolyM",
    "CLinPolyM",
    "poly_interpolate",
    "clin_interpolate",
    "poly_divexact",
    "NonLinearCError",
    "InexactDivisionError",
]


class NonLinearCError(ArithmeticError):
    """A product produced a ``c**2`` term where only linear ``c`` is allowed."""


class InexactDivisionError(ArithmeticError):
    """Polynomial division left a nonzero remainder."""


def binom(top: int, k: int) -> Fraction:
    """Generalized binomial ``top (top-1) ... (top-k+1) / k!``; ``top`` may be negative."""
    if k < 0:
        raise ValueError("binom requires k >= 0")
    num = 1
    for j in range(k):
        num *= top - j
    return Fraction(num, factorial(k))


def fmt_rat(x: Scalar) -> str:
    """Encode a rational as ``"num/den"`` (denominator always present)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s: str) -> Fraction:
    return Fraction(s)


def _trim(cs: Sequence[Fraction]) -> tuple:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class CPoly:
    """Polynomial in the central charge ``c`` with rational coefficients.

    Coefficients are stored lowest degree first; the zero polynomial is the
    empty tuple.
    """

    __slots__ = ("cs",)

    def __init__(self, cs: Iterable[Scalar] = ()):
        self.cs = _trim(Fraction(x) for x in cs)

    @classmethod
    def _raw(cls, cs: tuple) -> "CPoly":
        obj = cls.__new__(cls)
        obj.cs = cs
        return obj

    @classmethod
    def const(cls, x: Scalar) -> "CPoly":
        return cls._raw((Fraction(x),) if x else ())

    @classmethod
    def c(cls) -> "CPoly":
        return cls._raw((Fraction(0), Fraction(1)))

    def __bool__(self) -> bool:
        return bool(self.cs)

    @property
    def degree(self) -> int:
        return len(self.cs) - 1

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CPoly.const(other)
        elif isinstance(other, CLin):
            other = other.to_cpoly()
        if not isinstance(other, CPoly):
            return NotImplemented
        return self.cs == other.cs

    def __hash__(self) -> int:
        return hash(self.cs)

    def __add__(self, other) -> "CPoly":
        if isinstance(other, (int, Fraction)):
            other = CPoly.const(other)
        a, b = self.cs, other.cs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return CPoly._raw(_trim(out))

    __radd__ = __add__

    def __neg__(self) -> "CPoly":
        return CPoly._raw(tuple(-x for x in self.cs))

    def __sub__(self, other) -> "CPoly":
        if isinstance(other, (int, Fraction)):
            other = CPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "CPoly":
        return (-self) + other

    def __mul__(self, other) -> "CPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return CPoly._raw(())
            return CPoly._raw(tuple(x * other for x in self.cs))
        if not isinstance(other, CPoly):
            return NotImplemented
        a, b = self.cs, other.cs
        if not a or not b:
            return CPoly._raw(())
        if len(b) == 1:
            return self * b[0]
        if len(a) == 1:
            return other * a[0]
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return CPoly._raw(_trim(out))

    __rmul__ = __mul__

    def __call__(self, c: Scalar) -> Fraction:
        acc = Fraction(0)
        for x in reversed(self.cs):
            acc = acc * c + x
        return acc

    def divmod(self, den: "CPoly") -> tuple["CPoly", "CPoly"]:
        if not den:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.cs)
        dd, lead = den.degree, den.cs[-1]
        quo = [Fraction(0)] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            x = rem[i]
            if x:
                t = x / lead
                quo[i - dd] = t
                for j, y in enumerate(den.cs):
                    rem[i - dd + j] -= t * y
        return CPoly._raw(_trim(quo)), CPoly._raw(_trim(rem[:dd]))

    def divexact(self, den: "CPoly") -> "CPoly":
        quo, rem = self.divmod(den)
        if rem:
            raise InexactDivisionError(f"{self!r} is not divisible by {den!r}")
        return quo

    def monic(self) -> "CPoly":
        if not self.cs:
            return self
        return self * (1 / self.cs[-1])

    def __repr__(self) -> str:
        if not self.cs:
            return "0"
        parts = []
        for i, x in enumerate(self.cs):
            if not x:
                continue
            mono = "" if i == 0 else ("c" if i == 1 else f"c^{i}")
            if mono and x == 1:
                parts.append(mono)
            elif mono:
                parts.append(f"({x})*{mono}")
            else:
                parts.append(str(x))
        return " + ".join(parts)


def cpoly_gcd(a: CPoly, b: CPoly) -> CPoly:
    """Monic greatest common divisor (the zero polynomial if both are zero)."""
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


class CLin:
    """``a0 + a1*c`` with the linearity contract enforced on multiplication."""

    __slots__ = ("a0", "a1")

    def __init__(self, a0: Scalar = 0, a1: Scalar = 0):
        self.a0 = Fraction(a0)
        self.a1 = Fraction(a1)

    @classmethod
    def from_cpoly(cls, p: CPoly) -> "CLin":
        if p.degree > 1:
            raise NonLinearCError(f"coefficient {p!r} is not linear in c")
        cs = p.cs + (Fraction(0),) * (2 - len(p.cs))
        return cls(cs[0], cs[1])

    def to_cpoly(self) -> CPoly:
        return CPoly((self.a0, self.a1))

    def __bool__(self) -> bool:
        return bool(self.a0) or bool(self.a1)

    @property
    def is_constant(self) -> bool:
        return not self.a1

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.a0 == other and not self.a1
        if isinstance(other, CPoly):
            return self.to_cpoly() == other
        if not isinstance(other, CLin):
            return NotImplemented
        return self.a0 == other.a0 and self.a1 == other.a1

    def __hash__(self) -> int:
        return hash((self.a0, self.a1))

    def _coerce(self, other) -> "CLin":
        if isinstance(other, CLin):
            return other
        if isinstance(other, (int, Fraction)):
            return CLin(other)
        if isinstance(other, CPoly):
            return CLin.from_cpoly(other)
        raise TypeError(f"cannot combine CLin with {type(other).__name__}")

    def __add__(self, other) -> "CLin":
        o = self._coerce(other)
        return CLin(self.a0 + o.a0, self.a1 + o.a1)

    __radd__ = __add__

    def __neg__(self) -> "CLin":
        return CLin(-self.a0, -self.a1)

    def __sub__(self, other) -> "CLin":
        o = self._coerce(other)
        return CLin(self.a0 - o.a0, self.a1 - o.a1)

    def __rsub__(self, other) -> "CLin":
        return self._coerce(other) - self

    def __mul__(self, other) -> "CLin":
        o = self._coerce(other)
        if self.a1 and o.a1:
            raise NonLinearCError(f"({self!r})*({o!r}) has a c^2 term")
        return CLin(self.a0 * o.a0, self.a0 * o.a1 + self.a1 * o.a0)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "CLin":
        return CLin(self.a0 / other, self.a1 / other)

    def __call__(self, c: Scalar) -> Fraction:
        return self.a0 + self.a1 * Fraction(c)

    def __repr__(self) -> str:
        if not self.a1:
            return str(self.a0)
        return f"{self.a0} + ({self.a1})*c"

    def to_json(self) -> list:
        return [fmt_rat(self.a0), fmt_rat(self.a1)]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "CLin":
        return cls(parse_rat(data[0]), parse_rat(data[1]))


class PolyM:
    """Dense univariate polynomial in ``m``, coefficients lowest degree first."""

    __slots__ = ("cs",)

    def __init__(self, cs: Iterable[Scalar] = ()):
        self.cs = _trim(Fraction(x) for x in cs)

    @classmethod
    def const(cls, x: Scalar) -> "PolyM":
        return cls([x])

    @classmethod
    def m(cls) -> "PolyM":
        return cls([0, 1])

    @classmethod
    def linear(cls, r: Scalar) -> "PolyM":
        """The factor ``m + r``."""
        return cls([r, 1])

    @classmethod
    def from_roots_product(cls, shifts: Iterable[Scalar]) -> "PolyM":
        out = cls.const(1)
        for r in shifts:
            out = out * cls.linear(r)
        return out

    @property
    def degree(self) -> int:
        return len(self.cs) - 1

    @property
    def lead(self) -> Fraction:
        return self.cs[-1] if self.cs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.cs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PolyM.const(other)
        if not isinstance(other, PolyM):
            return NotImplemented
        return self.cs == other.cs

    def __hash__(self) -> int:
        return hash(self.cs)

    def __add__(self, other) -> "PolyM":
        if isinstance(other, (int, Fraction)):
            other = PolyM.const(other)
        a, b = self.cs, other.cs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return PolyM(out)

    __radd__ = __add__

    def __neg__(self) -> "PolyM":
        return PolyM(-x for x in self.cs)

    def __sub__(self, other) -> "PolyM":
        if isinstance(other, (int, Fraction)):
            other = PolyM.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "PolyM":
        return (-self) + other

    def __mul__(self, other) -> "PolyM":
        if isinstance(other, (int, Fraction)):
            return PolyM(x * other for x in self.cs)
        if not isinstance(other, PolyM):
            return NotImplemented
        a, b = self.cs, other.cs
        if not a or not b:
            return PolyM()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return PolyM(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "PolyM":
        out = PolyM.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, m: Scalar) -> Fraction:
        acc = Fraction(0)
        for x in reversed(self.cs):
            acc = acc * m + x
        return acc

    def divmod(self, den: "PolyM") -> tuple["PolyM", "PolyM"]:
        if not den:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.cs)
        dd = den.degree
        lead = den.lead
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            q = rem[i] / lead
            if q:
                quot[i - dd] = q
                for j, y in enumerate(den.cs):
                    rem[i - dd + j] -= q * y
        return PolyM(quot), PolyM(rem[:dd] if dd > 0 else [])

    def shift(self, t: Scalar) -> "PolyM":
        """Return ``p(m + t)``."""
        out = PolyM()
        for x in reversed(self.cs):
            out = out * PolyM.linear(t) + x
        return out

    def __repr__(self) -> str:
        if not self.cs:
            return "0"
        parts = []
        for i, x in enumerate(self.cs):
            if x:
                parts.append(f"{x}" + ("" if i == 0 else (" m" if i == 1 else f" m^{i}")))
        return " + ".join(reversed(parts))

    def to_json(self) -> list:
        return [fmt_rat(x) for x in self.cs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "PolyM":
        return cls(parse_rat(x) for x in data)


class CLinPolyM:
    """``p0(m) + p1(m)*c``; the ``c``-linearity contract of :class:`CLin` applies."""

    __slots__ = ("p0", "p1")

    def __init__(self, p0: PolyM | None = None, p1: PolyM | None = None):
        self.p0 = p0 if p0 is not None else PolyM()
        self.p1 = p1 if p1 is not None else PolyM()

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyM):
            return self.p0 == other and not self.p1
        if not isinstance(other, CLinPolyM):
            return NotImplemented
        return self.p0 == other.p0 and self.p1 == other.p1

    def __hash__(self) -> int:
        return hash((self.p0, self.p1))

    def _coerce(self, other) -> "CLinPolyM":
        if isinstance(other, CLinPolyM):
            return other
        if isinstance(other, PolyM):
            return CLinPolyM(other)
        if isinstance(other, (int, Fraction)):
            return CLinPolyM(PolyM.const(other))
        raise TypeError(f"cannot combine CLinPolyM with {type(other).__name__}")

    def __add__(self, other) -> "CLinPolyM":
        o = self._coerce(other)
        return CLinPolyM(self.p0 + o.p0, self.p1 + o.p1)

    __radd__ = __add__

    def __neg__(self) -> "CLinPolyM":
        return CLinPolyM(-self.p0, -self.p1)

    def __sub__(self, other) -> "CLinPolyM":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "CLinPolyM":
        o = self._coerce(other)
        if self.p1 and o.p1:
            raise NonLinearCError("product of two c-dependent polynomials")
        return CLinPolyM(self.p0 * o.p0, self.p0 * o.p1 + self.p1 * o.p0)

    __rmul__ = __mul__

    def __call__(self, m: Scalar) -> CLin:
        return CLin(self.p0(m), self.p1(m))

    def __repr__(self) -> str:
        return f"({self.p0!r}) + ({self.p1!r})*c"

    def to_json(self) -> dict:
        return {"c0": self.p0.to_json(), "c1": self.p1.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "CLinPolyM":
        return cls(PolyM.from_json(data["c0"]), PolyM.from_json(data["c1"]))


def poly_interpolate(samples: Sequence[tuple[int, Scalar]]) -> PolyM:
    """Unique polynomial of degree < len(samples) through ``samples`` (Newton form)."""
    nodes = [Fraction(x) for x, _ in samples]
    if len(set(nodes)) != len(nodes):
        raise ValueError("interpolation nodes must be pairwise distinct")
    coef = [Fraction(y) for _, y in samples]
    n = len(nodes)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (nodes[i] - nodes[i - j])
    out = PolyM()
    for i in range(n - 1, -1, -1):
        out = out * PolyM.linear(-nodes[i]) + coef[i]
    return out


def clin_interpolate(samples: Sequence[tuple[int, CLin]]) -> CLinPolyM:
    p0 = poly_interpolate([(x, y.a0) for x, y in samples])
    p1 = poly_interpolate([(x, y.a1) for x, y in samples])
    return CLinPolyM(p0, p1)


def poly_divexact(num: PolyM, den: PolyM) -> PolyM:
    """Quotient of an exact division; raises :class:`InexactDivisionError` otherwise."""
    q, r = num.divmod(den)
    if r:
        raise InexactDivisionError(f"remainder {r!r} dividing by {den!r}")
    return q
