"""Exact arithmetic in the quadratic field Q(sqrt5) and the ring Z[w].

Every coordinate and matrix entry used by the polytope constructions lives in
Q(sqrt5); the triangular-lattice computations live in the Eisenstein integers
Z[w] with w a primitive sixth root of unity.  Both are implemented with exact
integer arithmetic only — no floats anywhere in this module.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction

_RationalLike = int | Fraction


def _as_fraction(x: _RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class QuadraticNumber:
    """An element p + q*sqrt5 of Q(sqrt5), with p, q reduced rationals.

    >>> PHI * PHI == PHI + 1
    True
    >>> SQRT5 * SQRT5
    QuadraticNumber(5)
    """

    __slots__ = ("p", "q")

    def __init__(self, p: _RationalLike = 0, q: _RationalLike = 0) -> None:
        object.__setattr__(self, "p", _as_fraction(p))
        object.__setattr__(self, "q", _as_fraction(q))

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticNumber is immutable")

    @staticmethod
    def _coerce(x) -> "QuadraticNumber | None":
        if isinstance(x, QuadraticNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadraticNumber(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(self.p - o.p, self.q - o.q)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(
            self.p * o.p + 5 * self.q * o.q, self.p * o.q + self.q * o.p
        )

    __rmul__ = __mul__

    def __neg__(self):
        return QuadraticNumber(-self.p, -self.q)

    def conjugate(self) -> "QuadraticNumber":
        """The Galois conjugate p - q*sqrt5."""
        return QuadraticNumber(self.p, -self.q)

    def inverse(self) -> "QuadraticNumber":
        norm = self.p * self.p - 5 * self.q * self.q
        if norm == 0:
            raise ZeroDivisionError("inversion of zero in Q(sqrt5)")
        return QuadraticNumber(self.p / norm, -self.q / norm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        out = ONE
        for _ in range(abs(n)):
            out = out * base
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.p == o.p and self.q == o.q

    def __hash__(self):
        return hash((self.p, self.q))

    def __bool__(self):
        return self.p != 0 or self.q != 0

    def sign(self) -> int:
        """Exact sign of p + q*sqrt5 as a real number (-1, 0, or +1)."""
        p, q = self.p, self.q
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return (q > 0) - (q < 0)
        if p > 0 and q > 0:
            return 1
        if p < 0 and q < 0:
            return -1
        # opposite signs: compare p^2 against 5 q^2
        if p > 0:  # q < 0
            return 1 if p * p > 5 * q * q else -1
        return 1 if 5 * q * q > p * p else -1

    def is_positive(self) -> bool:
        return self.sign() > 0

    def __float__(self):
        return float(self.p) + float(self.q) * 5.0 ** 0.5

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        surd = "sqrt5" if abs(self.q) == 1 else f"{abs(self.q)}*sqrt5"
        if self.p == 0:
            return surd if self.q > 0 else f"-{surd}"
        op = "+" if self.q > 0 else "-"
        return f"{self.p} {op} {surd}"

    def __repr__(self):
        if self.q == 0:
            return f"QuadraticNumber({self.p})"
        return f"QuadraticNumber({self.p}, {self.q})"


ZERO = QuadraticNumber(0)
ONE = QuadraticNumber(1)
TWO = QuadraticNumber(2)
HALF = QuadraticNumber(Fraction(1, 2))
SQRT5 = QuadraticNumber(0, 1)
#: the golden ratio (1 + sqrt5)/2
PHI = QuadraticNumber(Fraction(1, 2), Fraction(1, 2))
#: its inverse, phi - 1
PHI_INV = QuadraticNumber(Fraction(-1, 2), Fraction(1, 2))


class EisensteinInteger:
    """An element a + b*w of Z[w], where w = e^{i pi/3} satisfies w^2 = w - 1.

    These are the vertices of the triangular tessellation of the plane; w acts
    as the rotation by 60 degrees about the origin.
    """

    __slots__ = ("a", "b")

    def __init__(self, a: int, b: int = 0) -> None:
        if not isinstance(a, int) or not isinstance(b, int):
            raise TypeError("EisensteinInteger components must be int")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("EisensteinInteger is immutable")

    @staticmethod
    def _coerce(x) -> "EisensteinInteger | None":
        if isinstance(x, EisensteinInteger):
            return x
        if isinstance(x, int):
            return EisensteinInteger(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return EisensteinInteger(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return EisensteinInteger(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2, and w^2 = w - 1
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.a, self.b, o.a, o.b
        return EisensteinInteger(a * c - b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def __neg__(self):
        return EisensteinInteger(-self.a, -self.b)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def key(self) -> tuple[int, int]:
        return (self.a, self.b)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        unit = "w" if abs(self.b) == 1 else f"{abs(self.b)}*w"
        if self.a == 0:
            return unit if self.b > 0 else f"-{unit}"
        op = "+" if self.b > 0 else "-"
        return f"{self.a} {op} {unit}"

    def __repr__(self):
        return f"EisensteinInteger({self.a}, {self.b})"


EIS_ZERO = EisensteinInteger(0)
EIS_ONE = EisensteinInteger(1)
OMEGA = EisensteinInteger(0, 1)
#: w^{-1} = w^5 = 1 - w
OMEGA_INV = EisensteinInteger(1, -1)


def eisenstein_rotate(center: EisensteinInteger, point: EisensteinInteger) -> EisensteinInteger:
    """Rotate ``point`` by 60 degrees about ``center``: center + w*(point - center)."""
    return center + OMEGA * (point - center)


def eisenstein_rotate_inv(center: EisensteinInteger, point: EisensteinInteger) -> EisensteinInteger:
    """Rotate ``point`` by -60 degrees about ``center``."""
    return center + OMEGA_INV * (point - center)
