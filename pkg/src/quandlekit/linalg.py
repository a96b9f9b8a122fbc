"""Small dense vectors and matrices over Q(sqrt5), all operations exact.

Sizes 3 and 4 are what the polytope and tessellation constructions need; the
classes are generic over the dimension.  Equality is componentwise and exact,
so vectors and matrices can be dictionary keys.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from fractions import Fraction

from .field import ONE, ZERO, QuadraticNumber


def _as_qn(x) -> QuadraticNumber:
    if isinstance(x, QuadraticNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadraticNumber(x)
    raise TypeError(f"expected a scalar, got {type(x).__name__}")


class Vector:
    """A fixed-length column vector of QuadraticNumbers."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable) -> None:
        object.__setattr__(self, "entries", tuple(_as_qn(x) for x in entries))

    def __setattr__(self, name, value):
        raise AttributeError("Vector is immutable")

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i: int) -> QuadraticNumber:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __add__(self, other: "Vector") -> "Vector":
        return Vector(a + b for a, b in zip(self.entries, other.entries, strict=True))

    def __sub__(self, other: "Vector") -> "Vector":
        return Vector(a - b for a, b in zip(self.entries, other.entries, strict=True))

    def __neg__(self) -> "Vector":
        return Vector(-a for a in self.entries)

    def scale(self, c) -> "Vector":
        c = _as_qn(c)
        return Vector(c * a for a in self.entries)

    def dot(self, other: "Vector") -> QuadraticNumber:
        out = ZERO
        for a, b in zip(self.entries, other.entries, strict=True):
            out = out + a * b
        return out

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __str__(self):
        return "(" + ", ".join(str(a) for a in self.entries) + ")"

    def __repr__(self):
        return f"Vector({list(self.entries)!r})"


class Matrix:
    """A square matrix of QuadraticNumbers."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]) -> None:
        rs = tuple(tuple(_as_qn(x) for x in row) for row in rows)
        n = len(rs)
        if any(len(r) != n for r in rs):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rs)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> QuadraticNumber:
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other):
        if isinstance(other, Matrix):
            n = self.size
            if other.size != n:
                raise ValueError("size mismatch")
            cols = list(zip(*other.rows))
            return Matrix(
                [
                    [sum((a * b for a, b in zip(row, col)), ZERO) for col in cols]
                    for row in self.rows
                ]
            )
        if isinstance(other, Vector):
            return self.apply(other)
        return NotImplemented

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.size:
            raise ValueError("size mismatch")
        return Vector(
            sum((a * b for a, b in zip(row, v.entries)), ZERO) for row in self.rows
        )

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.rows))

    def det(self) -> QuadraticNumber:
        """Determinant by fraction-free Laplace expansion (n <= 4 in practice)."""
        n = self.size
        if n == 1:
            return self.rows[0][0]
        out = ZERO
        sign = ONE
        for j in range(n):
            a = self.rows[0][j]
            if a:
                minor = Matrix(
                    [
                        [row[k] for k in range(n) if k != j]
                        for row in self.rows[1:]
                    ]
                )
                out = out + sign * a * minor.det()
            sign = -sign
        return out

    def inverse(self) -> "Matrix":
        """Exact inverse by Gauss-Jordan elimination."""
        n = self.size
        work = [list(row) + [ONE if i == j else ZERO for j in range(n)]
                for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if work[r][col]), None)
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            work[col], work[pivot] = work[pivot], work[col]
            inv = work[col][col].inverse()
            work[col] = [x * inv for x in work[col]]
            for r in range(n):
                if r != col and work[r][col]:
                    f = work[r][col]
                    work[r] = [x - f * y for x, y in zip(work[r], work[col])]
        return Matrix(row[n:] for row in work)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in row) for row in self.rows) + "]"

    def __repr__(self):
        return f"Matrix({[[repr(x) for x in row] for row in self.rows]})"


def solve_columns(frame: Sequence[Vector], images: Sequence[Vector]) -> Matrix:
    """The unique matrix sending frame[i] to images[i] for a full frame.

    Raises ZeroDivisionError when the frame columns are linearly dependent.
    """
    f = Matrix(zip(*[v.entries for v in frame]))
    g = Matrix(zip(*[v.entries for v in images]))
    return g * f.inverse()


def matrix_order(a: Matrix, max_order: int) -> int | None:
    """Smallest k <= max_order with a^k = I, or None if there is none."""
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    ident = Matrix.identity(a.size)
    power = a
    for k in range(1, max_order + 1):
        if power == ident:
            return k
        power = power * a
    return None


def is_special_orthogonal(a: Matrix) -> bool:
    """True iff a^T a = I and det a = 1."""
    return a.transpose() * a == Matrix.identity(a.size) and a.det() == ONE
