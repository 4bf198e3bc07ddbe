"""Dense exact rational matrices and the spectral operations built on them.

Dimensions here are desk scale (at most ~10), so everything is a plain dense
Gaussian-elimination implementation over `fractions.Fraction`. Characteristic
polynomials come from the Faddeev-LeVerrier recursion, minimal polynomials
from the first linear dependence among matrix powers, and spectral projectors
from polynomial interpolation on the minimal polynomial (h = 1 at the chosen
eigenvalue, h = 0 on the complementary factor).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

from ..errors import (
    NonSquareError,
    NonSemisimpleAtQError,
    NotAnEigenvalueError,
    SingularMatrixError,
)
from .qpoly import QPoly, _frac

Scalar = Union[int, Fraction]
Vector = tuple[Fraction, ...]


# -- vector helpers ------------------------------------------------------------

def vector(xs: Iterable[Scalar]) -> Vector:
    return tuple(_frac(x) for x in xs)


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))

def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))

def vec_scale(u: Vector, c: Scalar) -> Vector:
    c = _frac(c)
    return tuple(a * c for a in u)

def dot(u: Vector, v: Vector) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))

def is_zero_vector(u: Vector) -> bool:
    return all(a == 0 for a in u)


def primitive_vector(u: Vector) -> Vector:
    """Scale by a positive rational so entries are coprime integers.

    Preserves direction, so it is the canonical representative of a ray.
    """
    den = 1
    for a in u:
        den = den * a.denominator // gcd(den, a.denominator)
    ints = [int(a * den) for a in u]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        return tuple(Fraction(0) for _ in u)
    return tuple(Fraction(v, g) for v in ints)


class QMatrix:
    """An immutable rows x cols matrix of exact rationals, row major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[Scalar]):
        entries = tuple(_frac(e) for e in entries)
        if rows <= 0 or cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match dimensions")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("QMatrix is immutable")

    # -- constructors -----------------------------------------------------------

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Scalar]]) -> "QMatrix":
        r = len(rows)
        if r == 0:
            raise ValueError("no rows")
        c = len(rows[0])
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return QMatrix(r, c, [x for row in rows for x in row])

    @staticmethod
    def identity(n: int) -> "QMatrix":
        return QMatrix(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @staticmethod
    def zeros(rows: int, cols: int) -> "QMatrix":
        return QMatrix(rows, cols, [0] * (rows * cols))

    @staticmethod
    def from_columns(cols: Sequence[Vector]) -> "QMatrix":
        n = len(cols[0])
        return QMatrix(n, len(cols), [cols[j][i] for i in range(n) for j in range(len(cols))])

    # -- access -------------------------------------------------------------------

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_integer(self) -> bool:
        return all(e.denominator == 1 for e in self.entries)

    def __eq__(self, other) -> bool:
        return (isinstance(other, QMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"QMatrix({self.to_rows()!r})"

    # -- arithmetic ------------------------------------------------------------------

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return QMatrix(self.rows, self.cols,
                       [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return QMatrix(self.rows, self.cols,
                       [a - b for a, b in zip(self.entries, other.entries)])

    def scale(self, c: Scalar) -> "QMatrix":
        c = _frac(c)
        return QMatrix(self.rows, self.cols, [c * e for e in self.entries])

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        return self.__mul__(other)

    def __mul__(self, other) -> "QMatrix":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        out = [Fraction(0)] * (self.rows * other.cols)
        for i in range(self.rows):
            ro = i * self.cols
            for k in range(self.cols):
                a = self.entries[ro + k]
                if a:
                    co = k * other.cols
                    oo = i * other.cols
                    for j in range(other.cols):
                        out[oo + j] += a * other.entries[co + j]
        return QMatrix(self.rows, other.cols, out)

    __rmul__ = __mul__

    def apply(self, v: Sequence[Scalar]) -> Vector:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        v = vector(v)
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows,
                       [self.entry(i, j) for j in range(self.cols) for i in range(self.rows)])

    def trace(self) -> Fraction:
        if not self.is_square:
            raise NonSquareError("trace of a non-square matrix")
        return sum((self.entry(i, i) for i in range(self.rows)), Fraction(0))

    def max_abs_entry(self) -> Fraction:
        return max(abs(e) for e in self.entries)

    # -- elimination-based operations ---------------------------------------------

    def _echelon(self) -> tuple[list[list[Fraction]], list[int]]:
        """Row echelon form (fully reduced) and pivot column indices."""
        m = self.to_rows()
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            pivot = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if pivot is None:
                continue
            m[r], m[pivot] = m[pivot], m[r]
            pv = m[r][c]
            m[r] = [x / pv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self._echelon()[1])

    def det(self) -> Fraction:
        if not self.is_square:
            raise NonSquareError("determinant of a non-square matrix")
        m = self.to_rows()
        n = self.rows
        det = Fraction(1)
        for c in range(n):
            pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
            if pivot is None:
                return Fraction(0)
            if pivot != c:
                m[c], m[pivot] = m[pivot], m[c]
                det = -det
            det *= m[c][c]
            inv = 1 / m[c][c]
            for i in range(c + 1, n):
                if m[i][c] != 0:
                    f = m[i][c] * inv
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return det

    def inverse(self) -> "QMatrix":
        if not self.is_square:
            raise NonSquareError("inverse of a non-square matrix")
        n = self.rows
        aug = [list(self.row(i)) + [Fraction(1 if i == j else 0) for j in range(n)]
               for i in range(n)]
        r = 0
        for c in range(n):
            pivot = next((i for i in range(r, n) if aug[i][c] != 0), None)
            if pivot is None:
                raise SingularMatrixError("matrix is singular")
            aug[r], aug[pivot] = aug[pivot], aug[r]
            pv = aug[r][c]
            aug[r] = [x / pv for x in aug[r]]
            for i in range(n):
                if i != r and aug[i][c] != 0:
                    f = aug[i][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
            r += 1
        return QMatrix(n, n, [aug[i][n + j] for i in range(n) for j in range(n)])

    def pow(self, k: int) -> "QMatrix":
        if not self.is_square:
            raise NonSquareError("power of a non-square matrix")
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = QMatrix.identity(self.rows)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def solve(self, b: Sequence[Scalar]):
        """One exact solution of self x = b, or None if inconsistent."""
        if len(b) != self.rows:
            raise ValueError("rhs length mismatch")
        aug = QMatrix(self.rows, self.cols + 1,
                      [x for i in range(self.rows) for x in (*self.row(i), _frac(b[i]))])
        m, pivots = aug._echelon()
        if self.cols in pivots:
            return None
        x = [Fraction(0)] * self.cols
        for r, c in enumerate(pivots):
            x[c] = m[r][self.cols]
        return tuple(x)

    def nullspace(self) -> list[Vector]:
        m, pivots = self._echelon()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            v = [Fraction(0)] * self.cols
            v[fc] = Fraction(1)
            for r, c in enumerate(pivots):
                v[c] = -m[r][fc]
            basis.append(tuple(v))
        return basis

# -- spectral operations ------------------------------------------------------------


def char_poly(m: QMatrix) -> QPoly:
    """det(tI - m) by the Faddeev-LeVerrier recursion; monic, exact."""
    if not m.is_square:
        raise NonSquareError("characteristic polynomial of a non-square matrix")
    n = m.rows
    coeffs = [Fraction(1)]  # c_0 = 1, descending powers
    mk = m
    for k in range(1, n + 1):
        ck = -mk.trace() / k
        coeffs.append(ck)
        if k < n:
            mk = m * (mk + QMatrix.identity(n).scale(ck))
    return QPoly(list(reversed(coeffs)))


def min_poly(m: QMatrix) -> QPoly:
    """Monic annihilating polynomial of least degree.

    Found as the first linear dependence among I, m, m^2, ... via exact
    elimination on flattened powers.
    """
    if not m.is_square:
        raise NonSquareError("minimal polynomial of a non-square matrix")
    n = m.rows
    powers = [QMatrix.identity(n)]
    for k in range(1, n + 1):
        powers.append(powers[-1] * m)
        cols = [p.entries for p in powers[:-1]]
        mat = QMatrix(n * n, k, [cols[j][i] for i in range(n * n) for j in range(k)])
        sol = mat.solve(powers[-1].entries)
        if sol is not None:
            return QPoly(list(-c for c in sol) + [Fraction(1)])
    raise AssertionError("Cayley-Hamilton violated")  # pragma: no cover


def evaluate_poly_at_matrix(p: QPoly, m: QMatrix) -> QMatrix:
    if not m.is_square:
        raise NonSquareError("polynomial of a non-square matrix")
    out = QMatrix.zeros(m.rows, m.rows)
    for c in reversed(p.coeffs):
        out = out * m + QMatrix.identity(m.rows).scale(c)
    return out


def spectral_projector(m: QMatrix, q: Scalar) -> QMatrix:
    """Exact projector onto the q-eigenspace along the complementary factor.

    With mu = (t - q) g and g(q) != 0, the projector is g(m) / g(q): it is 1
    at q and 0 at every other root of mu, so P^2 = P, mP = Pm = qP, and P
    restricted to the q-eigenspace is the identity.
    """
    q = _frac(q)
    mu = min_poly(m)
    if mu(q) != 0:
        raise NotAnEigenvalueError(f"{q} is not an eigenvalue")
    g = mu.exact_div(QPoly.linear_root(q))
    gq = g(q)
    if gq == 0:
        raise NonSemisimpleAtQError(
            f"eigenvalue {q} appears with a nontrivial Jordan block")
    return evaluate_poly_at_matrix(g, m).scale(1 / gq)
