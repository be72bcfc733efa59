"""Exact rational dense linear algebra.

Everything downstream (matroid ranks, Chow-ring reductions, bilinear-form
inertia) runs through this module, so the contract is strict: values are
``fractions.Fraction`` (always stored canonically reduced, denominator
positive), no floating point appears anywhere, and the answers are exact.

The matrix type is immutable after construction; all operations are pure
functions, so values can be shared freely between threads.

Algorithms
----------
* ``rref`` - Gauss-Jordan over Q.  Row scaling does not change the reduced
  echelon form, so rows are pre-cleared to integers where that helps.
* ``signature`` - symmetric congruence elimination with diagonal pivots,
  falling back to the 2x2 block [[0,a],[a,0]] (one positive, one negative
  eigenvalue) when the active diagonal vanishes.  Sylvester's law of
  inertia makes the pivot order irrelevant.
* ``is_positive_definite`` - Sylvester's criterion on the leading principal
  minors, computed fraction-free after symmetric integer scaling.

Dimensions here are desk scale (a few hundred); the dense representation
is deliberate.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import backend

Rational = Fraction


def rational_from_string(s) -> Fraction:
    """Parse the exchange format: a decimal integer or a "p/q" string."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise TypeError(f"cannot interpret {s!r} as a rational")


def rational_to_string(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Matrix:
    """Dense exact-rational matrix.

    ``rows`` and ``cols`` are counts; entries live in a tuple of row
    tuples of Fractions.  Zero-row and zero-column shapes are legal (they
    show up as empty kernel bases and empty Lefschetz products).
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        data = tuple(tuple(rational_from_string(x) for x in row) for row in entries)
        if data:
            widths = {len(r) for r in data}
            if len(widths) != 1:
                raise ValueError("ragged rows")
            (width,) = widths
            if cols is not None and cols != width:
                raise ValueError("cols does not match row width")
            cols = width
        elif cols is None:
            cols = 0
        self.data = data
        self.rows = len(data)
        self.cols = cols

    # -- constructors ------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def diagonal(cls, diag: Sequence) -> "Matrix":
        n = len(diag)
        return cls([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        if not columns:
            if rows is None:
                raise ValueError("need row count for an empty column list")
            return cls.zero(rows, 0)
        n = len(columns[0])
        return cls([[columns[j][i] for j in range(len(columns))] for i in range(n)])

    # -- access ------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def to_lists(self):
        return [list(r) for r in self.data]

    # -- algebra -----------------------------------------------------

    def transpose(self) -> "Matrix":
        return Matrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} * {other.shape}")
            ot = other.transpose().data
            return Matrix(
                [[_dot(r, c) for c in ot] for r in self.data], cols=other.cols
            )
        f = rational_from_string(other)
        return Matrix([[x * f for x in r] for r in self.data], cols=self.cols)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
            cols=self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-1) * other

    def __neg__(self) -> "Matrix":
        return (-1) * self

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.shape, self.data))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self.data[i][j] == self.data[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def __repr__(self):
        body = "; ".join(
            " ".join(rational_to_string(x) for x in row) for row in self.data
        )
        return f"Matrix({self.rows}x{self.cols}: {body})"


def _dot(a, b):
    s = Fraction(0)
    for x, y in zip(a, b):
        if x and y:
            s += x * y
    return s


# ---------------------------------------------------------------------------
# row reduction, rank, kernel


def rref(m: Matrix):
    """Reduced row echelon form.

    Returns ``(R, pivot_cols)``; the row space is preserved and R is the
    unique RREF of it.
    """
    rows = [list(r) for r in m.data]
    red, piv = backend.rref_frac(rows)
    return Matrix(red, cols=m.cols), tuple(piv)


def rank(m: Matrix) -> int:
    rows = _int_rows(m)
    return backend.rank_int(rows)


def kernel_basis(m: Matrix) -> Matrix:
    """Basis of the right null space, as matrix columns.

    Column count equals ``cols - rank``; the basis vectors are the
    standard ones read off the RREF (free variable set to 1, pivot
    variables solved).
    """
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    cols = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red.data[r][f]
        cols.append(v)
    return Matrix.from_columns(cols, rows=m.cols)


def det(m: Matrix) -> Fraction:
    """Determinant via fraction-free elimination on the cleared matrix."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    rows, scale = _int_rows_scaled(m)
    # full pivoting Bareiss with sign tracking
    sign = 1
    prev = 1
    for k in range(n):
        pr = None
        for i in range(k, n):
            if rows[i][k] != 0:
                pr = i
                break
        if pr is None:
            return Fraction(0)
        if pr != k:
            rows[k], rows[pr] = rows[pr], rows[k]
            sign = -sign
        piv = rows[k][k]
        for i in range(k + 1, n):
            rowi = rows[i]
            f = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * piv - f * rows[k][j]) // prev
        prev = piv
    return Fraction(sign * prev) / scale


# ---------------------------------------------------------------------------
# symmetric forms


def signature(m: Matrix):
    """Exact inertia (n_pos, n_neg, n_zero) of a symmetric matrix.

    Fast path: symmetric integer scaling D*M*D (a congruence, so inertia
    is preserved) followed by fraction-free leading minors and Jacobi's
    sign-change rule.  Any zero minor falls back to the general congruence
    elimination, which handles every case.
    """
    _require_symmetric(m)
    n = m.rows
    if n == 0:
        return (0, 0, 0)
    rows = _sym_int_rows(m)
    minors, completed = backend.bareiss_minors_int([r[:] for r in rows])
    if completed:
        npos = nneg = 0
        prev = 1
        for d in minors:
            if (d > 0) == (prev > 0):
                npos += 1
            else:
                nneg += 1
            prev = d
        return (npos, nneg, 0)
    frac_rows = [[Fraction(x) for x in r] for r in rows]
    return backend.signature_frac(frac_rows)


def is_positive_definite(m: Matrix) -> bool:
    """True iff the symmetric matrix has inertia (n, 0, 0)."""
    _require_symmetric(m)
    if m.rows == 0:
        return True
    rows = _sym_int_rows(m)
    return backend.is_pd_int(rows)


def restrict_form(g: Matrix, basis: Matrix) -> Matrix:
    """Pull a symmetric form back along a subspace basis: basis^T g basis."""
    _require_symmetric(g)
    if basis.rows != g.rows:
        raise ValueError(
            f"basis has {basis.rows} rows but the form acts on {g.rows} coordinates"
        )
    bt = basis.transpose()
    out = bt * (g * basis)
    # exact symmetry is guaranteed; keep the check cheap but real
    if not out.is_symmetric():
        raise ArithmeticError("restricted form lost symmetry")
    return out


def _require_symmetric(m: Matrix):
    if not m.is_symmetric():
        raise ValueError("matrix is not symmetric")


# ---------------------------------------------------------------------------
# integer normalizations


def _int_rows(m: Matrix):
    """Integer rows with the same row space (per-row denominator clearing
    and gcd stripping)."""
    out = []
    for row in m.data:
        l = 1
        for x in row:
            l = l * x.denominator // gcd(l, x.denominator)
        ints = [int(x * l) for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _int_rows_scaled(m: Matrix):
    """Integer rows plus the product of the row scalings (for det)."""
    out = []
    scale = 1
    for row in m.data:
        l = 1
        for x in row:
            l = l * x.denominator // gcd(l, x.denominator)
        out.append([int(x * l) for x in row])
        scale *= l
    return out, Fraction(scale)


def _sym_int_rows(m: Matrix):
    """Integer congruence scaling of a symmetric matrix: D*M*D with D the
    per-row denominator lcms.  Inertia is invariant."""
    n = m.rows
    d = []
    for row in m.data:
        l = 1
        for x in row:
            l = l * x.denominator // gcd(l, x.denominator)
        d.append(l)
    return [
        [int(m.data[i][j] * d[i] * d[j]) for j in range(n)] for i in range(n)
    ]
