"""Exact rational linear algebra over ``fractions.Fraction``.

Dense matrices, Gauss-Jordan reduction, kernels and quotients with
canonical reduced row-echelon bases, Kronecker products and the
permutation matrices of tensor powers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import perms
from .errors import SchemaError, ShapeError

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string. Floats are rejected."""
    if isinstance(x, bool) or isinstance(x, float):
        raise SchemaError(f"inexact scalar {x!r}; use an integer or a 'p/q' string")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational {x!r}") from exc
    raise SchemaError(f"bad rational {x!r}")


def format_rat(q) -> str:
    return str(Fraction(q))


@dataclass(frozen=True)
class Matrix:
    """Dense row-major rational matrix. ``data`` is a tuple of row tuples."""

    rows: int
    cols: int
    data: tuple

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ShapeError(f"entry count does not match {self.rows}x{self.cols}")

    @classmethod
    def of(cls, nested, cols=None):
        rows = tuple(tuple(rat(x) for x in r) for r in nested)
        if cols is None:
            if not rows:
                raise ShapeError("column count of an empty matrix must be given")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, columns, rows):
        columns = [tuple(c) for c in columns]
        return cls(rows, len(columns), tuple(tuple(c[i] for c in columns) for i in range(rows)))

    @classmethod
    def unflatten(cls, vec, rows, cols):
        vec = tuple(vec)
        if len(vec) != rows * cols:
            raise ShapeError(f"vector of length {len(vec)} is not {rows}x{cols}")
        return cls(rows, cols, tuple(vec[i * cols:(i + 1) * cols] for i in range(rows)))

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def T(self):
        return Matrix(self.cols, self.rows, tuple(zip(*self.data)) if self.rows else
                      tuple(() for _ in range(self.cols)))

    def column(self, j):
        return tuple(r[j] for r in self.data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def flatten(self):
        return tuple(x for r in self.data for x in r)

    def apply(self, vec):
        vec = tuple(vec)
        if len(vec) != self.cols:
            raise ShapeError(f"vector of length {len(vec)} for {self.rows}x{self.cols} matrix")
        nz = [(j, x) for j, x in enumerate(vec) if x]
        return tuple(sum((r[j] * x for j, x in nz), ZERO) for r in self.data)

    def is_zero(self):
        return not any(x for r in self.data for x in r)

    def __matmul__(self, other):
        return matmul(self, other)

    def __add__(self, other):
        _same_shape(self, other)
        return Matrix(self.rows, self.cols,
                      tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __sub__(self, other):
        _same_shape(self, other)
        return Matrix(self.rows, self.cols,
                      tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __neg__(self):
        return Matrix(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.data))

    def scale(self, c):
        c = rat(c)
        return Matrix(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.data))

    def tolist(self):
        return [[format_rat(x) for x in r] for r in self.data]

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.tolist()})"


def _same_shape(a, b):
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    out = []
    brows = b.data
    for r in a.data:
        acc = [ZERO] * b.cols
        for k, x in enumerate(r):
            if x:
                for j, y in enumerate(brows[k]):
                    if y:
                        acc[j] += x * y
        out.append(tuple(acc))
    return Matrix(a.rows, b.cols, tuple(out))


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; row index ``(i, k) -> i * b.rows + k``."""
    out = []
    zero_row = (ZERO,) * (a.cols * b.cols)
    for ra in a.data:
        for rb in b.data:
            if not any(ra):
                out.append(zero_row)
                continue
            out.append(tuple(x * y if x and y else ZERO for x in ra for y in rb))
    return Matrix(a.rows * b.rows, a.cols * b.cols, tuple(out))


def kron_all(mats, unit_dim=1):
    out = Matrix.identity(unit_dim)
    for m in mats:
        out = kron(out, m)
    return out


def kron_vec(u, v):
    return tuple(x * y for x in u for y in v)


def direct_sum(*mats: Matrix) -> Matrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = []
    off = 0
    for m in mats:
        for r in m.data:
            out.append((ZERO,) * off + tuple(r) + (ZERO,) * (cols - off - m.cols))
        off += m.cols
    return Matrix(rows, cols, tuple(out))


def hstack(mats, rows):
    return Matrix(rows, sum(m.cols for m in mats),
                  tuple(tuple(x for m in mats for x in m.data[i]) for i in range(rows)))


def vstack(mats, cols):
    for m in mats:
        if m.cols != cols:
            raise ShapeError(f"cannot stack {m.shape} under width {cols}")
    return Matrix(sum(m.rows for m in mats), cols, tuple(r for m in mats for r in m.data))


def rref(rows, ncols):
    """Gauss-Jordan reduction of a list of row vectors.

    Returns ``(reduced_rows, pivot_columns)`` with zero rows removed.
    """
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                row = m[i]
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(a: Matrix) -> int:
    return len(rref(a.data, a.cols)[1])


def inverse(a: Matrix) -> Matrix:
    """Inverse of a square matrix; ShapeError if singular."""
    n = a.rows
    if a.cols != n:
        raise ShapeError(f"cannot invert a {a.rows}x{a.cols} matrix")
    aug = [r + tuple(ONE if i == j else ZERO for j in range(n)) for i, r in enumerate(a.data)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise ShapeError("matrix is singular")
    return Matrix(n, n, tuple(r[n:] for r in red))


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^ambient_dim with its canonical RREF basis."""

    ambient_dim: int
    basis: tuple

    @classmethod
    def span(cls, ambient_dim, vectors):
        vectors = [tuple(Fraction(x) for x in v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise ShapeError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        rows, _ = rref(vectors, ambient_dim)
        return cls(ambient_dim, tuple(rows))

    @classmethod
    def zero(cls, n):
        return cls(n, ())

    @classmethod
    def full(cls, n):
        return cls(n, Matrix.identity(n).data)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def pivots(self):
        return tuple(next(j for j, x in enumerate(b) if x) for b in self.basis)

    def coordinates(self, v):
        """Coordinates of ``v`` in the RREF basis, or None if ``v`` is outside."""
        v = tuple(v)
        coords = tuple(v[p] for p in self.pivots)
        back = [ZERO] * self.ambient_dim
        for c, b in zip(coords, self.basis):
            if c:
                for j, x in enumerate(b):
                    if x:
                        back[j] += c * x
        return coords if tuple(back) == v else None

    def __contains__(self, v):
        return self.coordinates(v) is not None

    def inclusion(self) -> Matrix:
        return Matrix.from_columns(self.basis, self.ambient_dim)

    def is_rref(self):
        piv = []
        for b in self.basis:
            nz = [j for j, x in enumerate(b) if x]
            if not nz or b[nz[0]] != 1:
                return False
            piv.append(nz[0])
        if piv != sorted(set(piv)):
            return False
        return all(b[p] == (1 if i == k else 0)
                   for k, p in enumerate(piv) for i, b in enumerate(self.basis))


def kernel(a: Matrix) -> Subspace:
    reduced, pivots = rref(a.data, a.cols)
    free = [j for j in range(a.cols) if j not in set(pivots)]
    vectors = []
    for j in free:
        v = [ZERO] * a.cols
        v[j] = ONE
        for row, p in zip(reduced, pivots):
            v[p] = -row[j]
        vectors.append(v)
    return Subspace.span(a.cols, vectors)


def quotient(ambient_dim, relations: Subspace):
    """Quotient of Q^ambient_dim by ``relations``.

    The complement is spanned by the standard vectors off the relation
    pivots.  Returns ``(quotient_dim, projection, section)``.
    """
    if relations.ambient_dim != ambient_dim:
        raise ShapeError("relations live in a different ambient space")
    pivots = relations.pivots
    free = [j for j in range(ambient_dim) if j not in set(pivots)]
    proj = []
    for j in free:
        row = [ZERO] * ambient_dim
        row[j] = ONE
        for b, p in zip(relations.basis, pivots):
            row[p] -= b[j]
        proj.append(tuple(row))
    projection = Matrix(len(free), ambient_dim, tuple(proj))
    section = Matrix.from_columns(
        [tuple(ONE if i == j else ZERO for i in range(ambient_dim)) for j in free], ambient_dim)
    return len(free), projection, section


def _word_index(w, d):
    idx = 0
    for x in w:
        idx = idx * d + x
    return idx


def perm_action_matrix(sigma, d) -> Matrix:
    """Matrix on (Q^d)^{(x)n} moving tensor factor ``j`` to position ``sigma[j]``.

    Sends e_{i_1} (x) ... (x) e_{i_n} to e_{i_{s^-1(1)}} (x) ... (x) e_{i_{s^-1(n)}},
    so ``perm_action_matrix(then(p, q)) == perm_action_matrix(q) @ perm_action_matrix(p)``.
    """
    sigma = perms.check_perm(sigma)
    n = len(sigma)
    size = d ** n
    inv = perms.inverse(sigma)
    rows = [[ZERO] * size for _ in range(size)]
    for w in product(range(d), repeat=n):
        image = tuple(w[inv[k]] for k in range(n))
        rows[_word_index(image, d)][_word_index(w, d)] = ONE
    return Matrix(size, size, tuple(tuple(r) for r in rows))
