"""Exact dense linear algebra: ranks, kernels, membership, canonical subspaces.

Everything is plain Gaussian elimination over an exact field.  Matrices and
subspaces are immutable; the canonical form of a subspace is the reduced row
echelon basis, so subspace equality is tuple equality.
"""

from __future__ import annotations

from .errors import DomainError
from .fields import check_same_field


class ExactMatrix:
    """Immutable dense matrix over an exact field, stored row-major."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows, ncols=None):
        rows = tuple(tuple(field(x) for x in row) for row in rows)
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise DomainError("ragged matrix")
        elif ncols is None:
            ncols = 0
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, *args):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def identity(cls, field, n):
        one, zero = field.one, field.zero
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, field, nrows, ncols):
        zero = field.zero
        return cls(field, [[zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def from_columns(cls, field, columns, nrows=None):
        cols = [tuple(c) for c in columns]
        if cols:
            nrows = len(cols[0])
        elif nrows is None:
            nrows = 0
        return cls(field, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    def transpose(self):
        return ExactMatrix(self.field, list(zip(*self.rows)) if self.rows else [], self.nrows)

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def apply(self, vec):
        """Matrix times column vector (vector given as a flat sequence)."""
        if len(vec) != self.ncols:
            raise DomainError("dimension mismatch in apply")
        F = self.field
        return tuple(
            _dot(F, row, vec) for row in self.rows
        )

    def mul(self, other):
        check_same_field(self.field, other.field)
        if self.ncols != other.nrows:
            raise DomainError("dimension mismatch in mul")
        F = self.field
        cols = other.transpose().rows
        return ExactMatrix(
            F, [[_dot(F, row, col) for col in cols] for row in self.rows], other.ncols
        )

    def stack(self, other):
        check_same_field(self.field, other.field)
        if self.ncols != other.ncols:
            raise DomainError("dimension mismatch in stack")
        return ExactMatrix(self.field, self.rows + other.rows, self.ncols)

    def is_zero(self):
        F = self.field
        return all(F.is_zero(x) for row in self.rows for x in row)

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.field == other.field
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.ncols, self.rows))

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols} over {self.field!r})"


def _dot(field, u, v):
    acc = field.zero
    for a, b in zip(u, v):
        if not field.is_zero(a) and not field.is_zero(b):
            acc = field.add(acc, field.mul(a, b))
    return acc


def _rref_rows(field, rows, width):
    """Reduced row echelon form of a list of row tuples.

    Returns (nonzero rows, pivot column indices).  Rows are pivot-normalized
    and fully reduced, so the output is the canonical basis of the row space.
    """
    work = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(width):
        pivot_row = None
        for i in range(r, len(work)):
            if not field.is_zero(work[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = field.inv(work[r][c])
        work[r] = [field.mul(inv, x) for x in work[r]]
        for i in range(len(work)):
            if i != r and not field.is_zero(work[i][c]):
                f = work[i][c]
                work[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return [tuple(row) for row in work[:r]], tuple(pivots)


def rref(matrix: ExactMatrix):
    rows, pivots = _rref_rows(matrix.field, matrix.rows, matrix.ncols)
    return ExactMatrix(matrix.field, rows, matrix.ncols), pivots


def rank(matrix: ExactMatrix) -> int:
    return len(_rref_rows(matrix.field, matrix.rows, matrix.ncols)[0])


def kernel_basis(matrix: ExactMatrix) -> ExactMatrix:
    """Canonical basis of the right kernel, one basis vector per column."""
    F = matrix.field
    rows, pivots = _rref_rows(F, matrix.rows, matrix.ncols)
    pivot_set = set(pivots)
    free = [c for c in range(matrix.ncols) if c not in pivot_set]
    vectors = []
    for c in free:
        v = [F.zero] * matrix.ncols
        v[c] = F.one
        for i, p in enumerate(pivots):
            v[p] = F.neg(rows[i][c])
        vectors.append(tuple(v))
    # Canonicalize so equal kernels give equal matrices.
    canon, _ = _rref_rows(F, vectors, matrix.ncols)
    return ExactMatrix.from_columns(F, canon, matrix.ncols)


def solve_membership(vector, matrix: ExactMatrix):
    """Coefficients expressing ``vector`` in the column span of ``matrix``.

    Returns the coefficient tuple (free coordinates set to zero) or None
    when the vector is outside the span.
    """
    F = matrix.field
    vec = tuple(F(x) for x in vector)
    if len(vec) != matrix.nrows:
        raise DomainError("height mismatch in solve_membership")
    augmented = [row + (vec[i],) for i, row in enumerate(matrix.rows)]
    rows, pivots = _rref_rows(F, augmented, matrix.ncols + 1)
    if matrix.ncols in pivots:
        return None
    coeffs = [F.zero] * matrix.ncols
    for i, p in enumerate(pivots):
        coeffs[p] = rows[i][matrix.ncols]
    return tuple(coeffs)


class Subspace:
    """A subspace of k^n held as its canonical (RREF) row basis."""

    __slots__ = ("field", "ambient", "rows", "_conditions")

    def __init__(self, field, ambient: int, rows):
        canon, _ = _rref_rows(field, rows, ambient)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "rows", tuple(canon))
        object.__setattr__(self, "_conditions", None)

    def __setattr__(self, *args):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient, [])

    @classmethod
    def full(cls, field, ambient):
        return cls(field, ambient, ExactMatrix.identity(field, ambient).rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def matrix(self) -> ExactMatrix:
        return ExactMatrix(self.field, self.rows, self.ambient)

    def reduce(self, vec):
        """Residual of ``vec`` after reduction by the canonical basis."""
        F = self.field
        v = [F(x) for x in vec]
        for row in self.rows:
            pivot = next(i for i, x in enumerate(row) if not F.is_zero(x))
            if not F.is_zero(v[pivot]):
                f = v[pivot]
                v = [F.sub(x, F.mul(f, y)) for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, vec) -> bool:
        F = self.field
        return all(F.is_zero(x) for x in self.reduce(vec))

    def contains_space(self, other) -> bool:
        return all(self.contains(r) for r in other.rows)

    def conditions(self) -> ExactMatrix:
        """Matrix C with ``v in self  iff  C v = 0``."""
        if self._conditions is None:
            ker = kernel_basis(self.matrix())
            object.__setattr__(self, "_conditions", ker.transpose())
        return self._conditions

    def sum(self, other):
        _check_compatible(self, other)
        return Subspace(self.field, self.ambient, self.rows + other.rows)

    def intersect(self, other):
        _check_compatible(self, other)
        stacked = self.conditions().stack(other.conditions())
        ker = kernel_basis(stacked)
        return Subspace(self.field, self.ambient, ker.transpose().rows)

    def image_under(self, matrix: ExactMatrix):
        """Image subspace under a linear map (columns index this ambient)."""
        if matrix.ncols != self.ambient:
            raise DomainError("dimension mismatch in image_under")
        return Subspace(matrix.field, matrix.nrows, [matrix.apply(r) for r in self.rows])

    def preimage_under(self, matrix: ExactMatrix):
        """Preimage { x : matrix @ x in self } as a subspace of the domain."""
        if matrix.nrows != self.ambient:
            raise DomainError("dimension mismatch in preimage_under")
        ker = kernel_basis(self.conditions().mul(matrix))
        return Subspace(matrix.field, matrix.ncols, ker.transpose().rows)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient == other.ambient
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.ambient, self.rows))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of k^{self.ambient})"


def _check_compatible(a: Subspace, b: Subspace):
    check_same_field(a.field, b.field)
    if a.ambient != b.ambient:
        raise DomainError("subspaces in different ambients")


def kernel_subspace(matrix: ExactMatrix) -> Subspace:
    ker = kernel_basis(matrix)
    return Subspace(matrix.field, matrix.ncols, ker.transpose().rows)
