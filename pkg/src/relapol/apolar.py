"""Tensors over a finite local base, their annihilators and catalecticants.

A degree-d tensor F lives in A (x) S^(d)V.  Its annihilator is computed one
degree at a time as the kernel of contraction against F; the catalecticant
at split (i, d-i) is the same contraction written as a matrix with entries
in A, whose minors cut out the rank strata.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .artinian import AlgebraElement, is_gorenstein
from .errors import DomainError, NotGorensteinError, PreconditionError
from .graded import DPOverA, PolyOverA, contract, exponents, piece_dim
from .ideals import GradedIdeal, hilbert_function
from .linalg import ExactMatrix, Subspace, kernel_subspace, rank


class TensorOverA:
    """Homogeneous degree-d element of A (x) S^(d)V."""

    __slots__ = ("algebra", "nvars", "degree", "value")

    def __init__(self, value: DPOverA, degree=None):
        if not value.is_homogeneous():
            raise DomainError("tensor must be homogeneous")
        d = value.degree() if not value.is_zero() else degree
        if d is None:
            raise DomainError("degree of the zero tensor must be given explicitly")
        if not value.is_zero() and degree is not None and degree != d:
            raise DomainError("declared degree does not match the value")
        object.__setattr__(self, "algebra", value.algebra)
        object.__setattr__(self, "nvars", value.nvars)
        object.__setattr__(self, "degree", d)
        object.__setattr__(self, "value", value)

    def __setattr__(self, *args):
        raise AttributeError("TensorOverA is immutable")

    def residue(self) -> DPOverA:
        return self.value.residue()

    def m_part(self) -> DPOverA:
        return self.value.m_part()

    def residue_nonzero(self) -> bool:
        return not self.residue().is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, TensorOverA)
            and other.degree == self.degree
            and other.value == self.value
        )

    def __hash__(self):
        return hash((self.degree, self.value))

    def __repr__(self):
        return f"TensorOverA(deg {self.degree}: {self.value})"


@dataclass(frozen=True)
class TensorReport:
    support: tuple         # residue coordinates: the point carrying the scheme
    embedding: bool


def tensor_report(coordinates) -> TensorReport:
    """Support and embedding test for an affine tensor sum a_i (x) x_i.

    The support is the residue vector; the map is an embedding exactly when
    the maximal-ideal parts of the coordinates span m/m^2.
    """
    coords = list(coordinates)
    if not coords:
        raise DomainError("empty coordinate list")
    A = coords[0].algebra
    if any(c.algebra != A for c in coords):
        raise DomainError("coordinates over different algebras")
    F = A.field
    support = tuple(c.residue() for c in coords)
    m_parts = []
    for c in coords:
        v = list(c.coeffs)
        v[A.unit_index] = F.zero
        m_parts.append(tuple(v))
    m_sq = A.maximal_ideal_power(2)
    spanned = m_sq.sum(Subspace(F, A.dim, m_parts))
    embedding = spanned.dim - m_sq.dim == len(A.maximal_ideal_indices) - m_sq.dim
    return TensorReport(support=support, embedding=embedding)


def contraction_matrix(tensor: TensorOverA, k: int) -> ExactMatrix:
    """Matrix of theta |-> theta . F from A (x) S^k V* to A (x) S^(d-k)V."""
    A, nvars, d = tensor.algebra, tensor.nvars, tensor.degree
    if not 0 <= k <= d:
        raise DomainError(f"contraction degree {k} outside [0, {d}]")
    cols = []
    for a_idx in range(A.dim):
        for mono in exponents(nvars, k):
            theta = PolyOverA(A, nvars, {(a_idx, mono): A.field.one})
            cols.append(contract(theta, tensor.value).to_vector(d - k))
    return ExactMatrix.from_columns(A.field, cols, piece_dim(A, nvars, d - k))


def annihilator(tensor: TensorOverA, cap: int) -> GradedIdeal:
    """Ann(F) degreewise: kernels of contraction up to degree d, everything above."""
    A, nvars, d = tensor.algebra, tensor.nvars, tensor.degree
    if cap < d + 1:
        raise PreconditionError(f"annihilator cap must be at least deg + 1 = {d + 1}")
    pieces = []
    for k in range(cap + 1):
        if k <= d:
            pieces.append(kernel_subspace(contraction_matrix(tensor, k)))
        else:
            pieces.append(Subspace.full(A.field, piece_dim(A, nvars, k)))
    return GradedIdeal(A, nvars, pieces)


@dataclass(frozen=True)
class DualityReport:
    values: tuple           # apolar-algebra Hilbert values up to the tensor degree
    symmetric: bool         # values read the same from both ends
    quotient_free: tuple    # per-degree freeness of the apolar pieces over A


def duality_report(tensor: TensorOverA) -> DualityReport:
    """Degreewise dimensions of the apolar algebra and their symmetry.

    Over a finite local Gorenstein base the dual pairing forces
    h(k) = h(d-k); a non-Gorenstein base is refused (the socle-pair tensor
    over k[s,t]/(s^2,s*t,t^2) is the recorded counterexample).
    """
    if not is_gorenstein(tensor.algebra):
        raise NotGorensteinError(
            "duality needs a Gorenstein base; over k[s,t]/(s^2,s*t,t^2) the "
            "gradings of the apolar algebra are genuinely asymmetric")
    d = tensor.degree
    ann = annihilator(tensor, d + 1)
    rep = hilbert_function(ann.truncate(d))
    symmetric = all(rep.values[k] == rep.values[d - k] for k in range(d + 1))
    return DualityReport(values=rep.values, symmetric=symmetric,
                         quotient_free=rep.quotient_free)


class CatalecticantOverA:
    """Matrix of contraction S^i V* -> A (x) S^(d-i)V with entries in A.

    Rows are indexed by the degree-(d-i) divided-power monomials, columns by
    the degree-i operator monomials, both in the normative graded-lex order.
    """

    __slots__ = ("algebra", "nvars", "degree", "split", "entries")

    def __init__(self, tensor: TensorOverA, i: int):
        A, nvars, d = tensor.algebra, tensor.nvars, tensor.degree
        if not 0 <= i <= d:
            raise DomainError(f"split {i} outside [0, {d}]")
        row_monos = exponents(nvars, d - i)
        col_monos = exponents(nvars, i)
        row_index = {m: r for r, m in enumerate(row_monos)}
        entries = [[A.zero() for _ in col_monos] for _ in row_monos]
        for c, mono in enumerate(col_monos):
            theta = PolyOverA(A, nvars, {(A.unit_index, mono): A.field.one})
            image = contract(theta, tensor.value)
            cols_acc = {}
            for (a_idx, exps), coeff in image.terms.items():
                r = row_index[exps]
                acc = cols_acc.get(r)
                if acc is None:
                    acc = [A.field.zero] * A.dim
                    cols_acc[r] = acc
                acc[a_idx] = A.field.add(acc[a_idx], coeff)
            for r, acc in cols_acc.items():
                entries[r][c] = A.element(acc)
        object.__setattr__(self, "algebra", A)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "degree", d)
        object.__setattr__(self, "split", i)
        object.__setattr__(self, "entries", tuple(tuple(row) for row in entries))

    def __setattr__(self, *args):
        raise AttributeError("CatalecticantOverA is immutable")

    @property
    def nrows(self):
        return len(self.entries)

    @property
    def ncols(self):
        return len(self.entries[0]) if self.entries else 0

    def residue_matrix(self) -> ExactMatrix:
        F = self.algebra.field
        return ExactMatrix(
            F, [[e.residue() for e in row] for row in self.entries], self.ncols)

    def minor(self, rows, cols) -> AlgebraElement:
        return _det([[self.entries[r][c] for c in cols] for r in rows], self.algebra)

    def __repr__(self):
        return f"Catalecticant({self.nrows}x{self.ncols} at split {self.split})"


def _det(square, algebra) -> AlgebraElement:
    n = len(square)
    if n == 0:
        return algebra.one()
    if n == 1:
        return square[0][0]
    total = algebra.zero()
    sign = 1
    for c in range(n):
        top = square[0][c]
        if top.is_zero():
            sign = -sign
            continue
        sub = [[row[j] for j in range(n) if j != c] for row in square[1:]]
        term = top * _det(sub, algebra)
        total = total + (term if sign > 0 else -term)
        sign = -sign
    return total


def catalecticant(tensor: TensorOverA, i: int) -> CatalecticantOverA:
    return CatalecticantOverA(tensor, i)


@dataclass(frozen=True)
class RankProfile:
    residue_rank: int
    minors_vanish: bool     # all (r+1)-minors are zero in A
    constant_rank: bool     # minors vanish and the residue rank equals r
    minors_checked: int


def rank_profile(tensor: TensorOverA, i: int, r: int,
                 minor_cap: int = 200_000) -> RankProfile:
    """Residue rank and exact vanishing of the (r+1)-minors over A.

    Constant rank r means the (r+1)-minors vanish identically while the rank
    mod the maximal ideal is exactly r, so some r-minor is invertible in the
    local base and the support misses the lower stratum.
    """
    cat = catalecticant(tensor, i)
    size = r + 1
    if size > min(cat.nrows, cat.ncols):
        raise DomainError(
            f"minor size {size} exceeds the {cat.nrows}x{cat.ncols} catalecticant")
    residue_rank = rank(cat.residue_matrix())
    checked = 0
    vanish = True
    for rows in itertools.combinations(range(cat.nrows), size):
        for cols in itertools.combinations(range(cat.ncols), size):
            checked += 1
            if checked > minor_cap:
                raise DomainError(f"minor enumeration exceeded the cap {minor_cap}")
            if not cat.minor(rows, cols).is_zero():
                vanish = False
                break
        if not vanish:
            break
    return RankProfile(
        residue_rank=residue_rank,
        minors_vanish=vanish,
        constant_rank=vanish and residue_rank == r,
        minors_checked=checked,
    )
