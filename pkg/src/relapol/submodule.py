"""A-submodules of free modules A (x) W, with perpendiculars and freeness tests.

A submodule is a k-subspace of A (x) W closed under the A-action, stored as a
canonical basis.  The coordinate order is algebra basis outer, W basis inner:
index = a_idx * dim(W) + w_idx.  Everything here (perp, freeness criteria,
the partial operator over the dual numbers) is a kernel computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .artinian import ArtinLocalAlgebra, is_gorenstein, socle
from .errors import DomainError, NotGorensteinError
from .linalg import ExactMatrix, Subspace, kernel_subspace


def action_matrix(algebra, wdim, element) -> ExactMatrix:
    """Matrix of multiplication by an algebra element on A (x) W."""
    F = algebra.field
    base = algebra.mult_matrix(element)  # dim x dim on A
    n = algebra.dim * wdim
    rows = []
    for a_out in range(algebra.dim):
        for w in range(wdim):
            row = [F.zero] * n
            for a_in in range(algebra.dim):
                row[a_in * wdim + w] = base.rows[a_out][a_in]
            rows.append(row)
    return ExactMatrix(F, rows, n)


def tensor_map(algebra_map: ExactMatrix, wdim: int) -> ExactMatrix:
    """Extend a k-linear map between algebra coefficient spaces to A (x) W."""
    F = algebra_map.field
    rows = []
    for a_out in range(algebra_map.nrows):
        for w in range(wdim):
            row = [F.zero] * (algebra_map.ncols * wdim)
            for a_in in range(algebra_map.ncols):
                row[a_in * wdim + w] = algebra_map.rows[a_out][a_in]
            rows.append(row)
    return ExactMatrix(F, rows, algebra_map.ncols * wdim)


class SubmoduleOfFree:
    """An A-submodule M of A (x) W held as a canonical k-basis."""

    __slots__ = ("algebra", "wdim", "space")

    def __init__(self, algebra: ArtinLocalAlgebra, wdim: int, space: Subspace,
                 validate: bool = True):
        if space.ambient != algebra.dim * wdim:
            raise DomainError("subspace ambient does not match A (x) W")
        if validate and not _closed_under_action(algebra, wdim, space):
            raise DomainError("subspace is not closed under the A-action")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "wdim", wdim)
        object.__setattr__(self, "space", space)

    def __setattr__(self, *args):
        raise AttributeError("SubmoduleOfFree is immutable")

    @property
    def dim(self) -> int:
        return self.space.dim

    def contains(self, vec) -> bool:
        return self.space.contains(vec)

    def __eq__(self, other):
        return (
            isinstance(other, SubmoduleOfFree)
            and other.algebra == self.algebra
            and other.wdim == self.wdim
            and other.space == self.space
        )

    def __hash__(self):
        return hash((self.algebra, self.wdim, self.space))

    def __repr__(self):
        return f"SubmoduleOfFree(k-dim {self.dim} in A(x)k^{self.wdim} over {self.algebra})"


def _closed_under_action(algebra, wdim, space: Subspace) -> bool:
    for i in algebra.maximal_ideal_indices:
        mat = action_matrix(algebra, wdim, algebra.basis_element(i))
        for row in space.rows:
            if not space.contains(mat.apply(row)):
                return False
    return True


def a_span(algebra, wdim, generators) -> SubmoduleOfFree:
    """Smallest A-submodule of A (x) W containing the generators.

    Generators are coefficient vectors of length dim(A) * wdim.  One pass of
    multiplication by the algebra basis suffices: products of basis elements
    land back in the basis span.
    """
    rows = []
    for g in generators:
        g = tuple(algebra.field(x) for x in g)
        for i in range(algebra.dim):
            mat = action_matrix(algebra, wdim, algebra.basis_element(i))
            rows.append(mat.apply(g))
    return SubmoduleOfFree(algebra, wdim, Subspace(algebra.field, algebra.dim * wdim, rows),
                           validate=False)


def full_module(algebra, wdim) -> SubmoduleOfFree:
    return SubmoduleOfFree(algebra, wdim,
                           Subspace.full(algebra.field, algebra.dim * wdim),
                           validate=False)


def zero_module(algebra, wdim) -> SubmoduleOfFree:
    return SubmoduleOfFree(algebra, wdim,
                           Subspace.zero(algebra.field, algebra.dim * wdim),
                           validate=False)


def _pairing_matrix(algebra, wdim, w_vec) -> ExactMatrix:
    """The A-valued pairing against a fixed w in A (x) W, as a k-linear map
    from A (x) W* (same coordinate layout) to A."""
    F = algebra.field
    rows = [[F.zero] * (algebra.dim * wdim) for _ in range(algebra.dim)]
    for a_phi in range(algebra.dim):
        for b_w in range(algebra.dim):
            prod = algebra.mul_coeffs(algebra.basis_element(a_phi).coeffs,
                                      algebra.basis_element(b_w).coeffs)
            for i in range(wdim):
                c = w_vec[b_w * wdim + i]
                if F.is_zero(c):
                    continue
                for out_idx, pc in enumerate(prod):
                    if not F.is_zero(pc):
                        rows[out_idx][a_phi * wdim + i] = F.add(
                            rows[out_idx][a_phi * wdim + i], F.mul(c, pc))
    return ExactMatrix(F, rows, algebra.dim * wdim)


def perp(module: SubmoduleOfFree) -> SubmoduleOfFree:
    """The perpendicular submodule in A (x) W* under the A-bilinear pairing."""
    A, wdim = module.algebra, module.wdim
    mats = [_pairing_matrix(A, wdim, w) for w in module.space.rows]
    if not mats:
        return full_module(A, wdim)
    stacked = reduce(lambda a, b: a.stack(b), mats)
    return SubmoduleOfFree(A, wdim, kernel_subspace(stacked), validate=False)


def m_times(module_space: Subspace, algebra, wdim) -> Subspace:
    """The subspace m * M."""
    rows = []
    for i in algebra.maximal_ideal_indices:
        mat = action_matrix(algebra, wdim, algebra.basis_element(i))
        rows.extend(mat.apply(r) for r in module_space.rows)
    return Subspace(algebra.field, algebra.dim * wdim, rows)


def m_coordinate_subspace(algebra, wdim) -> Subspace:
    """m (x) W: the coordinate subspace with zero unit block."""
    F = algebra.field
    rows = []
    n = algebra.dim * wdim
    for a_idx in algebra.maximal_ideal_indices:
        for w in range(wdim):
            row = [F.zero] * n
            row[a_idx * wdim + w] = F.one
            rows.append(row)
    return Subspace(F, n, rows)


@dataclass(frozen=True)
class FreenessReport:
    is_free: bool
    dim_socle_times_m: int          # dim_k s*M
    dim_m_cofiber: int              # dim_k M/(m*M)
    dim_meet_socle_layer: int       # dim_k (M  ^  s*(A(x)W))
    dim_fiber: int                  # dim_k M/(m*(A(x)W) ^ M)
    submodule_criterion: bool       # s*M == M ^ s*(A(x)W)


def freeness_report(module: SubmoduleOfFree, socle_element) -> FreenessReport:
    """Both freeness criteria over a Gorenstein base, evaluated exactly.

    The module criterion is dim s*M == dim M/(m*M); the submodule criterion
    is s*M == M  ^  s*(A(x)W).  The two agree for submodules of free modules.
    """
    A, wdim = module.algebra, module.wdim
    if not is_gorenstein(A):
        raise NotGorensteinError("freeness criteria require a Gorenstein base")
    if not socle(A).contains(socle_element.coeffs) or socle_element.is_zero():
        raise DomainError("second argument must span the socle")
    smat = action_matrix(A, wdim, socle_element)
    s_times_m = module.space.image_under(smat)
    mm = m_times(module.space, A, wdim)
    s_layer = Subspace.full(A.field, A.dim * wdim).image_under(smat)
    meet = module.space.intersect(s_layer)
    fiber_cut = module.space.intersect(m_coordinate_subspace(A, wdim))
    return FreenessReport(
        is_free=s_times_m.dim == module.dim - mm.dim,
        dim_socle_times_m=s_times_m.dim,
        dim_m_cofiber=module.dim - mm.dim,
        dim_meet_socle_layer=meet.dim,
        dim_fiber=module.dim - fiber_cut.dim,
        submodule_criterion=s_times_m == meet,
    )


def quotient_freeness(algebra, wdim, subspace: Subspace, socle_element):
    """Freeness of the quotient (A (x) W)/N for an A-stable subspace N.

    Returns (is_free, rank): dim s*Q == dim Q/mQ with both dims read off N.
    """
    if not is_gorenstein(algebra):
        raise NotGorensteinError("freeness criteria require a Gorenstein base")
    F = algebra.field
    n = algebra.dim * wdim
    smat = action_matrix(algebra, wdim, socle_element)
    s_full = Subspace.full(F, n).image_under(smat)
    dim_sq = s_full.sum(subspace).dim - subspace.dim
    m_full = m_coordinate_subspace(algebra, wdim)
    dim_q_mod_m = n - m_full.sum(subspace).dim
    return dim_sq == dim_q_mod_m, dim_q_mod_m


@dataclass(frozen=True)
class PartialReport:
    partial: Subspace      # the image dM inside W
    meet_w: Subspace       # M ^ W
    dims_check: bool       # dim M == dim dM + dim (M ^ W)


def partial_t(module: SubmoduleOfFree) -> PartialReport:
    """The operator d over A = k[t]/(t^2): dM = { phi' : phi + t phi' in M }."""
    A, wdim = module.algebra, module.wdim
    _require_dual_numbers(A)
    F = A.field
    t_block = ExactMatrix(F, [
        [F.one if (1 * wdim + w) == col else F.zero
         for col in range(2 * wdim)]
        for w in range(wdim)
    ], 2 * wdim)
    partial = module.space.image_under(t_block)
    unit_rows = []
    for w in range(wdim):
        row = [F.zero] * (2 * wdim)
        row[0 * wdim + w] = F.one
        unit_rows.append(row)
    w_inside = Subspace(F, 2 * wdim, unit_rows)
    meet = module.space.intersect(w_inside)
    meet_w = Subspace(F, wdim, [r[:wdim] for r in meet.rows])
    return PartialReport(
        partial=partial,
        meet_w=meet_w,
        dims_check=module.dim == partial.dim + meet_w.dim,
    )


def _require_dual_numbers(algebra):
    ok = (
        algebra.dim == 2
        and algebra.unit_index == 0
        and algebra.maximal_ideal_indices == (1,)
        and algebra.table[1][1] == ()
    )
    if not ok:
        raise DomainError("this operation needs the base k[t]/(t^2)")
