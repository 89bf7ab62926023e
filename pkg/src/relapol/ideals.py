"""Degree-wise homogeneous ideals in A (x) Sym V* up to a degree cap.

A GradedIdeal stores one canonical subspace of A (x) S^k V* per degree
0 <= k <= cap, closed under both the A-action and multiplication by the
ambient variables.  Saturation is iterated colon by the irrelevant ideal;
each colon step drops the top degree, and results are only reported through
the degree they are certified for.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .artinian import ArtinLocalAlgebra, is_gorenstein, socle, socle_generator, trivial_algebra
from .errors import CapTooSmallError, DomainError
from .graded import (PolyOverA, exponents, multiplication_matrix, piece_dim,
                     vector_as_operator)
from .linalg import ExactMatrix, Subspace
from .submodule import quotient_freeness


class GradedIdeal:
    """Degree-indexed family of subspaces I_k of A (x) S^k V*."""

    __slots__ = ("algebra", "nvars", "cap", "pieces")

    def __init__(self, algebra, nvars, pieces, validate=False):
        pieces = tuple(pieces)
        cap = len(pieces) - 1
        if cap < 0:
            raise DomainError("a graded ideal needs at least the degree-0 piece")
        for k, piece in enumerate(pieces):
            if piece.ambient != piece_dim(algebra, nvars, k):
                raise DomainError(f"degree-{k} piece has wrong ambient dimension")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "cap", cap)
        object.__setattr__(self, "pieces", pieces)
        if validate and not self.is_closed():
            raise DomainError("pieces are not multiplicatively closed")

    def __setattr__(self, *args):
        raise AttributeError("GradedIdeal is immutable")

    @classmethod
    def zero(cls, algebra, nvars, cap):
        return cls(algebra, nvars,
                   [Subspace.zero(algebra.field, piece_dim(algebra, nvars, k))
                    for k in range(cap + 1)])

    def piece(self, k) -> Subspace:
        return self.pieces[k]

    def truncate(self, cap) -> "GradedIdeal":
        if cap > self.cap:
            raise DomainError("cannot extend an ideal by truncation")
        return GradedIdeal(self.algebra, self.nvars, self.pieces[: cap + 1])

    def is_closed(self) -> bool:
        """V* . I_k inside I_{k+1} and each piece closed under the A-action."""
        for k in range(self.cap):
            for j in range(self.nvars):
                var = PolyOverA.variable(self.algebra, self.nvars, j)
                mat = multiplication_matrix(self.algebra, self.nvars, k, var)
                for row in self.pieces[k].rows:
                    if not self.pieces[k + 1].contains(mat.apply(row)):
                        return False
        from .submodule import _closed_under_action

        for k in range(self.cap + 1):
            n_mono = len(exponents(self.nvars, k))
            if not _closed_under_action(self.algebra, n_mono, self.pieces[k]):
                return False
        return True

    def contains(self, other) -> bool:
        if other.cap > self.cap:
            raise DomainError("cap mismatch in containment check")
        return all(self.pieces[k].contains_space(other.pieces[k])
                   for k in range(other.cap + 1))

    def intersect(self, other) -> "GradedIdeal":
        cap = min(self.cap, other.cap)
        return GradedIdeal(self.algebra, self.nvars,
                           [self.pieces[k].intersect(other.pieces[k])
                            for k in range(cap + 1)])

    def sum(self, other) -> "GradedIdeal":
        cap = min(self.cap, other.cap)
        return GradedIdeal(self.algebra, self.nvars,
                           [self.pieces[k].sum(other.pieces[k]) for k in range(cap + 1)])

    def generators_of_piece(self, k):
        return [vector_as_operator(self.algebra, self.nvars, k, row)
                for row in self.pieces[k].rows]

    def __eq__(self, other):
        return (
            isinstance(other, GradedIdeal)
            and other.algebra == self.algebra
            and other.nvars == self.nvars
            and other.pieces == self.pieces
        )

    def __hash__(self):
        return hash((self.algebra, self.nvars, self.pieces))

    def __repr__(self):
        dims = ",".join(str(p.dim) for p in self.pieces)
        return f"GradedIdeal(dims [{dims}] over {self.algebra})"


def ideal_generate(algebra, nvars, generators, cap) -> GradedIdeal:
    """The ideal generated by homogeneous operators, degreewise up to cap."""
    gens = list(generators)
    for g in gens:
        if not g.is_homogeneous():
            raise DomainError(f"inhomogeneous generator {g}")
        if g.algebra != algebra or g.nvars != nvars:
            raise DomainError("generator in the wrong ring")
    pieces = []
    for k in range(cap + 1):
        rows = []
        for g in gens:
            dg = g.degree()
            if g.is_zero() or dg > k:
                continue
            mat = multiplication_matrix(algebra, nvars, k - dg, g)
            rows.extend(mat.transpose().rows)  # columns of mat = images of basis
        pieces.append(Subspace(algebra.field, piece_dim(algebra, nvars, k), rows))
    return GradedIdeal(algebra, nvars, pieces)


def ideal_from_pieces_generate(ideal: GradedIdeal, through_degree, cap) -> GradedIdeal:
    """The ideal generated by the pieces of ``ideal`` in degrees <= through_degree."""
    gens = []
    for k in range(min(through_degree, ideal.cap) + 1):
        gens.extend(ideal.generators_of_piece(k))
    return ideal_generate(ideal.algebra, ideal.nvars, gens, cap)


def colon_irrelevant(ideal: GradedIdeal) -> GradedIdeal:
    """(I : n) for the irrelevant ideal n = (a0..an); the cap drops by one."""
    if ideal.cap < 1:
        raise CapTooSmallError("colon needs cap >= 1")
    A, nvars = ideal.algebra, ideal.nvars
    pieces = []
    for k in range(ideal.cap):
        conditions = ideal.pieces[k + 1].conditions()
        stacked_rows = []
        for j in range(nvars):
            var = PolyOverA.variable(A, nvars, j)
            mat = multiplication_matrix(A, nvars, k, var)
            stacked_rows.extend(conditions.mul(mat).rows)
        dim_k = piece_dim(A, nvars, k)
        if stacked_rows:
            from .linalg import kernel_subspace

            piece = kernel_subspace(ExactMatrix(A.field, stacked_rows, dim_k))
        else:
            piece = Subspace.full(A.field, dim_k)
        pieces.append(piece)
    return GradedIdeal(A, nvars, pieces)


@dataclass(frozen=True)
class SaturationResult:
    ideal: GradedIdeal
    certified_through: int
    steps: int


def saturate(ideal: GradedIdeal) -> SaturationResult:
    """Iterate the colon until it stabilizes inside the shrinking cap."""
    if ideal.cap < 2:
        raise CapTooSmallError("saturation needs cap >= 2")
    current = ideal
    steps = 0
    while current.cap >= 1:
        nxt = colon_irrelevant(current)
        if all(nxt.pieces[k] == current.pieces[k] for k in range(nxt.cap + 1)):
            return SaturationResult(ideal=current, certified_through=nxt.cap, steps=steps)
        current = nxt
        steps += 1
    raise CapTooSmallError("saturation did not stabilize before cap exhaustion")


@dataclass(frozen=True)
class HilbertReport:
    values: tuple                 # h(k) = dim_k (A (x) S^k / I_k)
    quotient_free: tuple          # per degree: (is_free, rank) or None
    def value(self, k):
        return self.values[k]


def hilbert_function(ideal: GradedIdeal) -> HilbertReport:
    """Exact k-dimensions of the quotient plus per-degree A-freeness flags."""
    A, nvars = ideal.algebra, ideal.nvars
    values = tuple(piece_dim(A, nvars, k) - ideal.pieces[k].dim
                   for k in range(ideal.cap + 1))
    flags = []
    gor = is_gorenstein(A)
    s = socle_generator(A) if gor else None
    for k in range(ideal.cap + 1):
        if not gor:
            flags.append(None)
            continue
        n_mono = len(exponents(nvars, k))
        flags.append(quotient_freeness(A, n_mono, ideal.pieces[k], s))
    return HilbertReport(values=values, quotient_free=tuple(flags))


def special_fiber(ideal: GradedIdeal) -> GradedIdeal:
    """I mod m.S: the ideal of the special fiber, over the base field."""
    A, nvars = ideal.algebra, ideal.nvars
    F = A.field
    triv = trivial_algebra(F)
    pieces = []
    for k in range(ideal.cap + 1):
        n_mono = len(exponents(nvars, k))
        unit = A.unit_index
        rows = [r[unit * n_mono:(unit + 1) * n_mono] for r in ideal.pieces[k].rows]
        pieces.append(Subspace(F, n_mono, rows))
    return GradedIdeal(triv, nvars, pieces)


def socle_fiber(ideal: GradedIdeal, socle_element) -> GradedIdeal:
    """(I  ^  s.S)/s: the ideal of the socle fibre, over the base field."""
    A, nvars = ideal.algebra, ideal.nvars
    F = A.field
    if socle_element.is_zero() or not socle(A).contains(socle_element.coeffs):
        raise DomainError("socle fibre needs a nonzero socle element")
    triv = trivial_algebra(F)
    pieces = []
    for k in range(ideal.cap + 1):
        n_mono = len(exponents(nvars, k))
        # Injection S^k -> A (x) S^k, theta |-> s (x) theta.
        cols = []
        for m in range(n_mono):
            col = [F.zero] * (A.dim * n_mono)
            for a_idx, c in enumerate(socle_element.coeffs):
                col[a_idx * n_mono + m] = c
            cols.append(col)
        inj = ExactMatrix.from_columns(F, cols, A.dim * n_mono)
        pieces.append(ideal.pieces[k].preimage_under(inj))
    return GradedIdeal(triv, nvars, pieces)


def fiber_ideals(ideal: GradedIdeal, socle_element):
    """Both fibre ideals; asserts the containment special inside socle fibre."""
    i_k = special_fiber(ideal)
    i_s = socle_fiber(ideal, socle_element)
    if not i_s.contains(i_k):
        raise DomainError("special fibre not contained in socle fibre: input is not an ideal")
    return i_k, i_s


def dual_numbers_pullback(ideal: GradedIdeal, dual_algebra, socle_element) -> GradedIdeal:
    """Pull back along xi : k[t]/(t^2) -> A, t |-> s (a socle element)."""
    A, nvars = ideal.algebra, ideal.nvars
    F = A.field
    if socle_element.is_zero() or not socle(A).contains(socle_element.coeffs):
        raise DomainError("pullback needs a nonzero socle element")
    pieces = []
    for k in range(ideal.cap + 1):
        n_mono = len(exponents(nvars, k))
        cols = []
        for a2_idx in range(2):
            source = (A.one() if a2_idx == 0 else socle_element).coeffs
            for m in range(n_mono):
                col = [F.zero] * (A.dim * n_mono)
                for a_idx, c in enumerate(source):
                    col[a_idx * n_mono + m] = c
                cols.append(col)
        xi = ExactMatrix.from_columns(F, cols, A.dim * n_mono)
        pieces.append(ideal.pieces[k].preimage_under(xi))
    return GradedIdeal(dual_algebra, nvars, pieces)


def push_vector(vec, source_algebra, quotient_algebra, push, n_mono):
    """Apply a coefficient-level algebra surjection blockwise to a tensor vector."""
    Fq = quotient_algebra.field
    out = [Fq.zero] * (quotient_algebra.dim * n_mono)
    for m in range(n_mono):
        coeffs = tuple(vec[a * n_mono + m] for a in range(source_algebra.dim))
        for a2, c in enumerate(push(coeffs)):
            out[a2 * n_mono + m] = c
    return tuple(out)


def push_ideal(ideal: GradedIdeal, quotient_algebra, push) -> GradedIdeal:
    """Extension of the ideal along a surjection A -> A' given by ``push``.

    The image of each piece is already an A'-submodule because the map is a
    surjective algebra morphism.
    """
    A, nvars = ideal.algebra, ideal.nvars
    pieces = []
    for k in range(ideal.cap + 1):
        n_mono = len(exponents(nvars, k))
        rows = [push_vector(r, A, quotient_algebra, push, n_mono)
                for r in ideal.pieces[k].rows]
        pieces.append(Subspace(quotient_algebra.field,
                               quotient_algebra.dim * n_mono, rows))
    return GradedIdeal(quotient_algebra, nvars, pieces)


def minimal_generator_free_range(ideal: GradedIdeal, lo, hi) -> bool:
    """True when I has no minimal generators in degrees (lo, hi]."""
    A, nvars = ideal.algebra, ideal.nvars
    for k in range(lo + 1, min(hi, ideal.cap) + 1):
        rows = []
        for j in range(nvars):
            var = PolyOverA.variable(A, nvars, j)
            mat = multiplication_matrix(A, nvars, k - 1, var)
            rows.extend(mat.apply(r) for r in ideal.pieces[k - 1].rows)
        generated = Subspace(A.field, piece_dim(A, nvars, k), rows)
        if generated != ideal.pieces[k]:
            return False
    return True


@dataclass(frozen=True)
class GrowthReport:
    macaulay_ok: object            # bool, or None when the bound's hypothesis fails
    gotzmann_persists: object
    saturated_in_degrees: tuple    # degrees k >= i with I^sat_k == I_k, certified
    weak_lefschetz_ok: object      # bool, or None when all seeded forms degenerate
    relative_flat_range: object    # (lo, hi) or None; base must be Gorenstein
    no_new_generators_range: object


def macaulay_ok_from_values(h, r, i):
    """Macaulay-bound consequences read off a raw Hilbert-value sequence.

    Returns None when the hypothesis (i >= r and h(i) <= r) fails, else the
    truth of the monotone tail and the floor below degree i.
    """
    if i >= len(h):
        raise CapTooSmallError("degree i beyond the sequence")
    if not (i >= r and h[i] <= r):
        return None
    decreasing = all(h[k + 1] <= h[k] for k in range(i, len(h) - 1))
    floor_ok = all(h[k] >= h[i] for k in range(max(r - 1, 0), i + 1))
    return decreasing and floor_ok


def growth_report(ideal: GradedIdeal, r, i, j=None, rng=None, trials=20) -> GrowthReport:
    """Evaluate the classical and relative growth predicates on an ideal.

    Classical checks need the base field (trivial algebra); the relative ones
    need a local Gorenstein base and a second degree j > i.
    """
    A = ideal.algebra
    hilbert = hilbert_function(ideal)
    h = hilbert.values
    if i > ideal.cap:
        raise CapTooSmallError("degree i beyond the cap")
    classical = A.dim == 1

    macaulay_flag = None
    gotzmann = None
    sat_degrees = ()
    lefschetz = None
    if classical:
        macaulay_flag = macaulay_ok_from_values(h, r, i)
        if i >= r and h[i] == r:
            gen_ok = ideal_from_pieces_generate(ideal, i, ideal.cap) == ideal
            if gen_ok:
                gotzmann = all(h[k] == r for k in range(i, ideal.cap + 1))
                if ideal.cap >= 2:
                    sat = saturate(ideal)
                    sat_degrees = tuple(
                        k for k in range(i, sat.certified_through + 1)
                        if sat.ideal.pieces[k] == ideal.pieces[k]
                    )
                lefschetz = _weak_lefschetz(ideal, i, rng, trials)
            else:
                gotzmann = False

    flat_range = None
    no_new_gens = None
    if not classical and j is not None:
        if not is_gorenstein(A):
            raise DomainError("relative growth checks need a Gorenstein base")
        if j > ideal.cap:
            raise CapTooSmallError("degree j beyond the cap")
        ends_free = all(
            hilbert.quotient_free[k] == (True, r) and h[k] == r * A.dim
            for k in (i, j)
        )
        if ends_free:
            flat_range = all(
                hilbert.quotient_free[k][0] and h[k] == r * A.dim
                for k in range(i + 1, j)
            )
            no_new_gens = minimal_generator_free_range(ideal, i, j)
    return GrowthReport(
        macaulay_ok=macaulay_flag,
        gotzmann_persists=gotzmann,
        saturated_in_degrees=sat_degrees,
        weak_lefschetz_ok=lefschetz,
        relative_flat_range=flat_range,
        no_new_generators_range=no_new_gens,
    )


def _weak_lefschetz(ideal: GradedIdeal, start, rng, trials) -> object:
    """Seeded stand-in for multiplication by a general linear form.

    A single invertible witness per degree certifies the generic statement;
    if every seeded form fails in some degree the verdict is None.
    """
    A, nvars = ideal.algebra, ideal.nvars
    rng = rng or random.Random(0)
    forms = []
    for _ in range(trials):
        coeffs = [rng.randrange(0, 101) for _ in range(nvars)]
        if all(c == 0 for c in coeffs):
            coeffs[0] = 1
        terms = {}
        for idx, c in enumerate(coeffs):
            exps = tuple(1 if jj == idx else 0 for jj in range(nvars))
            terms[(A.unit_index, exps)] = A.field(c)
        forms.append(PolyOverA(A, nvars, terms))
    h = hilbert_function(ideal).values
    for k in range(start, ideal.cap):
        if h[k] != h[k + 1]:
            return False
        hit = False
        for form in forms:
            mat = multiplication_matrix(A, nvars, k, form)
            image = Subspace(
                A.field, piece_dim(A, nvars, k + 1),
                [mat.apply(r) for r in Subspace.full(A.field, piece_dim(A, nvars, k)).rows],
            )
            rank_induced = image.sum(ideal.pieces[k + 1]).dim - ideal.pieces[k + 1].dim
            if rank_induced == h[k + 1]:
                hit = True
                break
        if not hit:
            return None
    return True


@dataclass(frozen=True)
class SaturationProbe:
    saturation_is_linear_up_to_cap: bool
    witness_degree: object
    certified_through: int


def saturation_probe(ideal: GradedIdeal) -> SaturationProbe:
    """Saturate a linear ideal and test whether the result is again linear."""
    linear_input = ideal_from_pieces_generate(ideal, 1, ideal.cap) == ideal
    if not linear_input:
        raise DomainError("saturation probe needs an ideal generated in degrees 0 and 1")
    sat = saturate(ideal)
    regenerated = ideal_from_pieces_generate(sat.ideal, 1, sat.ideal.cap)
    witness = None
    for k in range(min(sat.certified_through, sat.ideal.cap) + 1):
        if regenerated.pieces[k] != sat.ideal.pieces[k]:
            witness = k
            break
    return SaturationProbe(
        saturation_is_linear_up_to_cap=witness is None,
        witness_degree=witness,
        certified_through=sat.certified_through,
    )
