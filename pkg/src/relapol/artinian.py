"""Finite local k-algebras A = k[t_1..t_m]/J for monomial J.

The standard monomials outside J form the k-basis.  Multiplication reduces
exponentwise and kills any monomial divisible by a generator of J, so the
structure constants are 0/1 and all the socle / Gorenstein machinery becomes
exact linear algebra on the coefficient vectors.  Raw structure-constant
tables are also accepted for algebras without a monomial presentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .errors import (DomainError, InternalCheckError, NotArtinianError,
                     NotGorensteinError, PreconditionError)
from .linalg import ExactMatrix, Subspace, kernel_basis, kernel_subspace


@dataclass(frozen=True)
class MonomialQuotientPresentation:
    """k[t_1..t_m] modulo the monomial ideal generated by ``monomials``."""

    var_names: tuple
    monomials: tuple  # exponent tuples, pairwise non-dividing after minimization

    def __post_init__(self):
        m = len(self.var_names)
        if any(len(e) != m for e in self.monomials):
            raise DomainError("exponent tuple length does not match variable count")
        for i in range(m):
            if not any(e[i] > 0 and all(e[j] == 0 for j in range(m) if j != i)
                       for e in self.monomials):
                raise NotArtinianError(
                    f"no pure power of {self.var_names[i]} among the relations"
                )
        object.__setattr__(self, "monomials", _minimalize(self.monomials))


def _grlex_key(exps):
    # graded order, then lex with the first variable heaviest
    return (sum(exps), tuple(-e for e in exps))


def _minimalize(monomials):
    out = []
    for e in monomials:
        if not any(_divides(f, e) for f in monomials if f != e):
            out.append(e)
    return tuple(sorted(set(out), key=_grlex_key))


def _divides(e, f):
    return all(a <= b for a, b in zip(e, f))


class ArtinLocalAlgebra:
    """Finite local k-algebra with a chosen basis and multiplication table."""

    __slots__ = ("field", "basis", "var_names", "table", "unit_index",
                 "maximal_ideal_indices", "presentation", "label")

    def __init__(self, field, basis, var_names, table, unit_index,
                 maximal_ideal_indices, presentation=None, label=None):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "basis", tuple(basis))
        object.__setattr__(self, "var_names", tuple(var_names))
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "unit_index", unit_index)
        object.__setattr__(self, "maximal_ideal_indices", tuple(maximal_ideal_indices))
        object.__setattr__(self, "presentation", presentation)
        object.__setattr__(self, "label", label or self._default_label())

    def __setattr__(self, *args):
        raise AttributeError("ArtinLocalAlgebra is immutable")

    def _default_label(self):
        if self.presentation is None:
            return f"table-algebra(dim {len(self.basis)})"
        gens = ",".join(self.monomial_str(e) for e in self.presentation.monomials)
        vars_ = ",".join(self.var_names)
        return f"k[{vars_}]/({gens})" if self.var_names else "k"

    @property
    def dim(self) -> int:
        return len(self.basis)

    def monomial_str(self, exps) -> str:
        parts = []
        for name, e in zip(self.var_names, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def zero(self):
        return AlgebraElement(self, (self.field.zero,) * self.dim)

    def one(self):
        coeffs = [self.field.zero] * self.dim
        coeffs[self.unit_index] = self.field.one
        return AlgebraElement(self, tuple(coeffs))

    def element(self, coeffs):
        coeffs = tuple(self.field(c) for c in coeffs)
        if len(coeffs) != self.dim:
            raise DomainError("coefficient tuple length != algebra dimension")
        return AlgebraElement(self, coeffs)

    def basis_element(self, i):
        coeffs = [self.field.zero] * self.dim
        coeffs[i] = self.field.one
        return AlgebraElement(self, tuple(coeffs))

    def generator_element(self, name):
        """The class of a presentation variable (possibly zero in A)."""
        if name not in self.var_names:
            raise DomainError(f"unknown algebra variable {name!r}")
        i = self.var_names.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(self.var_names)))
        if exps in self.basis:
            return self.basis_element(self.basis.index(exps))
        return self.zero()

    def mul_coeffs(self, u, v):
        F = self.field
        out = [F.zero] * self.dim
        for i, a in enumerate(u):
            if F.is_zero(a):
                continue
            row = self.table[i]
            for j, b in enumerate(v):
                if F.is_zero(b):
                    continue
                ab = F.mul(a, b)
                for k, c in row[j]:
                    out[k] = F.add(out[k], F.mul(ab, c))
        return tuple(out)

    def mult_matrix(self, element) -> ExactMatrix:
        """Matrix of multiplication by ``element`` on A (columns = basis images)."""
        cols = [self.mul_coeffs(element.coeffs, self.basis_element(j).coeffs)
                for j in range(self.dim)]
        return ExactMatrix.from_columns(self.field, cols, self.dim)

    def maximal_ideal(self) -> Subspace:
        rows = [self.basis_element(i).coeffs for i in self.maximal_ideal_indices]
        return Subspace(self.field, self.dim, rows)

    def ideal_span(self, elements) -> Subspace:
        """The ideal of A generated by the given elements, as a subspace."""
        rows = []
        for el in elements:
            for j in range(self.dim):
                rows.append(self.mul_coeffs(self.basis_element(j).coeffs, el.coeffs))
        return Subspace(self.field, self.dim, rows)

    def maximal_ideal_power(self, k: int) -> Subspace:
        if k == 0:
            return Subspace.full(self.field, self.dim)
        mm = [self.basis_element(i).coeffs for i in self.maximal_ideal_indices]
        current = list(mm)
        for _ in range(k - 1):
            current = [self.mul_coeffs(u, v) for u in current for v in mm]
        return Subspace(self.field, self.dim, current)

    def validate_table(self):
        """Exhaustive commutativity and associativity check of the table."""
        unit = self.one().coeffs
        for i in range(self.dim):
            e_i = self.basis_element(i).coeffs
            if self.mul_coeffs(unit, e_i) != e_i or self.mul_coeffs(e_i, unit) != e_i:
                raise DomainError("unit does not act as identity")
            for j in range(self.dim):
                e_j = self.basis_element(j).coeffs
                if self.mul_coeffs(e_i, e_j) != self.mul_coeffs(e_j, e_i):
                    raise DomainError(f"table not commutative at ({i},{j})")
                for k in range(self.dim):
                    e_k = self.basis_element(k).coeffs
                    left = self.mul_coeffs(self.mul_coeffs(e_i, e_j), e_k)
                    right = self.mul_coeffs(e_i, self.mul_coeffs(e_j, e_k))
                    if left != right:
                        raise DomainError(f"table not associative at ({i},{j},{k})")

    def __eq__(self, other):
        return (
            isinstance(other, ArtinLocalAlgebra)
            and self.field == other.field
            and self.basis == other.basis
            and self.var_names == other.var_names
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.field, self.basis, self.var_names))

    def __repr__(self):
        return self.label


class AlgebraElement:
    """Element of an ArtinLocalAlgebra, stored as its coefficient tuple."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, *args):
        raise AttributeError("AlgebraElement is immutable")

    def _binop(self, other, op):
        if not isinstance(other, AlgebraElement) or other.algebra != self.algebra:
            raise DomainError("algebra mismatch")
        F = self.algebra.field
        return AlgebraElement(self.algebra, tuple(op(F, a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __add__(self, other):
        return self._binop(other, lambda F, a, b: F.add(a, b))

    def __sub__(self, other):
        return self._binop(other, lambda F, a, b: F.sub(a, b))

    def __neg__(self):
        F = self.algebra.field
        return AlgebraElement(self.algebra, tuple(F.neg(a) for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            if other.algebra != self.algebra:
                raise DomainError("algebra mismatch")
            return AlgebraElement(self.algebra, self.algebra.mul_coeffs(self.coeffs, other.coeffs))
        F = self.algebra.field
        c = F(other)
        return AlgebraElement(self.algebra, tuple(F.mul(c, a) for a in self.coeffs))

    __rmul__ = __mul__

    def scale(self, scalar):
        return self * scalar

    def is_zero(self) -> bool:
        F = self.algebra.field
        return all(F.is_zero(c) for c in self.coeffs)

    def is_invertible(self) -> bool:
        return not self.algebra.field.is_zero(self.coeffs[self.algebra.unit_index])

    def residue(self):
        """Coefficient of the unit: the image in A/m = k."""
        return self.coeffs[self.algebra.unit_index]

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and other.algebra == self.algebra
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.algebra, self.coeffs))

    def __str__(self):
        A, F = self.algebra, self.algebra.field
        parts = []
        for i, c in enumerate(self.coeffs):
            if F.is_zero(c):
                continue
            mono = A.monomial_str(A.basis[i]) if A.presentation is not None else f"e{i}"
            cs = F.to_str(c)
            if mono == "1":
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


def algebra_from_presentation(field, presentation: MonomialQuotientPresentation,
                              label=None) -> ArtinLocalAlgebra:
    """Build the algebra with basis the standard monomials outside J."""
    m = len(presentation.var_names)
    bounds = []
    for i in range(m):
        powers = [e[i] for e in presentation.monomials
                  if e[i] > 0 and all(e[j] == 0 for j in range(m) if j != i)]
        bounds.append(min(powers))

    def in_ideal(e):
        return any(_divides(g, e) for g in presentation.monomials)

    def enumerate_standard():
        if m == 0:
            return [()]
        out = []

        def rec(prefix):
            if len(prefix) == m:
                if not in_ideal(prefix):
                    out.append(tuple(prefix))
                return
            for v in range(bounds[len(prefix)]):
                rec(prefix + (v,))

        rec(())
        return out

    basis = sorted(enumerate_standard(), key=_grlex_key)
    index = {e: i for i, e in enumerate(basis)}
    unit_index = index[(0,) * m]
    one = field.one

    table = []
    for e in basis:
        row = []
        for f in basis:
            prod = tuple(a + b for a, b in zip(e, f))
            row.append(() if in_ideal(prod) else ((index[prod], one),))
        table.append(tuple(row))

    maximal = tuple(i for i in range(len(basis)) if i != unit_index)
    return ArtinLocalAlgebra(field, basis, presentation.var_names, tuple(table),
                             unit_index, maximal, presentation, label)


def algebra_from_table(field, dim, products, unit_index, maximal_ideal_indices,
                       label=None) -> ArtinLocalAlgebra:
    """Algebra from raw structure constants.

    ``products[(i, j)]`` is the coefficient vector of e_i * e_j; missing keys
    mean the product is zero.
    """
    table = []
    for i in range(dim):
        row = []
        for j in range(dim):
            vec = products.get((i, j), products.get((j, i)))
            if vec is None:
                row.append(())
            else:
                row.append(tuple((k, field(c)) for k, c in enumerate(vec)
                                 if not field.is_zero(field(c))))
        table.append(tuple(row))
    basis = tuple(("e", i) for i in range(dim))
    alg = ArtinLocalAlgebra(field, basis, (), tuple(table), unit_index,
                            maximal_ideal_indices, None, label)
    alg.validate_table()
    return alg


def trivial_algebra(field) -> ArtinLocalAlgebra:
    """The base field itself, as the one-dimensional local algebra."""
    pres = MonomialQuotientPresentation((), ())
    return algebra_from_presentation(field, pres, label="k")


def parse_algebra_literal(field, literal) -> ArtinLocalAlgebra:
    """Algebra from a problem-file literal like
    ``{"vars": ["s","t"], "monomials": ["s^2","s*t","t^2"]}``."""
    names = tuple(literal["vars"])
    gens = []
    for text in literal["monomials"]:
        exps = [0] * len(names)
        for factor in text.replace(" ", "").split("*"):
            if "^" in factor:
                base, _, power = factor.partition("^")
                e = int(power.strip("()"))
            else:
                base, e = factor, 1
            if base not in names:
                raise DomainError(f"unknown variable {base!r} in monomial {text!r}")
            exps[names.index(base)] += e
        gens.append(tuple(exps))
    return algebra_from_presentation(field, MonomialQuotientPresentation(names, tuple(gens)))


def socle(algebra: ArtinLocalAlgebra) -> Subspace:
    """soc(A) = the exact annihilator of the maximal ideal."""
    mats = [algebra.mult_matrix(algebra.basis_element(i))
            for i in algebra.maximal_ideal_indices]
    if not mats:
        return Subspace.full(algebra.field, algebra.dim)
    stacked = reduce(lambda a, b: a.stack(b), mats)
    return kernel_subspace(stacked)


def socle_elements(algebra) -> list:
    return [algebra.element(row) for row in socle(algebra).rows]


def is_gorenstein(algebra: ArtinLocalAlgebra) -> bool:
    return socle(algebra).dim == 1


def socle_generator(algebra) -> AlgebraElement:
    s = socle(algebra)
    if s.dim != 1:
        raise NotGorensteinError(f"{algebra} has socle dimension {s.dim}")
    return algebra.element(s.rows[0])


def socle_degree(algebra: ArtinLocalAlgebra) -> int:
    """Largest d with m^d != 0."""
    d = 0
    while algebra.maximal_ideal_power(d + 1).dim > 0:
        d += 1
    return d


def multiply_to_socle(algebra, elements) -> AlgebraElement:
    """Find b with every b*a_i in soc(A) and some b*a_i nonzero.

    Degree-climbing over the powers of the maximal ideal, exactly as the
    existence proof: at each level multiply by a maximal-ideal basis monomial
    that keeps the leading input alive.
    """
    if not is_gorenstein(algebra):
        raise NotGorensteinError("multiply_to_socle needs a Gorenstein base")
    current = list(elements)
    if all(a.is_zero() for a in current):
        raise PreconditionError("all inputs are zero")
    d = socle_degree(algebra)
    soc = socle(algebra)
    b = algebra.one()
    while True:
        k = 0
        while k < d and all(algebra.maximal_ideal_power(k + 1).contains(a.coeffs)
                            for a in current):
            k += 1
        if k >= d:
            break
        lead = next(a for a in current
                    if not algebra.maximal_ideal_power(k + 1).contains(a.coeffs))
        bk = None
        for i in algebra.maximal_ideal_indices:
            if not (algebra.basis_element(i) * lead).is_zero():
                bk = algebra.basis_element(i)
                break
        if bk is None:
            if soc.contains(lead.coeffs):
                break
            raise NotGorensteinError("socle climbing stalled on a non-Gorenstein table")
        b = b * bk
        current = [bk * a for a in current]
    assert all(soc.contains(a.coeffs) for a in current)
    assert any(not a.is_zero() for a in current)
    return b


@dataclass(frozen=True)
class WitnessResult:
    ideal: Subspace
    chain: tuple

    def quotient_socle_dim(self, algebra) -> int:
        pulled = _socle_preimage(algebra, self.ideal)
        return pulled.dim - self.ideal.dim


def _socle_preimage(algebra, ideal: Subspace) -> Subspace:
    """{ a in A : m*a subset ideal }, the pullback of soc(A/ideal)."""
    F = algebra.field
    mats = [algebra.mult_matrix(algebra.basis_element(i))
            for i in algebra.maximal_ideal_indices]
    if not mats:
        return Subspace.full(F, algebra.dim)
    cond = ideal.conditions()
    rows = []
    for mat in mats:
        rows.extend(cond.mul(mat).rows)
    if not rows:
        return Subspace.full(F, algebra.dim)
    return Subspace(F, algebra.dim,
                    kernel_basis(ExactMatrix(F, rows, algebra.dim)).transpose().rows)


def gorenstein_witness(algebra, f: AlgebraElement):
    """Ideal I of A with A/I local Gorenstein and socle spanned by f + I.

    Builds the chain I_0 = 0 subset I_1 subset ... by adjoining, at each step,
    the first canonical socle vector of A/I_j that is not in I_j + <f>.  Stops
    when the quotient socle is exactly <f + I_j>.
    """
    if f.is_zero():
        raise PreconditionError("witness element must be nonzero")
    A, F = algebra, algebra.field
    ideal = Subspace.zero(F, A.dim)
    chain = [ideal]
    while True:
        pulled = _socle_preimage(A, ideal)
        line = ideal.sum(Subspace(F, A.dim, [f.coeffs]))
        if pulled == line:
            break
        g = None
        for row in pulled.rows:
            if ideal.contains(row) or line.contains(row):
                continue
            g = A.element(row)
            break
        if g is None:
            raise NotGorensteinError("no admissible socle element; f lies in the ideal")
        ideal = ideal.sum(A.ideal_span([g]))
        chain.append(ideal)
        if ideal.contains(f.coeffs):
            raise InternalCheckError("witness construction swallowed f")
    return WitnessResult(ideal=ideal, chain=tuple(chain))


def algebra_quotient(algebra, extra_monomials):
    """Quotient of a monomial-presented algebra by extra monomial relations.

    Returns (A', push) where push maps coefficient vectors over A to vectors
    over A'.
    """
    if algebra.presentation is None:
        raise DomainError("algebra_quotient needs a monomial presentation")
    for e in extra_monomials:
        if sum(e) == 0:
            raise DomainError("quotient would collapse the unit")
    pres = MonomialQuotientPresentation(
        algebra.presentation.var_names,
        algebra.presentation.monomials + tuple(extra_monomials),
    )
    quotient = algebra_from_presentation(algebra.field, pres)
    index = {e: i for i, e in enumerate(quotient.basis)}

    def push(coeffs):
        out = [quotient.field.zero] * quotient.dim
        for i, c in enumerate(coeffs):
            j = index.get(algebra.basis[i])
            if j is not None:
                out[j] = quotient.field.add(out[j], c)
        return tuple(out)

    return quotient, push


CATALOG_SPECS = (
    ("k", (), ()),
    ("k[t]/(t^2)", ("t",), ("t^2",)),
    ("k[s,t]/(s^2,t^2)", ("s", "t"), ("s^2", "t^2")),
    ("k[s,t]/(s^2,s*t,t^2)", ("s", "t"), ("s^2", "s*t", "t^2")),
    ("k[s,t]/(s^3,t^3)", ("s", "t"), ("s^3", "t^3")),
)


def catalog(field):
    """The fixed catalog of base algebras used by the property suites."""
    out = []
    for label, names, monos in CATALOG_SPECS:
        out.append(parse_algebra_literal(field, {"vars": list(names), "monomials": list(monos)}))
    return out
