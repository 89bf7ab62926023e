"""Graded pieces of A (x) Sym V* and A (x) S^(<=D)V in monomial bases.

Operators live in the polynomial ring A[a0..an]; states live in the divided
power counterpart with monomials x0^(e0)..xn^(en) carrying no factorials.
The contraction is the coefficient-free rule a_i . x^(e) = x^(e - delta_i),
extended A-bilinearly and multiplicatively, so it is characteristic-free.

Monomials of a fixed degree are ordered graded-lex with the variable order
a0 < ... < an (a0-exponent heaviest, descending); tensor bases over A are
ordered algebra-basis outer, monomial inner.  Fixture matrices depend on
this order, so treat it as normative.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .artinian import AlgebraElement, ArtinLocalAlgebra
from .errors import DomainError, UsageError
from .linalg import ExactMatrix


@lru_cache(maxsize=None)
def exponents(nvars: int, degree: int) -> tuple:
    """All exponent tuples of the given total degree, in descending lex order."""
    if nvars == 0:
        return ((),) if degree == 0 else ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for e0 in range(degree, -1, -1):
        for rest in exponents(nvars - 1, degree - e0):
            out.append((e0,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def exponent_index(nvars: int, degree: int) -> dict:
    return {e: i for i, e in enumerate(exponents(nvars, degree))}


def piece_dim(algebra: ArtinLocalAlgebra, nvars: int, degree: int) -> int:
    return algebra.dim * len(exponents(nvars, degree))


def tensor_index(algebra, nvars, degree, a_idx, exps) -> int:
    return a_idx * len(exponents(nvars, degree)) + exponent_index(nvars, degree)[exps]


class _GradedValue:
    """Shared plumbing for PolyOverA and DPOverA: a finitely supported map
    (algebra basis index, exponent tuple) -> scalar with zeros dropped."""

    __slots__ = ("algebra", "nvars", "terms")
    _is_operator = True

    def __init__(self, algebra, nvars, terms):
        F = algebra.field
        clean = {}
        for (a_idx, exps), c in terms.items():
            c = F(c)
            if F.is_zero(c):
                continue
            key = (a_idx, tuple(exps))
            if key in clean:
                c = F.add(clean[key], c)
                if F.is_zero(c):
                    del clean[key]
                    continue
            clean[key] = c
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *args):
        raise AttributeError("graded values are immutable")

    @classmethod
    def zero(cls, algebra, nvars):
        return cls(algebra, nvars, {})

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self):
        return sorted({sum(e) for (_, e) in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Degree of a homogeneous value (0 for the zero value)."""
        ds = self.degrees()
        if len(ds) > 1:
            raise DomainError("value is not homogeneous")
        return ds[0] if ds else 0

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (kv[0][0], sum(kv[0][1]), tuple(-x for x in kv[0][1])),
        )

    def _binop(self, other, op):
        if not isinstance(other, _GradedValue) or other.__class__ is not self.__class__:
            raise DomainError("cannot combine operator and state values")
        if other.algebra != self.algebra or other.nvars != self.nvars:
            raise DomainError("algebra or variable-count mismatch")
        F = self.algebra.field
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = op(F, terms.get(key, F.zero), c)
        return self.__class__(self.algebra, self.nvars, terms)

    def __add__(self, other):
        return self._binop(other, lambda F, a, b: F.add(a, b))

    def __sub__(self, other):
        return self._binop(other, lambda F, a, b: F.sub(a, b))

    def __neg__(self):
        F = self.algebra.field
        return self.__class__(self.algebra, self.nvars,
                              {k: F.neg(c) for k, c in self.terms.items()})

    def scale(self, scalar):
        F = self.algebra.field
        c0 = F(scalar)
        return self.__class__(self.algebra, self.nvars,
                              {k: F.mul(c0, c) for k, c in self.terms.items()})

    def scale_algebra(self, element: AlgebraElement):
        """Multiply by an algebra element (A-module structure)."""
        if element.algebra != self.algebra:
            raise DomainError("algebra mismatch")
        F = self.algebra.field
        terms = {}
        for (a_idx, exps), c in self.terms.items():
            prod = self.algebra.mul_coeffs(element.coeffs,
                                           self.algebra.basis_element(a_idx).coeffs)
            for b_idx, cb in enumerate(prod):
                if F.is_zero(cb):
                    continue
                key = (b_idx, exps)
                terms[key] = F.add(terms.get(key, F.zero), F.mul(c, cb))
        return self.__class__(self.algebra, self.nvars, terms)

    def homogeneous_part(self, degree: int):
        return self.__class__(self.algebra, self.nvars,
                              {k: c for k, c in self.terms.items() if sum(k[1]) == degree})

    def to_vector(self, degree: int):
        """Coefficient vector in the graded piece basis of the given degree."""
        F = self.algebra.field
        n_mono = len(exponents(self.nvars, degree))
        vec = [F.zero] * (self.algebra.dim * n_mono)
        idx = exponent_index(self.nvars, degree)
        for (a_idx, exps), c in self.terms.items():
            if sum(exps) != degree:
                raise DomainError(f"term of degree {sum(exps)} in degree-{degree} vector")
            vec[a_idx * n_mono + idx[exps]] = c
        return tuple(vec)

    @classmethod
    def from_vector(cls, algebra, nvars, degree, vec):
        F = algebra.field
        monos = exponents(nvars, degree)
        terms = {}
        for i, c in enumerate(vec):
            if F.is_zero(F(c)):
                continue
            terms[(i // len(monos), monos[i % len(monos)])] = F(c)
        return cls(algebra, nvars, terms)

    def _var_str(self, i, e):
        raise NotImplementedError

    def __str__(self):
        F = self.algebra.field
        parts = []
        for (a_idx, exps), c in self.sorted_terms():
            factors = []
            mono = self.algebra.monomial_str(self.algebra.basis[a_idx]) \
                if self.algebra.presentation is not None else f"e{a_idx}"
            if mono != "1":
                factors.append(mono)
            for i, e in enumerate(exps):
                if e > 0:
                    factors.append(self._var_str(i, e))
            cs = F.to_str(c)
            if not factors:
                parts.append(cs)
            elif cs == "1":
                parts.append("*".join(factors))
            elif cs == "-1":
                parts.append("-" + "*".join(factors))
            else:
                parts.append("*".join([cs] + factors))
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__

    def __eq__(self, other):
        return (
            other.__class__ is self.__class__
            and other.algebra == self.algebra
            and other.nvars == self.nvars
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.__class__.__name__, self.algebra, self.nvars,
                     tuple(self.sorted_terms())))


class PolyOverA(_GradedValue):
    """Element of A (x) Sym V*: a polynomial operator in a0..an over A."""

    _is_operator = True

    def _var_str(self, i, e):
        return f"a{i}" if e == 1 else f"a{i}^{e}"

    def __mul__(self, other):
        if not isinstance(other, PolyOverA):
            raise DomainError("operator product needs two operators")
        if other.algebra != self.algebra or other.nvars != self.nvars:
            raise DomainError("algebra or variable-count mismatch")
        A, F = self.algebra, self.algebra.field
        terms = {}
        for (a1, e1), c1 in self.terms.items():
            for (a2, e2), c2 in other.terms.items():
                c = F.mul(c1, c2)
                prod = A.mul_coeffs(A.basis_element(a1).coeffs, A.basis_element(a2).coeffs)
                exps = tuple(x + y for x, y in zip(e1, e2))
                for b_idx, cb in enumerate(prod):
                    if F.is_zero(cb):
                        continue
                    key = (b_idx, exps)
                    terms[key] = F.add(terms.get(key, F.zero), F.mul(c, cb))
        return PolyOverA(self.algebra, self.nvars, terms)

    @classmethod
    def one(cls, algebra, nvars):
        return cls(algebra, nvars, {(algebra.unit_index, (0,) * nvars): algebra.field.one})

    @classmethod
    def variable(cls, algebra, nvars, i):
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(algebra, nvars, {(algebra.unit_index, exps): algebra.field.one})


class DPOverA(_GradedValue):
    """Element of A (x) S^(<=D)V in divided-power monomials x_i^(e)."""

    _is_operator = False

    def _var_str(self, i, e):
        return f"x{i}" if e == 1 else f"x{i}^({e})"

    def residue(self):
        """The part with unit algebra coefficient: the image mod m (x) S."""
        unit = self.algebra.unit_index
        return DPOverA(self.algebra, self.nvars,
                       {k: c for k, c in self.terms.items() if k[0] == unit})

    def m_part(self):
        unit = self.algebra.unit_index
        return DPOverA(self.algebra, self.nvars,
                       {k: c for k, c in self.terms.items() if k[0] != unit})


def contract(theta: PolyOverA, g: DPOverA) -> DPOverA:
    """Apolarity contraction: a^e . x^(f) = x^(f-e) (zero unless f >= e),
    extended A-bilinearly."""
    if not isinstance(theta, PolyOverA) or not isinstance(g, DPOverA):
        raise DomainError("contract expects (operator, state)")
    if theta.algebra != g.algebra or theta.nvars != g.nvars:
        raise DomainError("algebra or variable-count mismatch")
    A, F = theta.algebra, theta.algebra.field
    terms = {}
    for (a1, e), c1 in theta.terms.items():
        for (a2, f), c2 in g.terms.items():
            if any(fe < ee for fe, ee in zip(f, e)):
                continue
            prod = A.mul_coeffs(A.basis_element(a1).coeffs, A.basis_element(a2).coeffs)
            exps = tuple(fe - ee for fe, ee in zip(f, e))
            c = F.mul(c1, c2)
            for b_idx, cb in enumerate(prod):
                if F.is_zero(cb):
                    continue
                key = (b_idx, exps)
                terms[key] = F.add(terms.get(key, F.zero), F.mul(c, cb))
    return DPOverA(theta.algebra, theta.nvars, terms)


def evaluate(theta: PolyOverA, tensor) -> AlgebraElement:
    """Evaluate an operator at a linear tensor a_0 (x) x_0 + ... + a_n (x) x_n.

    ``tensor`` is either a DPOverA of that shape or a sequence of n+1
    algebra elements (the coordinates).
    """
    A = theta.algebra
    if isinstance(tensor, DPOverA):
        coords = linear_tensor_coordinates(tensor)
    else:
        coords = list(tensor)
        if len(coords) != theta.nvars:
            raise DomainError("coordinate count does not match variable count")
        if any(c.algebra != A for c in coords):
            raise DomainError("algebra mismatch")
    out = A.zero()
    for (a_idx, exps), c in theta.terms.items():
        term = A.basis_element(a_idx) * c
        for i, e in enumerate(exps):
            for _ in range(e):
                term = term * coords[i]
        out = out + term
    return out


def linear_tensor_coordinates(tensor: DPOverA) -> list:
    """Coordinates a_i of a pure degree-1 state sum a_i (x) x_i."""
    A = tensor.algebra
    coords = [A.zero() for _ in range(tensor.nvars)]
    for (a_idx, exps), c in tensor.terms.items():
        if sum(exps) != 1:
            raise DomainError("tensor is not of pure degree 1")
        i = exps.index(1)
        coords[i] = coords[i] + A.basis_element(a_idx) * c
    return coords


def multiplication_matrix(algebra, nvars, from_degree, theta: PolyOverA) -> ExactMatrix:
    """Matrix of multiplication by a homogeneous operator, from the graded
    piece of ``from_degree`` to the piece of ``from_degree + deg(theta)``."""
    if theta.algebra != algebra or theta.nvars != nvars:
        raise DomainError("algebra or variable-count mismatch")
    if not theta.is_homogeneous():
        raise DomainError("multiplication_matrix needs a homogeneous operator")
    g = theta.degree()
    cols = []
    monos = exponents(nvars, from_degree)
    for a_idx in range(algebra.dim):
        for exps in monos:
            basis_op = PolyOverA(algebra, nvars, {(a_idx, exps): algebra.field.one})
            cols.append((theta * basis_op).to_vector(from_degree + g))
    return ExactMatrix.from_columns(algebra.field, cols,
                                    piece_dim(algebra, nvars, from_degree + g))


_TOKEN = re.compile(r"\s*([+-]|\d+/\d+|\d+|[A-Za-z_][A-Za-z_0-9]*|\^\(\d+\)|\^\d+|\*)")


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise UsageError(f"cannot parse {text!r} at position {pos}")
        out.append(m.group(1))
        pos = m.end()
    return out


def _parse_terms(algebra, nvars, text, cls, max_degree=None):
    tokens = _tokenize(text)
    if not tokens:
        return cls.zero(algebra, nvars)
    var_prefix = "a" if cls._is_operator else "x"
    result = cls.zero(algebra, nvars)
    i = 0
    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        coeff = Fraction(sign)
        alg_part = algebra.one()
        exps = [0] * nvars
        expect_factor = True
        while i < len(tokens) and tokens[i] not in "+-":
            tok = tokens[i]
            if tok == "*":
                i += 1
                expect_factor = True
                continue
            if not expect_factor:
                raise UsageError(f"missing '*' before {tok!r} in {text!r}")
            power = 1
            if i + 1 < len(tokens) and tokens[i + 1].startswith("^"):
                power = int(tokens[i + 1].strip("^()"))
                skip = 2
            else:
                skip = 1
            if re.fullmatch(r"\d+(/\d+)?", tok):
                coeff *= Fraction(tok) ** power
            elif re.fullmatch(rf"{var_prefix}\d+", tok):
                j = int(tok[1:])
                if j >= nvars:
                    raise UsageError(f"variable {tok} out of range (n+1 = {nvars})")
                exps[j] += power
            elif tok in algebra.var_names:
                gen = algebra.generator_element(tok)
                for _ in range(power):
                    alg_part = alg_part * gen
            else:
                raise UsageError(f"unknown symbol {tok!r} in {text!r}")
            i += skip
            expect_factor = False
        if max_degree is not None and sum(exps) > max_degree:
            raise UsageError(
                f"term of degree {sum(exps)} exceeds the degree cap {max_degree}")
        term = {}
        F = algebra.field
        c0 = F(coeff)
        for a_idx, ca in enumerate(alg_part.coeffs):
            if not F.is_zero(ca):
                term[(a_idx, tuple(exps))] = F.mul(c0, ca)
        result = result + cls(algebra, nvars, term)
    return result


def parse_operator(algebra, nvars, text, max_degree=None) -> PolyOverA:
    """Parse an operator like ``"t*a0 - s*a1"`` or ``"a0^2*a1"``."""
    return _parse_terms(algebra, nvars, text, PolyOverA, max_degree)


def parse_state(algebra, nvars, text, max_degree=None) -> DPOverA:
    """Parse a divided-power state like ``"x0^(3) + t*x1^(3)"``."""
    return _parse_terms(algebra, nvars, text, DPOverA, max_degree)


def vector_as_operator(algebra, nvars, degree, vec) -> PolyOverA:
    return PolyOverA.from_vector(algebra, nvars, degree, vec)


def vector_as_state(algebra, nvars, degree, vec) -> DPOverA:
    return DPOverA.from_vector(algebra, nvars, degree, vec)
