"""Polynomial maps of affine n-space and certified automorphisms.

A :class:`PolyMap` is a tuple ``(f1, ..., fn)`` of polynomials in ``n``
variables, read as the morphism ``x -> (f1(x), ..., fn(x))``. Composition
follows function composition: ``compose(F, G)(x) = F(G(x))``.

The Jacobian matrix uses the orientation ``J[i][j] = d f_j / d x_i``: row
``i`` differentiates, column ``j`` selects the component. Column ``j`` is thus
the gradient of ``f_j``.
"""

from __future__ import annotations

from typing import Sequence

from .errors import ContractError, DimensionError, NotAutomorphismError, ParseError
from .linalg import det as rational_det
from .linalg import inverse as rational_inverse
from .linalg import poly_det, to_matrix
from .polycore import (
    NEG_INF,
    Polynomial,
    Rational,
    format_poly,
    parse_poly,
    partial_derivative,
    substitute,
    to_rational,
    variables,
)


class PolyMap:
    """Immutable polynomial endomorphism of affine ``n``-space."""

    __slots__ = ("_components",)

    def __init__(self, components: Sequence[Polynomial]):
        comps = tuple(components)
        n = len(comps)
        if n == 0:
            raise ContractError("a polynomial map needs at least one component")
        for c in comps:
            if not isinstance(c, Polynomial):
                raise ContractError(f"component {c!r} is not a Polynomial")
            if c.nvars != n:
                raise DimensionError(
                    f"component in {c.nvars} variables for a map of dimension {n}")
        self._components = comps

    @classmethod
    def identity(cls, n: int) -> "PolyMap":
        return cls(variables(n))

    @property
    def n(self) -> int:
        return len(self._components)

    @property
    def components(self) -> tuple[Polynomial, ...]:
        return self._components

    def __getitem__(self, i):
        return self._components[i]

    def __iter__(self):
        return iter(self._components)

    def __len__(self):
        return len(self._components)

    @property
    def degree(self):
        return max(c.degree for c in self._components)

    def is_identity(self) -> bool:
        return self._components == tuple(variables(self.n))

    def __call__(self, point):
        return tuple(c.evaluate(point) for c in self._components)

    def __eq__(self, other):
        if not isinstance(other, PolyMap):
            return NotImplemented
        return self._components == other._components

    def __hash__(self):
        return hash(self._components)

    def __matmul__(self, other: "PolyMap") -> "PolyMap":
        return compose(self, other)

    def __str__(self):
        return format_map(self)

    def __repr__(self):
        return f"PolyMap({format_map(self)!r})"


def parse_map(text: str, n: int | None = None) -> PolyMap:
    """Parse ``"f1; f2; ...; fn"``. ``n`` defaults to the number of components."""
    parts = text.split(";")
    if n is None:
        n = len(parts)
    if len(parts) != n:
        raise ParseError(f"expected {n} ';'-separated components, found {len(parts)}", text, 0)
    comps = []
    offset = 0
    for part in parts:
        try:
            comps.append(parse_poly(part, n))
        except ParseError as exc:
            raise ParseError(str(exc).rsplit(" at position", 1)[0], text,
                             offset + exc.position) from None
        offset += len(part) + 1
    return PolyMap(comps)


def format_map(F) -> str:
    return "; ".join(format_poly(c) for c in F)


def compose(F: PolyMap, G: PolyMap) -> PolyMap:
    """``(F o G)_i = F_i(G_1, ..., G_n)``."""
    if F.n != G.n:
        raise DimensionError(f"cannot compose maps of dimensions {F.n} and {G.n}")
    return PolyMap([substitute(f, G.components) for f in F])


def jacobian_matrix(F: PolyMap) -> list[list[Polynomial]]:
    """``J[i][j] = d F_j / d x_i``."""
    n = F.n
    return [[partial_derivative(F[j], i + 1) for j in range(n)] for i in range(n)]


def jacobian_det(F: PolyMap) -> Polynomial:
    return poly_det(jacobian_matrix(F))


def linear_part(F: PolyMap) -> list[list[Rational]]:
    """Matrix ``A`` with ``F(x) = F(0) + A x + (higher order)``; ``A[j][i]`` is the ``x_i`` coefficient of ``F_j``."""
    n = F.n
    rows = []
    for f in F:
        row = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            row.append(f.coefficient(e))
        rows.append(row)
    return rows


class Automorphism:
    """A polynomial map together with a verified two-sided polynomial inverse."""

    __slots__ = ("forward", "inverse", "jac_value")

    def __init__(self, forward: PolyMap, inverse: PolyMap, *,
                 _certified: bool = False, _jac=None):
        # _certified/_jac are for constructions whose inverse and Jacobian are
        # known in closed form (group law, explicit constructors)
        if forward.n != inverse.n:
            raise DimensionError("forward and inverse maps have different dimensions")
        if not _certified:
            if not compose(forward, inverse).is_identity():
                raise NotAutomorphismError("forward o inverse is not the identity")
            if not compose(inverse, forward).is_identity():
                raise NotAutomorphismError("inverse o forward is not the identity")
        if _jac is None or not _certified:
            jd = jacobian_det(forward)
            if not jd.is_constant() or jd.is_zero():
                raise NotAutomorphismError(f"Jacobian determinant {jd} is not a nonzero constant")
            _jac = jd.constant_term
        self.forward = forward
        self.inverse = inverse
        self.jac_value = to_rational(_jac)

    @property
    def n(self) -> int:
        return self.forward.n

    @classmethod
    def identity(cls, n: int) -> "Automorphism":
        ident = PolyMap.identity(n)
        return cls(ident, ident, _certified=True, _jac=1)

    def inv(self) -> "Automorphism":
        return Automorphism(self.inverse, self.forward, _certified=True, _jac=1 / self.jac_value)

    def __matmul__(self, other: "Automorphism") -> "Automorphism":
        """Composition ``self o other``; the inverse is ``other^-1 o self^-1``."""
        if not isinstance(other, Automorphism):
            return NotImplemented
        return Automorphism(compose(self.forward, other.forward),
                            compose(other.inverse, self.inverse), _certified=True,
                            _jac=self.jac_value * other.jac_value)

    def conjugate(self, other: "Automorphism") -> "Automorphism":
        """``self o other o self^-1``."""
        return self @ other @ self.inv()

    def __call__(self, point):
        return self.forward(point)

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.forward == other.forward

    def __hash__(self):
        return hash(self.forward)

    def __str__(self):
        return format_map(self.forward)

    def __repr__(self):
        return f"Automorphism({format_map(self.forward)!r})"


def is_saut(F: Automorphism) -> bool:
    """Membership in the kernel of the Jacobian character."""
    return F.jac_value == 1


def jac(F: Automorphism) -> Rational:
    return F.jac_value


def inverse_degree_bound(F: PolyMap) -> int:
    d = F.degree
    if d == NEG_INF or d < 1:
        raise NotAutomorphismError("a constant map is not an automorphism")
    return d ** (F.n - 1)


def invert(F: PolyMap) -> Automorphism:
    """Compute and certify the polynomial inverse of ``F``.

    Write ``F = b + A(x + Q(x))`` with ``Q`` of order at least two. The inverse
    of ``P = x + Q`` is found degree by degree: its homogeneous part of degree
    ``d`` is ``-[Q(G_{<d})]_d``, a unitriangular instance of undetermined
    coefficients. Candidates are checked whenever a computed degree part
    vanishes; the search gives up at the bound ``deg(F)^(n-1)``.
    """
    jd = jacobian_det(F)
    if jd.is_zero() or not jd.is_constant():
        raise NotAutomorphismError(
            f"Jacobian determinant {format_poly(jd)} is not a nonzero constant")
    n = F.n
    bound = inverse_degree_bound(F)
    A = linear_part(F)
    A_inv = rational_inverse(A)
    b = [f.constant_term for f in F]
    xs = variables(n)

    def apply_matrix(M, vec):
        return [sum((v.scale(m) for m, v in zip(row, vec) if m), Polynomial.zero(n)) for row in M]

    higher = [f.without_constant() - sum((x.scale(a) for a, x in zip(row, xs) if a),
                                         Polynomial.zero(n))
              for f, row in zip(F, A)]
    Q = apply_matrix(A_inv, higher)
    # pre: F^{-1}(y) = G(A^{-1}(y - b))
    pre = apply_matrix(A_inv, [x - c for x, c in zip(xs, b)])

    def attempt(G):
        # check in the original coordinates, where F and its inverse stay sparse
        inverse = PolyMap([substitute(g, pre) for g in G])
        return inverse if compose(inverse, F).is_identity() else None

    G = list(xs)
    inverse = None
    if all(q.is_zero() for q in Q):
        inverse = attempt(G)
    else:
        for d in range(2, bound + 2):
            part = [-substitute(q, G, max_degree=d).homogeneous_component(d) for q in Q]
            if all(p.is_zero() for p in part):
                inverse = attempt(G)
                if inverse is not None:
                    break
            elif d > bound:
                break
            else:
                G = [g + p for g, p in zip(G, part)]
    if inverse is None:
        raise NotAutomorphismError(
            f"no polynomial inverse of degree <= {bound}; the map is not an automorphism")
    # inverse o F = id makes F injective, hence bijective (Ax-Grothendieck), so
    # the one-sided check in attempt() already certifies both compositions
    return Automorphism(F, inverse, _certified=True, _jac=jd.constant_term)


def make_affine(A, b) -> Automorphism:
    """``x -> A x + b`` with inverse ``x -> A^{-1}(x - b)``."""
    A = to_matrix(A)
    n = len(A)
    if any(len(r) != n for r in A):
        raise DimensionError("affine matrix must be square")
    b = [to_rational(v) for v in b]
    if len(b) != n:
        raise DimensionError("translation vector has the wrong length")
    if rational_det(A) == 0:
        raise ContractError("singular linear part")
    A_inv = rational_inverse(A)
    xs = variables(n)

    def affine(M, shift):
        return PolyMap([sum((x.scale(m) for m, x in zip(row, xs) if m), Polynomial.zero(n)) + s
                        for row, s in zip(M, shift)])

    back_shift = [-sum((m * v for m, v in zip(row, b)), to_rational(0)) for row in A_inv]
    return Automorphism(affine(A, b), affine(A_inv, back_shift), _certified=True,
                        _jac=rational_det(A))


def make_elementary(i: int, p: Polynomial) -> Automorphism:
    """``x_i -> x_i + p`` where ``p`` does not involve ``x_i``; inverse ``x_i -> x_i - p``."""
    n = p.nvars
    if not 1 <= i <= n:
        raise ContractError(f"index {i} out of range 1..{n}")
    if i in p.variables():
        raise ContractError(f"elementary map: p depends on x{i}")
    xs = variables(n)
    fwd = list(xs)
    bwd = list(xs)
    fwd[i - 1] = xs[i - 1] + p
    bwd[i - 1] = xs[i - 1] - p
    return Automorphism(PolyMap(fwd), PolyMap(bwd), _certified=True, _jac=1)


def make_translation(a) -> Automorphism:
    """``t_a : x -> x + a``."""
    a = [to_rational(v) for v in a]
    xs = variables(len(a))
    return Automorphism(PolyMap([x + c for x, c in zip(xs, a)]),
                        PolyMap([x - c for x, c in zip(xs, a)]), _certified=True, _jac=1)


def make_diagonal(entries) -> Automorphism:
    n = len(entries)
    return make_affine([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)],
                       [0] * n)
