"""Polynomial vector fields on affine n-space.

``VectorField([g1, ..., gn])`` is the derivation ``sum g_i d/dx_i``. Brackets
follow ``[a, b]_i = a(b_i) - b(a_i)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import factorial
from typing import Sequence

from .automorphism import Automorphism, PolyMap, format_map
from .errors import (
    ContractError,
    DimensionError,
    NotInvariantError,
    NotLocallyNilpotentError,
    ParseError,
)
from .polycore import Polynomial, parse_poly, partial_derivative, to_rational, variables

DEFAULT_BOUND = 64


class VectorField:
    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Sequence[Polynomial]):
        coeffs = tuple(coeffs)
        n = len(coeffs)
        if n == 0:
            raise ContractError("a vector field needs at least one coefficient")
        for c in coeffs:
            if not isinstance(c, Polynomial):
                raise ContractError(f"coefficient {c!r} is not a Polynomial")
            if c.nvars != n:
                raise DimensionError(
                    f"coefficient in {c.nvars} variables for a field of dimension {n}")
        self._coeffs = coeffs

    @classmethod
    def zero(cls, n: int) -> "VectorField":
        return cls([Polynomial.zero(n)] * n)

    @classmethod
    def partial(cls, k: int, n: int) -> "VectorField":
        """The constant field ``d/dx_k``."""
        if not 1 <= k <= n:
            raise ContractError(f"index {k} out of range 1..{n}")
        return cls([Polynomial.one(n) if i == k - 1 else Polynomial.zero(n) for i in range(n)])

    @classmethod
    def euler(cls, n: int) -> "VectorField":
        """``E = sum x_i d/dx_i``."""
        return cls(variables(n))

    @classmethod
    def monomial(cls, exps: Sequence[int], i: int, coeff=1) -> "VectorField":
        """``c * x^exps * d/dx_i``."""
        n = len(exps)
        if not 1 <= i <= n:
            raise ContractError(f"index {i} out of range 1..{n}")
        m = Polynomial.monomial(exps, coeff)
        return cls([m if k == i - 1 else Polynomial.zero(n) for k in range(n)])

    @property
    def n(self) -> int:
        return len(self._coeffs)

    @property
    def coeffs(self) -> tuple[Polynomial, ...]:
        return self._coeffs

    def __getitem__(self, i):
        return self._coeffs[i]

    def __iter__(self):
        return iter(self._coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self._coeffs)

    @property
    def degree(self):
        return max(c.degree for c in self._coeffs)

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply(self, p)

    def __add__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        _same_dim(self, other)
        return VectorField([a + b for a, b in zip(self, other)])

    def __sub__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        _same_dim(self, other)
        return VectorField([a - b for a, b in zip(self, other)])

    def __neg__(self):
        return VectorField([-a for a in self])

    def scale(self, f) -> "VectorField":
        """Multiply every coefficient by the polynomial or scalar ``f``."""
        return VectorField([a * f for a in self])

    __mul__ = scale

    def __rmul__(self, f):
        return self.scale(f)

    def extend(self, nvars: int) -> "VectorField":
        """Adjoin variables with zero coefficients (used for flow parameters)."""
        return VectorField([c.extend(nvars) for c in self]
                           + [Polynomial.zero(nvars)] * (nvars - self.n))

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(("vf", self._coeffs))

    def __str__(self):
        return format_map(self._coeffs)

    def __repr__(self):
        return f"VectorField({str(self)!r})"


def _same_dim(a, b):
    if a.n != b.n:
        raise DimensionError(f"fields of dimensions {a.n} and {b.n}")


def parse_field(text: str, n: int | None = None) -> VectorField:
    """Parse ``"g1; ...; gn"`` as the coefficients of ``d/dx1, ..., d/dxn``."""
    parts = text.split(";")
    if n is None:
        n = len(parts)
    if len(parts) != n:
        raise ParseError(f"expected {n} ';'-separated coefficients, found {len(parts)}", text, 0)
    return VectorField([parse_poly(p, n) for p in parts])


def apply(delta: VectorField, p: Polynomial) -> Polynomial:
    """``delta(p) = sum g_i dp/dx_i``."""
    if p.nvars != delta.n:
        raise DimensionError(f"field of dimension {delta.n} applied to a polynomial "
                             f"in {p.nvars} variables")
    out = Polynomial.zero(delta.n)
    for i, g in enumerate(delta, start=1):
        if g:
            d = partial_derivative(p, i)
            if d:
                out = out + g * d
    return out


def bracket(a: VectorField, b: VectorField) -> VectorField:
    _same_dim(a, b)
    return VectorField([apply(a, bi) - apply(b, ai) for ai, bi in zip(a, b)])


def divergence(delta: VectorField) -> Polynomial:
    out = Polynomial.zero(delta.n)
    for i, g in enumerate(delta, start=1):
        out = out + partial_derivative(g, i)
    return out


def is_vfc(delta: VectorField) -> bool:
    """Constant divergence."""
    return divergence(delta).is_constant()


class LNDStatus(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class LNDResult:
    """Outcome of the bounded local-nilpotency test.

    For ``YES``, ``orders[i]`` is the least ``k`` with ``delta^k(x_{i+1}) = 0``.
    """

    status: LNDStatus
    field: VectorField
    bound: int
    orders: tuple[int, ...] | None = None
    reason: str = ""

    @property
    def certified(self) -> bool:
        return self.status is LNDStatus.YES


class _Echelon:
    """Incremental row echelon basis of polynomials, used to spot linear relations."""

    def __init__(self):
        self.rows = []

    def reduce(self, p):
        for pivot, row in self.rows:
            c = p.coefficient(pivot)
            if c:
                p = p - row.scale(c)
        return p

    def add(self, p) -> bool:
        """Insert ``p``; return False when it already lies in the span."""
        r = self.reduce(p)
        if r.is_zero():
            return False
        pivot, c = max(r.terms.items())
        self.rows.append((pivot, r.scale(1 / c)))
        return True


def is_locally_nilpotent(delta: VectorField, bound: int = DEFAULT_BOUND) -> LNDResult:
    """Semi-decide local nilpotency by iterating on the coordinate functions.

    ``YES`` when every ``x_i`` is killed by some ``delta^k`` with ``k <= bound``.
    ``NO`` on a sound certificate: nonzero divergence, or an iterate
    ``delta^k(x_i) != 0`` lying in the span of the earlier ones (the cyclic
    subspace then carries a non-nilpotent operator). Otherwise ``UNKNOWN``.
    """
    if bound < 1:
        raise ContractError("iteration bound must be at least 1")
    div = divergence(delta)
    if not div.is_zero():
        return LNDResult(LNDStatus.NO, delta, bound,
                         reason=f"divergence {div} is nonzero")
    orders = []
    for i, x in enumerate(variables(delta.n), start=1):
        basis = _Echelon()
        basis.add(x)
        q = x
        for k in range(1, bound + 1):
            q = apply(delta, q)
            if q.is_zero():
                orders.append(k)
                break
            if not basis.add(q):
                return LNDResult(LNDStatus.NO, delta, bound,
                                 reason=f"delta^{k}(x{i}) is a nontrivial combination "
                                        f"of lower iterates")
        else:
            return LNDResult(LNDStatus.UNKNOWN, delta, bound,
                             reason=f"delta^k(x{i}) != 0 for all k <= {bound}")
    return LNDResult(LNDStatus.YES, delta, bound, orders=tuple(orders))


def _exp_map(delta: VectorField, orders, sign=1) -> PolyMap:
    comps = []
    for x, order in zip(variables(delta.n), orders):
        total = Polynomial.zero(delta.n)
        q = x
        for k in range(order):
            total = total + q.scale(to_rational(sign ** k) / factorial(k))
            q = apply(delta, q)
        comps.append(total)
    return PolyMap(comps)


def exp(delta: VectorField, certificate: LNDResult) -> Automorphism:
    """Time-one map of a certified locally nilpotent field.

    ``exp(delta)(x)_i = sum_k delta^k(x_i) / k!``. The inverse is the
    exponential of ``-delta``; both compositions are checked.
    """
    if certificate.field != delta:
        raise ContractError("certificate belongs to a different vector field")
    if not certificate.certified:
        raise NotLocallyNilpotentError(
            f"exp needs a YES certificate, got {certificate.status.value}: {certificate.reason}")
    fwd = _exp_map(delta, certificate.orders)
    bwd = _exp_map(delta, certificate.orders, sign=-1)
    return Automorphism(fwd, bwd)


def flow_point(delta: VectorField, certificate: LNDResult, s, point) -> tuple:
    """Evaluate ``exp(s * delta)`` at a rational point without building the map."""
    if not certificate.certified or certificate.field != delta:
        raise NotLocallyNilpotentError("flow_point needs a YES certificate for this field")
    s = to_rational(s)
    out = []
    for x, order in zip(variables(delta.n), certificate.orders):
        total = to_rational(0)
        q = x
        for k in range(order):
            total += q.evaluate(point) * s ** k / factorial(k)
            q = apply(delta, q)
        out.append(total)
    return tuple(out)


def modify(f: Polynomial, delta: VectorField) -> VectorField:
    """The modification ``f * delta`` by a ``delta``-invariant ``f``."""
    if f.nvars != delta.n:
        raise DimensionError("invariant and field live in different dimensions")
    if not apply(delta, f).is_zero():
        raise NotInvariantError(f"{f} is not invariant under the field; modification undefined")
    return delta.scale(f)
