"""Adjoint action on vector fields and recovery of an automorphism from it.

``ad(F, delta)`` is the pushforward ``F_* delta``: its ``j``-th coefficient is
``delta(F_j)`` composed with ``F^{-1}``. For ``theta = Ad(f^{-1})`` the values
``theta(d/dx_k)`` determine the Jacobian of ``f``; integrating its columns
gives ``f`` up to a translation, and the image of the Euler field fixes the
translation.
"""

from __future__ import annotations

import json
from typing import Sequence

from .automorphism import Automorphism, PolyMap, invert
from .errors import (
    ContractError,
    DimensionError,
    DomainError,
    NotInGammaError,
    NotReconstructibleError,
)
from .linalg import poly_det, poly_inverse
from .polycore import Polynomial, integrate, partial_derivative, substitute
from .vectorfield import VectorField, apply, parse_field

SCHEMA_VERSION = 1


def ad(F: Automorphism, delta: VectorField) -> VectorField:
    """Pushforward of ``delta`` along ``F``."""
    if F.n != delta.n:
        raise DimensionError(f"automorphism of dimension {F.n}, field of dimension {delta.n}")
    back = F.inverse.components
    return VectorField([substitute(apply(delta, fj), back) for fj in F.forward])


def pulls_back_to(F: PolyMap, delta: VectorField, target: VectorField) -> bool:
    """Test ``ad(F, delta) == target`` without inverting ``F``: ``delta(F_j) = target_j o F``."""
    return all(apply(delta, fj) == substitute(tj, F.components)
               for fj, tj in zip(F, target))


class LieAutData:
    """Finite presentation of a Lie algebra automorphism ``theta``.

    ``partials[k]`` is ``theta(d/dx_{k+1})`` and ``euler`` is ``theta(E)``
    for the Euler field ``E = sum x_i d/dx_i`` (optional; only translation
    recovery needs it).
    """

    __slots__ = ("n", "partials", "euler")

    def __init__(self, partials: Sequence[VectorField], euler: VectorField | None = None):
        partials = tuple(partials)
        n = len(partials)
        if n == 0:
            raise ContractError("need the images of d/dx_1, ..., d/dx_n")
        for p in partials:
            if p.n != n:
                raise DimensionError(f"image field of dimension {p.n}, expected {n}")
        if euler is not None and euler.n != n:
            raise DimensionError(f"Euler image of dimension {euler.n}, expected {n}")
        self.n = n
        self.partials = partials
        self.euler = euler
        d = poly_det(theta_matrix(self))
        if d.is_zero() or not d.is_constant():
            raise DomainError(
                f"probe matrix has determinant {d}, not a nonzero constant; malformed data")

    @classmethod
    def identity(cls, n: int) -> "LieAutData":
        return cls([VectorField.partial(k, n) for k in range(1, n + 1)], VectorField.euler(n))

    def __eq__(self, other):
        if not isinstance(other, LieAutData):
            return NotImplemented
        return self.partials == other.partials and self.euler == other.euler

    def to_json(self) -> str:
        obj = {"schema": SCHEMA_VERSION, "n": self.n,
               "partials": [str(p) for p in self.partials]}
        if self.euler is not None:
            obj["euler"] = str(self.euler)
        return json.dumps(obj)

    @classmethod
    def from_json(cls, text: str) -> "LieAutData":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ContractError(f"invalid JSON: {exc}") from None
        if not isinstance(obj, dict) or "n" not in obj or "partials" not in obj:
            raise ContractError("Lie data JSON needs 'n' and 'partials'")
        schema = obj.get("schema", SCHEMA_VERSION)
        if schema != SCHEMA_VERSION:
            raise ContractError(f"unsupported schema version {schema}")
        n = obj["n"]
        if not isinstance(n, int) or len(obj["partials"]) != n:
            raise ContractError("'partials' must list exactly n fields")
        partials = [parse_field(t, n) for t in obj["partials"]]
        euler = obj.get("euler")
        return cls(partials, parse_field(euler, n) if euler is not None else None)


def inverse_adjoint_data(f: Automorphism) -> LieAutData:
    """Probe data of ``theta = Ad(f^{-1})``; ``reconstruct`` maps it back to ``f``."""
    g = f.inv()
    n = f.n
    return LieAutData([ad(g, VectorField.partial(k, n)) for k in range(1, n + 1)],
                      ad(g, VectorField.euler(n)))


def theta_matrix(theta: LieAutData) -> list[list[Polynomial]]:
    """Row ``k`` holds the coefficients of ``theta(d/dx_k)``: ``T[k][j] = theta(d/dx_k)(x_j)``.

    With this orientation ``T^{-1}`` equals ``jacobian_matrix(f)`` for
    ``theta = Ad(f^{-1})``.
    """
    return [list(p.coeffs) for p in theta.partials]


def theta_matrix_inverse(theta: LieAutData) -> list[list[Polynomial]]:
    return poly_inverse(theta_matrix(theta))


def gradient_integrate(h: Sequence[Polynomial]) -> Polynomial:
    """The unique ``f`` with ``grad f = h`` and ``f(0) = 0``.

    Raises :class:`NotInGammaError` when ``dh_i/dx_j != dh_j/dx_i`` for some pair.
    """
    h = list(h)
    n = len(h)
    if n == 0 or any(p.nvars != n for p in h):
        raise DimensionError("gradient data must be n polynomials in n variables")
    for i in range(n):
        for j in range(i + 1, n):
            if partial_derivative(h[i], j + 1) != partial_derivative(h[j], i + 1):
                raise NotInGammaError(
                    f"not a gradient: d h{i + 1}/d x{j + 1} != d h{j + 1}/d x{i + 1}")
    f = Polynomial.zero(n)
    for i in range(n):
        # by symmetry the remainder only involves x_{i+1}, ..., x_n
        rest = h[i] - partial_derivative(f, i + 1)
        f = f + integrate(rest, i + 1)
    return f


def normalized_reconstruction(theta: LieAutData) -> PolyMap:
    """``f0 = f - f(0)`` from the probe values on ``d/dx_1, ..., d/dx_n`` alone."""
    H = theta_matrix_inverse(theta)
    n = theta.n
    comps = []
    for j in range(n):
        column = [H[i][j] for i in range(n)]
        try:
            comps.append(gradient_integrate(column))
        except NotInGammaError as exc:
            raise NotInGammaError(f"column {j + 1} of the inverse probe matrix: {exc}") from None
    return PolyMap(comps)


def reconstruct(theta: LieAutData) -> Automorphism:
    """Recover ``f`` from ``theta = Ad(f^{-1})``.

    Steps: integrate ``f0 = f - f(0)`` from the inverse probe matrix; push the
    data forward by ``f0``, which must fix every ``d/dx_k`` and send ``E`` to
    ``E + c`` for a constant vector ``c``; then ``f = f0 + c``. The result is
    certified by :func:`invert` and re-checked against every probe.
    """
    if theta.euler is None:
        raise ContractError("reconstruct needs the image of the Euler field")
    n = theta.n
    f0 = normalized_reconstruction(theta)
    for k, image in enumerate(theta.partials, start=1):
        for j, fj in enumerate(f0):
            if apply(image, fj) != (1 if j == k - 1 else 0):
                raise NotReconstructibleError(
                    f"residual does not fix d/dx{k}; data is not in the image of Ad")
    shift = [apply(theta.euler, fj) - fj for fj in f0]
    if not all(c.is_constant() for c in shift):
        raise NotReconstructibleError(
            "residual is not a translation: the Euler image differs from E by a "
            "non-constant field")
    f = PolyMap([fj + c for fj, c in zip(f0, shift)])
    F = invert(f)
    g = F.inv()
    for k, image in enumerate(theta.partials, start=1):
        if ad(g, VectorField.partial(k, n)) != image:
            raise NotReconstructibleError(f"round trip fails on d/dx{k}")
    if ad(g, VectorField.euler(n)) != theta.euler:
        raise NotReconstructibleError("round trip fails on the Euler field")
    return F
