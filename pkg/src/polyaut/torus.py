"""Weights of the diagonal torus on monomial vector fields.

Conjugating ``exp(s x^a d/dx_i)`` by ``t = diag(t_1, ..., t_n)`` rescales the
parameter by ``t^(e_i - a)``, so the weight of the root subgroup is
``e_i - a``. Weights for the torus ``T' = T cap SL_n`` are the same vectors
modulo ``(1, ..., 1)``, normalized to last entry zero.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import ContractError
from .linalg import nullspace
from .polycore import Polynomial, monomials_of_degree, monomials_up_to
from .vectorfield import VectorField, bracket


def _check_root_type(a, i):
    n = len(a)
    if not 1 <= i <= n:
        raise ContractError(f"index {i} out of range 1..{n}")
    if a[i - 1] != 0:
        raise ContractError(
            f"x^{tuple(a)} d/dx{i} involves x{i}; not a monomial root field")


def monomial_weight(a: Sequence[int], i: int) -> tuple[int, ...]:
    """Weight ``e_i - a`` of the root subgroup ``exp(s x^a d/dx_i)``."""
    a = tuple(a)
    _check_root_type(a, i)
    return tuple((1 if k == i - 1 else 0) - ak for k, ak in enumerate(a))


def tprime_weight(weight: Sequence[int]) -> tuple[int, ...]:
    """Canonical representative modulo the diagonal: last entry zero."""
    last = weight[-1]
    return tuple(w - last for w in weight)


def field_weight(delta: VectorField) -> tuple[int, ...] | None:
    """Weight of a field whose terms all share one weight; ``None`` otherwise."""
    weights = set()
    for i, g in enumerate(delta, start=1):
        for a in g.terms:
            weights.add(tuple((1 if k == i - 1 else 0) - ak for k, ak in enumerate(a)))
    return weights.pop() if len(weights) == 1 else None


@dataclass(frozen=True)
class RootSubgroup:
    exponent: tuple[int, ...]
    index: int
    weight: tuple[int, ...]
    tprime: tuple[int, ...]

    @property
    def field(self) -> VectorField:
        return VectorField.monomial(self.exponent, self.index)

    def monomial_text(self) -> str:
        return str(Polynomial.monomial(self.exponent))

    def as_row(self) -> dict:
        return {"monomial": self.monomial_text(), "i": self.index,
                "weight": list(self.weight), "tprime_weight": list(self.tprime)}


def enumerate_root_subgroups(n: int, dmax: int) -> list[RootSubgroup]:
    """All ``x^a d/dx_i`` with ``|a| <= dmax`` and ``a_i = 0``, with their weights."""
    if n < 2:
        raise ContractError("need n >= 2")
    if dmax < 0:
        raise ContractError("dmax must be nonnegative")
    out = []
    for a in monomials_up_to(n, dmax):
        for i in range(1, n + 1):
            if a[i - 1] == 0:
                w = monomial_weight(a, i)
                out.append(RootSubgroup(a, i, w, tprime_weight(w)))
    return out


def weights_distinct(roots: Sequence[RootSubgroup]) -> bool:
    tp = [r.tprime for r in roots]
    return len(set(tp)) == len(tp)


# ---------------------------------------------------------------------------
# highest weights of k^n (x) S^d


def _basis(n, d):
    return [(a, j) for a in monomials_of_degree(n, d) for j in range(n)]


def _raise_tensor(vec, i):
    """Action of ``E_{i,i+1}`` (0-based ``i``) on ``k^n (x) S^d(k^n)``.

    ``vec`` maps ``(a, j)`` (standing for ``x^a (x) e_j``) to coefficients. The
    operator acts as the derivation ``x_i d/dx_{i+1}`` on the polynomial factor
    and sends ``e_{i+1}`` to ``e_i``.
    """
    out = Counter()
    for (a, j), c in vec.items():
        if a[i + 1]:
            b = list(a)
            b[i] += 1
            b[i + 1] -= 1
            out[(tuple(b), j)] += c * a[i + 1]
        if j == i + 1:
            out[(a, i)] += c
    return out


def _raise_field(vec, i, n):
    """Action of ``E_{i,i+1}`` on vector fields: bracket with ``x_{i+1} d/dx_i``."""
    delta = _vec_to_field(vec, n)
    e = [0] * n
    e[i + 1] = 1
    res = bracket(VectorField.monomial(e, i + 1), delta)
    out = Counter()
    for j, g in enumerate(res):
        for a, c in g.terms.items():
            out[(a, j)] += c
    return out


def _vec_to_field(vec, n):
    coeffs = [dict() for _ in range(n)]
    for (a, j), c in vec.items():
        coeffs[j][a] = c
    return VectorField([Polynomial(n, t) for t in coeffs])


def _tensor_weight(a, j):
    return tuple(ak + (1 if k == j else 0) for k, ak in enumerate(a))


def _field_weight(a, j):
    return tuple((1 if k == j else 0) - ak for k, ak in enumerate(a))


def decompose_module(n: int, d: int, module: str = "tensor") -> Counter:
    """Highest weights, with multiplicity, of a degree-``d`` piece.

    ``module="tensor"`` is ``k^n (x) S^d(k^n)`` (``x^a (x) e_j`` has weight
    ``a + e_j``); ``module="fields"`` is the space of homogeneous vector fields
    of degree ``d`` under the adjoint action (``x^a d/dx_j`` has weight
    ``e_j - a``). In each weight space the highest weight vectors are the
    common kernel of the raising operators ``E_{i,i+1}``, found by exact
    elimination; the kernel dimension is the multiplicity.
    """
    if n < 2:
        raise ContractError("need n >= 2")
    if d < 0:
        raise ContractError("degree must be nonnegative")
    if module == "tensor":
        weight_of = _tensor_weight

        def raise_op(vec, i):
            return _raise_tensor(vec, i)
    elif module == "fields":
        weight_of = _field_weight

        def raise_op(vec, i):
            return _raise_field(vec, i, n)
    else:
        raise ContractError(f"unknown module {module!r}")

    spaces = {}
    for a, j in _basis(n, d):
        spaces.setdefault(weight_of(a, j), []).append((a, j))

    result = Counter()
    for w, basis in spaces.items():
        images = [[raise_op({b: 1}, i) for i in range(n - 1)] for b in basis]
        # rows indexed by (operator, target basis element), columns by basis
        targets = sorted({(i, key) for img in images for i, out in enumerate(img)
                          for key, c in out.items() if c})
        row_of = {t: r for r, t in enumerate(targets)}
        matrix = [[0] * len(basis) for _ in targets]
        for col, img in enumerate(images):
            for i, out in enumerate(img):
                for key, c in out.items():
                    if c:
                        matrix[row_of[(i, key)]][col] = c
        mult = len(nullspace(matrix, ncols=len(basis)))
        if mult:
            result[w] = mult
    return result


def is_multiplicity_free(n: int, d: int, module: str = "tensor") -> bool:
    return all(m == 1 for m in decompose_module(n, d, module).values())
