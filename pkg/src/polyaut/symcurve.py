"""Fibers of the elementary symmetric map and Sn-stable punctured curves.

``phi = (s_1, ..., s_{n-1}) : A^n -> A^{n-1}`` has one-dimensional fibers that
are stable under permutations of the coordinates. This module builds the
fibers through rational points, certifies smoothness pointwise with the
Jacobian criterion and punches out orbits of permutation groups.

Permutations are tuples of 0-based images: ``sigma[i]`` is where ``i`` goes.
They act on points by moving coordinate ``i`` to slot ``sigma[i]`` and on
polynomials by ``x_i -> x_{sigma(i)}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ContractError, DimensionError, ParseError
from .linalg import evaluate_matrix, poly_det, rank
from .polycore import Polynomial, partial_derivative, substitute, to_rational, variables

ELEMENTARY = "elementary"
POWER_SUM = "power_sum"


def _check_j(n, j, top):
    if not 1 <= j <= top:
        raise ContractError(f"index {j} out of range 1..{top}")


def elem_sym(n: int, j: int) -> Polynomial:
    """``s_j = sum_{i1 < ... < ij} x_i1 ... x_ij``."""
    _check_j(n, j, n)
    terms = {}
    for idx in combinations(range(n), j):
        e = [0] * n
        for i in idx:
            e[i] = 1
        terms[tuple(e)] = 1
    return Polynomial(n, terms)


def power_sum(n: int, j: int) -> Polynomial:
    _check_j(n, j, n)
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = j
        terms[tuple(e)] = 1
    return Polynomial(n, terms)


@dataclass(frozen=True)
class NewtonWitness:
    """``target = expression(y_1, ..., y_j)`` where ``y_i`` stands for the source basis.

    ``residual`` is the expansion of ``expression(source) - target`` in
    ``x_1, ..., x_n``; it is the zero polynomial for a valid identity.
    """

    n: int
    j: int
    direction: str
    expression: Polynomial
    residual: Polynomial

    @property
    def verified(self) -> bool:
        return self.residual.is_zero()


def _newton_expressions(j, direction):
    """Express ``p_1..p_j`` via ``y_i = s_i`` (or the reverse) in ``j`` auxiliary variables."""
    ys = variables(j)
    one = Polynomial.one(j)
    out = []
    if direction == "p_from_s":
        # p_k = sum_{i<k} (-1)^(i-1) s_i p_{k-i} + (-1)^(k-1) k s_k
        for k in range(1, j + 1):
            acc = ys[k - 1].scale(k * (-1) ** (k - 1))
            for i in range(1, k):
                acc = acc + (ys[i - 1] * out[k - i - 1]).scale((-1) ** (i - 1))
            out.append(acc)
    elif direction == "s_from_p":
        # k s_k = sum_{i=1..k} (-1)^(i-1) s_{k-i} p_i, with s_0 = 1
        for k in range(1, j + 1):
            acc = Polynomial.zero(j)
            for i in range(1, k + 1):
                prev = one if k - i == 0 else out[k - i - 1]
                acc = acc + (prev * ys[i - 1]).scale((-1) ** (i - 1))
            out.append(acc.scale(to_rational(1) / k))
    else:
        raise ContractError(f"direction must be 'p_from_s' or 's_from_p', not {direction!r}")
    return out[-1]


def newton_convert(n: int, j: int, direction: str = "p_from_s") -> NewtonWitness:
    """Newton identity between power sums and elementary symmetric functions."""
    _check_j(n, j, n)
    expr = _newton_expressions(j, direction)
    if direction == "p_from_s":
        source = [elem_sym(n, i) for i in range(1, j + 1)]
        target = power_sum(n, j)
    else:
        source = [power_sum(n, i) for i in range(1, j + 1)]
        target = elem_sym(n, j)
    residual = substitute(expr, source) - target
    return NewtonWitness(n, j, direction, expr, residual)


# ---------------------------------------------------------------------------
# Jacobian of the fibration and Vandermonde minors


def fibration_jacobian(n: int) -> list[list[Polynomial]]:
    """Rows ``1, x_i, ..., x_i^{n-2}``: the power-sum Jacobian with row factors dropped."""
    if n < 2:
        raise ContractError("need n >= 2")
    xs = variables(n)
    return [[x ** r for x in xs] for r in range(n - 1)]


def vandermonde(n: int, cols: Sequence[int]) -> Polynomial:
    """``prod_{i<j in cols} (x_j - x_i)`` over 0-based column indices in increasing order."""
    xs = variables(n)
    out = Polynomial.one(n)
    for a, b in combinations(sorted(cols), 2):
        out = out * (xs[b] - xs[a])
    return out


def maximal_minors(n: int) -> list[tuple[tuple[int, ...], Polynomial]]:
    """Each retained column set with the corresponding maximal minor of the fibration Jacobian."""
    J = fibration_jacobian(n)
    out = []
    for cols in combinations(range(n), n - 1):
        sub = [[J[r][c] for c in cols] for r in range(n - 1)]
        out.append((cols, poly_det(sub)))
    return out


def minor_vandermonde_check(n: int) -> bool:
    """Every maximal minor equals the Vandermonde product of its columns."""
    return all(m == vandermonde(n, cols) for cols, m in maximal_minors(n))


def discriminant(n: int) -> Polynomial:
    """``d = prod_{i<j} (x_i - x_j)``."""
    xs = variables(n)
    out = Polynomial.one(n)
    for i, j in combinations(range(n), 2):
        out = out * (xs[i] - xs[j])
    return out


# ---------------------------------------------------------------------------
# fibers


@dataclass(frozen=True)
class SymmetricFiber:
    n: int
    c: tuple
    generators: tuple
    basis_kind: str

    def __post_init__(self):
        if len(self.c) != self.n - 1 or len(self.generators) != self.n - 1:
            raise DimensionError("a fiber in A^n has n-1 generators")
        basis = _basis_functions(self.n, self.basis_kind)
        for g, b, cj in zip(self.generators, basis, self.c):
            if g != b - cj:
                raise ContractError("generators must be s_j - c_j (or p_j - c_j)")

    def contains(self, point) -> bool:
        return all(g.evaluate(point) == 0 for g in self.generators)

    def jacobian(self) -> list[list[Polynomial]]:
        """``(n-1) x n`` matrix ``d g_r / d x_i``."""
        return [[partial_derivative(g, i) for i in range(1, self.n + 1)]
                for g in self.generators]


def _basis_functions(n, kind):
    if kind == ELEMENTARY:
        return [elem_sym(n, j) for j in range(1, n)]
    if kind == POWER_SUM:
        return [power_sum(n, j) for j in range(1, n)]
    raise ContractError(f"basis_kind must be {ELEMENTARY!r} or {POWER_SUM!r}")


def fiber_through(point: Sequence, basis_kind: str = ELEMENTARY) -> SymmetricFiber:
    """The fiber of ``phi`` containing ``point``."""
    point = tuple(to_rational(v) for v in point)
    n = len(point)
    if n < 2:
        raise ContractError("need n >= 2")
    basis = _basis_functions(n, basis_kind)
    c = tuple(b.evaluate(point) for b in basis)
    return SymmetricFiber(n, c, tuple(b - cj for b, cj in zip(basis, c)), basis_kind)


def fiber_rank_at(fiber: SymmetricFiber, point) -> int:
    return rank(evaluate_matrix(fiber.jacobian(), point))


def smooth_at(fiber: SymmetricFiber, point) -> bool:
    """Jacobian criterion: rank ``n-1`` at a point of the fiber."""
    point = tuple(to_rational(v) for v in point)
    if len(point) != fiber.n:
        raise DimensionError(f"point has {len(point)} coordinates, expected {fiber.n}")
    if not fiber.contains(point):
        raise ContractError(f"point {format_point(point)} is not on the fiber")
    return fiber_rank_at(fiber, point) == fiber.n - 1


# ---------------------------------------------------------------------------
# permutations


def identity_perm(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def check_perm(sigma, n: int) -> tuple[int, ...]:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(n)):
        raise ContractError(f"{sigma} is not a permutation of {n} letters")
    return sigma


def compose_perms(a, b) -> tuple[int, ...]:
    """``a o b``: apply ``b`` first."""
    return tuple(a[b[i]] for i in range(len(b)))


def invert_perm(a) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, ai in enumerate(a):
        out[ai] = i
    return tuple(out)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> tuple[int, ...]:
    """Parse 1-based cycle notation such as ``"(1 2 3)(4 5)"``; ``"()"`` is the identity."""
    stripped = text.strip()
    perm = list(range(n))
    pos = 0
    for m in _CYCLE.finditer(stripped):
        if stripped[pos:m.start()].strip():
            raise ParseError("expected '('", text, pos)
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        try:
            pts = [int(t) - 1 for t in body]
        except ValueError:
            raise ParseError("cycle entries must be integers", text, m.start()) from None
        if any(not 0 <= p < n for p in pts) or len(set(pts)) != len(pts):
            raise ParseError(f"invalid cycle for {n} letters", text, m.start())
        cyc = list(range(n))
        for k, p in enumerate(pts):
            cyc[p] = pts[(k + 1) % len(pts)]
        # right-to-left: the last cycle written acts first
        perm = list(compose_perms(perm, cyc))
    if stripped[pos:].strip():
        raise ParseError("unexpected characters outside cycles", text, pos)
    return tuple(perm)


def format_cycles(sigma) -> str:
    seen = set()
    parts = []
    for i in range(len(sigma)):
        if i in seen or sigma[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = sigma[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = sigma[j]
        parts.append("(" + " ".join(str(k + 1) for k in cyc) + ")")
    return "".join(parts) or "()"


def act_on_point(sigma, point) -> tuple:
    out = [None] * len(point)
    for i, v in enumerate(point):
        out[sigma[i]] = v
    return tuple(out)


def generate_group(generators: Iterable, n: int) -> list[tuple[int, ...]]:
    """Closure of the generators under composition, identity first."""
    gens = [check_perm(g, n) for g in generators]
    ident = identity_perm(n)
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                k = compose_perms(h, g)
                if k not in seen:
                    seen.add(k)
                    elems.append(k)
                    nxt.append(k)
        frontier = nxt
    return elems


def is_group(perms: Sequence, n: int) -> bool:
    elems = {check_perm(p, n) for p in perms}
    if identity_perm(n) not in elems:
        return False
    return all(compose_perms(a, b) in elems for a in elems for b in elems) and \
        all(invert_perm(a) in elems for a in elems)


def sn_action_check(fiber: SymmetricFiber, sigma) -> bool:
    """Each generator is literally invariant under permuting the variables."""
    sigma = check_perm(sigma, fiber.n)
    return all(g.permute_variables(sigma) == g for g in fiber.generators)


def stabilizer_trivial(point) -> bool:
    """No nontrivial coordinate permutation fixes the point iff its coordinates are distinct."""
    vals = [to_rational(v) for v in point]
    return len(set(vals)) == len(vals)


def orbit(point, group: Sequence) -> list[tuple]:
    point = tuple(to_rational(v) for v in point)
    seen = []
    found = set()
    for g in group:
        q = act_on_point(g, point)
        if q not in found:
            found.add(q)
            seen.append(q)
    return sorted(seen)


@dataclass(frozen=True)
class PuncturedCurve:
    """A fiber with a group orbit removed, described by its ideal and the removed points."""

    fiber: SymmetricFiber
    removed_orbit: tuple
    group: tuple

    def __post_init__(self):
        orbit_set = set(self.removed_orbit)
        for g in self.group:
            for p in self.removed_orbit:
                if act_on_point(g, p) not in orbit_set:
                    raise ContractError("removed orbit is not closed under the group")
        for p in self.removed_orbit:
            if not self.fiber.contains(p):
                raise ContractError(f"removed point {format_point(p)} is not on the fiber")


def puncture(fiber: SymmetricFiber, point, group: Sequence) -> PuncturedCurve:
    """Remove the orbit ``G . point`` from the fiber."""
    point = tuple(to_rational(v) for v in point)
    group = [check_perm(g, fiber.n) for g in group]
    if not is_group(group, fiber.n):
        raise ContractError("permutations are not closed under composition and inverse")
    if not fiber.contains(point):
        raise ContractError(f"point {format_point(point)} is not on the fiber")
    return PuncturedCurve(fiber, tuple(orbit(point, group)), tuple(group))


def format_point(point) -> str:
    return "(" + ", ".join(str(v) for v in point) + ")"
