"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` lives in ``Q[x1, ..., xn]`` for a fixed ``nvars = n``.
Arithmetic runs on FLINT's sparse ``fmpq_mpoly``; the public view is a mapping
from exponent tuples to nonzero rationals. Coefficients come out as
``gmpy2.mpq`` values, which compare and hash equal to
:class:`fractions.Fraction` and plain ``int``.

Variables are 1-indexed in the public API (``x1`` is variable 1), matching the
text grammar::

    expr   := term (('+'|'-') term)*
    term   := coeff ('*'? factor)*
    factor := 'x' INT ('^' INT)?
    coeff  := INT ('/' INT)?          (optional)
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import flint
from gmpy2 import mpq

from .errors import ContractError, DimensionError, ParseError

Rational = type(mpq(0))

#: Degree of the zero polynomial. Compares below every integer and absorbs
#: addition, so ``deg(p*q) == deg(p) + deg(q)`` holds without special cases.
NEG_INF = float("-inf")

_ZERO = mpq(0)
_ONE = mpq(1)


def to_rational(value) -> Rational:
    """Coerce int, Fraction, mpq or a ``"p/q"`` string to an exact rational."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, Fraction, str)):
        return mpq(value)
    if isinstance(value, flint.fmpq):
        return mpq(int(value.p), int(value.q))
    if isinstance(value, flint.fmpz):
        return mpq(int(value))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return mpq(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _fmpq(value) -> "flint.fmpq":
    c = to_rational(value)
    return flint.fmpq(int(c.numerator), int(c.denominator))


@lru_cache(maxsize=None)
def _ctx(nvars):
    return flint.fmpq_mpoly_ctx.get(("x", nvars), "deglex")


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables."""

    __slots__ = ("_nvars", "_p", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        if nvars < 0:
            raise ContractError("nvars must be nonnegative")
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars:
                    raise DimensionError(
                        f"exponent vector {exps} has length {len(exps)}, expected {nvars}")
                if any(e < 0 for e in exps):
                    raise ContractError(f"negative exponent in {exps}")
                c = to_rational(coeff)
                if c:
                    clean[exps] = clean.get(exps, _ZERO) + c
        self._nvars = nvars
        self._p = _ctx(nvars).from_dict({e: _fmpq(c) for e, c in clean.items() if c})
        self._terms = None
        self._hash = None

    @classmethod
    def _wrap(cls, nvars, p):
        # trusted constructor around an fmpq_mpoly of the right context
        out = object.__new__(cls)
        out._nvars = nvars
        out._p = p
        out._terms = None
        out._hash = None
        return out

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._wrap(nvars, _ctx(nvars).from_dict({}))

    @classmethod
    def constant(cls, value, nvars: int) -> "Polynomial":
        return cls._wrap(nvars, _ctx(nvars).constant(_fmpq(value)))

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(1, nvars)

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        """The coordinate function ``x_i`` (1-indexed)."""
        _check_index(i, nvars)
        return cls._wrap(nvars, _ctx(nvars).gen(i - 1))

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "Polynomial":
        return cls(len(exps), {tuple(exps): coeff})

    # -- accessors ------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> Mapping[tuple, Rational]:
        if self._terms is None:
            self._terms = {tuple(int(k) for k in e): mpq(int(c.p), int(c.q))
                           for e, c in self._p.to_dict().items()}
        return MappingProxyType(self._terms)

    def coefficient(self, exps: Sequence[int]) -> Rational:
        exps = tuple(exps)
        if len(exps) != self._nvars:
            raise DimensionError("exponent vector has the wrong length")
        c = self._p[exps]
        return mpq(int(c.p), int(c.q))

    @property
    def constant_term(self) -> Rational:
        return self.coefficient((0,) * self._nvars)

    @property
    def degree(self):
        """Total degree; ``NEG_INF`` for the zero polynomial."""
        if self._p.is_zero():
            return NEG_INF
        return int(self._p.total_degree())

    def degree_in(self, i: int):
        _check_index(i, self._nvars)
        if self._p.is_zero():
            return NEG_INF
        return int(self._p.degrees()[i - 1])

    def order(self):
        """Lowest total degree of a term; ``inf`` for the zero polynomial."""
        if self._p.is_zero():
            return float("inf")
        return min(sum(e) for e in self.terms)

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def is_constant(self) -> bool:
        return self._p.is_constant()

    def variables(self) -> set[int]:
        """1-based indices of the variables that actually occur."""
        if self._p.is_zero():
            return set()
        return {i + 1 for i, d in enumerate(self._p.degrees()) if d > 0}

    def __len__(self):
        return len(self._p)

    def __bool__(self):
        return not self._p.is_zero()

    def sorted_terms(self) -> list[tuple[tuple, Rational]]:
        """Terms in printing order: lexicographically descending exponents."""
        return sorted(self.terms.items(), reverse=True)

    def graded_terms(self) -> list[tuple[tuple, Rational]]:
        """Terms in graded-lex order, highest total degree first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    # -- arithmetic -------------------------------------------------------

    def _other(self, other):
        """The fmpq_mpoly or fmpq counterpart of ``other``, or None."""
        if isinstance(other, Polynomial):
            if other._nvars != self._nvars:
                raise DimensionError(
                    f"polynomials in {self._nvars} and {other._nvars} variables")
            return other._p
        try:
            return _fmpq(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Polynomial._wrap(self._nvars, self._p + o)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._wrap(self._nvars, -self._p)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Polynomial._wrap(self._nvars, self._p - o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Polynomial._wrap(self._nvars, o - self._p)

    def scale(self, factor) -> "Polynomial":
        return Polynomial._wrap(self._nvars, self._p * _fmpq(factor))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Polynomial._wrap(self._nvars, self._p * o)

    __rmul__ = __mul__

    def mul_truncated(self, other: "Polynomial", max_degree: int) -> "Polynomial":
        """Product with every term of total degree above ``max_degree`` dropped."""
        return (self * other).truncate(max_degree)

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if not other.is_constant() or other.is_zero():
                return NotImplemented
            other = other.constant_term
        c = to_rational(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self.scale(1 / c)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ContractError("polynomial powers need a nonnegative integer exponent")
        return Polynomial._wrap(self._nvars, self._p ** k)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._nvars == other._nvars and self._p == other._p
        try:
            c = to_rational(other)
        except TypeError:
            return NotImplemented
        return self.is_constant() and self.constant_term == c

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self.terms.items())))
        return self._hash

    # -- structural ---------------------------------------------------------

    def _filtered(self, keep):
        return Polynomial._wrap(self._nvars, _ctx(self._nvars).from_dict(
            {e: c for e, c in self._p.to_dict().items() if keep(e)}))

    def homogeneous_component(self, d: int) -> "Polynomial":
        return self._filtered(lambda e: sum(e) == d)

    def truncate(self, max_degree: int) -> "Polynomial":
        if self.degree <= max_degree:
            return self
        return self._filtered(lambda e: sum(e) <= max_degree)

    def without_constant(self) -> "Polynomial":
        return self - self.constant_term

    def extend(self, nvars: int) -> "Polynomial":
        """Embed into a ring with more variables, appended after the existing ones."""
        if nvars < self._nvars:
            raise DimensionError("cannot extend to fewer variables")
        ctx = _ctx(nvars)
        if self._nvars == 0:
            return Polynomial._wrap(nvars, ctx.constant(self._p.to_dict().get((), 0)))
        return Polynomial._wrap(nvars, self._p.compose(*ctx.gens()[:self._nvars], ctx=ctx))

    def evaluate(self, point: Sequence) -> Rational:
        if len(point) != self._nvars:
            raise DimensionError(f"point has {len(point)} coordinates, expected {self._nvars}")
        if self._nvars == 0:
            return self.constant_term
        return to_rational(self._p(*[_fmpq(v) for v in point]))

    def permute_variables(self, perm: Sequence[int]) -> "Polynomial":
        """Substitute ``x_i -> x_{perm[i]}``; ``perm`` is a 0-based image list."""
        n = self._nvars
        if sorted(perm) != list(range(n)):
            raise ContractError(f"{perm} is not a permutation of 0..{n - 1}")
        gens = _ctx(n).gens()
        return Polynomial._wrap(n, self._p.compose(*[gens[perm[i]] for i in range(n)]))

    # -- text -------------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({self._nvars}, {format_poly(self)!r})"


def _check_index(i, nvars):
    if not isinstance(i, int) or not 1 <= i <= nvars:
        raise ContractError(f"variable index {i} out of range 1..{nvars}")


# ---------------------------------------------------------------------------
# calculus and substitution


def partial_derivative(p: Polynomial, i: int) -> Polynomial:
    """Formal partial derivative with respect to ``x_i`` (1-indexed)."""
    _check_index(i, p.nvars)
    return Polynomial._wrap(p.nvars, p._p.derivative(i - 1))


def integrate(p: Polynomial, i: int) -> Polynomial:
    """Antiderivative in ``x_i`` with zero constant of integration."""
    _check_index(i, p.nvars)
    return Polynomial._wrap(p.nvars, p._p.integral(i - 1))


def gradient(p: Polynomial) -> list[Polynomial]:
    return [partial_derivative(p, i) for i in range(1, p.nvars + 1)]


def substitute(p: Polynomial, images: Sequence[Polynomial], max_degree: int | None = None) -> Polynomial:
    """Return ``p(images[0], ..., images[n-1])``.

    All images must share one variable count ``m``; the result lives in ``m``
    variables. With ``max_degree`` set, only the part of total degree at most
    ``max_degree`` is returned.
    """
    images = list(images)
    if len(images) != p.nvars:
        raise DimensionError(f"{len(images)} images for a polynomial in {p.nvars} variables")
    if not images:
        return p
    m = images[0].nvars
    if any(q.nvars != m for q in images):
        raise DimensionError("substitution images have different variable counts")
    if max_degree is None:
        return Polynomial._wrap(m, p._p.compose(*[q._p for q in images], ctx=_ctx(m)))
    return _substitute_truncated(p, images, max_degree)


def _graded(p, max_degree):
    """Homogeneous components of degree ``0..max_degree`` (``None`` for zero parts)."""
    parts = [dict() for _ in range(max_degree + 1)]
    for e, c in p._p.to_dict().items():
        d = sum(e)
        if d <= max_degree:
            parts[d][e] = c
    ctx = _ctx(p.nvars)
    return [ctx.from_dict(t) if t else None for t in parts]


def _graded_mul(a, b, max_degree):
    out = [None] * (max_degree + 1)
    for i, ai in enumerate(a):
        if ai is None:
            continue
        for j in range(max_degree - i + 1):
            bj = b[j]
            if bj is not None:
                prod = ai * bj
                out[i + j] = prod if out[i + j] is None else out[i + j] + prod
    return out


def _substitute_truncated(p, images, max_degree):
    # truncated power series arithmetic on homogeneous components, so no
    # term above max_degree is ever formed
    m = images[0].nvars
    order = [q.order() for q in images]
    graded = [_graded(q, max_degree) for q in images]
    one = [_ctx(m).constant(1)] + [None] * max_degree
    powers = [{0: one, 1: g} for g in graded]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            half = power(i, k // 2)
            sq = _graded_mul(half, half, max_degree)
            cache[k] = _graded_mul(sq, graded[i], max_degree) if k % 2 else sq
        return cache[k]

    total = [None] * (max_degree + 1)
    for exps, c in p.terms.items():
        if sum(e * o for e, o in zip(exps, order)) > max_degree:
            continue
        term = one
        for i, e in enumerate(exps):
            if e:
                term = _graded_mul(term, power(i, e), max_degree)
        c = _fmpq(c)
        for k, t in enumerate(term):
            if t is not None:
                total[k] = t * c if total[k] is None else total[k] + t * c
    result = _ctx(m).from_dict({})
    for t in total:
        if t is not None:
            result = result + t
    return Polynomial._wrap(m, result)


# ---------------------------------------------------------------------------
# parsing and printing

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<x>x)|(?P<op>[-+*/^;])|(?P<bad>\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastgroup)
        if m.lastgroup == "bad":
            raise ParseError(f"unexpected character {m.group('bad')!r}", text, start)
        tokens.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, nvars):
        self.text = text
        self.nvars = nvars
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def expect_int(self):
        tok = self.take()
        if tok[0] != "int":
            self.fail("expected an integer", tok)
        return int(tok[1])

    def parse(self):
        terms = {}
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        while True:
            exps, coeff = self.term()
            terms[exps] = terms.get(exps, _ZERO) + sign * coeff
            kind, val, _ = self.peek()
            if kind == "end":
                break
            if kind == "op" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
                continue
            self.fail(f"unexpected {val!r}")
        return Polynomial(self.nvars, terms)

    def term(self):
        exps = [0] * self.nvars
        coeff = _ONE
        kind, val, _ = self.peek()
        seen = False
        if kind == "int":
            num = self.expect_int()
            den = 1
            if self.peek()[:2] == ("op", "/"):
                self.take()
                den = self.expect_int()
                if den == 0:
                    self.fail("zero denominator", self.tokens[self.i - 1])
            coeff = mpq(num, den)
            seen = True
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                if self.peek()[0] != "x":
                    self.fail("expected a variable after '*'")
                continue
            if kind != "x":
                break
            self.factor(exps)
            seen = True
        if not seen:
            self.fail("expected a term")
        return tuple(exps), coeff

    def factor(self, exps):
        xtok = self.take()
        tok = self.take()
        if tok[0] != "int":
            self.fail("expected a variable index after 'x'", tok)
        idx = int(tok[1])
        if not 1 <= idx <= self.nvars:
            raise ParseError(
                f"variable x{idx} out of range for {self.nvars} variables", self.text, xtok[2])
        power = 1
        if self.peek()[:2] == ("op", "^"):
            self.take()
            power = self.expect_int()
        exps[idx - 1] += power


def parse_poly(text: str, nvars: int) -> Polynomial:
    """Parse the textual grammar into a normalized :class:`Polynomial`."""
    if ";" in text:
        raise ParseError("unexpected ';' in a single polynomial", text, text.index(";"))
    return _Parser(text, nvars).parse()


def _format_coeff(c):
    return str(c)


def format_poly(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        factors = []
        for i, k in enumerate(e):
            if k == 1:
                factors.append(f"x{i + 1}")
            elif k:
                factors.append(f"x{i + 1}^{k}")
        neg = c < 0
        a = -c if neg else c
        if not factors:
            body = _format_coeff(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = _format_coeff(a) + "*" + "*".join(factors)
        if parts:
            parts.append(("-" if neg else "+") + body)
        else:
            parts.append(("-" if neg else "") + body)
    return "".join(parts)


def variables(nvars: int) -> list[Polynomial]:
    """Coordinate functions ``[x1, ..., xn]``."""
    return [Polynomial.variable(i, nvars) for i in range(1, nvars + 1)]


def monomials_up_to(nvars: int, max_degree: int) -> Iterable[tuple]:
    """Exponent vectors of total degree ``<= max_degree``, degree by degree."""
    for d in range(max_degree + 1):
        yield from monomials_of_degree(nvars, d)


def monomials_of_degree(nvars: int, d: int) -> Iterable[tuple]:
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest
