"""Independent reference computations used by several test modules."""

from fractions import Fraction

import sympy

from polyaut.polycore import Polynomial


def to_sympy(p: Polynomial):
    """Independent oracle: the same polynomial as a sympy expression."""
    xs = sympy.symbols(f"x1:{p.nvars + 1}")
    expr = sympy.Integer(0)
    for exps, c in p.terms.items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for x, e in zip(xs, exps):
            term *= x ** e
        expr += term
    return sympy.expand(expr)


def from_sympy(expr, nvars):
    xs = sympy.symbols(f"x1:{nvars + 1}")
    poly = sympy.Poly(sympy.expand(expr), *xs, domain="QQ")
    terms = {}
    for m, c in poly.terms():
        c = sympy.Rational(c)
        terms[m] = Fraction(int(c.p), int(c.q))
    return Polynomial(nvars, terms)
