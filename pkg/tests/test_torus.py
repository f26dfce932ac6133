import random
from fractions import Fraction
from math import comb

import pytest

from polyaut.adjoint import ad
from polyaut.automorphism import make_diagonal
from polyaut.errors import ContractError
from polyaut.polycore import monomials_up_to
from polyaut.torus import (
    decompose_module,
    enumerate_root_subgroups,
    field_weight,
    is_multiplicity_free,
    monomial_weight,
    tprime_weight,
    weights_distinct,
)
from polyaut.vectorfield import VectorField, bracket, exp, is_locally_nilpotent


def character(t, w):
    out = Fraction(1)
    for ti, wi in zip(t, w):
        out *= Fraction(ti) ** wi
    return out


def random_torus_element(rng, n):
    return [Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4)) for _ in range(n)]


class TestMonomialWeight:
    def test_examples(self):
        assert monomial_weight((0, 1), 1) == (1, -1)
        assert monomial_weight((0, 0), 1) == (1, 0)

    def test_rejects_own_variable(self):
        with pytest.raises(ContractError):
            monomial_weight((1, 0), 1)

    def test_tprime_representative(self):
        assert tprime_weight((1, -1)) == (2, 0)
        assert tprime_weight((0, 0, 1)) == (-1, -1, 0)


class TestConjugation:
    """diag(t) exp(s x^a d/dx_i) diag(t)^-1 = exp(t^(e_i - a) s x^a d/dx_i)."""

    def _roots(self, n, dmax):
        return [(a, i) for a in monomials_up_to(n, dmax) for i in range(1, n + 1) if a[i - 1] == 0]

    def test_group_conjugation(self):
        rng = random.Random(41)
        for n in (2, 3):
            for a, i in self._roots(n, 3):
                t = random_torus_element(rng, n)
                D = make_diagonal(t)
                field = VectorField.monomial(a, i)
                U = exp(field, is_locally_nilpotent(field))
                c = character(t, monomial_weight(a, i))
                scaled = field.scale(c)
                expected = exp(scaled, is_locally_nilpotent(scaled))
                assert (D @ U @ D.inv()).forward == expected.forward

    def test_adjoint_conjugation(self):
        rng = random.Random(42)
        for n in (2, 3, 4):
            for a, i in self._roots(n, 2):
                t = random_torus_element(rng, n)
                field = VectorField.monomial(a, i)
                c = character(t, monomial_weight(a, i))
                assert ad(make_diagonal(t), field) == field.scale(c)

    def test_tprime_weight_is_the_character_on_sl(self):
        rng = random.Random(43)
        for a, i in self._roots(3, 3):
            t = random_torus_element(rng, 2)
            t.append(1 / (t[0] * t[1]))
            w = monomial_weight(a, i)
            assert character(t, w) == character(t, tprime_weight(w))


class TestEnumeration:
    def test_degree_one(self):
        roots = enumerate_root_subgroups(2, 1)
        fields = {(r.exponent, r.index) for r in roots}
        assert fields == {((0, 0), 1), ((0, 0), 2), ((0, 1), 1), ((1, 0), 2)}
        assert weights_distinct(roots)

    def test_degree_zero(self):
        roots = enumerate_root_subgroups(2, 0)
        assert {(r.exponent, r.index) for r in roots} == {((0, 0), 1), ((0, 0), 2)}

    def test_count_n3(self):
        roots = enumerate_root_subgroups(3, 2)
        assert len(roots) == 18
        assert weights_distinct(roots)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_distinct_weights(self, n):
        roots = enumerate_root_subgroups(n, 4)
        assert weights_distinct(roots)
        for r in roots:
            assert r.tprime[-1] == 0
            assert r.weight == monomial_weight(r.exponent, r.index)
            assert field_weight(r.field) == r.weight

    def test_rows(self):
        row = enumerate_root_subgroups(2, 1)[-1].as_row()
        assert set(row) == {"monomial", "i", "weight", "tprime_weight"}

    def test_rejects_small_n(self):
        with pytest.raises(ContractError):
            enumerate_root_subgroups(1, 2)


def test_bracket_weight_additivity():
    roots = enumerate_root_subgroups(3, 2)
    checked = 0
    for r in roots:
        for s in roots:
            b = bracket(r.field, s.field)
            if b.is_zero():
                continue
            w = field_weight(b)
            assert w is not None
            assert w == tuple(x + y for x, y in zip(r.weight, s.weight))
            checked += 1
    assert checked > 50


class TestDecompose:
    def test_n2_d1(self):
        assert decompose_module(2, 1) == {(2, 0): 1, (1, 1): 1}
        assert is_multiplicity_free(2, 1)

    def test_n2_d0(self):
        assert decompose_module(2, 0) == {(1, 0): 1}

    def test_n3_d2(self):
        hw = decompose_module(3, 2)
        assert len(hw) == 2
        assert all(m == 1 for m in hw.values())

    def test_dimensions_add_up(self):
        # Weyl dimension formula for gl_2 and gl_3 highest weights
        def dim(w):
            n = len(w)
            num = den = 1
            for i in range(n):
                for j in range(i + 1, n):
                    num *= w[i] - w[j] + j - i
                    den *= j - i
            return num // den

        for n in (2, 3):
            for d in range(5):
                total = sum(dim(w) * m for w, m in decompose_module(n, d).items())
                assert total == n * comb(n + d - 1, d)

    @pytest.mark.parametrize("n", [2, 3])
    def test_multiplicity_free(self, n):
        for d in range(5):
            assert is_multiplicity_free(n, d)
            assert is_multiplicity_free(n, d, module="fields")

    def test_field_module_is_multiplicity_free(self):
        for n in (2, 3):
            for d in range(4):
                hw = decompose_module(n, d, module="fields")
                assert all(m == 1 for m in hw.values())

    def test_unknown_module(self):
        with pytest.raises(ContractError):
            decompose_module(2, 1, module="other")
