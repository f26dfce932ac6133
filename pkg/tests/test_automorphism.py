import random
from fractions import Fraction

import pytest

from polyaut.automorphism import (
    Automorphism,
    PolyMap,
    compose,
    format_map,
    inverse_degree_bound,
    invert,
    is_saut,
    jac,
    jacobian_det,
    jacobian_matrix,
    make_affine,
    make_diagonal,
    make_elementary,
    make_translation,
    parse_map,
)
from polyaut.errors import ContractError, DimensionError, NotAutomorphismError
from polyaut.polycore import parse_poly
from polyaut.sampling import random_affine, random_tame


def M(text, n=None):
    return parse_map(text, n)


def mat(rows, n):
    return [[parse_poly(e, n) for e in row] for row in rows]


ID2 = PolyMap.identity(2)


class TestCompose:
    def test_triangular_pair(self):
        assert compose(M("x1+x2^2; x2"), M("x1-x2^2; x2")) == ID2

    def test_identity_left(self):
        G = M("x1*x2 + 3; x2^3 - x1")
        assert compose(ID2, G) == G

    def test_involution(self):
        assert compose(M("x2; x1"), M("x2; x1")) == ID2

    def test_order_is_f_after_g(self):
        F = M("x1 + x2^2; x2")
        G = M("x1; x2 + 1")
        assert compose(F, G) == M("x1 + x2^2 + 2*x2 + 1; x2 + 1")

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            compose(M("x1; x2"), M("x1; x2; x3"))


class TestParseMap:
    def test_dimension_from_component_count(self):
        assert M("x1; x2; x3").n == 3

    def test_explicit_dimension_must_match(self):
        with pytest.raises(ContractError):
            M("x1; x2", 3)

    def test_format(self):
        assert format_map(M("x2 + x1^2 ; 3")) == "x1^2+x2; 3"


class TestJacobian:
    def test_matrix_convention(self):
        # entry (i, j) is d F_j / d x_i
        assert jacobian_matrix(M("x1+x2^2; x2")) == mat([["1", "0"], ["2*x2", "1"]], 2)

    def test_identity(self):
        assert jacobian_matrix(ID2) == mat([["1", "0"], ["0", "1"]], 2)

    def test_swap(self):
        assert jacobian_matrix(M("x2; x1")) == mat([["0", "1"], ["1", "0"]], 2)

    def test_det_examples(self):
        assert jacobian_det(M("x1+x2^2; x2")) == 1
        assert jacobian_det(M("2*x1; 3*x2")) == 6
        assert jacobian_det(M("x1^2; x2")) == parse_poly("2*x1", 2)

    def test_det_three_dimensional(self):
        F = M("x1 + x2*x3; 2*x2 + x3^2; x3")
        assert jacobian_det(F) == 2


class TestSaut:
    def test_translation(self):
        assert is_saut(make_translation((1, 2)))

    def test_scaling(self):
        F = invert(M("2*x1; x2"))
        assert not is_saut(F)
        assert jac(F) == 2

    def test_triangular(self):
        assert is_saut(invert(M("x1+x2^2; x2")))


class TestInvert:
    def test_triangular(self):
        assert invert(M("x1+x2^2; x2")).inverse == M("x1-x2^2; x2")

    def test_translation(self):
        assert invert(M("x1+1; x2")).inverse == M("x1-1; x2")

    def test_composite_of_elementaries(self):
        e1 = make_elementary(1, parse_poly("x2^2", 2))
        e2 = make_elementary(2, parse_poly("x1^3", 2))
        F = compose(e2.forward, e1.forward)
        expected = compose(e1.inverse, e2.inverse)
        assert invert(F).inverse == expected

    def test_affine_with_rational_inverse(self):
        F = M("2*x1 + x2 + 1; x1 + x2")
        A = invert(F)
        assert compose(F, A.inverse) == ID2
        assert A.jac_value == 1

    def test_nonconstant_jacobian(self):
        with pytest.raises(NotAutomorphismError, match="not a nonzero constant"):
            invert(M("x1^2; x2"))

    def test_zero_jacobian(self):
        with pytest.raises(NotAutomorphismError):
            invert(M("x1 + x2; x1 + x2"))

    def test_constant_map(self):
        with pytest.raises(NotAutomorphismError):
            invert(M("1; 2"))

    def test_jac_of_inverse(self):
        A = invert(M("3*x1 + x2^2; x2"))
        assert A.inv().jac_value == Fraction(1, 3)

    def test_bound(self):
        assert inverse_degree_bound(M("x1 + x2^3; x2 + x3^2; x3")) == 9


class TestAutomorphismInvariant:
    def test_rejects_wrong_inverse(self):
        with pytest.raises(NotAutomorphismError):
            Automorphism(M("x1+x2^2; x2"), M("x1+x2^2; x2"))

    def test_accepts_right_inverse(self):
        A = Automorphism(M("x1+x2^2; x2"), M("x1-x2^2; x2"))
        assert A.jac_value == 1


class TestConstructors:
    def test_translation(self):
        t = make_translation((1, 2))
        assert t.forward == M("x1+1; x2+2")
        assert t.inverse == M("x1-1; x2-2")
        assert t.jac_value == 1

    def test_elementary(self):
        e = make_elementary(1, parse_poly("x2^3", 2))
        assert e.forward == M("x1+x2^3; x2")
        assert e.inverse == M("x1-x2^3; x2")

    def test_elementary_rejects_dependence_on_own_variable(self):
        with pytest.raises(ContractError):
            make_elementary(1, parse_poly("x1*x2", 2))

    def test_affine_swap(self):
        A = make_affine(((0, 1), (1, 0)), (0, 0))
        assert A.forward == M("x2; x1")
        assert A.jac_value == -1

    def test_affine_singular(self):
        with pytest.raises(ContractError):
            make_affine(((1, 2), (2, 4)), (0, 0))

    def test_closed_forms_are_genuine_inverses(self, rng):
        for _ in range(20):
            maps = [random_affine(rng, 3),
                    make_diagonal([Fraction(rng.randint(1, 5), rng.randint(1, 5)) for _ in range(3)]),
                    make_translation([rng.randint(-4, 4) for _ in range(3)])]
            for A in maps:
                assert compose(A.forward, A.inverse).is_identity()
                assert compose(A.inverse, A.forward).is_identity()
                assert jacobian_det(A.forward) == A.jac_value


# -- group laws on random tame words --------------------------------------------


def _corpus(seed, count, max_length=6):
    rng = random.Random(seed)
    return [random_tame(rng, 2 + k % 2, max_length=max_length, degree_cap=9) for k in range(count)]


@pytest.fixture(scope="module")
def corpus():
    return _corpus(7, 40)


def test_invert_recovers_inverse(corpus):
    for A in corpus:
        B = invert(A.forward)
        assert B.inverse == A.inverse
        assert compose(A.forward, B.inverse).is_identity()
        assert compose(B.inverse, A.forward).is_identity()


def test_inverse_of_composition(corpus):
    pairs = [(A, B) for A, B in zip(corpus[:-2], corpus[2:])
             if A.forward.degree * B.forward.degree <= 9
             and A.inverse.degree * B.inverse.degree <= 9]
    assert len(pairs) >= 10
    for A, B in pairs:
        FG = compose(A.forward, B.forward)
        assert invert(FG).inverse == compose(invert(B.forward).inverse, invert(A.forward).inverse)


def test_jac_is_a_character(corpus):
    for A, B in zip(corpus[:-2], corpus[2:]):
        assert A.n == B.n
        composite = jacobian_det(compose(A.forward, B.forward))
        assert composite == jacobian_det(A.forward) * jacobian_det(B.forward)
        assert (A @ B).jac_value == A.jac_value * B.jac_value


def test_saut_is_normal(corpus):
    rng = random.Random(8)
    small = [G for G in corpus if max(G.forward.degree, G.inverse.degree) <= 3]
    assert len(small) >= 10
    for G in small:
        for _ in range(2):
            F = random_tame(rng, G.n, max_length=3, max_degree=2, degree_cap=2)
            if not is_saut(F):
                F = F @ make_diagonal([1 / F.jac_value] + [1] * (G.n - 1))
            assert is_saut(F)
            C = G.conjugate(F)
            assert jacobian_det(C.forward) == 1
            assert is_saut(C)


def test_inverse_degree_bound(corpus):
    for A in corpus:
        assert A.inverse.degree <= inverse_degree_bound(A.forward)
