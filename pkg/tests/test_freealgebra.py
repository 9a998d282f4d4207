import random

import pytest
from hypothesis import given, settings, strategies as st

from liedim.errors import MalformedExpr, NotLieElement
from liedim.exactlinalg import hnf_from_sparse
from liedim.freealgebra import (
    Bracket,
    Gen,
    LieVector,
    LinComb,
    LyndonWord,
    Poly,
    adjoint_action,
    assoc_dim,
    bracketing,
    commutator,
    eval_lie,
    is_lie_element,
    lie_coordinates,
    lie_dim,
    lie_submodule_to_poly_coords,
    lie_vector_poly,
    lyndon_basis,
    lyndon_expr,
    lyndon_words,
    monomial_list,
    monomial_position,
    multiply,
)

from oracles import lyndon_by_rotation, witt_number

x0, x1, x2 = Gen(0), Gen(1), Gen(2)


class TestLyndonWords:
    def test_degree_one(self):
        assert [w.word for w in lyndon_words(2, 1)] == [(0,), (1,)]

    def test_degree_three_two_letters(self):
        # rotation-minimality over all 8 words of length 3
        expect = lyndon_by_rotation(2, 3)
        assert expect == [(0, 0, 1), (0, 1, 1)]
        assert [w.word for w in lyndon_words(2, 3)] == expect

    def test_three_letters_degree_two(self):
        assert len(lyndon_words(3, 2)) == (9 - 3) // 2 == witt_number(3, 2)

    def test_not_lyndon_rejected(self):
        with pytest.raises(ValueError):
            LyndonWord((1, 0))

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_witt_formula(self, m):
        for d in range(1, 9):
            assert len(lyndon_words(m, d)) == witt_number(m, d)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_rotation_enumeration(self, m):
        for d in range(1, 7):
            assert [w.word for w in lyndon_words(m, d)] == lyndon_by_rotation(m, d)

    def test_std_factorization_suffix(self):
        for w in lyndon_words(2, 5) + lyndon_words(3, 4):
            u, v = w.std_factorization
            assert u.word + v.word == w.word
            # v is the longest proper Lyndon suffix
            for cut in range(1, len(w.word)):
                suffix = w.word[cut:]
                if len(suffix) > len(v.word):
                    assert any(
                        suffix >= suffix[i:] + suffix[:i] for i in range(1, len(suffix))
                    )


class TestBracketing:
    def test_single_letter(self):
        assert bracketing((0,)).terms == {(0,): 1}

    def test_degree_two(self):
        assert bracketing((0, 1)).terms == {(0, 1): 1, (1, 0): -1}

    def test_degree_three(self):
        # [x0, [x0, x1]] expanded by hand
        inner = commutator(Poly.generator(0), Poly.generator(1), None)
        expect = commutator(Poly.generator(0), inner, None)
        assert bracketing((0, 0, 1)) == expect
        assert bracketing((0, 0, 1)).terms == {
            (0, 0, 1): 1,
            (0, 1, 0): -2,
            (1, 0, 0): 1,
        }

    def test_leading_coefficient_one(self):
        # triangularity: b(w) contains the monomial w with coefficient 1
        for m, D in ((2, 6), (3, 4)):
            for w in lyndon_basis(m, D):
                assert bracketing(w).terms[w] == 1


class TestMultiply:
    def test_concatenation(self):
        got = multiply(Poly.generator(0), Poly.generator(1), 2)
        assert got.terms == {(0, 1): 1}

    def test_truncation_kills_product(self):
        p = commutator(Poly.generator(0), Poly.generator(1), 2)
        assert multiply(p, Poly.generator(0), 2).is_zero()

    def test_four_term_expansion(self):
        p = Poly.generator(0) + Poly.generator(1)
        q = Poly.generator(0) - Poly.generator(1)
        got = multiply(p, q, 2)
        assert got.terms == {(0, 0): 1, (0, 1): -1, (1, 0): 1, (1, 1): -1}

    @settings(max_examples=60)
    @given(st.integers(0, 10**6))
    def test_associative_within_truncation(self, seed):
        rng = random.Random(seed)
        D, m = 4, 2
        def rand_poly():
            terms = {}
            for _ in range(rng.randint(1, 5)):
                w = tuple(rng.randrange(m) for _ in range(rng.randint(1, 3)))
                terms[w] = rng.randint(-3, 3)
            return Poly(terms, D)
        p, q, r = rand_poly(), rand_poly(), rand_poly()
        assert multiply(multiply(p, q, D), r, D) == multiply(p, multiply(q, r, D), D)


class TestEvalLie:
    def test_plain_bracket(self):
        assert eval_lie(Bracket((x0, x1)), 2, 2).terms == {(0, 1): 1, (1, 0): -1}

    def test_left_normed(self):
        nested = Bracket((Bracket((x0, x1)), x2))
        flat = Bracket((x0, x1, x2))
        assert eval_lie(flat, 3, 3) == eval_lie(nested, 3, 3)

    def test_scalar(self):
        assert eval_lie(LinComb(((2, x0),)), 1, 1).terms == {(0,): 2}

    def test_bad_index(self):
        with pytest.raises(MalformedExpr):
            eval_lie(Gen(5), 2, 2)

    def test_operators_build_combinations(self):
        e = 2 * x0 - 3 * Bracket((x0, x1))
        got = eval_lie(e, 2, 2)
        assert got.terms == {(0,): 2, (0, 1): -3, (1, 0): 3}


class TestJacobiAntisymmetry:
    @settings(max_examples=40)
    @given(st.integers(0, 10**6))
    def test_laws(self, seed):
        rng = random.Random(seed)
        m, D = 3, 4
        basis = lyndon_basis(m, 3)
        def rand_lie():
            acc = Poly.zero(D)
            for _ in range(rng.randint(1, 3)):
                acc = acc + rng.randint(-2, 2) * bracketing(
                    basis[rng.randrange(len(basis))]
                ).truncated(D)
            return acc
        p, q, r = rand_lie(), rand_lie(), rand_lie()
        assert (commutator(p, q, D) + commutator(q, p, D)).is_zero()
        jac = (
            commutator(commutator(p, q, D), r, D)
            + commutator(commutator(q, r, D), p, D)
            + commutator(commutator(r, p, D), q, D)
        )
        assert jac.is_zero()


class TestAdjointAction:
    def test_empty_word_is_identity(self):
        p = bracketing((0, 1)).truncated(3)
        assert adjoint_action(p, (), 2, 3) == p

    def test_single_letter(self):
        got = adjoint_action(Poly.generator(0).truncated(2), (1,), 2, 2)
        assert got == bracketing((0, 1)).truncated(2)

    def test_two_letters(self):
        p = bracketing((0, 1)).truncated(4)
        got = adjoint_action(p, (2, 2), 3, 4)
        inner = commutator(p, Poly.generator(2).truncated(4), 4)
        expect = commutator(inner, Poly.generator(2).truncated(4), 4)
        assert got == expect

    def test_rejects_non_lie(self):
        with pytest.raises(NotLieElement):
            adjoint_action(Poly({(0, 1): 1}, 2), (0,), 2, 2)


class TestLieCoordinates:
    def test_basis_element(self):
        v = lie_coordinates(Poly({(0, 1): 1, (1, 0): -1}, 2), 2, 2)
        assert v.coords == (0, 0, 1)

    def test_not_lie(self):
        with pytest.raises(NotLieElement):
            lie_coordinates(Poly({(0, 1): 1}, 2), 2, 2)

    def test_zero(self):
        assert lie_coordinates(Poly.zero(2), 2, 2).coords == (0, 0, 0)

    @settings(max_examples=50)
    @given(st.integers(0, 10**6))
    def test_round_trip(self, seed):
        rng = random.Random(seed)
        m, D = 2, 4
        n = lie_dim(m, D)
        coords = tuple(rng.randint(-4, 4) for _ in range(n))
        v = LieVector(m, D, coords)
        assert lie_coordinates(lie_vector_poly(v), m, D) == v

    def test_is_lie_element(self):
        assert is_lie_element(bracketing((0, 0, 1)).truncated(3), 2, 3)
        assert not is_lie_element(Poly({(0, 0): 1}, 3), 2, 3)


class TestCoordinateLayout:
    def test_monomial_positions_are_consistent(self):
        for m, D in ((2, 4), (3, 3)):
            mons = monomial_list(m, D)
            assert len(mons) == assoc_dim(m, D)
            for i, w in enumerate(mons):
                assert monomial_position(w, m, D) == i

    def test_lie_submodule_embedding(self):
        # zero module maps to zero
        zero = hnf_from_sparse([], lie_dim(2, 2))
        assert lie_submodule_to_poly_coords(zero, 2, 2).rank == 0
        # the bracket [x0, x1] spans a rank-1 module among degree-2 monomials
        span = hnf_from_sparse([{2: 1}], lie_dim(2, 2))
        got = lie_submodule_to_poly_coords(span, 2, 2)
        assert got.rank == 1
        row = {j: v for j, v in enumerate(got.basis.entries[0]) if v}
        assert row == {
            monomial_position((0, 1), 2, 2): 1,
            monomial_position((1, 0), 2, 2): -1,
        }
        # full degree-2 Lie component of m=2: rank 1 inside the 4 monomials
        full2 = hnf_from_sparse([{2: 1}, {0: 1}, {1: 1}], lie_dim(2, 2))
        assert lie_submodule_to_poly_coords(full2, 2, 2).rank == 3

    def test_lyndon_expr_matches_bracketing(self):
        for w in lyndon_basis(2, 5):
            expr = lyndon_expr(w)
            assert eval_lie(expr, 2, len(w)) == bracketing(w).truncated(len(w))
