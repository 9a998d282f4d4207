import random

import pytest
from hypothesis import given, settings, strategies as st

from liedim.errors import DimensionMismatch, NotContained
from liedim.exactlinalg import (
    Echelon,
    ElementaryDivisors,
    IntMatrix,
    SubmoduleBasis,
    hnf,
    hnf_from_sparse,
    left_kernel,
    matmul,
    member,
    module_intersect,
    module_sum,
    preimage_lattice,
    quotient_structure,
    snf,
    xgcd,
)

from oracles import det, frac_membership, minor_divisors, naive_hnf, span_points


def M(rows, ncols=None):
    return IntMatrix.from_rows(rows, ncols)


def basis(rows, ambient):
    return hnf_from_sparse(({j: v for j, v in enumerate(r) if v} for r in rows), ambient)


small_entries = st.integers(min_value=-9, max_value=9)


def matrices(max_dim=4):
    return st.integers(1, max_dim).flatmap(
        lambda n: st.integers(1, max_dim).flatmap(
            lambda m: st.lists(
                st.lists(small_entries, min_size=n, max_size=n),
                min_size=m,
                max_size=m,
            )
        )
    )


class TestHNF:
    def test_already_hermite(self):
        assert hnf(M([[2, 0], [0, 3]])).basis.entries == ((2, 0), (0, 3))

    def test_row_reduction(self):
        # brute-force row reduction oracle agrees
        got = hnf(M([[1, 1], [1, -1]]))
        assert got.basis.entries == ((1, 1), (0, 2))
        assert list(got.basis.entries) == naive_hnf([[1, 1], [1, -1]], 2)

    def test_zero_matrix(self):
        got = hnf(M([[0, 0], [0, 0]]))
        assert got.rank == 0
        assert got.ambient_rank == 2

    @settings(max_examples=150)
    @given(matrices())
    def test_matches_naive_oracle(self, rows):
        ncols = len(rows[0])
        assert list(hnf(M(rows)).basis.entries) == naive_hnf(rows, ncols)

    @settings(max_examples=100)
    @given(matrices())
    def test_projection(self, rows):
        first = hnf(M(rows))
        again = hnf(first.basis)
        assert first == again

    @settings(max_examples=100)
    @given(matrices())
    def test_span_preserved(self, rows):
        B = hnf(M(rows))
        for row in rows:
            coords = member(row, B)
            assert coords is not None
            rebuilt = [0] * len(row)
            for c, brow in zip(coords, B.basis.entries):
                for j, x in enumerate(brow):
                    rebuilt[j] += c * x
            assert rebuilt == list(row)


class TestSNF:
    def test_gcd_merge(self):
        diag, left, right = snf(M([[2, 0], [0, 3]]))
        assert diag == (1, 6)
        assert matmul(matmul(left, M([[2, 0], [0, 3]])), right).entries == (
            (1, 0),
            (0, 6),
        )

    def test_identity(self):
        diag, left, right = snf(IntMatrix.identity(3))
        assert diag == (1, 1, 1)
        assert left == IntMatrix.identity(3)
        assert right == IntMatrix.identity(3)

    def test_single_row(self):
        diag, left, right = snf(M([[2, 4]]))
        assert diag == (2,)
        assert matmul(matmul(left, M([[2, 4]])), right).entries[0][0] == 2

    @settings(max_examples=150)
    @given(matrices())
    def test_transforms_and_chain(self, rows):
        A = M(rows)
        diag, left, right = snf(A)
        prod = matmul(matmul(left, A), right)
        for i in range(prod.nrows):
            for j in range(prod.ncols):
                expected = diag[i] if i == j and i < len(diag) else 0
                assert prod.entries[i][j] == expected
        assert det(left.entries) in (1, -1)
        assert det(right.entries) in (1, -1)
        nz = [d for d in diag if d]
        for a, b in zip(nz, nz[1:]):
            assert b % a == 0
        assert all(d >= 0 for d in diag)

    @settings(max_examples=150)
    @given(matrices(3))
    def test_against_minor_oracle(self, rows):
        diag, _, _ = snf(M(rows))
        assert [d for d in diag if d] == minor_divisors(rows, len(rows[0]))


class TestMembership:
    def test_coordinates(self):
        B = basis([[2, 0], [0, 2]], 2)
        assert member((2, 2), B) == (1, 1)

    def test_not_member(self):
        B = basis([[2, 0], [0, 2]], 2)
        assert member((1, 1), B) is None

    def test_zero_vector(self):
        B = basis([[2, 0], [0, 2]], 2)
        assert member((0, 0), B) == (0, 0)

    def test_dimension_mismatch(self):
        B = basis([[2, 0]], 2)
        with pytest.raises(DimensionMismatch):
            member((1, 0, 0), B)

    def test_against_fraction_oracle(self):
        rng = random.Random(7)
        for _ in range(300):
            n = rng.randint(1, 4)
            rows = [
                [rng.randint(-9, 9) for _ in range(n)] for _ in range(rng.randint(1, n))
            ]
            B = hnf(M(rows, n))
            v = tuple(rng.randint(-12, 12) for _ in range(n))
            got = member(v, B)
            expect = frac_membership(v, [list(r) for r in B.basis.entries], n)
            assert got == expect


class TestSumIntersect:
    def test_sum_direct(self):
        A = basis([[2, 0]], 2)
        B = basis([[0, 3]], 2)
        assert module_sum(A, B).basis.entries == ((2, 0), (0, 3))

    def test_sum_idempotent(self):
        A = basis([[2, 0], [1, 1]], 2)
        assert module_sum(A, A) == A

    def test_sum_gcd(self):
        A = basis([[2, 0]], 2)
        B = basis([[3, 0]], 2)
        assert module_sum(A, B).basis.entries == ((1, 0),)

    def test_intersect_lcm(self):
        # bounded scan oracle: common points of 2Z x 0 and 3Z x 0
        pts = span_points([(2, 0)], 12, 2) & span_points([(3, 0)], 12, 2)
        assert min(p[0] for p in pts if p[0] > 0) == 6
        A = basis([[2, 0]], 2)
        B = basis([[3, 0]], 2)
        assert module_intersect(A, B).basis.entries == ((6, 0),)

    def test_intersect_with_full(self):
        A = SubmoduleBasis.full(2)
        B = basis([[5, 1]], 2)
        assert module_intersect(A, B) == B

    def test_intersect_disjoint_lines(self):
        A = basis([[1, 0]], 2)
        B = basis([[0, 1]], 2)
        assert module_intersect(A, B).rank == 0

    @settings(max_examples=100)
    @given(matrices(3), matrices(3))
    def test_modular_containments(self, rows_a, rows_b):
        n = max(len(rows_a[0]), len(rows_b[0]))
        A = basis([list(r) + [0] * (n - len(r)) for r in rows_a], n)
        B = basis([list(r) + [0] * (n - len(r)) for r in rows_b], n)
        inter = module_intersect(A, B)
        total = module_sum(A, B)
        for row in inter.basis.entries:
            assert member(row, A) is not None
            assert member(row, B) is not None
        for row in A.basis.entries:
            assert member(row, total) is not None
        for row in B.basis.entries:
            assert member(row, total) is not None

    def test_index_identity_full_rank(self):
        # |Z^n / (A meet B)| * |Z^n / (A + B)| == |Z^n / A| * |Z^n / B|
        rng = random.Random(11)
        for _ in range(200):
            n = rng.randint(1, 3)
            rows_a = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
            rows_b = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
            if det(rows_a) == 0 or det(rows_b) == 0:
                continue
            A, B = basis(rows_a, n), basis(rows_b, n)
            inter, total = module_intersect(A, B), module_sum(A, B)
            da = abs(det(A.basis.entries))
            db = abs(det(B.basis.entries))
            di = abs(det(inter.basis.entries))
            dt = abs(det(total.basis.entries))
            assert di * dt == da * db


class TestQuotient:
    def test_divisor_merge(self):
        full = SubmoduleBasis.full(2)
        B = basis([[2, 0], [0, 3]], 2)
        assert quotient_structure(full, B) == ElementaryDivisors((6,), 0)

    def test_equal_modules(self):
        A = basis([[2, 0], [1, 1]], 2)
        assert quotient_structure(A, A) == ElementaryDivisors((), 0)

    def test_free_part(self):
        full = SubmoduleBasis.full(2)
        B = basis([[2, 0]], 2)
        assert quotient_structure(full, B) == ElementaryDivisors((2,), 1)

    def test_not_contained(self):
        A = basis([[2, 0]], 2)
        B = basis([[1, 0]], 2)
        with pytest.raises(NotContained):
            quotient_structure(A, B)

    def test_against_minor_oracle(self):
        rng = random.Random(13)
        for _ in range(200):
            n = rng.randint(1, 4)
            rows = [
                [rng.randint(-9, 9) for _ in range(n)] for _ in range(rng.randint(1, n))
            ]
            B = hnf(M(rows, n))
            got = quotient_structure(SubmoduleBasis.full(n), B)
            divisors = minor_divisors([list(r) for r in B.basis.entries], n) if B.rank else []
            expected = ElementaryDivisors(
                tuple(d for d in divisors if d > 1), n - len(divisors)
            )
            assert got == expected


class TestKernels:
    @settings(max_examples=100)
    @given(matrices(4))
    def test_left_kernel(self, rows):
        A = M(rows)
        K = left_kernel(A)
        for krow in K.basis.entries:
            image = [0] * A.ncols
            for c, arow in zip(krow, A.entries):
                for j, x in enumerate(arow):
                    image[j] += c * x
            assert all(x == 0 for x in image)
        assert K.rank == A.nrows - hnf(A).rank

    def test_preimage_two_sided(self):
        rng = random.Random(17)
        for _ in range(200):
            k, n = rng.randint(1, 3), rng.randint(1, 3)
            rows = [
                {j: rng.randint(-4, 4) for j in range(n)} for _ in range(k)
            ]
            rows = [{j: v for j, v in r.items() if v} for r in rows]
            target = basis(
                [[rng.randint(-4, 4) for _ in range(n)] for _ in range(rng.randint(0, n))],
                n,
            )
            pre = preimage_lattice(rows, target, n)
            tech = target.to_echelon()
            # soundness: every preimage row maps into the target
            for prow in pre.basis.entries:
                image = {}
                for i, c in enumerate(prow):
                    if c:
                        for j, v in rows[i].items():
                            image[j] = image.get(j, 0) + c * v
                assert tech.contains({j: v for j, v in image.items() if v})
            # completeness on random probes
            ech = pre.to_echelon()
            for _ in range(20):
                x = [rng.randint(-3, 3) for _ in range(k)]
                image = {}
                for i, c in enumerate(x):
                    if c:
                        for j, v in rows[i].items():
                            image[j] = image.get(j, 0) + c * v
                in_target = tech.contains({j: v for j, v in image.items() if v})
                in_pre = ech.contains({i: c for i, c in enumerate(x) if c})
                assert in_target == in_pre


class TestEchelonEngine:
    def test_insert_reports_growth(self):
        e = Echelon()
        assert e.insert({0: 2}) is True
        assert e.insert({0: 4}) is False
        assert e.insert({0: 3}) is True  # index shrinks to gcd 1
        assert e.rows[0][0] == 1

    def test_member_coefficients(self):
        e = Echelon()
        e.insert({0: 2, 1: 1})
        e.insert({1: 3})
        got = e.member({0: 4, 1: 5})
        assert got == {0: 2, 1: 1}

    def test_xgcd(self):
        for a, b in [(12, 18), (-5, 7), (0, 4), (3, 0), (0, 0), (-6, -4)]:
            g, s, t = xgcd(a, b)
            assert g == s * a + t * b
            assert g >= 0
