import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kdl.errors import NotAUnit, RankMismatch
from kdl.lattice import (
    IntMatrix,
    IntVec,
    det,
    elementary_divisors,
    extends_to_basis,
    is_unimodular,
    mod_inverse,
    rank_of,
)


def det_by_permutations(rows):
    """Independent determinant oracle: Leibniz expansion over all permutations."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = 1
        for i in range(n):
            term *= rows[i][perm[i]]
        total += sign * term
    return total


def maximal_minor_gcd(rows):
    """Independent oracle for extends_to_basis: gcd of all k x k minors."""
    k = len(rows)
    ncols = len(rows[0])
    g = 0
    for cols in itertools.combinations(range(ncols), k):
        sub = [[row[c] for c in cols] for row in rows]
        g = math.gcd(g, det_by_permutations(sub))
    return g


small_matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(min_value=-6, max_value=6), min_size=n, max_size=n),
        min_size=n,
        max_size=n,
    )
)


class TestDet:
    def test_identity(self):
        assert det(IntMatrix.identity(3)) == 1

    def test_triangular(self):
        assert det(IntMatrix(((1, 0), (1, 2)))) == 2

    def test_hopf_shift_matrix(self):
        # Cofactor expansion along the middle row gives 1 for any e.
        m = IntMatrix(((1, 5, 0), (0, 1, 0), (1, 0, 1)))
        assert det(m) == 1
        assert det_by_permutations(m.rows) == 1

    def test_rational_shift_matrix_5x5(self):
        e = 2
        m = IntMatrix(
            (
                (1, e, 0, 0, 0),
                (0, 1, 0, 0, 0),
                (1, 0, 1, 0, 0),
                (0, 0, 0, 1, 0),
                (0, 1, 0, 0, 1),
            )
        )
        assert det(m) == 1
        assert det_by_permutations(m.rows) == 1

    def test_singular(self):
        assert det(IntMatrix(((1, 2), (2, 4)))) == 0

    @given(small_matrices)
    @settings(max_examples=200)
    def test_matches_permutation_oracle(self, rows):
        m = IntMatrix(tuple(tuple(r) for r in rows))
        assert det(m) == det_by_permutations(rows)

    @given(small_matrices, small_matrices)
    @settings(max_examples=200)
    def test_multiplicative(self, rows_a, rows_b):
        n = min(len(rows_a), len(rows_b))
        a = IntMatrix(tuple(tuple(r[:n]) for r in rows_a[:n]))
        b = IntMatrix(tuple(tuple(r[:n]) for r in rows_b[:n]))
        assert det(a @ b) == det(a) * det(b)


class TestModInverse:
    @pytest.mark.parametrize("a,n,expected", [(1, 5, 1), (3, 4, 3), (4, 9, 7), (0, 1, 0)])
    def test_examples(self, a, n, expected):
        assert mod_inverse(a, n) == expected

    def test_not_a_unit(self):
        with pytest.raises(NotAUnit):
            mod_inverse(2, 4)

    def test_bad_modulus(self):
        with pytest.raises(ValueError):
            mod_inverse(1, 0)

    def test_inverse_property_up_to_200(self):
        for n in range(1, 201):
            for a in range(n):
                if math.gcd(a, n) == 1:
                    m = mod_inverse(a, n)
                    assert 0 <= m < n
                    assert (a * m) % n == 1 % n


class TestExtendsToBasis:
    def test_unit_vector(self):
        assert extends_to_basis([IntVec((1, 0, 0))])

    def test_two_vectors_smith_divisors_one(self):
        assert extends_to_basis([IntVec((0, 0, 1)), IntVec((1, 0, 1))])

    def test_imprimitive_vector(self):
        assert not extends_to_basis([IntVec((2, 0))])

    def test_dependent_vectors(self):
        assert not extends_to_basis([IntVec((1, 0)), IntVec((1, 0))])

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatch):
            extends_to_basis([IntVec((1, 0)), IntVec((1, 0, 0))])
        with pytest.raises(RankMismatch):
            extends_to_basis([IntVec((1, 0)), IntVec((0, 1)), IntVec((1, 1))])

    def test_matches_minor_gcd_oracle(self):
        rng = random.Random(7)
        for _ in range(300):
            rank = rng.randint(1, 4)
            count = rng.randint(1, rank)
            rows = [[rng.randint(-5, 5) for _ in range(rank)] for _ in range(count)]
            if any(all(x == 0 for x in row) for row in rows):
                continue
            vecs = [IntVec(tuple(row)) for row in rows]
            assert extends_to_basis(vecs) == (abs(maximal_minor_gcd(rows)) == 1)

    @given(st.lists(st.integers(min_value=-4, max_value=4), min_size=3, max_size=3).filter(lambda r: any(r)))
    @settings(max_examples=100)
    def test_invariant_under_unimodular_transform(self, row):
        vec = IntVec(tuple(row))
        rng = random.Random(sum(abs(x) for x in row))
        m = IntMatrix.identity(3)
        for _ in range(6):
            i, j = rng.sample(range(3), 2)
            factor = rng.choice((-1, 1))
            rows = [list(r) for r in m.rows]
            rows[i] = [a + factor * b for a, b in zip(rows[i], rows[j])]
            m = IntMatrix(tuple(tuple(r) for r in rows))
        assert is_unimodular(m)
        assert extends_to_basis([vec]) == extends_to_basis([vec.times(m)])

    def test_invariant_under_row_operations(self):
        # Unimodular row operations change the generating set, not the
        # sublattice it generates.
        rng = random.Random(23)
        for _ in range(200):
            rows = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(2)]
            if not any(rows[0]) or not any(rows[1]):
                continue
            vecs = [IntVec(tuple(r)) for r in rows]
            transformed = list(rows)
            for _ in range(5):
                i, j = rng.sample(range(2), 2)
                factor = rng.choice((-2, -1, 1, 2))
                transformed[i] = [a + factor * b for a, b in zip(transformed[i], transformed[j])]
            if not any(transformed[0]) or not any(transformed[1]):
                continue
            new_vecs = [IntVec(tuple(r)) for r in transformed]
            assert extends_to_basis(vecs) == extends_to_basis(new_vecs)


class TestUnimodular:
    def test_identity(self):
        assert is_unimodular(IntMatrix.identity(4))

    def test_rational_shift_is_unimodular(self):
        m = IntMatrix(
            (
                (1, 2, 0, 0, 0),
                (0, 1, 0, 0, 0),
                (1, 0, 1, 0, 0),
                (0, 0, 0, 1, 0),
                (0, 1, 0, 0, 1),
            )
        )
        assert is_unimodular(m)

    def test_not_unimodular(self):
        assert not is_unimodular(IntMatrix(((2, 0), (0, 1))))


class TestElementaryDivisors:
    def test_diagonal_order(self):
        # gcd of entries is 1, product of the two divisors is |det| = 6.
        assert elementary_divisors([[2, 0], [0, 3]]) == [1, 6]

    def test_zero_padding(self):
        assert elementary_divisors([[1, 2], [2, 4]]) == [1, 0]

    def test_random_against_minor_gcds(self):
        # d_1 * ... * d_k equals the gcd of all k x k minors, for every k.
        rng = random.Random(11)
        for _ in range(150):
            nrows = rng.randint(1, 3)
            ncols = rng.randint(nrows, 4)
            rows = [[rng.randint(-6, 6) for _ in range(ncols)] for _ in range(nrows)]
            divisors = elementary_divisors(rows)
            for k in range(1, nrows + 1):
                g = 0
                for rsel in itertools.combinations(range(nrows), k):
                    for csel in itertools.combinations(range(ncols), k):
                        sub = [[rows[r][c] for c in csel] for r in rsel]
                        g = math.gcd(g, det_by_permutations(sub))
                prod = 1
                for d in divisors[:k]:
                    prod *= d
                assert prod == g


class TestRank:
    def test_full_rank(self):
        assert rank_of([[1, 0], [0, 1]]) == 2

    def test_deficient(self):
        assert rank_of([[1, 2, 3], [2, 4, 6]]) == 1

    def test_rank_matches_nonzero_divisors(self):
        rng = random.Random(3)
        for _ in range(100):
            rows = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(rng.randint(1, 4))]
            assert rank_of(rows) == sum(1 for d in elementary_divisors(rows) if d != 0)


class TestVecMatrixConventions:
    def test_row_vector_right_action(self):
        # (m, eB(m), 1) under the degree-e shift lands on (m+1, eB(m+1), 1).
        e, m = 2, 3
        shift = IntMatrix(((1, e, 0), (0, 1, 0), (1, 0, 1)))
        v = IntVec((m, e * m * (m - 1) // 2, 1))
        w = v.times(shift)
        assert w == IntVec((m + 1, e * (m + 1) * m // 2, 1))

    def test_matrix_power(self):
        m = IntMatrix(((1, 1), (0, 1)))
        assert (m**5).rows == ((1, 5), (0, 1))
        assert (m**0) == IntMatrix.identity(2)
