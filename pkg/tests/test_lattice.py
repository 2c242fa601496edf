import itertools
import json
import random
from fractions import Fraction

import pytest

from krichever import lattice
from krichever.lattice import (
    InvariantFactors,
    LazardModel,
    hnf,
    partition_count,
    rational_rank,
    snf,
)


def det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def brute_force_member(vector, columns, bound=6):
    """Is ``vector`` an integer combination with small coefficients?"""
    for combo in itertools.product(range(-bound, bound + 1), repeat=len(columns)):
        if all(
            sum(c * col[i] for c, col in zip(combo, columns)) == v
            for i, v in enumerate(vector)
        ):
            return True
    return False


class TestHnf:
    def test_identity(self):
        H, U = hnf([[1, 0], [0, 1]])
        assert H == [[1, 0], [0, 1]]
        assert U == [[1, 0], [0, 1]]

    def test_zero(self):
        H, U = hnf([[0, 0], [0, 0]])
        assert H == [[0, 0], [0, 0]]
        assert abs(det2(U)) == 1

    def test_same_column_lattice(self):
        M = [[2, 4], [6, 8]]
        H, U = hnf(M)
        assert abs(det2(U)) == 1
        # M @ U == H
        for i in range(2):
            for j in range(2):
                assert sum(M[i][k] * U[k][j] for k in range(2)) == H[i][j]
        # mutual membership of columns, brute force
        mcols = [[M[0][j], M[1][j]] for j in range(2)]
        hcols = [[H[0][j], H[1][j]] for j in range(2)]
        for col in hcols:
            assert brute_force_member(col, mcols)
        for col in mcols:
            assert brute_force_member(col, hcols)

    def test_random_properties(self):
        rng = random.Random(3)
        for _ in range(20):
            m, n = rng.randrange(1, 5), rng.randrange(1, 6)
            M = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(m)]
            H, U = hnf(M)
            nn = len(U)
            for i in range(m):
                for j in range(n):
                    assert sum(M[i][k] * U[k][j] for k in range(nn)) == H[i][j]
            # unimodularity via exact determinant
            assert abs(_det(U)) == 1


def _det(m):
    n = len(m)
    a = [[Fraction(v) for v in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                a[r] = [v - f * w for v, w in zip(a[r], a[c])]
    return det


class TestSnf:
    def test_trivial(self):
        assert snf([[1, 0], [0, 1]]) == [1, 1]
        assert snf([[2]]) == [2]
        assert snf([[0, 0], [0, 0]]) == []

    def test_two_by_two(self):
        # |det| = 8, gcd of entries 2, so the chain is [2, 4]
        assert snf([[2, 4], [6, 8]]) == [2, 4]

    def test_minor_gcd_property(self):
        rng = random.Random(11)
        for _ in range(15):
            M = [[rng.randrange(-6, 7) for _ in range(4)] for _ in range(3)]
            diag = snf([list(r) for r in M])
            # product d_1..d_k equals the gcd of all k x k minors
            import math

            prod = 1
            for k, d in enumerate(diag, start=1):
                prod *= d
                g = 0
                for rows in itertools.combinations(range(3), k):
                    for cols in itertools.combinations(range(4), k):
                        sub = [[Fraction(M[i][j]) for j in cols] for i in rows]
                        g = math.gcd(g, int(_det(sub)))
                assert prod == g

    def test_divisibility_chain(self):
        rng = random.Random(5)
        for _ in range(10):
            M = [[rng.randrange(-20, 21) for _ in range(5)] for _ in range(4)]
            diag = snf(M)
            for a, b in zip(diag, diag[1:]):
                assert b % a == 0


class TestInvariantFactors:
    def test_cokernel(self):
        # Z^2 / <(2,0),(0,3)> = Z/2 + Z/3 = Z/6 in invariant factors [6]? no:
        # SNF of diag(2,3) is diag(1,6)
        inv = InvariantFactors.from_presentation(2, [[2, 0], [0, 3]])
        assert inv.torsion == (6,)
        assert inv.free_rank == 0
        assert inv.order == 6
        assert inv.is_cyclic()

    def test_free_part(self):
        inv = InvariantFactors.from_presentation(3, [[1, 0, 0]])
        assert inv.free_rank == 2
        assert inv.torsion == ()
        assert inv.order is None
        assert inv.describe() == "Z + Z"


@pytest.fixture(scope="module")
def model():
    return LazardModel(8)


class TestLazardPieces:
    def test_rank_zero_and_one(self, model):
        assert model.lazard_piece(0).rank == 1
        assert model.lazard_piece(1).rank == 1

    def test_rank_is_partition_count(self, model):
        for n in range(9):
            assert model.lazard_piece(n).rank == partition_count(n)

    def test_rational_rank_cross_check(self, model):
        for n in range(4, 9):
            lat = model.ideal_piece(n)
            assert lat.rank == rational_rank(lat.columns, len(lat.basis))

    def test_ideal_vanishes_below_weight_five(self, model):
        # A_33 = 0 by antisymmetry, so nothing survives below A_34 (weight 5)
        assert model.fgl.A.coefficient(3, 3).is_zero
        for n in range(5):
            assert model.ideal_piece(n).rank == 0

    def test_ideal_inside_lazard(self, model):
        for n in range(4, 9):
            L = model.lazard_piece(n)
            for col in model.ideal_piece(n).hnf_basis():
                assert L.contains(col)

    def test_decomposables_inside_lazard(self, model):
        for n in range(2, 9):
            L = model.lazard_piece(n)
            for col in model.decomposables_piece(n).hnf_basis():
                assert L.contains(col)


class TestQuotient:
    def test_free_below_weight_four(self, model):
        for n in range(1, 4):
            q, indec = model.quotient_groups(n)
            assert indec.free_rank == 1 and not indec.torsion

    def test_printed_relations(self, model):
        expected = {5: (5,), 6: (2,), 7: (7,), 8: (2,)}
        for n, torsion in expected.items():
            _, indec = model.quotient_groups(n)
            assert indec.free_rank == 0
            assert indec.torsion == torsion

    def test_indecomposables_cyclic(self, model):
        for n in range(1, 9):
            _, indec = model.quotient_groups(n)
            assert indec.is_cyclic()

    def test_report_schema_and_determinism(self, model):
        rep1 = model.quotient_report(6)
        rep2 = LazardModel(6).quotient_report(6)
        assert json.dumps(rep1, sort_keys=True) == json.dumps(rep2, sort_keys=True)
        assert set(rep1) == {"n", "rank_L", "rank_I", "Q", "Indec"}

    def test_weight_ceiling_guard(self):
        with pytest.raises(ValueError):
            LazardModel(14)
        with pytest.raises(ValueError):
            LazardModel(4).lazard_piece(5)
