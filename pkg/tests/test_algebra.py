import itertools

import numpy as np
import pytest

from entwine.algebra import (
    GeneratorSet,
    algebra_catalog,
    d_symbols,
    jacobi_residual,
    structure_constants,
    su_fundamental,
    verify_generator_set,
)
from entwine.errors import BadParameter, UnsupportedAlgebra, WrongNormalization

SQRT3 = np.sqrt(3.0)

# nonzero su(3) structure constants with a < b < c, one-based
SU3_F = {
    (1, 2, 3): 1.0,
    (1, 4, 7): 0.5,
    (1, 5, 6): -0.5,
    (2, 4, 6): 0.5,
    (2, 5, 7): 0.5,
    (3, 4, 5): 0.5,
    (3, 6, 7): -0.5,
    (4, 5, 8): SQRT3 / 2,
    (6, 7, 8): SQRT3 / 2,
}


def antisymmetric_extension(entries, d):
    """Full rank-3 tensor from its a<b<c entries (independent oracle)."""
    f = np.zeros((d, d, d))
    for (a, b, c), value in entries.items():
        for (i, j, k), sign in [
            ((a, b, c), 1), ((b, c, a), 1), ((c, a, b), 1),
            ((b, a, c), -1), ((a, c, b), -1), ((c, b, a), -1),
        ]:
            f[i - 1, j - 1, k - 1] = sign * value
    return f


def jacobi_oracle(f):
    """Direct four-index loop over the Jacobi contraction."""
    d = f.shape[0]
    worst = 0.0
    for a, b, c, e in itertools.product(range(d), repeat=4):
        total = sum(
            f[a, b, x] * f[x, c, e] + f[b, c, x] * f[x, a, e] + f[c, a, x] * f[x, b, e]
            for x in range(d)
        )
        worst = max(worst, abs(total))
    return worst


class TestSuFundamental:
    def test_su2_is_pauli_over_two(self, su2):
        assert su2.d == 3 and su2.d_r == 2
        assert su2.trace_index == pytest.approx(0.5, abs=1e-15)
        np.testing.assert_array_equal(su2.generators[2], np.diag([0.5, -0.5]))

    def test_su3_diagonal_pair(self, su3):
        assert su3.d == 8
        for idx in (2, 7):
            g = su3.generators[idx]
            assert np.max(np.abs(g - np.diag(np.diag(g)))) == 0.0
        assert su3.cartan_indices == (2, 7)

    def test_su4_orthonormal(self):
        su4 = su_fundamental(4)
        assert su4.d == 15
        report = verify_generator_set(su4)
        assert report.passed
        assert report.orthogonality <= 1e-12
        assert su4.trace_index == pytest.approx(0.5, abs=1e-12)

    def test_rejects_small_n(self):
        with pytest.raises(BadParameter):
            su_fundamental(1)


class TestStructureConstants:
    def test_su2_is_epsilon_tensor(self, su2):
        f = structure_constants(su2).f
        eps = antisymmetric_extension({(1, 2, 3): 1.0}, 3)
        assert np.max(np.abs(f - eps)) <= 1e-14
        # entries are exactly representable here
        assert set(np.unique(f)) <= {-1.0, 0.0, 1.0}

    def test_su3_against_known_values(self, su3):
        f = structure_constants(su3).f
        expected = antisymmetric_extension(SU3_F, 8)
        assert np.max(np.abs(f - expected)) <= 1e-12

    def test_abelian_single_generator(self):
        single = GeneratorSet.build("u1", [np.diag([0.5, -0.5])])
        f = structure_constants(single).f
        np.testing.assert_array_equal(f, np.zeros((1, 1, 1)))

    def test_antisymmetry(self, su3):
        fc = structure_constants(su3)
        assert fc.antisymmetry_residual() <= 1e-12

    def test_unitary_change_of_basis_preserves_f(self, su3, rng):
        from entwine.linalg import unitary_exp

        u = unitary_exp(su3.generators[4] + 0.3 * su3.generators[1], 0.9)
        rotated = GeneratorSet.build(
            "su3", [u @ g @ u.conj().T for g in su3.generators]
        )
        df = structure_constants(rotated).f - structure_constants(su3).f
        assert np.max(np.abs(df)) <= 1e-10

    def test_sparse_listing_uses_lower_first_index(self, su2):
        entries = structure_constants(su2).nonzero_entries()
        assert all(a < b for a, b, _, _ in entries)


class TestJacobi:
    def test_su2_zero(self, su2):
        f = structure_constants(su2)
        assert jacobi_residual(f) <= 1e-15
        assert jacobi_oracle(f.f) <= 1e-15

    def test_su3_within_tolerance(self, su3):
        f = structure_constants(su3)
        assert jacobi_residual(f) <= 1e-12
        assert abs(jacobi_residual(f) - jacobi_oracle(f.f)) <= 1e-15

    def test_su4_within_tolerance(self):
        f = structure_constants(su_fundamental(4))
        assert jacobi_residual(f) <= 1e-12

    def test_zero_tensor(self):
        from entwine.algebra import StructureConstants

        assert jacobi_residual(StructureConstants(3, np.zeros((3, 3, 3)))) == 0.0


class TestDSymbols:
    def test_su2_all_vanish(self, su2):
        d = d_symbols(su2)
        # oracle: {t_a, t_b} is proportional to the identity for Pauli/2
        for a, b in itertools.product(range(3), repeat=2):
            anti = su2.generators[a] @ su2.generators[b]
            anti = anti + su2.generators[b] @ su2.generators[a]
            for c in range(3):
                oracle = 2 * np.trace(anti @ su2.generators[c])
                assert abs(oracle) <= 1e-15
        assert np.max(np.abs(d)) <= 1e-15

    def test_su3_known_entries(self, su3):
        d = d_symbols(su3)
        assert d[7, 7, 7] == pytest.approx(-1 / SQRT3, abs=1e-14)
        assert d[0, 0, 7] == pytest.approx(1 / SQRT3, abs=1e-14)
        # independent anticommutator-trace oracle, all entries
        for a, b, c in itertools.product(range(8), repeat=3):
            anti = su3.generators[a] @ su3.generators[b]
            anti = anti + su3.generators[b] @ su3.generators[a]
            oracle = 2 * np.trace(anti @ su3.generators[c]).real
            assert d[a, b, c] == pytest.approx(oracle, abs=1e-13)

    def test_fully_symmetric(self, su3):
        d = d_symbols(su3)
        assert np.max(np.abs(d - np.swapaxes(d, 0, 1))) <= 1e-12
        assert np.max(np.abs(d - np.swapaxes(d, 1, 2))) <= 1e-12

    def test_rejects_wrong_normalization(self, su2):
        doubled = GeneratorSet.build("su2", [2 * g for g in su2.generators])
        with pytest.raises(WrongNormalization):
            d_symbols(doubled)


class TestAlgebraCatalog:
    def test_a2_is_su3(self):
        info = algebra_catalog("a", 2)
        assert (info.rank, info.dimension, info.alt_name) == (2, 8, "su(3)")

    def test_e8(self):
        info = algebra_catalog("e8")
        assert (info.rank, info.dimension) == (8, 248)

    def test_d3_overlaps_a3(self):
        assert algebra_catalog("d", 3).dimension == 15
        assert algebra_catalog("a", 3).dimension == 15

    @pytest.mark.parametrize("n", range(1, 11))
    def test_family_formulas(self, n):
        assert algebra_catalog("a", n).dimension == n * (n + 2)
        assert algebra_catalog("b", n).dimension == n * (2 * n + 1)
        assert algebra_catalog("c", n).dimension == n * (2 * n + 1)
        if n >= 3:
            assert algebra_catalog("d", n).dimension == n * (2 * n - 1)

    def test_exceptional_dimensions(self):
        dims = [algebra_catalog(f).dimension for f in ("g2", "f4", "e6", "e7", "e8")]
        assert dims == [14, 52, 78, 133, 248]

    def test_parameter_bounds(self):
        with pytest.raises(BadParameter):
            algebra_catalog("d", 2)
        with pytest.raises(BadParameter):
            algebra_catalog("a", 0)
        with pytest.raises(UnsupportedAlgebra):
            algebra_catalog("z", 1)


class TestVerifyGeneratorSet:
    def test_su3_clean(self, su3):
        report = verify_generator_set(su3)
        assert report.passed
        assert report.hermiticity <= 1e-12
        assert report.tracelessness <= 1e-12
        assert report.orthogonality <= 1e-12
        assert report.closure <= 1e-12

    def test_non_hermitian_corruption_flagged(self, su3):
        broken = list(su3.generators)
        # keep only the upper triangle of one generator
        broken[1] = np.triu(broken[1])
        rep = GeneratorSet("su3", tuple(broken), su3.trace_index)
        report = verify_generator_set(rep)
        assert "hermiticity" in report.failures()
        assert not report.passed

    def test_empty_set_degenerate(self):
        rep = GeneratorSet("su2", (), 0.0)
        report = verify_generator_set(rep)
        assert report.degenerate
        assert not report.passed

    def test_report_document_shape(self, su2):
        doc = verify_generator_set(su2).as_dict()
        assert doc["passed"] is True
        assert set(doc["checks"]) == {
            "hermiticity", "tracelessness", "orthogonality", "closure",
        }
