"""Matrix layer: closed-form spectra, block decouplings, site doubling."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anderson_ids import (Block, BlockOperatorSpec, LaplacianKind,
                          PotentialRealization, Seed, TridiagonalOperator,
                          anderson_matrix, block_spectrum, deleted_block_spec,
                          doubled_operator, gap_statistics, laplacian_matrix,
                          laplacian_spectrum, neumann_block_spec,
                          operator_from_text, operator_to_text,
                          padded_dirichlet_spec, realize_block,
                          sample_potential)

KINDS = list(LaplacianKind)


def dense_eigs(op: TridiagonalOperator) -> np.ndarray:
    return np.linalg.eigvalsh(op.to_dense())


def truncated_anderson(real, zeta):
    stats = gap_statistics(real)
    cut = PotentialRealization(real.p, real.values[:stats.last_one_position])
    return anderson_matrix(cut, zeta), stats


class TestLaplacianBlocks:
    def test_corner_entries(self):
        assert laplacian_matrix(3, LaplacianKind.FREE).diag.tolist() == [2, 2, 2]
        assert laplacian_matrix(3, LaplacianKind.DIRICHLET).diag.tolist() == [3, 2, 3]
        assert laplacian_matrix(3, LaplacianKind.NEUMANN).diag.tolist() == [1, 2, 1]

    def test_single_site_corners_stack(self):
        assert laplacian_matrix(1, LaplacianKind.NEUMANN).diag.tolist() == [0]
        assert laplacian_matrix(1, LaplacianKind.FREE).diag.tolist() == [2]
        assert laplacian_matrix(1, LaplacianKind.DIRICHLET).diag.tolist() == [4]

    def test_known_spectra(self):
        np.testing.assert_allclose(
            laplacian_spectrum(3, LaplacianKind.DIRICHLET), [1.0, 3.0, 4.0],
            atol=1e-14)
        np.testing.assert_allclose(
            laplacian_spectrum(2, LaplacianKind.DIRICHLET), [2.0, 4.0],
            atol=1e-14)
        np.testing.assert_allclose(
            laplacian_spectrum(3, LaplacianKind.FREE),
            [2.0 - math.sqrt(2.0), 2.0, 2.0 + math.sqrt(2.0)], atol=1e-14)
        np.testing.assert_allclose(
            laplacian_spectrum(1, LaplacianKind.NEUMANN), [0.0], atol=0)

    @pytest.mark.parametrize("kind", KINDS)
    @pytest.mark.parametrize("n", [1, 2, 3, 5, 17, 64])
    def test_closed_form_matches_dense(self, n, kind):
        got = laplacian_spectrum(n, kind)
        want = dense_eigs(laplacian_matrix(n, kind))
        np.testing.assert_allclose(got, want, atol=1e-10)

    @pytest.mark.parametrize("n", [1, 2, 5, 30])
    def test_boundary_condition_ordering(self, n):
        # relaxing the boundary lowers every eigenvalue
        neu = laplacian_spectrum(n, LaplacianKind.NEUMANN)
        fre = laplacian_spectrum(n, LaplacianKind.FREE)
        dir_ = laplacian_spectrum(n, LaplacianKind.DIRICHLET)
        assert np.all(neu <= fre + 1e-14)
        assert np.all(fre <= dir_ + 1e-14)

    def test_spectra_inside_band(self):
        for kind in KINDS:
            s = laplacian_spectrum(40, kind)
            assert np.all(s >= -1e-14) and np.all(s <= 4.0 + 1e-14)
            assert np.all(np.diff(s) > 0)

    def test_validation(self):
        with pytest.raises(ValueError):
            laplacian_matrix(0, LaplacianKind.FREE)
        with pytest.raises(ValueError):
            laplacian_spectrum(3, "free")


class TestAndersonMatrix:
    def test_entries(self):
        real = PotentialRealization(0.5, np.array([1, 0, 0, 1]))
        op = anderson_matrix(real, 20.0)
        assert op.diag.tolist() == [22.0, 2.0, 2.0, 22.0]
        assert op.offdiag.tolist() == [-1.0, -1.0, -1.0]

    def test_spectrum_band_structure(self):
        real = sample_potential(0.5, 400, Seed(0))
        eigs = dense_eigs(anderson_matrix(real, 20.0))
        assert np.all((eigs < 4.0 + 1e-9) | (eigs > 20.0 - 1e-9))
        assert eigs.min() > -1e-9

    def test_validation(self):
        real = PotentialRealization(0.5, np.array([1, 0]))
        with pytest.raises(ValueError):
            anderson_matrix(real, -1.0)


class TestTridiagonalOperator:
    def test_to_dense(self):
        op = TridiagonalOperator(np.array([1.0, 2.0, 3.0]),
                                 np.array([-1.0, 4.0]))
        want = np.array([[1.0, -1.0, 0.0], [-1.0, 2.0, 4.0], [0.0, 4.0, 3.0]])
        np.testing.assert_array_equal(op.to_dense(), want)

    def test_validation(self):
        with pytest.raises(ValueError):
            TridiagonalOperator(np.array([1.0, 2.0]), np.array([]))
        with pytest.raises(ValueError):
            TridiagonalOperator(np.array([np.inf]), np.array([]))

    @given(st.integers(min_value=1, max_value=30))
    @settings(max_examples=50, deadline=None)
    def test_text_round_trip(self, n):
        rng = np.random.default_rng(n)
        op = TridiagonalOperator(rng.normal(size=n), rng.normal(size=n - 1))
        back = operator_from_text(operator_to_text(op))
        np.testing.assert_array_equal(back.diag, op.diag)
        np.testing.assert_array_equal(back.offdiag, op.offdiag)

    def test_text_errors(self):
        with pytest.raises(ValueError):
            operator_from_text("")
        with pytest.raises(ValueError):
            operator_from_text("1.0\t-1.0\n2.0\t-1.0\n")
        with pytest.raises(ValueError):
            operator_from_text("1.0 -1.0\n")


class TestBlockSpecs:
    def setup_method(self):
        # sites: 1 0 0 1 1 0 1, gaps (0, 2, 0, 1), L_4 = 7... recompute:
        # ones at 1, 4, 5, 7 -> gaps (0, 2, 0, 1)
        self.real = PotentialRealization(0.5, np.array([1, 0, 0, 1, 1, 0, 1]))
        self.stats = gap_statistics(self.real)

    def test_deleted_drops_zero_gaps(self):
        spec = deleted_block_spec(self.stats)
        assert [b.size for b in spec.blocks] == [2, 1]
        assert all(b.kind is LaplacianKind.FREE for b in spec.blocks)
        assert spec.dim == int(self.stats.gaps.sum())
        assert spec.counting_dim == spec.dim

    def test_neumann_covers_all_sites(self):
        spec = neumann_block_spec(self.stats, 20.0)
        assert spec.dim == self.stats.last_one_position
        shifted = [b for b in spec.blocks if b.diag_shift]
        assert len(shifted) == self.stats.n
        assert all(b.size == 1 and b.diag_shift == 20.0 for b in shifted)
        eigs = block_spectrum(spec)
        assert eigs.size == spec.dim
        assert np.sum(np.abs(eigs - 20.0) < 1e-12) == self.stats.n

    def test_padded_dimension_identity(self):
        spec = padded_dirichlet_spec(self.stats)
        assert spec.dim == self.stats.last_one_position + self.stats.n
        inner = [b for b in spec.blocks if not b.boundary]
        assert [b.size for b in inner] == [4, 2, 3]
        assert all(b.kind is LaplacianKind.DIRICHLET for b in inner)
        first, last = spec.blocks[0], spec.blocks[-1]
        assert first.boundary and first.size == int(self.stats.gaps[0]) + 1
        assert last.boundary and last.size == 1

    def test_padded_needs_two_sites(self):
        single = gap_statistics(PotentialRealization(0.5, np.array([0, 1])))
        with pytest.raises(ValueError):
            padded_dirichlet_spec(single)

    def test_block_spectrum_applies_shift(self):
        spec = BlockOperatorSpec((Block(1, LaplacianKind.NEUMANN, diag_shift=7.0),
                                  Block(2, LaplacianKind.FREE)))
        np.testing.assert_allclose(block_spectrum(spec), [1.0, 3.0, 7.0],
                                   atol=1e-12)

    def test_realize_block(self):
        block = Block(3, LaplacianKind.DIRICHLET, diag_shift=1.5)
        op = realize_block(block)
        np.testing.assert_allclose(
            dense_eigs(op), laplacian_spectrum(3, LaplacianKind.DIRICHLET) + 1.5,
            atol=1e-12)
        with pytest.raises(ValueError):
            realize_block(Block(2, LaplacianKind.FREE, boundary=True))
        with pytest.raises(ValueError):
            realize_block(Block(0, LaplacianKind.FREE))


class TestDoubledOperator:
    def test_single_one_with_leading_zero(self):
        real = PotentialRealization(0.5, np.array([0, 1]))
        dbl = doubled_operator(real, 4.0)
        assert dbl.doubled.diag.tolist() == [2.0, 4.0, 4.0]
        assert dbl.n_ones == 1

    def test_single_one_at_origin(self):
        real = PotentialRealization(0.5, np.array([1]))
        dbl = doubled_operator(real, 8.0)
        assert dbl.doubled.diag.tolist() == [6.0, 6.0]

    def test_truncates_trailing_zeros(self):
        real = PotentialRealization(0.5, np.array([0, 1, 0, 0]))
        dbl = doubled_operator(real, 4.0)
        assert dbl.base.values.tolist() == [0, 1]
        assert dbl.doubled.n == 3

    def test_half_weight_site_count(self):
        real = sample_potential(0.4, 200, Seed(8))
        dbl = doubled_operator(real, 6.0)
        stats = gap_statistics(real)
        assert dbl.doubled.n == stats.last_one_position + stats.n
        heavy = np.sum(dbl.doubled.diag > 2.0)
        assert heavy == 2 * stats.n

    def test_rejects_empty_potential(self):
        real = PotentialRealization(0.5, np.zeros(5, dtype=np.uint8))
        with pytest.raises(ValueError):
            doubled_operator(real, 4.0)


class TestEigenvalueComparisons:
    """Small dense checks of the inequalities behind the counting bounds."""

    @pytest.mark.parametrize("seed", range(5))
    @pytest.mark.parametrize("zeta", [4.0, 20.0])
    def test_deleted_blocks_lie_above(self, seed, zeta):
        real = sample_potential(0.4, 60, Seed(100, seed))
        op, stats = truncated_anderson(real, zeta)
        eigs = dense_eigs(op)
        free = block_spectrum(deleted_block_spec(stats))
        assert np.all(free >= eigs[:free.size] - 1e-9)

    @pytest.mark.parametrize("seed", range(5))
    @pytest.mark.parametrize("zeta", [4.0, 20.0])
    def test_neumann_blocks_lie_below(self, seed, zeta):
        real = sample_potential(0.4, 60, Seed(200, seed))
        op, stats = truncated_anderson(real, zeta)
        eigs = dense_eigs(op)
        low = block_spectrum(neumann_block_spec(stats, zeta))
        assert low.size == eigs.size
        assert np.all(low <= eigs + 1e-9)

    @pytest.mark.parametrize("seed", range(5))
    @pytest.mark.parametrize("zeta", [4.0, 20.0])
    def test_doubling_lowers_eigenvalues(self, seed, zeta):
        real = sample_potential(0.4, 60, Seed(300, seed))
        op, stats = truncated_anderson(real, zeta)
        eigs = dense_eigs(op)
        dbl = dense_eigs(doubled_operator(real, zeta).doubled)
        assert np.all(dbl[:eigs.size] <= eigs + 1e-9)

    @pytest.mark.parametrize("m", [1, 2, 5, 20, 48])
    @pytest.mark.parametrize("zeta", [4.0, 6.0, 20.0])
    def test_half_weight_ends_dominate_dirichlet(self, m, zeta):
        # a gap block padded by its half-weight neighbours, cut with Neumann
        # conditions, sits above the Dirichlet block once zeta/2 >= 2
        op = laplacian_matrix(m + 2, LaplacianKind.NEUMANN)
        diag = op.diag.copy()
        diag[0] += 0.5 * zeta
        diag[-1] += 0.5 * zeta
        padded = TridiagonalOperator(diag, op.offdiag)
        got = dense_eigs(padded)
        want = laplacian_spectrum(m + 2, LaplacianKind.DIRICHLET)
        assert np.all(got >= want - 1e-9)
