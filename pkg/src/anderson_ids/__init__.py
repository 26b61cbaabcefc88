"""Integrated density of states of a strongly disordered Bernoulli chain.

Closed-form bounds and exact special-energy values for the IDS of
``-laplacian + zeta * V`` with i.i.d. Bernoulli(p) potential at coupling
``zeta >= 4``, plus large-scale eigenvalue counting to estimate the IDS
directly and verification routines that confront the two.
"""

from .estimator import (CSV_COLUMNS, IdsCurve, block_ids, default_energy_grid,
                        empirical_ids, format_cell, monte_carlo_ids,
                        read_curve_csv, write_curve_csv)
from .formulas import (SNAP_TOL, BandEdge, BandSymmetry, BoundSeriesSpec,
                       BoundVariant, SpecialEnergy, band_symmetry_image, beta,
                       beta_inverse, bound_series, envelope_fp, free_ids,
                       lifschitz_bounds, lifschitz_constant, snap_to_integer,
                       special_energies, special_energy, special_ids_values,
                       theorem1_bounds)
from .limits import ResourceLimitError, dense_max, sturm_max
from .operators import (Block, BlockOperatorSpec, DoubledRealization,
                        LaplacianKind, TridiagonalOperator, anderson_matrix,
                        block_spectrum, deleted_block_spec, doubled_operator,
                        laplacian_matrix, laplacian_spectrum,
                        neumann_block_spec, operator_from_text,
                        operator_to_text, padded_dirichlet_spec,
                        realize_block)
from .potential import (GapStatistics, PotentialRealization, Seed,
                        gap_statistics, generator, reconstruct_potential,
                        sample_gaps, sample_potential, ybar_ratio)
from .spectral import (CountMode, block_count, closed_form_counts,
                       counting_curve, dense_eigenvalues, sturm_count)
from .verify import (CheckStatus, ConjectureRow, VerificationReport,
                     check_corollary4, check_interlacing, check_lemma5,
                     check_lifschitz, check_special_energies, check_symmetry,
                     check_theorem1, conjecture_experiment,
                     fp_crossing_experiment, interlacing_suite,
                     proved_rows_report, summary_table)

__version__ = "0.1.0"

__all__ = [
    "SNAP_TOL", "CSV_COLUMNS",
    "BandEdge", "BandSymmetry", "Block", "BlockOperatorSpec",
    "BoundSeriesSpec", "BoundVariant", "CheckStatus", "ConjectureRow",
    "CountMode", "DoubledRealization", "GapStatistics", "IdsCurve",
    "LaplacianKind", "PotentialRealization", "ResourceLimitError", "Seed",
    "SpecialEnergy", "TridiagonalOperator", "VerificationReport",
    "anderson_matrix", "band_symmetry_image", "beta", "beta_inverse",
    "block_count", "block_ids", "block_spectrum", "bound_series",
    "check_corollary4", "check_interlacing", "check_lemma5",
    "check_lifschitz", "check_special_energies", "check_symmetry",
    "check_theorem1", "closed_form_counts", "conjecture_experiment",
    "counting_curve", "default_energy_grid", "deleted_block_spec",
    "dense_eigenvalues", "dense_max", "doubled_operator", "empirical_ids",
    "envelope_fp", "format_cell", "fp_crossing_experiment", "free_ids",
    "gap_statistics", "generator", "interlacing_suite", "laplacian_matrix",
    "laplacian_spectrum", "lifschitz_bounds", "lifschitz_constant",
    "monte_carlo_ids", "neumann_block_spec", "operator_from_text",
    "operator_to_text", "padded_dirichlet_spec", "proved_rows_report",
    "read_curve_csv", "realize_block", "reconstruct_potential",
    "sample_gaps", "sample_potential", "snap_to_integer", "special_energies",
    "special_energy", "special_ids_values", "sturm_count", "sturm_max",
    "summary_table", "theorem1_bounds", "write_curve_csv", "ybar_ratio",
]
