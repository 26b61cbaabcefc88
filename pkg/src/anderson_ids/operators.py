"""Finite-volume operators as symmetric tridiagonal matrices or block lists.

The Anderson matrix on sites ``1 .. L`` has diagonal ``2 + zeta * V(j)`` and
off-diagonal ``-1``; the missing site 0 encodes the Dirichlet condition at
the origin and the truncation at ``L`` is free (no corner correction).

Comparison operators live on the runs of empty sites between occupied ones:
free, Dirichlet (+1 at both corners) and Neumann (-1 at both corners)
Laplacian blocks, all with closed-form spectra

    free:       4 sin^2(pi k / (2 (n+1)))     k = 1 .. n
    dirichlet:  4 sin^2(pi k / (2 n))
    neumann:    4 sin^2(pi (k-1) / (2 n))

plus the site-doubling construction that splits each occupied site into two
sites carrying ``zeta / 2`` each, which lowers eigenvalues and decouples the
chain into padded Dirichlet blocks.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .potential import GapStatistics, PotentialRealization


class LaplacianKind(Enum):
    FREE = "free"
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"


# Corner correction added to both end entries of the diagonal (they stack on
# the single entry when n = 1).
_CORNER = {LaplacianKind.FREE: 0.0, LaplacianKind.DIRICHLET: 1.0,
           LaplacianKind.NEUMANN: -1.0}


@dataclass(frozen=True)
class TridiagonalOperator:
    """Symmetric tridiagonal matrix given by its diagonal and off-diagonal."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        diag = np.ascontiguousarray(self.diag, dtype=np.float64)
        off = np.ascontiguousarray(self.offdiag, dtype=np.float64)
        if diag.ndim != 1 or diag.size < 1:
            raise ValueError("diag must be a 1d array with at least one entry")
        if off.shape != (diag.size - 1,):
            raise ValueError(
                f"offdiag must have length {diag.size - 1}, got {off.shape}")
        if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(off))):
            raise ValueError("matrix entries must be finite")
        diag.setflags(write=False)
        off.setflags(write=False)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", off)

    @property
    def n(self) -> int:
        return int(self.diag.size)

    def to_dense(self) -> np.ndarray:
        a = np.diag(self.diag)
        if self.n > 1:
            idx = np.arange(self.n - 1)
            a[idx, idx + 1] = self.offdiag
            a[idx + 1, idx] = self.offdiag
        return a


def laplacian_matrix(n: int, kind: LaplacianKind) -> TridiagonalOperator:
    """Laplacian block of size ``n`` with the given boundary correction."""
    if not (isinstance(n, int) and n >= 1):
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not isinstance(kind, LaplacianKind):
        raise ValueError(f"kind must be a LaplacianKind, got {kind!r}")
    diag = np.full(n, 2.0)
    c = _CORNER[kind]
    diag[0] += c
    diag[-1] += c
    return TridiagonalOperator(diag=diag, offdiag=np.full(n - 1, -1.0))


def laplacian_spectrum(n: int, kind: LaplacianKind) -> np.ndarray:
    """Closed-form eigenvalues of the size-``n`` Laplacian block, ascending."""
    if not (isinstance(n, int) and n >= 1):
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not isinstance(kind, LaplacianKind):
        raise ValueError(f"kind must be a LaplacianKind, got {kind!r}")
    k = np.arange(1, n + 1, dtype=np.float64)
    if kind is LaplacianKind.FREE:
        s = np.sin(math.pi * k / (2.0 * (n + 1)))
    elif kind is LaplacianKind.DIRICHLET:
        s = np.sin(math.pi * k / (2.0 * n))
    else:
        s = np.sin(math.pi * (k - 1.0) / (2.0 * n))
    return 4.0 * s * s


def anderson_matrix(real: PotentialRealization, zeta: float) -> TridiagonalOperator:
    """The operator restricted to sites ``1 .. L``: diag ``2 + zeta V``."""
    if not (isinstance(zeta, (int, float)) and math.isfinite(zeta) and zeta >= 0):
        raise ValueError(f"zeta must be a finite nonnegative number, got {zeta!r}")
    diag = 2.0 + zeta * real.values.astype(np.float64)
    return TridiagonalOperator(diag=diag, offdiag=np.full(real.length - 1, -1.0))


@dataclass(frozen=True)
class Block:
    """One summand of a decoupled block operator.

    ``diag_shift`` is added to the whole diagonal (used for the 1x1 potential
    blocks carrying ``zeta``).  ``boundary`` flags blocks whose exact form is
    irrelevant for limiting counts; they are sized but never diagonalized.
    """

    size: int
    kind: LaplacianKind
    diag_shift: float = 0.0
    boundary: bool = False

    def __post_init__(self):
        if not (isinstance(self.size, int) and self.size >= 0):
            raise ValueError(f"size must be a nonnegative integer, got {self.size!r}")
        if not isinstance(self.kind, LaplacianKind):
            raise ValueError(f"kind must be a LaplacianKind, got {self.kind!r}")


@dataclass(frozen=True)
class BlockOperatorSpec:
    """A direct sum of Laplacian blocks; zero-size blocks contribute nothing."""

    blocks: tuple = field(default_factory=tuple)

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if not all(isinstance(b, Block) for b in blocks):
            raise ValueError("blocks must all be Block instances")
        object.__setattr__(self, "blocks", blocks)

    @property
    def dim(self) -> int:
        return sum(b.size for b in self.blocks)

    @property
    def counting_dim(self) -> int:
        """Dimension of the non-boundary part, the one that enters counts."""
        return sum(b.size for b in self.blocks if not b.boundary)


def deleted_block_spec(gaps: GapStatistics) -> BlockOperatorSpec:
    """Free blocks left after deleting every occupied site: FREE(Y_i).

    Zero gaps are dropped; total dimension is ``sum Y_i``.  Eigenvalue j of
    the direct sum bounds eigenvalue j of the full Anderson matrix from
    above, by Cauchy interlacing of principal submatrices.
    """
    blocks = tuple(Block(size=int(y), kind=LaplacianKind.FREE)
                   for y in gaps.gaps if y > 0)
    return BlockOperatorSpec(blocks=blocks)


def neumann_block_spec(gaps: GapStatistics, zeta: float) -> BlockOperatorSpec:
    """Neumann decoupling: NEUMANN(Y_i) blocks plus one 1x1 block of value
    ``zeta`` per occupied site.

    Total dimension is ``L_n``; the direct sum bounds the Anderson matrix
    from below, eigenvalue by eigenvalue.
    """
    if not (isinstance(zeta, (int, float)) and math.isfinite(zeta) and zeta >= 0):
        raise ValueError(f"zeta must be a finite nonnegative number, got {zeta!r}")
    blocks = [Block(size=int(y), kind=LaplacianKind.NEUMANN)
              for y in gaps.gaps if y > 0]
    # NEUMANN(1) has the single entry 0; shifting by zeta realizes the
    # decoupled potential site exactly.
    blocks.extend(Block(size=1, kind=LaplacianKind.NEUMANN, diag_shift=float(zeta))
                  for _ in range(gaps.n))
    return BlockOperatorSpec(blocks=tuple(blocks))


def padded_dirichlet_spec(gaps: GapStatistics) -> BlockOperatorSpec:
    """Dirichlet decoupling of the doubled chain: DIRICHLET(Y_i + 2) blocks.

    Each gap is padded by its two neighbouring half-weight sites.  The first
    segment (size ``Y_1 + 1``, mixed boundary conditions) and the trailing
    single site (value 2) do not fit the pattern; they are kept as boundary
    blocks so dimensions add up to ``L_n + n``, but their eigenvalues are
    excluded from counting (there are only ``Y_max + 2`` of them).
    """
    if gaps.n < 2:
        raise ValueError(f"need at least two occupied sites, got {gaps.n}")
    blocks = [Block(size=int(gaps.gaps[0]) + 1, kind=LaplacianKind.FREE,
                    boundary=True)]
    blocks.extend(Block(size=int(y) + 2, kind=LaplacianKind.DIRICHLET)
                  for y in gaps.gaps[1:])
    blocks.append(Block(size=1, kind=LaplacianKind.FREE, boundary=True))
    return BlockOperatorSpec(blocks=tuple(blocks))


@dataclass(frozen=True)
class DoubledRealization:
    """A realization truncated at its last occupied site, together with the
    matrix obtained by splitting each occupied site into two half-weight
    ones."""

    base: PotentialRealization
    doubled: TridiagonalOperator
    n_ones: int


def doubled_operator(real: PotentialRealization, zeta: float) -> DoubledRealization:
    """Split every occupied site of ``real`` into two sites of weight
    ``zeta/2``.

    The input is truncated at its last occupied site (position ``L_n``); the
    doubled matrix has size ``L_n + n`` and its j-th eigenvalue is below the
    j-th eigenvalue of the truncated Anderson matrix for ``j <= L_n``.
    """
    if not (isinstance(zeta, (int, float)) and math.isfinite(zeta) and zeta >= 0):
        raise ValueError(f"zeta must be a finite nonnegative number, got {zeta!r}")
    ones = np.flatnonzero(real.values)
    if ones.size == 0:
        raise ValueError("realization has no occupied site to double")
    n = int(ones.size)
    last = int(ones[-1]) + 1
    base = PotentialRealization(p=real.p, values=real.values[:last])
    size = last + n
    vprime = np.zeros(size)
    # occupied site k (1-indexed position L_k) moves to positions
    # L_k + k - 1 and L_k + k in the doubled chain
    first_half = ones + np.arange(1, n + 1) - 1
    vprime[first_half] = 1.0
    vprime[first_half + 1] = 1.0
    diag = 2.0 + 0.5 * zeta * vprime
    op = TridiagonalOperator(diag=diag, offdiag=np.full(size - 1, -1.0))
    return DoubledRealization(base=base, doubled=op, n_ones=n)


def block_spectrum(spec: BlockOperatorSpec) -> np.ndarray:
    """Closed-form eigenvalues of all non-boundary blocks, ascending."""
    parts = [laplacian_spectrum(b.size, b.kind) + b.diag_shift
             for b in spec.blocks if not b.boundary and b.size > 0]
    if not parts:
        return np.zeros(0)
    return np.sort(np.concatenate(parts))


def realize_block(block: Block) -> TridiagonalOperator:
    """Materialize one non-boundary block as a matrix."""
    if block.boundary:
        raise ValueError("boundary blocks have no specified matrix form")
    if block.size == 0:
        raise ValueError("cannot materialize an empty block")
    op = laplacian_matrix(block.size, block.kind)
    if block.diag_shift:
        return TridiagonalOperator(diag=op.diag + block.diag_shift,
                                   offdiag=op.offdiag)
    return op


def operator_to_text(op: TridiagonalOperator) -> str:
    """Two-column text form: one row per site, ``diag<TAB>offdiag`` with the
    off-diagonal cell empty on the last row.  Floats use shortest round-trip
    formatting."""
    rows = []
    for j in range(op.n):
        off = repr(float(op.offdiag[j])) if j < op.n - 1 else ""
        rows.append(f"{float(op.diag[j])!r}\t{off}")
    return "\n".join(rows) + "\n"


def operator_from_text(text: str) -> TridiagonalOperator:
    """Inverse of :func:`operator_to_text`."""
    diag, off = [], []
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty operator text")
    for i, line in enumerate(lines):
        cells = line.split("\t")
        if len(cells) != 2:
            raise ValueError(f"row {i}: expected two tab-separated cells")
        diag.append(float(cells[0]))
        if cells[1]:
            off.append(float(cells[1]))
    if len(off) != len(diag) - 1:
        raise ValueError("off-diagonal column must be empty exactly on the last row")
    return TridiagonalOperator(diag=np.array(diag), offdiag=np.array(off))
