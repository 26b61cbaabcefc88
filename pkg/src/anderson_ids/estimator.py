"""Empirical IDS curves: single-realization, Monte Carlo, and gap-sampled
block estimates, with CSV export.

All estimates are eigenvalue counts divided by the volume.  Monte Carlo
averaging runs one Philox stream per repetition, so curves are reproducible
from the master seed alone and independent of thread scheduling (counts are
integers; the reduction order is fixed).
"""

import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import limits
from .formulas import BoundSeriesSpec, BoundVariant, beta_inverse
from .operators import LaplacianKind, anderson_matrix
from .potential import Seed, sample_gaps, sample_potential
from .spectral import CountMode, closed_form_counts, counting_curve

CSV_COLUMNS = ("energy", "value", "stderr", "p", "zeta", "L", "reps", "seed")


@dataclass(frozen=True)
class IdsCurve:
    """IDS estimates on an ascending energy grid.

    ``stderr`` is None for single-realization curves.  ``meta`` echoes the
    generating configuration (p, zeta, L, reps, seed, mode, ...).
    """

    energies: np.ndarray
    values: np.ndarray
    stderr: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        energies = np.ascontiguousarray(self.energies, dtype=np.float64)
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if energies.ndim != 1 or energies.shape != values.shape:
            raise ValueError("energies and values must be 1d of equal length")
        if np.any(np.diff(energies) < 0.0):
            raise ValueError("energies must be sorted ascending")
        stderr = self.stderr
        if stderr is not None:
            stderr = np.ascontiguousarray(stderr, dtype=np.float64)
            if stderr.shape != energies.shape:
                raise ValueError("stderr must match the grid length")
            if np.any(stderr < 0.0):
                raise ValueError("stderr must be nonnegative")
            stderr.setflags(write=False)
        energies.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "energies", energies)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "stderr", stderr)


def default_energy_grid(points: int = 401, x_min: float = 0.01,
                        x_max: float = 3.99, special_up_to: int = 12) -> np.ndarray:
    """Uniform grid over the first band plus the exact special energies.

    Uniform grids never hit the special energies, where the bounds collapse,
    so those points (both branches, n = 2 .. special_up_to) are injected
    exactly.
    """
    if not (isinstance(points, int) and points >= 2):
        raise ValueError(f"points must be an integer >= 2, got {points!r}")
    if not x_min < x_max:
        raise ValueError(f"need x_min < x_max, got {x_min} >= {x_max}")
    grid = np.linspace(x_min, x_max, points)
    if special_up_to:
        if not (isinstance(special_up_to, int) and special_up_to >= 2):
            raise ValueError(
                f"special_up_to must be an integer >= 2 or 0, got {special_up_to!r}")
        extra = []
        for n in range(2, special_up_to + 1):
            e = beta_inverse(float(n))
            extra.extend((e, 4.0 - e))
        grid = np.concatenate([grid, extra])
    return np.unique(grid)


def _check_energies(energies, zeta: float) -> np.ndarray:
    energies = np.asarray(energies, dtype=np.float64)
    if energies.ndim != 1 or energies.size == 0:
        raise ValueError("energies must be a nonempty 1d array")
    if np.any(energies < -1.0) or np.any(energies > zeta + 5.0):
        raise ValueError(
            f"energies must lie within [-1, zeta + 5] = [-1, {zeta + 5.0}]")
    return energies


def empirical_ids(p: float, zeta: float, L: int, energies,
                  mode: CountMode = CountMode.WEAK, seed: Seed = Seed(0),
                  threads: int = 1) -> IdsCurve:
    """Count-per-site IDS estimate from a single potential realization."""
    if not (isinstance(L, int) and L >= 1):
        raise ValueError(f"L must be a positive integer, got {L!r}")
    energies = _check_energies(energies, zeta)
    limits.check_sturm(L)
    real = sample_potential(p, L, seed)
    op = anderson_matrix(real, zeta)
    counts = counting_curve(op, energies, mode, threads=threads)
    meta = {"p": p, "zeta": zeta, "L": L, "reps": 1, "seed": seed.master,
            "stream": seed.stream, "mode": mode.value}
    return IdsCurve(energies=energies, values=counts / float(L), meta=meta)


def monte_carlo_ids(p: float, zeta: float, L: int, reps: int, energies,
                    mode: CountMode = CountMode.WEAK, seed: Seed = Seed(0),
                    threads: int = 1) -> IdsCurve:
    """Average of ``reps`` single-realization curves on independent streams
    ``seed.stream .. seed.stream + reps - 1``, with per-energy standard
    errors (None when reps = 1)."""
    if not (isinstance(reps, int) and reps >= 1):
        raise ValueError(f"reps must be a positive integer, got {reps!r}")
    if not (isinstance(L, int) and L >= 1):
        raise ValueError(f"L must be a positive integer, got {L!r}")
    energies = _check_energies(energies, zeta)
    limits.check_sturm(L)
    counts = np.empty((reps, energies.size), dtype=np.int64)
    for r in range(reps):
        real = sample_potential(p, L, seed.with_stream(seed.stream + r))
        op = anderson_matrix(real, zeta)
        counts[r] = counting_curve(op, energies, mode, threads=threads)
    values = counts.sum(axis=0) / (float(reps) * float(L))
    stderr = None
    if reps > 1:
        stderr = counts.std(axis=0, ddof=1) / (float(L) * math.sqrt(reps))
    meta = {"p": p, "zeta": zeta, "L": L, "reps": reps, "seed": seed.master,
            "stream": seed.stream, "mode": mode.value}
    return IdsCurve(energies=energies, values=values, stderr=stderr, meta=meta)


# How each series variant is realized by gap blocks: block kind, padding
# added to the gap size, and counting mode.
_VARIANT_BLOCKS = {
    BoundVariant.CEIL_M1: (LaplacianKind.FREE, 0, CountMode.WEAK),
    BoundVariant.FLOOR_0: (LaplacianKind.FREE, 0, CountMode.STRICT),
    BoundVariant.CEIL_0: (LaplacianKind.DIRICHLET, 0, CountMode.WEAK),
    BoundVariant.NEUMANN: (LaplacianKind.NEUMANN, 0, CountMode.STRICT),
    BoundVariant.FLOOR_M1: (LaplacianKind.DIRICHLET, 2, CountMode.STRICT),
}


def block_ids(p: float, variant, n: int, seed: Seed = Seed(0),
              energies=None) -> IdsCurve:
    """Finite-sample version of a bound series: draw ``n`` geometric gaps,
    count block eigenvalues analytically, divide by ``L_n``.

    Converges to ``bound_series(p, x, variant)`` as ``n`` grows.  The
    standard error uses the delta method for the ratio of means (counts per
    block over block lengths); None when ``n = 1``.
    """
    if isinstance(variant, BoundSeriesSpec):
        variant = variant.variant
    if not isinstance(variant, BoundVariant):
        raise ValueError(
            f"variant must be a BoundVariant or BoundSeriesSpec, got {variant!r}")
    if not (isinstance(n, int) and n >= 1):
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if energies is None:
        energies = default_energy_grid()
    energies = np.asarray(energies, dtype=np.float64)
    if energies.ndim != 1 or energies.size == 0:
        raise ValueError("energies must be a nonempty 1d array")
    if np.any(np.diff(energies) < 0.0):
        raise ValueError("energies must be sorted ascending")
    kind, pad, mode = _VARIANT_BLOCKS[variant]
    gaps = sample_gaps(p, n, seed)
    sizes = gaps.gaps + pad
    lengths = (gaps.gaps + 1).astype(np.float64)
    total = float(gaps.last_one_position)
    mean_len = total / n
    values = np.empty(energies.size)
    stderr = np.empty(energies.size) if n > 1 else None
    for i, x in enumerate(energies):
        c = closed_form_counts(sizes, kind, float(x), mode)
        ratio = float(c.sum()) / total
        values[i] = ratio
        if stderr is not None:
            resid = c.astype(np.float64) - ratio * lengths
            stderr[i] = float(resid.std(ddof=1)) / (math.sqrt(n) * mean_len)
    meta = {"p": p, "zeta": None, "L": int(total), "reps": 1,
            "seed": seed.master, "stream": seed.stream,
            "variant": variant.value, "n": n}
    return IdsCurve(energies=energies, values=values, stderr=stderr, meta=meta)


def format_cell(value) -> str:
    """CSV cell formatting: ints plain, floats shortest round-trip, None empty."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return repr(float(value))


def write_curve_csv(curve: IdsCurve, destination, config: dict | None = None) -> None:
    """Write a curve in the fixed column layout, full double precision.

    ``config`` entries (plus the curve's own meta) are echoed as leading
    ``# key=value`` comment lines.  ``destination`` is a path or text file
    object.
    """
    echo = dict(curve.meta)
    if config:
        echo.update(config)

    def emit(fh):
        for key in sorted(echo):
            fh.write(f"# {key}={echo[key]}\n")
        fh.write(",".join(CSV_COLUMNS) + "\n")
        meta = curve.meta
        fixed = (meta.get("p"), meta.get("zeta"), meta.get("L"),
                 meta.get("reps"), meta.get("seed"))
        for i in range(curve.energies.size):
            se = None if curve.stderr is None else curve.stderr[i]
            cells = [curve.energies[i], curve.values[i], se, *fixed]
            fh.write(",".join(format_cell(c) for c in cells) + "\n")

    if isinstance(destination, (str, bytes)):
        with open(destination, "w") as fh:
            emit(fh)
    else:
        emit(destination)


def read_curve_csv(source) -> IdsCurve:
    """Inverse of :func:`write_curve_csv` (comments land in ``meta``)."""
    if isinstance(source, (str, bytes)):
        with open(source) as fh:
            text = fh.read()
    elif isinstance(source, io.TextIOBase):
        text = source.read()
    else:
        text = str(source)
    meta: dict = {}
    rows = []
    header = None
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, _, val = body.partition("=")
                meta[key.strip()] = val.strip()
            continue
        if header is None:
            header = tuple(line.strip().split(","))
            if header != CSV_COLUMNS:
                raise ValueError(f"unexpected header {header!r}")
            continue
        rows.append(line.split(","))
    if header is None or not rows:
        raise ValueError("no data rows found")
    energies = np.array([float(r[0]) for r in rows])
    values = np.array([float(r[1]) for r in rows])
    has_se = all(r[2] != "" for r in rows)
    stderr = np.array([float(r[2]) for r in rows]) if has_se else None
    first = rows[0]
    meta.update({
        "p": float(first[3]) if first[3] else None,
        "zeta": float(first[4]) if first[4] else None,
        "L": int(first[5]) if first[5] else None,
        "reps": int(first[6]) if first[6] else None,
        "seed": int(first[7]) if first[7] else None,
    })
    return IdsCurve(energies=energies, values=values, stderr=stderr, meta=meta)
