"""Closed-form bounds and exact values for the integrated density of states
(IDS) of the strongly disordered Anderson-Bernoulli chain.

The operator is the discrete Laplacian on the half line plus ``zeta`` times an
i.i.d. Bernoulli(p) potential, with a Dirichlet condition at the origin.  For
coupling ``zeta >= 4`` the almost-sure spectrum is ``[0, 4] u [zeta, zeta+4]``
and on the first band the IDS ``I(x)`` is pinched between explicit series in
``q = 1 - p``.  The exponents of the series are floor/ceil combinations of
``k * beta(x)`` where

    beta(x) = pi / (2 * asin(sqrt(x) / 2)),      x in (0, 4],

is the number of lattice sites per half wavelength at energy ``x``.  ``beta``
decreases from infinity to 1 as ``x`` runs over the band; its inverse is
``beta_inverse(b) = 4 * sin(pi / (2 b))**2``.

Whenever ``beta(x)`` hits an integer ``n >= 2`` the competing series collapse
to the same geometric sum, so the IDS is known exactly there (and does not
depend on the coupling).  The same mechanism gives exact values at the
mirrored energies ``4 - beta_inverse(n)`` near the top of the band.

All routines are pure functions of Python floats and validate their inputs
with ``ValueError``.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

# Multiples of beta(x) this close to an integer are treated as exact.  beta
# evaluates with an error of a few ulp even at energies where it is an exact
# integer (beta(2) comes out as 1.9999999999999998), and floor/ceil amplify
# that to an O(1) error in the series exponents.
SNAP_TOL = 1e-9

# Refusal threshold for series truncation lengths; reaching it means the
# requested tolerance is unattainably tight for the given p and x.
_MAX_SERIES_TERMS = 50_000_000


def _check_p(p: float) -> None:
    if not (isinstance(p, (int, float)) and math.isfinite(p)):
        raise ValueError(f"p must be a finite number, got {p!r}")
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie strictly between 0 and 1, got {p}")


def _check_zeta(zeta: float) -> None:
    if not (isinstance(zeta, (int, float)) and math.isfinite(zeta)):
        raise ValueError(f"zeta must be a finite number, got {zeta!r}")
    if zeta < 0.0:
        raise ValueError(f"zeta must be nonnegative, got {zeta}")


def _check_band_energy(x: float, top_open: bool) -> None:
    if not (isinstance(x, (int, float)) and math.isfinite(x)):
        raise ValueError(f"x must be a finite number, got {x!r}")
    if top_open:
        if not 0.0 < x < 4.0:
            raise ValueError(f"x must lie in the open band (0, 4), got {x}")
    else:
        if not 0.0 < x <= 4.0:
            raise ValueError(f"x must lie in the band (0, 4], got {x}")


def snap_to_integer(y):
    """Round ``y`` to the nearest integer when within ``SNAP_TOL`` of it.

    Accepts scalars or arrays; always returns floats.  Applied to products
    ``k * beta(x)`` before floor/ceil so that energies with integer beta get
    the exact geometric exponents.
    """
    y = np.asarray(y, dtype=np.float64)
    r = np.rint(y)
    out = np.where(np.abs(y - r) < SNAP_TOL, r, y)
    if out.ndim == 0:
        return float(out)
    return out


def beta(x: float) -> float:
    """Half-wavelength scale ``pi / (2 asin(sqrt(x)/2))`` for ``x`` in (0, 4].

    Strictly decreasing, with ``beta(4) = 1`` and ``beta(x) ~ pi/sqrt(x)``
    as ``x -> 0``.
    """
    _check_band_energy(x, top_open=False)
    return math.pi / (2.0 * math.asin(math.sqrt(x) / 2.0))


def beta_inverse(b: float) -> float:
    """Inverse of :func:`beta`: the energy with ``beta(x) = b``, ``b >= 1``."""
    if not (isinstance(b, (int, float)) and math.isfinite(b)):
        raise ValueError(f"b must be a finite number, got {b!r}")
    if b < 1.0:
        raise ValueError(f"b must be at least 1, got {b}")
    s = math.sin(math.pi / (2.0 * b))
    return 4.0 * s * s


class BoundVariant(Enum):
    """The five series exponent rules.

    Writing ``b = beta(x)`` and ``q = 1 - p``, each variant evaluates
    ``p * sum_{k>=1} q**e(k)`` with exponent rule

    ==========  =====================  ========================================
    variant     e(k)                   role
    ==========  =====================  ========================================
    CEIL_M1     ceil(k b) - 1          lower bound for I(x)
    FLOOR_M1    floor(k b) - 1         upper bound for I(x), tighter on (0, 2]
    CEIL_0      ceil(k b)              lower bound for (1-p) - I(4-x)
    FLOOR_0     floor(k b)             upper bound for (1-p) - I(4-x)
    NEUMANN     floor((k-1) b) + 1     upper bound for I(x), tighter on [2, 4)
    ==========  =====================  ========================================

    CEIL_M1 / FLOOR_0 arise from counting weak / strict spectral hits of the
    free blocks between occupied sites, CEIL_0 / NEUMANN from the Dirichlet
    and Neumann variants of those blocks, and FLOOR_M1 from the site-doubling
    construction (Dirichlet blocks padded by two sites).
    """

    CEIL_M1 = "ceil-m1"
    FLOOR_M1 = "floor-m1"
    CEIL_0 = "ceil-0"
    FLOOR_0 = "floor-0"
    NEUMANN = "neumann"


@dataclass(frozen=True)
class BoundSeriesSpec:
    """A series variant together with its truncation tolerance."""

    variant: BoundVariant
    tol: float = 1e-12

    def __post_init__(self):
        if not isinstance(self.variant, BoundVariant):
            raise ValueError(f"variant must be a BoundVariant, got {self.variant!r}")
        if not (isinstance(self.tol, float) and 0.0 < self.tol < 1.0):
            raise ValueError(f"tol must lie in (0, 1), got {self.tol!r}")


# Value of each series at x = 4, where beta = 1 turns every exponent rule
# into k - 1 or k and the sums close to 1 or 1 - p.
_TOP_VALUE_IS_ONE = {BoundVariant.CEIL_M1, BoundVariant.FLOOR_M1}


def _series_exponents(variant: BoundVariant, k: np.ndarray, b: float) -> np.ndarray:
    if variant is BoundVariant.NEUMANN:
        return np.floor(snap_to_integer((k - 1.0) * b)) + 1.0
    kb = snap_to_integer(k * b)
    if variant is BoundVariant.CEIL_M1:
        return np.ceil(kb) - 1.0
    if variant is BoundVariant.FLOOR_M1:
        return np.floor(kb) - 1.0
    if variant is BoundVariant.CEIL_0:
        return np.ceil(kb)
    if variant is BoundVariant.FLOOR_0:
        return np.floor(kb)
    raise ValueError(f"unknown variant {variant!r}")


def _series_length(p: float, b: float, tol: float) -> int:
    # Terms beyond K contribute at most p * q**(K b - 2) / (1 - q**b) for
    # every exponent rule, since e(k) >= k b - 2 throughout.  Pick the first
    # K making that bound smaller than tol.
    q = 1.0 - p
    rhs = tol * (1.0 - q ** b) / p
    if rhs >= 1.0:
        return 1
    k0 = (2.0 + math.log(rhs) / math.log(q)) / b
    terms = max(1, math.floor(k0) + 1)
    if terms > _MAX_SERIES_TERMS:
        raise ValueError(
            f"series for p={p}, beta={b} needs {terms} terms to reach "
            f"tol={tol}; loosen the tolerance")
    return terms


def bound_series(p: float, x: float, spec, tol: float = 1e-12) -> float:
    """Evaluate one of the five IDS bound series at energy ``x`` in (0, 4].

    ``spec`` may be a :class:`BoundVariant` (with the truncation tolerance
    given by ``tol``) or a :class:`BoundSeriesSpec` carrying its own
    tolerance.  The series is truncated once the geometric tail bound drops
    below the tolerance, so the returned value undershoots the exact sum by
    less than ``tol``.  At ``x = 4`` (beta = 1) the closed-form limit is
    returned instead: 1 for the CEIL_M1 / FLOOR_M1 rules and ``1 - p`` for
    the other three.
    """
    if isinstance(spec, BoundSeriesSpec):
        variant, tol = spec.variant, spec.tol
    elif isinstance(spec, BoundVariant):
        variant = spec
    else:
        raise ValueError(
            f"spec must be a BoundVariant or BoundSeriesSpec, got {spec!r}")
    _check_p(p)
    if not (isinstance(tol, float) and 0.0 < tol < 1.0):
        raise ValueError(f"tol must lie in (0, 1), got {tol!r}")
    _check_band_energy(x, top_open=False)
    if x == 4.0:
        return 1.0 if variant in _TOP_VALUE_IS_ONE else 1.0 - p
    b = beta(x)
    q = 1.0 - p
    terms = _series_length(p, b, tol)
    k = np.arange(1, terms + 1, dtype=np.float64)
    e = _series_exponents(variant, k, b)
    return p * float(np.sum(q ** e))


def theorem1_bounds(p: float, x: float, tol: float = 1e-12) -> tuple[float, float]:
    """Sharp lower and upper IDS bounds at energy ``x`` in the open band (0, 4).

    The lower bound is the CEIL_M1 series; the upper bound is the pointwise
    minimum of the FLOOR_M1 and NEUMANN series (FLOOR_M1 is smaller on
    (0, 2], NEUMANN on [2, 4), and they agree at ``x = 2``).  The two bounds
    coincide at the special energies ``beta_inverse(n)`` and their mirrors
    ``4 - beta_inverse(n)``.
    """
    _check_band_energy(x, top_open=True)
    lower = bound_series(p, x, BoundVariant.CEIL_M1, tol=tol)
    upper = min(bound_series(p, x, BoundVariant.FLOOR_M1, tol=tol),
                bound_series(p, x, BoundVariant.NEUMANN, tol=tol))
    return lower, upper


@dataclass(frozen=True)
class SpecialEnergy:
    """The pair of energies with integer beta index ``n >= 2``.

    ``lower = beta_inverse(n)`` sits in the bottom half of the band and
    ``upper = 4 - lower`` mirrors it in the top half.  At both, the IDS is
    exact and independent of the coupling.
    """

    n: int
    lower: float
    upper: float


def special_energy(n: int) -> SpecialEnergy:
    if not (isinstance(n, int) and n >= 2):
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    lo = beta_inverse(float(n))
    return SpecialEnergy(n=n, lower=lo, upper=4.0 - lo)


def special_ids_values(p: float, n: int) -> tuple[float, float]:
    """Exact IDS values at the two special energies of index ``n``.

    At ``x = beta_inverse(n)`` the IDS equals ``p/(1-p) * q^n / (1 - q^n)``;
    at ``x = 4 - beta_inverse(n)`` it equals ``(1-p) - p * q^n / (1 - q^n)``.
    Both hold for every coupling ``zeta >= 4``.
    """
    _check_p(p)
    if not (isinstance(n, int) and n >= 2):
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    q = 1.0 - p
    core = p * q ** n / (1.0 - q ** n)
    return core / q, q - core


def special_energies(p: float, n_max: int) -> list[tuple[SpecialEnergy, float, float]]:
    """Special energies and exact IDS values for ``n = 2 .. n_max``."""
    if not (isinstance(n_max, int) and n_max >= 2):
        raise ValueError(f"n_max must be an integer >= 2, got {n_max!r}")
    rows = []
    for n in range(2, n_max + 1):
        lo_val, up_val = special_ids_values(p, n)
        rows.append((special_energy(n), lo_val, up_val))
    return rows


def envelope_fp(p: float, x: float) -> float:
    """Piecewise-smooth envelope ``f_p`` through the special-energy values.

    On (0, 2] it is ``p/(1-p) * q^beta(x) / (1 - q^beta(x))``; on [2, 4) it
    is ``(1-p) - p * q^beta(4-x) / (1 - q^beta(4-x))``.  Both branches give
    ``(1-p)/(2-p)`` at ``x = 2`` (evaluated via the left branch there).  The
    IDS oscillates around this curve and touches it at every special energy.
    """
    _check_p(p)
    _check_band_energy(x, top_open=True)
    q = 1.0 - p
    if x <= 2.0:
        qb = q ** beta(x)
        return p / q * qb / (1.0 - qb)
    qb = q ** beta(4.0 - x)
    return q - p * qb / (1.0 - qb)


def free_ids(x: float) -> float:
    """IDS of the free half-line Laplacian: 0 below the band, ``1/beta(x)``
    inside, 1 above."""
    if not (isinstance(x, (int, float)) and math.isfinite(x)):
        raise ValueError(f"x must be a finite number, got {x!r}")
    if x <= 0.0:
        return 0.0
    if x >= 4.0:
        return 1.0
    return 1.0 / beta(x)


class BandEdge(Enum):
    """Which spectral edge a tail statement refers to."""

    LOWER = "lower"
    UPPER = "upper"


def lifschitz_bounds(p: float, x: float, edge: BandEdge = BandEdge.LOWER) -> tuple[float, float]:
    """Continuous IDS bounds exposing the exponential band-edge tails.

    With ``g = q^beta(x) / (1 - q^beta(x))`` and ``x`` in (0, 2]:

    * ``LOWER`` edge: ``p*g <= I(x) <= p*g / (1-p)**2``.
    * ``UPPER`` edge: ``p*(1-p)*g <= (1-p) - I(4-x) <= p*g / (1-p)``,
      bounding the IDS mass missing below the mirrored energy ``4 - x``.

    Both decay like ``exp(beta(x) * ln q) ~ exp(pi * ln(q) / sqrt(x))`` as
    ``x -> 0``; see :func:`lifschitz_constant`.
    """
    _check_p(p)
    if not isinstance(edge, BandEdge):
        raise ValueError(f"edge must be a BandEdge, got {edge!r}")
    if not (isinstance(x, (int, float)) and math.isfinite(x)):
        raise ValueError(f"x must be a finite number, got {x!r}")
    if not 0.0 < x <= 2.0:
        raise ValueError(f"x must lie in (0, 2], got {x}")
    q = 1.0 - p
    qb = q ** beta(x)
    g = qb / (1.0 - qb)
    if edge is BandEdge.LOWER:
        return p * g, p * g / (q * q)
    return p * q * g, p * g / q


def lifschitz_constant(p: float) -> float:
    """Exponential rate in the tail ``I(x) = exp((C + o(1)) / sqrt(x))``:
    ``C = pi * ln(1 - p)`` (negative)."""
    _check_p(p)
    return math.pi * math.log(1.0 - p)


@dataclass(frozen=True)
class BandSymmetry:
    """Reflection sending the IDS of one chain to that of another.

    The IDS at parameters ``(p, zeta)`` and energy ``x`` equals
    ``value_offset + value_scale * I(p_image, zeta, x_image)``; the image
    parameters swap occupied and empty sites and reflect the energy through
    the centre of the two-band spectrum.
    """

    p_image: float
    x_image: float
    value_scale: float = -1.0
    value_offset: float = 1.0

    def apply(self, image_value: float) -> float:
        return self.value_offset + self.value_scale * image_value


def band_symmetry_image(p: float, zeta: float, x: float) -> BandSymmetry:
    """Image of ``(p, zeta, x)`` under the two-band reflection.

    ``I_{p,zeta}(x) = 1 - I_{1-p,zeta}(4 + zeta - x)`` at continuity points;
    the reflection maps the first band of one operator onto the second band
    of the other.
    """
    _check_p(p)
    _check_zeta(zeta)
    if not (isinstance(x, (int, float)) and math.isfinite(x)):
        raise ValueError(f"x must be a finite number, got {x!r}")
    return BandSymmetry(p_image=1.0 - p, x_image=4.0 + zeta - x)
