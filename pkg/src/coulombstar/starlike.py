"""Starlikeness certification of g on the unit disk by grid scanning.

A normalized function is starlike of a given flavor exactly when its ratio
P(z) = z g'(z) / g(z) keeps its values inside the corresponding target
region for all |z| < 1:

    classical     Re w > 0                (right half plane)
    lemniscate    |w^2 - 1| < 1, Re w > 0 (right loop of the Bernoulli curve)
    exponential   |Log w| < 1             (image of the unit disk under exp)

Each region membership is expressed as a margin that is positive inside and
negative outside, so a scan only has to check that the minimum margin over a
polar grid stays positive.  Closed-form sufficient conditions on (L, eta)
are provided alongside as fast pre-checks.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams
from .series import DEFAULT_TOL, CoulombParams, table_for_radius

SQRT2 = math.sqrt(2.0)
#: Hypothesis threshold of the lemniscate sufficient condition.
LEMNISCATE_THRESHOLD = SQRT2 / 4
#: Hypothesis threshold of the exponential sufficient condition.
EXPONENTIAL_THRESHOLD = (math.e - 1) / math.e**2


class StarlikeClass(str, enum.Enum):
    CLASSICAL = "classical"
    LEMNISCATE = "lemniscate"
    EXPONENTIAL = "exponential"


def classical_margin(w: complex) -> float:
    """Distance-like margin for the right half plane: Re w."""
    return complex(w).real


def lemniscate_margin(w: complex) -> float:
    """1 - |w^2 - 1|; positive inside the full Bernoulli lemniscate."""
    w = complex(w)
    return 1.0 - abs(w * w - 1.0)


def exponential_margin(w: complex) -> float:
    """1 - |Log w| on the principal branch.

    The closed negative real axis (including 0) has no principal logarithm
    worth comparing, so those points return -inf as a sentinel.
    """
    w = complex(w)
    if w.imag == 0.0 and w.real <= 0.0:
        return -math.inf
    return 1.0 - abs(np.log(complex(w)))


def lemniscate_condition(params: CoulombParams) -> tuple[bool, float]:
    """Sufficient condition for lemniscate starlikeness of g.

    slack = sqrt(2)/4 - (sqrt(2) - 1) |2L - 1| - 2 |eta|; positive slack
    guarantees the certification scan succeeds.
    """
    slack = (
        LEMNISCATE_THRESHOLD
        - (SQRT2 - 1) * abs(2 * params.L - 1)
        - 2 * abs(params.eta)
    )
    return (slack > 0, slack)


def exponential_condition(params: CoulombParams) -> tuple[bool, float]:
    """Sufficient condition for exponential starlikeness of g.

    slack = (e - 1)/e^2 - (e - 1) |2L - 1| - 2 |eta|.
    """
    slack = (
        EXPONENTIAL_THRESHOLD
        - (math.e - 1) * abs(2 * params.L - 1)
        - 2 * abs(params.eta)
    )
    return (slack > 0, slack)


@dataclass(frozen=True)
class ScanGrid:
    """Polar certification grid: rings of equally spaced angles."""

    radii: tuple[float, ...]
    angles_per_ring: int = 720
    r_max: float = 0.999

    def __post_init__(self) -> None:
        if not self.radii:
            raise InvalidParams("grid needs at least one ring")
        if self.angles_per_ring < 1:
            raise InvalidParams("angles_per_ring must be >= 1")
        if not (0 < self.r_max < 1):
            raise InvalidParams("r_max must sit in (0, 1)")
        previous = 0.0
        for r in self.radii:
            if not (previous < r <= self.r_max):
                raise InvalidParams(
                    "radii must increase strictly inside (0, r_max]"
                )
            previous = r

    @property
    def rings(self) -> int:
        return len(self.radii)

    @classmethod
    def default(cls, rings: int = 40, angles_per_ring: int = 720, r_max: float = 0.999):
        radii = tuple(r_max * (j + 1) / rings for j in range(rings))
        return cls(radii=radii, angles_per_ring=angles_per_ring, r_max=r_max)

    def points(self) -> np.ndarray:
        """Complex sample points, shape (rings, angles_per_ring)."""
        theta = 2 * np.pi * np.arange(self.angles_per_ring) / self.angles_per_ring
        ring = np.exp(1j * theta)
        return np.asarray(self.radii)[:, None] * ring[None, :]

    def to_jsonable(self) -> dict:
        return {
            "rings": self.rings,
            "angles_per_ring": self.angles_per_ring,
            "r_max": self.r_max,
            "radii": list(self.radii),
        }


@dataclass(frozen=True)
class CertificationReport:
    """Outcome of a grid scan for one parameter pair and one flavor."""

    params: CoulombParams
    starlike_class: StarlikeClass
    grid: ScanGrid
    min_margin: float
    worst_point: complex
    hypothesis_satisfied: bool
    certified: bool
    per_ring_margins: tuple[float, ...]
    zero_in_disk: bool = False

    def to_jsonable(self) -> dict:
        return {
            "params": self.params.to_jsonable(),
            "class": self.starlike_class.value,
            "grid": self.grid.to_jsonable(),
            "min_margin": self.min_margin,
            "worst_point": {"re": self.worst_point.real, "im": self.worst_point.imag},
            "hypothesis_satisfied": self.hypothesis_satisfied,
            "certified": self.certified,
            "zero_in_disk": self.zero_in_disk,
            "per_ring_margins": list(self.per_ring_margins),
        }


def _margin_field(P: np.ndarray, flavor: StarlikeClass) -> np.ndarray:
    if flavor is StarlikeClass.CLASSICAL:
        return P.real.copy()
    if flavor is StarlikeClass.LEMNISCATE:
        # membership in the right loop needs both |P^2 - 1| < 1 and Re P > 0,
        # so the scan margin is the smaller of the two signed quantities
        return np.minimum(1.0 - np.abs(P * P - 1.0), P.real)
    with np.errstate(divide="ignore", invalid="ignore"):
        margin = 1.0 - np.abs(np.log(P))
    on_cut = (P.imag == 0.0) & (P.real <= 0.0)
    margin[on_cut] = -np.inf
    return margin


def certify(
    params: CoulombParams,
    starlike_class: StarlikeClass,
    grid: ScanGrid | None = None,
    tol: float = DEFAULT_TOL,
) -> CertificationReport:
    """Scan P over the grid and report the minimum membership margin.

    certified is exactly min_margin > 0.  Grid points where g (numerically)
    vanishes poison the ratio; they are recorded with margin -inf and flip
    zero_in_disk, so the report survives but cannot certify.  Ties for the
    worst point resolve to the lowest (ring, angle) index pair.
    """
    flavor = StarlikeClass(starlike_class)
    if grid is None:
        grid = ScanGrid.default()
    table = table_for_radius(params, grid.r_max, tol, deriv=1)
    z = grid.points()
    g = table.g_values(z)
    gp = table.g_prime_values(z)
    near_zero = np.abs(g) < 10 * tol
    with np.errstate(divide="ignore", invalid="ignore"):
        P = np.where(near_zero, 1.0, z * gp / g)
    margins = _margin_field(P, flavor)
    margins[near_zero] = -np.inf
    flat = int(np.argmin(margins))
    ring_index, angle_index = divmod(flat, grid.angles_per_ring)
    min_margin = float(margins[ring_index, angle_index])
    if flavor is StarlikeClass.LEMNISCATE:
        hypothesis = lemniscate_condition(params)[0]
    elif flavor is StarlikeClass.EXPONENTIAL:
        hypothesis = exponential_condition(params)[0]
    else:
        hypothesis = False
    return CertificationReport(
        params=params,
        starlike_class=flavor,
        grid=grid,
        min_margin=min_margin,
        worst_point=complex(z[ring_index, angle_index]),
        hypothesis_satisfied=hypothesis,
        certified=bool(min_margin > 0),
        per_ring_margins=tuple(float(m) for m in margins.min(axis=1)),
        zero_in_disk=bool(near_zero.any()),
    )


@dataclass(frozen=True)
class ScanRow:
    """One parameter-sweep entry; slack is NaN for the classical flavor."""

    L: float
    eta: float
    slack: float
    min_margin: float
    certified: bool


def _lattice(bounds: tuple[float, float, float]) -> list[float]:
    lo, hi, step = bounds
    if step <= 0:
        raise InvalidParams(f"step must be positive, got {step}")
    if hi < lo:
        return []
    count = int(round((hi - lo) / step)) + 1
    values = [lo + k * step for k in range(count)]
    return [v for v in values if v <= hi + step * 1e-9]


def parameter_scan(
    L_range: tuple[float, float, float],
    eta_range: tuple[float, float, float],
    starlike_class: StarlikeClass,
    grid: ScanGrid | None = None,
    tol: float = DEFAULT_TOL,
) -> list[ScanRow]:
    """Certify every lattice point of a real parameter rectangle.

    Ranges are (min, max, step) with inclusive endpoints; an empty range
    yields an empty table.  Rows never abort the sweep: parameter or
    evaluation failures are recorded as NaN margins with certified False.
    """
    flavor = StarlikeClass(starlike_class)
    if grid is None:
        grid = ScanGrid.default()
    rows: list[ScanRow] = []
    for L in _lattice(L_range):
        for eta in _lattice(eta_range):
            try:
                params = CoulombParams(L=L, eta=eta)
                if flavor is StarlikeClass.LEMNISCATE:
                    slack = lemniscate_condition(params)[1]
                elif flavor is StarlikeClass.EXPONENTIAL:
                    slack = exponential_condition(params)[1]
                else:
                    slack = math.nan
                report = certify(params, flavor, grid, tol)
                rows.append(
                    ScanRow(
                        L=L,
                        eta=eta,
                        slack=slack,
                        min_margin=report.min_margin,
                        certified=report.certified,
                    )
                )
            except Exception:
                rows.append(
                    ScanRow(
                        L=L, eta=eta, slack=math.nan,
                        min_margin=math.nan, certified=False,
                    )
                )
    return rows
