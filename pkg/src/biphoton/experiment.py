"""Model of the anticorrelation-dip experiment.

Source: a two-crystal pair source driven through a half-wave plate at angle
chi, with a quartz-plate phase delta_phi between the doubly horizontal and
doubly vertical amplitudes.  The emitted pair is
(sin 2chi, 0, e^{i delta_phi} cos 2chi) in the qutrit basis.

Registration: a 50/50 beamsplitter feeding two detectors, each behind a
quarter-wave plate plus polarizer selecting one polarization, and a
coincidence circuit of resolution T_c.  True coincidences follow the
squared two-photon amplitude; accidentals are R1 R2 T_c, which sets the
g2 = 1 floor.

Absolute scales are model conventions: the default RateModel (1e4 pairs/s,
10% efficiencies, T_c = 5.5 ns, no background) gives realistic g2 contrast,
and the factor 1/2 for the pair splitting at the beamsplitter is fixed.
Curve shapes, minima positions and ratios are the physical content.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

from .polarization import (
    JonesVector,
    linear_jones,
    stokes_from_jones,
    waveplate,
)
from .qutrit import (
    BiphotonQutrit,
    factor_qutrit,
    pair_amplitude,
    pair_norm,
    stokes_expectation,
)

__all__ = [
    "SourceSetting",
    "FilterSetting",
    "RateModel",
    "SweepResult",
    "ZeroSinglesError",
    "source_state",
    "filter_jones",
    "detection_amplitude",
    "coincidence_rate",
    "rate_closed_form",
    "singles_rate",
    "g2",
    "sweep_chi",
    "sweep_filter",
    "simulate_counts",
    "DEFAULT_GRID_STEP",
]

DEFAULT_GRID_STEP = 0.5


class ZeroSinglesError(ValueError):
    """g2 is undefined when a singles rate vanishes."""


@dataclass(frozen=True)
class SourceSetting:
    """Pump half-wave-plate angle chi and quartz-plate phase, in degrees."""

    chi: float
    delta_phi: float = 180.0


@dataclass(frozen=True)
class FilterSetting:
    """Detection filter: QWP axis angle and polarizer angle, in degrees."""

    qwp_axis: float
    polarizer_angle: float


@dataclass(frozen=True)
class RateModel:
    """Absolute-scale knobs of the counting model.

    pair_rate: photon pairs per second arriving at the beamsplitter.
    eta1, eta2: detector efficiencies.
    coincidence_window: circuit resolution T_c in seconds.
    background1, background2: dark/stray counts per second per detector.
    """

    pair_rate: float = 1.0e4
    eta1: float = 0.1
    eta2: float = 0.1
    coincidence_window: float = 5.5e-9
    background1: float = 0.0
    background2: float = 0.0

    def __post_init__(self) -> None:
        for name in ("pair_rate", "eta1", "eta2", "background1", "background2"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.coincidence_window <= 0:
            raise ValueError("coincidence_window must be positive")


def source_state(setting: SourceSetting) -> BiphotonQutrit:
    """Qutrit emitted by the two-crystal source: (sin 2chi, 0, e^{i dphi} cos 2chi)."""
    two_chi = math.radians(2.0 * setting.chi)
    phase = cmath.exp(1j * math.radians(setting.delta_phi))
    return BiphotonQutrit(math.sin(two_chi), 0.0, phase * math.cos(two_chi))


def filter_jones(f: FilterSetting) -> JonesVector:
    """Polarization selected by a QWP followed by a linear polarizer.

    A state passes fully iff the QWP maps it onto the polarizer axis, so the
    selected mode is the inverse QWP transform of the linear state.
    """
    qwp = waveplate(90.0, f.qwp_axis)
    lin = linear_jones(f.polarizer_angle).as_array()
    out = qwp.conj().T @ lin
    return JonesVector(out[0], out[1])


def detection_amplitude(
    state: BiphotonQutrit, f1: FilterSetting, f2: FilterSetting
) -> complex:
    """Normalized two-photon amplitude for joint transmission of the filters."""
    a, b = factor_qutrit(state).jones()
    c = filter_jones(f1)
    d = filter_jones(f2)
    return pair_amplitude(c, d, a, b) / pair_norm(a, b)


def coincidence_rate(
    state: BiphotonQutrit,
    f1: FilterSetting,
    f2: FilterSetting,
    m: RateModel = RateModel(),
) -> float:
    """True coincidence rate in counts/s (accidentals excluded)."""
    amp = detection_amplitude(state, f1, f2)
    return m.pair_rate * m.eta1 * m.eta2 * 0.5 * abs(amp) ** 2


def rate_closed_form(chi, zeta1, zeta2):
    """Coincidence-rate shape for the delta_phi = 180 source and linear filters.

    Dimensionless; broadcasts over numpy arrays.
    """
    two_chi = np.radians(2.0 * np.asarray(chi, dtype=float))
    z1 = np.radians(np.asarray(zeta1, dtype=float))
    z2 = np.radians(np.asarray(zeta2, dtype=float))
    bracket = np.cos(z1) * np.cos(z2) * np.sin(two_chi) - np.sin(z1) * np.sin(z2) * np.cos(two_chi)
    return bracket ** 2


def singles_rate(
    state: BiphotonQutrit,
    f: FilterSetting,
    m: RateModel = RateModel(),
    detector: int = 1,
) -> float:
    """Single-detector counting rate behind one filter, in counts/s.

    The mean number of pair photons in the filter mode is
    1 + u . s where u is the filter's Stokes vector and s the pair's
    per-photon Stokes expectation; half of the flux reaches each detector.
    """
    if detector not in (1, 2):
        raise ValueError("detector must be 1 or 2")
    u = stokes_from_jones(filter_jones(f)).as_array()
    s = stokes_expectation(state).as_array()
    mean_photons = 1.0 + float(np.dot(u, s))
    eta = m.eta1 if detector == 1 else m.eta2
    background = m.background1 if detector == 1 else m.background2
    return m.pair_rate * eta * 0.5 * mean_photons + background


def g2(
    state: BiphotonQutrit,
    f1: FilterSetting,
    f2: FilterSetting,
    m: RateModel = RateModel(),
) -> float:
    """Normalized second-order correlation (total coincidences / accidentals)."""
    r1 = singles_rate(state, f1, m, detector=1)
    r2 = singles_rate(state, f2, m, detector=2)
    if r1 <= 0.0 or r2 <= 0.0:
        raise ZeroSinglesError("g2 undefined: a singles rate is zero")
    accidental = r1 * r2 * m.coincidence_window
    return (coincidence_rate(state, f1, f2, m) + accidental) / accidental


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Table of (parameter, R1, R2, Rc, g2) rows from a parameter scan.

    After `simulate_counts` the rate columns hold integer counts accumulated
    over `duration` seconds per point (duration is None for ideal rates) and
    g2 is re-estimated from those counts; rows with a zero sampled singles
    count carry g2 = nan (null in JSON).
    """

    param_name: str
    param: np.ndarray
    r1: np.ndarray
    r2: np.ndarray
    rc: np.ndarray
    g2: np.ndarray
    coincidence_window: float
    duration: float | None = None

    def __len__(self) -> int:
        return len(self.param)

    def argmin_g2(self) -> tuple[float, float]:
        """(parameter value, g2 value) at the smallest g2 in the table."""
        i = int(np.nanargmin(self.g2))
        return float(self.param[i]), float(self.g2[i])

    def to_csv(self) -> str:
        lines = ["param,R1,R2,Rc,g2"]
        for p, a, b, c, g in zip(self.param, self.r1, self.r2, self.rc, self.g2):
            lines.append(f"{p:.6f},{a:.8e},{b:.8e},{c:.8e},{g:.8e}")
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        def column(values: np.ndarray) -> list:
            return [None if math.isnan(v) else float(v) for v in values]

        return {
            "param_name": self.param_name,
            "coincidence_window": self.coincidence_window,
            "duration": self.duration,
            "rows": [
                {"param": p, "R1": a, "R2": b, "Rc": c, "g2": g}
                for p, a, b, c, g in zip(
                    column(self.param),
                    column(self.r1),
                    column(self.r2),
                    column(self.rc),
                    column(self.g2),
                )
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2, sort_keys=True) + "\n"

    def write(self, path, fmt: str = "csv") -> None:
        text = self.to_csv() if fmt == "csv" else self.to_json()
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _validate_grid(grid, default: np.ndarray) -> np.ndarray:
    if grid is None:
        return default
    values = np.asarray(grid, dtype=float)
    if values.ndim != 1 or values.size == 0:
        raise ValueError("grid must be a non-empty 1-d sequence of angles")
    if values.size > 1 and not np.all(np.diff(values) > 0):
        raise ValueError("grid must be strictly increasing")
    return values


def _rate_rows(states, filters1, filters2, m: RateModel):
    r1 = np.empty(len(states))
    r2 = np.empty(len(states))
    rc = np.empty(len(states))
    gg = np.empty(len(states))
    for i, (state, f1, f2) in enumerate(zip(states, filters1, filters2)):
        r1[i] = singles_rate(state, f1, m, detector=1)
        r2[i] = singles_rate(state, f2, m, detector=2)
        if r1[i] <= 0.0 or r2[i] <= 0.0:
            raise ZeroSinglesError(
                f"g2 undefined at {states[i]}: a singles rate is zero"
            )
        rc[i] = coincidence_rate(state, f1, f2, m)
        accidental = r1[i] * r2[i] * m.coincidence_window
        gg[i] = (rc[i] + accidental) / accidental
    return r1, r2, rc, gg


def sweep_chi(
    zeta1: float,
    zeta2: float,
    delta_phi: float = 180.0,
    m: RateModel = RateModel(),
    chi_grid=None,
    seed: int | None = None,
    duration_per_point: float = 1.0,
    pump_drift: float = 0.0,
) -> SweepResult:
    """Scan the pump half-wave-plate angle with both polarizers fixed.

    With a seed, Poisson counts over duration_per_point replace the ideal
    rates (see simulate_counts).
    """
    grid = _validate_grid(chi_grid, np.linspace(0.0, 90.0, 181))
    states = [source_state(SourceSetting(chi, delta_phi)) for chi in grid]
    f1 = FilterSetting(zeta1, zeta1)
    f2 = FilterSetting(zeta2, zeta2)
    r1, r2, rc, gg = _rate_rows(states, [f1] * len(states), [f2] * len(states), m)
    result = SweepResult("chi", grid, r1, r2, rc, gg, m.coincidence_window)
    if seed is not None:
        result = simulate_counts(result, duration_per_point, seed, pump_drift)
    return result


def sweep_filter(
    chi: float,
    delta_phi: float = 180.0,
    which_filter: str = "P1",
    fixed_zeta: float = 60.0,
    m: RateModel = RateModel(),
    zeta_grid=None,
    seed: int | None = None,
    duration_per_point: float = 1.0,
    pump_drift: float = 0.0,
) -> SweepResult:
    """Scan one polarizer with the source and the other polarizer fixed."""
    if which_filter not in ("P1", "P2"):
        raise ValueError("which_filter must be 'P1' or 'P2'")
    grid = _validate_grid(zeta_grid, np.linspace(0.0, 90.0, 181))
    state = source_state(SourceSetting(chi, delta_phi))
    states = [state] * len(grid)
    scanned = [FilterSetting(z, z) for z in grid]
    fixed = [FilterSetting(fixed_zeta, fixed_zeta)] * len(grid)
    if which_filter == "P1":
        r1, r2, rc, gg = _rate_rows(states, scanned, fixed, m)
        name = "zeta1"
    else:
        r1, r2, rc, gg = _rate_rows(states, fixed, scanned, m)
        name = "zeta2"
    result = SweepResult(name, grid, r1, r2, rc, gg, m.coincidence_window)
    if seed is not None:
        result = simulate_counts(result, duration_per_point, seed, pump_drift)
    return result


def simulate_counts(
    result: SweepResult,
    duration_per_point: float,
    seed: int,
    pump_drift: float = 0.0,
) -> SweepResult:
    """Replace ideal rates by Poisson counts accumulated per grid point.

    Each row draws from its own generator spawned from the master seed, so
    the output is reproducible regardless of evaluation order.  pump_drift
    is the total fractional power decrease across the sweep, applied as a
    linear ramp.
    """
    if duration_per_point <= 0:
        raise ValueError("duration_per_point must be positive")
    n = len(result)
    if n > 1 and pump_drift:
        ramp = 1.0 - pump_drift * np.arange(n) / (n - 1)
    else:
        ramp = np.ones(n)
    children = np.random.SeedSequence(seed).spawn(n)
    counts = np.empty((n, 3))
    for i, child in enumerate(children):
        rng = np.random.default_rng(child)
        means = ramp[i] * duration_per_point * np.array(
            [result.r1[i], result.r2[i], result.rc[i]]
        )
        counts[i] = rng.poisson(means)
    est1 = counts[:, 0] / duration_per_point
    est2 = counts[:, 1] / duration_per_point
    estc = counts[:, 2] / duration_per_point
    with np.errstate(divide="ignore", invalid="ignore"):
        accidental = est1 * est2 * result.coincidence_window
        gg = np.where(accidental > 0, (estc + accidental) / accidental, np.nan)
    return SweepResult(
        result.param_name,
        result.param.copy(),
        counts[:, 0],
        counts[:, 1],
        counts[:, 2],
        gg,
        result.coincidence_window,
        duration=duration_per_point,
    )
