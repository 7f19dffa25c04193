"""Vibration-rotation spectroscopy of the closed-form spectrum.

Levels E_{v,J}, infrared transition wavenumbers under the selection rules
dv = +-1, dJ = +-1, P/R branch line lists for the fundamental absorption
band, and comparison of the predicted band center against experimental
values. Only absorption (dv = +1) is generated; emission is the sign flip.

The band center is defined as (E_{1,0} - E_{0,0})/hc even though the
J=0 -> J=0 line itself is forbidden: it is the conventional band origin
that the P and R branches straddle, not an observable line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from .core import (
    CODATA2018,
    MoleculeParams,
    PhysicalConstants,
    QuantumState,
    energy_level,
    energy_to_wavenumber,
)
from .errors import ConfigurationError, DomainError, SelectionRuleError


def level_energy(
    v: int,
    J: int,
    params: MoleculeParams,
    *,
    constants: PhysicalConstants = CODATA2018,
) -> float:
    """E_{v,J} in J, the closed form read with vibrational v and rotational J.

    Spectroscopic use is three-dimensional by construction; other N raise.
    """
    if params.N != 3:
        raise DomainError("vibration-rotation spectroscopy applies to N=3 molecules only")
    return energy_level(QuantumState(n=v, l=J, N=3), params, constants=constants)


@dataclass(frozen=True)
class Transition:
    """One allowed infrared line. Lower state (v, J), upper state (v_up, J_up)."""

    v: int
    J: int
    v_up: int
    J_up: int
    wavenumber: float   # cm^-1
    branch: str         # "P" or "R"

    def __post_init__(self):
        if abs(self.v_up - self.v) != 1:
            raise SelectionRuleError("selection rule violated: need dv = +-1")
        if abs(self.J_up - self.J) != 1:
            raise SelectionRuleError("selection rule violated: need dJ = +-1")
        if self.branch not in ("P", "R"):
            raise DomainError("branch must be 'P' or 'R'")
        if self.v_up == self.v + 1 and self.wavenumber <= 0:
            raise DomainError("absorption transition must have positive wavenumber")


def transition_wavenumber(
    lower: tuple[int, int],
    upper: tuple[int, int],
    params: MoleculeParams,
    *,
    constants: PhysicalConstants = CODATA2018,
) -> float:
    """(E_upper - E_lower)/hc in cm^-1 for an allowed pair of (v, J) states."""
    v, J = lower
    v_up, J_up = upper
    if abs(v_up - v) != 1:
        raise SelectionRuleError(f"selection rule violated: dv must be +-1, got dv = {v_up - v}")
    if abs(J_up - J) != 1:
        raise SelectionRuleError(f"selection rule violated: dJ must be +-1, got dJ = {J_up - J}")
    delta = level_energy(v_up, J_up, params, constants=constants) - level_energy(
        v, J, params, constants=constants
    )
    return energy_to_wavenumber(delta, constants=constants)


@dataclass(frozen=True)
class BandReport:
    """Fundamental-band line positions around the band center.

    experimental_center and ratio stay None until an experimental value is
    attached by compare_experiment.
    """

    molecule: str
    center: float                             # cm^-1, (E_{1,0}-E_{0,0})/hc
    p_branch: tuple[Transition, ...]
    r_branch: tuple[Transition, ...]
    experimental_center: float | None = None
    ratio: float | None = None                # experimental / theoretical

    def __post_init__(self):
        if any(t.wavenumber >= self.center for t in self.p_branch):
            raise DomainError("P-branch lines must lie below the band center")
        if any(t.wavenumber <= self.center for t in self.r_branch):
            raise DomainError("R-branch lines must lie above the band center")
        if self.ratio is not None and self.ratio <= 0:
            raise DomainError("experimental/theoretical ratio must be positive")

    def lines(self) -> tuple[Transition, ...]:
        return self.p_branch + self.r_branch


def fundamental_band(
    params: MoleculeParams,
    J_max: int,
    *,
    constants: PhysicalConstants = CODATA2018,
) -> BandReport:
    """P and R branches of the v = 0 -> 1 absorption band.

    R: (0, J) -> (1, J+1) for J = 0..J_max; P: (0, J) -> (1, J-1) for
    J = 1..J_max.

    The rotational spacing shrinks with v here, so R lines march toward the
    center again beyond the band head and eventually cross it; a J_max past
    that crossing is rejected rather than silently truncated.
    """
    if J_max < 1:
        raise DomainError("J_max must be >= 1 to populate both branches")
    center = transition_center(params, constants=constants)
    r_lines = []
    for J in range(0, J_max + 1):
        w = transition_wavenumber((0, J), (1, J + 1), params, constants=constants)
        if w <= center:
            raise DomainError(
                f"R branch folds back through the band center at J = {J} "
                f"(band head); J_max must stay below {J} for these parameters"
            )
        r_lines.append(Transition(v=0, J=J, v_up=1, J_up=J + 1, wavenumber=w, branch="R"))
    p_lines = []
    for J in range(1, J_max + 1):
        w = transition_wavenumber((0, J), (1, J - 1), params, constants=constants)
        p_lines.append(Transition(v=0, J=J, v_up=1, J_up=J - 1, wavenumber=w, branch="P"))
    return BandReport(
        molecule=params.name,
        center=center,
        p_branch=tuple(p_lines),
        r_branch=tuple(r_lines),
    )


def transition_center(
    params: MoleculeParams,
    *,
    constants: PhysicalConstants = CODATA2018,
) -> float:
    """Band origin (E_{1,0} - E_{0,0})/hc in cm^-1."""
    delta = level_energy(1, 0, params, constants=constants) - level_energy(
        0, 0, params, constants=constants
    )
    return energy_to_wavenumber(delta, constants=constants)


@dataclass(frozen=True)
class ExperimentComparison:
    """Theory-vs-experiment record for one band center."""

    molecule: str
    center_theory: float        # cm^-1
    center_experiment: float    # cm^-1
    ratio: float                # experiment / theory
    abs_deviation: float        # cm^-1
    rel_deviation: float        # |exp - theory| / exp
    more_than_twice: bool       # experiment exceeds twice the prediction


def compare_experiment(
    report: BandReport,
    experimental_center: float,
) -> ExperimentComparison:
    """Quantify the mismatch between the predicted and measured band center."""
    if experimental_center <= 0:
        raise DomainError("experimental band center must be positive")
    ratio = experimental_center / report.center
    return ExperimentComparison(
        molecule=report.molecule,
        center_theory=report.center,
        center_experiment=experimental_center,
        ratio=ratio,
        abs_deviation=abs(experimental_center - report.center),
        rel_deviation=abs(experimental_center - report.center) / experimental_center,
        more_than_twice=ratio > 2.0,
    )


def with_experiment(report: BandReport, experimental_center: float) -> BandReport:
    """Copy of the report with the experimental center and ratio attached."""
    comparison = compare_experiment(report, experimental_center)
    return replace(
        report,
        experimental_center=comparison.center_experiment,
        ratio=comparison.ratio,
    )


def load_band_centers(path: str | Path | None = None) -> dict[str, float]:
    """Experimental fundamental band centers (cm^-1) keyed by molecule name.

    Reads the bundled reference table unless an explicit path is given.
    """
    if path is None:
        text = resources.files("kratzer").joinpath("data/band_centers.json").read_text("utf-8")
        label = "bundled band_centers.json"
    else:
        p = Path(path)
        try:
            text = p.read_text(encoding="utf-8")
        except FileNotFoundError as exc:
            raise ConfigurationError(f"band-center file not found: {p}") from exc
        label = str(p)
    try:
        raw = json.loads(text)
        centers = raw["centers_cm1"]
        return {str(k): float(v) for k, v in centers.items()}
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"{label} is not a valid band-center table: {exc}") from exc
