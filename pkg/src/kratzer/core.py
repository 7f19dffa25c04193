"""Closed-form treatment of the N-dimensional Kratzer potential.

Physical constants, unit conversions, the potential itself, and the
dimensionless parameter chain kappa -> gamma -> beta -> energy that solves
the bound-state problem exactly.

All internal computation is in SI; conversions to eV and cm^-1 happen only
at I/O boundaries. The one numerically delicate convention: the angular
combination l + (N-2)/2 is formed the same way everywhere in the package,
so the interdimensional degeneracy E(n, l, N) = E(n, l+1, N-2) holds to the
last bit, not merely to rounding.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path

from .errors import ConfigurationError, DomainError


@dataclass(frozen=True)
class PhysicalConstants:
    """Constant set used for unit construction and conversions.

    Defaults to CODATA 2018 via the CODATA2018 instance below; an alternate
    instance (e.g. NATURAL) may be passed to any operation that takes a
    ``constants`` keyword. That hook exists for unit-soundness tests, not
    for runtime configuration.
    """

    hbar: float   # reduced Planck constant, J s
    h: float      # Planck constant, J s
    c: float      # speed of light, m / s
    amu: float    # unified atomic mass unit, kg
    eV: float     # electron volt, J

    def __post_init__(self):
        for name in ("hbar", "h", "c", "amu", "eV"):
            if getattr(self, name) <= 0:
                raise DomainError(f"physical constant {name} must be positive")


# CODATA 2018. hbar, amu are the 2018 adjusted values; h, c, eV are exact
# by the 2019 SI redefinition.
CODATA2018 = PhysicalConstants(
    hbar=1.054571817e-34,
    h=6.62607015e-34,
    c=299792458.0,
    amu=1.66053906660e-27,
    eV=1.602176634e-19,
)

# hbar = c = 1 unit system for dimensionless test problems (h = 2 pi follows).
NATURAL = PhysicalConstants(hbar=1.0, h=2.0 * math.pi, c=1.0, amu=1.0, eV=1.0)


class EtaMode(Enum):
    """The two additive-shift conventions for the potential.

    KRATZER places the dissociation limit at 0 (well bottom at -De);
    MODIFIED places the well bottom at 0. Observables do not depend on the
    choice, which is the point several consistency tests drive home.
    """

    KRATZER = "kratzer"
    MODIFIED = "modified"

    def eta_value(self, De: float) -> float:
        return -De if self is EtaMode.KRATZER else 0.0


@dataclass(frozen=True)
class MoleculeParams:
    """Molecular inputs for the Kratzer model, in SI.

    eta is restricted to the two EtaMode values (0 or -De) unless
    allow_any_eta is set; the free override exists only so property tests
    can probe shift behaviour off the two physical conventions.
    """

    name: str
    mu: float    # reduced mass, kg
    De: float    # dissociation energy, J
    re: float    # equilibrium separation, m
    eta: float   # additive energy shift, J
    N: int = 3   # spatial dimension
    allow_any_eta: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if self.mu <= 0:
            raise DomainError("reduced mass must be positive")
        if self.De <= 0:
            raise DomainError("dissociation energy must be positive")
        if self.re <= 0:
            raise DomainError("equilibrium separation must be positive")
        if self.N < 2:
            raise DomainError("spatial dimension must be an integer >= 2")
        if not self.allow_any_eta and self.eta not in (0.0, -self.De):
            raise DomainError(
                "eta must be 0 (modified convention) or -De (kratzer convention); "
                "set allow_any_eta to probe other shifts"
            )

    @property
    def eta_mode(self) -> EtaMode | None:
        if self.eta == 0.0:
            return EtaMode.MODIFIED
        if self.eta == -self.De:
            return EtaMode.KRATZER
        return None

    @classmethod
    def from_spectroscopic(
        cls,
        name: str,
        De_eV: float,
        re_angstrom: float,
        *,
        mu_amu: float | None = None,
        m1_amu: float | None = None,
        m2_amu: float | None = None,
        eta_mode: EtaMode = EtaMode.KRATZER,
        N: int = 3,
        constants: PhysicalConstants = CODATA2018,
    ) -> "MoleculeParams":
        """Build params from spectroscopic units (eV, Angstrom, amu)."""
        if mu_amu is not None:
            if m1_amu is not None or m2_amu is not None:
                raise ConfigurationError("give either mu_amu or m1_amu+m2_amu, not both")
            if mu_amu <= 0:
                raise DomainError("reduced mass must be positive")
            mu = mu_amu * constants.amu
        else:
            if m1_amu is None or m2_amu is None:
                raise ConfigurationError("reduced mass requires mu_amu or both m1_amu and m2_amu")
            mu = reduced_mass(m1_amu, m2_amu, constants=constants)
        De = De_eV * constants.eV
        return cls(
            name=name,
            mu=mu,
            De=De,
            re=re_angstrom * 1e-10,
            eta=eta_mode.eta_value(De),
            N=N,
        )

    @classmethod
    def natural(
        cls,
        *,
        De: float = 1.0,
        re: float = 1.0,
        mu: float = 1.0,
        eta_mode: EtaMode = EtaMode.KRATZER,
        N: int = 3,
        name: str = "natural",
    ) -> "MoleculeParams":
        """Dimensionless test family: mu = De = re = hbar = 1 gives kappa = 2.

        Pair with constants=NATURAL in the operations below.
        """
        return cls(name=name, mu=mu, De=De, re=re, eta=eta_mode.eta_value(De), N=N)

    def with_eta_mode(self, eta_mode: EtaMode) -> "MoleculeParams":
        return replace(self, eta=eta_mode.eta_value(self.De), allow_any_eta=False)

    def with_dimension(self, N: int) -> "MoleculeParams":
        return replace(self, N=N)


@dataclass(frozen=True)
class QuantumState:
    """Radial (n) and angular (l) quantum numbers plus the dimension they
    were stated in; N is carried so mixed-dimension mistakes fail loudly."""

    n: int
    l: int
    N: int = 3

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("radial quantum number n must be >= 0")
        if self.l < 0:
            raise DomainError("angular quantum number l must be >= 0")
        if self.N < 2:
            raise DomainError("spatial dimension must be an integer >= 2")


def angular_lambda(l: int, N: int) -> float:
    """The combination l + (N-2)/2 through which l and N enter everything.

    (N-2)/2 is a dyadic rational, so this is exact in floating point; the
    interdimensional degeneracy tests rely on that.
    """
    return l + (N - 2) / 2


@dataclass(frozen=True)
class DimensionlessParams:
    """The dimensionless quantities of the bound-state problem at a state.

    y is the scaled radius r/re associated with the evaluation context
    (defaults to the potential minimum y = 1).
    """

    kappa: float
    gamma: float
    beta: float
    y: float = 1.0

    def __post_init__(self):
        if self.kappa <= 0:
            raise DomainError("kappa must be positive")
        if self.beta <= 0:
            raise DomainError("beta must be positive for a bound state")

    @classmethod
    def for_state(
        cls,
        state: QuantumState,
        params: MoleculeParams,
        y: float = 1.0,
        constants: PhysicalConstants = CODATA2018,
    ) -> "DimensionlessParams":
        kappa = compute_kappa(params, constants=constants)
        gamma = compute_gamma(kappa, state.l, state.N)
        if gamma <= -(state.N - 1) / 2:
            raise DomainError("gamma must keep the series parameter 2*gamma + N - 1 positive")
        beta = compute_beta(state.n, kappa, gamma, state.N)
        return cls(kappa=kappa, gamma=gamma, beta=beta, y=y)


def potential_value(r: float, params: MoleculeParams) -> float:
    """Kratzer potential De*((r - re)/r)^2 + eta at separation r (m)."""
    if r <= 0:
        raise DomainError("separation r must be positive")
    x = (r - params.re) / r
    return params.De * x * x + params.eta


def reduced_mass(m1_amu: float, m2_amu: float, *, constants: PhysicalConstants = CODATA2018) -> float:
    """Two-body reduced mass m1*m2/(m1+m2), amu in, kg out."""
    if m1_amu <= 0 or m2_amu <= 0:
        raise DomainError("masses must be positive")
    return m1_amu * m2_amu / (m1_amu + m2_amu) * constants.amu


def energy_to_wavenumber(E: float, *, constants: PhysicalConstants = CODATA2018) -> float:
    """Convert energy (J) to spectroscopic wavenumber (cm^-1). Linear and
    sign-preserving, so it applies to level differences as well."""
    return E / (constants.h * constants.c) / 100.0


def wavenumber_to_energy(w: float, *, constants: PhysicalConstants = CODATA2018) -> float:
    return w * 100.0 * constants.h * constants.c


def compute_kappa(params: MoleculeParams, *, constants: PhysicalConstants = CODATA2018) -> float:
    """kappa = 2 mu De re^2 / hbar^2, the dimensionless well strength."""
    return 2.0 * params.mu * params.De * params.re**2 / constants.hbar**2


def compute_gamma(kappa: float, l: int, N: int) -> float:
    """Indicial exponent of the radial solution at the origin.

    gamma = (2-N)/2 + sqrt(kappa + (l + (N-2)/2)^2). The positive root of
    the indicial equation is the only one giving a normalizable, regular
    solution; it reduces to the hydrogen-like gamma = l when kappa -> 0 and
    keeps the series parameter 2*gamma + N - 1 = 1 + 2*sqrt(...) positive.
    """
    if kappa < 0:
        raise DomainError("kappa must be nonnegative")
    if l < 0 or N < 2:
        raise DomainError("require l >= 0 and N >= 2")
    lam = angular_lambda(l, N)
    return (2 - N) / 2 + math.sqrt(kappa + lam * lam)


def compute_beta(n: int, kappa: float, gamma: float, N: int) -> float:
    """Decay parameter of the n-th bound state, beta = kappa/(n + gamma + (N-1)/2).

    Strictly decreasing in n; the quantization condition in one line.
    """
    if n < 0:
        raise DomainError("radial quantum number n must be >= 0")
    denom = n + gamma + (N - 1) / 2
    if denom <= 0:
        raise DomainError("beta denominator n + gamma + (N-1)/2 must be positive")
    return kappa / denom


def energy_level(
    state: QuantumState,
    params: MoleculeParams,
    *,
    constants: PhysicalConstants = CODATA2018,
) -> float:
    """Bound-state energy (J) of the closed-form spectrum.

    E = (De + eta) - kappa*De / (n + 1/2 + sqrt(kappa + (l + (N-2)/2)^2))^2

    The (De + eta) grouping keeps the kratzer convention's dissociation
    limit an exact 0.0, which makes the shift equivalence between the two
    eta modes exact rather than approximate.
    """
    if state.N != params.N:
        raise DomainError(
            f"state dimension N={state.N} does not match molecule dimension N={params.N}"
        )
    kappa = compute_kappa(params, constants=constants)
    lam = angular_lambda(state.l, state.N)
    denom = state.n + 0.5 + math.sqrt(kappa + lam * lam)
    return (params.De + params.eta) - kappa * params.De / (denom * denom)


def load_molecule(
    path: str | Path,
    *,
    eta_mode: EtaMode | None = None,
    N: int | None = None,
    constants: PhysicalConstants = CODATA2018,
) -> MoleculeParams:
    """Read molecule parameters from a JSON file.

    Schema: {"name", "mu_amu" or "m1_amu"+"m2_amu", "De_eV", "re_angstrom",
    "eta_mode": "kratzer"|"modified", "N": int}. eta_mode and N keyword
    arguments override the file. Extra keys (source notes) are ignored.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigurationError(f"molecule file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"molecule file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigurationError(f"molecule file {path} must contain a JSON object")

    try:
        name = raw["name"]
        De_eV = float(raw["De_eV"])
        re_angstrom = float(raw["re_angstrom"])
    except KeyError as exc:
        raise ConfigurationError(f"molecule file {path} is missing required key {exc}") from exc

    if eta_mode is None:
        mode_text = raw.get("eta_mode", "kratzer")
        try:
            eta_mode = EtaMode(mode_text)
        except ValueError as exc:
            raise ConfigurationError(
                f"molecule file {path}: eta_mode must be 'kratzer' or 'modified', got {mode_text!r}"
            ) from exc
    dimension = int(N if N is not None else raw.get("N", 3))

    mu_amu = raw.get("mu_amu")
    m1 = raw.get("m1_amu")
    m2 = raw.get("m2_amu")
    try:
        return MoleculeParams.from_spectroscopic(
            name,
            De_eV,
            re_angstrom,
            mu_amu=float(mu_amu) if mu_amu is not None else None,
            m1_amu=float(m1) if m1 is not None else None,
            m2_amu=float(m2) if m2 is not None else None,
            eta_mode=eta_mode,
            N=dimension,
            constants=constants,
        )
    except ConfigurationError as exc:
        raise ConfigurationError(f"molecule file {path}: {exc}") from exc
