"""Independent finite-difference eigensolver for the radial problem.

Validates the closed-form spectrum without sharing any of its machinery:
the N-dimensional radial equation is reduced by u = r^((N-1)/2) R to a 1-D
Schrodinger problem with centrifugal constant Lambda = l + (N-3)/2, then
discretized on a uniform grid with Dirichlet walls and solved by Sturm
bisection on the symmetric tridiagonal matrix. A second solve at half the
step feeds one Richardson step that cancels the O(h^2) discretization term.

The inner Sturm loop is jitted; a pure-Python count over a 40k-point grid
is two orders of magnitude too slow for the validation suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import (
    CODATA2018,
    MoleculeParams,
    PhysicalConstants,
    QuantumState,
    compute_beta,
    compute_gamma,
    compute_kappa,
    energy_level,
    potential_value,
)
from .errors import ConfigurationError, DomainError, NotBoundError

_EIG_RTOL = 1e-13


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid in r (m), endpoints included; the eigenproblem lives on
    the interior points with u = 0 clamped at both walls."""

    r_min: float
    r_max: float
    points: int

    def __post_init__(self):
        if not (0 < self.r_min < self.r_max):
            raise DomainError("grid requires 0 < r_min < r_max")
        if self.points < 3:
            raise DomainError("grid needs at least 3 points")

    @property
    def spacing(self) -> float:
        return (self.r_max - self.r_min) / (self.points - 1)

    def interior(self) -> np.ndarray:
        return self.r_min + self.spacing * np.arange(1, self.points - 1)

    def refined(self) -> "RadialGrid":
        """Same interval at exactly half the spacing."""
        return RadialGrid(self.r_min, self.r_max, 2 * self.points - 1)


@dataclass(frozen=True)
class ReducedRadialProblem:
    """The 1-D problem after the u = r^((N-1)/2) R reduction."""

    lam: float                 # centrifugal constant Lambda = l + (N-3)/2
    potential: np.ndarray      # V(r_i) at interior points, J
    mu: float                  # reduced mass, kg

    def __post_init__(self):
        if self.lam < -0.5:
            raise DomainError("centrifugal constant Lambda must be >= -1/2")
        if self.mu <= 0:
            raise DomainError("reduced mass must be positive")


@dataclass(frozen=True)
class TridiagonalMatrix:
    diagonal: np.ndarray
    off_diagonal: np.ndarray

    def __post_init__(self):
        if self.off_diagonal.shape[0] != self.diagonal.shape[0] - 1:
            raise DomainError("off-diagonal length must be diagonal length - 1")

    @property
    def order(self) -> int:
        return self.diagonal.shape[0]


def reduce_problem(
    params: MoleculeParams,
    l: int,
    grid: RadialGrid,
) -> ReducedRadialProblem:
    if l < 0:
        raise DomainError("angular quantum number l must be >= 0")
    r = grid.interior()
    x = (r - params.re) / r
    V = params.De * x * x + params.eta
    return ReducedRadialProblem(lam=l + (params.N - 3) / 2, potential=V, mu=params.mu)


def build_hamiltonian(
    params: MoleculeParams,
    l: int,
    grid: RadialGrid,
    *,
    constants: PhysicalConstants = CODATA2018,
) -> TridiagonalMatrix:
    """Symmetric tridiagonal discretization of the reduced problem.

    diagonal  = hbar^2/(mu h^2) + V(r_i) + hbar^2 Lambda(Lambda+1)/(2 mu r_i^2)
    off-diag  = -hbar^2/(2 mu h^2)
    """
    if not (grid.r_min < params.re < grid.r_max):
        raise ConfigurationError("grid must straddle the equilibrium separation r_e")
    problem = reduce_problem(params, l, grid)
    r = grid.interior()
    h = grid.spacing
    kin = constants.hbar**2 / (problem.mu * h * h)
    centrifugal = (
        constants.hbar**2 * problem.lam * (problem.lam + 1) / (2 * problem.mu * r * r)
    )
    diag = kin + problem.potential + centrifugal
    off = np.full(r.shape[0] - 1, -0.5 * kin)
    return TridiagonalMatrix(diagonal=diag, off_diagonal=off)


@njit(cache=True)
def _count_below(diag, off2, sigma):
    """Number of eigenvalues strictly below sigma (Sturm / LDL^T signs)."""
    count = 0
    d = diag[0] - sigma
    if abs(d) < 1e-300:
        d = -1e-300
    if d < 0.0:
        count += 1
    for i in range(1, diag.shape[0]):
        d = diag[i] - sigma - off2[i - 1] / d
        if abs(d) < 1e-300:
            d = -1e-300
        if d < 0.0:
            count += 1
    return count


@njit(cache=True)
def _kth_eigenvalue(diag, off2, k, lo, hi, rtol):
    for _ in range(3000):
        if hi - lo <= rtol * max(abs(lo), abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _count_below(diag, off2, mid) >= k + 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def sturm_count(m: TridiagonalMatrix, sigma: float) -> int:
    """Eigenvalues of m strictly below the shift sigma."""
    off2 = np.ascontiguousarray(m.off_diagonal * m.off_diagonal)
    return int(_count_below(np.ascontiguousarray(m.diagonal), off2, sigma))


def eigen_lowest(m: TridiagonalMatrix, count: int) -> list[float]:
    """The `count` smallest eigenvalues, ascending, to 1e-13 relative."""
    if count < 1:
        raise DomainError("eigenvalue count must be >= 1")
    if count > m.order:
        raise ConfigurationError(
            f"grid too coarse: requested {count} eigenvalues from an order-{m.order} matrix"
        )
    diag = np.ascontiguousarray(m.diagonal)
    off = np.abs(m.off_diagonal)
    off2 = np.ascontiguousarray(m.off_diagonal * m.off_diagonal)
    radius = np.zeros_like(diag)
    radius[:-1] += off
    radius[1:] += off
    lo = float(np.min(diag - radius))
    hi = float(np.max(diag + radius))
    out = []
    for k in range(count):
        out.append(float(_kth_eigenvalue(diag, off2, k, lo, hi, _EIG_RTOL)))
    return out


def default_grid(
    state: QuantumState,
    params: MoleculeParams,
    *,
    points: int = 20001,
    constants: PhysicalConstants = CODATA2018,
) -> RadialGrid:
    """State-adapted grid covering both ends of the wavefunction.

    Outer wall: the larger of the exp(-beta*y) tail scale 30/sqrt(beta) and
    the outer turning point 2*kappa/beta^2 plus tail margin; the second
    branch matters for weakly bound states, where the tail scale alone clips
    the classically allowed region. Inner wall: the reduced solution grows
    as y^s with s = (1 + sqrt(1 + 4(Lam(Lam+1) + kappa)))/2, and a Dirichlet
    wall at y_min leaks an O(y_min^(2s-1)) eigenvalue error, so y_min is
    pulled below the default 1/50 whenever s is small enough (soft wells,
    low l) for that leak to rise above ~1e-10.
    """
    kappa = compute_kappa(params, constants=constants)
    gamma = compute_gamma(kappa, state.l, state.N)
    beta = compute_beta(state.n, kappa, gamma, state.N)
    y_max = max(30.0 / math.sqrt(beta), 2.0 * kappa / (beta * beta) + 35.0 / beta)
    lam = state.l + (state.N - 3) / 2
    wall_power = math.sqrt(1.0 + 4.0 * (lam * (lam + 1.0) + kappa))   # = 2s - 1
    y_min = min(1.0 / 50.0, 1e-10 ** (1.0 / wall_power))
    return RadialGrid(r_min=params.re * y_min, r_max=params.re * y_max, points=points)


def oracle_energy(
    state: QuantumState,
    params: MoleculeParams,
    grid: RadialGrid | None = None,
    *,
    constants: PhysicalConstants = CODATA2018,
) -> float:
    """(n+1)-th smallest eigenvalue (J), Richardson-extrapolated over h, h/2."""
    if state.N != params.N:
        raise DomainError(
            f"state dimension N={state.N} does not match molecule dimension N={params.N}"
        )
    if grid is None:
        grid = default_grid(state, params, constants=constants)
    coarse = eigen_lowest(build_hamiltonian(params, state.l, grid, constants=constants), state.n + 1)[-1]
    fine = eigen_lowest(
        build_hamiltonian(params, state.l, grid.refined(), constants=constants), state.n + 1
    )[-1]
    energy = (4.0 * fine - coarse) / 3.0
    threshold = params.De + params.eta
    if energy >= threshold:
        raise NotBoundError(
            f"state n={state.n}, l={state.l} lies at or above the dissociation threshold"
        )
    return energy


def verification_report(
    params: MoleculeParams,
    *,
    n_max: int = 3,
    l_max: int = 3,
    tolerance: float = 1e-6,
    points: int = 20001,
    constants: PhysicalConstants = CODATA2018,
) -> tuple[list[dict], bool]:
    """Closed form vs oracle for every state n <= n_max, l <= l_max.

    Returns (rows, all_within_tolerance); row keys match the CSV columns
    N, n, l, E_closed, E_oracle, rel_err, grid_points.
    """
    rows = []
    ok = True
    for n in range(n_max + 1):
        for l in range(l_max + 1):
            state = QuantumState(n=n, l=l, N=params.N)
            closed = energy_level(state, params, constants=constants)
            grid = default_grid(state, params, points=points, constants=constants)
            numeric = oracle_energy(state, params, grid, constants=constants)
            rel = abs(numeric - closed) / (abs(closed) if closed != 0 else params.De)
            ok = ok and rel < tolerance
            rows.append(
                {
                    "N": params.N,
                    "n": n,
                    "l": l,
                    "E_closed": closed,
                    "E_oracle": numeric,
                    "rel_err": rel,
                    "grid_points": points,
                }
            )
    return rows, ok
