"""Special functions for the bound-state wavefunctions, from scratch.

Pochhammer symbols, Kummer's M(a, b, z) series, the associated-Laguerre
connection, and assembly plus normalization of the full radial function
R(y) = norm * y^gamma * exp(-beta*y) * F_n(y) on the scaled radius y = r/re.

Normalization is taken under the y^(N-1) measure, int R^2 y^(N-1) dy = 1.
Physical r-space normalization differs by the constant Jacobian factor
re^N of the substitution r = re*y and is not applied here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .core import (
    CODATA2018,
    DimensionlessParams,
    MoleculeParams,
    PhysicalConstants,
    QuantumState,
)
from .errors import ConvergenceError, DomainError

_SERIES_RTOL = 1e-16
_SERIES_CAP = 10000


def pochhammer(x: float, j: int) -> float:
    """Rising factorial (x)_j = x (x+1) ... (x+j-1), with (x)_0 = 1."""
    if j < 0:
        raise DomainError("pochhammer order must be >= 0")
    out = 1.0
    for i in range(j):
        out *= x + i
    return out


def _is_nonpositive_integer(b: float) -> bool:
    return b <= 0 and b == math.floor(b)


@dataclass(frozen=True)
class KummerParams:
    """Arguments of M(a, b, z). For bound states a = -n, b = 2*gamma + N - 1,
    z = 2*beta*y."""

    a: float
    b: float
    z: float

    def __post_init__(self):
        if _is_nonpositive_integer(self.b):
            raise DomainError("Kummer b parameter must not be a nonpositive integer")


def kummer_m(p: KummerParams) -> float:
    """Confluent hypergeometric M(a, b, z) by direct series.

    If a is a nonpositive integer the series is summed exactly through its
    terminating degree -a (no tolerance involved); otherwise terms are added
    until the next one falls below 1e-16 of the partial sum, with a hard cap.
    """
    a, b, z = p.a, p.b, p.z
    if a <= 0 and a == math.floor(a):
        # exact polynomial path: the (a)_j factor kills every j > -a term.
        # The terminating series alternates and cancels badly near z ~ |a|,
        # so it is summed over the exact rational values of the float inputs
        # and rounded once at the end.
        n = int(-a)
        total = Fraction(1)
        term = Fraction(1)
        bf = Fraction(b)
        zf = Fraction(z)
        for j in range(n):
            term *= Fraction(a + j) * zf / ((bf + j) * (j + 1))
            total += term
        return float(total)
    total = 1.0
    term = 1.0
    for j in range(_SERIES_CAP):
        term *= (a + j) * z / ((b + j) * (j + 1))
        total += term
        if abs(term) < _SERIES_RTOL * abs(total):
            return total
    raise ConvergenceError(
        f"Kummer series did not converge within {_SERIES_CAP} terms (a={a}, b={b}, z={z})"
    )


def kummer_polynomial(n: int, b: float, scale: float) -> list[float]:
    """Coefficients (ascending in y) of the degree-n polynomial M(-n, b, scale*y).

    c_j = (-n)_j scale^j / ((b)_j j!). The highest coefficient is nonzero,
    which is the terminating-series degree statement in coefficient form.
    """
    if n < 0:
        raise DomainError("polynomial degree must be >= 0")
    if _is_nonpositive_integer(b):
        raise DomainError("Kummer b parameter must not be a nonpositive integer")
    coeffs = [1.0]
    c = 1.0
    for j in range(n):
        c *= (-n + j) * scale / ((b + j) * (j + 1))
        coeffs.append(c)
    return coeffs


def laguerre_from_kummer(n: int, alpha: float, x: float) -> float:
    """Associated Laguerre L_n^alpha(x) by the three-term recurrence.

    Tied to the series by M(-n, alpha+1, x) = n!/(alpha+1)_n * L_n^alpha(x).
    """
    if n < 0:
        raise DomainError("Laguerre degree must be >= 0")
    if alpha <= -1:
        raise DomainError("Laguerre parameter alpha must exceed -1")
    if n == 0:
        return 1.0
    prev = 1.0
    cur = alpha + 1.0 - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + alpha + 1 - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


@dataclass(frozen=True)
class RadialFunction:
    """Normalized radial wavefunction sampled on a caller grid.

    norm is the constant making int R^2 y^(N-1) dy = 1; samples are (y, R(y))
    pairs on the requested grid. evaluate() gives R at arbitrary y > 0.
    """

    state: QuantumState
    beta: float
    gamma: float
    norm: float
    samples: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if self.norm <= 0:
            raise DomainError("normalization constant must be positive")

    def evaluate(self, y: float) -> float:
        if y < 0:
            raise DomainError("scaled radius y must be >= 0")
        if y == 0.0:
            return 0.0
        # exp(gamma*log y - beta*y) sidesteps y**gamma overflow at large gamma
        envelope = math.exp(self.gamma * math.log(y) - self.beta * y)
        poly = 0.0
        for c in reversed(self._poly):
            poly = poly * y + c
        return self.norm * envelope * poly

    @cached_property
    def _poly(self) -> tuple[float, ...]:
        b = 2 * self.gamma + self.state.N - 1
        return tuple(kummer_polynomial(self.state.n, b, 2 * self.beta))

    def to_csv(self) -> str:
        lines = ["y,R"]
        for y, value in self.samples:
            lines.append(f"{y:.17g},{value:.17g}")
        return "\n".join(lines) + "\n"


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(12)


def _gauss_segment(f, a: float, b: float) -> float:
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    return half * sum(w * f(mid + half * x) for x, w in zip(_GL_NODES, _GL_WEIGHTS))


def _adaptive_gauss(f, a: float, b: float, tol: float, panel_noise=None, depth: int = 0) -> float:
    """Recursive 12-point Gauss-Legendre with per-panel error splitting.

    panel_noise(a, b), when given, returns the absolute rounding-noise
    level of a panel's quadrature sum. Once the half/whole disagreement is
    below that level it is float noise, not discretization error, and since
    both the disagreement and the tolerance halve per level, subdividing
    such a panel would recurse to the depth cap without this floor.
    """
    whole = _gauss_segment(f, a, b)
    mid = 0.5 * (a + b)
    left = _gauss_segment(f, a, mid)
    right = _gauss_segment(f, mid, b)
    err = abs(left + right - whole)
    if err <= tol or (panel_noise is not None and err <= panel_noise(a, b)):
        return left + right
    if depth >= 48:
        raise ConvergenceError("adaptive quadrature failed to converge")
    return _adaptive_gauss(f, a, mid, 0.5 * tol, panel_noise, depth + 1) + _adaptive_gauss(
        f, mid, b, 0.5 * tol, panel_noise, depth + 1
    )


def radial_wavefunction(
    state: QuantumState,
    params: MoleculeParams,
    grid,
    *,
    constants: PhysicalConstants = CODATA2018,
) -> RadialFunction:
    """Construct the normalized bound-state radial function for `state`.

    grid is a strictly increasing sequence of positive y values at which the
    function is sampled. The normalization integral runs over [0, y_max]
    with y_max pushed far enough out that the exp(-2*beta*y) tail is below
    1e-12 of the total.
    """
    ys = [float(y) for y in grid]
    if any(y <= 0 for y in ys) or any(b <= a for a, b in zip(ys, ys[1:])):
        raise DomainError("sample grid must be strictly increasing and positive")

    dims = DimensionlessParams.for_state(state, params, constants=constants)
    beta, gamma = dims.beta, dims.gamma
    b = 2 * gamma + state.N - 1
    poly = kummer_polynomial(state.n, b, 2 * beta)

    # The integrand is evaluated through the roots of the polynomial factor
    # rather than its coefficients: Horner summation cancels catastrophically
    # between the roots at stiff kappa, while each (y - root) factor is an
    # exact float subtraction.  Roots come from the symmetric Jacobi matrix
    # of the weight z^(b-1) e^(-z), whose eigenvalues they are.
    if state.n:
        alpha = b - 1.0
        jac = np.diag(2.0 * np.arange(state.n) + alpha + 1.0)
        if state.n > 1:
            k = np.arange(1.0, state.n)
            off = np.sqrt(k * (k + alpha))
            jac += np.diag(off, 1) + np.diag(off, -1)
        y_roots = tuple(float(z) / (2.0 * beta) for z in np.linalg.eigvalsh(jac))
    else:
        y_roots = ()
    lead = poly[-1]
    p0 = 2 * gamma + state.N - 1

    def squared_density(y: float) -> float:
        if y <= 0.0:
            return 0.0
        val = lead
        for r in y_roots:
            val *= y - r
        return math.exp(p0 * math.log(y) - 2 * beta * y) * val * val

    # power of the integrand envelope y^p e^{-2 beta y}; F^2 adds up to 2n
    p = p0 + 2 * state.n
    y_peak = max(p / (2 * beta), 1e-3)
    # the envelope peak can land on a node of the polynomial factor, so the
    # scale reference is the largest density over a spread of probe points
    reference = max(
        squared_density(y_peak * s) for s in (0.6, 0.8, 0.9, 1.0, 1.1, 1.25, 1.5, 2.0, 2.5)
    )
    if reference <= 0.0:
        raise ConvergenceError("degenerate normalization integrand")
    y_max = 2.0 * y_peak + 1.0 / beta
    while squared_density(y_max) > 1e-15 * reference * min(1.0, 2 * beta):
        y_max *= 1.5
        if y_max > 1e12:
            raise ConvergenceError("normalization tail cutoff did not close")

    rough = reference * (y_peak + 1.0 / (2 * beta))

    def point_noise(y: float) -> float:
        # absolute rounding noise of squared_density(y): with the root-product
        # evaluation the relative noise is eps times the exp-argument size
        # (stiff kappas push it to several hundred) plus one eps per factor
        if y <= 0.0:
            return 0.0
        s = abs(p0 * math.log(y)) + 2 * beta * y + 2 * state.n + 4.0
        return squared_density(y) * s

    def panel_noise(lo: float, hi: float) -> float:
        mag = max(point_noise(lo), point_noise(0.5 * (lo + hi)), point_noise(hi))
        return 6.0 * 2.3e-16 * (hi - lo) * mag

    integral = _adaptive_gauss(
        squared_density, 0.0, y_max, tol=1e-13 * rough, panel_noise=panel_noise
    )
    if not (integral > 0) or not math.isfinite(integral):
        raise ConvergenceError("normalization integral did not converge")
    norm = 1.0 / math.sqrt(integral)

    fn = RadialFunction(state=state, beta=beta, gamma=gamma, norm=norm, samples=())
    samples = tuple((y, fn.evaluate(y)) for y in ys)
    return RadialFunction(state=state, beta=beta, gamma=gamma, norm=norm, samples=samples)
