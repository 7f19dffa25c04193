"""Asymptotic Iteration Method engine over exact rational-function arithmetic.

Solves F'' = lambda0 F' + s0 F for the bound-state decay parameters beta by
the standard AIM ladder (Ciftci, Hall and Saad, J. Phys. A 36, 11807 (2003)):

    lambda_k = lambda_{k-1}' + s_{k-1} + lambda0 * lambda_{k-1}
    s_k      = s_{k-1}' + s0 * lambda_{k-1}
    delta_k  = lambda_k * s_{k-1} - lambda_{k-1} * s_k

with quantization condition delta_k = 0. The recurrences are catastrophically
ill-conditioned in floating point: coefficients lose roughly two digits per
rung, and by k = 10 a float delta_k scan is pure sign noise. Every polynomial
coefficient here is therefore kept exact as an integer mantissa times a shared
power of two. All inputs (trial beta included) are floats, hence dyadic
rationals, so the representation is closed under +, * and d/dy and nothing is
ever rounded until a value is reported.

The trial beta enters numerically: each scan point rebuilds the ladder for
that beta. This keeps the algebra univariate in y at the cost of one ladder
per evaluation, which the exact integer arithmetic makes affordable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import compute_beta
from .errors import DomainError, ResolutionError

_BISECT_RTOL = 2.5e-13     # root refinement, relative
_STABLE_RTOL = 1e-12       # root movement between successive k to accept
_K_START = 4
_K_STEP = 2
_K_CAP = 30
_MAX_SCAN_EVALS = 100_000


def _encode(value) -> tuple[int, int]:
    """Exact (mantissa, exponent) pair with value = mantissa * 2**exponent."""
    if isinstance(value, bool):
        raise DomainError("polynomial coefficients must be int or float")
    if isinstance(value, int):
        return value, 0
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError("polynomial coefficients must be finite")
        num, den = value.as_integer_ratio()
        return num, 1 - den.bit_length()
    raise DomainError(f"polynomial coefficients must be int or float, got {type(value).__name__}")


def _pair_to_float(mant: int, exp: int) -> float:
    if mant == 0:
        return 0.0
    if exp >= 0:
        return float(mant << exp)
    return mant / (1 << -exp)   # big-int division rounds correctly


class Polynomial:
    """Dense polynomial with exactly represented dyadic-rational coefficients.

    Internally a list of integer mantissas sharing one power-of-two exponent;
    the public coefficients property reports floats. Trailing (highest-degree)
    zero coefficients are stripped, so the leading coefficient is nonzero
    unless the polynomial is zero.
    """

    __slots__ = ("_mant", "_exp")

    def __init__(self, coefficients=(0,)):
        pairs = [_encode(c) for c in coefficients] or [(0, 0)]
        exp = min(e for _, e in pairs)
        self._mant = [m << (e - exp) for m, e in pairs]
        self._exp = exp
        self._normalize()

    @classmethod
    def _raw(cls, mant: list[int], exp: int) -> "Polynomial":
        out = cls.__new__(cls)
        out._mant = mant
        out._exp = exp
        out._normalize()
        return out

    def _normalize(self) -> None:
        m = self._mant
        while len(m) > 1 and m[-1] == 0:
            m.pop()
        shift = None
        for x in m:
            if x:
                low = (x & -x).bit_length() - 1
                shift = low if shift is None else min(shift, low)
                if shift == 0:
                    break
        if shift is None:
            self._mant = [0]
            self._exp = 0
        elif shift:
            self._mant = [x >> shift for x in m]
            self._exp += shift

    @property
    def coefficients(self) -> tuple[float, ...]:
        return tuple(_pair_to_float(m, self._exp) for m in self._mant)

    @property
    def degree(self) -> int:
        return len(self._mant) - 1

    @property
    def is_zero(self) -> bool:
        return len(self._mant) == 1 and self._mant[0] == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._mant == other._mant and self._exp == other._exp

    def __hash__(self):
        return hash((tuple(self._mant), self._exp))

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coefficients)!r})"

    def __add__(self, other: "Polynomial") -> "Polynomial":
        exp = min(self._exp, other._exp)
        sa, sb = self._exp - exp, other._exp - exp
        a, b = self._mant, other._mant
        size = max(len(a), len(b))
        mant = [
            ((a[i] << sa) if i < len(a) else 0) + ((b[i] << sb) if i < len(b) else 0)
            for i in range(size)
        ]
        return Polynomial._raw(mant, exp)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw([-m for m in self._mant], self._exp)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        a, b = self._mant, other._mant
        mant = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        mant[i + j] += ai * bj
        return Polynomial._raw(mant, self._exp + other._exp)

    def derivative(self) -> "Polynomial":
        if len(self._mant) == 1:
            return Polynomial._raw([0], 0)
        return Polynomial._raw([i * m for i, m in enumerate(self._mant) if i > 0], self._exp)

    def _eval_exact(self, y: float) -> tuple[int, int]:
        ym, ye = _encode(y)
        acc_m, acc_e = 0, 0
        for c in reversed(self._mant):
            acc_m *= ym
            acc_e += ye
            exp = min(acc_e, 0)
            acc_m = (acc_m << (acc_e - exp)) + (c << -exp)
            acc_e = exp
        return acc_m, acc_e + self._exp

    def __call__(self, y: float) -> float:
        return _pair_to_float(*self._eval_exact(y))


class RationalFunction:
    """Ratio of polynomials in canonical form: common monomial factors of y
    are cancelled on construction (the AIM ladder otherwise accumulates y^k
    in both numerator and denominator)."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: Polynomial, denominator: Polynomial):
        if denominator.is_zero:
            raise DomainError("rational function denominator must not be the zero polynomial")
        low_n = next((i for i, m in enumerate(numerator._mant) if m), len(numerator._mant) - 1)
        low_d = next((i for i, m in enumerate(denominator._mant) if m), len(denominator._mant) - 1)
        strip = min(low_n, low_d)
        if strip:
            numerator = Polynomial._raw(numerator._mant[strip:], numerator._exp)
            denominator = Polynomial._raw(denominator._mant[strip:], denominator._exp)
        self.numerator = numerator
        self.denominator = denominator

    def __repr__(self) -> str:
        return f"RationalFunction({self.numerator!r}, {self.denominator!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        # cross-multiplied equality, independent of common (non-monomial) factors
        return (self.numerator * other.denominator) == (other.numerator * self.denominator)

    def __hash__(self):
        raise TypeError("RationalFunction is not hashable")

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)

    def __call__(self, y: float) -> float:
        nm, ne = self.numerator._eval_exact(y)
        dm, de = self.denominator._eval_exact(y)
        if dm == 0:
            raise DomainError(f"rational function pole at y = {y}")
        return math.ldexp(nm / dm, ne - de)

    def _sign_at(self, y: float) -> int:
        nm, _ = self.numerator._eval_exact(y)
        dm, _ = self.denominator._eval_exact(y)
        if dm == 0:
            raise DomainError(f"rational function pole at y = {y}")
        sign = (nm > 0) - (nm < 0)
        return sign if dm > 0 else -sign


def rf_derivative(f: RationalFunction) -> RationalFunction:
    """Quotient-rule derivative, returned in canonical form."""
    num = f.numerator.derivative() * f.denominator - f.numerator * f.denominator.derivative()
    return RationalFunction(num, f.denominator * f.denominator)


@dataclass(frozen=True)
class AimProblem:
    """The F'' = lambda0 F' + s0 F problem for one trial beta.

    lambda0 = (2 beta y - (2 gamma + N - 1)) / y
    s0      = (beta (2 gamma + N - 1) - 2 kappa) / y

    Both are built with exact polynomial arithmetic from the float inputs, so
    no coefficient is rounded before the ladder starts.
    """

    lambda0: RationalFunction
    s0: RationalFunction
    beta: float
    kappa: float
    gamma: float
    N: int

    @classmethod
    def from_parameters(cls, kappa: float, gamma: float, N: int, beta: float) -> "AimProblem":
        if N < 2:
            raise DomainError("spatial dimension must be an integer >= 2")
        if 2 * gamma + N - 1 <= 0:
            raise DomainError("series parameter 2*gamma + N - 1 must be positive")
        b_const = Polynomial([N - 1]) + Polynomial([2.0 * gamma])
        y = Polynomial([0, 1])
        lam_num = Polynomial([0, 2.0 * beta]) - b_const
        s_num = Polynomial([beta]) * b_const - Polynomial([2.0 * kappa])
        return cls(
            lambda0=RationalFunction(lam_num, y),
            s0=RationalFunction(s_num, y),
            beta=beta,
            kappa=kappa,
            gamma=gamma,
            N=N,
        )


def _ladder(problem: AimProblem, k_max: int):
    """Yield (lambda_k, s_k, lambda_{k-1}, s_{k-1}) for k = 1 .. k_max."""
    lam0, s0 = problem.lambda0, problem.s0
    lam, s = lam0, s0
    for _ in range(k_max):
        lam_next = rf_derivative(lam) + s + lam0 * lam
        s_next = rf_derivative(s) + s0 * lam
        yield lam_next, s_next, lam, s
        lam, s = lam_next, s_next


def _delta_sign(problem: AimProblem, y0: float, k: int) -> int:
    for lam_k, s_k, lam_prev, s_prev in _ladder(problem, k):
        pass
    delta_num = lam_k.numerator * s_prev.numerator - lam_prev.numerator * s_k.numerator
    # lam_k, s_k, lam_prev, s_prev share the denominator y^(k+1) after
    # canonicalization, so the products' denominators cancel in the sign
    dm, _ = lam_k.denominator._eval_exact(y0)
    pm, _ = s_prev.denominator._eval_exact(y0)
    if dm == 0 or pm == 0:
        raise DomainError(f"evaluation point y0 = {y0} is a pole of the iterated functions")
    nm, _ = delta_num._eval_exact(y0)
    sign = (nm > 0) - (nm < 0)
    return sign if (dm > 0) == (pm > 0) else -sign


def aim_iterate(problem: AimProblem, y0: float, k_max: int) -> list[float]:
    """Termination values delta_1(y0), ..., delta_kmax(y0).

    Each delta_k is computed exactly as a rational function and only the
    final evaluation is rounded to float.
    """
    if k_max < 1:
        raise DomainError("k_max must be >= 1")
    if y0 <= 0:
        raise DomainError("evaluation point y0 must be positive")
    out = []
    for lam_k, s_k, lam_prev, s_prev in _ladder(problem, k_max):
        left = lam_k * s_prev
        right = lam_prev * s_k
        num = left.numerator * right.denominator - right.numerator * left.denominator
        den = left.denominator * right.denominator
        out.append(RationalFunction(num, den)(y0))
    return out


@dataclass(frozen=True)
class AimResult:
    """Roots beta found by the solver, ground state first (descending).

    iterations_used records the ladder depth k that certified each root;
    delta_history holds |delta_1| .. |delta_k| evaluated at each root.
    """

    roots: tuple[float, ...]
    iterations_used: tuple[int, ...]
    delta_history: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if any(r <= 0 for r in self.roots):
            raise DomainError("every AIM root must be positive")
        if list(self.roots) != sorted(self.roots, reverse=True):
            raise DomainError("AIM roots must be sorted descending (ground state first)")


def _bisect_root(kappa: float, gamma: float, N: int, y0: float, k: int,
                 lo: float, hi: float, sign_lo: int, sign_hi: int) -> float:
    """Shrink [lo, hi] (beta, ascending) with exact sign evaluations."""
    while hi - lo > _BISECT_RTOL * max(1.0, abs(lo)):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        s = _delta_sign(AimProblem.from_parameters(kappa, gamma, N, mid), y0, k)
        if s == 0:
            return mid
        if s == sign_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _scan_roots(kappa: float, gamma: float, N: int, y0: float, k: int,
                bracket: tuple[float, float], want: int, scan_step: float) -> list[float]:
    """Scan delta_k sign changes over beta, descending from bracket[1].

    The scan is uniform in u = 1/beta: the roots of this family thin out
    like 1/n in beta but are evenly spaced in u, so a uniform-in-beta scan
    either oversamples the top of the bracket or walks past the closely
    packed high-n roots.
    """
    b_lo, b_hi = bracket
    if not (0 < b_lo < b_hi):
        raise DomainError("bracket must satisfy 0 < beta_lo < beta_hi")
    u, u_end = 1.0 / b_hi, 1.0 / b_lo
    roots: list[float] = []
    sign_prev = _delta_sign(AimProblem.from_parameters(kappa, gamma, N, 1.0 / u), y0, k)
    evals = 1
    while len(roots) < want and u < u_end:
        u_next = min(u + scan_step, u_end)
        beta_next = 1.0 / u_next
        sign_next = _delta_sign(AimProblem.from_parameters(kappa, gamma, N, beta_next), y0, k)
        evals += 1
        if evals > _MAX_SCAN_EVALS:
            raise ResolutionError(
                "beta scan exhausted its evaluation budget; use a finer scan step, "
                "a tighter bracket, or a larger iteration depth k"
            )
        if sign_next == 0:
            roots.append(beta_next)
        elif sign_prev != 0 and sign_next != sign_prev:
            roots.append(
                _bisect_root(kappa, gamma, N, y0, k, beta_next, 1.0 / u, sign_next, sign_prev)
            )
        u, sign_prev = u_next, sign_next
    return roots


def _refine_near(kappa: float, gamma: float, N: int, y0: float, k: int,
                 guess: float) -> float | None:
    """Re-locate a root at depth k inside a tight window around a previous
    estimate; None if the window shows no sign change."""
    pad = 5e-12 * max(1.0, abs(guess))
    lo, hi = guess - pad, guess + pad
    if lo <= 0:
        return None
    s_lo = _delta_sign(AimProblem.from_parameters(kappa, gamma, N, lo), y0, k)
    s_hi = _delta_sign(AimProblem.from_parameters(kappa, gamma, N, hi), y0, k)
    if s_lo == 0:
        return lo
    if s_hi == 0:
        return hi
    if s_lo == s_hi:
        return None
    return _bisect_root(kappa, gamma, N, y0, k, lo, hi, s_lo, s_hi)


def aim_solve(
    kappa: float,
    gamma: float,
    N: int,
    n_max: int,
    bracket: tuple[float, float] | None = None,
    y0: float = 1.0,
    *,
    scan_step: float | None = None,
) -> AimResult:
    """Find the n_max+1 largest roots of delta_k(y0; beta) = 0.

    Ladder depth starts at max(4, n_max), since delta_k has exactly k+1
    roots and smaller depths cannot expose all requested states, and grows
    by 2 (capped at 30) until every root moves by less than 1e-12 relative
    between successive depths. A pass that resolves fewer sign changes than
    requested falls through to the next depth; running out of depth raises
    ResolutionError.
    """
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    if y0 <= 0:
        raise DomainError("evaluation point y0 must be positive")
    if kappa <= 0:
        raise DomainError("kappa must be positive")
    if bracket is None:
        bracket = (1e-9, compute_beta(0, kappa, gamma, N) * 1.1)
    if scan_step is None:
        scan_step = 1.0 / (3.0 * kappa)

    want = n_max + 1
    prev: list[float] | None = None
    k = max(_K_START, n_max)
    while k <= _K_CAP:
        if prev is None:
            roots = _scan_roots(kappa, gamma, N, y0, k, bracket, want, scan_step)
        else:
            roots = []
            for guess in prev:
                refined = _refine_near(kappa, gamma, N, y0, k, guess)
                if refined is None:
                    roots = _scan_roots(kappa, gamma, N, y0, k, bracket, want, scan_step)
                    break
                roots.append(refined)
        if len(roots) == want:
            if prev is not None and len(prev) == want and all(
                abs(r - p) <= _STABLE_RTOL * max(1.0, abs(p)) for r, p in zip(roots, prev)
            ):
                history = tuple(
                    tuple(
                        abs(d)
                        for d in aim_iterate(
                            AimProblem.from_parameters(kappa, gamma, N, root), y0, k
                        )
                    )
                    for root in roots
                )
                return AimResult(
                    roots=tuple(roots),
                    iterations_used=tuple(k for _ in roots),
                    delta_history=history,
                )
            prev = roots
        else:
            prev = None
        k += _K_STEP
    raise ResolutionError(
        f"AIM did not stabilize {want} roots by k = {_K_CAP}; "
        "use a finer scan step or widen the bracket"
    )
