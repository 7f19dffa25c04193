"""Special functions: Pochhammer, Kummer series, Laguerre link, radial functions."""

import math

import numpy as np
import pytest
import scipy.special as sps

from kratzer import (
    CODATA2018,
    NATURAL,
    ConvergenceError,
    DimensionlessParams,
    DomainError,
    KummerParams,
    MoleculeParams,
    QuantumState,
    compute_beta,
    compute_gamma,
    compute_kappa,
    kummer_m,
    kummer_polynomial,
    laguerre_from_kummer,
    pochhammer,
    radial_wavefunction,
)


def test_pochhammer_zero_order():
    for x in (0.0, -3.0, 2.5, 7.0):
        assert pochhammer(x, 0) == 1.0


def test_pochhammer_rising_product():
    assert pochhammer(3.0, 2) == 12.0
    assert pochhammer(1.0, 5) == 120.0


def test_pochhammer_hits_zero():
    assert pochhammer(-2.0, 3) == 0.0


def test_pochhammer_rejects_negative_order():
    with pytest.raises(DomainError):
        pochhammer(1.0, -1)


def test_kummer_at_origin():
    assert kummer_m(KummerParams(a=0.7, b=1.3, z=0.0)) == 1.0


def test_kummer_zero_a():
    assert kummer_m(KummerParams(a=0.0, b=2.0, z=5.0)) == 1.0


def test_kummer_two_term_polynomial():
    assert kummer_m(KummerParams(a=-1.0, b=2.0, z=2.0)) == 0.0


def test_kummer_rejects_nonpositive_integer_b():
    for b in (0.0, -1.0, -7.0):
        with pytest.raises(DomainError):
            KummerParams(a=1.0, b=b, z=1.0)


def test_kummer_series_cross_check():
    # non-terminating series against an established implementation
    for a in (0.37, 1.9):
        for b in (1.25, 3.6):
            for z in (0.1, 1.0, 5.0, 25.0):
                ours = kummer_m(KummerParams(a=a, b=b, z=z))
                ref = float(sps.hyp1f1(a, b, z))
                assert ours == pytest.approx(ref, rel=1e-12)


def test_kummer_polynomial_path_cross_check():
    for n in range(6):
        for b in (1.0, 2.5, 120.3):
            for z in (0.2, 3.0, 17.0):
                ours = kummer_m(KummerParams(a=float(-n), b=b, z=z))
                ref = float(sps.hyp1f1(-n, b, z))
                assert ours == pytest.approx(ref, rel=1e-10, abs=1e-13)


def test_kummer_series_cap():
    with pytest.raises(ConvergenceError):
        kummer_m(KummerParams(a=0.5, b=1.5, z=1e6))


def test_kummer_polynomial_degree():
    for n in range(8):
        coeffs = kummer_polynomial(n, 2.0, 1.5)
        assert len(coeffs) == n + 1
        assert coeffs[-1] != 0.0
        assert coeffs[0] == 1.0


def test_laguerre_base_cases():
    assert laguerre_from_kummer(0, 0.5, 3.0) == 1.0
    alpha, x = 1.7, 0.9
    assert laguerre_from_kummer(1, alpha, x) == pytest.approx(alpha + 1 - x, rel=1e-15)


def test_laguerre_small_cross_check():
    # n=2, alpha=1: L_2^1(x) = (alpha+1)(alpha+2)/2 - (alpha+2)x + x^2/2 = 3 - 3x + x^2/2
    x = 1.0
    direct = 3 - 3 * x + x * x / 2
    assert laguerre_from_kummer(2, 1.0, x) == pytest.approx(direct, rel=1e-14)
    lhs = kummer_m(KummerParams(a=-2.0, b=2.0, z=x))
    rhs = math.factorial(2) / pochhammer(2.0, 2) * laguerre_from_kummer(2, 1.0, x)
    assert lhs == pytest.approx(rhs, rel=1e-14)


def test_kummer_laguerre_identity():
    # M(-n, alpha+1, x) = n!/((alpha+1)_n) * L_n^alpha(x)
    for n in range(11):
        for alpha in (0.5, 1.0, 3.7):
            for x in (0.25, 1.0, 4.0, 10.0):
                lhs = kummer_m(KummerParams(a=float(-n), b=alpha + 1, z=x))
                rhs = (
                    math.factorial(n)
                    / pochhammer(alpha + 1, n)
                    * laguerre_from_kummer(n, alpha, x)
                )
                assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-15)


def _ode_residual(n, kappa, l, N, y):
    gamma = compute_gamma(kappa, l, N)
    beta = compute_beta(n, kappa, gamma, N)
    b = 2 * gamma + N - 1
    coeffs = kummer_polynomial(n, b, 2 * beta)
    d1 = [j * c for j, c in enumerate(coeffs)][1:] or [0.0]
    d2 = [j * c for j, c in enumerate(d1, start=0)][1:] or [0.0]

    def horner(cs, t):
        acc = 0.0
        for c in reversed(cs):
            acc = acc * t + c
        return acc

    F = horner(coeffs, y)
    Fp = horner(d1, y)
    Fpp = horner(d2, y)
    return abs(y * Fpp + (b - 2 * beta * y) * Fp + (2 * kappa - beta * b) * F), abs(F)


def test_ode_residuals(rng, hcl):
    kappas = (2.0, compute_kappa(hcl))
    for kappa in kappas:
        for n in range(6):
            for l in (0, 1, 2):
                ys = rng.uniform(1e-6, 20.0, size=50)
                for y in ys:
                    res, F = _ode_residual(n, kappa, l, 3, float(y))
                    assert res < 1e-9 * max(1.0, F)


def _sign_changes(values):
    signs = [v for v in values if v != 0.0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def test_radial_node_counts(natural):
    grid = [0.01 * k for k in range(1, 3001)]
    for n, expected in ((0, 0), (1, 1), (2, 2), (3, 3)):
        rf = radial_wavefunction(QuantumState(n, 0, 3), natural, grid, constants=NATURAL)
        values = [v for _, v in rf.samples]
        assert _sign_changes(values) == expected


def _gamma_form_norm_integral(state, params, constants):
    """Closed-form normalization integral via term-by-term Gamma functions.

    Summed in 50-digit arithmetic: the terms alternate and the cancellation
    grows roughly two orders of magnitude per node, which float64 cannot
    absorb for the stiff molecular parameter sets.
    """
    import mpmath as mp

    dims = DimensionlessParams.for_state(state, params, constants=constants)
    beta, gamma = dims.beta, dims.gamma
    b = 2 * gamma + state.N - 1
    coeffs = kummer_polynomial(state.n, b, 2 * beta)
    with mp.workdps(50):
        square = [mp.mpf(0)] * (2 * len(coeffs) - 1)
        for i, ci in enumerate(coeffs):
            for j, cj in enumerate(coeffs):
                square[i + j] += mp.mpf(ci) * mp.mpf(cj)
        total = mp.mpf(0)
        for q, cq in enumerate(square):
            p = mp.mpf(2 * gamma) + state.N - 1 + q
            total += cq * mp.gamma(p + 1) / (2 * mp.mpf(beta)) ** (p + 1)
        return float(1 / mp.sqrt(total))


def test_radial_normalization_against_gamma_form(natural, hcl):
    for params, constants in ((natural, NATURAL), (hcl, CODATA2018)):
        for n in (0, 1, 2, 4, 5):
            state = QuantumState(n, 0, 3)
            rf = radial_wavefunction(state, params, [0.5, 1.0, 2.0], constants=constants)
            expected = _gamma_form_norm_integral(state, params, constants)
            assert rf.norm == pytest.approx(expected, rel=1e-10)


def test_radial_normalization_quadrature_recheck(natural):
    import mpmath as mp

    state = QuantumState(2, 1, 3)
    rf = radial_wavefunction(state, natural, [1.0], constants=NATURAL)
    integral = mp.quad(
        lambda y: mp.mpf(rf.evaluate(float(y))) ** 2 * mp.mpf(y) ** 2, [0, 1, 5, 40, 200]
    )
    assert float(integral) == pytest.approx(1.0, abs=1e-10)


def test_radial_higher_dimension_normalization():
    params = MoleculeParams.natural(N=5)
    import mpmath as mp

    rf = radial_wavefunction(QuantumState(1, 1, 5), params, [1.0], constants=NATURAL)
    integral = mp.quad(
        lambda y: mp.mpf(rf.evaluate(float(y))) ** 2 * mp.mpf(y) ** 4, [0, 1, 5, 40, 200]
    )
    assert float(integral) == pytest.approx(1.0, abs=1e-10)


def test_radial_decay_at_infinity(natural):
    rf = radial_wavefunction(QuantumState(1, 0, 3), natural, [1.0], constants=NATURAL)
    assert abs(rf.evaluate(400.0)) < 1e-12
    assert abs(rf.evaluate(800.0)) < abs(rf.evaluate(200.0)) + 1e-300


def test_radial_grid_validation(natural):
    with pytest.raises(DomainError):
        radial_wavefunction(QuantumState(0, 0, 3), natural, [0.0, 1.0], constants=NATURAL)
    with pytest.raises(DomainError):
        radial_wavefunction(QuantumState(0, 0, 3), natural, [2.0, 1.0], constants=NATURAL)


def test_radial_csv_dump(natural):
    rf = radial_wavefunction(QuantumState(0, 0, 3), natural, [0.5, 1.0], constants=NATURAL)
    text = rf.to_csv()
    lines = text.splitlines()
    assert lines[0] == "y,R"
    assert len(lines) == 3
    y0, v0 = lines[1].split(",")
    assert float(y0) == 0.5
    assert float(v0) == pytest.approx(rf.evaluate(0.5), rel=1e-16)
    assert "\r" not in text
