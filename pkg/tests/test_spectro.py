"""Vibration-rotation levels, selection rules, band generation, comparison."""

import math

import pytest

from kratzer import (
    CODATA2018,
    NATURAL,
    BandReport,
    ConfigurationError,
    DomainError,
    EtaMode,
    SelectionRuleError,
    Transition,
    compare_experiment,
    energy_to_wavenumber,
    fundamental_band,
    level_energy,
    load_band_centers,
    transition_center,
    transition_wavenumber,
    with_experiment,
)

# 50-digit reference values for the bundled molecule files, same provenance
# as in test_core.
HCL_CENTER_CM1 = 1194.9519435994845
H2_CENTER_CM1 = 2715.5522254665128
HCL_RATIO = 2.4151598861010840
H2_RATIO = 1.5319904220532186


# ------------------------------------------------------------------ levels

def test_level_energy_ground_state_is_half_depth(natural):
    assert level_energy(0, 0, natural, constants=NATURAL) == -0.5 * natural.De


def test_level_energy_first_gap(natural):
    gap = level_energy(1, 0, natural, constants=NATURAL) - level_energy(
        0, 0, natural, constants=NATURAL
    )
    assert gap == pytest.approx(5.0 * natural.De / 18.0, rel=1e-12)


def test_level_energy_hcl_band_gap(hcl):
    gap = level_energy(1, 0, hcl) - level_energy(0, 0, hcl)
    assert gap / CODATA2018.eV == pytest.approx(0.1482, rel=0.015)


def test_level_energy_requires_three_dimensions(hcl):
    with pytest.raises(DomainError):
        level_energy(0, 0, hcl.with_dimension(4))
    with pytest.raises(DomainError):
        level_energy(-1, 0, hcl)


# ------------------------------------------------------------- transitions

def test_transition_wavenumber_brute_force(natural):
    # (0,0)->(1,1) at kappa=2: E = -kappa De/(v + 1/2 + sqrt(kappa+(J+1/2)^2))^2
    # evaluated for both ends by hand
    delta = natural.De * (2.0 / 4.0 - 2.0 / (1.5 + math.sqrt(4.25)) ** 2)
    expected = energy_to_wavenumber(delta, constants=NATURAL)
    got = transition_wavenumber((0, 0), (1, 1), natural, constants=NATURAL)
    assert got == pytest.approx(expected, rel=1e-12)


def test_transition_rejects_forbidden_pairs(natural):
    with pytest.raises(SelectionRuleError):
        transition_wavenumber((0, 0), (1, 0), natural, constants=NATURAL)  # dJ = 0
    with pytest.raises(SelectionRuleError):
        transition_wavenumber((0, 0), (2, 1), natural, constants=NATURAL)  # dv = 2
    with pytest.raises(SelectionRuleError):
        transition_wavenumber((0, 1), (0, 0), natural, constants=NATURAL)  # dv = 0


def test_transition_wavenumber_is_shift_invariant(hcl, h2):
    for params in (hcl, h2):
        up = params.with_eta_mode(EtaMode.KRATZER)
        down = params.with_eta_mode(EtaMode.MODIFIED)
        for pair in (((0, 0), (1, 1)), ((0, 3), (1, 2)), ((2, 5), (1, 4)), ((0, 7), (1, 8))):
            a = transition_wavenumber(*pair, up)
            b = transition_wavenumber(*pair, down)
            assert a == pytest.approx(b, rel=1e-12)


def test_transition_invariants():
    with pytest.raises(SelectionRuleError):
        Transition(v=0, J=0, v_up=2, J_up=1, wavenumber=100.0, branch="R")
    with pytest.raises(SelectionRuleError):
        Transition(v=0, J=0, v_up=1, J_up=0, wavenumber=100.0, branch="R")
    with pytest.raises(DomainError):
        Transition(v=0, J=0, v_up=1, J_up=1, wavenumber=100.0, branch="Q")
    with pytest.raises(DomainError):
        Transition(v=0, J=0, v_up=1, J_up=1, wavenumber=-5.0, branch="R")


# ------------------------------------------------------------------- bands

def test_fundamental_band_hcl_center(hcl):
    report = fundamental_band(hcl, J_max=5)
    assert report.center == pytest.approx(1195.0, rel=0.015)
    assert report.center == pytest.approx(HCL_CENTER_CM1, rel=1e-12)
    assert report.molecule == "HCl"


def test_fundamental_band_h2_center(h2):
    report = fundamental_band(h2, J_max=5)
    assert report.center == pytest.approx(2715.7, rel=0.015)
    assert report.center == pytest.approx(H2_CENTER_CM1, rel=1e-12)


def test_band_line_counts_and_quantum_numbers(hcl):
    report = fundamental_band(hcl, J_max=4)
    assert [(t.J, t.J_up) for t in report.r_branch] == [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]
    assert [(t.J, t.J_up) for t in report.p_branch] == [(1, 0), (2, 1), (3, 2), (4, 3)]
    assert all(t.v == 0 and t.v_up == 1 for t in report.lines())
    assert all(t.branch == "R" for t in report.r_branch)
    assert all(t.branch == "P" for t in report.p_branch)
    assert len(report.lines()) == 9


def test_branches_straddle_center(hcl, h2):
    # each molecule is exercised to its deepest J_max before the R branch
    # folds back through the center: J = 31 for HCl, J = 13 for H2
    for params, j_cap in ((hcl, 20), (hcl, 31), (h2, 13)):
        report = fundamental_band(params, J_max=j_cap)
        assert max(t.wavenumber for t in report.p_branch) < report.center
        assert min(t.wavenumber for t in report.r_branch) > report.center
        # nearest lines are the tightest straddle
        assert report.p_branch[0].wavenumber < report.center < report.r_branch[0].wavenumber


def test_r_branch_band_head_is_rejected(hcl, h2, natural):
    # the rotational spacing shrinks with v, so high-J R lines cross back
    # below the center; the soft kappa=2 well crosses at J = 1 already
    with pytest.raises(DomainError, match="band head"):
        fundamental_band(h2, J_max=14)
    with pytest.raises(DomainError, match="band head"):
        fundamental_band(hcl, J_max=32)
    with pytest.raises(DomainError, match="band head"):
        fundamental_band(natural, J_max=1, constants=NATURAL)


def test_center_equals_forbidden_origin_line(hcl):
    # the band center is the (0,0)->(1,0) energy difference even though that
    # line violates dJ = +-1: it is a reference origin, not an emitted line
    report = fundamental_band(hcl, J_max=3)
    origin = energy_to_wavenumber(level_energy(1, 0, hcl) - level_energy(0, 0, hcl))
    assert report.center == origin
    assert report.center == transition_center(hcl)


def test_fundamental_band_requires_both_branches(hcl):
    with pytest.raises(DomainError):
        fundamental_band(hcl, J_max=0)


def test_band_report_invariants():
    line = Transition(v=0, J=1, v_up=1, J_up=0, wavenumber=150.0, branch="P")
    with pytest.raises(DomainError):
        BandReport(molecule="x", center=100.0, p_branch=(line,), r_branch=())
    rline = Transition(v=0, J=0, v_up=1, J_up=1, wavenumber=90.0, branch="R")
    with pytest.raises(DomainError):
        BandReport(molecule="x", center=100.0, p_branch=(), r_branch=(rline,))
    with pytest.raises(DomainError):
        BandReport(molecule="x", center=100.0, p_branch=(), r_branch=(), ratio=-1.0)


# -------------------------------------------------------------- comparison

def test_compare_hcl_flags_factor_two(hcl):
    report = fundamental_band(hcl, J_max=2)
    comp = compare_experiment(report, 2886.0)
    assert comp.ratio == pytest.approx(HCL_RATIO, rel=1e-12)
    assert comp.ratio == pytest.approx(2886.0 / 1195.0, rel=0.015)
    assert comp.more_than_twice
    assert comp.abs_deviation == pytest.approx(2886.0 - HCL_CENTER_CM1, rel=1e-12)
    assert comp.rel_deviation == pytest.approx(1 - HCL_CENTER_CM1 / 2886.0, rel=1e-12)


def test_compare_h2_within_factor_two(h2):
    comp = compare_experiment(fundamental_band(h2, J_max=2), 4160.2)
    assert comp.ratio == pytest.approx(H2_RATIO, rel=1e-12)
    assert not comp.more_than_twice


def test_compare_equal_inputs(hcl):
    report = fundamental_band(hcl, J_max=2)
    comp = compare_experiment(report, report.center)
    assert comp.ratio == 1.0
    assert comp.abs_deviation == 0.0
    assert comp.rel_deviation == 0.0
    assert not comp.more_than_twice


def test_compare_flag_is_strict(hcl):
    report = fundamental_band(hcl, J_max=2)
    assert not compare_experiment(report, 2.0 * report.center).more_than_twice
    with pytest.raises(DomainError):
        compare_experiment(report, 0.0)


def test_with_experiment_attaches_fields(hcl):
    report = fundamental_band(hcl, J_max=2)
    assert report.experimental_center is None and report.ratio is None
    tagged = with_experiment(report, 2886.0)
    assert tagged.experimental_center == 2886.0
    assert tagged.ratio == pytest.approx(HCL_RATIO, rel=1e-12)
    assert report.experimental_center is None


# --------------------------------------------------------------- reference

def test_bundled_band_centers():
    centers = load_band_centers()
    assert centers == {"HCl": 2886.0, "H2": 4160.2}


def test_band_centers_from_explicit_path(tmp_path):
    p = tmp_path / "centers.json"
    p.write_text('{"centers_cm1": {"XY": 123.5}}', encoding="utf-8")
    assert load_band_centers(p) == {"XY": 123.5}
    with pytest.raises(ConfigurationError):
        load_band_centers(tmp_path / "absent.json")
    bad = tmp_path / "bad.json"
    bad.write_text('{"wrong_key": 1}', encoding="utf-8")
    with pytest.raises(ConfigurationError):
        load_band_centers(bad)
