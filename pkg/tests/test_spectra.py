"""Tests for energy levels, closed forms, and exceptional points."""

import math
from fractions import Fraction

import pytest

from qeslab import realroots
from qeslab.recurrence import EVEN, ODD, critical_polynomial
from qeslab.spectra import (
    BranchCutAmbiguityError,
    CLOSED_FORM_LEVELS,
    closed_form_check,
    closed_form_values,
    energies,
    exceptional_points,
    hausdorff,
    rational_energy_coeffs,
)

F = Fraction


def test_energies_N1_even_zeta1():
    lv = energies(critical_polynomial(EVEN, 1), 1)
    expect = [2 - math.sqrt(3), 2 + math.sqrt(3)]
    assert hausdorff(lv.roots, expect) < 1e-12
    assert lv.classification == ("real", "real")
    assert max(lv.residuals) < 1e-12


def test_energies_N32_odd_exceptional_double_root():
    lv = energies(critical_polynomial(ODD, F(3, 2)), 6)
    assert hausdorff(lv.roots, [10.0, 10.0]) < 1e-6
    assert lv.classification == ("real", "real")


def test_energies_N_half_single_root():
    for zeta in (F(1, 2), F(7), F(0)):
        lv = energies(critical_polynomial(EVEN, F(1, 2)), zeta)
        assert lv.roots == (0j,)


def test_energies_complex_pair_above_exceptional_point():
    # N=1 even: exceptional point at zeta = 2; above it the pair is complex.
    lv = energies(critical_polynomial(EVEN, 1), F(5, 2))
    assert sorted(lv.classification) == ["complex-conjugate-pair",
                                         "complex-conjugate-pair"]
    a, b = lv.roots
    assert abs(a - b.conjugate()) < 1e-12


def test_energies_rejects_constant():
    prob = critical_polynomial(EVEN, 1)
    with pytest.raises(ValueError):
        energies(prob, 1, precision=-1)


@pytest.mark.parametrize("N,parity", [(F(1), EVEN), (F(3, 2), EVEN),
                                      (F(2), EVEN), (F(3, 2), ODD),
                                      (F(2), ODD)])
def test_zeta_zero_spectrum_is_free_rotor(N, parity):
    prob = critical_polynomial(parity, N)
    coeffs = rational_energy_coeffs(prob, 0)
    start = 0 if parity == EVEN else 1
    expected = [F(4 * k * k) for k in range(start, int(2 * N))]
    # Exact rational root check.
    for r in expected:
        assert realroots.poly_eval(coeffs, r) == 0
    lv = energies(prob, 0)
    assert hausdorff(lv.roots, [float(r) for r in expected]) < 1e-8


def test_roots_real_and_simple_below_first_exceptional_point():
    for N, parity in [(F(1), EVEN), (F(3, 2), EVEN), (F(2), ODD)]:
        prob = critical_polynomial(parity, N)
        zeta0 = exceptional_points(N, parity)[0].interval[0]
        zeta = zeta0 / 2
        coeffs = rational_energy_coeffs(prob, zeta)
        assert realroots.count_real_roots(coeffs) == prob.degree()


def test_real_root_count_drops_by_two_above_exceptional_point():
    for N, parity in [(F(1), EVEN), (F(3, 2), EVEN), (F(2), EVEN)]:
        prob = critical_polynomial(parity, N)
        for point in exceptional_points(N, parity):
            lo, hi = point.interval
            below = realroots.count_real_roots(
                rational_energy_coeffs(prob, lo - F(1, 1000)))
            above = realroots.count_real_roots(
                rational_energy_coeffs(prob, hi + F(1, 1000)))
            assert below - above == 2, (N, parity, point.zeta0)


def test_root_collision_at_exceptional_point():
    for N, parity in [(F(1), EVEN), (F(3, 2), ODD), (F(2), EVEN)]:
        prob = critical_polynomial(parity, N)
        point = exceptional_points(N, parity)[0]
        zeta0 = F(point.interval[0] + point.interval[1]) / 2

        def min_gap(z):
            rs = energies(prob, z).roots
            return min(abs(a - b) for i, a in enumerate(rs)
                       for b in rs[i + 1:])

        assert min_gap(zeta0) < 1e-3
        assert min_gap(zeta0 / 2) > 1e-1


def test_exceptional_points_N1_even_is_two():
    points = exceptional_points(1, EVEN)
    assert len(points) == 1
    lo, hi = points[0].interval
    assert lo <= 2 <= hi and hi - lo <= F(1, 10**8)
    assert abs(points[0].zeta0_times_N - 2.0) < 1e-8


def test_exceptional_points_none_for_degree_one():
    assert exceptional_points(F(1, 2), EVEN) == []


def test_exceptional_points_interval_width():
    for point in exceptional_points(F(5, 2), ODD):
        lo, hi = point.interval
        assert hi - lo <= F(1, 10**8)


def test_exceptional_points_match_table_row_N3():
    got = [p.zeta0_times_N for p in exceptional_points(3, EVEN)]
    assert len(got) == 3
    for value, printed in zip(got, (1.6047, 18.6864, 60.535)):
        assert abs(value - printed) < 5e-4
    got_odd = [p.zeta0_times_N for p in exceptional_points(3, ODD)]
    for value, printed in zip(got_odd, (7.6688, 35.5683)):
        assert abs(value - printed) < 5e-5


def test_scaled_zeros_decrease_toward_limit_row():
    first_column = []
    for N in (F(1), F(3, 2), F(2), F(5, 2), F(3)):
        first_column.append(exceptional_points(N, EVEN)[0].zeta0_times_N)
    assert all(a > b for a, b in zip(first_column, first_column[1:]))
    assert first_column[-1] > 1.46877  # approached from above


# -- closed forms ------------------------------------------------------------


def test_e2c_at_exceptional_point_double_value():
    vals = closed_form_values("E2c", 2.0)
    assert vals == [2.0, 2.0]
    assert closed_form_check("E2c", 2) < 1e-9


def test_e3s_at_zero_coupling_free_rotor_values():
    vals = sorted(v.real for v in closed_form_values("E3s", 0.0))
    assert vals == [4.0, 16.0]


def test_e3c_at_zero_coupling():
    vals = sorted(v.real for v in closed_form_values("E3c", 0.0))
    assert max(abs(a - b) for a, b in zip(vals, (0.0, 4.0, 16.0))) < 1e-12


@pytest.mark.parametrize("level", sorted(CLOSED_FORM_LEVELS))
@pytest.mark.parametrize("zeta", [F(1, 2), F(1), F(3, 2)])
def test_closed_forms_match_companion_roots(level, zeta):
    assert closed_form_check(level, zeta) < 1e-9


def test_closed_form_check_raises_on_mismatch():
    with pytest.raises(BranchCutAmbiguityError):
        closed_form_check("E4s", 1, tolerance=1e-18)


def test_closed_form_complex_regime_continues_analytically():
    # Above the first exceptional point of E3c the triple has a conjugate
    # pair; the principal branch still matches the root set.
    assert closed_form_check("E3c", F(3, 2)) < 1e-9
    vals = closed_form_values("E3c", 1.5)
    imag = sorted(abs(v.imag) for v in vals)
    assert imag[0] < 1e-9 and imag[-1] > 1e-3
