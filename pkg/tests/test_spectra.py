from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isospec import spectra
from isospec.spectra import (
    AmbiguousSplit,
    EigenvalueAssumption,
    IncompleteSplit,
    Inconsistent,
    IndexOutOfRange,
    antipodal_quotient_spectrum,
    conclude_first_eigenvalue,
    g6_11_bound_interval,
    harmonic_multiplicity,
    hopf_split_s3_quotient,
    minimal_dimension_eigenvalue_record,
    rescaled_fiber_spectrum,
    sphere_spectrum,
)


# ---------------------------------------------------------------------------
# round spheres and quotients

def test_unit_circle_table():
    s = sphere_spectrum(1, F(1), 10)
    assert s.entries[0] == (F(0), 1)
    for k in range(1, 11):
        assert s.entries[k] == (F(k * k), 2)


def test_sphere_half_squared_radius_table():
    s = sphere_spectrum(2, F(1, 2), 10)
    for k in range(11):
        assert s.entries[k] == (F(2 * k * (k + 1)), 2 * k + 1)


def test_circle_half_squared_radius_table():
    s = sphere_spectrum(1, F(1, 2), 10)
    for k in range(1, 11):
        assert s.entries[k] == (F(2 * k * k), 2)


def test_quotient_three_sphere_table():
    s = antipodal_quotient_spectrum(3, F(2), 10)
    assert len(s.entries) == 6  # even degrees 0..10
    for k in range(6):
        assert s.entries[k] == (F(2 * k * (k + 1)), (2 * k + 1) ** 2)


def test_kth_eigenvalue_skips_zero():
    s13 = sphere_spectrum(13, F(1), 20)
    assert s13.kth_eigenvalue(1) == 13
    assert s13.kth_eigenvalue(14) == 13
    assert s13.kth_eigenvalue(15) == 28
    s15 = sphere_spectrum(15, F(1), 20)
    assert s15.kth_eigenvalue(17) == 32


def test_kth_eigenvalue_out_of_range():
    s = sphere_spectrum(2, F(1), 2)
    with pytest.raises(IndexOutOfRange):
        s.kth_eigenvalue(1 + 3 + 5 + 1)


def test_projective_plane_obstruction_value():
    q = antipodal_quotient_spectrum(2, F(3, 4), 6)
    assert q.first_nonzero() == (F(8), 5)


def test_multiplicity_of():
    s = sphere_spectrum(3, F(1), 5)
    assert s.multiplicity_of(F(3)) == 4
    assert s.multiplicity_of(F(7)) == 0


@given(st.integers(min_value=1, max_value=30), st.integers(min_value=0, max_value=30))
@settings(max_examples=200)
def test_harmonic_multiplicity_recursion(n, k):
    # dim H_k(S^n) satisfies the two-term recursion of the binomial formula
    if k >= 2:
        from math import comb

        expected = comb(n + k, k) - comb(n + k - 2, k - 2)
        assert harmonic_multiplicity(n, k) == expected
    assert harmonic_multiplicity(n, k) > 0


@given(st.integers(min_value=1, max_value=12), st.integers(min_value=1, max_value=8),
       st.integers(min_value=1, max_value=9))
@settings(max_examples=100)
def test_radius_scaling_is_exact(n, num, den):
    unit = sphere_spectrum(n, F(1), 6)
    scaled = sphere_spectrum(n, F(num, den), 6)
    for (v, m), (w, mm) in zip(unit.entries, scaled.entries):
        assert m == mm
        assert w == v / F(num, den)


# ---------------------------------------------------------------------------
# submersion split and rescaling

def test_hopf_split_of_level_four():
    split = hopf_split_s3_quotient(10)
    parts = sorted(
        (e.base_part, e.fiber_part, e.dimension) for e in split.splitting_at(F(4))
    )
    assert parts == [(F(2), F(2), 6), (F(4), F(0), 3)]


def test_split_covers_low_levels_only():
    split = hopf_split_s3_quotient(10)
    determined = {e.total_eigenvalue for e in split.splittings}
    assert determined == {F(0), F(4)}
    assert split.undetermined[0].eigenvalue == F(12)
    assert split.undetermined[0].max_fiber_part == F(8)


def test_rescaled_first_eigenvalue():
    split = hopf_split_s3_quotient(10)
    rescaled = rescaled_fiber_spectrum(split, F(2))
    assert rescaled.first_nonzero() == (F(3), 6)
    assert rescaled.entries == ((F(0), 1), (F(3), 6), (F(4), 3))


def test_rescaled_identity_at_unit_scale():
    split = hopf_split_s3_quotient(10)
    same = rescaled_fiber_spectrum(split, F(1))
    assert same.entries == antipodal_quotient_spectrum(3, F(2), 10).entries


def test_rescaled_refuses_uncertified_range():
    split = hopf_split_s3_quotient(10)
    with pytest.raises(IncompleteSplit):
        rescaled_fiber_spectrum(split, F(2), max_eigenvalue=F(8))


def test_rescaled_rejects_nonpositive_scale():
    split = hopf_split_s3_quotient(10)
    with pytest.raises(ValueError):
        rescaled_fiber_spectrum(split, F(0))


def test_split_requires_enough_cutoff():
    with pytest.raises(ValueError):
        hopf_split_s3_quotient(1)


def test_splitting_at_undetermined_level_is_ambiguous():
    split = hopf_split_s3_quotient(10)
    with pytest.raises(AmbiguousSplit):
        split.splitting_at(F(12))
    with pytest.raises(IndexOutOfRange):
        split.splitting_at(F(5))


def test_bound_interval():
    interval = g6_11_bound_interval()
    assert tuple(interval) == (F(3), F(5))
    assert interval.pullback_obstruction == F(8)
    assert interval.obstruction_exceeds_upper
    assert interval.sphere_head[1] == (F(3), 4)


# ---------------------------------------------------------------------------
# conclusion records

def test_minimal_dimension_records():
    for dim, codim, mult in ((12, 1, 14), (10, 3, 14), (10, 5, 16)):
        rec = minimal_dimension_eigenvalue_record(dim, codim)
        assert rec.eigenvalue == dim
        assert rec.multiplicity_at_least == mult
        assert rec.status == "assumed"


def test_conclusion_accepts_consistent_certificate():
    from isospec.tube_integrals import g6_m2_ratio

    verdict = conclude_first_eigenvalue(
        g6_m2_ratio(), minimal_dimension_eigenvalue_record(10, 3)
    )
    assert verdict.passed
    assert verdict.lambda1 == 10
    assert verdict.multiplicity == 14


def test_conclusion_rejects_mismatched_index():
    from isospec.tube_integrals import g6_m2_ratio

    bad = EigenvalueAssumption(eigenvalue=F(10), multiplicity_at_least=20)
    with pytest.raises(Inconsistent):
        conclude_first_eigenvalue(g6_m2_ratio(), bad)
