"""Acceptance gate: one test per criterion, each printing its pass/fail line."""

import pytest

from fueter import acceptance

CRITERIA = {fn.__name__: fn for fn in acceptance.ALL_CRITERIA}


def check(name):
    res = CRITERIA[name]()
    print(acceptance.format_result(res))
    assert res.passed, acceptance.format_result(res)


def test_criterion_1_cubic_round_trip():
    check("criterion_1")


def test_criterion_2_worked_inversion_closed_forms():
    check("criterion_2")


def test_criterion_3_spherical_mean_inversions():
    check("criterion_3")


def test_criterion_4_transform_kernel():
    check("criterion_4")


def test_criterion_5_antiderivative_oracle():
    check("criterion_5")


def test_criterion_6_radial_expansion_identities():
    check("criterion_6")


def test_criterion_7_sphere_quadrature_agreement():
    check("criterion_7")


def test_criterion_8_laplacian_oracle_agreement():
    check("criterion_8")


def test_criterion_9_algebra_property_suite():
    check("criterion_9")


def test_all_criteria_covered():
    assert len(acceptance.ALL_CRITERIA) == 9
    assert sorted(CRITERIA) == [f"criterion_{i}" for i in range(1, 10)]
