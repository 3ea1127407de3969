"""One test per acceptance criterion; each prints a single summary line.

Criterion 11 is a non-blocking stretch goal: a "skip" status becomes a
pytest skip, never a failure.  Criterion 1 reports the best-effort entry as
skipped inside its measured values without failing the suite.
"""

import pytest

from symmlab import acceptance


@pytest.fixture(scope="module")
def ctx():
    return acceptance.Context()


def _check(result, capsys=None):
    print()
    print(result.line())
    if result.status == "skip":
        pytest.skip(result.measured.get("reason", "skipped"))
    assert result.status == "pass", result.measured


def test_criterion_01_golden_orders(ctx):
    _check(acceptance.criterion_1(ctx))


def test_criterion_02_auths_golden(ctx):
    _check(acceptance.criterion_2(ctx))


def test_criterion_03_example_63_end_to_end(ctx):
    _check(acceptance.criterion_3(ctx))


def test_criterion_04_theorem_12_instances(ctx):
    _check(acceptance.criterion_4(ctx))


def test_criterion_05_property_suites(ctx):
    _check(acceptance.criterion_5(ctx))


def test_criterion_06_kqq_subgroups(ctx):
    _check(acceptance.criterion_6(ctx))


def test_criterion_07_construction_ii_claims(ctx):
    _check(acceptance.criterion_7(ctx))


def test_criterion_08_counting_identities(ctx):
    _check(acceptance.criterion_8(ctx))


def test_criterion_09_triangle_counts(ctx):
    _check(acceptance.criterion_9(ctx))


def test_criterion_10_engine_suites(ctx):
    _check(acceptance.criterion_10(ctx))


def test_criterion_11_stretch_full_aut(ctx):
    _check(acceptance.criterion_11(ctx))
