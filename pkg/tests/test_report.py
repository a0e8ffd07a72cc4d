import math

import pytest

from qcspec.bounds import bessel_j0_first_zero
from qcspec.errors import InvalidParameterError
from qcspec.maps import Ellipse, Epicycloid, Identity, RosePetal
from qcspec.report import (
    SWEEP_COLUMNS,
    analyze_report,
    make_family,
    paper_table,
    round_floats,
    sweep,
    sweep_values,
    verify_report,
    worker_count,
)

J01_SQ = bessel_j0_first_zero() ** 2

ANALYZE_KEYS = {
    "family",
    "params",
    "lambda_ref",
    "K",
    "J_sup_analytic",
    "K_J_sup",
    "qc_lower",
    "growth_gap",
    "growth_gap_note",
    "J_sup_grid",
    "image_area",
    "faber_krahn",
    "inradius",
    "inradius_method",
    "makai",
    "hersch",
    "sobolev_A22_upper",
    "max_boundary_modulus",
    "image_in_reference",
    "grid",
}

VERIFY_KEYS = {
    "family",
    "params",
    "rings",
    "tol",
    "lambda_ref",
    "K",
    "K_J_sup",
    "qc_lower",
    "fem_lambda",
    "margin",
    "gap_bound",
    "gap_margin",
    "residual",
    "iterations",
    "ok",
}

TABLE_ROW_KEYS = {
    "section",
    "family",
    "a",
    "A",
    "B",
    "n",
    "K",
    "K_J_sup",
    "qc_lower",
    "hersch",
    "qc_wins",
    "gap_bound",
    "fem_lambda",
    "fem_gap",
    "margin",
    "gap_margin",
    "status",
    "note",
}


def test_make_family():
    assert make_family("identity") == Identity()
    assert make_family("ellipse", a=0.5) == Ellipse(a=0.5)
    assert make_family("rose-petal", a=0.9) == RosePetal(a=0.9)
    assert make_family("epicycloid", A=0.2, B=0.05, n=3) == Epicycloid(A=0.2, B=0.05, n=3)
    with pytest.raises(InvalidParameterError):
        make_family("ellipse")
    with pytest.raises(InvalidParameterError):
        make_family("epicycloid", A=0.2)
    with pytest.raises(InvalidParameterError):
        make_family("square")


def test_analyze_schema_is_stable():
    for family in (Identity(), Ellipse(a=0.125), RosePetal(a=0.9), Epicycloid(A=0.2, B=0.05, n=3)):
        assert set(analyze_report(family).keys()) == ANALYZE_KEYS


def test_analyze_rose_petal_example():
    rec = analyze_report(RosePetal(a=0.9))
    assert rec["K"] == 2.0
    assert rec["K_J_sup"] == pytest.approx(0.81, abs=1e-15)
    assert rec["growth_gap"] == pytest.approx(0.19 / 0.81 * J01_SQ, rel=1e-12)
    assert rec["growth_gap"] == pytest.approx(1.3565497938, rel=1e-9)
    assert rec["growth_gap_note"] is None
    assert rec["hersch"] is None
    assert rec["inradius_method"] == "grid"
    assert not rec["image_in_reference"]


def test_analyze_unit_disc_bounds_coincide():
    rec = analyze_report(Ellipse(a=0.0))
    assert rec["qc_lower"] == pytest.approx(J01_SQ, rel=1e-14)
    # faber_krahn uses the quadrature area, so agreement is at quadrature level
    assert rec["faber_krahn"] == pytest.approx(rec["qc_lower"], rel=1e-6)
    assert rec["hersch"] == pytest.approx(math.pi**2 / 4, rel=1e-6)
    assert rec["image_in_reference"]


def test_analyze_epicycloid_example():
    rec = analyze_report(Epicycloid(A=0.2, B=0.05, n=3))
    assert rec["K"] == pytest.approx(5.0 / 3.0, rel=1e-15)
    assert rec["J_sup_analytic"] == pytest.approx(0.15, rel=1e-15)
    assert rec["K_J_sup"] == pytest.approx(0.25, rel=1e-14)
    assert rec["growth_gap"] == pytest.approx(3 * J01_SQ, rel=1e-12)


def test_analyze_vacuous_gap_notes():
    rec = analyze_report(Ellipse(a=0.125))
    assert rec["growth_gap"] is None
    assert rec["growth_gap_note"] == "vacuous: K*J_sup >= 1"
    # A+B >= 1/2 renders a note, it does not raise
    rec = analyze_report(Epicycloid(A=0.3, B=0.25, n=3))
    assert rec["growth_gap"] is None
    assert rec["growth_gap_note"] == "hypothesis A+B<1/2 fails"


def test_sobolev_a22_consistent_with_qc_lower():
    for family in (Identity(), Ellipse(a=0.3), RosePetal(a=0.7)):
        rec = analyze_report(family)
        assert rec["sobolev_A22_upper"] == pytest.approx(1.0 / math.sqrt(rec["qc_lower"]), abs=1e-14)


def test_verify_schema_and_identity_run():
    rec = verify_report(Identity(), rings=16)
    assert set(rec.keys()) == VERIFY_KEYS
    assert rec["ok"]
    assert rec["margin"] >= 0
    assert rec["gap_bound"] is None
    assert J01_SQ <= rec["fem_lambda"] <= 1.01 * J01_SQ


def test_verify_rose_petal_gap_check():
    rec = verify_report(RosePetal(a=0.9), rings=16)
    assert rec["gap_bound"] == pytest.approx(0.19 / 0.81 * J01_SQ, rel=1e-12)
    assert rec["gap_margin"] is not None and rec["gap_margin"] >= 0
    assert rec["ok"]


def test_sweep_values_and_validation():
    values = sweep_values(0.0, 0.5, 0.025)
    assert len(values) == 21
    assert values[0] == 0.0
    assert values[-1] == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(InvalidParameterError):
        sweep_values(0.0, 0.5, -0.1)
    with pytest.raises(InvalidParameterError):
        sweep_values(0.0, 0.5, 0.7)  # single sample
    with pytest.raises(InvalidParameterError):
        sweep_values(0.5, 0.0, 0.1)  # empty range


def test_sweep_rows_ordered_with_fixed_columns():
    result = sweep("ellipse", "a", 0.1, 0.3, 0.05)
    assert result["columns"] == list(SWEEP_COLUMNS)
    params = [row["parameter"] for row in result["rows"]]
    assert params == sorted(params)
    assert len(params) == 5
    for row in result["rows"]:
        assert set(row.keys()) == set(SWEEP_COLUMNS)
        assert row["fem_lambda"] is None  # FEM is opt-in
        assert row["hersch"] is not None  # ellipse images are convex


def test_sweep_brackets_hersch_crossover():
    result = sweep("ellipse", "a", 0.2, 0.23, 0.01)
    diffs = [row["qc_minus_hersch"] for row in result["rows"]]
    flips = sum(1 for u, v in zip(diffs, diffs[1:]) if (u > 0) != (v > 0))
    assert flips == 1


def test_sweep_invalid_family_value_errors():
    with pytest.raises(InvalidParameterError):
        sweep("rose-petal", "a", 0.5, 1.1, 0.2)  # a = 1.1 out of range


def test_paper_table_structure_small_rings(monkeypatch):
    monkeypatch.setenv("QCSPEC_THREADS", "2")
    table = paper_table(rings=8, rose_petal_rings=8, tol=1e-8)
    rows = table["rows"]
    assert len(rows) == 11
    assert [row["section"] for row in rows] == (
        ["ellipse-vs-hersch"] * 5 + ["rose-petal-gap"] * 3 + ["epicycloid-gap"] * 3
    )
    for row in rows:
        assert set(row.keys()) == TABLE_ROW_KEYS
    assert table["crossover_a"] == pytest.approx(0.2145603892, abs=1e-9)
    ellipse_rows = rows[:5]
    assert [row["a"] for row in ellipse_rows][:3] == [0.0, 1 / 16, 0.125]
    assert ellipse_rows[3]["a"] == pytest.approx(table["crossover_a"], abs=1e-12)
    assert all(row["qc_wins"] is not None for row in ellipse_rows)
    error_row = rows[9]
    assert error_row["status"] == "error"
    assert error_row["A"] == error_row["B"] == 0.2
    assert error_row["fem_lambda"] is None
    ok_rows = [row for row in rows if row["status"] == "ok"]
    assert all(row["margin"] >= 0 for row in ok_rows)
    for row in rows[5:8]:
        assert row["gap_margin"] is not None and row["gap_margin"] >= 0


def test_worker_count(monkeypatch):
    monkeypatch.setenv("QCSPEC_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("QCSPEC_THREADS", "zero")
    with pytest.raises(InvalidParameterError):
        worker_count()
    monkeypatch.setenv("QCSPEC_THREADS", "0")
    with pytest.raises(InvalidParameterError):
        worker_count()
    monkeypatch.delenv("QCSPEC_THREADS")
    assert worker_count() >= 1


def test_round_floats():
    assert round_floats(math.pi) == 3.14159265359
    assert round_floats({"x": [1.0 / 3.0, None, "s"]}) == {"x": [0.333333333333, None, "s"]}
