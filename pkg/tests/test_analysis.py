import pytest
from conftest import alg, window

from adakit.analysis import (CERTIFIED, NOT_ADA, QUASI_TILTED, STRICT, WINDOW_LIMITED, analyze, classify,
                             cover_check, dimension_bound_check, is_convex, membership_table,
                             projective_injective_isos)


@pytest.fixture(scope="module")
def runs():
    return {n: analyze(alg(n), window(n)) for n in ("point", "loop", "kronecker", "a5_rad2", "a6_rad2")}


@pytest.mark.parametrize("name,kind", [("point", QUASI_TILTED), ("kronecker", QUASI_TILTED),
                                       ("loop", NOT_ADA), ("a5_rad2", STRICT), ("a6_rad2", NOT_ADA)])
def test_classification(runs, name, kind):
    c = runs[name].classification
    assert c.kind == kind and c.confidence == CERTIFIED


def test_not_ada_obstructions(runs):
    assert runs["a6_rad2"].classification.obstructions == ["I3", "P4"]
    assert runs["loop"].classification.obstructions == ["P1", "I1"]


def test_membership_table_rows(runs):
    rows = membership_table(runs["a5_rad2"].classification)
    assert set(rows) == {f"{t}{x}" for t in "PI" for x in "12345"}
    assert rows["P5"]["L"]["status"] == "no" and rows["P5"]["R"]["status"] == "yes"


def test_supports_a5_rad2(runs):
    sup = runs["a5_rad2"].supports
    assert sup.left.vertices == ["1", "2", "3"]
    assert sup.right.vertices == ["3", "4", "5"]
    assert sup.cover is True and sup.common == ["3"]
    assert sup.left.convex and sup.right.convex
    assert all(p["gd_at_most_2"] for p in sup.left.pieces + sup.right.pieces)


def test_cover_and_dimension_bounds(runs):
    an = runs["a5_rad2"]
    assert cover_check(an.engine, an.supports) == []
    assert dimension_bound_check(an.window) == []
    bad = runs["a6_rad2"]
    assert dimension_bound_check(bad.window) == ["S4"]
    assert cover_check(bad.engine, bad.supports) == ["P4", "S3", "S4"]


def test_projective_injective_isos(runs):
    assert projective_injective_isos(runs["a5_rad2"].window) == [
        ("P2", "I1"), ("P3", "I2"), ("P4", "I3"), ("P5", "I4")]
    assert projective_injective_isos(runs["kronecker"].window) == []


def test_structure_report(runs):
    an = runs["a5_rad2"]
    st = an.structure
    assert st.refused is None
    (rec,) = st.components
    assert {an.window.label(i) for i in rec.sigma} == {"P4", "S4", "P5"}
    assert rec.complete and rec.directed and rec.orbit_tree and rec.section.ok
    assert rec.generalized_standard
    assert "not strict-ada" in runs["kronecker"].structure.refused


def test_middle_part(runs):
    (m,) = runs["a5_rad2"].middle
    assert m.label == "S3"
    assert m.left_witness.replay() and m.right_witness.replay()
    assert m.in_common_support
    assert m.generated and m.cogenerated
    assert m.from_sigma_prime[-1] == "S3" and m.to_sigma[0] == "S3"


def test_is_convex():
    A = alg("a5_rad2")
    assert is_convex(A, [0, 1, 2])
    assert not is_convex(A, [0, 2])


def test_sections_flag():
    an = analyze(alg("a5_rad2"), window("a5_rad2"), sections=False)
    assert an.sigma is None and an.middle == []
    assert an.structure.refused == "sections not requested"
    assert an.classification.kind == STRICT


def test_window_limited_strict_example():
    an = analyze(alg("mixed6_rad2"), window("mixed6_rad2"))
    c = an.classification
    assert c.kind == STRICT and c.confidence == WINDOW_LIMITED
    assert any("window-certified" in w or "incomplete" in w for w in an.warnings)
    assert len(an.structure.components) == 2
    assert an.structure.cross_homs


def test_classify_reuses_engine(runs):
    an = runs["a5_rad2"]
    c = classify(an.algebra, an.window, an.engine)
    assert c.kind == STRICT
