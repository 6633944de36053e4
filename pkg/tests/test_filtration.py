import pytest
from conftest import alg, window

from adakit.analysis import analyze
from adakit.filtration import happel_check, maximal_filtration, simple_connectedness, tree_type_check
from adakit.hochschild import hochschild_record


@pytest.fixture(scope="module")
def a5_rad2():
    an = analyze(alg("a5_rad2"), window("a5_rad2"))
    return an, maximal_filtration(alg("a5_rad2"), an)


def test_strips_sinks_down_to_left_support(a5_rad2):
    _, f = a5_rad2
    assert [s.vertex for s in f.steps] == ["5", "4"]
    assert list(f.base.labels) == ["1", "2", "3"]
    assert f.base_is_left_support
    for s in f.steps:
        assert s.reconstructed and s.separating and s.ext_vanishing
        assert s.summands == 1 and s.end_dim == 1
        assert s.successor_search == "exact"


def test_happel_identity(a5_rad2):
    _, f = a5_rad2
    for h in happel_check(f):
        assert h.alternating_sum == 0 and h.identity_holds
        assert h.higher_equal and h.hh1_equal and h.separating_criterion


def test_happel_reuses_records(a5_rad2):
    _, f = a5_rad2
    records = {}
    happel_check(f, records=records)
    # A, A minus 5, A minus 4 and 5
    assert len(records) == 3


def test_refusals():
    an = analyze(alg("a6_rad2"), window("a6_rad2"))
    assert maximal_filtration(alg("a6_rad2"), an).refused == "algebra is not ada"
    kr = analyze(alg("kronecker"), window("kronecker"))
    f = maximal_filtration(alg("kronecker"), kr)
    assert f.refused is None and f.steps == [] and f.base_is_left_support


def test_window_limited_step_is_noted():
    an = analyze(alg("mixed6_rad2"), window("mixed6_rad2"))
    f = maximal_filtration(alg("mixed6_rad2"), an)
    assert [s.vertex for s in f.steps] == ["6"]
    assert f.steps[0].successor_search == "window"
    assert any("window-limited" in n for n in f.notes)


def test_simple_connectedness(a5_rad2):
    an, f = a5_rad2
    sc = simple_connectedness(an, hochschild_record(alg("a5_rad2")), f)
    assert sc.verdict is True and sc.coherent and sc.ring_is_field
    assert sc.tree_type is True and sc.separating == [True, True]


def test_simple_connectedness_kronecker():
    an = analyze(alg("kronecker"), window("kronecker"))
    sc = simple_connectedness(an, hochschild_record(alg("kronecker")))
    assert sc.verdict is False and sc.hh1 == 3
    assert sc.tree_type is None and sc.coherent is None
    assert sc.caveats


def test_simple_connectedness_refused_for_not_ada():
    an = analyze(alg("loop"), window("loop"))
    sc = simple_connectedness(an, hochschild_record(alg("loop")))
    assert sc.refused and sc.verdict is None


def test_tree_type_needs_sections():
    an = analyze(alg("a5_rad2"), window("a5_rad2"), sections=False)
    assert tree_type_check(an) == (None, "Sigma sets not computed")
