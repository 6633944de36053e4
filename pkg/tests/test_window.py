import pytest
from conftest import window

from adakit.window import WindowRefused, _sccs, is_sectional, orbit_graph, rad_infinity_table, window_checks


def test_sccs():
    assert _sccs(4, [{1}, {2}, {0}, {3}]) == [[0, 1, 2], [3]]
    assert _sccs(3, [set(), set(), set()]) == [[0], [1], [2]]
    # long chain: the iterative walk must not hit the recursion limit
    n = 5000
    succ = [{i + 1} for i in range(n - 1)] + [{0}]
    assert _sccs(n, succ) == [list(range(n))]


def test_directed_rep_finite():
    c = window_checks(window("a5_rad2"))
    assert c.directed == {0: True} and c.convex == {0: True}
    assert c.directed_scope == "hom-digraph"
    assert c.generalized_standard == {0: True}
    assert not c.limited and not c.warnings


def test_loop_is_not_directed():
    W = window("loop")
    c = window_checks(W)
    assert c.directed == {0: False}
    assert c.cycles == [[0, 1]]


def test_large_window_falls_back_to_irreducible_maps():
    c = window_checks(window("mixed6_rad2"))
    assert c.directed_scope == "irreducible-maps"
    assert c.limited and c.generalized_standard is None
    assert any("rad^infinity refused" in w for w in c.warnings)


def test_rad_infinity_vanishes_on_rep_finite():
    steps, zero = rad_infinity_table(window("a5_rad2"))
    assert steps >= 1 and all(zero.values())
    with pytest.raises(WindowRefused):
        rad_infinity_table(window("kronecker"))


def test_orbit_graph_star():
    W = window("a5_rad2")
    g = orbit_graph(W, W.components()[0])
    # the simples' orbit is the centre; each projective-injective hangs off it
    assert len(g.vertices) == 5 and g.tree
    assert g.edges == [(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1)]


def test_orbit_graph_refused_on_open_component():
    W = window("kronecker")
    with pytest.raises(WindowRefused):
        orbit_graph(W, W.components()[0])


def test_sectional_rejects_mesh_turn():
    W = window("a5_rad2")
    i = W.index_of
    # S2 -> P3 -> S3 turns around a mesh: tau S3 = S2
    assert not is_sectional(W, [i("S2"), i("P3"), i("S3")])
