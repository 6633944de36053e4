import pytest
from conftest import alg, window

from adakit.ar import almost_split_sequence, tau, tau_dimension_check, tau_inv
from adakit.decompose import is_isomorphic
from adakit.knit import aliases, knit
from adakit.rep import injective, projective, simple
from adakit.window import is_sectional


def test_translate_on_simples():
    A = alg("a5_rad2")
    for x in range(1, 5):
        t = tau(simple(A, x))
        assert t is not None and t.dims == simple(A, x - 1).dims
        assert tau_dimension_check(simple(A, x), t)
    assert tau(projective(A, 2)) is None
    assert tau_inv(injective(A, 1)) is None


def test_kronecker_preprojectives():
    A = alg("kronecker")
    M = projective(A, 1)
    seen = [M.dims]
    for _ in range(3):
        M = tau_inv(M)
        seen.append(M.dims)
    assert seen == [(0, 1), (2, 3), (4, 5), (6, 7)]
    assert tau(projective(A, 0)) is None
    assert tau_inv(projective(A, 0)).dims == (3, 4)


def test_almost_split_kronecker():
    A = alg("kronecker")
    M = tau_inv(projective(A, 1))
    seq = almost_split_sequence(M)
    assert seq.left.dims == (0, 1)
    assert sorted(s.dims for s in seq.summands) == [(1, 2), (1, 2)]
    assert seq.is_exact() and seq.is_nonsplit()


def test_almost_split_a5_rad2_simple():
    A = alg("a5_rad2")
    seq = almost_split_sequence(simple(A, 2))
    assert [s.dims for s in seq.summands] == [(0, 1, 1, 0, 0)]
    assert seq.is_exact() and seq.is_nonsplit()


def test_a5_rad2_window_shape():
    W = window("a5_rad2")
    assert W.complete and not W.boundary
    assert len(W) == 9
    assert len(W.arrows) == 8
    assert len(W.tau) == 4
    assert len(W.components()) == 1
    assert W.index_of("I3") == W.index_of("P4")
    assert "I5" in aliases(W, W.index_of("S5"))


def test_kronecker_window_is_window_limited():
    W = window("kronecker")
    assert not W.complete and W.boundary
    comps = W.components()
    assert len(comps) == 2
    # arrows carry multiplicity two
    assert {m for _, _, m in W.arrows} == {2}


def test_seed_modes():
    A = alg("a5_rad2")
    for seeds in ("projectives", "injectives"):
        W = knit(A, seeds=seeds)
        assert len(W) == 9 and W.complete
    with pytest.raises(ValueError):
        knit(A, seeds="middle")
    with pytest.raises(ValueError):
        knit(A, budget=0)


def test_max_dim_truncation_noted():
    W = knit(alg("kronecker"), budget=50, max_dim=6)
    assert all(M.dim <= 6 for M in W.modules)
    assert not W.complete
    assert any("max_dim" in n for n in W.notes)


def test_window_modules_distinct_and_indecomposable():
    W = window("mixed6_rad2")
    mods = W.modules
    for i, M in enumerate(mods):
        for N in mods[i + 1:]:
            if M.dims == N.dims:
                assert not is_isomorphic(M, N)


def test_sectional_paths():
    W = window("a5_rad2")
    i = W.index_of
    assert is_sectional(W, [i("P3"), i("S3"), i("P4")])
    with pytest.raises(ValueError):
        is_sectional(W, [i("P1"), i("P5")])
