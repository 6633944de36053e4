"""The engine against the independent models in oracles.py."""

import pytest
from conftest import alg, window
from oracles import LinearNakayama, PathAlgebra

from adakit.hochschild import hh0_dim, hh1_dim, hh_dims_relative, pi1_export
from adakit.homology import fast_hom_dim, global_dimension, hom_dim_presented, inj_dim, proj_dim
from adakit.knit import aliases
from adakit.parts import YES, Membership, sigma_sets
from adakit.rep import hom_dim


def interval(M):
    sup = M.support()
    assert all(M.dims[x] == 1 for x in sup), "expected a thin module"
    lo, hi = min(sup) + 1, max(sup) + 1
    assert sup == list(range(lo - 1, hi))
    return (lo, hi)


@pytest.mark.parametrize("name,n", [("a5_rad2", 5), ("a6_rad2", 6)])
def test_indecomposable_count(name, n):
    orc = LinearNakayama(n, 1)
    W = window(name)
    assert W.complete
    assert len(W) == len(orc.indecomposables())
    assert sorted(interval(M) for M in W.modules) == sorted(orc.indecomposables())


def test_oracle_counts_by_hand():
    # thin intervals of length <= L+1 survive
    assert len(LinearNakayama(5, 1).indecomposables()) == 9
    assert len(LinearNakayama(5, 2).indecomposables()) == 12
    assert len(LinearNakayama(4, 3).indecomposables()) == 10


def test_hom_dims_match_oracle():
    orc = LinearNakayama(5, 1)
    W = window("a5_rad2")
    for M in W.modules:
        for N in W.modules:
            want = orc.hom_dim(interval(M), interval(N))
            assert hom_dim(M, N) == want
            assert fast_hom_dim(M, N) == want
            assert hom_dim_presented(M, N) == want


def test_dimensions_match_oracle():
    orc = LinearNakayama(5, 1)
    W = window("a5_rad2")
    for M in W.modules:
        iv = interval(M)
        assert proj_dim(M) == orc.pd(iv)
        assert inj_dim(M) == orc.id(iv)
    assert global_dimension(alg("a5_rad2")) == orc.gldim() == 4


def test_translate_matches_oracle():
    orc = LinearNakayama(5, 1)
    W = window("a5_rad2")
    for i, nd in enumerate(W.nodes):
        t = orc.tau(interval(nd.module))
        if t is None:
            assert nd.proj_vertex is not None
        else:
            assert interval(W.nodes[nd.tau].module) == t


def test_parts_match_reachability_oracle():
    orc = LinearNakayama(5, 1)
    W = window("a5_rad2")
    eng = Membership(W)
    L = {interval(W.nodes[i].module) for i in range(len(W)) if eng.left(i).status == YES}
    R = {interval(W.nodes[i].module) for i in range(len(W)) if eng.right(i).status == YES}
    assert L == orc.left_part()
    assert R == orc.right_part()
    sig, sigp = sigma_sets(eng)
    assert {interval(W.nodes[i].module) for i in sig.all} == orc.sigma()
    assert {interval(W.nodes[i].module) for i in sigp.all} == orc.sigma_prime()


def test_sigma_labels_by_hand():
    W = window("a5_rad2")
    sig, sigp = sigma_sets(Membership(W))
    names = lambda ids: {a for i in ids for a in aliases(W, i)}
    assert {"P4", "P5", "S4"} <= names(sig.all)
    assert {"I1", "I2", "S2"} <= names(sigp.all)


ORACLE_ALGEBRAS = {
    "kronecker": PathAlgebra(2, [("a", 1, 2), ("b", 1, 2)]),
    "a5_rad2": PathAlgebra(5, [("b1", 2, 1), ("b2", 3, 2), ("b3", 4, 3), ("b4", 5, 4)], loewy=2),
    "loop": PathAlgebra(1, [("x", 1, 1)], loewy=2),
    "point": PathAlgebra(1, []),
    "mixed6_rad2": PathAlgebra(6, [("a", 1, 2), ("b", 2, 3), ("c", 4, 3), ("d1", 5, 4), ("d2", 5, 4),
                            ("f", 6, 5)], loewy=2),
}


@pytest.mark.parametrize("name", sorted(ORACLE_ALGEBRAS))
def test_low_hochschild_matches_leibniz_solve(name):
    orc = ORACLE_ALGEBRAS[name]
    A = alg(name)
    assert A.dim == orc.dim
    assert hh0_dim(A) == orc.hh0()
    assert hh1_dim(A) == orc.hh1()
    rel = hh_dims_relative(A, 1)
    assert rel.dims[:2] == [orc.hh0(), orc.hh1()]


def test_kronecker_leibniz_values():
    orc = ORACLE_ALGEBRAS["kronecker"]
    assert (orc.derivation_dim(), orc.center_dim(), orc.hh1()) == (6, 1, 3)


def test_free_rank_matches_graph_count():
    for name in ("kronecker", "a5_rad2", "point"):
        orc = ORACLE_ALGEBRAS[name]
        p = pi1_export(alg(name))
        assert p.free_rank == orc.free_rank()
