from conftest import alg, window

from adakit.knit import knit
from adakit.parts import (NO, UNKNOWN, YES, Membership, ann_quotient_slice, annihilator, l_membership,
                          r_membership, right_section_check, sigma_sets)
from adakit.rep import projective, simple


def engine(name, budget=None):
    return Membership(window(name) if budget is None else window(name, budget))


def test_rep_finite_rule_and_witnesses():
    eng = engine("a5_rad2")
    W = eng.W
    for i in range(len(W)):
        for v in (eng.left(i), eng.right(i)):
            assert v.status in (YES, NO)
            assert v.certified
            if v.status == NO:
                assert v.witness is not None and v.witness.replay()
                assert v.rule in ("witness", "repfinite-exact")
            else:
                assert v.rule == "repfinite-exact" and v.witness is None


def test_witness_shape():
    eng = engine("a5_rad2")
    v = eng.left(eng.W.index_of("S5"))
    w = v.witness
    assert v.status == NO and w.kind == "pd"
    # chain ends at the module tested
    assert w.labels[-1] in ("S5", "I5")
    assert all(h > 0 for h in w.homs)
    assert len(w.homs) == len(w.modules) - 1


def test_tampered_witness_fails_replay():
    eng = engine("a5_rad2")
    w = eng.left(eng.W.index_of("S5")).witness
    A = eng.A
    w.modules[0] = projective(A, 0)
    w.homs = [0] * len(w.homs)
    assert not w.replay()


def test_hereditary_rule():
    eng = engine("kronecker")
    W = eng.W
    for i in range(len(W)):
        v = eng.left(i)
        assert v.status == YES and v.rule == "hereditary-exact" and v.certified


def test_verdict_for_outside_module():
    A = alg("a5_rad2")
    W = window("a5_rad2")
    assert l_membership(simple(A, 0), W).status == YES
    assert r_membership(simple(A, 0), W).status == NO
    assert r_membership(simple(A, 4), W).status == YES


def test_finite_window_verdicts_on_wild_example():
    W = knit(alg("double_a4_rad2"), budget=40)
    eng = Membership(W)
    seen = set()
    for i in range(len(W)):
        for v in (eng.left(i), eng.right(i)):
            seen.add(v.status)
            if v.status == NO:
                assert v.witness.replay()
            if v.status == UNKNOWN or v.rule == "cone-finite-window":
                assert not v.certified and v.caveat
    assert NO in seen


def test_sigma_sets_a5_rad2():
    eng = engine("a5_rad2")
    sig, sigp = sigma_sets(eng)
    lab = lambda s: {eng.W.label(i) for i in s.all}
    assert lab(sig) == {"P4", "S4", "P5"}
    assert lab(sigp) == {"P2", "S2", "P3"}
    assert not sig.pending and not sigp.pending
    assert sig.tests[eng.W.index_of("P5")] == "projective"


def test_right_section_a5_rad2():
    eng = engine("a5_rad2")
    sig, _ = sigma_sets(eng)
    (c, members), = sig.members.items()
    rep = right_section_check(members, eng.W.components()[c], eng)
    assert rep.ok and rep.acyclic and rep.convex and rep.one_per_orbit
    assert rep.region_equals_right_part
    assert right_section_check([], [], eng).ok is None


def test_section_refused_at_boundary():
    eng = engine("kronecker")
    W = eng.W
    comp = W.component_of(W.index_of("P1"))
    rep = right_section_check([W.index_of("P1")], comp, eng)
    assert rep.ok is None and "boundary" in rep.reason


def test_annihilator_of_projective_generator_is_zero():
    A = alg("a5_rad2")
    ann = annihilator(A, [projective(A, x) for x in range(A.n)])
    assert sum(J.nrows() for J in ann.values()) == 0
    # a simple kills every arrow
    ann = annihilator(A, [simple(A, 2)])
    assert sum(J.nrows() for J in ann.values()) == A.dim - 1


def test_slice_report_a5_rad2():
    eng = engine("a5_rad2")
    sig, _ = sigma_sets(eng)
    rep = ann_quotient_slice(sig.all, eng)
    # Sigma lives on 3, 4, 5; the quotient is the path algebra there
    assert list(rep.quotient.labels) == ["3", "4", "5"]
    assert rep.annihilator_dim == 4 and rep.quotient.dim == 5
    assert rep.verdict == "consistent with tilted"
