"""Acceptance criteria 1-11, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v`` (lines appear in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import BUDGETS, FIXTURES, alg, window  # noqa: E402
from oracles import LinearNakayama, PathAlgebra  # noqa: E402
import properties  # noqa: E402

from adakit import analyze  # noqa: E402
from adakit.analysis import (CERTIFIED, NOT_ADA, QUASI_TILTED, STRICT, WINDOW_LIMITED,  # noqa: E402
                             cover_check, membership_table, projective_injective_isos)
from adakit.filtration import (happel_check, maximal_filtration, simple_connectedness,  # noqa: E402
                               tree_type_check)
from adakit.hochschild import hh_dims_relative, hochschild_record, pi1_export  # noqa: E402
from adakit.homology import global_dimension, inj_dim, proj_dim  # noqa: E402
from adakit.knit import aliases  # noqa: E402
from adakit.parts import NO, YES, right_section_check  # noqa: E402

RESULTS = {}


def record(n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


_cache = {}


def a5_rad2_analysis():
    if "a5_rad2" not in _cache:
        t = time.perf_counter()
        an = analyze(alg("a5_rad2"))
        _cache["a5_rad2"] = (an, time.perf_counter() - t)
    return _cache["a5_rad2"]


def names(W, ids):
    return {a for i in ids for a in [W.label(i)] + aliases(W, i)}


def test_criterion_01_a5_rad2_end_to_end():
    an, secs = a5_rad2_analysis()
    cls = an.classification
    tab = membership_table(cls)
    left_ok = all(tab[p]["L"]["status"] == YES for p in ("P1", "P2", "P3"))
    right_ok = all(tab[p]["R"]["status"] == YES for p in ("P4", "P5", "I5"))
    isos = set(projective_injective_isos(an.window))
    want = {("P2", "I1"), ("P3", "I2"), ("P4", "I3"), ("P5", "I4")}
    ok = cls.kind == STRICT and cls.confidence == CERTIFIED and left_ok and right_ok \
        and isos == want and secs < 5
    record(1, ok, f"{cls.kind}/{cls.confidence}, P1-P3 in L: {left_ok}, P4,P5,I5 in R: {right_ok}, "
                  f"isos {sorted(isos)}, {secs:.2f}s")


def test_criterion_02_global_dimension():
    gd = global_dimension(alg("a5_rad2"))
    orc = LinearNakayama(5, 1).gldim()
    record(2, gd == 4 and orc == 4, f"gl.dim = {gd} (interval oracle {orc})")


def test_criterion_03_extension_not_ada():
    an = analyze(alg("a6_rad2"))
    cls = an.classification
    replayed = []
    for v in cls.vertices:
        for side, l, r in (("P", v.p_left, v.p_right), ("I", v.i_left, v.i_right)):
            if l.status == NO and r.status == NO:
                replayed.append((f"{side}{v.vertex}", l.witness.replay() and r.witness.replay()))
    ok = cls.kind == NOT_ADA and cls.confidence == CERTIFIED and bool(replayed) \
        and all(r for _, r in replayed) and sorted(cls.obstructions) == sorted(n for n, _ in replayed)
    record(3, ok, f"{cls.kind}/{cls.confidence}, NO-witness pairs {replayed}")


def test_criterion_04_exhaustive_dimension_bound():
    an, _ = a5_rad2_analysis()
    W = an.window
    orc = LinearNakayama(5, 1).indecomposables()
    good = [W.label(i) for i, M in enumerate(W.modules) if proj_dim(M) <= 2 or inj_dim(M) <= 1]
    cover = cover_check(an.engine, an.supports)
    ok = W.complete and len(W) == 9 == len(orc) and len(good) == 9 and cover == []
    record(4, ok, f"{len(W)} indecomposables (oracle {len(orc)}), pd<=2 or id<=1 for {len(good)}, "
                  f"cover failures {cover}")


def test_criterion_05_supports_and_middle():
    an, _ = a5_rad2_analysis()
    W = an.window
    sup = an.supports
    orc = LinearNakayama(5, 1)
    L, R = orc.left_part(), orc.right_part()
    reach = orc.reach()
    outside = [M for M in orc.indecomposables() if M not in L and M not in R]
    sig, sigp = orc.sigma(), orc.sigma_prime()
    # oracle: the middle module lies after Sigma' and before Sigma
    orc_mid_ok = outside == [(3, 3)] and any((3, 3) in reach[s] for s in sigp) \
        and any(s in reach[(3, 3)] for s in sig)
    mid = an.middle
    m = mid[0] if len(mid) == 1 else None
    mid_ok = m is not None and m.label == "S3" and m.from_sigma_prime is not None \
        and m.to_sigma is not None and m.generated is True and m.cogenerated is True \
        and m.from_sigma_prime[0] in names(W, an.sigma_prime.all) and m.to_sigma[-1] in names(W, an.sigma.all)
    ok = sup.left.vertices == ["1", "2", "3"] and sup.right.vertices == ["3", "4", "5"] \
        and sup.common == ["3"] and orc_mid_ok and mid_ok
    record(5, ok, f"A_lambda {sup.left.vertices}, A_rho {sup.right.vertices}, C {sup.common}, "
                  f"middle {[x.label for x in mid]} via {m and m.from_sigma_prime} / {m and m.to_sigma}")


def test_criterion_06_sigma_and_sections():
    an, _ = a5_rad2_analysis()
    W = an.window
    S = names(W, an.sigma.all)
    Sp = names(W, an.sigma_prime.all)
    orc = LinearNakayama(5, 1)
    iv = lambda i: (min(W.nodes[i].module.support()) + 1, max(W.nodes[i].module.support()) + 1)
    orc_ok = {iv(i) for i in an.sigma.all} == orc.sigma() and \
        {iv(i) for i in an.sigma_prime.all} == orc.sigma_prime()
    comp = W.components()[0]
    sec = right_section_check(an.sigma.members[0], comp, an.engine)
    ok = {"P4", "S4", "P5"} <= S and len(an.sigma.all) == 3 and {"I1", "S2", "I2"} <= Sp \
        and len(an.sigma_prime.all) == 3 and orc_ok and sec.ok and sec.region_equals_right_part
    record(6, ok, f"Sigma {sorted(W.label(i) for i in an.sigma.all)}, "
                  f"Sigma' {sorted(W.label(i) for i in an.sigma_prime.all)}, oracle {orc_ok}, "
                  f"section {sec.ok}, region = R: {sec.region_equals_right_part}")


def test_criterion_07_hochschild_suite():
    t = time.perf_counter()
    A = alg("a5_rad2")
    an, _ = a5_rad2_analysis()
    rec = hochschild_record(A, 5)
    rel = hh_dims_relative(A, 5)
    orc = PathAlgebra(5, [("b1", 2, 1), ("b2", 3, 2), ("b3", 4, 3), ("b4", 5, 4)], loewy=2)
    filt = maximal_filtration(A, an)
    happ = happel_check(filt)
    simply = simple_connectedness(an, rec, filt)
    tree, _ = tree_type_check(an)
    secs = time.perf_counter() - t
    steps = [s.vertex for s in filt.steps]
    ok = rec.dims == [1, 0, 0, 0, 0, 0] and rel.dims == rec.dims \
        and [orc.hh0(), orc.hh1()] == rec.dims[:2] \
        and steps == ["5", "4"] and all(s.separating for s in filt.steps) \
        and all(s.ext_vanishing for s in filt.steps) and all(s.reconstructed for s in filt.steps) \
        and all(h.identity_holds and h.higher_equal and h.separating_criterion for h in happ) \
        and simply.verdict is True and tree is True and secs < 10
    record(7, ok, f"HH {rec.dims} (bar {rel.dims}), strips {steps}, separating "
                  f"{[s.separating for s in filt.steps]}, Happel {[h.alternating_sum for h in happ]}, "
                  f"simply connected {simply.verdict}, tree {tree}, {secs:.2f}s")


def test_criterion_08_kronecker_control():
    A = alg("kronecker")
    an = analyze(A, budget=BUDGETS["kronecker"])
    rec = hochschild_record(A, 5)
    orc = PathAlgebra(2, [("a", 1, 2), ("b", 1, 2)]).hh1()
    simply = simple_connectedness(an, rec)
    p = pi1_export(A)
    ok = an.classification.kind == QUASI_TILTED and rec.dims[1] == 3 == orc \
        and simply.verdict is False and p.free_rank == 1 and not p.relators
    record(8, ok, f"{an.classification.kind}, hh1 {rec.dims[1]} (Leibniz oracle {orc}), "
                  f"simply connected {simply.verdict}, pi1 free of rank {p.free_rank}")


def test_criterion_09_mixed6_rad2_window():
    an = analyze(alg("mixed6_rad2"), budget=60)
    W = an.window
    comps = W.components()
    keys = sorted(an.sigma.members)
    st = an.structure
    post = [k for k in keys if all(W.nodes[i].tau_known for i in comps[k] if i in W.boundary)]
    pre = [k for k in keys if all(W.nodes[i].tauinv_known for i in comps[k] if i in W.boundary)]
    homs = [(a, b, h) for a, b, h in st.cross_homs if a in post and b in pre]
    hom_ok = any(h.map.is_homomorphism() and not h.map.is_zero() and h.source in comps[a]
                 and h.target in comps[b] for a, b, h in homs)
    flags = an.classification.confidence == WINDOW_LIMITED and st.checks.limited \
        and st.checks.directed_scope == "irreducible-maps" and any("window" in w for w in an.warnings) \
        and all(not c.complete for c in st.components)
    ok = len(keys) == 2 and len(post) == 1 and len(pre) == 1 and post != pre \
        and all(st.checks.directed[k] for k in keys) and hom_ok and flags
    h = homs[0][2].to_json(W) if homs else None
    record(9, ok, f"Sigma components {keys} (postprojective {post}, preinjective {pre}), directed "
                  f"{[st.checks.directed[k] for k in keys]}, hom {h}, window-limited flags {flags}")


def test_criterion_10_double_a4_rad2_sampling():
    A = alg("double_a4_rad2")
    an = analyze(A, budget=200, sections=False)
    W, eng = an.window, an.engine
    cls = an.classification
    doubles = []
    for i in range(len(W)):
        if len(doubles) >= 10:
            break
        if W.is_projective(i) or W.is_injective(i):
            continue
        l = eng.left(i)
        if l.status != NO or not l.certified:
            continue
        r = eng.right(i)
        if r.status == NO and r.certified and l.witness.replay() and r.witness.replay():
            doubles.append(W.label(i))
    rec = hochschild_record(A, 2)
    simply = simple_connectedness(an, rec)
    # window modules are pairwise non-isomorphic by construction
    distinct = len(set(doubles))
    ok = distinct >= 10 and cls.obstructions == [] and cls.kind != NOT_ADA \
        and rec.dims[1] > 0 and simply.verdict is False
    record(10, ok, f"{distinct} double-NO modules {doubles}, P/I obstructions {cls.obstructions} "
                   f"({cls.kind}, undecided {cls.undecided}), hh1 {rec.dims[1]}, "
                   f"simply connected {simply.verdict}")


def test_criterion_11_property_suites():
    t = time.perf_counter()
    failures = []
    for name in FIXTURES:
        W = window(name)
        for chk in properties.WINDOW_CHECKS:
            failures += [f"{name}/{chk.__name__}: {f}" for f in chk(W)]
        failures += [f"{name}/determinism: {f}" for f in properties.determinism(alg(name), BUDGETS[name])]
    for name in ("a5_rad2", "kronecker", "point"):
        failures += [f"{name}/subcategory: {f}" for f in properties.subcategory_spot_checks(alg(name))]
    secs = time.perf_counter() - t
    record(11, not failures and secs < 60,
           f"{len(FIXTURES)} fixtures, {len(properties.WINDOW_CHECKS) + 2} property families, "
           f"failures {failures[:5]}, {secs:.1f}s")


if __name__ == "__main__":
    fails = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                fails += 1
    sys.exit(1 if fails else 0)
