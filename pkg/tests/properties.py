"""Structural properties checked on every fixture window.

Each check returns a list of failure strings; empty means the property holds.
"""

from adakit import analyze, build_report, knit, render_dot
from adakit.algebra import full_subcategory
from adakit.analysis import NOT_ADA, classify
from adakit.ar import almost_split_sequence, tau, tau_inv
from adakit.decompose import decompose, indecomposables_isomorphic
from adakit.report import dumps, render_analysis_dot
from adakit.rep import direct_sum, dual, hom_dim, projective

MESH_SAMPLE = 10
PAIR_SAMPLE = 60


def _small_first(W, pred=lambda nd: True, limit=None):
    idx = sorted((nd.module.dim, i) for i, nd in enumerate(W.nodes) if pred(nd))
    return [i for _, i in idx[:limit]]


def mesh_exactness(W):
    bad = []
    for i in _small_first(W, lambda nd: nd.proj_vertex is None and nd.tau is not None, MESH_SAMPLE):
        nd = W.nodes[i]
        seq = almost_split_sequence(nd.module, W.nodes[nd.tau].module)
        if not seq.is_exact():
            bad.append(f"{W.label(i)}: not exact")
        if not seq.is_nonsplit():
            bad.append(f"{W.label(i)}: splits")
        if seq.middle.dim != nd.module.dim + W.nodes[nd.tau].module.dim:
            bad.append(f"{W.label(i)}: middle dimension")
        # middle summands agree with the window's in-arrows when those are known
        if nd.ins is not None and not (set(nd.ins) & W.boundary):
            want = sorted(W.nodes[j].module.dims for j, m in nd.ins.items() for _ in range(m))
            got = sorted(s.dims for s in seq.summands)
            if want != got:
                bad.append(f"{W.label(i)}: middle summands {got} vs window {want}")
    return bad


def tau_inversion(W):
    bad = []
    for i in _small_first(W, lambda nd: nd.proj_vertex is None, MESH_SAMPLE):
        M = W.nodes[i].module
        t = tau(M)
        if t is None:
            bad.append(f"{W.label(i)}: non-projective with zero translate")
            continue
        back = tau_inv(t)
        if back is None or not indecomposables_isomorphic(back, M):
            bad.append(f"{W.label(i)}: tau^- tau differs")
    for i in _small_first(W, lambda nd: nd.inj_vertex is None, MESH_SAMPLE):
        M = W.nodes[i].module
        t = tau_inv(M)
        if t is None or not indecomposables_isomorphic(tau(t), M):
            bad.append(f"{W.label(i)}: tau tau^- differs")
    return bad


def hom_from_projectives(W):
    A = W.algebra
    P = [projective(A, x) for x in range(A.n)]
    bad = []
    for i in _small_first(W, limit=PAIR_SAMPLE):
        M = W.nodes[i].module
        for x in range(A.n):
            if hom_dim(P[x], M) != M.dims[x]:
                bad.append(f"Hom(P{A.labels[x]}, {W.label(i)})")
    return bad


def duality_symmetry(W):
    ids = _small_first(W, limit=8)
    bad = []
    for i in ids:
        for j in ids:
            M, N = W.nodes[i].module, W.nodes[j].module
            if hom_dim(M, N) != hom_dim(dual(N), dual(M)):
                bad.append(f"{W.label(i)}, {W.label(j)}")
    return bad


def decomposition_conservation(W):
    ids = _small_first(W, limit=6)
    bad = []
    for a, b in zip(ids, ids[1:] + ids[:1]):
        S = direct_sum([W.nodes[a].module, W.nodes[b].module])[0]
        parts = decompose(S).parts
        tot = [sum(p.module.dims[x] for p in parts) for x in range(W.algebra.n)]
        if tuple(tot) != S.dims or len(parts) != 2:
            bad.append(f"{W.label(a)} + {W.label(b)}: {len(parts)} parts")
    return bad


def determinism(A, budget):
    outs = []
    for _ in range(2):
        an = analyze(A, budget=budget)
        outs.append((dumps(build_report(an)), render_analysis_dot(an), render_dot(an.window)))
    return [] if outs[0] == outs[1] else ["report or DOT differs between runs"]


def subcategory_spot_checks(A, budget=60):
    """Full convex subcategories eAe of an ada algebra are not classified not-ada."""
    an = analyze(A, budget=budget, sections=False)
    if an.classification.kind == NOT_ADA:
        return []
    bad = []
    labels = list(A.labels)
    for lo in range(len(labels)):
        for hi in range(lo + 1, len(labels) + 1):
            verts = labels[lo:hi]
            if len(verts) == len(labels):
                continue
            B = full_subcategory(A, verts)
            cls = classify(B, knit(B, budget=budget))
            if cls.kind == NOT_ADA:
                bad.append(f"e A e on {verts} classified not-ada")
    return bad


WINDOW_CHECKS = [mesh_exactness, tau_inversion, hom_from_projectives, duality_symmetry,
                 decomposition_conservation]
