"""Classification of ada algebras, supports, component structure and the middle part."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field

from .algebra import BoundAlgebra, full_subcategory
from .homology import DEFAULT_CAP, AtLeast, global_dimension, inj_dim, proj_dim, to_json
from .knit import ARWindow, knit
from .linalg import rank, vstack
from .parts import (NO, UNKNOWN, YES, Membership, SigmaSet, ann_quotient_slice,
                    right_section_check, sigma_sets)
from .rep import hom_space, injective, projective
from .window import HomTable, WindowRefused, orbit_graph, window_checks

STRICT, QUASI_TILTED, ADA, NOT_ADA, UNDECIDED = "strict-ada", "quasi-tilted", "ada", "not-ada", "unknown"
CERTIFIED, WINDOW_LIMITED = "certified", "window-limited"


@dataclass
class VertexVerdicts:
    vertex: str
    p_index: int
    i_index: int
    p_left: object
    p_right: object
    i_left: object
    i_right: object

    def p_in_union(self):
        return _either(self.p_left, self.p_right)

    def i_in_union(self):
        return _either(self.i_left, self.i_right)


def _either(a, b):
    if YES in (a.status, b.status):
        return YES
    if a.status == NO and b.status == NO:
        return NO
    return UNKNOWN


@dataclass
class Classification:
    kind: str
    confidence: str
    vertices: list  # VertexVerdicts
    undecided: list = dc_field(default_factory=list)
    obstructions: list = dc_field(default_factory=list)

    def to_json(self):
        return {"kind": self.kind, "confidence": self.confidence,
                "undecided": list(self.undecided), "obstructions": list(self.obstructions)}


def _vertex_verdicts(eng: Membership):
    W = eng.W
    A = W.algebra
    out = []
    for x in range(A.n):
        pi = next((i for i, nd in enumerate(W.nodes) if nd.proj_vertex == x), None)
        ii = next((i for i, nd in enumerate(W.nodes) if nd.inj_vertex == x), None)
        if pi is None:
            pi = eng.node(projective(A, x))
        if ii is None:
            ii = eng.node(injective(A, x))
        out.append(VertexVerdicts(A.labels[x], pi, ii, eng.left(pi), eng.right(pi),
                                  eng.left(ii), eng.right(ii)))
    return out


def classify(A: BoundAlgebra, W: ARWindow, eng: Membership | None = None) -> Classification:
    eng = eng or Membership(W)
    vv = _vertex_verdicts(eng)
    used = []
    undecided, obstructions = [], []
    ada = YES
    for v in vv:
        for tag, pair, u in (("P", (v.p_left, v.p_right), v.p_in_union()),
                             ("I", (v.i_left, v.i_right), v.i_in_union())):
            if u == NO:
                ada = NO
                obstructions.append(f"{tag}{v.vertex}")
            elif u == UNKNOWN:
                if ada != NO:
                    ada = UNKNOWN
                undecided.append(f"{tag}{v.vertex}")
            else:
                used.extend(p for p in pair if p.status == YES)
    if ada == NO:
        return Classification(NOT_ADA, CERTIFIED, vv, undecided, obstructions)
    if ada == UNKNOWN:
        return Classification(UNDECIDED, WINDOW_LIMITED, vv, undecided, obstructions)
    p_left = [v.p_left for v in vv]
    if all(p.status == YES for p in p_left):
        kind = QUASI_TILTED
        used.extend(p_left)
    elif any(p.status == NO for p in p_left):
        kind = STRICT
    else:
        kind = ADA
    conf = CERTIFIED if all(v.certified for v in used) else WINDOW_LIMITED
    return Classification(kind, conf, vv)


def membership_table(cls: Classification):
    rows = {}
    for v in cls.vertices:
        rows[f"P{v.vertex}"] = {"L": v.p_left.to_json(), "R": v.p_right.to_json()}
        rows[f"I{v.vertex}"] = {"L": v.i_left.to_json(), "R": v.i_right.to_json()}
    return rows


def projective_injective_isos(W: ARWindow):
    """Pairs (P_x, I_y) realised by the same window module."""
    A = W.algebra
    out = []
    for nd in W.nodes:
        if nd.proj_vertex is not None and nd.inj_vertex is not None:
            out.append((f"P{A.labels[nd.proj_vertex]}", f"I{A.labels[nd.inj_vertex]}"))
    return sorted(out, key=lambda p: p[0])


# ---------------------------------------------------------------------------
# supports

def is_convex(A: BoundAlgebra, verts) -> bool:
    """Every quiver path between chosen vertices stays inside the selection."""
    S = set(verts)
    q = A.quiver
    succ = {x: set() for x in range(A.n)}
    for a in q.arrows:
        succ[a.source].add(a.target)

    def reach(x):
        seen, dq = {x}, deque([x])
        while dq:
            v = dq.popleft()
            for w in succ[v]:
                if w not in seen:
                    seen.add(w)
                    dq.append(w)
        return seen

    fw = {x: reach(x) for x in range(A.n)}
    for z in range(A.n):
        if z in S:
            continue
        if any(z in fw[x] for x in S) and any(y in fw[z] for y in S):
            return False
    return True


@dataclass
class Selection:
    name: str
    vertices: list  # labels
    unknown: list
    convex: bool | None
    pieces: list = dc_field(default_factory=list)  # per connected piece evidence

    def to_json(self):
        return {"vertices": self.vertices, "unknown": self.unknown, "convex": self.convex,
                "pieces": self.pieces}


@dataclass
class Supports:
    left: Selection
    right: Selection
    cover: bool | None
    common: list

    def to_json(self):
        return {"left": self.left.to_json(), "right": self.right.to_json(),
                "vertex_cover": self.cover, "common": self.common}


def _piece_evidence(A, verts):
    B = full_subcategory(A, [A.labels[x] for x in verts])
    out = []
    for comp in B.components():
        C = full_subcategory(B, [B.labels[x] for x in comp])
        gd = global_dimension(C)
        out.append({"vertices": [C.labels[x] for x in range(C.n)], "global_dimension": to_json(gd),
                    "gd_at_most_2": (not isinstance(gd, AtLeast)) and gd <= 2})
    return out


def supports(A: BoundAlgebra, cls: Classification) -> Supports:
    lam, rho, ul, ur = [], [], [], []
    for x, v in enumerate(cls.vertices):
        if v.p_left.status == YES:
            lam.append(x)
        elif v.p_left.status == UNKNOWN:
            ul.append(A.labels[x])
        if v.i_right.status == YES:
            rho.append(x)
        elif v.i_right.status == UNKNOWN:
            ur.append(A.labels[x])
    left = Selection("left", [A.labels[x] for x in lam], ul, is_convex(A, lam) if lam else None)
    right = Selection("right", [A.labels[x] for x in rho], ur, is_convex(A, rho) if rho else None)
    if lam:
        left.pieces = _piece_evidence(A, lam)
    if rho:
        right.pieces = _piece_evidence(A, rho)
    cov = set(lam) | set(rho)
    cover = True if len(cov) == A.n else (None if ul or ur else False)
    common = [A.labels[x] for x in sorted(set(lam) & set(rho))]
    return Supports(left, right, cover, common)


def supported_on(M, verts) -> bool:
    S = set(verts)
    return all(d == 0 or x in S for x, d in enumerate(M.dims))


def cover_check(eng: Membership, sup: Supports):
    """Each window module lies in L or has support in the right support, and
    lies in R or has support in the left support; returns failing labels."""
    W = eng.W
    A = W.algebra
    lam = [A.vertex(v) for v in sup.left.vertices]
    rho = [A.vertex(v) for v in sup.right.vertices]
    bad = []
    for i in range(len(W)):
        M = W.nodes[i].module
        a = eng.left(i).status == YES or supported_on(M, rho)
        b = eng.right(i).status == YES or supported_on(M, lam)
        if not (a and b):
            bad.append(W.label(i))
    return bad


def dimension_bound_check(W: ARWindow):
    """Window modules violating pd <= 2 or id <= 1."""
    bad = []
    for i, M in enumerate(W.modules):
        pd = proj_dim(M)
        if not isinstance(pd, AtLeast) and pd <= 2:
            continue
        idim = inj_dim(M)
        if not isinstance(idim, AtLeast) and idim <= 1:
            continue
        bad.append(W.label(i))
    return bad


# ---------------------------------------------------------------------------
# component structure

@dataclass
class ComponentRecord:
    index: int
    modules: list
    complete: bool
    sigma: list
    directed: bool | None
    convex: bool | None
    generalized_standard: bool | None
    section: object | None
    orbit_tree: bool | None
    slice: object | None
    side: str | None = None  # left | right for components without Sigma

    def to_json(self, W):
        return {"index": self.index, "size": len(self.modules), "complete": self.complete,
                "sigma": [W.label(i) for i in self.sigma], "directed": self.directed,
                "convex": self.convex, "generalized_standard": self.generalized_standard,
                "right_section": None if self.section is None else self.section.to_json(W),
                "orbit_graph_tree": self.orbit_tree,
                "slice": None if self.slice is None else self.slice.to_json(),
                "support_side": self.side}


@dataclass
class HomWitness:
    source: int
    target: int
    dim: int
    map: object

    def to_json(self, W):
        return {"from": W.label(self.source), "to": W.label(self.target), "dim": self.dim,
                "nonzero_entries": sum(1 for C in self.map.comps for v in C.entries() if v != 0)}


@dataclass
class StructureReport:
    refused: str | None
    components: list = dc_field(default_factory=list)
    cross_homs: list = dc_field(default_factory=list)  # (comp a, comp b, HomWitness)
    checks: object = None
    warnings: list = dc_field(default_factory=list)

    def to_json(self, W):
        if self.refused:
            return {"refused": self.refused}
        return {"components": [c.to_json(W) for c in self.components],
                "cross_homs": [{"from_component": a, "to_component": b, "witness": h.to_json(W)}
                               for a, b, h in self.cross_homs],
                "warnings": list(self.warnings)}


def explicit_hom(W: ARWindow, src, dst, homs: HomTable, limit: int = 400):
    """First nonzero hom between the two index sets, smallest modules first."""
    pairs = sorted(((W.nodes[a].module.dim + W.nodes[b].module.dim, a, b) for a in src for b in dst))
    for _, a, b in pairs[:limit]:
        if homs(a, b):
            basis = hom_space(W.nodes[a].module, W.nodes[b].module)
            f = basis[0]
            if not f.is_homomorphism() or f.is_zero():
                raise ArithmeticError("hom basis element fails verification (internal error)")
            return HomWitness(a, b, len(basis), f)
    return None


def structure_report(A, eng: Membership, cls: Classification, sup: Supports,
                     sigma: SigmaSet | None = None) -> StructureReport:
    W = eng.W
    if cls.kind != STRICT:
        return StructureReport(f"classification is {cls.kind}, not strict-ada")
    if sigma is None:
        sigma, _ = sigma_sets(eng)
    homs = HomTable(W)
    checks = window_checks(W, homs, rad_infinity=W.complete)
    comps = W.components()
    rep = StructureReport(None, checks=checks, warnings=list(checks.warnings))
    lam = [A.vertex(v) for v in sup.left.vertices]
    rho = [A.vertex(v) for v in sup.right.vertices]
    sig_comps = sorted(sigma.members)
    for k, comp in enumerate(comps):
        members = sigma.members.get(k, [])
        complete = W.component_complete(comp)
        sec = slc = tree = None
        if members:
            sec = right_section_check(members, comp, eng)
            slc = ann_quotient_slice(members, eng)
            if complete:
                try:
                    tree = orbit_graph(W, comp).tree
                except WindowRefused:
                    tree = None
        gs = checks.generalized_standard.get(k) if checks.generalized_standard else None
        rec = ComponentRecord(k, comp, complete, members, checks.directed.get(k), checks.convex.get(k),
                              gs, sec, tree, slc)
        if not members and complete:
            mods = [W.nodes[i].module for i in comp]
            if all(supported_on(M, lam) for M in mods):
                rec.side = "left"
            elif all(supported_on(M, rho) for M in mods):
                rec.side = "right"
            else:
                rec.side = "neither"
                rep.warnings.append(f"component {k} is supported on neither support")
        rep.components.append(rec)
    for a in sig_comps:
        for b in sig_comps:
            if a == b:
                continue
            h = explicit_hom(W, comps[a], comps[b], homs)
            if h is not None:
                rep.cross_homs.append((a, b, h))
    if not W.complete:
        rep.warnings.append("component structure checked on an incomplete window")
    return rep


# ---------------------------------------------------------------------------
# middle part

@dataclass
class MiddleModule:
    index: int
    label: str
    left_witness: object
    right_witness: object
    from_sigma_prime: list | None  # path labels
    to_sigma: list | None
    in_common_support: bool
    generated: bool | None
    cogenerated: bool | None

    def to_json(self):
        return {"module": self.label, "L_witness": self.left_witness.to_json(),
                "R_witness": self.right_witness.to_json(),
                "path_from_sigma_prime": self.from_sigma_prime, "path_to_sigma": self.to_sigma,
                "support_in_common": self.in_common_support,
                "generated_by_sigma_prime": self.generated, "cogenerated_by_sigma": self.cogenerated}


def _hom_path(eng: Membership, sources, target, forward: bool):
    """Shortest chain of nonzero homs between a source set and target inside the window."""
    n = eng.nwin
    start = sorted(sources)
    parent = {s: None for s in start}
    dq = deque(start)
    while dq:
        v = dq.popleft()
        if v == target:
            out = [v]
            while parent[out[-1]] is not None:
                out.append(parent[out[-1]])
            return out[::-1]
        nd = eng.W.nodes[v]
        nbrs = sorted((nd.outs or {}).keys()) if forward else sorted((nd.ins or {}).keys())
        if eng.W.complete:
            nbrs = [u for u in range(n) if u != v and (eng.hom(v, u) if forward else eng.hom(u, v))]
        for u in nbrs:
            if u not in parent:
                parent[u] = v
                dq.append(u)
    return None


def _generated(X, gens) -> bool:
    """Images of all maps from the generators span X at every vertex."""
    F = X.field
    spans = [[] for _ in X.dims]
    for G in gens:
        for f in hom_space(G, X):
            for x, C in enumerate(f.comps):
                if C.nrows() and C.ncols():
                    spans[x].append(C)
    for x, d in enumerate(X.dims):
        if d == 0:
            continue
        if not spans[x] or rank(vstack(spans[x], d, F)) < d:
            return False
    return True


def _cogenerated(X, cogens) -> bool:
    """Intersection of kernels of all maps into the cogenerators is zero."""
    F = X.field
    cols = [[] for _ in X.dims]
    for G in cogens:
        for f in hom_space(X, G):
            for x, C in enumerate(f.comps):
                if C.nrows() and C.ncols():
                    cols[x].append(C.transpose())
    for x, d in enumerate(X.dims):
        if d == 0:
            continue
        if not cols[x] or rank(vstack(cols[x], d, F)) < d:
            return False
    return True


def middle_part(eng: Membership, sigma: SigmaSet, sigma_p: SigmaSet, sup: Supports, limit=None):
    W = eng.W
    A = W.algebra
    common = [A.vertex(v) for v in sup.common]
    S, Sp = sigma.all, sigma_p.all
    out = []
    for i in range(len(W)):
        l, r = eng.left(i), eng.right(i)
        if l.status != NO or r.status != NO:
            continue
        X = W.nodes[i].module
        p1 = _hom_path(eng, Sp, i, forward=True) if Sp else None
        p2 = None
        if S:
            for s in S:
                p = _hom_path(eng, [i], s, forward=True)
                if p is not None and (p2 is None or len(p) < len(p2)):
                    p2 = p
        gen = cogen = None
        if W.complete:
            gen = _generated(X, [W.nodes[k].module for k in Sp])
            cogen = _cogenerated(X, [W.nodes[k].module for k in S])
        lab = lambda p: None if p is None else [W.label(k) for k in p]
        out.append(MiddleModule(i, W.label(i), l.witness, r.witness, lab(p1), lab(p2),
                                supported_on(X, common), gen, cogen))
        if limit is not None and len(out) >= limit:
            break
    return out


# ---------------------------------------------------------------------------
# full pipeline

@dataclass
class Analysis:
    algebra: BoundAlgebra
    window: ARWindow
    engine: Membership
    classification: Classification
    supports: Supports
    sigma: SigmaSet | None
    sigma_prime: SigmaSet | None
    structure: StructureReport
    middle: list
    warnings: list


def analyze(A: BoundAlgebra, W: ARWindow | None = None, budget=None, max_dim=None,
            seeds="both", middle_limit=None, cap: int = DEFAULT_CAP, sections: bool = True) -> Analysis:
    """Run the pipeline up to the middle part.

    With sections=False only the projective and injective verdicts are
    computed; Sigma, the component structure and the middle part are skipped.
    """
    if W is None:
        kw = {}
        if budget is not None:
            kw["budget"] = budget
        if max_dim is not None:
            kw["max_dim"] = max_dim
        W = knit(A, seeds=seeds, **kw)
    eng = Membership(W, cap=cap)
    cls = classify(A, W, eng)
    sup = supports(A, cls)
    warnings = []
    if sections:
        sig, sigp = sigma_sets(eng)
        st = structure_report(A, eng, cls, sup, sig)
        mid = middle_part(eng, sig, sigp, sup, limit=middle_limit)
    else:
        sig = sigp = None
        st = StructureReport("sections not requested")
        mid = []
        warnings.append("Sigma sets, component structure and middle part not computed")
    if not W.complete:
        warnings.append(f"window incomplete ({len(W)} modules, budget {W.budget}); verdicts are window-limited")
    for v in cls.vertices:
        for side, vd in (("P", v.p_left), ("P", v.p_right), ("I", v.i_left), ("I", v.i_right)):
            if vd.status == UNKNOWN:
                warnings.append(f"{vd.side}-membership of {side}{v.vertex} unknown: {vd.caveat}")
            elif vd.rule == "cone-finite-window":
                warnings.append(f"{vd.side}-membership of {side}{v.vertex} is window-certified only")
    if sig is not None and (sig.pending or sigp.pending):
        warnings.append("Ext-projective tests pending for "
                        + ", ".join(W.label(i) for i in sig.pending + sigp.pending))
    warnings.extend(st.warnings)
    return Analysis(A, W, eng, cls, sup, sig, sigp, st, mid, sorted(set(warnings)))
