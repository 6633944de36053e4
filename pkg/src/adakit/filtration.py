"""Maximal filtrations by one-point extensions, Happel identities and simple connectedness."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import BoundAlgebra, full_subcategory
from .analysis import NOT_ADA, QUASI_TILTED, STRICT, UNDECIDED, WINDOW_LIMITED, analyze
from .decompose import decompose
from .extension import one_point_extension, restrict
from .hochschild import DEFAULT_DEGREE_CAP, hochschild_record
from .homology import ResolutionTruncated, ext_dim
from .parts import NO, YES
from .rep import hom_dim, projective, radical_top_socle
from .window import WindowRefused, orbit_graph


class FiltrationError(ArithmeticError):
    pass


@dataclass
class FiltrationStep:
    algebra: BoundAlgebra  # A' = B[M]
    vertex: str
    base: BoundAlgebra  # B
    module: object  # M = rad P_x over B
    summands: int
    components: int
    separating: bool
    end_dim: int
    ext_vanishing: bool | None
    ext_dims: list
    reconstructed: bool
    successor_search: str  # exact | window

    def to_json(self):
        return {"vertex": self.vertex, "module": self.module.dimvec(), "summands": self.summands,
                "base_components": self.components, "separating": self.separating,
                "endM_dim": self.end_dim, "ext_vanishing": self.ext_vanishing,
                "ext_dims": self.ext_dims, "reconstructed": self.reconstructed,
                "successor_search": self.successor_search}


@dataclass
class Filtration:
    steps: list
    base: BoundAlgebra
    base_is_left_support: bool | None
    refused: str | None = None
    notes: list = dc_field(default_factory=list)

    def to_json(self):
        if self.refused:
            return {"refused": self.refused}
        return {"steps": [s.to_json() for s in self.steps],
                "base": list(self.base.labels), "base_is_left_support": self.base_is_left_support,
                "notes": list(self.notes)}


def _maximal_projective(an):
    """Vertex x with P_x in R but not in L and no projective successor."""
    W = an.window
    eng = an.engine
    cands = []
    for v in an.classification.vertices:
        if v.p_right.status == YES and v.p_left.status == NO:
            cands.append(v)
    pidx = {v.p_index for v in an.classification.vertices}
    for v in cands:
        i = v.p_index
        if W.complete and i < eng.nwin:
            succ = eng.reachable(i, backward=False)
            mode = "exact"
        else:
            succ = _window_successors(W, i)
            mode = "window"
        if not (succ - {i}) & pidx:
            return v, mode
    return None, None


def _window_successors(W, i):
    seen = {i}
    stack = [i]
    while stack:
        v = stack.pop()
        for w in (W.nodes[v].outs or {}):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def maximal_filtration(A: BoundAlgebra, an=None, cap: int = 5, budget=None) -> Filtration:
    an = an or analyze(A, budget=budget)
    kind = an.classification.kind
    if kind == NOT_ADA:
        return Filtration([], A, None, refused="algebra is not ada")
    if kind == QUASI_TILTED:
        return Filtration([], A, True)
    if kind != STRICT:
        return Filtration([], A, None, refused=f"classification {kind}: filtration needs a strict ada algebra")
    lam = set(an.supports.left.vertices)
    steps = []
    cur, cur_an = A, an
    notes = []
    while cur_an.classification.kind == STRICT:
        v, mode = _maximal_projective(cur_an)
        if v is None:
            raise FiltrationError("no maximal projective found in the window")
        x = cur.vertex(v.vertex)
        rest = [cur.labels[y] for y in range(cur.n) if y != x]
        B = full_subcategory(cur, rest)
        P = projective(cur, x)
        R = radical_top_socle(P).rad
        if R.dims[x] != 0:
            raise FiltrationError(f"vertex {v.vertex} lies on an oriented cycle")
        M = restrict(R, B)
        parts = decompose(M).parts
        ncomp = len(B.components())
        endm = hom_dim(M, M)
        ext_dims = []
        try:
            ext_dims = [ext_dim(i, M, M) for i in range(1, cap + 1)]
            vanish = all(d == 0 for d in ext_dims)
        except ResolutionTruncated:
            vanish = None
        rebuilt = one_point_extension(B, M, label=v.vertex)
        recon = rebuilt.dim == cur.dim and _cartan(rebuilt) == _cartan(cur)
        steps.append(FiltrationStep(cur, v.vertex, B, M, len(parts), ncomp, len(parts) == ncomp,
                                    endm, vanish, ext_dims, recon, mode))
        cur = B
        cur_an = analyze(B, budget=an.window.budget, max_dim=an.window.max_dim, seeds=an.window.seeds)
        if cur_an.classification.kind == NOT_ADA:
            raise FiltrationError("stripping produced a non-ada algebra (internal error)")
        if cur_an.classification.confidence == WINDOW_LIMITED:
            notes.append(f"step algebra on {list(B.labels)} classified window-limited")
    base_ok = set(cur.labels) == lam
    return Filtration(steps, cur, base_ok, notes=notes)


def _cartan(A):
    """Block dimensions keyed by vertex labels, for comparing presentations."""
    return sorted((A.labels[x], A.labels[y], len(A.block(x, y))) for x in range(A.n) for y in range(A.n))


@dataclass
class HappelCheck:
    vertex: str
    alternating_sum: int
    identity_holds: bool
    higher_equal: bool
    separating: bool
    hh1_equal: bool
    separating_criterion: bool
    dims_extension: list
    dims_base: list

    def to_json(self):
        return {"vertex": self.vertex, "alternating_sum": self.alternating_sum,
                "identity_holds": self.identity_holds, "higher_degrees_equal": self.higher_equal,
                "separating": self.separating, "hh1_equal": self.hh1_equal,
                "separating_criterion": self.separating_criterion,
                "dims_extension": self.dims_extension, "dims_base": self.dims_base}


def happel_check(filt: Filtration, cap: int = DEFAULT_DEGREE_CAP, records=None):
    records = records if records is not None else {}
    out = []

    def rec(B):
        key = B.fingerprint()
        if key not in records:
            records[key] = hochschild_record(B, cap)
        return records[key]

    for st in filt.steps:
        a, b = rec(st.algebra).dims, rec(st.base).dims
        s = a[0] - b[0] + (st.end_dim - 1) - a[1] + b[1]
        higher = a[2:] == b[2:]
        eq1 = a[1] == b[1]
        out.append(HappelCheck(st.vertex, s, s == 0, higher, st.separating, eq1,
                               eq1 == st.separating, list(a), list(b)))
    return out


def tree_type_check(an):
    """(verdict, reason): orbit graphs of the Sigma components are trees."""
    W = an.window
    comps = W.components()
    if an.sigma is None:
        return None, "Sigma sets not computed"
    keys = sorted(an.sigma.members)
    if not keys:
        return None, "no Sigma components"
    verdict = True
    for k in keys:
        try:
            og = orbit_graph(W, comps[k])
        except WindowRefused:
            return None, f"component {k} incomplete in the window"
        verdict = verdict and og.tree
    return verdict, None


@dataclass
class SimpleConnectedness:
    verdict: bool | None
    confidence: str
    hh1: int | None
    tree_type: bool | None
    separating: list
    ring_is_field: bool | None
    coherent: bool | None
    refused: str | None = None
    caveats: list = dc_field(default_factory=list)

    def to_json(self):
        if self.refused:
            return {"refused": self.refused}
        return {"verdict": self.verdict, "confidence": self.confidence, "hh1": self.hh1,
                "tree_type": self.tree_type, "separating_steps": self.separating,
                "cohomology_ring_is_k": self.ring_is_field, "coherent": self.coherent,
                "caveats": list(self.caveats)}


def simple_connectedness(an, record, filt: Filtration | None = None) -> SimpleConnectedness:
    kind = an.classification.kind
    if kind == NOT_ADA:
        return SimpleConnectedness(None, "refused", None, None, [], None, None,
                                   refused="algebra is not ada")
    conf = an.classification.confidence
    caveats = []
    if kind == UNDECIDED:
        conf = WINDOW_LIMITED
        caveats.append("ada hypothesis not verified within the window")
    hh1 = record.dims[1] if len(record.dims) > 1 else None
    verdict = hh1 == 0
    tree, why = tree_type_check(an)
    if why:
        caveats.append(f"tree type not decided: {why}")
    ring = all(d == 0 for d in record.dims[1:]) and record.dims[0] == 1 if verdict else None
    coherent = None if tree is None else (tree == verdict)
    seps = [s.separating for s in filt.steps] if filt and not filt.refused else []
    return SimpleConnectedness(verdict, conf, hh1, tree, seps, ring, coherent, caveats=caveats)
