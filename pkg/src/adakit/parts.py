"""Left and right parts: three-valued membership, Ext-projectives and sections."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field

from .algebra import quotient_algebra
from .decompose import decompose, find_iso_indecomposable
from .homology import (AtLeast, DEFAULT_CAP, fast_hom_dim, global_dimension, id_at_most_one, inj_dim,
                       pd_at_most_one, proj_dim, to_json)
from .knit import ARWindow
from .linalg import left_nullspace
from .rep import Representation, cosyzygy, hom_dim, simple, syzygy

YES, NO, UNKNOWN = "yes", "no", "unknown"
CONE_TEST_LIMIT = 20000  # hom tests allowed while closing one cone


def _ge2(v) -> bool:
    return isinstance(v, AtLeast) or v >= 2


@dataclass
class Witness:
    """Chain X_0 -> ... -> X_t of nonzero homs whose far end breaks the bound.

    For the left part X_t is the module tested and pd X_0 >= 2; for the right
    part X_0 is the module tested and id X_t >= 2.
    """

    kind: str  # pd | id
    modules: list
    labels: list
    homs: list
    value: object

    def replay(self, cap: int = DEFAULT_CAP) -> bool:
        for a, b, h in zip(self.modules, self.modules[1:], self.homs):
            if hom_dim(a, b) != h or h == 0:
                return False
        end = self.modules[0] if self.kind == "pd" else self.modules[-1]
        v = proj_dim(end, cap) if self.kind == "pd" else inj_dim(end, cap)
        return _ge2(v)

    def to_json(self):
        return {"kind": self.kind, "chain": list(self.labels),
                "dims": [m.dimvec() for m in self.modules], "homs": list(self.homs),
                "value": to_json(self.value)}


@dataclass
class Verdict:
    status: str
    rule: str  # repfinite-exact | hereditary-exact | witness | cone-finite-window | refused
    side: str  # L | R
    module: str
    window: str
    witness: Witness | None = None
    caveat: str | None = None

    @property
    def certified(self) -> bool:
        return self.status != UNKNOWN and self.rule != "cone-finite-window"

    def to_json(self):
        d = {"status": self.status, "rule": self.rule}
        if self.witness is not None:
            d["witness"] = self.witness.to_json()
        if self.caveat:
            d["caveat"] = self.caveat
        return d


def window_id(W: ARWindow) -> str:
    return f"{W.algebra.fingerprint()}:{W.seeds}:{W.budget}:{W.max_dim}"


class Membership:
    """Membership oracle for L_A and R_A over one window.

    Nodes are the window modules followed by probe modules (indecomposable
    summands of syzygies and cosyzygies of simples).
    """

    def __init__(self, W: ARWindow, cap: int = DEFAULT_CAP, probes: bool = True):
        self.W = W
        self.A = W.algebra
        self.cap = cap
        self.wid = window_id(W)
        self.mods = list(W.modules)
        self.labels = [W.label(i) for i in range(len(W))]
        self.nwin = len(self.mods)
        self._pd: dict = {}
        self._id: dict = {}
        self._hom: dict = {}
        self._cache: dict = {}
        self._badc: dict = {}
        gd = global_dimension(self.A, cap)
        self.hereditary = not isinstance(gd, AtLeast) and gd <= 1
        self._probes_done = not probes
        self.tests = 0

    # -- nodes -----------------------------------------------------------
    def node(self, M: Representation) -> int:
        for i, N in enumerate(self.mods):
            if N.dims == M.dims and find_iso_indecomposable(N, M) is not None:
                return i
        self.mods.append(M)
        self.labels.append(M.label or f"X{len(self.mods)}")
        return len(self.mods) - 1

    def _ensure_probes(self):
        if self._probes_done:
            return
        self._probes_done = True
        for x in range(self.A.n):
            for step in (syzygy, cosyzygy):
                cur = simple(self.A, x)
                for k in range(1, self.cap + 1):
                    cur = step(cur)[0]
                    if cur.is_zero():
                        break
                    for p in decompose(cur).parts:
                        tag = "Omega" if step is syzygy else "Sigma"
                        M = p.module
                        M.label = M.label or f"{tag}{k}(S{self.A.labels[x]})"
                        i = self.node(M)
                        if i >= self.nwin and not self.mods[i].label:
                            self.mods[i].label = M.label

    def pd(self, i):
        if i not in self._pd:
            self._pd[i] = proj_dim(self.mods[i], self.cap)
        return self._pd[i]

    def id(self, i):
        if i not in self._id:
            self._id[i] = inj_dim(self.mods[i], self.cap)
        return self._id[i]

    def hom(self, i, j) -> int:
        k = (i, j)
        if k not in self._hom:
            self.tests += 1
            self._hom[k] = fast_hom_dim(self.mods[i], self.mods[j])
        return self._hom[k]

    # -- AR-quiver closures inside the window ------------------------------
    def _ar_closure(self, start, backward: bool):
        """BFS along irreducible maps; returns (parent map, hit_boundary)."""
        W = self.W
        parent = {start: None}
        dq = deque([start])
        hit = False
        while dq:
            v = dq.popleft()
            nd = W.nodes[v]
            nbrs = nd.ins if backward else nd.outs
            if v in W.boundary or nbrs is None:
                hit = True
            for w in sorted((nbrs or {}).keys()):
                if w not in parent:
                    parent[w] = v
                    dq.append(w)
        return parent, hit

    def _chain(self, parent, end):
        out = [end]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return out  # end ... start

    def _witness(self, kind, chain_idx):
        mods = [self.mods[i] for i in chain_idx]
        homs = [self.hom(a, b) for a, b in zip(chain_idx, chain_idx[1:])]
        if any(h == 0 for h in homs):
            raise ArithmeticError("witness chain contains a zero hom (internal error)")
        end = chain_idx[0] if kind == "pd" else chain_idx[-1]
        val = self.pd(end) if kind == "pd" else self.id(end)
        return Witness(kind, mods, [self.labels[i] for i in chain_idx], homs, val)

    # -- verdicts ----------------------------------------------------------
    def left(self, i: int) -> Verdict:
        return self._verdict(i, "L")

    def right(self, i: int) -> Verdict:
        return self._verdict(i, "R")

    def verdict(self, M: Representation, side: str) -> Verdict:
        return self._verdict(self.node(M), side)

    def _verdict(self, i, side):
        key = (i, side)
        if key not in self._cache:
            self._cache[key] = self._decide(i, side)
        return self._cache[key]

    def _bad(self, j, side):
        key = (j, side)
        if key not in self._badc:
            M = self.mods[j]
            self._badc[key] = not (pd_at_most_one(M) if side == "L" else id_at_most_one(M))
        return self._badc[key]

    def _decide(self, i, side):
        lab = self.labels[i]
        kind = "pd" if side == "L" else "id"
        back = side == "L"
        mk = lambda st, rule, w=None, cav=None: Verdict(st, rule, side, lab, self.wid, w, cav)
        if self._bad(i, side):
            return mk(NO, "witness", self._witness(kind, [i]))
        if self.hereditary:
            return mk(YES, "hereditary-exact")
        W = self.W
        if W.complete and i < self.nwin:
            return self._exact(i, side)
        # (2) witness along irreducible maps, then through hom tests
        parent, hit = self._ar_closure(i, back) if i < self.nwin else ({i: None}, True)
        for j in sorted(parent, key=lambda v: (len(self._chain(parent, v)), v)):
            if self._bad(j, side):
                ch = self._chain(parent, j)  # j ... i
                return mk(NO, "witness", self._witness(kind, ch if back else ch[::-1]))
        self._ensure_probes()
        cand = [j for j in range(len(self.mods)) if j not in parent and self._bad(j, side)]
        cand.sort(key=lambda j: (self.mods[j].dim, j))
        members = sorted(parent, key=lambda v: (len(self._chain(parent, v)), v))
        for j in cand:
            for v in members:
                h = self.hom(j, v) if back else self.hom(v, j)
                if h:
                    ch = self._chain(parent, v)  # v ... i
                    chain = [j] + ch if back else ch[::-1] + [j]
                    return mk(NO, "witness", self._witness(kind, chain))
        if i >= self.nwin or hit:
            return mk(UNKNOWN, "cone-finite-window",
                      cav="irreducible-map closure reaches the window boundary")
        # (3) close the cone under nonzero homs from the rest of the window
        closed = set(parent)
        frontier = list(closed)
        tests = 0
        outside = [j for j in range(self.nwin) if j not in closed]
        while frontier:
            new = []
            for j in list(outside):
                for v in frontier:
                    tests += 1
                    if tests > CONE_TEST_LIMIT:
                        return mk(UNKNOWN, "cone-finite-window", cav="hom-closure test budget exhausted")
                    h = self.hom(j, v) if back else self.hom(v, j)
                    if h:
                        if j in W.boundary:
                            return mk(UNKNOWN, "cone-finite-window",
                                      cav=f"boundary module {self.labels[j]} reaches the cone")
                        p2, hit2 = self._ar_closure(j, back)
                        if hit2:
                            return mk(UNKNOWN, "cone-finite-window",
                                      cav=f"cone through {self.labels[j]} reaches the window boundary")
                        for u in p2:
                            if u not in closed:
                                if self._bad(u, side):
                                    # chain u ~> j -> v ~> i
                                    c1 = self._chain(p2, u)
                                    c1 = c1 if back else c1[::-1]
                                    c2 = self._chain(parent, v) if v in parent else [v]
                                    chain = (c1 + c2) if back else (c2[::-1] + c1)
                                    try:
                                        return mk(NO, "witness", self._witness(kind, chain))
                                    except ArithmeticError:
                                        return mk(UNKNOWN, "cone-finite-window",
                                                  cav="offending module found without a replayable chain")
                                closed.add(u)
                                new.append(u)
                        outside.remove(j)
                        break
            frontier = new
            outside = [j for j in outside if j not in closed]
        return mk(YES, "cone-finite-window",
                  cav="window-certified: maps in the infinite radical entering from outside the window are assumed absent")

    def _exact(self, i, side):
        """Complete window: reachability in the hom digraph of all indecomposables."""
        kind = "pd" if side == "L" else "id"
        back = side == "L"
        n = self.nwin
        parent = {i: None}
        dq = deque([i])
        while dq:
            v = dq.popleft()
            for u in range(n):
                if u in parent:
                    continue
                if (self.hom(u, v) if back else self.hom(v, u)):
                    parent[u] = v
                    dq.append(u)
        bad = [u for u in sorted(parent) if self._bad(u, side)]
        mk = lambda st, w=None: Verdict(st, "repfinite-exact", side, self.labels[i], self.wid, w)
        if bad:
            ch = self._chain(parent, bad[0])
            return mk(NO, self._witness(kind, ch if back else ch[::-1]))
        return mk(YES)

    def reachable(self, i, backward: bool):
        """Set of window nodes with a nonzero-hom path to (from) i; complete windows."""
        n = self.nwin
        seen = {i}
        dq = deque([i])
        while dq:
            v = dq.popleft()
            for u in range(n):
                if u not in seen and (self.hom(u, v) if backward else self.hom(v, u)):
                    seen.add(u)
                    dq.append(u)
        return seen


def l_membership(M: Representation, W: ARWindow, engine: Membership | None = None) -> Verdict:
    eng = engine or Membership(W)
    return eng.verdict(M, "L")


def r_membership(M: Representation, W: ARWindow, engine: Membership | None = None) -> Verdict:
    eng = engine or Membership(W)
    return eng.verdict(M, "R")


# ---------------------------------------------------------------------------
# Ext-projectives and Ext-injectives

@dataclass
class SigmaSet:
    kind: str  # Sigma | Sigma'
    members: dict  # component index -> sorted window indices
    tests: dict  # window index -> defining test
    pending: list = dc_field(default_factory=list)

    @property
    def all(self):
        return sorted(i for v in self.members.values() for i in v)


def sigma_sets(eng: Membership):
    """(Sigma, Sigma'): Ext-projectives in add R_A and Ext-injectives in add L_A."""
    W = eng.W
    comps = W.components()
    comp_of = {i: c for c, comp in enumerate(comps) for i in comp}
    sig = SigmaSet("Sigma", {}, {})
    sigp = SigmaSet("Sigma'", {}, {})
    for i in range(len(W)):
        nd = W.nodes[i]
        if eng.right(i).status == YES:
            if nd.proj_vertex is not None:
                test = "projective"
            elif nd.tau is not None:
                st = eng.right(nd.tau).status
                test = {NO: f"tau = {W.label(nd.tau)} not in R", YES: None, UNKNOWN: "pending"}[st]
            else:
                test = "pending"
            if test == "pending":
                sig.pending.append(i)
            elif test:
                sig.members.setdefault(comp_of[i], []).append(i)
                sig.tests[i] = test
        if eng.left(i).status == YES:
            if nd.inj_vertex is not None:
                test = "injective"
            elif nd.tauinv is not None:
                st = eng.left(nd.tauinv).status
                test = {NO: f"tau^- = {W.label(nd.tauinv)} not in L", YES: None, UNKNOWN: "pending"}[st]
            else:
                test = "pending"
            if test == "pending":
                sigp.pending.append(i)
            elif test:
                sigp.members.setdefault(comp_of[i], []).append(i)
                sigp.tests[i] = test
    return sig, sigp


# ---------------------------------------------------------------------------
# sections

@dataclass
class SectionReport:
    ok: bool | None  # None when refused
    acyclic: bool | None = None
    one_per_orbit: bool | None = None
    convex: bool | None = None
    region_equals_right_part: bool | None = None
    successors: list = dc_field(default_factory=list)
    reason: str | None = None
    failures: list = dc_field(default_factory=list)

    def to_json(self, W):
        return {"ok": self.ok, "acyclic": self.acyclic, "one_per_orbit": self.one_per_orbit,
                "convex": self.convex, "successors_equal_right_part": self.region_equals_right_part,
                "successors": [W.label(i) for i in self.successors], "reason": self.reason,
                "failures": self.failures}


def _forward(W, start):
    seen = set(start)
    dq = deque(sorted(start))
    hit = False
    while dq:
        v = dq.popleft()
        nd = W.nodes[v]
        if v in W.boundary or nd.outs is None:
            hit = True
        for w in sorted((nd.outs or {}).keys()):
            if w not in seen:
                seen.add(w)
                dq.append(w)
    return seen, hit


def _reach_within(W, src, allowed):
    seen = {src}
    dq = deque([src])
    while dq:
        v = dq.popleft()
        for w in (W.nodes[v].outs or {}):
            if w in allowed and w not in seen:
                seen.add(w)
                dq.append(w)
    return seen


def right_section_check(sigma, comp, eng: Membership) -> SectionReport:
    """Right-section axioms for sigma inside the window component comp."""
    W = eng.W
    sigma = sorted(sigma)
    if not sigma:
        return SectionReport(None, reason="empty section")
    succ, hit = _forward(W, sigma)
    if hit:
        return SectionReport(None, reason="forward region from the section meets the window boundary")
    comp = set(comp)
    succ &= comp
    rep = SectionReport(True, successors=sorted(succ))
    sset = set(sigma)
    # acyclic: no arrow path from a member back to itself
    rep.acyclic = all(s not in _reach_within(W, w, comp) for s in sigma
                      for w in (W.nodes[s].outs or {}))
    # each successor meets the section in exactly one tau-power
    rep.one_per_orbit = True
    for x in sorted(succ):
        hits, v, seen = 0, x, set()
        while v is not None and v not in seen:
            seen.add(v)
            if v in sset:
                hits += 1
            v = W.nodes[v].tau
        if hits != 1:
            rep.one_per_orbit = False
            rep.failures.append(f"{W.label(x)} meets the section {hits} times along its tau-orbit")
    # convex: every arrow path between members stays in the section
    rep.convex = True
    for s in sigma:
        for t in sigma:
            if s == t:
                continue
            fw = _reach_within(W, s, comp)
            if t not in fw:
                continue
            between = {v for v in fw if t in _reach_within(W, v, comp)}
            if not between <= sset:
                rep.convex = False
                rep.failures.append(f"path {W.label(s)} ~> {W.label(t)} leaves the section")
    # successors of the section = component members in R_A
    rpart = set()
    undecided = []
    for v in sorted(comp):
        st = eng.right(v).status
        if st == YES:
            rpart.add(v)
        elif st == UNKNOWN:
            undecided.append(v)
    if undecided and not set(undecided) <= succ:
        rep.region_equals_right_part = None
        rep.failures.append("right part undecided on part of the component")
    else:
        rep.region_equals_right_part = (succ == (rpart | (set(undecided) & succ)))
    rep.ok = bool(rep.acyclic and rep.one_per_orbit and rep.convex and rep.region_equals_right_part)
    return rep


# ---------------------------------------------------------------------------
# annihilator quotient and slice axioms

@dataclass
class SliceReport:
    quotient: object
    annihilator_dim: int
    sincere: bool
    acyclic: bool
    convex: bool
    one_per_orbit: bool

    @property
    def verdict(self):
        for name in ("sincere", "acyclic", "convex", "one_per_orbit"):
            if not getattr(self, name):
                return f"fails {name.replace('_', '-')}"
        return "consistent with tilted"

    def to_json(self):
        q = self.quotient
        return {"vertices": list(q.labels), "dim": q.dim, "annihilator_dim": self.annihilator_dim,
                "sincere": self.sincere, "acyclic": self.acyclic, "convex": self.convex,
                "one_per_orbit": self.one_per_orbit, "verdict": self.verdict}


def annihilator(A, modules):
    """Ann of a family of modules, per block as rows in block coordinates."""
    F = A.field
    out = {}
    for key, idx in A.blocks.items():
        x, y = key
        cols = []
        for M in modules:
            if M.dims[x] and M.dims[y]:
                cols.append([M.act(p) for p in idx])
        if not cols:
            out[key] = F.eye(len(idx))
            continue
        # a = sum c_p p kills M iff sum c_p M(p) = 0; one row per basis element
        rows = []
        for p_pos in range(len(idx)):
            r = []
            for mats in cols:
                r.extend(mats[p_pos].entries())
            rows.append(r)
        S = F.matrix(rows, len(idx), len(rows[0]))
        out[key] = left_nullspace(S, F)
    return out


def ann_quotient_slice(sigma, eng: Membership) -> SliceReport:
    W = eng.W
    A = W.algebra
    mods = [W.nodes[i].module for i in sigma]
    ann = annihilator(A, mods)
    adim = sum(J.nrows() for J in ann.values())
    B = quotient_algebra(A, ann) if adim else A
    sincere = True
    for y in range(B.n):
        x = B.embedding.vertices[y] if B.embedding else y
        if not any(M.dims[x] for M in mods):
            sincere = False
    acyclic = True
    for a in sigma:
        for b in sigma:
            if a < b and eng.hom(a, b) and eng.hom(b, a):
                acyclic = False
    comp = set()
    for i in sigma:
        comp |= set(W.component_of(i))
    sset = set(sigma)
    convex = True
    for s in sigma:
        fw = _reach_within(W, s, comp)
        for t in sigma:
            if t != s and t in fw:
                between = {v for v in fw if t in _reach_within(W, v, comp)}
                if not between <= sset:
                    convex = False
    one = True
    orbit_seen = {}
    for i in sigma:
        v, seen = i, set()
        while W.nodes[v].tau is not None and v not in seen:
            seen.add(v)
            v = W.nodes[v].tau
        root = v
        if root in orbit_seen:
            one = False
        orbit_seen[root] = i
    return SliceReport(B, adim, sincere, acyclic, convex, one)
