"""Knitting of Auslander-Reiten components into bounded windows.

Each window module gets its in- and out-neighbours from the first source
that applies: the radical of a projective (socle quotient of an
injective), the mesh of an already known translate, the knitting rule with
a dimension check, or an explicitly computed almost split sequence.
Modules whose neighbourhoods stay unknown are kept as boundary.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field

from .algebra import BoundAlgebra
from .ar import almost_split_sequence, tau, tau_inv
from .decompose import decompose, find_iso_indecomposable, is_indecomposable
from .rep import (Representation, injective, projective, quotient, radical_bases,
                  relabel, socle_bases, subrep)

DEFAULT_BUDGET = 200
DEFAULT_MAX_DIM = 60
EXPLICIT_LIMIT = 24  # largest middle term computed as an explicit sequence
CERTIFY_LIMIT = 512  # largest module whose indecomposability is re-checked


@dataclass
class Node:
    module: Representation
    seed: str  # projective | injective | mesh
    proj_vertex: int | None = None
    inj_vertex: int | None = None
    tau: int | None = None
    tauinv: int | None = None
    tau_known: bool = False
    tauinv_known: bool = False
    ins: dict | None = None  # index -> multiplicity
    outs: dict | None = None
    in_source: str | None = None
    out_source: str | None = None
    certified: str = "construction"

    @property
    def label(self):
        return self.module.label


@dataclass
class ARWindow:
    algebra: BoundAlgebra
    nodes: list = dc_field(default_factory=list)
    boundary: set = dc_field(default_factory=set)
    complete: bool = False
    seeds: str = "both"
    budget: int = DEFAULT_BUDGET
    max_dim: int = DEFAULT_MAX_DIM
    notes: list = dc_field(default_factory=list)
    meshes: dict = dc_field(default_factory=dict)  # index of right end -> kind

    # views
    @property
    def modules(self):
        return [nd.module for nd in self.nodes]

    def __len__(self):
        return len(self.nodes)

    @property
    def tau(self):
        return {i: nd.tau for i, nd in enumerate(self.nodes) if nd.tau is not None}

    @property
    def arrows(self):
        """Sorted (i, j, multiplicity) irreducible-map triples."""
        out = {}
        for i, nd in enumerate(self.nodes):
            for j, m in (nd.outs or {}).items():
                out[(i, j)] = m
            for j, m in (nd.ins or {}).items():
                out.setdefault((j, i), m)
        return sorted((i, j, m) for (i, j), m in out.items())

    def label(self, i: int) -> str:
        return self.nodes[i].module.label

    def index_of(self, label: str):
        for i, nd in enumerate(self.nodes):
            if nd.module.label == label or label in aliases(self, i):
                return i
        return None

    def is_projective(self, i):
        return self.nodes[i].proj_vertex is not None

    def is_injective(self, i):
        return self.nodes[i].inj_vertex is not None

    def neighbors(self, i):
        nd = self.nodes[i]
        s = set((nd.outs or {}).keys()) | set((nd.ins or {}).keys())
        if nd.tau is not None:
            s.add(nd.tau)
        if nd.tauinv is not None:
            s.add(nd.tauinv)
        for j, other in enumerate(self.nodes):
            if i in (other.outs or {}) or i in (other.ins or {}):
                s.add(j)
        s.discard(i)
        return s

    def components(self):
        """Connected components (sorted index lists) by arrows and tau-links."""
        n = len(self.nodes)
        adj = [set() for _ in range(n)]
        for i, j, _ in self.arrows:
            adj[i].add(j)
            adj[j].add(i)
        for i, nd in enumerate(self.nodes):
            if nd.tau is not None:
                adj[i].add(nd.tau)
                adj[nd.tau].add(i)
        seen = [False] * n
        comps = []
        for s in range(n):
            if seen[s]:
                continue
            stack, comp = [s], []
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        comps.sort()
        return comps

    def component_of(self, i):
        for c in self.components():
            if i in c:
                return c
        return []

    def component_complete(self, comp) -> bool:
        return not (set(comp) & self.boundary)


def aliases(W: ARWindow, i: int):
    nd = W.nodes[i]
    A = W.algebra
    out = []
    if nd.proj_vertex is not None:
        out.append(f"P{A.labels[nd.proj_vertex]}")
    if nd.inj_vertex is not None:
        out.append(f"I{A.labels[nd.inj_vertex]}")
    M = nd.module
    if M.dim == 1:
        out.append(f"S{A.labels[M.support()[0]]}")
    return out


class _Knitter:
    def __init__(self, A: BoundAlgebra, seeds: str, budget: int, max_dim: int, explicit_limit: int):
        self.A = A
        self.W = ARWindow(A, seeds=seeds, budget=budget, max_dim=max_dim)
        self.explicit_limit = explicit_limit
        self.by_dims: dict = {}
        self.P = [projective(A, x) for x in range(A.n)]
        self.I = [injective(A, x) for x in range(A.n)]
        self.queue: list = []
        self.done: set = set()
        self._counter = 0

    # -- module identity -------------------------------------------------
    def find(self, M: Representation):
        for i in self.by_dims.get(M.dims, ()):
            if find_iso_indecomposable(self.W.nodes[i].module, M) is not None:
                return i
        return None

    def _name(self, M: Representation, pv, iv):
        A = self.A
        if pv is not None:
            return f"P{A.labels[pv]}"
        if iv is not None:
            return f"I{A.labels[iv]}"
        if M.dim == 1:
            return f"S{A.labels[M.support()[0]]}"
        self._counter += 1
        return f"M{self._counter}"

    def add(self, M: Representation, seed="mesh"):
        """Index of M in the window, inserting it if new; None if refused."""
        i = self.find(M)
        if i is not None:
            return i
        if M.dim > self.W.max_dim:
            note = f"module of dimension {M.dim} exceeds max_dim"
            if note not in self.W.notes:
                self.W.notes.append(note)
            return None
        if len(self.W.nodes) >= self.W.budget:
            return None
        pv = next((x for x, P in enumerate(self.P)
                   if P.dims == M.dims and find_iso_indecomposable(P, M) is not None), None)
        iv = next((x for x, I in enumerate(self.I)
                   if I.dims == M.dims and find_iso_indecomposable(I, M) is not None), None)
        lab = self._name(M, pv, iv)
        nd = Node(relabel(M, lab), seed, pv, iv)
        if pv is not None:
            nd.tau_known = True
        if iv is not None:
            nd.tauinv_known = True
        if M.dim <= CERTIFY_LIMIT:
            if not is_indecomposable(M):
                raise ArithmeticError("knitting produced a decomposable module (internal error)")
            nd.certified = "endomorphism ring local"
        else:
            nd.certified = "almost split sequence theory"
        idx = len(self.W.nodes)
        self.W.nodes.append(nd)
        self.by_dims.setdefault(M.dims, []).append(idx)
        heapq.heappush(self.queue, idx)
        return idx

    def add_summands(self, M: Representation):
        """Multiset of window indices of the indecomposable summands of M."""
        out: dict = {}
        if M.is_zero():
            return out
        for part in decompose(M).parts:
            j = self.add(part.module)
            if j is None:
                return None
            out[j] = out.get(j, 0) + 1
        return out

    # -- translates ------------------------------------------------------
    def get_tau(self, i):
        nd = self.W.nodes[i]
        if not nd.tau_known:
            t = tau(nd.module)
            nd.tau_known = True
            if t is not None:
                j = self.add(t)
                if j is None:
                    nd.tau_known = False
                    return "refused"
                self._link(j, i)
        return nd.tau

    def get_tauinv(self, i):
        nd = self.W.nodes[i]
        if not nd.tauinv_known:
            t = tau_inv(nd.module)
            nd.tauinv_known = True
            if t is not None:
                j = self.add(t)
                if j is None:
                    nd.tauinv_known = False
                    return "refused"
                self._link(i, j)
        return nd.tauinv

    def _link(self, left, right):
        a, b = self.W.nodes[left], self.W.nodes[right]
        a.tauinv, a.tauinv_known = right, True
        b.tau, b.tau_known = left, True

    # -- neighbourhoods --------------------------------------------------
    def ensure_in(self, i) -> bool:
        nd = self.W.nodes[i]
        if nd.ins is not None:
            return True
        M = nd.module
        if nd.proj_vertex is not None:
            rb = radical_bases(M)
            R, _ = subrep(M, rb)
            s = self.add_summands(R)
            if s is None:
                return False
            nd.ins, nd.in_source = s, "radical"
            return True
        t = self.get_tau(i)
        if t == "refused":
            return False
        tn = self.W.nodes[t]
        if tn.outs is not None:
            nd.ins, nd.in_source = dict(tn.outs), "mesh"
            return True
        # co-knitting from known successors
        if nd.outs is not None:
            cand: dict = {}
            ok = True
            for z, m in nd.outs.items():
                if self.W.nodes[z].proj_vertex is None:
                    tz = self.get_tau(z)
                    if tz == "refused":
                        ok = False
                        break
                    cand[tz] = cand.get(tz, 0) + m
            if ok:
                for y, I in enumerate(self.I):
                    k = self._soc_quotient_mult(y, i)
                    if k is None:
                        ok = False
                        break
                    if k:
                        j = self.add(I)
                        cand[j] = cand.get(j, 0) + k
            if ok and self._mesh_dims_ok(t, cand, i):
                nd.ins, nd.in_source = cand, "knitted"
                tn.outs, tn.out_source = dict(cand), "knitted"
                self.W.meshes[i] = "knitted"
                return True
        return self._explicit(t, i)

    def ensure_out(self, i) -> bool:
        nd = self.W.nodes[i]
        if nd.outs is not None:
            return True
        M = nd.module
        if nd.inj_vertex is not None:
            Q, _, _ = quotient(M, socle_bases(M))
            s = self.add_summands(Q)
            if s is None:
                return False
            nd.outs, nd.out_source = s, "socle quotient"
            return True
        t = self.get_tauinv(i)
        if t == "refused":
            return False
        tn = self.W.nodes[t]
        if tn.ins is not None:
            nd.outs, nd.out_source = dict(tn.ins), "mesh"
            return True
        if nd.ins is not None:
            cand: dict = {}
            ok = True
            for z, m in nd.ins.items():
                if self.W.nodes[z].inj_vertex is None:
                    tz = self.get_tauinv(z)
                    if tz == "refused":
                        ok = False
                        break
                    cand[tz] = cand.get(tz, 0) + m
            if ok:
                for y, P in enumerate(self.P):
                    k = self._rad_mult(y, i)
                    if k is None:
                        ok = False
                        break
                    if k:
                        j = self.add(P)
                        cand[j] = cand.get(j, 0) + k
            if ok and self._mesh_dims_ok(i, cand, t):
                nd.outs, nd.out_source = cand, "knitted"
                tn.ins, tn.in_source = dict(cand), "knitted"
                self.W.meshes[t] = "knitted"
                return True
        return self._explicit(i, t)

    def _explicit(self, left, right) -> bool:
        L, R = self.W.nodes[left], self.W.nodes[right]
        if L.module.dim + R.module.dim > self.explicit_limit:
            return False
        seq = almost_split_sequence(R.module, L.module)
        if not (seq.is_exact() and seq.is_nonsplit()):
            raise ArithmeticError("almost split sequence failed its checks (internal error)")
        mids: dict = {}
        for part in seq.summands:
            j = self.add(part)
            if j is None:
                return False
            mids[j] = mids.get(j, 0) + 1
        if L.outs is None:
            L.outs, L.out_source = dict(mids), "explicit"
        if R.ins is None:
            R.ins, R.in_source = dict(mids), "explicit"
        self.W.meshes[right] = "explicit"
        return True

    def _mesh_dims_ok(self, left, mids, right) -> bool:
        W = self.W
        tot = [0] * self.A.n
        for j, m in mids.items():
            for x, d in enumerate(W.nodes[j].module.dims):
                tot[x] += m * d
        want = [a + b for a, b in zip(W.nodes[left].module.dims, W.nodes[right].module.dims)]
        return tot == want

    def _rad_cache(self):
        c = getattr(self, "_rads", None)
        if c is None:
            c = self._rads = {}
        return c

    def _rad_mult(self, y, i):
        """Multiplicity of window module i in rad P_y."""
        rads = self._rad_cache()
        if ("P", y) not in rads:
            R, _ = subrep(self.P[y], radical_bases(self.P[y]))
            rads[("P", y)] = [p.module for p in decompose(R).parts] if not R.is_zero() else []
        M = self.W.nodes[i].module
        return sum(1 for S in rads[("P", y)]
                   if S.dims == M.dims and find_iso_indecomposable(S, M) is not None)

    def _soc_quotient_mult(self, y, i):
        rads = self._rad_cache()
        if ("I", y) not in rads:
            I = self.I[y]
            Q, _, _ = quotient(I, socle_bases(I))
            rads[("I", y)] = [p.module for p in decompose(Q).parts] if not Q.is_zero() else []
        M = self.W.nodes[i].module
        return sum(1 for S in rads[("I", y)]
                   if S.dims == M.dims and find_iso_indecomposable(S, M) is not None)

    # -- main loop -------------------------------------------------------
    def run(self):
        W = self.W
        if W.seeds in ("projectives", "both"):
            for P in self.P:
                self.add(P, seed="projective")
        if W.seeds in ("injectives", "both"):
            for I in self.I:
                j = self.add(I, seed="injective")
                if j is not None and W.nodes[j].seed == "mesh":
                    W.nodes[j].seed = "injective"
        while self.queue:
            i = heapq.heappop(self.queue)
            if i in self.done:
                continue
            self.done.add(i)
            ok_in = self.ensure_in(i)
            ok_out = self.ensure_out(i)
            if not (ok_in and ok_out):
                W.boundary.add(i)
        for i, nd in enumerate(W.nodes):
            if nd.ins is None or nd.outs is None:
                W.boundary.add(i)
            if nd.proj_vertex is None and not nd.tau_known:
                W.boundary.add(i)
            if nd.inj_vertex is None and not nd.tauinv_known:
                W.boundary.add(i)
        W.complete = not W.boundary and len(self.done) == len(W.nodes)
        return W


def knit(A: BoundAlgebra, seeds: str = "both", budget: int = DEFAULT_BUDGET,
         max_dim: int = DEFAULT_MAX_DIM, explicit_limit: int = EXPLICIT_LIMIT) -> ARWindow:
    """Knit AR components of A from the chosen seeds into a bounded window."""
    if budget < 1:
        raise ValueError("budget must be positive")
    if seeds not in ("projectives", "injectives", "both"):
        raise ValueError("seeds must be projectives, injectives or both")
    return _Knitter(A, seeds, budget, max_dim, explicit_limit).run()
