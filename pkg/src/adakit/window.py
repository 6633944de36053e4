"""Structure checks on knitted windows: directedness, rad^infinity, orbit graphs."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .decompose import endo_radical
from .knit import ARWindow
from .linalg import RowSpace
from .homology import fast_hom_dim
from .rep import hom_space

HOM_TABLE_LIMIT = 40  # windows up to this size get a full hom digraph


class WindowRefused(ValueError):
    """The requested check needs a complete window (component)."""


def _sccs(n, succ):
    """Tarjan, iterative; components in discovery order."""
    index, low, on, stack = {}, {}, set(), []
    out = []
    counter = 0
    for root in range(n):
        if root in index:
            continue
        work = [(root, iter(sorted(succ[root])))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on.add(root)
        while work:
            v, it = work[-1]
            nxt = next(it, None)
            if nxt is not None:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on.add(nxt)
                    work.append((nxt, iter(sorted(succ[nxt]))))
                elif nxt in on:
                    low[v] = min(low[v], index[nxt])
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
    return out


class HomTable:
    """Lazy cache of dim Hom between window modules."""

    def __init__(self, W: ARWindow):
        self.W = W
        self._d = {}

    def __call__(self, i, j):
        if (i, j) not in self._d:
            self._d[(i, j)] = fast_hom_dim(self.W.nodes[i].module, self.W.nodes[j].module)
        return self._d[(i, j)]


@dataclass
class WindowChecks:
    directed: dict  # component index -> bool
    directed_scope: str  # hom-digraph | irreducible-maps
    convex: dict
    generalized_standard: dict | None
    rad_infinity_steps: int | None
    limited: bool
    warnings: list = dc_field(default_factory=list)
    cycles: list = dc_field(default_factory=list)

    def to_json(self):
        return {"directed": {str(k): v for k, v in self.directed.items()},
                "directed_scope": self.directed_scope,
                "convex": {str(k): v for k, v in self.convex.items()},
                "generalized_standard": None if self.generalized_standard is None else
                {str(k): v for k, v in self.generalized_standard.items()},
                "rad_infinity_steps": self.rad_infinity_steps,
                "window_limited": self.limited, "warnings": list(self.warnings)}


def _arrow_succ(W):
    succ = [set() for _ in range(len(W))]
    for i, j, _ in W.arrows:
        succ[i].add(j)
    return succ


def window_checks(W: ARWindow, homs: HomTable | None = None, rad_infinity: bool = True) -> WindowChecks:
    n = len(W)
    comps = W.components()
    homs = homs or HomTable(W)
    full = W.complete or n <= HOM_TABLE_LIMIT
    warnings = []
    if full:
        succ = [set(j for j in range(n) if j != i and homs(i, j)) for i in range(n)]
        scope = "hom-digraph"
    else:
        succ = _arrow_succ(W)
        scope = "irreducible-maps"
        warnings.append(f"window has {n} modules; directedness checked along irreducible maps only")
    cyc = [c for c in _sccs(n, succ) if len(c) > 1]
    bad = set(v for c in cyc for v in c)
    directed = {k: not (set(c) & bad) for k, c in enumerate(comps)}
    if not W.complete:
        warnings.append("window incomplete: directedness holds within the window only")
    # convexity of each component inside the window: no path leaves and returns
    convex = {}
    for k, c in enumerate(comps):
        cs = set(c)
        ok = True
        for v in range(n):
            if v in cs:
                continue
            fwd = _reach(succ, v)
            if fwd & cs and any(v in _reach(succ, s) for s in c):
                ok = False
                break
        convex[k] = ok
    gs = None
    steps = None
    if rad_infinity:
        if not W.complete:
            warnings.append("rad^infinity refused: window incomplete")
        else:
            steps, zero = rad_infinity_table(W, homs)
            gs = {k: all(zero[(i, j)] for i in c for j in c) for k, c in enumerate(comps)}
    return WindowChecks(directed, scope, convex, gs, steps, not W.complete, warnings, cyc)


def _reach(succ, v):
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for w in succ[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def rad_infinity_table(W: ARWindow, homs: HomTable | None = None):
    """Iterate rad^{k+1}(X,Y) = sum_Z rad^k(X,Z) rad(Z,Y) to stability.

    Returns (number of steps, {(i,j): rad^infinity(i,j) == 0}).
    """
    if not W.complete:
        raise WindowRefused("rad^infinity needs a complete window")
    n = len(W)
    homs = homs or HomTable(W)
    mods = W.modules
    F = W.algebra.field
    H = {}
    rad = {}
    for i in range(n):
        for j in range(n):
            if homs(i, j) == 0:
                continue
            basis = hom_space(mods[i], mods[j])
            H[(i, j)] = basis
            rad[(i, j)] = list(endo_radical(mods[i])) if i == j else list(basis)

    def span(maps):
        if not maps:
            return []
        vecs = [m.vector() for m in maps]
        R = RowSpace(F.matrix(vecs, len(vecs), len(vecs[0])), F)
        keep, acc = [], None
        for m, v in zip(maps, vecs):
            row = F.matrix([v], 1, len(v))
            if acc is None or not acc.contains(row):
                keep.append(m)
                acc = RowSpace(F.matrix([k.vector() for k in keep], len(keep), len(v)), F)
            if len(keep) == R.dim:
                break
        return keep

    cur = {k: span(v) for k, v in rad.items() if v}
    steps = 0
    while True:
        nxt = {}
        for (i, z), fs in cur.items():
            for j in range(n):
                gs = rad.get((z, j))
                if not gs:
                    continue
                nxt.setdefault((i, j), []).extend(f.then(g) for f in fs for g in gs)
        nxt = {k: span([m for m in v if not m.is_zero()]) for k, v in nxt.items()}
        nxt = {k: v for k, v in nxt.items() if v}
        steps += 1
        same = set(nxt) == set(cur) and all(len(nxt[k]) == len(cur[k]) for k in nxt)
        cur = nxt
        if same or not cur or steps > 4 * n + 4:
            break
    zero = {(i, j): (i, j) not in cur for i in range(n) for j in range(n)}
    return steps, zero


def is_sectional(W: ARWindow, path) -> bool:
    """Irreducible path X_0 -> ... -> X_t with tau X_{i+1} != X_{i-1} throughout."""
    for a, b in zip(path, path[1:]):
        if b not in (W.nodes[a].outs or {}) and a not in (W.nodes[b].ins or {}):
            raise ValueError(f"no irreducible map {W.label(a)} -> {W.label(b)} in the window")
    for k in range(1, len(path) - 1):
        if W.nodes[path[k + 1]].tau == path[k - 1]:
            return False
    return True


@dataclass
class OrbitGraph:
    vertices: list  # tau-orbits (sorted index lists)
    edges: list  # (orbit a, orbit b, count)
    tree: bool

    def to_json(self, W):
        return {"orbits": [[W.label(i) for i in o] for o in self.vertices],
                "edges": [[a, b, m] for a, b, m in self.edges], "tree": self.tree}


def orbit_graph(W: ARWindow, comp) -> OrbitGraph:
    comp = sorted(comp)
    if not W.component_complete(comp):
        raise WindowRefused("orbit graph needs a complete component")
    cs = set(comp)
    parent = {i: i for i in comp}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in comp:
        t = W.nodes[i].tau
        if t is not None and t in cs:
            parent[find(i)] = find(t)
    groups = {}
    for i in comp:
        groups.setdefault(find(i), []).append(i)
    orbits = sorted(groups.values())
    oid = {i: k for k, o in enumerate(orbits) for i in o}
    arrows = {(i, j): m for i, j, m in W.arrows if i in cs and j in cs}
    # arrow orbits under x -> y  |->  tau y -> x
    ap = {a: a for a in arrows}

    def afind(a):
        while ap[a] != a:
            ap[a] = ap[ap[a]]
            a = ap[a]
        return a

    for (x, y) in arrows:
        t = W.nodes[y].tau
        if t is not None and (t, x) in arrows:
            ap[afind((x, y))] = afind((t, x))
    reps = {}
    for a in sorted(arrows):
        reps.setdefault(afind(a), a)
    edges = {}
    for r, (x, y) in sorted(reps.items()):
        key = tuple(sorted((oid[x], oid[y])))
        edges[key] = edges.get(key, 0) + arrows[(x, y)]
    elist = sorted((a, b, m) for (a, b), m in edges.items())
    nv = len(orbits)
    ne = sum(m for _, _, m in elist)
    # connectivity of the orbit graph
    adj = {k: set() for k in range(nv)}
    for a, b, _ in elist:
        adj[a].add(b)
        adj[b].add(a)
    seen = _reach(adj, 0) if nv else set()
    tree = nv > 0 and len(seen) == nv and ne == nv - 1 and all(a != b for a, b, _ in elist)
    return OrbitGraph(orbits, elist, tree)
