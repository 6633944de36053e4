"""Hochschild cohomology dimensions and fundamental group presentations."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field

from .algebra import BoundAlgebra
from .linalg import rank, rref

DEFAULT_DEGREE_CAP = 5
HARD_DEGREE_CAP = 8
COCHAIN_LIMIT = 60000


class CochainTooLarge(ArithmeticError):
    def __init__(self, degree, size):
        self.degree = degree
        self.size = size
        super().__init__(f"cochain space in degree {degree} has dimension {size}")


def _nullity(F, rows, ncols, entries) -> int:
    if ncols == 0:
        return 0
    if rows == 0:
        return ncols
    return ncols - rank(F.sparse(rows, ncols, entries))


def hh0_dim(A: BoundAlgebra) -> int:
    """Dimension of the centre: z with z b = b z for every basis element b."""
    F = A.field
    n = A.dim
    entries = []
    # unknown z = sum z_i b_i; equation (b, k): coefficient of b_k in z b - b z
    row = 0
    for j in range(n):
        acc = {}
        for i in range(n):
            for k, c in A.product(i, j):
                acc[(k, i)] = acc.get((k, i), 0) + c
            for k, c in A.product(j, i):
                acc[(k, i)] = acc.get((k, i), 0) - c
        for (k, i), c in acc.items():
            if c != 0:
                entries.append((row + k, i, c))
        row += n
    # columns are the unknowns; transpose to the row-vector convention
    return _nullity(F, row, n, entries)


def derivation_dim(A: BoundAlgebra) -> int:
    """dim Der(A): linear d with d(b_i b_j) = d(b_i) b_j + b_i d(b_j)."""
    F = A.field
    n = A.dim
    var = lambda i, k: i * n + k  # coefficient of b_k in d(b_i)
    entries = []
    row = 0
    for i in range(n):
        for j in range(n):
            acc = {}
            for m, c in A.product(i, j):
                for k in range(n):
                    acc[(k, var(m, k))] = acc.get((k, var(m, k)), 0) + c
            for k in range(n):
                # d(b_i) b_j = sum_k d_ik b_k b_j
                for m, c in A.product(k, j):
                    acc[(m, var(i, k))] = acc.get((m, var(i, k)), 0) - c
                for m, c in A.product(i, k):
                    acc[(m, var(j, k))] = acc.get((m, var(j, k)), 0) - c
            for (eq, v), c in acc.items():
                if c != 0:
                    entries.append((row + eq, v, c))
            row += n
    return _nullity(F, row, n * n, entries)


def hh1_dim(A: BoundAlgebra) -> int:
    """dim Der(A) - dim Inn(A), with dim Inn(A) = dim A - dim Z(A)."""
    return derivation_dim(A) - (A.dim - hh0_dim(A))


# ---------------------------------------------------------------------------
# reduced bar complex relative to the vertex span

def _radical_basis(A):
    return [i for i, b in enumerate(A.basis) if not b.trivial]


def _chains(A, rad, n):
    """Composable sequences of n radical basis elements."""
    if n == 0:
        return [((), x, x) for x in range(A.n)]
    by_src = {}
    for r in rad:
        by_src.setdefault(A.basis[r].source, []).append(r)
    frontier = [((r,), A.basis[r].source, A.basis[r].target) for r in rad]
    for _ in range(n - 1):
        nxt = []
        for seq, s, t in frontier:
            for r in by_src.get(t, ()):
                nxt.append((seq + (r,), s, A.basis[r].target))
        frontier = nxt
    return frontier


class _Cochains:
    def __init__(self, A, n):
        self.chains = _chains(A, _radical_basis(A), n)
        self.offset = {}
        tot = 0
        for seq, s, t in self.chains:
            self.offset[seq] = (tot, A.block(s, t))
            tot += len(A.block(s, t))
        self.dim = tot


def _differential(A, Cn: _Cochains, Cn1: _Cochains, n: int):
    """Entries of d: C^n -> C^{n+1}, rows C^n coordinates, columns C^{n+1}."""
    entries = []
    for seq, s, t in Cn1.chains:
        col0, tblock = Cn1.offset[seq]
        if not tblock:
            continue
        tpos = {b: c for c, b in enumerate(tblock)}

        def put(sub, coeff, side, elem):
            # contribution coeff * (f(sub) multiplied by elem on the given side)
            if sub not in Cn.offset:
                return
            r0, sblock = Cn.offset[sub]
            for c, b in enumerate(sblock):
                prod = A.product(elem, b) if side == "left" else A.product(b, elem)
                for k, v in prod:
                    entries.append((r0 + c, col0 + tpos[k], coeff * v))

        if n == 0:
            # (d f)(r) = r f(t) - f(s) r for f in sum of e_x A e_x
            entries.extend(_d0_entries(A, Cn, col0, tpos, seq[0], s, t))
            continue
        put(seq[1:], 1, "left", seq[0])
        for i in range(n):
            for k, v in A.product(seq[i], seq[i + 1]):
                sub = seq[:i] + (k,) + seq[i + 2:]
                if sub in Cn.offset:
                    r0, sblock = Cn.offset[sub]
                    sign = -1 if (i + 1) % 2 else 1
                    for c, b in enumerate(sblock):
                        entries.append((r0 + c, col0 + tpos[b], sign * v))
        sign = -1 if (n + 1) % 2 else 1
        put(seq[:-1], sign, "right", seq[-1])
    return entries


def _d0_entries(A, C0, col0, tpos, r, s, t):
    out = []
    base = 0
    for (seq, x, _) in C0.chains:
        blk = A.block(x, x)
        for c, b in enumerate(blk):
            if x == t:
                for k, v in A.product(r, b):
                    out.append((base + c, col0 + tpos[k], v))
            if x == s:
                for k, v in A.product(b, r):
                    out.append((base + c, col0 + tpos[k], -v))
        base += len(blk)
    return out


@dataclass
class CohomologyRecord:
    dims: list
    methods: list
    cochain_dims: list = dc_field(default_factory=list)

    def to_json(self):
        return {"dims": list(self.dims), "methods": list(self.methods),
                "cochain_dims": list(self.cochain_dims)}


def hh_dims_relative(A: BoundAlgebra, cap: int = DEFAULT_DEGREE_CAP) -> CohomologyRecord:
    """dim HH^i for 0 <= i <= cap from the vertex-relative reduced bar complex."""
    if cap < 0 or cap > HARD_DEGREE_CAP:
        raise ValueError(f"degree cap must lie in 0..{HARD_DEGREE_CAP}")
    F = A.field
    spaces = []
    for n in range(cap + 2):
        C = _Cochains(A, n)
        if C.dim > COCHAIN_LIMIT:
            raise CochainTooLarge(n, C.dim)
        spaces.append(C)
    ranks = []
    for n in range(cap + 1):
        a, b = spaces[n], spaces[n + 1]
        if a.dim == 0 or b.dim == 0:
            ranks.append(0)
            continue
        ranks.append(rank(F.sparse(a.dim, b.dim, _differential(A, a, b, n))))
    dims = []
    for n in range(cap + 1):
        dims.append(spaces[n].dim - ranks[n] - (ranks[n - 1] if n else 0))
    return CohomologyRecord(dims, ["relative-bar"] * (cap + 1), [s.dim for s in spaces[:cap + 1]])


def hochschild_record(A: BoundAlgebra, cap: int = DEFAULT_DEGREE_CAP) -> CohomologyRecord:
    """Degree 0 from the centre, degree 1 from derivations, higher from the bar complex.

    Raises ArithmeticError if the two routes disagree in degrees 0 and 1.
    """
    rel = hh_dims_relative(A, cap)
    h0, h1 = hh0_dim(A), hh1_dim(A)
    if rel.dims[0] != h0 or (cap >= 1 and rel.dims[1] != h1):
        raise ArithmeticError(f"Hochschild routes disagree: centre/derivations ({h0}, {h1}) "
                              f"vs bar complex {rel.dims[:2]}")
    methods = ["center", "derivations"] + ["relative-bar"] * (cap - 1)
    return CohomologyRecord(rel.dims, methods[:cap + 1], rel.cochain_dims)


# ---------------------------------------------------------------------------
# fundamental group presentation

@dataclass
class Pi1Presentation:
    generators: list  # arrow names off the spanning tree
    tree: list  # arrow names in the spanning tree
    relators: list  # words: lists of (generator, +1/-1)
    minimal_relations: list  # lists of (coefficient text, path word)

    @property
    def free_rank(self):
        """Rank when no relators are present (free group), else None."""
        return len(self.generators) if not self.relators else None

    def to_json(self):
        return {"generators": list(self.generators), "tree_arrows": list(self.tree),
                "relators": [[f"{g}{'' if e > 0 else '^-1'}" for g, e in r] for r in self.relators],
                "minimal_relations": [[[c, w] for c, w in rel] for rel in self.minimal_relations],
                "free_rank": self.free_rank}


def spanning_tree(A: BoundAlgebra):
    """Breadth-first spanning forest of the underlying graph, by declaration order."""
    q = A.quiver
    adj = {x: [] for x in range(q.n)}
    for k, a in enumerate(q.arrows):
        adj[a.source].append((k, a.target))
        adj[a.target].append((k, a.source))
    seen = set()
    tree = []
    for root in range(q.n):
        if root in seen:
            continue
        seen.add(root)
        dq = deque([root])
        while dq:
            v = dq.popleft()
            for k, w in sorted(adj[v]):
                if w not in seen:
                    seen.add(w)
                    tree.append(k)
                    dq.append(w)
    return sorted(tree)


def _nonzero_paths(A: BoundAlgebra):
    """(source, target, word, vector in A) for paths of length >= 1 with nonzero image."""
    q = A.quiver
    out = []
    frontier = []
    for k, a in enumerate(q.arrows):
        e = A.arrow_element[k]
        if e is None:
            continue
        frontier.append((a.source, a.target, (k,), {e: A.field.one()}))
    while frontier:
        nxt = []
        for s, t, w, vec in frontier:
            out.append((s, t, w, vec))
            for k, a in enumerate(q.arrows):
                if a.source != t or A.arrow_element[k] is None:
                    continue
                v2 = A.mul_vec(vec, {A.arrow_element[k]: A.field.one()})
                if v2:
                    nxt.append((s, a.target, w + (k,), v2))
        frontier = nxt
    return out


def minimal_relations(A: BoundAlgebra):
    """Supports of minimal relations with at least two terms.

    Per block the nonzero path images form a vector configuration; its
    fundamental circuits against a greedy basis are minimal relations and
    generate the same identification of paths as all minimal relations.
    """
    F = A.field
    blocks = {}
    for s, t, w, vec in _nonzero_paths(A):
        blocks.setdefault((s, t), []).append((w, vec))
    rels = []
    for (s, t) in sorted(blocks):
        items = sorted(blocks[(s, t)], key=lambda p: (len(p[0]), p[0]))
        idx = A.block(s, t)
        pos = {b: c for c, b in enumerate(idx)}
        basis_rows, basis_words = [], []
        for w, vec in items:
            row = [0] * len(idx)
            for k, c in vec.items():
                row[pos[k]] = c
            if basis_rows:
                M = F.matrix(basis_rows + [row], len(basis_rows) + 1, len(idx))
                if rank(M) == len(basis_rows) + 1:
                    basis_rows.append(row)
                    basis_words.append(w)
                    continue
                coeffs = _combination(F, basis_rows, row)
                terms = [(F.fmt(-c), bw) for c, bw in zip(coeffs, basis_words) if c != 0]
                rels.append([(F.fmt(F.one()), w)] + terms)
            else:
                basis_rows.append(row)
                basis_words.append(w)
    return rels


def _combination(F, basis_rows, row):
    """Coefficients c with row = sum c_i basis_rows[i] (rows independent)."""
    m = len(basis_rows)
    n = len(row)
    # solve [B^T | row^T] by row reduction
    aug = F.matrix([[basis_rows[i][j] for i in range(m)] + [row[j]] for j in range(n)], n, m + 1)
    R, piv = rref(aug)
    coeffs = [F.zero()] * m
    for r, p in enumerate(piv):
        if p < m:
            coeffs[p] = R[r, m]
    return coeffs


def pi1_export(A: BoundAlgebra) -> Pi1Presentation:
    q = A.quiver
    tree = spanning_tree(A)
    tset = set(tree)
    gens = [q.arrows[k].name for k in range(len(q.arrows)) if k not in tset]
    rels = minimal_relations(A)
    named = []
    relators = []

    def gword(w):
        return [(q.arrows[k].name, 1) for k in w if k not in tset]

    for rel in rels:
        named.append([(c, ".".join(q.arrows[k].name for k in w)) for c, w in rel])
        w0 = rel[0][1]
        for _, w in rel[1:]:
            r = gword(w0) + [(g, -e) for g, e in reversed(gword(w))]
            r = _free_reduce(r)
            if r:
                relators.append(r)
    return Pi1Presentation(gens, [q.arrows[k].name for k in tree], relators, named)


def _free_reduce(word):
    out = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return out
