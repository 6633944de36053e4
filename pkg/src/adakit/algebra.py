"""Bound quiver algebras kQ/I with an explicit path basis."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import product as iproduct

from .linalg import Field, RowSpace, nullspace, rank, rref, submatrix
from .quiver import (AlgebraFileError, Arrow, Quiver, Relation, check_relation,
                     format_spec, parse_spec)

ADMISSIBILITY_CAP = 64
MAX_PATHS = 200_000


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class BasisElement:
    word: tuple  # arrow indices, () for a trivial path
    source: int
    target: int
    label: str

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def trivial(self) -> bool:
        return not self.word


def _paths_upto(q: Quiver, maxlen: int):
    """All paths of length 1..maxlen, as a list per length (index = length)."""
    by_len = [[]]
    by_len.append([(a,) for a in range(len(q.arrows))] if maxlen >= 1 else [])
    total = len(by_len[1])
    outs = [q.out_arrows(x) for x in range(q.n)]
    for ell in range(2, maxlen + 1):
        nxt = []
        for w in by_len[-1]:
            for a in outs[q.arrows[w[-1]].target]:
                nxt.append(w + (a,))
        total += len(nxt)
        if total > MAX_PATHS:
            raise AlgebraError("path enumeration exceeds the desk-scale budget; "
                               "the ideal is not admissible or the quiver is too large")
        by_len.append(nxt)
    return by_len


def _block_paths(q: Quiver, by_len):
    """Paths grouped by (source, target), sorted by (length, word)."""
    blocks: dict = {}
    for x in range(q.n):
        blocks.setdefault((x, x), []).append(())
    for ell, ws in enumerate(by_len):
        for w in ws:
            blocks.setdefault((q.word_source(w), q.word_target(w)), []).append(w)
    for k in blocks:
        blocks[k].sort(key=lambda w: (len(w), w))
    return blocks


def _ideal_rows(q: Quiver, relations, maxlen: int, by_len, blocks):
    """Per block, the span of u·rho·v truncated to paths of length <= maxlen.

    Columns are the block paths in *descending* (length, word) order so that
    pivots are the largest paths.
    """
    col_index = {}
    for key, ws in blocks.items():
        order = sorted(ws, key=lambda w: (len(w), w), reverse=True)
        col_index[key] = {w: i for i, w in enumerate(order)}
    ends_at = {x: [()] for x in range(q.n)}
    starts_at = {x: [()] for x in range(q.n)}
    for ws in by_len[1:]:
        for w in ws:
            ends_at[q.word_target(w)].append(w)
            starts_at[q.word_source(w)].append(w)
    rows: dict = {}
    for rel in relations:
        s, t = rel.source(q), rel.target(q)
        lo = rel.min_length()
        if lo > maxlen:
            continue
        for u in ends_at[s]:
            if len(u) + lo > maxlen:
                continue
            for v in starts_at[t]:
                if len(u) + len(v) + lo > maxlen:
                    continue
                key = (q.word_source(u) if u else s, q.word_target(v) if v else t)
                vec = {}
                for c, w in rel.terms:
                    full = u + w + v
                    if len(full) <= maxlen:
                        j = col_index[key][full]
                        vec[j] = vec.get(j, 0) + c
                vec = {j: c for j, c in vec.items() if c != 0}
                if vec:
                    rows.setdefault(key, []).append(vec)
    return rows, col_index


def _reduce_blocks(field: Field, rows, col_index):
    """RREF per block: returns {block: (R, pivots)}."""
    out = {}
    for key, vecs in rows.items():
        n = len(col_index[key])
        M = field.sparse(len(vecs), n, ((i, j, c) for i, v in enumerate(vecs) for j, c in v.items()))
        R, piv = rref(M)
        out[key] = (R, piv)
    return out


class BoundAlgebra:
    """A = kQ/I with a path basis and structure constants.

    ``mult[(i, j)]`` is a tuple of ``(k, c)`` pairs giving b_i * b_j; pairs
    that are not composable are absent (their product is zero).
    """

    def __init__(self, quiver: Quiver, relations, field: Field, basis, mult, loewy: int, name=None):
        self.quiver = quiver
        self.relations = tuple(relations)
        self.field = field
        self.basis = tuple(basis)
        self.mult = mult
        self.loewy = loewy
        self.name = name
        self._op = None
        blocks: dict = {}
        for i, b in enumerate(self.basis):
            blocks.setdefault((b.source, b.target), []).append(i)
        self.blocks = {k: tuple(v) for k, v in blocks.items()}
        self.idempotent = [None] * quiver.n
        self.arrow_element = [None] * len(quiver.arrows)
        self._word_index = {}
        for i, b in enumerate(self.basis):
            if b.trivial:
                self.idempotent[b.source] = i
            elif b.length == 1:
                self.arrow_element[b.word[0]] = i
            self._word_index[(b.source, b.word)] = i
        self._cache: dict = {}
        self.embedding = None

    # basic data
    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def labels(self):
        return self.quiver.labels

    def vertex(self, v) -> int:
        if isinstance(v, int) and 0 <= v < self.n and str(v) not in self.quiver.index:
            return v
        if str(v) in self.quiver.index:
            return self.quiver.index[str(v)]
        raise KeyError(f"unknown vertex {v!r}")

    def block(self, x: int, y: int):
        return self.blocks.get((x, y), ())

    def product(self, i: int, j: int):
        return self.mult.get((i, j), ())

    def mul_vec(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.mult.get((i, j), ()):
                    out[k] = out.get(k, 0) + a * b * c
        return {k: c for k, c in out.items() if c != 0}

    def element_of_word(self, source: int, word) -> int | None:
        return self._word_index.get((source, tuple(word)))

    def components(self):
        return self.quiver.components()

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def to_text(self, comment=None) -> str:
        return format_spec(self.quiver, self.relations, self.field, comment)

    def fingerprint(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()[:12]

    def opposite(self) -> "BoundAlgebra":
        if self._op is None:
            self._op = _opposite(self)
        return self._op

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"<BoundAlgebra{nm} dim={self.dim} over {self.field.name}>"


def _word_label(q: Quiver, word, source: int) -> str:
    return f"e{q.labels[source]}" if not word else q.word_label(word)


def build_algebra(quiver: Quiver, relations, field: Field, cap: int = ADMISSIBILITY_CAP, name=None) -> BoundAlgebra:
    """Compute the path basis and multiplication table of kQ/I."""
    if not isinstance(field, Field):
        raise AlgebraError("field descriptor invalid")
    for rel in relations:
        check_relation(quiver, rel)
    loewy = None
    for L in range(1, cap + 1):
        by_len = _paths_upto(quiver, L)
        if not by_len[L]:
            loewy = L
            break
        blocks = _block_paths(quiver, by_len)
        rows, col_index = _ideal_rows(quiver, relations, L, by_len, blocks)
        red = _reduce_blocks(field, rows, col_index)
        ok = True
        for w in by_len[L]:
            key = (quiver.word_source(w), quiver.word_target(w))
            if key not in red:
                ok = False
                break
            R, piv = red[key]
            if col_index[key][w] not in piv:
                ok = False
                break
        if ok:
            loewy = L
            break
    if loewy is None:
        raise AlgebraError(f"ideal is not admissible below the nilpotency cap {cap}")
    m = loewy
    by_len = _paths_upto(quiver, m - 1) if m > 1 else [[]]
    blocks = _block_paths(quiver, by_len)
    rows, col_index = _ideal_rows(quiver, relations, m - 1, by_len, blocks)
    red = _reduce_blocks(field, rows, col_index)
    # standard monomials: non-pivot columns
    basis_words = []
    for x in range(quiver.n):
        basis_words.append(((), x, x))
    nonpivot = {}
    for key, ws in blocks.items():
        pivset = set(red[key][1]) if key in red else set()
        keep = [w for w in ws if w and col_index[key][w] not in pivset]
        nonpivot[key] = keep
        for w in keep:
            basis_words.append((w, key[0], key[1]))
    basis_words.sort(key=lambda t: (len(t[0]), t[0], t[1]))
    basis = [BasisElement(w, s, t, _word_label(quiver, w, s)) for w, s, t in basis_words]
    index = {(b.source, b.word): i for i, b in enumerate(basis)}
    orders = {key: sorted(ws, key=lambda w: (len(w), w), reverse=True) for key, ws in blocks.items()}

    def normal_form(word, s, t):
        if len(word) >= m:
            return ()
        if (s, word) in index:
            return ((index[(s, word)], field.one()),)
        key = (s, t)
        R, piv = red[key]
        j = col_index[key][word]
        r = piv.index(j)
        order = orders[key]
        out = []
        for c in range(len(order)):
            if c == j:
                continue
            v = R[r, c]
            if v != 0:
                w = order[c]
                out.append((index[(s, w)], -v))
        return tuple(sorted(out))

    mult = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            if a.target != b.source:
                continue
            if a.trivial:
                mult[(i, j)] = ((j, field.one()),)
            elif b.trivial:
                mult[(i, j)] = ((i, field.one()),)
            else:
                nf = normal_form(a.word + b.word, a.source, b.target)
                if nf:
                    mult[(i, j)] = nf
    return BoundAlgebra(quiver, relations, field, basis, mult, m, name=name)


def algebra_from_text(text: str, name=None) -> BoundAlgebra:
    q, rels, field = parse_spec(text)
    return build_algebra(q, rels, field, name=name)


def load_algebra(path) -> BoundAlgebra:
    from pathlib import Path
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise AlgebraFileError(f"cannot read {p}: {e.strerror}")
    return algebra_from_text(text, name=p.stem)


def _opposite(A: BoundAlgebra) -> BoundAlgebra:
    q = A.quiver.opposite()
    rels = [r.reversed() for r in A.relations]
    basis = [BasisElement(tuple(reversed(b.word)), b.target, b.source,
                          _word_label(q, tuple(reversed(b.word)), b.target)) for b in A.basis]
    mult = {(j, i): v for (i, j), v in A.mult.items()}
    name = f"{A.name}^op" if A.name else None
    op = BoundAlgebra(q, rels, A.field, basis, mult, A.loewy, name=name)
    op._op = A
    return op


def opposite_algebra(A: BoundAlgebra) -> BoundAlgebra:
    return A.opposite()


def is_triangular(A: BoundAlgebra) -> bool:
    """No oriented cycles in the digraph x -> y iff e_x A e_y != 0 (x != y),
    and no nontrivial paths from a vertex to itself."""
    succ = {x: set() for x in range(A.n)}
    for (x, y), idx in A.blocks.items():
        if x == y:
            if len(idx) > 1:
                return False
        else:
            succ[x].add(y)
    state = [0] * A.n

    def dfs(v):
        state[v] = 1
        for w in sorted(succ[v]):
            if state[w] == 1:
                return False
            if state[w] == 0 and not dfs(w):
                return False
        state[v] = 2
        return True

    return all(state[v] or dfs(v) for v in range(A.n))


# ---------------------------------------------------------------------------
# presentations of abstract algebras (subcategories, quotients)

class _Abstract:
    """A basic algebra given by a basis adapted to the vertex idempotents."""

    def __init__(self, field, labels, elems, mult, loewy):
        self.field = field
        self.labels = labels  # vertex labels
        self.elems = elems  # list of (source, target, word_hint or None, parent_label)
        self.mult = mult  # dict (i, j) -> {k: c}
        self.loewy = loewy

    def mul_vec(self, u, v):
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.mult.get((i, j), {}).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: c for k, c in out.items() if c != 0}


def _present(ab: _Abstract, parent_quiver: Quiver, name=None) -> BoundAlgebra:
    field = ab.field
    n = len(ab.labels)
    trivial = {}
    for i, (s, t, word, _) in enumerate(ab.elems):
        if word == ():
            trivial[s] = i
    if len(trivial) != n:
        raise AlgebraError("abstract algebra lacks vertex idempotents")
    blocks: dict = {}
    for i, (s, t, word, _) in enumerate(ab.elems):
        blocks.setdefault((s, t), []).append(i)
    rad = [i for i, e in enumerate(ab.elems) if e[2] != ()]
    # rad^2 per block
    sq: dict = {}
    for i in rad:
        for j in rad:
            prod = ab.mult.get((i, j))
            if prod:
                key = (ab.elems[i][0], ab.elems[j][1])
                sq.setdefault(key, []).append(prod)
    arrows = []  # (name, s, t, element index)
    used_names = set()
    for key in sorted(blocks):
        idx = [i for i in blocks[key] if ab.elems[i][2] != ()]
        if not idx:
            continue
        pos = {i: c for c, i in enumerate(blocks[key])}
        span_rows = [{pos[k]: c for k, c in v.items()} for v in sq.get(key, [])]

        def in_span(vecs, extra):
            M = field.sparse(len(vecs) + 1, len(pos), [(r, j, c) for r, v in enumerate(vecs + [extra]) for j, c in v.items()])
            M0 = field.sparse(len(vecs), len(pos), [(r, j, c) for r, v in enumerate(vecs) for j, c in v.items()])
            return rank(M) == rank(M0)

        for i in idx:
            vec = {pos[i]: field.one()}
            if in_span(span_rows, vec):
                continue
            span_rows.append(vec)
            word = ab.elems[i][2]
            if word is not None and len(word) == 1:
                nm = parent_quiver.arrows[word[0]].name
            else:
                nm = ab.elems[i][3].replace(".", "_")
            base, k = nm, 1
            while nm in used_names:
                k += 1
                nm = f"{base}_{k}"
            used_names.add(nm)
            arrows.append((nm, key[0], key[1], i))
    q = Quiver(ab.labels, [Arrow(nm, s, t) for nm, s, t, _ in arrows])
    m = ab.loewy
    # evaluate paths of the new quiver and collect the kernel
    by_len = _paths_upto(q, m) if m >= 1 else [[]]
    relations = []
    gen_rels: list = []
    for ell in range(2, m + 1):
        # kernel among paths of length 2..ell per block, keep new elements
        per_block: dict = {}
        for L in range(2, ell + 1):
            for w in by_len[L] if L < len(by_len) else []:
                per_block.setdefault((q.word_source(w), q.word_target(w)), []).append(w)
        for key in sorted(per_block):
            ws = sorted(per_block[key], key=lambda w: (len(w), w), reverse=True)
            bpos = {i: c for c, i in enumerate(blocks.get(key, []))}
            vals = []
            for w in ws:
                v = {arrows[w[0]][3]: field.one()}
                for a in w[1:]:
                    v = ab.mul_vec(v, {arrows[a][3]: field.one()})
                vals.append(v)
            E = field.sparse(len(ws), len(bpos),
                             [(r, bpos[k], c) for r, v in enumerate(vals) for k, c in v.items()])
            K = nullspace(E.transpose(), field)
            if K.nrows() == 0:
                continue
            R, piv = rref(K)
            for r in range(len(piv)):
                terms = tuple((R[r, c], ws[c]) for c in range(len(ws)) if R[r, c] != 0)
                # ascending order of terms for readability
                terms = tuple(sorted(terms, key=lambda t: (len(t[1]), t[1])))
                cand = Relation(terms)
                if not _in_ideal(q, field, gen_rels, cand, m):
                    gen_rels.append(cand)
    relations = gen_rels
    B = build_algebra(q, relations, field, name=name)
    # dimension check per block
    for key, idx in blocks.items():
        if len(B.block(*key)) != len(idx):
            raise AlgebraError("presentation does not reproduce the algebra (internal error)")
    if B.dim != len(ab.elems):
        raise AlgebraError("presentation does not reproduce the algebra (internal error)")
    B._arrow_elems = [i for *_, i in arrows]
    return B


def _in_ideal(q: Quiver, field: Field, rels, cand: Relation, maxlen: int) -> bool:
    if not rels:
        return False
    by_len = _paths_upto(q, maxlen)
    blocks = _block_paths(q, by_len)
    rows, col_index = _ideal_rows(q, rels, maxlen, by_len, blocks)
    key = (cand.source(q), cand.target(q))
    if key not in rows:
        return False
    n = len(col_index[key])
    vecs = rows[key]
    M = field.sparse(len(vecs), n, ((i, j, c) for i, v in enumerate(vecs) for j, c in v.items()))
    v = field.sparse(1, n, ((0, col_index[key][w], c) for c, w in cand.terms))
    return RowSpace(M, field).contains(v)


@dataclass(frozen=True)
class Embedding:
    """How a derived algebra B sits over its parent: the parent vertex of each
    B-vertex and the parent basis element realising each B-arrow."""

    parent: "BoundAlgebra"
    vertices: list
    arrow_elements: list


def full_subcategory(A: BoundAlgebra, vertices, name=None) -> BoundAlgebra:
    """eAe for e the sum of the chosen vertex idempotents."""
    chosen = sorted({A.vertex(v) for v in vertices})
    if not chosen:
        raise AlgebraError("empty vertex subset")
    if len(chosen) == A.n:
        return A
    newpos = {x: i for i, x in enumerate(chosen)}
    keep = [i for i, b in enumerate(A.basis) if b.source in newpos and b.target in newpos]
    kpos = {i: c for c, i in enumerate(keep)}
    mult = {}
    for a in keep:
        for b in keep:
            prod = A.product(a, b)
            if prod:
                d = {}
                for k, c in prod:
                    if k not in kpos:
                        raise AlgebraError("multiplication not closed on the selected basis")
                    d[kpos[k]] = c
                mult[(kpos[a], kpos[b])] = d
    elems = [(newpos[A.basis[i].source], newpos[A.basis[i].target], A.basis[i].word, A.basis[i].label)
             for i in keep]
    labels = [A.labels[x] for x in chosen]
    ab = _Abstract(A.field, labels, elems, mult, A.loewy)
    B = _present(ab, A.quiver, name=name)
    B.embedding = Embedding(A, chosen, [keep[i] for i in B._arrow_elems])
    return B


def quotient_algebra(A: BoundAlgebra, ideal_rows: dict, name=None) -> BoundAlgebra:
    """A/J where J is given per block (x, y) as a matrix of row vectors in the
    coordinates of ``A.block(x, y)``.  J must be a two-sided ideal."""
    field = A.field
    kept = []  # (parent index)
    reducer = {}
    for key, idx in A.blocks.items():
        J = ideal_rows.get(key)
        if J is None or J.nrows() == 0:
            reducer[key] = None
            kept.extend(idx)
            continue
        # columns largest-first so long paths are eliminated first
        order = list(reversed(idx))
        Jr = submatrix(J, range(J.nrows()), [idx.index(i) for i in order])
        R, piv = rref(Jr)
        pivset = set(piv)
        keep_here = [order[c] for c in range(len(order)) if c not in pivset]
        reducer[key] = (R, piv, order)
        kept.extend(keep_here)
    kept_set = set(kept)
    vertices = [x for x in range(A.n) if A.idempotent[x] in kept_set]
    newpos = {x: i for i, x in enumerate(vertices)}
    kept = [i for i in sorted(kept) if A.basis[i].source in newpos and A.basis[i].target in newpos]
    kpos = {i: c for c, i in enumerate(kept)}

    def reduce(vec: dict, key):
        red = reducer.get(key)
        vec = dict(vec)
        if red is not None:
            R, piv, order = red
            for r, p in enumerate(piv):
                a = vec.get(order[p], 0)
                if a != 0:
                    for c in range(len(order)):
                        v = R[r, c]
                        if v != 0:
                            vec[order[c]] = vec.get(order[c], 0) - a * v
        return {kpos[k]: c for k, c in vec.items() if c != 0 and k in kpos}

    mult = {}
    for a in kept:
        for b in kept:
            prod = A.product(a, b)
            if prod:
                key = (A.basis[a].source, A.basis[b].target)
                d = reduce(dict(prod), key)
                if d:
                    mult[(kpos[a], kpos[b])] = d
    elems = [(newpos[A.basis[i].source], newpos[A.basis[i].target], A.basis[i].word, A.basis[i].label)
             for i in kept]
    labels = [A.labels[x] for x in vertices]
    ab = _Abstract(field, labels, elems, mult, A.loewy)
    B = _present(ab, A.quiver, name=name)
    B.embedding = Embedding(A, vertices, [kept[i] for i in B._arrow_elems])
    return B


def check_associative(A: BoundAlgebra) -> bool:
    for i, j, k in iproduct(range(A.dim), repeat=3):
        left = A.mul_vec(A.mul_vec({i: 1}, {j: 1}), {k: 1})
        right = A.mul_vec({i: 1}, A.mul_vec({j: 1}, {k: 1}))
        if left != right:
            return False
    return True
