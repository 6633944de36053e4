"""One-point extensions B[M] and restriction of modules to derived algebras."""

from __future__ import annotations

from .algebra import AlgebraError, BoundAlgebra, Embedding, build_algebra
from .decompose import is_isomorphic
from .quiver import Arrow, Quiver, Relation
from .rep import (Representation, RepresentationError, projective, projective_cover,
                  projective_offsets, radical_top_socle, syzygy)


def restrict(M: Representation, B: BoundAlgebra) -> Representation:
    """M viewed over a full subcategory or quotient B of its algebra."""
    if B is M.algebra:
        return M
    emb = B.embedding
    if emb is None or emb.parent is not M.algebra:
        raise RepresentationError("algebra is not derived from the module's algebra")
    dims = [M.dims[v] for v in emb.vertices]
    mats = [M.act(e) for e in emb.arrow_elements]
    return Representation(B, dims, mats, label=M.label, check=False)


def _fresh_label(labels):
    ints = [int(v) for v in labels if v.isdigit()]
    k = max(ints) + 1 if ints else len(labels) + 1
    while str(k) in labels:
        k += 1
    return str(k)


def _arrow_names(q: Quiver, count: int):
    taken = set(q.arrow_index)
    if count == 1 and "c" not in taken:
        return ["c"]
    out, k = [], 1
    while len(out) < count:
        nm = f"c{k}"
        if nm not in taken:
            out.append(nm)
        k += 1
    return out


def one_point_extension(B: BoundAlgebra, M: Representation, label=None, name=None) -> BoundAlgebra:
    """B[M]: a new source vertex x with rad P_x isomorphic to M.

    Arrows leave x, one per top generator of M; relations come from the
    generators of the first syzygy of M, read as combinations of paths.
    """
    if M.algebra is not B:
        raise RepresentationError("module is not over the given algebra")
    if M.is_zero():
        raise RepresentationError("one-point extension by the zero module")
    F = B.field
    q = B.quiver
    x_label = label or _fresh_label(q.labels)
    if x_label in q.index:
        raise AlgebraError(f"vertex label {x_label!r} already used")
    cover = projective_cover(M)
    verts = cover.vertices
    names = _arrow_names(q, len(verts))
    n = q.n
    new_arrows = list(q.arrows) + [Arrow(nm, n, y) for nm, y in zip(names, verts)]
    Q2 = Quiver(list(q.labels) + [x_label], new_arrows)
    first = len(q.arrows)
    rels = list(B.relations)
    K, inc, _ = syzygy(M)
    if not K.is_zero():
        offs = projective_offsets(B, verts)
        kcov = projective_cover(K)
        for z, g in zip(kcov.vertices, kcov.generators):
            row = g * inc.comps[z]  # element of the cover at vertex z
            terms = []
            for i, y in enumerate(verts):
                for c, p in enumerate(B.block(y, z)):
                    v = row[0, offs[i][z] + c]
                    if v == 0:
                        continue
                    word = B.basis[p].word
                    if not word:
                        raise AlgebraError(
                            "relation of length < 2 required: the syzygy of M meets the top "
                            f"of its projective cover at vertex {q.labels[z]}")
                    terms.append((v, (first + i,) + tuple(word)))
            if terms:
                rels.append(Relation(tuple(terms)))
    A = build_algebra(Q2, rels, F, name=name or (f"{B.name}[{M.name()}]" if B.name else None))
    A.embedding = None
    # B is the full subcategory of A away from x
    Px = projective(A, n)
    rts = radical_top_socle(Px)
    R = rts.rad
    RB = Representation(B, R.dims[:n], [R.mats[i] for i in range(first)], check=False)
    if R.dims[n] != 0 or not is_isomorphic(RB, M):
        raise AlgebraError("one-point extension: rad P_x does not reproduce M (internal error)")
    A.extension_data = Embedding(B, list(range(n)), [A.arrow_element[i] for i in range(first)])
    return A
