"""Krull-Schmidt decomposition and isomorphism tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .linalg import (block_diag, inverse, is_invertible, is_zero, left_nullspace, poly_eval, rank,
                     row_basis, submatrix, vstack)
from .rep import HomBasis, ModuleMap, Representation, hom_dim, hom_space, subrep

ISO_SEED = 0xADA
GRID_LIMIT = 12


class DecompositionError(RuntimeError):
    """Raised when splitting fails but the endomorphism ring is not local."""


@dataclass
class Summand:
    module: Representation
    inclusion: ModuleMap
    projection: ModuleMap

    @property
    def idempotent(self) -> ModuleMap:
        return self.projection.then(self.inclusion)


@dataclass
class Decomposition:
    module: Representation
    parts: list  # list[Summand], one per indecomposable copy
    classes: list = dc_field(default_factory=list)  # class index per part

    @property
    def summands(self):
        """(representative, multiplicity) per isomorphism class."""
        reps: dict = {}
        order = []
        for p, c in zip(self.parts, self.classes):
            if c not in reps:
                reps[c] = [p.module, 0]
                order.append(c)
            reps[c][1] += 1
        return [tuple(reps[c]) for c in order]

    @property
    def witnesses(self):
        return [p.idempotent for p in self.parts]

    def __len__(self):
        return len(self.parts)


def _block(f: ModuleMap):
    return block_diag(list(f.comps), f.field)


def _minpoly(F, B):
    return B.minpoly()


def _factor(poly):
    _, facs = poly.factor()
    return [(p, int(e)) for p, e in facs]


def _poly_at(field, p, comps, e):
    coeffs = p.coeffs()
    out = []
    for C in comps:
        P = poly_eval(coeffs, C, field)
        R = field.eye(C.nrows())
        for _ in range(e):
            R = R * P
        out.append(R)
    return out


def _split_by(M: Representation, f: ModuleMap):
    """Generalised-eigenspace splitting of M along f, or None."""
    F = M.field
    B = _block(f)
    if B.nrows() == 0:
        return None
    facs = _factor(_minpoly(F, B))
    if len(facs) < 2:
        return None
    pieces = []
    for p, e in facs:
        mats = _poly_at(F, p, f.comps, e)
        bases = [left_nullspace(C, F) if C.nrows() else F.zeros(0, 0) for C in mats]
        bases = [b if b.ncols() == d else F.zeros(0, d) for b, d in zip(bases, M.dims)]
        pieces.append(bases)
    return pieces


def _candidates(M: Representation, End: HomBasis):
    for f in End:
        yield f
    n = len(End)
    for i in range(n):
        for j in range(n):
            yield End[i].then(End[j])
    for i in range(n):
        for j in range(i + 1, n):
            yield End[i] + End[j]
    if n <= 6:
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    yield End[i].then(End[j]).then(End[k])
    rng = random.Random(ISO_SEED)
    F = M.field
    for _ in range(6):
        acc = None
        for g in End:
            t = g.scale(F.random_scalar(rng))
            acc = t if acc is None else acc + t
        yield acc


def _trace_radical_dim(M: Representation, End: HomBasis) -> int:
    F = M.field
    mats = [_block(f) for f in End]
    d = M.dim
    V = F.zeros(len(mats), d * d)
    W = F.zeros(len(mats), d * d)
    for i, B in enumerate(mats):
        for r in range(d):
            for c in range(d):
                v = B[r, c]
                if v != 0:
                    V[i, r * d + c] = v
                    W[i, c * d + r] = v
    G = V * W.transpose()
    return len(mats) - rank(G)


def _is_local(M: Representation, End: HomBasis) -> bool:
    F = M.field
    n = len(End)
    if n == 1:
        return True
    if F.characteristic == 0:
        rdim = _trace_radical_dim(M, End)
        if n - rdim == 1:
            return True
        # residue algebra bigger than the field: accept a commutative field
        # generated by a single element
        rng = random.Random(ISO_SEED)
        for _ in range(4):
            acc = None
            for g in End:
                t = g.scale(F.random_scalar(rng))
                acc = t if acc is None else acc + t
            facs = _factor(_minpoly(F, _block(acc)))
            if len(facs) == 1 and facs[0][0].degree() == n - rdim:
                return True
        return False
    # char p: when the residue field is k, the shifted basis elements f - lambda
    # span the radical; check it is nilpotent and has codimension one
    d = M.dim
    nil = []
    for f in End:
        B = _block(f)
        facs = _factor(_minpoly(F, B))
        if len(facs) != 1:
            return False
        if facs[0][0].degree() != 1:
            # residue field bigger than k; a single irreducible factor is all we can test
            continue
        c = facs[0][0].coeffs()
        lam = F.scalar(-int(c[0])) / F.scalar(int(c[1]))
        nil.append(B - F.eye(d) * lam)
    if not nil:
        return True
    flat = lambda X: F.matrix([[X[i, j] for i in range(d) for j in range(d)]], 1, d * d)
    J = row_basis(vstack([flat(X) for X in nil], d * d, F))
    if n - J.nrows() != 1:
        return False
    unflat = lambda r: F.matrix([[J[r, i * d + j] for j in range(d)] for i in range(d)], d, d)
    gens = [unflat(r) for r in range(J.nrows())]
    power = gens
    for _ in range(d + 1):
        prods = [a * b for a in power for b in gens]
        prods = [P for P in prods if not is_zero(P)]
        if not prods:
            return True
        P = row_basis(vstack([flat(X) for X in prods], d * d, F))
        power = [F.matrix([[P[r, i * d + j] for j in range(d)] for i in range(d)], d, d)
                 for r in range(P.nrows())]
    return False


def _split(M: Representation):
    """List of per-vertex basis families of an indecomposable splitting of M."""
    F = M.field
    if M.dim == 0:
        return []
    if M.dim == 1:
        return [[F.eye(d) for d in M.dims]]
    if hom_dim(M, M) == 1:
        return [[F.eye(d) for d in M.dims]]
    End = hom_space(M, M)
    if len(End) > 1:
        for f in _candidates(M, End):
            pieces = _split_by(M, f)
            if pieces is None:
                continue
            out = []
            for bases in pieces:
                S, inc = subrep(M, bases)
                for sub in _split(S):
                    out.append([b * inc.comps[x] if b.nrows() else F.zeros(0, M.dims[x])
                                for x, b in enumerate(sub)])
            return out
        if not _is_local(M, End):
            raise DecompositionError(
                f"could not split a module of dimension vector {M.dimvec()} whose "
                "endomorphism ring is not local")
    return [[F.eye(d) for d in M.dims]]


def decompose(M: Representation) -> Decomposition:
    F = M.field
    families = _split(M)
    parts = []
    if families:
        T = [vstack([fam[x] for fam in families], M.dims[x], F) for x in range(M.algebra.n)]
        Ti = [inverse(t) for t in T]
        # deterministic order: by dimension vector, then discovery order
        order = sorted(range(len(families)), key=lambda k: (sum(r.nrows() for r in families[k]),
                                                             [r.nrows() for r in families[k]], k))
        starts = []
        run = [0] * M.algebra.n
        for fam in families:
            starts.append(list(run))
            for x in range(M.algebra.n):
                run[x] += fam[x].nrows()
        for k in order:
            fam = families[k]
            S, inc = subrep(M, fam)
            proj = []
            for x in range(M.algebra.n):
                d = fam[x].nrows()
                proj.append(submatrix(Ti[x], range(M.dims[x]), range(starts[k][x], starts[k][x] + d))
                            if M.dims[x] else F.zeros(0, 0))
            proj = [p if p.ncols() == fam[x].nrows() else F.zeros(M.dims[x], fam[x].nrows())
                    for x, p in enumerate(proj)]
            parts.append(Summand(S, inc, ModuleMap(M, S, proj)))
    classes = []
    reps = []
    for p in parts:
        cls = None
        for c, r in enumerate(reps):
            if r.dims == p.module.dims and indecomposables_isomorphic(r, p.module):
                cls = c
                break
        if cls is None:
            cls = len(reps)
            reps.append(p.module)
        classes.append(cls)
    return Decomposition(M, parts, classes)


def indecomposable_summands(M: Representation):
    return [p.module for p in decompose(M).parts]


def is_indecomposable(M: Representation) -> bool:
    if M.dim == 0:
        return False
    return len(_split(M)) == 1


def find_iso_indecomposable(M: Representation, N: Representation):
    """For indecomposable M, N: an isomorphism M -> N or None (exact).

    When M and N are isomorphic indecomposables the non-isomorphisms form a
    proper subspace of Hom(M, N), so some basis element is invertible.
    """
    if M.dims != N.dims:
        return None
    if M.dim == 0:
        return ModuleMap(M, N, [])
    if hom_dim(M, N) == 0:
        return None
    for f in hom_space(M, N):
        if all(is_invertible(c) for c in f.comps):
            return f
    return None


def indecomposables_isomorphic(M: Representation, N: Representation) -> bool:
    return find_iso_indecomposable(M, N) is not None


def find_isomorphism(M: Representation, N: Representation):
    """An isomorphism M -> N certified by its inverse, or None."""
    if M.algebra is not N.algebra:
        raise ValueError("modules over different algebras")
    if M.dims != N.dims:
        return None
    if M.dim == 0:
        return ModuleMap(M, N, [M.field.zeros(0, 0) for _ in M.dims])
    H = hom_space(M, N)
    if not H:
        return None
    F = M.field
    rng = random.Random(ISO_SEED)
    tries = [H[i] for i in range(len(H))]
    for _ in range(8):
        acc = None
        for g in H:
            t = g.scale(F.random_scalar(rng))
            acc = t if acc is None else acc + t
        tries.append(acc)
    for f in tries:
        if all(is_invertible(c) for c in f.comps):
            g = f.inverse()
            if f.then(g).is_homomorphism():
                return f
    if M.dim <= GRID_LIMIT and len(H) <= 6:
        vals = [F.scalar(v) for v in (-1, 0, 1, 2)]
        from itertools import product
        for cs in product(vals, repeat=len(H)):
            acc = None
            for c, g in zip(cs, H):
                t = g.scale(c)
                acc = t if acc is None else acc + t
            if all(is_invertible(c) for c in acc.comps):
                return acc
    # exact fallback: compare Krull-Schmidt decompositions
    dm, dn = decompose(M), decompose(N)
    if sorted(p.module.dims for p in dm.parts) != sorted(p.module.dims for p in dn.parts):
        return None
    used = [False] * len(dn.parts)
    pairs = []
    for p in dm.parts:
        hit = None
        for j, q in enumerate(dn.parts):
            if not used[j] and q.module.dims == p.module.dims:
                iso = find_iso_indecomposable(p.module, q.module)
                if iso is not None:
                    hit = (j, iso)
                    break
        if hit is None:
            return None
        used[hit[0]] = True
        pairs.append((p, dn.parts[hit[0]], hit[1]))
    comps = [F.zeros(M.dims[x], N.dims[x]) for x in range(M.algebra.n)]
    for p, q, iso in pairs:
        f = p.projection.then(iso).then(q.inclusion)
        comps = [a + b for a, b in zip(comps, f.comps)]
    return ModuleMap(M, N, comps)


def is_isomorphic(M: Representation, N: Representation) -> bool:
    return find_isomorphism(M, N) is not None


def endo_radical(M: Representation):
    """Basis of rad End(M) for indecomposable M with residue field k."""
    End = hom_space(M, M)
    F = M.field
    out = []
    for f in End:
        facs = _factor(_minpoly(F, _block(f)))
        if len(facs) != 1 or facs[0][0].degree() != 1:
            raise DecompositionError("End(M) is not local with residue field k")
        c = facs[0][0].coeffs()
        lam = F.scalar(-_as_int_frac(c[0])) / F.scalar(_as_int_frac(c[1]))
        out.append(f + ModuleMap(M, M, [F.eye(d) * (-lam) for d in M.dims]))
    vecs = [g.vector() for g in out]
    n = len(vecs[0]) if vecs else 0
    if not n:
        return []
    R = F.matrix(vecs, len(vecs), n)
    piv_rows = _independent_rows(R, F)
    if len(End) - len(piv_rows) != 1:
        raise DecompositionError("End(M) is not local")
    return [out[i] for i in piv_rows]


def _independent_rows(R, F):
    from .linalg import rref
    _, piv = rref(R.transpose())
    return list(piv)


def _as_int_frac(c):
    from fractions import Fraction
    if hasattr(c, "p") and hasattr(c, "q"):
        return Fraction(int(c.p), int(c.q))
    return int(c)
