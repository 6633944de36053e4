"""Minimal projective resolutions, projective/injective dimension and Ext."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import BoundAlgebra
from .linalg import RowSpace, from_blocks, rank
from .rep import (ModuleMap, Representation, dual, hom_dim, kernel, projective,
                  projective_cover, projective_offsets, radical_bases, simple, syzygy, top_dims)

DEFAULT_CAP = 12


class AtLeast:
    """Lower bound marker: the true value is >= ``value`` (not resolved)."""

    __slots__ = ("value",)

    def __init__(self, value: int):
        self.value = int(value)

    def __repr__(self):
        return f">={self.value}"

    __str__ = __repr__

    def __eq__(self, other):
        return isinstance(other, AtLeast) and other.value == self.value

    def __hash__(self):
        return hash(("AtLeast", self.value))

    # comparisons against ints are answered only when they are decided
    def __ge__(self, k):
        if isinstance(k, int) and k <= self.value:
            return True
        raise ValueError(f"undecided comparison {self} >= {k}")

    def __gt__(self, k):
        if isinstance(k, int) and k < self.value:
            return True
        raise ValueError(f"undecided comparison {self} > {k}")

    def __le__(self, k):
        if isinstance(k, int) and k < self.value:
            return False
        raise ValueError(f"undecided comparison {self} <= {k}")

    def __lt__(self, k):
        if isinstance(k, int) and k <= self.value:
            return False
        raise ValueError(f"undecided comparison {self} < {k}")


def to_json(v):
    return str(v) if isinstance(v, AtLeast) else v


class ResolutionTruncated(ArithmeticError):
    pass


@dataclass
class Step:
    vertices: list  # summand vertices of P_i
    generators: list  # generator rows in the i-th syzygy
    cover: ModuleMap  # P_i -> Omega^i M
    inclusion: ModuleMap | None  # Omega^{i+1} M -> P_i


@dataclass
class Resolution:
    module: Representation
    steps: list = dc_field(default_factory=list)
    syzygies: list = dc_field(default_factory=list)  # Omega^0 = M, Omega^1, ...
    minimal: bool = True
    truncated_at: int | None = None

    @property
    def terms(self):
        return [s.cover.source for s in self.steps]

    @property
    def length(self):
        """pd M, or AtLeast(cap) when truncated."""
        if self.truncated_at is not None:
            return AtLeast(self.truncated_at)
        if self.module.is_zero():
            return 0
        return len(self.steps) - 1

    def differential(self, i: int):
        """P_{i+1} -> P_i as (vertices_i, vertices_{i+1}, generator images)."""
        s0, s1 = self.steps[i], self.steps[i + 1]
        imgs = []
        for z, g in zip(s1.vertices, s1.generators):
            imgs.append(g * s0.inclusion.comps[z])
        return s0.vertices, s1.vertices, imgs


def _in_radical(inc: ModuleMap) -> bool:
    P = inc.target
    for x, R in enumerate(radical_bases(P)):
        C = inc.comps[x]
        if C.nrows() and not RowSpace(R, P.field).contains(C):
            return False
    return True


def _key(M: Representation):
    return (M.dims, tuple(tuple(m.entries()) if m.nrows() and m.ncols() else () for m in M.mats))


def resolve(M: Representation, cap: int = DEFAULT_CAP) -> Resolution:
    """Minimal projective resolution up to P_cap."""
    A = M.algebra
    memo = A._cache.setdefault("resolutions", {})
    k = (_key(M), cap)
    if k in memo:
        return memo[k]
    res = Resolution(M)
    cur = M
    res.syzygies.append(M)
    i = 0
    while not cur.is_zero():
        if i > cap:
            res.truncated_at = cap + 1
            break
        cov = projective_cover(cur)
        K, inc = kernel(cov.map)
        if not _in_radical(inc):
            res.minimal = False
            raise ArithmeticError("projective cover is not minimal (internal error)")
        res.steps.append(Step(cov.vertices, cov.generators, cov.map, inc))
        res.syzygies.append(K)
        cur = K
        i += 1
    memo[k] = res
    return res


def proj_dim(M: Representation, cap: int = DEFAULT_CAP):
    """pd M, or AtLeast(cap + 1) when the resolution does not stop by P_cap."""
    return resolve(M, cap).length


def inj_dim(M: Representation, cap: int = DEFAULT_CAP):
    return proj_dim(dual(M), cap)


def is_projective(M: Representation) -> bool:
    """M is projective iff dim M = sum of dim P_x over its top."""
    A = M.algebra
    top = top_dims(M)
    return M.dim == sum(t * projective(A, x).dim for x, t in enumerate(top))


def pd_at_most_one(M: Representation) -> bool:
    if M.is_zero() or is_projective(M):
        return True
    return is_projective(syzygy(M)[0])


def id_at_most_one(M: Representation) -> bool:
    return pd_at_most_one(dual(M))


def global_dimension(A: BoundAlgebra, cap: int = DEFAULT_CAP):
    best = 0
    for x in range(A.n):
        d = proj_dim(simple(A, x), cap)
        if isinstance(d, AtLeast):
            return d
        best = max(best, d)
    return best


def _hom_from_projectives(A, verts, N):
    """Offsets of Hom(P_verts, N) = sum of N(v)."""
    offs, tot = [], 0
    for v in verts:
        offs.append(tot)
        tot += N.dims[v]
    return offs, tot


def _cochain_matrix(A, verts0, verts1, imgs, N):
    """Precomposition Hom(P_0, N) -> Hom(P_1, N) for the map sending the j-th
    generator of P_1 to imgs[j] in P_0; rows index Hom(P_0, N)."""
    F = A.field
    o0, n0 = _hom_from_projectives(A, verts0, N)
    o1, n1 = _hom_from_projectives(A, verts1, N)
    poffs = projective_offsets(A, verts0)
    placed = []
    for j, (w, row) in enumerate(zip(verts1, imgs)):
        if not N.dims[w]:
            continue
        coefs = row.tolist()[0]
        for k, v in enumerate(verts0):
            if not N.dims[v]:
                continue
            blk = None
            base = poffs[k][w]
            for c, p in enumerate(A.block(v, w)):
                coef = coefs[base + c]
                if coef != 0:
                    t = N.act(p) * coef
                    blk = t if blk is None else blk + t
            if blk is not None:
                placed.append((o0[k], o1[j], blk))
    return from_blocks(n0, n1, placed, F)


def presentation_data(M: Representation):
    """(P0 vertices, P1 vertices, generator images) of a minimal presentation, cached."""
    if M._pres is None:
        cov = projective_cover(M)
        K, inc = kernel(cov.map)
        if K.is_zero():
            M._pres = (list(cov.vertices), [], [])
        else:
            kc = projective_cover(K)
            imgs = [g * inc.comps[w] for w, g in zip(kc.vertices, kc.generators)]
            M._pres = (list(cov.vertices), list(kc.vertices), imgs)
    return M._pres


def _hom_by_presentation(M, N):
    v0, v1, imgs = presentation_data(M)
    n0 = sum(N.dims[v] for v in v0)
    if n0 == 0 or not v1:
        return n0
    return n0 - rank(_cochain_matrix(M.algebra, v0, v1, imgs, N))


def _dual_cached(M):
    if M._dual is None:
        M._dual = dual(M)
    return M._dual


def _direct_cost(M, N):
    q = M.algebra.quiver
    rows = sum(M.dims[a.source] * N.dims[a.target] for a in q.arrows)
    cols = sum(m * n for m, n in zip(M.dims, N.dims))
    return rows * cols


def _presented_cost(M, N):
    v0, v1, _ = presentation_data(M)
    return sum(N.dims[v] for v in v0) * sum(N.dims[v] for v in v1)


def hom_dim_presented(M: Representation, N: Representation) -> int:
    """dim Hom(M, N) as the kernel of Hom(P0, N) -> Hom(P1, N).

    Uses whichever of M or DN gives the smaller system.
    """
    if M.algebra is not N.algebra:
        raise ValueError("modules over different algebras")
    if not any(a and b for a, b in zip(M.dims, N.dims)):
        return 0
    DN = _dual_cached(N)
    if _presented_cost(M, N) <= _presented_cost(DN, _dual_cached(M)):
        return _hom_by_presentation(M, N)
    return _hom_by_presentation(DN, _dual_cached(M))


def fast_hom_dim(M: Representation, N: Representation) -> int:
    """dim Hom(M, N) by the cheapest available route."""
    if not any(a and b for a, b in zip(M.dims, N.dims)):
        return 0
    direct = _direct_cost(M, N)
    if direct <= 4096:
        return hom_dim(M, N)
    DN = _dual_cached(N)
    c1 = _presented_cost(M, N)
    c2 = _presented_cost(DN, _dual_cached(M))
    if min(c1, c2) * 4 >= direct:
        return hom_dim(M, N)
    if c1 <= c2:
        return _hom_by_presentation(M, N)
    return _hom_by_presentation(DN, _dual_cached(M))


def ext_dim(i: int, M: Representation, N: Representation, cap: int = DEFAULT_CAP) -> int:
    """dim Ext^i(M, N) from Hom(minimal resolution of M, N)."""
    if M.algebra is not N.algebra:
        raise ValueError("modules over different algebras")
    if i < 0 or i > cap:
        raise ValueError("degree out of range")
    if i == 0:
        return hom_dim(M, N)
    res = resolve(M, max(cap, i))
    if res.truncated_at is not None and i >= res.truncated_at:
        raise ResolutionTruncated(f"resolution truncated before degree {i}")
    if i >= len(res.steps):
        return 0
    A = M.algebra
    # minimal resolution: Hom(P_i, N) differentials; the complex lives on the tops
    d_in = None
    if i >= 1:
        v0, v1, imgs = res.differential(i - 1)
        d_in = _cochain_matrix(A, v0, v1, imgs, N)
    n_i = sum(N.dims[v] for v in res.steps[i].vertices)
    if i + 1 < len(res.steps):
        v0, v1, imgs = res.differential(i)
        d_out = _cochain_matrix(A, v0, v1, imgs, N)
        ker = n_i - rank(d_out)
    else:
        ker = n_i
    im = rank(d_in) if d_in is not None else 0
    return ker - im


def ext1_by_syzygy(M: Representation, N: Representation) -> int:
    """dim Ext^1(M, N) from 0 -> Hom(M,N) -> Hom(P,N) -> Hom(Omega M,N) -> Ext^1 -> 0."""
    if M.is_zero():
        return 0
    cov = projective_cover(M)
    K, _ = kernel(cov.map)
    if K.is_zero():
        return 0
    hp = sum(N.dims[v] for v in cov.vertices)
    return hom_dim(K, N) - hp + hom_dim(M, N)


def ext_dim_by_dimension_shift(i: int, M: Representation, N: Representation, cap: int = DEFAULT_CAP) -> int:
    """Second route to dim Ext^i via Ext^1(Omega^{i-1} M, N)."""
    if i == 0:
        return hom_dim(M, N)
    res = resolve(M, max(cap, i))
    if i - 1 >= len(res.syzygies):
        return 0
    return ext1_by_syzygy(res.syzygies[i - 1], N)
