"""Auslander-Reiten translates and almost split sequences."""

from __future__ import annotations

from dataclasses import dataclass

from .decompose import decompose, endo_radical, is_indecomposable
from .linalg import (RowSpace, complement_rows, coords, hstack, left_nullspace, solve_left,
                     vstack)
from .rep import (ModuleMap, Representation, RepresentationError, cokernel, direct_sum,
                  dual, hom_space, kernel, map_from_generators, projective_cover,
                  projective_offsets, projective_sum, relabel)


@dataclass
class Presentation:
    """Minimal presentation P1 -> P0 -> M -> 0 by generator data."""

    p0: list  # vertices of P0
    p1: list  # vertices of P1
    images: list  # image in P0(w) of each generator of P1
    cover: object


def minimal_presentation(M: Representation) -> Presentation:
    cov = projective_cover(M)
    K, inc = kernel(cov.map)
    if K.is_zero():
        return Presentation(cov.vertices, [], [], cov)
    kc = projective_cover(K)
    imgs = [g * inc.comps[w] for w, g in zip(kc.vertices, kc.generators)]
    return Presentation(cov.vertices, kc.vertices, imgs, cov)


def transpose(M: Representation):
    """Tr M as a module over the opposite algebra (None if M is projective)."""
    A = M.algebra
    op = A.opposite()
    pres = minimal_presentation(M)
    if not pres.p1:
        return None
    F = A.field
    target = projective_sum(op, pres.p1)
    toffs = projective_offsets(op, pres.p1)
    soffs = projective_offsets(A, pres.p0)
    gens = []
    for k, v in enumerate(pres.p0):
        g = F.zeros(1, target.dims[v])
        for j, (w, row) in enumerate(zip(pres.p1, pres.images)):
            blk_op = op.block(w, v)
            pos = {b: c for c, b in enumerate(blk_op)}
            for c, p in enumerate(A.block(v, w)):
                coef = row[0, soffs[k][w] + c]
                if coef != 0:
                    g[0, toffs[j][v] + pos[p]] += coef
        gens.append(g)
    f = map_from_generators(op, pres.p0, target, gens)
    Tr, _, _ = cokernel(f)
    return Tr


def tau(M: Representation, check: bool = False):
    """tau M = D Tr M, or None for projective M."""
    if check and not is_indecomposable(M):
        raise RepresentationError("tau expects an indecomposable module")
    Tr = transpose(M)
    if Tr is None or Tr.is_zero():
        return None
    D = dual(Tr)  # over op.op, which is the original algebra
    lab = f"tau({M.label})" if M.label else None
    return relabel(D, lab)


def tau_inv(M: Representation, check: bool = False):
    """tau^- M = Tr D M, or None for injective M."""
    if check and not is_indecomposable(M):
        raise RepresentationError("tau_inv expects an indecomposable module")
    t = tau(dual(M))
    if t is None:
        return None
    D = dual(t)
    lab = f"tauinv({M.label})" if M.label else None
    return relabel(D, lab)


def tau_dimension_check(M: Representation, tM: Representation) -> bool:
    """dim Tr M = dim P1* - dim P0* + dim Hom(M, A) for the presentation used."""
    A = M.algebra
    pres = minimal_presentation(M)
    pst = lambda verts: sum(len(A.block(y, v)) for v in verts for y in range(A.n))
    homMA = sum(len(hom_space(M, projective_sum(A, [x]))) for x in range(A.n))
    return tM.dim == pst(pres.p1) - pst(pres.p0) + homMA


@dataclass
class AlmostSplit:
    left: Representation  # tau M
    middle: Representation
    right: Representation  # M
    inclusion: ModuleMap
    projection: ModuleMap
    summands: list  # indecomposable summands of the middle term (with repeats)

    def is_exact(self) -> bool:
        f, g = self.inclusion, self.projection
        if not f.then(g).is_zero():
            return False
        if not f.is_injective() or not g.is_surjective():
            return False
        return f.rank() + g.rank() == self.middle.dim

    def is_nonsplit(self) -> bool:
        # split iff g has a section; solve for a section at the level of Hom(M, E)
        H = hom_space(self.right, self.middle)
        if not H:
            return True
        F = self.right.field
        target = [F.eye(d) for d in self.right.dims]
        comps = [[h.then(self.projection).comps[x] for h in H] for x in range(self.right.algebra.n)]
        n = len(H)
        rows = []
        rhs = []
        for x, d in enumerate(self.right.dims):
            for r in range(d):
                for c in range(d):
                    rows.append([comps[x][k][r, c] for k in range(n)])
                    rhs.append(target[x][r, c])
        Mx = F.matrix(rows, len(rows), n)
        v = F.matrix([rhs], 1, len(rhs)) if rhs else F.zeros(1, 0)
        sol = solve_left(Mx.transpose(), v, F)
        return sol is None


def _lift(cov, f: ModuleMap):
    """Lift f: M -> M along the cover P0 -> M; returns P0 -> P0."""
    A = f.source.algebra
    P = cov.projective
    lifts = []
    for v, g in zip(cov.vertices, cov.generators):
        img = g * f.comps[v]
        x = solve_left(cov.map.comps[v], img, A.field)
        lifts.append(x)
    return map_from_generators(A, cov.vertices, P, lifts)


def _restrict_to(inc: ModuleMap, h: ModuleMap):
    """h: P -> P restricted to the submodule given by inc."""
    F = inc.field
    comps = []
    for x, C in enumerate(inc.comps):
        if C.nrows() == 0:
            comps.append(F.zeros(0, 0))
        else:
            comps.append(coords(C, C * h.comps[x], F))
    return ModuleMap(inc.source, inc.source, comps)


def almost_split_sequence(M: Representation, tM: Representation | None = None) -> AlmostSplit:
    """0 -> tau M -> E -> M -> 0 for indecomposable non-projective M."""
    A = M.algebra
    F = A.field
    if tM is None:
        tM = tau(M)
    if tM is None:
        raise RepresentationError("almost split sequence requested for a projective module")
    cov = projective_cover(M)
    K, inc = kernel(cov.map)
    H = hom_space(K, tM)
    if not H:
        raise ArithmeticError("Ext^1(M, tau M) vanishes (internal error)")
    vec = lambda m: m.vector()
    nH = len(vec(H[0]))
    Hm = F.matrix([vec(h) for h in H], len(H), nH)
    # coboundaries: restrictions of maps P0 -> tau M
    Bvecs = [vec(inc.then(h)) for h in hom_space(cov.projective, tM)]
    Bc = coords(Hm, F.matrix(Bvecs, len(Bvecs), nH), F) if Bvecs else F.zeros(0, len(H))
    Bspace = RowSpace(Bc, F)
    # socle of Ext^1 as a right End(M)-module: xi o f1 is a coboundary for every radical f
    rad = endo_radical(M)
    conds = []
    for f in rad:
        f1 = _restrict_to(inc, _lift(cov, f))
        img = [coords(Hm, F.matrix([vec(f1.then(h))], 1, nH), F) for h in H]
        conds.append(vstack(img, len(H), F))
    # quotient by coboundaries: work in a complement of Bspace
    C = complement_rows(Bspace.basis, len(H), F)
    if conds:
        # xi in C-span with xi*cond in B for each cond; project images mod B
        Q = left_nullspace(Bspace.basis.transpose(), F) if Bspace.dim else None
        blocks = []
        for c in conds:
            im = C * c
            blocks.append(im * Q.transpose() if Q is not None else im)
        Z = hstack(blocks, C.nrows(), F)
        sol = left_nullspace(Z, F)
        if sol.nrows() == 0:
            raise ArithmeticError("no socle element of Ext^1(M, tau M) found (internal error)")
        xi_c = _first_row(sol, F)
        xi_coords = xi_c * C
    else:
        xi_coords = _first_row(C, F)
    xi = None
    for k in range(len(H)):
        c = xi_coords[0, k]
        if c != 0:
            t = H[k].scale(c)
            xi = t if xi is None else xi + t
    # pushout: E = (P0 + tau M) / {(inc k, -xi k)}
    S, incs, projs = direct_sum([cov.projective, tM])
    comps = [inc.comps[x] * incs[0].comps[x] - xi.comps[x] * incs[1].comps[x] for x in range(A.n)]
    E, q, _ = cokernel(ModuleMap(K, S, comps))
    left = incs[1].then(q)
    # E -> M induced by (cover, 0)
    g_comps = []
    for x in range(A.n):
        # q is surjective; solve e = s q, then map s to M via projection to P0 and cover
        PM = projs[0].comps[x] * cov.map.comps[x]
        qx = q.comps[x]
        if qx.nrows() == 0 or qx.ncols() == 0:
            g_comps.append(F.zeros(E.dims[x], M.dims[x]))
            continue
        sec = solve_left(qx, F.eye(E.dims[x]), F)
        g_comps.append(sec * PM)
    right = ModuleMap(E, M, g_comps)
    parts = [p.module for p in decompose(E).parts]
    return AlmostSplit(tM, E, M, left, right, parts)


def _first_row(Mx, F):
    n = Mx.ncols()
    out = F.zeros(1, n)
    for j in range(n):
        out[0, j] = Mx[0, j]
    return out
