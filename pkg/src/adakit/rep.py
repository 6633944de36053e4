"""Right modules over a bound quiver algebra, as quiver representations.

Conventions: a vector of M(x) is a row; the arrow a: x -> y acts as
v -> v * M(a), so M(a) has shape dims[x] x dims[y] and a path acts by the
left-to-right product of its arrow matrices.  A module map f: M -> N is a
family f_x of dims_M[x] x dims_N[x] matrices with M(a) f_y = f_x N(a).
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import BoundAlgebra
from .linalg import (Field, block_diag, complement_rows, coords, hstack, inverse,
                     is_zero, left_nullspace, nullspace, paste, rank, row_basis, shape,
                     submatrix, vstack)


class RepresentationError(ValueError):
    pass


class Representation:
    """A finite-dimensional right A-module."""

    def __init__(self, algebra: BoundAlgebra, dims, mats, label=None, check=True):
        self.algebra = algebra
        self.field: Field = algebra.field
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != algebra.n:
            raise RepresentationError("dimension vector length mismatch")
        q = algebra.quiver
        self.mats = tuple(mats)
        if len(self.mats) != len(q.arrows):
            raise RepresentationError("one matrix per arrow required")
        for a, M in zip(q.arrows, self.mats):
            if shape(M) != (self.dims[a.source], self.dims[a.target]):
                raise RepresentationError(f"matrix for arrow {a.name} has wrong shape")
        self.label = label
        self._act: dict = {}
        self._pres = None  # cached minimal presentation data
        self._dual = None
        if check and not self.satisfies_relations():
            raise RepresentationError("representation violates a relation")

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def support(self):
        return [x for x, d in enumerate(self.dims) if d]

    def dimvec(self) -> str:
        return "(" + ",".join(str(d) for d in self.dims) + ")"

    def act_word(self, source: int, word):
        if not word:
            return self.field.eye(self.dims[source])
        R = self.mats[word[0]]
        for a in word[1:]:
            R = R * self.mats[a]
        return R

    def act(self, b: int):
        """Matrix of the basis element b acting on the right."""
        R = self._act.get(b)
        if R is None:
            e = self.algebra.basis[b]
            R = self.act_word(e.source, e.word)
            self._act[b] = R
        return R

    def satisfies_relations(self) -> bool:
        q = self.algebra.quiver
        for rel in self.algebra.relations:
            s, t = rel.source(q), rel.target(q)
            if self.dims[s] == 0 or self.dims[t] == 0:
                continue
            acc = self.field.zeros(self.dims[s], self.dims[t])
            for c, w in rel.terms:
                acc += self.act_word(s, w) * c
            if not is_zero(acc):
                return False
        return True

    def name(self) -> str:
        return self.label or f"M{self.dimvec()}"

    def __repr__(self):
        return f"<Rep {self.label or ''}{self.dimvec()}>"


class ModuleMap:
    """A morphism of representations, one matrix per vertex."""

    def __init__(self, source: Representation, target: Representation, comps, check=False):
        self.source = source
        self.target = target
        self.comps = tuple(comps)
        if check and not self.is_homomorphism():
            raise RepresentationError("matrices do not intertwine the arrow actions")

    @property
    def field(self):
        return self.source.field

    def is_homomorphism(self) -> bool:
        for i, a in enumerate(self.source.algebra.quiver.arrows):
            lhs = self.source.mats[i] * self.comps[a.target]
            rhs = self.comps[a.source] * self.target.mats[i]
            if lhs != rhs:
                return False
        return True

    def then(self, g: "ModuleMap") -> "ModuleMap":
        """Composite g o self."""
        return ModuleMap(self.source, g.target, [f * h for f, h in zip(self.comps, g.comps)])

    def __add__(self, other):
        return ModuleMap(self.source, self.target, [a + b for a, b in zip(self.comps, other.comps)])

    def scale(self, c):
        c = self.field.scalar(c)
        return ModuleMap(self.source, self.target, [a * c for a in self.comps])

    def is_zero(self) -> bool:
        return all(is_zero(c) for c in self.comps)

    def ranks(self):
        return [rank(c) for c in self.comps]

    def rank(self) -> int:
        return sum(self.ranks())

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def inverse(self) -> "ModuleMap":
        return ModuleMap(self.target, self.source, [inverse(c) for c in self.comps])

    def block_matrix(self):
        return block_diag(self.comps, self.field)

    def vector(self):
        out = []
        for c in self.comps:
            m, n = shape(c)
            if m and n:
                out.extend(c.entries())
        return out


def identity_map(M: Representation) -> ModuleMap:
    return ModuleMap(M, M, [M.field.eye(d) for d in M.dims])


def zero_map(M: Representation, N: Representation) -> ModuleMap:
    return ModuleMap(M, N, [M.field.zeros(a, b) for a, b in zip(M.dims, N.dims)])


def zero_module(A: BoundAlgebra) -> Representation:
    F = A.field
    return Representation(A, [0] * A.n, [F.zeros(0, 0) for _ in A.quiver.arrows], label="0", check=False)


def _lbl(A: BoundAlgebra, x: int) -> str:
    return A.labels[x]


# ---------------------------------------------------------------------------
# standard modules

def simple(A: BoundAlgebra, x: int) -> Representation:
    key = ("S", x)
    if key not in A._cache:
        dims = [1 if v == x else 0 for v in range(A.n)]
        mats = [A.field.zeros(dims[a.source], dims[a.target]) for a in A.quiver.arrows]
        A._cache[key] = Representation(A, dims, mats, label=f"S{_lbl(A, x)}", check=False)
    return A._cache[key]


def projective(A: BoundAlgebra, x: int) -> Representation:
    """P_x = e_x A: basis the reduced paths starting at x."""
    key = ("P", x)
    if key not in A._cache:
        F = A.field
        dims = [len(A.block(x, y)) for y in range(A.n)]
        mats = []
        for bi, a in enumerate(A.quiver.arrows):
            src = A.block(x, a.source)
            tgt = A.block(x, a.target)
            pos = {k: c for c, k in enumerate(tgt)}
            beta = A.arrow_element[bi]
            M = F.zeros(len(src), len(tgt))
            for r, p in enumerate(src):
                for k, c in A.product(p, beta):
                    M[r, pos[k]] = c
            mats.append(M)
        A._cache[key] = Representation(A, dims, mats, label=f"P{_lbl(A, x)}", check=False)
    return A._cache[key]


def dual(M: Representation) -> Representation:
    """D M = Hom_k(M, k) as a module over the opposite algebra."""
    op = M.algebra.opposite()
    lab = None
    if M.label:
        lab = f"D{M.label}"
    return Representation(op, M.dims, [m.transpose() for m in M.mats], label=lab, check=False)


def dual_map(f: ModuleMap) -> ModuleMap:
    return ModuleMap(dual(f.target), dual(f.source), [c.transpose() for c in f.comps])


def injective(A: BoundAlgebra, x: int) -> Representation:
    """I_x = D(A e_x), built through the opposite algebra."""
    key = ("I", x)
    if key not in A._cache:
        P = projective(A.opposite(), x)
        D = dual(P)
        A._cache[key] = Representation(A, D.dims, D.mats, label=f"I{_lbl(A, x)}", check=False)
    return A._cache[key]


def standard_modules(A: BoundAlgebra):
    """Dict with lists 'P', 'I', 'S' indexed by vertex."""
    return {
        "P": [projective(A, x) for x in range(A.n)],
        "I": [injective(A, x) for x in range(A.n)],
        "S": [simple(A, x) for x in range(A.n)],
    }


def relabel(M: Representation, label) -> Representation:
    R = Representation(M.algebra, M.dims, M.mats, label=label, check=False)
    R._act = M._act
    return R


def from_dual(M: Representation, A: BoundAlgebra, label=None) -> Representation:
    """View D(M) for M over A^op as an A-module."""
    if M.algebra is not A.opposite():
        raise RepresentationError("module is not over the opposite algebra")
    return Representation(A, M.dims, [m.transpose() for m in M.mats], label=label, check=False)


# ---------------------------------------------------------------------------
# hom spaces

class HomBasis(list):
    """Basis of Hom(M, N) as a list of ModuleMaps."""

    def __init__(self, source, target, maps):
        super().__init__(maps)
        self.source = source
        self.target = target

    @property
    def dim(self):
        return len(self)


def _hom_system(M: Representation, N: Representation):
    if M.algebra is not N.algebra:
        raise RepresentationError("modules over different algebras")
    A = M.algebra
    F = M.field
    offs = []
    tot = 0
    for x in range(A.n):
        offs.append(tot)
        tot += M.dims[x] * N.dims[x]
    entries = []
    row = 0
    for i, a in enumerate(A.quiver.arrows):
        s, t = a.source, a.target
        ms, mt, ns, nt = M.dims[s], M.dims[t], N.dims[s], N.dims[t]
        if ms == 0 or nt == 0:
            continue
        # rows indexed by (r, l) in ms x nt
        Ma = M.mats[i].tolist() if mt else None
        Na = N.mats[i].tolist() if ns else None
        if mt:
            for r in range(ms):
                for j, v in enumerate(Ma[r]):
                    if v != 0:
                        base = offs[t] + j * nt
                        for l in range(nt):
                            entries.append((row + r * nt + l, base + l, v))
        if ns:
            for k in range(ns):
                for l, v in enumerate(Na[k]):
                    if v != 0:
                        for r in range(ms):
                            entries.append((row + r * nt + l, offs[s] + r * ns + k, -v))
        row += ms * nt
    S = F.sparse(row, tot, entries)
    return S, offs


def _unflatten(M, N, vec_row, offs):
    F = M.field
    comps = []
    for x in range(M.algebra.n):
        m, n = M.dims[x], N.dims[x]
        C = F.zeros(m, n)
        o = offs[x]
        for r in range(m):
            for c in range(n):
                v = vec_row[o + r * n + c]
                if v != 0:
                    C[r, c] = v
        comps.append(C)
    return ModuleMap(M, N, comps)


def hom_space(M: Representation, N: Representation) -> HomBasis:
    S, offs = _hom_system(M, N)
    if S.ncols() == 0:
        return HomBasis(M, N, [])
    K = nullspace(S, M.field)
    rows = K.tolist()
    return HomBasis(M, N, [_unflatten(M, N, r, offs) for r in rows])


def hom_dim(M: Representation, N: Representation) -> int:
    S, _ = _hom_system(M, N)
    return S.ncols() - rank(S)


def hom_nonzero(M: Representation, N: Representation) -> bool:
    if not any(a and b for a, b in zip(M.dims, N.dims)):
        return False
    return hom_dim(M, N) > 0


def map_coords(basis: HomBasis, f: ModuleMap):
    """Coordinates of f in a hom basis (raises if f is not in the span)."""
    F = f.field
    n = len(f.vector())
    B = F.matrix([b.vector() for b in basis], len(basis), n)
    v = F.matrix([f.vector()], 1, n)
    return coords(B, v, F)


# ---------------------------------------------------------------------------
# sub- and quotient modules

def _sub_mats(M: Representation, bases):
    F = M.field
    mats = []
    for i, a in enumerate(M.algebra.quiver.arrows):
        Us, Ut = bases[a.source], bases[a.target]
        if Us.nrows() == 0 or Ut.nrows() == 0:
            mats.append(F.zeros(Us.nrows(), Ut.nrows()))
            continue
        mats.append(coords(Ut, Us * M.mats[i], F))
    return mats


def subrep(M: Representation, bases, label=None):
    """Submodule with given per-vertex basis rows; returns (S, inclusion)."""
    S = Representation(M.algebra, [b.nrows() for b in bases], _sub_mats(M, bases), label=label, check=False)
    return S, ModuleMap(S, M, list(bases))


def quotient(M: Representation, bases, label=None):
    """Quotient by the submodule spanned by the given rows; returns (Q, proj, section)."""
    F = M.field
    C, P = [], []
    for x in range(M.algebra.n):
        U = bases[x]
        d = M.dims[x]
        Cx = complement_rows(U, d, F)
        T = vstack([U, Cx], d, F)
        Ti = inverse(T)
        P.append(submatrix(Ti, range(d), range(U.nrows(), d)) if d else F.zeros(0, 0))
        C.append(Cx)
    mats = []
    for i, a in enumerate(M.algebra.quiver.arrows):
        mats.append(C[a.source] * M.mats[i] * P[a.target])
    Q = Representation(M.algebra, [c.nrows() for c in C], mats, label=label, check=False)
    proj = ModuleMap(M, Q, P)
    section = C  # rows lifting the quotient basis (vector-space splitting only)
    return Q, proj, section


def kernel(f: ModuleMap, label=None):
    F = f.field
    bases = [left_nullspace(c, F) if c.nrows() else F.zeros(0, 0) for c in f.comps]
    bases = [_fix_cols(b, d, F) for b, d in zip(bases, f.source.dims)]
    return subrep(f.source, bases, label=label)


def _fix_cols(B, d, F):
    if B.ncols() != d:
        return F.zeros(0, d)
    return B


def image(f: ModuleMap, label=None):
    F = f.field
    bases = [_fix_cols(row_basis(c) if c.nrows() and c.ncols() else F.zeros(0, c.ncols()), d, F)
             for c, d in zip(f.comps, f.target.dims)]
    return subrep(f.target, bases, label=label)


def cokernel(f: ModuleMap, label=None):
    _, inc = image(f)
    return quotient(f.target, inc.comps, label=label)


# ---------------------------------------------------------------------------
# direct sums

def direct_sum(mods, label=None):
    """(M, inclusions, projections) for M = the direct sum of ``mods``."""
    mods = list(mods)
    if not mods:
        raise RepresentationError("empty direct sum")
    A = mods[0].algebra
    F = A.field
    dims = [sum(m.dims[x] for m in mods) for x in range(A.n)]
    mats = [block_diag([m.mats[i] for m in mods], F) for i in range(len(A.quiver.arrows))]
    S = Representation(A, dims, mats, label=label, check=False)
    incs, projs = [], []
    offs = [0] * A.n
    for m in mods:
        ic, pc = [], []
        for x in range(A.n):
            I = F.zeros(m.dims[x], dims[x])
            for r in range(m.dims[x]):
                I[r, offs[x] + r] = F.one()
            ic.append(I)
            pc.append(I.transpose())
            offs[x] += m.dims[x]
        incs.append(ModuleMap(m, S, ic))
        projs.append(ModuleMap(S, m, pc))
    return S, incs, projs


def block_module(M: Representation, N: Representation, zeta):
    """Module on N ⊕ M with arrow matrices [[N(a), 0], [zeta_a, M(a)]]."""
    A = M.algebra
    F = M.field
    dims = [N.dims[x] + M.dims[x] for x in range(A.n)]
    mats = []
    for i, a in enumerate(A.quiver.arrows):
        s, t = a.source, a.target
        E = F.zeros(dims[s], dims[t])
        paste(E, N.mats[i], 0, 0)
        paste(E, zeta[i], N.dims[s], 0)
        paste(E, M.mats[i], N.dims[s], N.dims[t])
        mats.append(E)
    return Representation(A, dims, mats, check=False)


# ---------------------------------------------------------------------------
# radical, top, socle

def radical_bases(M: Representation):
    F = M.field
    q = M.algebra.quiver
    out = []
    for x in range(M.algebra.n):
        ims = [M.mats[i] for i in q.in_arrows(x) if M.mats[i].nrows()]
        if ims and M.dims[x]:
            out.append(row_basis(vstack(ims, M.dims[x], F)))
        else:
            out.append(F.zeros(0, M.dims[x]))
    return out


def socle_bases(M: Representation):
    F = M.field
    q = M.algebra.quiver
    out = []
    for x in range(M.algebra.n):
        d = M.dims[x]
        outs = [M.mats[i] for i in q.out_arrows(x) if M.mats[i].ncols()]
        if not d:
            out.append(F.zeros(0, 0))
        elif not outs:
            out.append(F.eye(d))
        else:
            H = hstack(outs, d, F)
            out.append(left_nullspace(H, F))
    return out


@dataclass
class RadTopSoc:
    rad: Representation
    rad_inclusion: ModuleMap
    top: Representation
    top_projection: ModuleMap
    soc: Representation
    soc_inclusion: ModuleMap


def radical_top_socle(M: Representation) -> RadTopSoc:
    rb = radical_bases(M)
    rad, rinc = subrep(M, rb)
    top, tproj, _ = quotient(M, rb)
    soc, sinc = subrep(M, socle_bases(M))
    return RadTopSoc(rad, rinc, top, tproj, soc, sinc)


def top_dims(M: Representation):
    return [M.dims[x] - b.nrows() for x, b in enumerate(radical_bases(M))]


def socle_dims(M: Representation):
    return [b.nrows() for b in socle_bases(M)]


# ---------------------------------------------------------------------------
# projective sums, covers and envelopes

def projective_sum(A: BoundAlgebra, verts) -> Representation:
    verts = list(verts)
    if not verts:
        return zero_module(A)
    S, _, _ = direct_sum([projective(A, v) for v in verts])
    return S


def projective_offsets(A: BoundAlgebra, verts):
    """offs[i][y] = offset of summand i inside P(y) of the projective sum."""
    offs = []
    run = [0] * A.n
    for v in verts:
        offs.append(list(run))
        for y in range(A.n):
            run[y] += len(A.block(v, y))
    return offs


def map_from_generators(A: BoundAlgebra, verts, target: Representation, gens) -> ModuleMap:
    """The map from the projective sum on ``verts`` sending the top generator
    of the i-th summand to the row vector gens[i] in target(verts[i])."""
    F = A.field
    P = projective_sum(A, verts)
    comps = []
    for y in range(A.n):
        C = F.zeros(P.dims[y], target.dims[y])
        r = 0
        for v, g in zip(verts, gens):
            for p in A.block(v, y):
                if target.dims[y]:
                                paste(C, g * target.act(p), r, 0)
                r += 1
        comps.append(C)
    return ModuleMap(P, target, comps)


@dataclass
class Cover:
    projective: Representation
    map: ModuleMap
    vertices: list  # summand vertices, in order
    generators: list  # generator rows in the covered module


def projective_cover(M: Representation) -> Cover:
    if M.is_zero():
        raise RepresentationError("projective cover of the zero module")
    A = M.algebra
    F = M.field
    verts, gens = [], []
    for x, R in enumerate(radical_bases(M)):
        C = complement_rows(R, M.dims[x], F)
        for r in range(C.nrows()):
            verts.append(x)
            gens.append(submatrix(C, [r], range(M.dims[x])))
    f = map_from_generators(A, verts, M, gens)
    return Cover(f.source, f, verts, gens)


def syzygy(M: Representation):
    """(Omega M, inclusion into the projective cover, cover)."""
    cov = projective_cover(M)
    K, inc = kernel(cov.map)
    return K, inc, cov


@dataclass
class Envelope:
    injective: Representation
    map: ModuleMap
    vertices: list


def injective_envelope(M: Representation) -> Envelope:
    if M.is_zero():
        raise RepresentationError("injective envelope of the zero module")
    A = M.algebra
    D = dual(M)
    cov = projective_cover(D)
    f = dual_map(cov.map)  # D(M)^* -> D(P): lands over A
    tgt = Representation(A, f.target.dims, f.target.mats, check=False)
    # f.source is DD M which equals M as matrices
    return Envelope(tgt, ModuleMap(M, tgt, f.comps), cov.vertices)


def cosyzygy(M: Representation):
    env = injective_envelope(M)
    Q, proj, _ = cokernel(env.map)
    return Q, proj, env


# ---------------------------------------------------------------------------
# text format for modules

def parse_rep(text: str, A: BoundAlgebra, label=None) -> Representation:
    """``dims d1 d2 ...`` then per arrow ``arrow <name>`` followed by rows."""
    from fractions import Fraction
    from .quiver import AlgebraFileError
    F = A.field
    dims = None
    mats: dict = {}
    cur = None
    rows: list = []

    def flush(lineno):
        if cur is None:
            return
        a = A.quiver.arrows[cur]
        m, n = dims[a.source], dims[a.target]
        if len(rows) != m or any(len(r) != n for r in rows):
            raise AlgebraFileError(f"matrix for arrow {a.name} must be {m}x{n}", lineno)
        mats[cur] = F.matrix(rows, m, n)

    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "dims":
            if dims is not None:
                raise AlgebraFileError("dims given twice", lineno)
            try:
                dims = [int(p) for p in parts[1:]]
            except ValueError:
                raise AlgebraFileError("bad dims line", lineno)
            if len(dims) != A.n or any(d < 0 for d in dims):
                raise AlgebraFileError(f"dims line needs {A.n} nonnegative integers", lineno)
        elif parts[0] == "arrow":
            if dims is None:
                raise AlgebraFileError("dims line must come first", lineno)
            flush(lineno)
            if len(parts) != 2 or parts[1] not in A.quiver.arrow_index:
                raise AlgebraFileError("unknown arrow", lineno)
            cur = A.quiver.arrow_index[parts[1]]
            rows = []
        else:
            if cur is None:
                raise AlgebraFileError("matrix row outside an arrow block", lineno)
            try:
                rows.append([Fraction(p) for p in parts])
            except (ValueError, ZeroDivisionError):
                raise AlgebraFileError("bad matrix entry", lineno)
    if dims is None:
        raise AlgebraFileError("missing dims line")
    flush(lineno)
    out = []
    for i, a in enumerate(A.quiver.arrows):
        out.append(mats.get(i, F.zeros(dims[a.source], dims[a.target])))
    try:
        return Representation(A, dims, out, label=label)
    except RepresentationError as e:
        raise AlgebraFileError(str(e))


def format_rep(M: Representation) -> str:
    F = M.field
    lines = ["dims " + " ".join(str(d) for d in M.dims)]
    for i, a in enumerate(M.algebra.quiver.arrows):
        if not (M.mats[i].nrows() and M.mats[i].ncols()):
            continue  # empty blocks default to zero on reading
        lines.append(f"arrow {a.name}")
        for row in M.mats[i].tolist():
            lines.append(" ".join(F.fmt(v) for v in row))
    return "\n".join(lines) + "\n"
