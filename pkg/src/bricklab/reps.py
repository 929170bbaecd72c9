"""Exact module computations over F_p: Hom/Ext, bricks, submodules, covers.

A Representation carries one matrix per arrow, shaped (dim target, dim
source), acting on column vectors.  Everything downstream (torsion classes,
brick quivers, stability) reduces to the kernels here, so all answers are
exact; randomized shortcuts only ever produce witnesses, never verdicts.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from . import kernels as K
from .quiver import BoundQuiver, Path, enumerate_paths, _contains_relation


class CapExceededError(RuntimeError):
    """An exhaustive scan was refused because it exceeds a configured cap."""


class EngineError(RuntimeError):
    """Internal invariant violated; indicates a bug, not bad input."""


END_ENUM_CAP = 1 << 16  # largest |End| we will enumerate exhaustively
SUBMODULE_DIM_CAP = 10
HOM_ENUM_CAP = 4096


class Representation:
    """An F_p representation of a bound quiver; immutable after creation."""

    __slots__ = ("algebra", "dims", "maps", "p")

    def __init__(self, algebra: BoundQuiver, dims, maps, p: int = 2, check: bool = True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.p = p
        fixed = {}
        for a in algebra.arrows:
            s = self.dims[algebra.vertex_index(a.source)]
            t = self.dims[algebra.vertex_index(a.target)]
            mat = maps.get(a.name)
            if mat is None:
                mat = K.zeros(t, s)
            else:
                mat = K.modp(np.asarray(mat).reshape(t, s), p)
            fixed[a.name] = mat
        self.maps = fixed
        if check:
            self._validate()

    def _validate(self):
        for rel in self.algebra.relations:
            if np.any(self.path_matrix(rel) != 0):
                raise ValueError(f"relation {list(rel)} does not vanish")

    def path_matrix(self, arrow_names) -> np.ndarray:
        q = self.algebra
        if len(arrow_names) == 0:
            raise ValueError("empty path needs a vertex")
        first = q.arrow(arrow_names[0])
        mat = K.eye(self.dims[q.vertex_index(first.source)])
        for nm in arrow_names:
            mat = K.matmul(self.maps[nm], mat, self.p)
        return mat

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def support(self) -> tuple[str, ...]:
        return tuple(v for v, d in zip(self.algebra.vertices, self.dims) if d > 0)

    def describe(self) -> str:
        return "(" + ",".join(str(d) for d in self.dims) + ")"

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "maps": {a.name: self.maps[a.name].tolist() for a in self.algebra.arrows},
        }

    def __repr__(self):
        return f"Rep{self.describe()}"


def zero_rep(q: BoundQuiver, p: int = 2) -> Representation:
    return Representation(q, (0,) * q.n, {}, p, check=False)


def simple(q: BoundQuiver, i: int, p: int = 2) -> Representation:
    dims = [0] * q.n
    dims[i] = 1
    return Representation(q, dims, {}, p, check=False)


def _projective_paths(q: BoundQuiver, i: int, cap: int = 64) -> list[Path]:
    return [pth for pth in enumerate_paths(q, cap) if pth.source == q.vertices[i]]


def projective(q: BoundQuiver, i: int, p: int = 2) -> Representation:
    """Indecomposable projective P_i; basis = surviving paths out of vertex i."""
    paths = _projective_paths(q, i)
    by_vertex = {v: [] for v in q.vertices}
    pos = {}
    for pth in paths:
        pos[pth.arrows] = (pth.target, len(by_vertex[pth.target]))
        by_vertex[pth.target].append(pth)
    dims = [len(by_vertex[v]) for v in q.vertices]
    maps = {}
    for a in q.arrows:
        s_i, t_i = q.vertex_index(a.source), q.vertex_index(a.target)
        mat = K.zeros(dims[t_i], dims[s_i])
        for col, pth in enumerate(by_vertex[a.source]):
            walk = pth.arrows + (a.name,)
            if not _contains_relation(walk, q.relations):
                mat[pos[walk][1], col] = 1
        maps[a.name] = mat
    return Representation(q, dims, maps, p)


def direct_sum(reps: list[Representation]) -> Representation:
    if not reps:
        raise ValueError("empty direct sum needs an algebra")
    q, p = reps[0].algebra, reps[0].p
    dims = [sum(r.dims[i] for r in reps) for i in range(q.n)]
    maps = {}
    for a in q.arrows:
        s_i, t_i = q.vertex_index(a.source), q.vertex_index(a.target)
        mat = K.zeros(dims[t_i], dims[s_i])
        ro = co = 0
        for r in reps:
            blk = r.maps[a.name]
            mat[ro : ro + blk.shape[0], co : co + blk.shape[1]] = blk
            ro += r.dims[t_i]
            co += r.dims[s_i]
        maps[a.name] = mat
    return Representation(q, dims, maps, p, check=False)


@dataclass
class HomBasis:
    source: Representation
    target: Representation
    basis: list[tuple[np.ndarray, ...]]  # per-vertex matrices, (dim n_v, dim m_v)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def element(self, coeffs) -> tuple[np.ndarray, ...]:
        p = self.source.p
        out = [K.zeros(self.target.dims[i], self.source.dims[i]) for i in range(len(self.source.dims))]
        for c, b in zip(coeffs, self.basis):
            if c % p == 0:
                continue
            for i in range(len(out)):
                out[i] = (out[i] + c * b[i]) % p
        return tuple(out)


_HOM_CACHE: dict = {}


def clear_caches():
    _HOM_CACHE.clear()


def hom_space(m: Representation, n: Representation) -> HomBasis:
    """Basis of Hom(m, n): solve the intertwining system over F_p."""
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    key = (id(m), id(n))
    hit = _HOM_CACHE.get(key)
    if hit is not None:
        return hit[2]

    q, p = m.algebra, m.p
    offs = [0]
    for i in range(q.n):
        offs.append(offs[-1] + n.dims[i] * m.dims[i])
    nvars = offs[-1]
    rows = []
    for a in q.arrows:
        si, ti = q.vertex_index(a.source), q.vertex_index(a.target)
        r = n.dims[ti] * m.dims[si]
        if r == 0:
            continue
        block = K.zeros(r, nvars)
        if n.dims[ti] * m.dims[ti] > 0:
            # vec_rm(F_t @ M_a) = (I ⊗ M_a^T) vec_rm(F_t)
            block[:, offs[ti] : offs[ti + 1]] = np.kron(K.eye(n.dims[ti]), m.maps[a.name].T)
        if n.dims[si] * m.dims[si] > 0:
            # vec_rm(N_a @ F_s) = (N_a ⊗ I) vec_rm(F_s)
            block[:, offs[si] : offs[si + 1]] -= np.kron(n.maps[a.name], K.eye(m.dims[si]))
        rows.append(block % p)
    if rows:
        system = np.concatenate(rows, axis=0)
        null = K.nullspace(system, p)
    else:
        null = K.eye(nvars)
    basis = []
    for k in range(null.shape[1]):
        vec = null[:, k]
        mats = tuple(
            vec[offs[i] : offs[i + 1]].reshape(n.dims[i], m.dims[i]) for i in range(q.n)
        )
        basis.append(mats)
    result = HomBasis(m, n, basis)
    _HOM_CACHE[key] = (m, n, result)
    return result


def hom_dim(m: Representation, n: Representation) -> int:
    return hom_space(m, n).dimension


def compose(g, f, p: int):
    return tuple(K.matmul(gm, fm, p) for gm, fm in zip(g, f))


def _flatten(h) -> np.ndarray:
    return np.concatenate([mat.reshape(-1) for mat in h]) if h else np.zeros(0, dtype=np.int64)


def hom_is_invertible(h, p: int) -> bool:
    return all(mat.shape[0] == mat.shape[1] and K.is_invertible(mat, p) for mat in h)


def hom_is_zero(h) -> bool:
    return all(np.all(mat == 0) for mat in h)


def _hom_power(h, e: int, p: int):
    out = tuple(K.eye(mat.shape[0]) for mat in h)
    base = h
    while e > 0:
        if e & 1:
            out = compose(out, base, p)
        base = compose(base, base, p)
        e >>= 1
    return out


def hom_is_nilpotent(h, total_dim: int, p: int) -> bool:
    e = 1
    while e < max(total_dim, 1):
        e <<= 1
    return all(np.all(mat == 0) for mat in _hom_power(h, e, p))


class _EndAlgebra:
    """Coordinate view of End(m) used by the brick and locality tests."""

    def __init__(self, m: Representation):
        self.m = m
        self.p = m.p
        self.hom = hom_space(m, m)
        self.dim = self.hom.dimension
        flat = [_flatten(b) for b in self.hom.basis]
        self.basis_mat = (
            np.stack(flat, axis=1) if self.dim else K.zeros(0, 0)
        )

    def coords(self, h) -> np.ndarray:
        vec = K.solve(self.basis_mat, _flatten(h), self.p)
        if vec is None:
            raise EngineError("endomorphism outside End basis")
        return vec

    def is_commutative(self) -> bool:
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                a, b = self.hom.basis[i], self.hom.basis[j]
                ab = compose(a, b, self.p)
                ba = compose(b, a, self.p)
                if any(not np.array_equal(x, y) for x, y in zip(ab, ba)):
                    return False
        return True

    def frobenius_matrix(self) -> np.ndarray:
        cols = []
        for b in self.hom.basis:
            cols.append(self.coords(_hom_power(b, self.p, self.p)))
        return np.stack(cols, axis=1) % self.p


def is_brick(m: Representation) -> bool:
    """True iff End(m) is a division algebra.

    Since End(m) is finite, Wedderburn forces a division End(m) to be a
    field, so the test is: commutative, nilradical zero (kernel of a
    Frobenius power, which is F_p-linear), and Frobenius fixed space of
    dimension one.
    """
    if m.total_dim == 0:
        raise ValueError("zero module is not a brick candidate")
    end = _EndAlgebra(m)
    if end.dim == 1:
        return True
    if not end.is_commutative():
        return False
    frob = end.frobenius_matrix()
    t = 1
    power = frob.copy()
    while m.p**t < m.total_dim:
        power = K.matmul(power, frob, m.p)
        t += 1
    if K.nullspace(power, m.p).shape[1] > 0:
        return False
    fixed = K.nullspace((frob - K.eye(end.dim)) % m.p, m.p)
    return fixed.shape[1] == 1


def _find_non_fitting_witness(m: Representation, cap: int = END_ENUM_CAP):
    """Endomorphism that is neither nilpotent nor invertible, if one exists.

    Exhaustive over End(m); in a finite dimensional algebra every element is
    a unit or nilpotent exactly when the algebra is local, so a fruitless
    sweep certifies indecomposability.
    """
    end = _EndAlgebra(m)
    if end.dim == 1:
        return None
    if m.p**end.dim > cap:
        raise CapExceededError(
            f"|End| = {m.p}^{end.dim} exceeds enumeration cap {cap}"
        )
    for coeffs in K.all_vectors(end.dim, m.p):
        if not coeffs.any():
            continue
        h = end.hom.element(coeffs)
        if hom_is_invertible(h, m.p):
            continue
        if hom_is_nilpotent(h, m.total_dim, m.p):
            continue
        return h
    return None


def is_indecomposable(m: Representation) -> bool:
    """True iff End(m) is local (only idempotents are 0 and 1)."""
    if m.total_dim == 0:
        raise ValueError("zero module")
    return _find_non_fitting_witness(m) is None


def sub_representation(m: Representation, bases) -> Representation:
    """Restrict m to arrow-invariant subspaces given by row bases."""
    q, p = m.algebra, m.p
    dims = [b.shape[0] for b in bases]
    maps = {}
    for a in q.arrows:
        si, ti = q.vertex_index(a.source), q.vertex_index(a.target)
        mat = K.zeros(dims[ti], dims[si])
        for col in range(dims[si]):
            img = K.matmul(m.maps[a.name], bases[si][col].reshape(-1, 1), p).reshape(-1)
            x = K.solve(bases[ti].T, img, p)
            if x is None:
                raise EngineError("subspaces not arrow-invariant")
            mat[:, col] = x
        maps[a.name] = mat
    return Representation(q, dims, maps, p, check=False)


def quotient_representation(m: Representation, bases) -> tuple[Representation, list[np.ndarray]]:
    """Quotient of m by invariant subspaces; also returns projection matrices."""
    q, p = m.algebra, m.p
    projs = []
    dims = []
    for i in range(q.n):
        d = m.dims[i]
        sub = bases[i]
        pivots = set()
        if sub.shape[0]:
            _, piv = K.rref(sub, p)
            pivots = {int(x) for x in piv}
        comp_cols = [c for c in range(d) if c not in pivots]
        dims.append(len(comp_cols))
        if d == 0:
            projs.append(K.zeros(len(comp_cols), 0))
            continue
        basis_cols = [sub[r] for r in range(sub.shape[0])] + [
            np.eye(d, dtype=np.int64)[c] for c in comp_cols
        ]
        full = np.stack(basis_cols, axis=1) if basis_cols else K.zeros(d, 0)
        inv = K.inv(full, p)
        projs.append(inv[sub.shape[0] :, :])
    maps = {}
    for a in q.arrows:
        si, ti = q.vertex_index(a.source), q.vertex_index(a.target)
        sec = _section_matrix(m.dims[si], bases[si], p)
        maps[a.name] = K.matmul(projs[ti], K.matmul(m.maps[a.name], sec, p), p)
    return Representation(q, dims, maps, p, check=False), projs


def _section_matrix(d: int, sub: np.ndarray, p: int) -> np.ndarray:
    pivots = set()
    if sub.shape[0]:
        _, piv = K.rref(sub, p)
        pivots = {int(x) for x in piv}
    comp_cols = [c for c in range(d) if c not in pivots]
    sec = K.zeros(d, len(comp_cols))
    for k, c in enumerate(comp_cols):
        sec[c, k] = 1
    return sec


@dataclass
class Submodule:
    parent: Representation
    bases: tuple[np.ndarray, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(b.shape[0] for b in self.bases)

    @property
    def quotient_dims(self) -> tuple[int, ...]:
        return tuple(d - b.shape[0] for d, b in zip(self.parent.dims, self.bases))

    def sub(self) -> Representation:
        return sub_representation(self.parent, self.bases)

    def quotient(self) -> Representation:
        return quotient_representation(self.parent, self.bases)[0]


def submodules(m: Representation, cap: int = SUBMODULE_DIM_CAP) -> list[Submodule]:
    """Every arrow-invariant subspace of m, exhaustively over F_p (p <= 3)."""
    if m.total_dim > cap:
        raise CapExceededError(
            f"total dimension {m.total_dim} exceeds submodule cap {cap}"
        )
    if m.p > 3:
        raise CapExceededError("exhaustive submodule scan requires p <= 3")
    q, p = m.algebra, m.p
    per_vertex = [K.enumerate_subspaces(d, p) for d in m.dims]
    count = 1
    for lst in per_vertex:
        count *= len(lst)
    if count > 500_000:
        raise CapExceededError(f"{count} subspace tuples exceed the scan budget")
    arrows = [
        (q.vertex_index(a.source), q.vertex_index(a.target), m.maps[a.name])
        for a in q.arrows
    ]
    out = []
    for combo in itertools.product(*per_vertex):
        ok = True
        for si, ti, mat in arrows:
            if combo[si].shape[0] == 0:
                continue
            imgs = K.matmul(combo[si], mat.T, p)
            if not K.rows_contained(combo[ti], imgs, p):
                ok = False
                break
        if ok:
            out.append(Submodule(m, combo))
    return out


def submodule_dim_vectors(m: Representation, cap: int = SUBMODULE_DIM_CAP) -> list[tuple[int, ...]]:
    """Deduplicated dimension vectors of submodules of m (sorted)."""
    return sorted({s.dims for s in submodules(m, cap)})


def quotient_dim_vectors(m: Representation, cap: int = SUBMODULE_DIM_CAP) -> list[tuple[int, ...]]:
    return sorted({s.quotient_dims for s in submodules(m, cap)})


def iso(m: Representation, n: Representation) -> bool:
    """True iff some hom m -> n is invertible at every vertex."""
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    if m.dims != n.dims:
        return False
    if m.total_dim == 0:
        return True
    hb = hom_space(m, n)
    if hb.dimension == 0:
        return False
    if m.p**hb.dimension > END_ENUM_CAP:
        raise CapExceededError("Hom space too large for exhaustive iso scan")
    for coeffs in K.all_vectors(hb.dimension, m.p):
        if not coeffs.any():
            continue
        if hom_is_invertible(hb.element(coeffs), m.p):
            return True
    return False


def _find_summand_split(x: Representation, n: Representation):
    """Find (f, g) with g∘f invertible, certifying x | n.

    Requires End(x) local.  If any hom pair splits x off, some *basis* pair
    already does: a unit in a local ring cannot be a sum of non-units.
    """
    fs = hom_space(x, n)
    gs = hom_space(n, x)
    for f in fs.basis:
        for g in gs.basis:
            h = compose(g, f, x.p)
            if hom_is_invertible(h, x.p):
                return f, g, h
    return None


def split_off(x: Representation, n: Representation):
    """If x is a direct summand of n, return the complement; else None."""
    if any(dx > dn for dx, dn in zip(x.dims, n.dims)):
        return None
    found = _find_summand_split(x, n)
    if found is None:
        return None
    f, g, h = found
    hinv = tuple(K.inv(mat, x.p) for mat in h)
    idem = compose(f, compose(hinv, g, x.p), x.p)  # e = f (gf)^-1 g
    kers = tuple(K.row_basis(K.nullspace(mat, x.p).T, x.p) for mat in idem)
    return sub_representation(n, kers)


def decompose(m: Representation, universe: list[Representation] | None = None) -> list[Representation]:
    """Krull-Schmidt decomposition of m into indecomposables.

    With `universe` (a certified complete list of indecomposables) summands
    are peeled off by the splitting-pair test, which stays cheap.  Without
    it, Fitting splittings along an exhaustive End scan are used.
    """
    if m.total_dim == 0:
        return []
    if universe is not None:
        parts: list[Representation] = []
        cur = m
        while cur.total_dim > 0:
            for x in universe:
                rest = split_off(x, cur)
                if rest is not None:
                    parts.append(x)
                    cur = rest
                    break
            else:
                raise EngineError("residual module has no summand in the universe")
        return parts
    witness = _find_non_fitting_witness(m)
    if witness is None:
        return [m]
    e = 1
    while e < m.total_dim:
        e <<= 1
    h = _hom_power(witness, e, m.p)
    kers = tuple(K.row_basis(K.nullspace(mat, m.p).T, m.p) for mat in h)
    ims = tuple(K.row_basis(mat.T, m.p) for mat in h)
    return decompose(sub_representation(m, kers)) + decompose(sub_representation(m, ims))


def exists_surjection(m: Representation, n: Representation, samples: int = 512) -> bool:
    """True iff some hom m -> n is surjective (exact; sampling only finds
    witnesses, absence falls back to full enumeration)."""
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    if n.total_dim == 0:
        return True
    hb = hom_space(m, n)
    if hb.dimension == 0:
        return False

    def surjective(h) -> bool:
        return all(
            K.rank(mat, m.p) == n.dims[i] for i, mat in enumerate(h)
        )

    total = m.p**hb.dimension
    if total > HOM_ENUM_CAP:
        rng = np.random.default_rng(0)
        for _ in range(samples):
            coeffs = rng.integers(0, m.p, size=hb.dimension)
            if coeffs.any() and surjective(hb.element(coeffs)):
                return True
    for coeffs in K.all_vectors(hb.dimension, m.p):
        if coeffs.any() and surjective(hb.element(coeffs)):
            return True
    return False


def radical_bases(m: Representation) -> tuple[np.ndarray, ...]:
    """Row bases of rad(m) = sum of arrow images, per vertex."""
    q, p = m.algebra, m.p
    out = []
    for i, v in enumerate(q.vertices):
        rows = [m.maps[a.name].T for a in q.arrows_to(v) if m.maps[a.name].size]
        if rows:
            out.append(K.row_basis(np.concatenate(rows, axis=0), p))
        else:
            out.append(K.zeros(0, m.dims[i]))
    return tuple(out)


def top_dims(m: Representation) -> tuple[int, ...]:
    rad = radical_bases(m)
    return tuple(d - b.shape[0] for d, b in zip(m.dims, rad))


def projective_cover(m: Representation):
    """Projective cover (P0, per-vertex cover matrices) of m."""
    if m.total_dim == 0:
        raise ValueError("zero module")
    q, p = m.algebra, m.p
    rad = radical_bases(m)
    generators = []  # (vertex index, column vector in m)
    for i in range(q.n):
        pivots = set()
        if rad[i].shape[0]:
            _, piv = K.rref(rad[i], p)
            pivots = {int(x) for x in piv}
        for c in range(m.dims[i]):
            if c not in pivots:
                vec = np.zeros(m.dims[i], dtype=np.int64)
                vec[c] = 1
                generators.append((i, vec))
    summands = [projective(q, i, p) for i, _ in generators]
    p0 = direct_sum(summands) if summands else zero_rep(q, p)
    cover = [K.zeros(m.dims[i], p0.dims[i]) for i in range(q.n)]
    col_off = [0] * q.n
    for (gi, gvec), proj in zip(generators, summands):
        paths = _projective_paths(q, gi)
        by_vertex: dict[str, int] = {}
        for pth in paths:
            ti = q.vertex_index(pth.target)
            col = col_off[ti] + by_vertex.get(pth.target, 0)
            by_vertex[pth.target] = by_vertex.get(pth.target, 0) + 1
            if len(pth) == 0:
                img = gvec
            else:
                img = K.matmul(m.path_matrix(pth.arrows), gvec.reshape(-1, 1), p).reshape(-1)
            cover[ti][:, col] = img
        for v, cnt in by_vertex.items():
            col_off[q.vertex_index(v)] += cnt
    for i in range(q.n):
        if K.rank(cover[i], p) != m.dims[i]:
            raise EngineError("projective cover failed to surject")
    return p0, cover


def syzygy(m: Representation) -> Representation:
    """Kernel of the projective cover P0 -> m."""
    p0, cover = projective_cover(m)
    kers = tuple(K.row_basis(K.nullspace(mat, m.p).T, m.p) for mat in cover)
    return sub_representation(p0, kers)


def ext1_dim(m: Representation, n: Representation) -> int:
    """dim Ext^1(m, n) from 0 -> ΩM -> P0 -> M -> 0."""
    if m.total_dim == 0 or n.total_dim == 0:
        return 0
    p0, _ = projective_cover(m)
    omega = syzygy(m)
    val = hom_dim(omega, n) - hom_dim(p0, n) + hom_dim(m, n)
    if val < 0:
        raise EngineError("negative Ext dimension")
    return val


def _arrow_candidates(q: BoundQuiver, a, t: int, s: int, p: int) -> list[np.ndarray]:
    """All (t, s) matrices for arrow a satisfying its single-arrow relations."""
    if p ** (t * s) > (1 << 20):
        raise CapExceededError(f"matrix space for arrow {a.name} too large")
    own_rels = [rel for rel in q.relations if set(rel) == {a.name}]
    out = []
    for vec in K.all_vectors(t * s, p):
        mat = vec.reshape(t, s)
        ok = True
        for rel in own_rels:
            if t != s:
                ok = False
                break
            power = K.eye(t)
            for _ in rel:
                power = K.matmul(mat, power, p)
            if np.any(power != 0):
                ok = False
                break
        if ok:
            out.append(mat)
    return out


def brute_force_bricks(q: BoundQuiver, dim_cap: int, p: int = 2) -> list[Representation]:
    """Exhaustive brick scan up to total dimension dim_cap, up to iso.

    Independent of the string-module route: enumerates all matrix tuples
    satisfying the relations, filters by the brick test, dedupes by iso.
    """
    if p != 2:
        raise CapExceededError("brute-force scan is fixed to p = 2")
    if dim_cap > 6:
        raise CapExceededError("brute-force scan capped at total dimension 6")
    arrows = list(q.arrows)
    found: list[Representation] = []
    for dims in _dim_vectors(q.n, dim_cap):
        cands = []
        feasible = True
        for a in arrows:
            t = dims[q.vertex_index(a.target)]
            s = dims[q.vertex_index(a.source)]
            lst = _arrow_candidates(q, a, t, s, p)
            if not lst:
                feasible = False
                break
            cands.append(lst)
        if not feasible:
            continue

        def rel_ready(idx: int) -> list[tuple[str, ...]]:
            assigned = {a.name for a in arrows[: idx + 1]}
            new = arrows[idx].name
            return [
                rel
                for rel in q.relations
                if new in rel and set(rel) <= assigned and len(set(rel)) > 1
            ]

        ready = [rel_ready(i) for i in range(len(arrows))]

        def dfs(idx: int, maps: dict):
            if idx == len(arrows):
                rep = Representation(q, dims, dict(maps), p, check=False)
                if is_brick(rep):
                    found.append(rep)
                return
            a = arrows[idx]
            for mat in cands[idx]:
                maps[a.name] = mat
                ok = True
                for rel in ready[idx]:
                    prod = None
                    for nm in rel:
                        prod = maps[nm] if prod is None else K.matmul(maps[nm], prod, p)
                    if np.any(prod != 0):
                        ok = False
                        break
                if ok:
                    dfs(idx + 1, maps)
            maps.pop(a.name, None)

        if arrows:
            dfs(0, {})
        else:
            rep = Representation(q, dims, {}, p, check=False)
            if is_brick(rep):
                found.append(rep)

    distinct: list[Representation] = []
    for rep in found:
        if not any(rep.dims == other.dims and iso(rep, other) for other in distinct):
            distinct.append(rep)
    return distinct


def _dim_vectors(n: int, cap: int):
    def rec(prefix, remaining, slots):
        if slots == 0:
            if sum(prefix) >= 1:
                yield tuple(prefix)
            return
        for d in range(remaining + 1):
            yield from rec(prefix + [d], remaining - d, slots - 1)

    yield from rec([], cap, n)
