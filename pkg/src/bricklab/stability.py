"""Stability parameters, walls, consistent sequences, Newton polytopes.

A stability parameter is a rational vector in the basis [P_1], ..., [P_n];
its pairing with a dimension vector is the plain dot product (simples are
one dimensional here).  Semistability is decided on quotient dimension
classes, which is enough because the pairing factors through K_0.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import exact as X
from . import reps as R
from . import tors as T
from .strings import IndList

Theta = tuple[Fraction, ...]


def theta(*coords) -> Theta:
    return tuple(Fraction(c) for c in coords)


def pair(th: Theta, dims) -> Fraction:
    return sum((c * d for c, d in zip(th, dims)), Fraction(0))


def _quotient_classes(m: R.Representation) -> list[tuple[int, ...]]:
    return R.quotient_dim_vectors(m)


def _submodule_classes(m: R.Representation) -> list[tuple[int, ...]]:
    return R.submodule_dim_vectors(m)


def is_semistable(th: Theta, m: R.Representation) -> bool:
    """theta vanishes on [m] and is >= 0 on every quotient class."""
    if pair(th, m.dims) != 0:
        return False
    return all(pair(th, q) >= 0 for q in _quotient_classes(m))


def is_stable(th: Theta, m: R.Representation) -> bool:
    if pair(th, m.dims) != 0:
        return False
    zero = (0,) * len(m.dims)
    for q in _quotient_classes(m):
        if q == zero or q == m.dims:
            continue
        if pair(th, q) <= 0:
            return False
    return True


@dataclass
class ThetaClasses:
    """The four torsion(-free) classes of a parameter, as ind masks."""

    t_bar: int
    f: int
    t: int
    f_bar: int

    @property
    def w(self) -> int:
        return self.t_bar & self.f_bar


def theta_torsion_classes(th: Theta, ind: IndList) -> ThetaClasses:
    t_bar = f = t = f_bar = 0
    for i, m in enumerate(ind.modules):
        zero = (0,) * len(m.dims)
        quots = _quotient_classes(m)
        subs = _submodule_classes(m)
        if all(pair(th, q) >= 0 for q in quots):
            t_bar |= 1 << i
        if all(pair(th, q) > 0 for q in quots if q != zero):
            t |= 1 << i
        if all(pair(th, s) < 0 for s in subs if s != zero):
            f |= 1 << i
        if all(pair(th, s) >= 0 for s in subs):
            f_bar |= 1 << i
    return ThetaClasses(t_bar, f, t, f_bar)


def stable_inds(th: Theta, ind: IndList) -> list[int]:
    return [i for i, m in enumerate(ind.modules) if is_stable(th, m)]


@dataclass
class WallDescription:
    brick: R.Representation
    equality: tuple[int, ...]  # theta . [X] = 0
    inequalities: list[tuple[int, ...]]  # theta . [N] >= 0 per quotient class
    codimension: int


def wall(brick: R.Representation) -> WallDescription:
    """Semistability locus of a brick, with its exact codimension.

    Codimension = rank of {[X]} together with the implicit equalities among
    the quotient inequalities (detected by strict-feasibility checks).
    """
    n = len(brick.dims)
    zero = (0,) * n
    ineqs = [q for q in _quotient_classes(brick) if q not in (zero, brick.dims)]
    eqs = [(brick.dims, 0)]
    implicit = []
    for k, q in enumerate(ineqs):
        others = [X.make_ge(o) for j, o in enumerate(ineqs) if j != k]
        if not X.feasible(eqs, others + [X.make_gt(q)], n):
            implicit.append(q)
    codim = X.rational_rank([brick.dims] + implicit)
    return WallDescription(brick, brick.dims, list(ineqs), codim)


def wall_intersection_codim(b1: R.Representation, b2: R.Representation) -> int:
    """Codimension of the affine hull of Theta_X ∩ Theta_Y."""
    n = len(b1.dims)
    zero = (0,) * n
    ineqs = []
    for b in (b1, b2):
        ineqs.extend(q for q in _quotient_classes(b) if q not in (zero, b.dims))
    eqs = [(b1.dims, 0), (b2.dims, 0)]
    if not X.feasible(eqs, [X.make_ge(q) for q in ineqs], n):
        return n  # empty set: maximal codimension at desk scale
    implicit = []
    for k, q in enumerate(ineqs):
        others = [X.make_ge(o) for j, o in enumerate(ineqs) if j != k]
        if not X.feasible(eqs, others + [X.make_gt(q)], n):
            implicit.append(q)
    return X.rational_rank([b1.dims, b2.dims] + implicit)


@dataclass
class ConsistencyReport:
    ok: bool
    violation: str | None


def verify_consistent_sequence(
    thetas: list[Theta], order: list[R.Representation], weak: bool = False
) -> ConsistencyReport:
    """Check conditions (1) theta_i(X_j) < 0 for i < j, (2) theta_i(X_j) > 0
    (>= 0 when weak) for i > j, (3) X_i is theta_i-stable."""
    if len(thetas) != len(order):
        raise ValueError("sequence and order lengths differ")
    r = len(order)
    for i in range(r):
        for j in range(r):
            v = pair(thetas[i], order[j].dims)
            if i < j and not v < 0:
                return ConsistencyReport(False, f"condition (1) fails at (i={i}, j={j})")
            if i > j:
                if weak and not v >= 0:
                    return ConsistencyReport(False, f"condition (2w) fails at (i={i}, j={j})")
                if not weak and not v > 0:
                    return ConsistencyReport(False, f"condition (2) fails at (i={i}, j={j})")
        if not is_stable(thetas[i], order[i]):
            return ConsistencyReport(False, f"condition (3) fails at i={i}")
    return ConsistencyReport(True, None)


def find_consistent_sequence(order: list[R.Representation]):
    """Solve for a consistent sequence along the given brick order.

    Each theta_i is an independent rational feasibility problem, solved by
    Fourier-Motzkin with strict inequalities; returns the list of thetas or
    None with certified infeasibility.
    """
    if not order:
        return []
    n = len(order[0].dims)
    zero = (0,) * n
    out = []
    for i, x in enumerate(order):
        eqs = [(x.dims, 0)]
        ineqs = []
        for q in _quotient_classes(x):
            if q not in (zero, x.dims):
                ineqs.append(X.make_gt(q))
        for j, y in enumerate(order):
            if j < i:
                ineqs.append(X.make_gt(y.dims))
            elif j > i:
                ineqs.append(X.make_gt(tuple(-d for d in y.dims)))
        sol = X.solve_system(eqs, ineqs, n)
        if sol is None:
            return None
        out.append(sol)
    return out


def theta_for_cover(lat: T.LabeledTorsLattice, lower: int, upper: int) -> Theta:
    """A parameter realizing a Hasse arrow: T̄ = upper, T = lower, and the
    label brick stable.

    The base system forces upper ⊆ T̄ and lower ⊆ T; excluding every class
    above `upper` needs one negative quotient class per upper cover, found
    by branching.  The winner is verified exactly before being returned.
    """
    ctx = lat.ctx
    n = len(ctx.ind.modules[0].dims)
    zero = (0,) * n
    label = lat.labels[(lower, upper)]
    xrep = ctx.ind.modules[label]
    eqs = [(xrep.dims, 0)]
    base = []
    for i in T._bits(upper):
        for q in _quotient_classes(ctx.ind.modules[i]):
            base.append(X.make_ge(q))
    for i in T._bits(lower):
        for q in _quotient_classes(ctx.ind.modules[i]):
            if q != zero:
                base.append(X.make_gt(q))
    for q in _quotient_classes(xrep):
        if q not in (zero, xrep.dims):
            base.append(X.make_gt(q))

    pos_upper = lat.position(upper)
    above = [lat.masks[u] for u in lat.lattice.upper_covers(pos_upper)]
    choice_sets = []
    for v in above:
        y = lat.labels[(upper, v)]
        opts = [
            q for q in _quotient_classes(ctx.ind.modules[y]) if q != zero
        ]
        # most natural cut first: the label's own class must go negative
        opts.sort(key=lambda q: (q != ctx.ind.modules[y].dims, q))
        choice_sets.append(opts)

    def dfs(k: int, cuts):
        if k == len(choice_sets):
            sol = X.solve_system(eqs, base + cuts, n)
            if sol is None:
                return None
            got = theta_torsion_classes(sol, ctx.ind)
            if got.t_bar == upper and got.t == lower and is_stable(sol, xrep):
                return sol
            return None
        for q in choice_sets[k]:
            found = dfs(k + 1, cuts + [X.make_gt(tuple(-d for d in q))])
            if found is not None:
                return found
        return None

    sol = dfs(0, [])
    if sol is None:
        raise R.EngineError("no stability parameter found for cover")
    return sol


# ---------------------------------------------------------------------------
# Newton polytope


@dataclass
class NewtonPolytope:
    points: list[tuple[int, ...]]
    vertices: list[tuple[int, ...]]
    edges: list[tuple[tuple[int, ...], tuple[int, ...]]]
    top: tuple[int, ...]

    def neighbors(self, v) -> list[tuple[int, ...]]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return sorted(out)


def newton_polytope(m: R.Representation) -> NewtonPolytope:
    """Convex hull of the classes of submodules of m, with vertex/edge data."""
    points = sorted(set(R.submodule_dim_vectors(m)))
    vertices = X.hull_vertices(points)
    edges = X.hull_edges(points, vertices)
    return NewtonPolytope(points, vertices, edges, m.dims)


def brick_sum(ctx: T.TorsContext) -> R.Representation:
    return R.direct_sum([ctx.ind.modules[b] for b in ctx.bricks])


def torsion_trace(ctx: T.TorsContext, mask: int, m: R.Representation):
    """t_T(m): the largest submodule of m lying in T (sum of images of
    T-members); returns its per-vertex row bases."""
    import numpy as np

    from . import kernels as K

    q, p = m.algebra, m.p
    rows = [K.zeros(0, d) for d in m.dims]
    for i in T._bits(mask):
        x = ctx.ind.modules[i]
        for h in R.hom_space(x, m).basis:
            for v in range(q.n):
                img = h[v].T  # rows span the image at vertex v
                if img.size:
                    rows[v] = np.concatenate([rows[v], img], axis=0)
    return tuple(K.row_basis(r, p) for r in rows)


def tors_vertex_map(lat: T.LabeledTorsLattice, m: R.Representation) -> dict[int, tuple[int, ...]]:
    """mask -> [t_T(m)]; verified to be a bijection onto the hull vertices."""
    ctx = lat.ctx
    poly = newton_polytope(m)
    out = {}
    for mask in lat.masks:
        tr = torsion_trace(ctx, mask, m)
        sub = R.sub_representation(m, tr)
        parts = R.decompose(sub, universe=ctx.ind.modules) if sub.total_dim else []
        by_id = {id(mod): k for k, mod in enumerate(ctx.ind.modules)}
        for part in parts:
            if not mask >> by_id[id(part)] & 1:
                raise R.EngineError("trace has a summand outside the class")
        quot, _ = R.quotient_representation(m, tr)
        _, fmask = T.torsion_pair(ctx, mask)
        for part in (R.decompose(quot, universe=ctx.ind.modules) if quot.total_dim else []):
            if not fmask >> by_id[id(part)] & 1:
                raise R.EngineError("trace quotient leaves the torsion-free class")
        out[mask] = tuple(int(b.shape[0]) for b in tr)
    values = sorted(out.values())
    if values != sorted(poly.vertices) or len(set(values)) != len(values):
        raise R.EngineError("torsion classes do not biject onto polytope vertices")
    return out


def _leq_coord(v, w) -> bool:
    return all(a <= b for a, b in zip(v, w)) and v != w


def increasing_paths(poly: NewtonPolytope) -> list[list[tuple[int, ...]]]:
    """All edge paths from 0 to [m] that strictly increase coordinatewise."""
    zero = tuple(0 for _ in poly.top)
    out = []

    def dfs(v, acc):
        if v == poly.top:
            out.append(acc)
            return
        for w in poly.neighbors(v):
            if _leq_coord(v, w):
                dfs(w, acc + [w])

    dfs(zero, [zero])
    return out


def _indivisible(step: tuple[int, ...]) -> bool:
    g = 0
    for x in step:
        g = gcd(g, abs(x))
    return g == 1


def path_is_indivisible(path: list[tuple[int, ...]]) -> bool:
    return all(
        _indivisible(tuple(b - a for a, b in zip(u, v)))
        for u, v in zip(path, path[1:])
    )


def has_indivisible_path(poly: NewtonPolytope) -> bool:
    return any(path_is_indivisible(p) for p in increasing_paths(poly))


def sequence_to_json(order: list[R.Representation], thetas: list[Theta]) -> str:
    import json

    data = {
        "order": [list(b.dims) for b in order],
        "thetas": [[f"{c.numerator}/{c.denominator}" for c in th] for th in thetas],
    }
    return json.dumps(data, indent=2) + "\n"


def sequence_from_json(doc: str):
    import json

    data = json.loads(doc)
    order = [tuple(d) for d in data["order"]]
    thetas = [tuple(Fraction(s) for s in th) for th in data["thetas"]]
    return order, thetas


def polytope_to_json(poly: NewtonPolytope) -> str:
    import json

    data = {
        "points": [list(p) for p in poly.points],
        "vertices": [list(v) for v in poly.vertices],
        "edges": [[list(a), list(b)] for a, b in poly.edges],
    }
    return json.dumps(data, indent=2) + "\n"
