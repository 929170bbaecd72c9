"""The lattice of torsion classes with brick labeling, for certified inputs.

A torsion class is a bitmask over a certified list of indecomposables.  Two
independent constructions of tors A are provided and cross-checked: subset
filtering against the closure axioms, and downward Hasse exploration from
mod A using the label bricks.
"""

import json
from dataclasses import dataclass

from . import lattice as L
from . import reps as R
from .strings import IndList


class NotCertifiedInputError(ValueError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class TorsContext:
    """Precomputed Hom/submodule data over a certified IndList."""

    def __init__(self, ind: IndList):
        if not ind.certified:
            raise NotCertifiedInputError(
                "torsion-class machinery needs a certified-all IndList"
            )
        self.ind = ind
        self.n = len(ind.modules)
        self.full = (1 << self.n) - 1
        mods = ind.modules
        self.hom = [[R.hom_dim(a, b) for b in mods] for a in mods]
        self.bricks = [i for i, m in enumerate(mods) if R.is_brick(m)]
        self.brick_mask = sum(1 << i for i in self.bricks)
        self.simples = [
            i for i, m in enumerate(mods) if m.total_dim == 1
        ]
        by_id = {id(m): i for i, m in enumerate(mods)}

        def summand_mask(rep) -> int:
            out = 0
            for part in R.decompose(rep, universe=mods):
                out |= 1 << by_id[id(part)]
            return out

        # per indecomposable: (submodule summand mask, quotient summand mask)
        self.sub_pairs: list[list[tuple[int, int]]] = []
        for m in mods:
            pairs = []
            for s in R.submodules(m):
                pairs.append((summand_mask(s.sub()), summand_mask(s.quotient())))
            self.sub_pairs.append(pairs)
        # perp_l[x] = mask of inds with Hom(-, x) = 0; perp_r dually
        self.perp_l = [
            sum(1 << i for i in range(self.n) if self.hom[i][x] == 0)
            for x in range(self.n)
        ]
        self.perp_r = [
            sum(1 << i for i in range(self.n) if self.hom[x][i] == 0)
            for x in range(self.n)
        ]

    def dims(self, i: int) -> tuple[int, ...]:
        return self.ind.modules[i].dims

    def describe_mask(self, mask: int) -> str:
        return "{" + ",".join(self.ind.modules[i].describe() for i in _bits(mask)) + "}"


def is_torsion_mask(ctx: TorsContext, mask: int) -> bool:
    for i in range(ctx.n):
        if mask >> i & 1:
            for _, qmask in ctx.sub_pairs[i]:
                if qmask & ~mask:
                    return False
        else:
            for umask, qmask in ctx.sub_pairs[i]:
                if not (umask & ~mask) and not (qmask & ~mask):
                    return False
    return True


def torsion_closure(ctx: TorsContext, seed_mask: int) -> int:
    """Least torsion class containing the seed: iterate the two closure
    rules (quotient summands of members; extensions with both ends inside)."""
    mask = seed_mask
    changed = True
    while changed:
        changed = False
        for i in range(ctx.n):
            if mask >> i & 1:
                for _, qmask in ctx.sub_pairs[i]:
                    if qmask & ~mask:
                        mask |= qmask
                        changed = True
            else:
                for umask, qmask in ctx.sub_pairs[i]:
                    if not (umask & ~mask) and not (qmask & ~mask):
                        mask |= 1 << i
                        changed = True
                        break
    return mask


def torsion_free_mask(ctx: TorsContext, mask: int) -> int:
    out = 0
    for j in range(ctx.n):
        if all(ctx.hom[i][j] == 0 for i in _bits(mask)):
            out |= 1 << j
    return out


def torsion_pair(ctx: TorsContext, mask: int) -> tuple[int, int]:
    """(T, F = T-perp) as ind masks; sanity-checked on the simples."""
    f = torsion_free_mask(ctx, mask)
    if mask & f:
        raise R.EngineError("torsion and torsion-free parts intersect")
    for s in ctx.simples:
        if not ((mask >> s & 1) or (f >> s & 1)):
            raise R.EngineError("a simple module escapes the torsion pair")
    return mask, f


def covers_below(ctx: TorsContext, mask: int) -> list[int]:
    cands = set()
    for x in ctx.bricks:
        if mask >> x & 1:
            cands.add(mask & ctx.perp_l[x])
    out = [c for c in cands if not any(d != c and (c & ~d) == 0 for d in cands)]
    return sorted(out)


def label_of_cover(ctx: TorsContext, upper: int, lower: int) -> int:
    """The unique brick in T ∩ U-perp for a cover U ⋖ T."""
    fperp = torsion_free_mask(ctx, lower)
    labels = [x for x in ctx.bricks if (upper >> x & 1) and (fperp >> x & 1)]
    if len(labels) != 1:
        raise R.EngineError(
            f"cover has {len(labels)} label bricks; expected exactly one"
        )
    return labels[0]


@dataclass
class LabeledTorsLattice:
    ctx: TorsContext
    lattice: L.FiniteLattice  # labels are the masks, sorted by (size, mask)
    masks: list[int]
    labels: dict[tuple[int, int], int]  # (lower mask, upper mask) -> brick index

    @property
    def bottom_mask(self) -> int:
        return self.masks[self.lattice.bottom]

    @property
    def top_mask(self) -> int:
        return self.masks[self.lattice.top]

    def position(self, mask: int) -> int:
        return self.masks.index(mask)

    def cover_masks(self) -> list[tuple[int, int]]:
        return [(self.masks[lo], self.masks[up]) for lo, up in self.lattice.covers]


def _masks_to_lattice(ctx: TorsContext, masks: list[int]) -> LabeledTorsLattice:
    import numpy as np

    masks = sorted(set(masks), key=lambda m: (_popcount(m), m))
    n = len(masks)
    leq = np.zeros((n, n), dtype=bool)
    for i, a in enumerate(masks):
        for j, b in enumerate(masks):
            leq[i, j] = (a & ~b) == 0
    lat = L.from_leq(masks, leq)
    labels = {}
    for lo, up in lat.covers:
        labels[(masks[lo], masks[up])] = label_of_cover(ctx, masks[up], masks[lo])
    # meets in tors A are intersections; the order-theoretic meet must agree
    for i in range(n):
        for j in range(n):
            if masks[lat.meet[i, j]] != masks[i] & masks[j]:
                raise R.EngineError("lattice meet disagrees with intersection")
    return LabeledTorsLattice(ctx, lat, masks, labels)


def enumerate_torsion_classes(
    ind_or_ctx, strategy: str = "subset", cross_check: bool = False
) -> LabeledTorsLattice:
    """Construct tors A (with brick labels) for a certified IndList.

    strategy="subset" filters all 2^n masks by the closure axioms (n <= 20);
    strategy="covers" explores the Hasse quiver downward from mod A.  With
    cross_check=True both run and must agree.
    """
    ctx = ind_or_ctx if isinstance(ind_or_ctx, TorsContext) else TorsContext(ind_or_ctx)

    def by_subset() -> list[int]:
        if ctx.n > 20:
            raise NotCertifiedInputError("subset enumeration capped at 20 indecomposables")
        return [m for m in range(1 << ctx.n) if is_torsion_mask(ctx, m)]

    def by_covers() -> list[int]:
        seen = {ctx.full}
        stack = [ctx.full]
        while stack:
            t = stack.pop()
            for u in covers_below(ctx, t):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return sorted(seen)

    masks = by_subset() if strategy == "subset" else by_covers()
    if cross_check:
        other = by_covers() if strategy == "subset" else by_subset()
        if sorted(masks) != sorted(other):
            raise R.EngineError("torsion-class strategies disagree")
    return _masks_to_lattice(ctx, masks)


def bricks_in(ctx: TorsContext, mask: int) -> list[int]:
    return [x for x in ctx.bricks if mask >> x & 1]


def is_brick_splitting_direct(ctx: TorsContext, mask: int):
    """Every brick lies in T or in F; returns (bool, witness brick index)."""
    _, f = torsion_pair(ctx, mask)
    for x in ctx.bricks:
        if not ((mask >> x & 1) or (f >> x & 1)):
            return False, x
    return True, None


def _interval_labels(lat: LabeledTorsLattice, pred) -> set[int]:
    out = set()
    for (lo, up), brick in lat.labels.items():
        if pred(lo, up):
            out.add(brick)
    return out


def is_brick_splitting_by_labels(lat: LabeledTorsLattice, mask: int) -> bool:
    """Every brick appears as a label inside [0, T] or inside [T, mod A]."""
    below = _interval_labels(lat, lambda lo, up: (up & ~mask) == 0)
    above = _interval_labels(lat, lambda lo, up: (mask & ~lo) == 0)
    return set(lat.ctx.bricks) <= (below | above)


def is_brick_splitting_by_modularity(lat: LabeledTorsLattice, mask: int) -> bool:
    return L.is_left_modular_element(lat.lattice, lat.position(mask))


def is_splitting(ctx: TorsContext, mask: int):
    """Every indecomposable lies in T or F; returns (bool, witness index)."""
    _, f = torsion_pair(ctx, mask)
    for i in range(ctx.n):
        if not ((mask >> i & 1) or (f >> i & 1)):
            return False, i
    return True, None


def simples_partition_check(ctx: TorsContext, mask: int) -> list[tuple[int, int, int]]:
    """For a brick-splitting T: Ext^1(S2, S1) must vanish for S1 in T,
    S2 in F.  Returns the list of violations (empty = pass)."""
    ok, _ = is_brick_splitting_direct(ctx, mask)
    if not ok:
        raise ValueError("simples partition check requires a brick-splitting class")
    _, f = torsion_pair(ctx, mask)
    bad = []
    for s1 in ctx.simples:
        if not (mask >> s1 & 1):
            continue
        for s2 in ctx.simples:
            if not (f >> s2 & 1):
                continue
            e = R.ext1_dim(ctx.ind.modules[s2], ctx.ind.modules[s1])
            if e != 0:
                bad.append((s2, s1, e))
    return bad


def chain_to_tors(ctx: TorsContext, brick_indices: list[int]) -> list[int]:
    """Torsion classes of the prefix ideals of a chain of bricks.

    Input must satisfy Hom(B_i, B_j) = 0 for i < j; the output chain is
    strictly increasing from 0 to the closure of the whole chain.
    """
    for i in range(len(brick_indices)):
        for j in range(i + 1, len(brick_indices)):
            if ctx.hom[brick_indices[i]][brick_indices[j]] != 0:
                raise ValueError(
                    f"not a chain of bricks: Hom(#{brick_indices[i]}, #{brick_indices[j]}) != 0"
                )
    out = [0]
    seed = 0
    for b in brick_indices:
        seed |= 1 << b
        nxt = torsion_closure(ctx, seed)
        if out[-1] & ~nxt or nxt == out[-1]:
            raise R.EngineError("prefix closures not strictly increasing")
        out.append(nxt)
    return out


@dataclass
class Theorem11Report:
    rows: list[tuple[int, bool, bool, bool]]

    @property
    def all_agree(self) -> bool:
        return all(a == b == c for _, a, b, c in self.rows)

    def brick_splitting_masks(self) -> list[int]:
        return [m for m, a, _, _ in self.rows if a]


def verify_theorem_1_1(lat: LabeledTorsLattice) -> Theorem11Report:
    """The three brick-splitting detections, evaluated on every class."""
    rows = []
    for mask in lat.masks:
        direct, _ = is_brick_splitting_direct(lat.ctx, mask)
        by_lab = is_brick_splitting_by_labels(lat, mask)
        by_mod = is_brick_splitting_by_modularity(lat, mask)
        rows.append((mask, direct, by_lab, by_mod))
    return Theorem11Report(rows)


def minimal_generators(ctx: TorsContext, mask: int) -> list[int]:
    """Greedy minimal generating subset of a torsion class (deterministic)."""
    gens = list(_bits(mask))
    changed = True
    while changed:
        changed = False
        for g in sorted(gens, key=lambda i: (sum(ctx.dims(i)), i)):
            rest = [x for x in gens if x != g]
            if torsion_closure(ctx, sum(1 << x for x in rest)) == mask:
                gens = rest
                changed = True
                break
    return gens


def to_dot(lat: LabeledTorsLattice, name: str = "tors") -> str:
    """Labeled Hasse quiver; node text = minimal generators, edge text =
    label brick dimension vector, arrows from bigger class to smaller."""
    ctx = lat.ctx
    lines = [f'digraph "{name}" {{']
    for i, mask in enumerate(lat.masks):
        gens = minimal_generators(ctx, mask)
        if mask == ctx.full:
            text = "mod A"
        elif mask == 0:
            text = "0"
        else:
            text = "{" + ",".join(ctx.dims(g).__str__() for g in gens) + "}"
        lines.append(f'  n{i} [label="{text}"];')
    for lo, up in sorted(lat.lattice.covers):
        brick = lat.labels[(lat.masks[lo], lat.masks[up])]
        lines.append(f'  n{up} -> n{lo} [label="{ctx.dims(brick)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(lat: LabeledTorsLattice) -> str:
    ctx = lat.ctx
    report = verify_theorem_1_1(lat)
    data = {
        "torsionClasses": [
            {"index": i, "members": [list(ctx.dims(b)) for b in _bits(m)]}
            for i, m in enumerate(lat.masks)
        ],
        "covers": [[int(lo), int(up)] for lo, up in sorted(lat.lattice.covers)],
        "labels": [
            {
                "lower": lat.position(lo),
                "upper": lat.position(up),
                "brick": list(ctx.dims(b)),
            }
            for (lo, up), b in sorted(lat.labels.items())
        ],
        "brickSplitting": [
            lat.position(m) for m in report.brick_splitting_masks()
        ],
    }
    return json.dumps(data, indent=2) + "\n"
