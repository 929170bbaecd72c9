"""Finite lattices: order structure, irreducibles, trimness and friends.

Every property check here is exhaustive; these booleans feed theorem-level
assertions downstream and get no error budget.
"""

import json
from dataclasses import dataclass, field

import numpy as np


class NotALatticeError(ValueError):
    pass


@dataclass
class FiniteLattice:
    labels: list
    leq: np.ndarray  # bool, leq[i, j] iff i <= j
    covers: list[tuple[int, int]] = field(default_factory=list)  # (lower, upper)
    join: np.ndarray | None = None
    meet: np.ndarray | None = None
    bottom: int = -1
    top: int = -1

    @property
    def n(self) -> int:
        return len(self.labels)

    def upper_covers(self, x: int) -> list[int]:
        return [u for (l, u) in self.covers if l == x]

    def lower_covers(self, x: int) -> list[int]:
        return [l for (l, u) in self.covers if u == x]

    def index_of(self, label) -> int:
        return self.labels.index(label)


def _closure(n: int, rel: np.ndarray) -> np.ndarray:
    reach = rel.copy()
    np.fill_diagonal(reach, True)
    while True:
        nxt = reach | (reach @ reach)
        if np.array_equal(nxt, reach):
            return reach
        reach = nxt


def _covers_from_leq(leq: np.ndarray) -> list[tuple[int, int]]:
    lt = leq & ~np.eye(leq.shape[0], dtype=bool)
    cov = lt & ~(lt @ lt)
    return [(int(i), int(j)) for i, j in np.argwhere(cov)]


def from_leq(labels, leq: np.ndarray) -> FiniteLattice:
    n = len(labels)
    leq = leq.astype(bool)
    if not np.all(np.diagonal(leq)):
        raise NotALatticeError("order not reflexive")
    if np.any(leq & leq.T & ~np.eye(n, dtype=bool)):
        raise NotALatticeError("order not antisymmetric")
    if not np.array_equal(_closure(n, leq), leq):
        raise NotALatticeError("order not transitive")

    join = np.full((n, n), -1, dtype=np.int64)
    meet = np.full((n, n), -1, dtype=np.int64)
    for x in range(n):
        for y in range(x, n):
            ub = np.nonzero(leq[x] & leq[y])[0]
            j = [int(c) for c in ub if np.all(leq[c, ub])]
            if len(j) != 1:
                raise NotALatticeError(f"no unique join for pair ({labels[x]!r}, {labels[y]!r})")
            lb = np.nonzero(leq[:, x] & leq[:, y])[0]
            m = [int(c) for c in lb if np.all(leq[lb, c])]
            if len(m) != 1:
                raise NotALatticeError(f"no unique meet for pair ({labels[x]!r}, {labels[y]!r})")
            join[x, y] = join[y, x] = j[0]
            meet[x, y] = meet[y, x] = m[0]
    bottoms = [x for x in range(n) if np.all(leq[x])]
    tops = [x for x in range(n) if np.all(leq[:, x])]
    if len(bottoms) != 1 or len(tops) != 1:
        raise NotALatticeError("missing global bottom or top")
    return FiniteLattice(
        labels=list(labels),
        leq=leq,
        covers=_covers_from_leq(leq),
        join=join,
        meet=meet,
        bottom=bottoms[0],
        top=tops[0],
    )


def from_covers(labels, cover_pairs) -> FiniteLattice:
    """Build a lattice from Hasse covers (lower, upper); fails loudly if the
    cover relation has a cycle or meets/joins are not unique."""
    n = len(labels)
    idx = {lbl: i for i, lbl in enumerate(labels)}
    rel = np.zeros((n, n), dtype=bool)
    for lo, up in cover_pairs:
        rel[idx[lo], idx[up]] = True
    leq = _closure(n, rel)
    if np.any(leq & leq.T & ~np.eye(n, dtype=bool)):
        raise NotALatticeError("cycle in cover relation")
    return from_leq(labels, leq)


def join_irreducibles(l: FiniteLattice) -> list[int]:
    return [x for x in range(l.n) if len(l.lower_covers(x)) == 1]


def meet_irreducibles(l: FiniteLattice) -> list[int]:
    return [x for x in range(l.n) if len(l.upper_covers(x)) == 1]


def maximal_chains(l: FiniteLattice) -> list[list[int]]:
    """All maximal chains, as cover paths from bottom to top (depth first)."""
    out = []
    stack = [[l.bottom]]
    while stack:
        chain = stack.pop()
        ups = l.upper_covers(chain[-1])
        if not ups:
            out.append(chain)
            continue
        for u in sorted(ups, reverse=True):
            stack.append(chain + [u])
    return out


def length(l: FiniteLattice) -> int:
    """Length of a longest chain (edges, not vertices)."""
    depth = {l.bottom: 0}
    order = _linear_extension(l)
    for x in order:
        for u in l.upper_covers(x):
            depth[u] = max(depth.get(u, 0), depth[x] + 1)
    return depth[l.top]


def _linear_extension(l: FiniteLattice) -> list[int]:
    order = sorted(range(l.n), key=lambda x: int(np.sum(l.leq[:, x])))
    return order


def is_graded(l: FiniteLattice) -> bool:
    lo = {l.bottom: 0}
    hi = {l.bottom: 0}
    for x in _linear_extension(l):
        for u in l.upper_covers(x):
            lo[u] = min(lo.get(u, 10**9), lo[x] + 1)
            hi[u] = max(hi.get(u, -1), hi[x] + 1)
    return all(lo[x] == hi[x] for x in range(l.n))


def is_left_modular_element(l: FiniteLattice, x: int, covers_only: bool = False) -> bool:
    """Left modularity of x: (y ∨ x) ∧ z = y ∨ (x ∧ z) for all y <= z.

    covers_only restricts to cover pairs y ⋖ z (valid for weakly atomic
    lattices, hence all finite ones); the unconditional scan is the default
    ground truth.
    """
    pairs = l.covers if covers_only else [
        (y, z) for y in range(l.n) for z in range(l.n) if l.leq[y, z]
    ]
    for y, z in pairs:
        if l.join[y, x] == -1:
            raise NotALatticeError("missing join table")
        if l.meet[l.join[y, x], z] != l.join[y, l.meet[x, z]]:
            return False
    return True


def left_modular_elements(l: FiniteLattice) -> list[int]:
    return [x for x in range(l.n) if is_left_modular_element(l, x)]


def is_left_modular_lattice(l: FiniteLattice) -> tuple[bool, list[int] | None]:
    """Search for a maximal chain all of whose elements are left modular."""
    lm = set(left_modular_elements(l))
    if l.bottom not in lm or l.top not in lm:
        return False, None
    # depth-first over covers restricted to left modular elements
    stack = [[l.bottom]]
    while stack:
        chain = stack.pop()
        if chain[-1] == l.top:
            return True, chain
        for u in l.upper_covers(chain[-1]):
            if u in lm:
                stack.append(chain + [u])
    return False, None


def is_extremal(l: FiniteLattice) -> bool:
    m = length(l)
    return len(join_irreducibles(l)) == m and len(meet_irreducibles(l)) == m


def is_trim(l: FiniteLattice) -> bool:
    return is_extremal(l) and is_left_modular_lattice(l)[0]


def is_semidistributive(l: FiniteLattice) -> bool:
    n = l.n
    join, meet = l.join, l.meet
    for x in range(n):
        jx = join[x]
        mx = meet[x]
        for y in range(n):
            jy = jx[y]
            my = mx[y]
            same_j = np.nonzero(jx == jy)[0]
            if np.any(jx[meet[y, same_j]] != jy):
                return False
            same_m = np.nonzero(mx == my)[0]
            if np.any(mx[join[y, same_m]] != my):
                return False
    return True


def is_distributive(l: FiniteLattice) -> bool:
    n = l.n
    join, meet = l.join, l.meet
    for x in range(n):
        for y in range(n):
            if np.any(meet[x, join[y]] != join[meet[x, y], meet[x]]):
                return False
    return True


def spine(l: FiniteLattice) -> list[int]:
    """Elements lying on some maximum-length chain; requires extremality."""
    if not is_extremal(l):
        raise NotALatticeError("spine is defined here only for extremal lattices")
    m = length(l)
    down = {l.bottom: 0}
    order = _linear_extension(l)
    for x in order:
        for u in l.upper_covers(x):
            down[u] = max(down.get(u, -(10**9)), down[x] + 1)
    up = {l.top: 0}
    for x in reversed(order):
        for lo in l.lower_covers(x):
            up[lo] = max(up.get(lo, -(10**9)), up[x] + 1)
    return [x for x in range(l.n) if down.get(x, -1) + up.get(x, -1) == m]


def sublattice(l: FiniteLattice, elements: list[int]) -> FiniteLattice:
    sub = list(elements)
    pos = {x: i for i, x in enumerate(sub)}
    for x in sub:
        for y in sub:
            if l.join[x, y] not in pos or l.meet[x, y] not in pos:
                raise NotALatticeError("subset not closed under join/meet")
    leq = np.array([[bool(l.leq[x, y]) for y in sub] for x in sub])
    return from_leq([l.labels[x] for x in sub], leq)


def to_dot(l: FiniteLattice, name: str = "lattice") -> str:
    """Hasse quiver in DOT, arrows drawn from bigger to smaller element."""
    lines = [f'digraph "{name}" {{']
    for i, lbl in enumerate(l.labels):
        lines.append(f'  n{i} [label="{lbl}"];')
    for lo, up in sorted(l.covers):
        lines.append(f"  n{up} -> n{lo};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(l: FiniteLattice) -> str:
    data = {
        "elements": [str(x) for x in l.labels],
        "covers": [[str(l.labels[lo]), str(l.labels[up])] for lo, up in sorted(l.covers)],
    }
    return json.dumps(data, indent=2) + "\n"


def from_json(doc: str) -> FiniteLattice:
    data = json.loads(doc)
    return from_covers(data["elements"], [tuple(c) for c in data["covers"]])
