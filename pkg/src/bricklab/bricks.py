"""Brick quiver, brick-directedness, and dimension-vector uniqueness."""

from dataclasses import dataclass

import numpy as np

from . import reps as R


class CyclicBrickQuiverError(ValueError):
    pass


@dataclass
class BrickQuiver:
    bricks: list[R.Representation]
    adjacency: np.ndarray  # bool, (x, y) iff x != y and Hom(x, y) != 0
    certified: bool

    @property
    def n(self) -> int:
        return len(self.bricks)

    def arrows(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in np.argwhere(self.adjacency)]


def brick_quiver(bricks: list[R.Representation], certified: bool = True) -> BrickQuiver:
    n = len(bricks)
    for i in range(n):
        for j in range(i + 1, n):
            if bricks[i].dims == bricks[j].dims and R.iso(bricks[i], bricks[j]):
                raise ValueError(f"duplicate bricks at positions {i}, {j}")
    adj = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            if i != j and R.hom_dim(bricks[i], bricks[j]) > 0:
                adj[i, j] = True
    return BrickQuiver(list(bricks), adj, certified)


def _find_cycle(adj: np.ndarray) -> list[int] | None:
    """Shortest directed cycle, canonical: minimal length, then smallest
    starting node, with BFS preferring small successor indices."""
    n = adj.shape[0]
    best: list[int] | None = None
    for v in range(n):
        dist = {v: 0}
        parent = {v: -1}
        frontier = [v]
        while frontier:
            nxt = []
            for u in frontier:
                for w in map(int, np.nonzero(adj[u])[0]):
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
            frontier = nxt
        closing = [u for u in dist if adj[u, v] and u != v]
        if not closing:
            continue
        u = min(closing, key=lambda x: (dist[x], x))
        path = [u]
        while path[-1] != v:
            path.append(parent[path[-1]])
        path.reverse()
        if best is None or len(path) < len(best):
            best = path
    if best is None:
        return None
    k = best.index(min(best))
    return best[k:] + best[:k]


def _topological_order(adj: np.ndarray) -> list[int]:
    n = adj.shape[0]
    indeg = adj.sum(axis=0).astype(int)
    out = []
    ready = sorted(i for i in range(n) if indeg[i] == 0)
    while ready:
        v = ready.pop(0)
        out.append(v)
        for w in np.nonzero(adj[v])[0]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(int(w))
        ready.sort()
    if len(out) != n:
        raise CyclicBrickQuiverError("brick quiver has a cycle")
    return out


@dataclass
class DirectednessVerdict:
    status: str  # "directed" | "directed-up-to-bound" | "cycle-found"
    order: list[int] | None  # topological order of Hom arrows (sources first)
    cycle: list[int] | None

    @property
    def acyclic(self) -> bool:
        return self.cycle is None


def is_brick_directed(bq: BrickQuiver) -> DirectednessVerdict:
    """Acyclicity of the brick quiver, with a certificate either way.

    On a bounded brick list a found cycle is conclusive but acyclicity is
    only "up to the bound".
    """
    cyc = _find_cycle(bq.adjacency)
    if cyc is not None:
        return DirectednessVerdict("cycle-found", None, cyc)
    order = _topological_order(bq.adjacency)
    status = "directed" if bq.certified else "directed-up-to-bound"
    return DirectednessVerdict(status, order, None)


def topological_brick_chain(bq: BrickQuiver) -> list[int]:
    """Total order with Hom(B_i, B_j) = 0 whenever i < j.

    This is the reverse of the topological order of the Hom arrows; both
    directions are checked pairwise before returning.
    """
    verdict = is_brick_directed(bq)
    if not verdict.acyclic:
        raise CyclicBrickQuiverError(f"cycle {verdict.cycle}")
    chain = list(reversed(verdict.order))
    for a in range(len(chain)):
        for b in range(a + 1, len(chain)):
            if R.hom_dim(bq.bricks[chain[a]], bq.bricks[chain[b]]) != 0:
                raise R.EngineError("chain order violates Hom vanishing")
    return chain


def dim_vector_collisions(bricks: list[R.Representation]) -> list[list[int]]:
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, b in enumerate(bricks):
        groups.setdefault(b.dims, []).append(i)
    return [g for g in groups.values() if len(g) > 1]


@dataclass
class BrickQuiverReport:
    connected: bool
    loop_free: bool
    cycle: list[int] | None
    cycle_is_brick_cycle: bool | None
    chain_from_acyclic: list[int] | None

    @property
    def all_pass(self) -> bool:
        if not (self.connected and self.loop_free):
            return False
        if self.cycle is not None:
            return bool(self.cycle_is_brick_cycle)
        return self.chain_from_acyclic is not None


def brick_quiver_properties_report(bq: BrickQuiver) -> BrickQuiverReport:
    """Connectivity, loop-freeness, and the cycle/chain dichotomy."""
    undirected = bq.adjacency | bq.adjacency.T
    seen = {0} if bq.n else set()
    stack = [0] if bq.n else []
    while stack:
        v = stack.pop()
        for w in np.nonzero(undirected[v])[0]:
            if int(w) not in seen:
                seen.add(int(w))
                stack.append(int(w))
    connected = len(seen) == bq.n
    loop_free = not np.any(np.diagonal(bq.adjacency))
    cyc = _find_cycle(bq.adjacency)
    if cyc is not None:
        # every consecutive Hom along the cycle must be nonzero and non-iso
        ok = all(
            R.hom_dim(bq.bricks[cyc[k]], bq.bricks[(cyc + [cyc[0]])[k + 1]]) > 0
            for k in range(len(cyc))
        )
        return BrickQuiverReport(connected, loop_free, cyc, ok, None)
    chain = topological_brick_chain(bq)
    return BrickQuiverReport(connected, loop_free, None, None, chain)


def to_dot(bq: BrickQuiver, name: str = "brick_quiver") -> str:
    lines = [f'digraph "{name}" {{']
    for i, b in enumerate(bq.bricks):
        lines.append(f'  n{i} [label="{b.describe()}"];')
    for i, j in bq.arrows():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def adjacency_json(bq: BrickQuiver) -> str:
    import json

    data = {
        "bricks": [list(b.dims) for b in bq.bricks],
        "arrows": [[i, j] for i, j in bq.arrows()],
        "certified": bq.certified,
    }
    return json.dumps(data, indent=2) + "\n"
