"""Bound quiver presentations: parsing, path enumeration, graph-level checks.

An algebra is presented as a quiver with monomial (zero) relations.  Relation
paths are stored in traversal order: the path "first a, then b" is [a, b],
so the composition written g∘f corresponds to the list [f, g].
"""

import json
from dataclasses import dataclass

import numpy as np


class AlgebraError(ValueError):
    """Malformed or inadmissible algebra presentation."""


class NotCertifiedError(RuntimeError):
    """A bounded search hit its cap before reaching a certified answer."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class BoundQuiver:
    name: str
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex names")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate arrow names")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise AlgebraError(f"arrow {a.name} has undeclared endpoint")
        amap = {a.name: a for a in self.arrows}
        for rel in self.relations:
            if len(rel) < 2:
                raise AlgebraError(f"relation {list(rel)} shorter than 2 (not admissible)")
            for nm in rel:
                if nm not in amap:
                    raise AlgebraError(f"unknown arrow {nm!r} in relation")
            for first, second in zip(rel, rel[1:]):
                if amap[first].target != amap[second].source:
                    raise AlgebraError(f"relation {list(rel)} is not a composable walk")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_index(self, v: str) -> int:
        return self.vertices.index(v)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def arrows_from(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrows_to(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        adj = {v: set() for v in self.vertices}
        for a in self.arrows:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n


def parse_algebra(doc: str) -> BoundQuiver:
    """Parse a UTF-8 JSON algebra description into a validated BoundQuiver."""
    try:
        data = json.loads(doc)
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"invalid JSON: {exc}") from exc
    for key in ("name", "vertices", "arrows", "relations"):
        if key not in data:
            raise AlgebraError(f"missing field {key!r}")
    arrows = tuple(
        Arrow(str(a["name"]), str(a["from"]), str(a["to"])) for a in data["arrows"]
    )
    return BoundQuiver(
        name=str(data["name"]),
        vertices=tuple(str(v) for v in data["vertices"]),
        arrows=arrows,
        relations=tuple(tuple(str(x) for x in rel) for rel in data["relations"]),
    )


def serialize(q: BoundQuiver) -> str:
    data = {
        "name": q.name,
        "vertices": list(q.vertices),
        "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in q.arrows],
        "relations": [list(rel) for rel in q.relations],
    }
    return json.dumps(data, indent=2) + "\n"


@dataclass(frozen=True)
class Path:
    """A surviving path of the algebra, arrows in traversal order."""

    source: str
    target: str
    arrows: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.arrows)


def _contains_relation(walk: tuple[str, ...], relations) -> bool:
    for rel in relations:
        k = len(rel)
        if k > len(walk):
            continue
        for i in range(len(walk) - k + 1):
            if walk[i : i + k] == rel:
                return True
    return False


def enumerate_paths(q: BoundQuiver, cap: int = 64) -> list[Path]:
    """All paths avoiding every relation, i.e. a monomial basis of the algebra.

    Paths are listed by length, then by arrow-index order.  Raises
    NotCertifiedError (with a witness walk) if survivors still exist at
    length `cap`, since the algebra may then be infinite dimensional.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    out = [Path(v, v, ()) for v in q.vertices]
    frontier = list(out)
    length = 0
    while frontier:
        length += 1
        if length > cap:
            raise NotCertifiedError(
                f"paths still alive at length {cap}; witness {list(frontier[0].arrows)}"
            )
        nxt = []
        for path in frontier:
            for a in q.arrows_from(path.target):
                walk = path.arrows + (a.name,)
                if not _contains_relation(walk, q.relations):
                    nxt.append(Path(path.source, a.target, walk))
        out.extend(nxt)
        frontier = nxt
    return out


def algebra_dimension(q: BoundQuiver, cap: int = 64) -> int:
    return len(enumerate_paths(q, cap))


def certify_admissible(q: BoundQuiver, cap: int = 64) -> None:
    """Check the presentation is admissible at desk scale.

    Relations of length >= 2 are enforced at construction; here we certify
    finite-dimensionality by running the path enumeration under the cap.
    """
    enumerate_paths(q, cap)


def ext_quiver(q: BoundQuiver) -> np.ndarray:
    """Arrow-count matrix: entry (i, j) = number of arrows i -> j."""
    mat = np.zeros((q.n, q.n), dtype=np.int64)
    for a in q.arrows:
        mat[q.vertex_index(a.source), q.vertex_index(a.target)] += 1
    return mat


def _sccs(n: int, edges: set[tuple[int, int]]) -> list[list[int]]:
    # Tarjan, iterative
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    out: list[list[int]] = []
    counter = [0]
    succ = [[j for (i, j) in edges if i == v] for v in range(n)]

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for k in range(pi, len(succ[v])):
                w = succ[v][k]
                if index[w] == -1:
                    work[-1] = (v, k + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def is_weakly_triangular(q: BoundQuiver) -> bool:
    """True iff every directed cycle of the Ext-quiver stays at one vertex."""
    edges = {
        (q.vertex_index(a.source), q.vertex_index(a.target))
        for a in q.arrows
        if a.source != a.target
    }
    return all(len(c) == 1 for c in _sccs(q.n, edges))


def is_fully_cyclic(q: BoundQuiver, cap: int = 64) -> bool:
    """True iff no idempotent e outside {0, 1} has eA(1-e) = 0.

    Decided on the reachability digraph "a nonzero path exists from i to j":
    a violating bipartition exists exactly when that digraph is not strongly
    connected.
    """
    if not q.is_connected():
        raise AlgebraError("fully-cyclic test requires a connected quiver")
    if q.n == 1:
        return True
    edges = set()
    for path in enumerate_paths(q, cap):
        if len(path) >= 1 and path.source != path.target:
            edges.add((q.vertex_index(path.source), q.vertex_index(path.target)))
    return len(_sccs(q.n, edges)) == 1


def glue(a: BoundQuiver, b: BoundQuiver, sink: str, source: str) -> BoundQuiver:
    """Glue algebra a (at a sink) to algebra b (at a source).

    The glued vertex keeps loops from either side; what is forbidden is a
    non-loop arrow leaving `sink` in a or entering `source` in b, since then
    uncancelled paths could cross the glue vertex.  All length-2 crossing
    walks (arrow into sink, then arrow out of source) become relations.
    """
    if sink not in a.vertices:
        raise AlgebraError(f"{sink!r} is not a vertex of {a.name}")
    if source not in b.vertices:
        raise AlgebraError(f"{source!r} is not a vertex of {b.name}")
    for ar in a.arrows_from(sink):
        if ar.target != sink:
            raise AlgebraError(f"vertex {sink!r} has outgoing arrow {ar.name} in {a.name}")
    for ar in b.arrows_to(source):
        if ar.source != source:
            raise AlgebraError(f"vertex {source!r} has incoming arrow {ar.name} in {b.name}")

    v = f"{sink}~{source}"
    taken = set(av for av in a.vertices if av != sink)
    bmap = {}
    for bv in b.vertices:
        if bv == source:
            bmap[bv] = v
            continue
        nm = bv
        while nm in taken or nm == v:
            nm += "'"
        bmap[bv] = nm
        taken.add(nm)
    amap = {av: (v if av == sink else av) for av in a.vertices}

    arrow_names = set(ar.name for ar in a.arrows)
    barrow = {}
    for ar in b.arrows:
        nm = ar.name
        while nm in arrow_names:
            nm += "'"
        barrow[ar.name] = nm
        arrow_names.add(nm)

    vertices = tuple(av for av in a.vertices if av != sink) + (v,) + tuple(
        bmap[bv] for bv in b.vertices if bv != source
    )
    arrows = tuple(Arrow(ar.name, amap[ar.source], amap[ar.target]) for ar in a.arrows) + tuple(
        Arrow(barrow[ar.name], bmap[ar.source], bmap[ar.target]) for ar in b.arrows
    )
    crossings = tuple(
        (ain.name, barrow[bout.name])
        for ain in a.arrows_to(sink)
        for bout in b.arrows_from(source)
    )
    relations = (
        a.relations
        + tuple(tuple(barrow[nm] for nm in rel) for rel in b.relations)
        + crossings
    )
    return BoundQuiver(f"{a.name}*{b.name}", vertices, arrows, relations)


def is_string_algebra(q: BoundQuiver) -> tuple[bool, str | None]:
    """String-algebra test with a diagnostic naming the violated condition."""
    rel2 = {rel for rel in q.relations if len(rel) == 2}
    for v in q.vertices:
        if len(q.arrows_from(v)) > 2:
            return False, f"vertex {v!r} has more than 2 outgoing arrows"
        if len(q.arrows_to(v)) > 2:
            return False, f"vertex {v!r} has more than 2 incoming arrows"
    for b in q.arrows:
        succ = [c for c in q.arrows_from(b.target) if (b.name, c.name) not in rel2]
        if len(succ) > 1:
            return False, f"arrow {b.name} has two nonzero continuations"
        pred = [a for a in q.arrows_to(b.source) if (a.name, b.name) not in rel2]
        if len(pred) > 1:
            return False, f"arrow {b.name} has two nonzero predecessors"
    return True, None
