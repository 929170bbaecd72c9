"""Strings and bands of a string algebra; certified indecomposable lists.

A letter is (arrow_name, +1) for a direct traversal or (arrow_name, -1) for
an inverse one; a word stores its letters in walk order (first step first).
The canonical form of a word is the lexicographically smaller of itself and
its inverse, so each module appears once.
"""

from dataclasses import dataclass

from . import reps as R
from .quiver import BoundQuiver, is_string_algebra
from .kernels import zeros


class NotStringAlgebraError(ValueError):
    pass


Letter = tuple[str, int]


@dataclass(frozen=True)
class StringWord:
    algebra: BoundQuiver
    letters: tuple[Letter, ...]
    base_vertex: str  # starting vertex of the walk (the vertex itself if trivial)

    def __len__(self) -> int:
        return len(self.letters)

    def vertex_walk(self) -> list[str]:
        q = self.algebra
        walk = [self.base_vertex]
        for name, d in self.letters:
            a = q.arrow(name)
            walk.append(a.target if d > 0 else a.source)
        return walk

    def inverse(self) -> "StringWord":
        if not self.letters:
            return self
        letters = tuple((nm, -d) for nm, d in reversed(self.letters))
        return StringWord(self.algebra, letters, self.vertex_walk()[-1])

    def sort_key(self):
        q = self.algebra
        order = {a.name: i for i, a in enumerate(q.arrows)}
        return tuple((order[nm], d) for nm, d in self.letters) or (
            (-1, q.vertex_index(self.base_vertex)),
        )

    def canonical(self) -> "StringWord":
        inv = self.inverse()
        return self if self.sort_key() <= inv.sort_key() else inv

    def label(self) -> str:
        if not self.letters:
            return f"e_{self.base_vertex}"
        return "".join(nm if d > 0 else nm + "-" for nm, d in self.letters)


def _letter_ends(q: BoundQuiver, letter: Letter) -> tuple[str, str]:
    a = q.arrow(letter[0])
    return (a.source, a.target) if letter[1] > 0 else (a.target, a.source)


def _runs_ok(q: BoundQuiver, letters: tuple[Letter, ...]) -> bool:
    """No direct (or inverse) run may contain a relation as a subpath."""
    i = 0
    n = len(letters)
    while i < n:
        j = i
        while j < n and letters[j][1] == letters[i][1]:
            j += 1
        run = [nm for nm, _ in letters[i:j]]
        if letters[i][1] < 0:
            run.reverse()
        from .quiver import _contains_relation

        if _contains_relation(tuple(run), q.relations):
            return False
        i = j
    return True


def _valid_extension(q: BoundQuiver, word: StringWord, letter: Letter) -> bool:
    src, _ = _letter_ends(q, letter)
    if word.vertex_walk()[-1] != src:
        return False
    if word.letters:
        last = word.letters[-1]
        if last[0] == letter[0] and last[1] == -letter[1]:
            return False  # immediate cancellation
    return _runs_ok(q, word.letters + (letter,))


def _require_string_algebra(q: BoundQuiver):
    ok, why = is_string_algebra(q)
    if not ok:
        raise NotStringAlgebraError(why)


def enumerate_strings(q: BoundQuiver, len_cap: int) -> tuple[list[StringWord], bool]:
    """All strings of length <= len_cap, one per inverse-equivalence class.

    Returns (strings, exhausted): exhausted means the breadth-first frontier
    died before the cap, so no longer strings exist at all.  The frontier
    keeps both orientations of every word: a length-(n+1) string is always a
    right-extension of its own prefix, never necessarily of the canonical
    representative.
    """
    _require_string_algebra(q)
    all_letters: list[Letter] = []
    for a in q.arrows:
        all_letters.append((a.name, 1))
        all_letters.append((a.name, -1))
    seen = {}
    frontier = {w.sort_key(): w for w in (StringWord(q, (), v) for v in q.vertices)}
    for w in frontier.values():
        canon = w.canonical()
        seen[canon.sort_key()] = canon
    exhausted = False
    for _ in range(len_cap):
        nxt = {}
        for w in frontier.values():
            for letter in all_letters:
                if _valid_extension(q, w, letter):
                    nw = StringWord(q, w.letters + (letter,), w.base_vertex)
                    nxt[nw.sort_key()] = nw
        if not nxt:
            exhausted = True
            break
        for nw in nxt.values():
            canon = nw.canonical()
            seen.setdefault(canon.sort_key(), canon)
        frontier = nxt
    if not exhausted:
        # the frontier survived the cap; check one more step
        exhausted = not any(
            _valid_extension(q, w, letter)
            for w in frontier.values()
            for letter in all_letters
        )
    words = sorted(seen.values(), key=lambda w: (len(w), w.sort_key()))
    return words, exhausted


def _max_relation_length(q: BoundQuiver) -> int:
    return max((len(rel) for rel in q.relations), default=2)


def _cyclic_word_valid(q: BoundQuiver, letters: tuple[Letter, ...]) -> bool:
    """Check that arbitrary powers of the cyclic word are strings."""
    walk_start, _ = _letter_ends(q, letters[0])
    walk_end = _letter_ends(q, letters[-1])[1]
    if walk_start != walk_end:
        return False
    reps = max(2, (_max_relation_length(q) // len(letters)) + 2)
    word = letters * reps
    for prev, cur in zip(word, word[1:]):
        if prev[0] == cur[0] and prev[1] == -cur[1]:
            return False
        if _letter_ends(q, prev)[1] != _letter_ends(q, cur)[0]:
            return False
    return _runs_ok(q, word)


def _rotations(letters: tuple[Letter, ...]):
    for i in range(len(letters)):
        yield letters[i:] + letters[:i]


def _is_proper_power(letters: tuple[Letter, ...]) -> bool:
    n = len(letters)
    for d in range(1, n):
        if n % d == 0 and letters == letters[:d] * (n // d):
            return True
    return False


def enumerate_bands(q: BoundQuiver, len_cap: int) -> list[StringWord]:
    """Bands up to rotation and inversion, of length <= len_cap."""
    _require_string_algebra(q)
    seen = {}
    out = []
    # grow linear walks whose wrap-around closes into a valid cyclic string
    def canonical_cyclic(letters):
        q_order = {a.name: i for i, a in enumerate(q.arrows)}

        def key_of(ls):
            return tuple((q_order[nm], d) for nm, d in ls)

        cands = []
        for rot in _rotations(letters):
            cands.append(key_of(rot))
        inv = tuple((nm, -d) for nm, d in reversed(letters))
        for rot in _rotations(inv):
            cands.append(key_of(rot))
        return min(cands)

    def grow(word: StringWord):
        letters = word.letters
        n = len(letters)
        if 2 <= n <= len_cap:
            walk = word.vertex_walk()
            if walk[0] == walk[-1]:
                has_dir = any(d > 0 for _, d in letters)
                has_inv = any(d < 0 for _, d in letters)
                if (
                    has_dir
                    and has_inv
                    and not _is_proper_power(letters)
                    and _cyclic_word_valid(q, letters)
                ):
                    key = canonical_cyclic(letters)
                    if key not in seen:
                        seen[key] = True
                        out.append(word)
        if n >= len_cap:
            return
        for a in q.arrows:
            for d in (1, -1):
                letter = (a.name, d)
                if _valid_extension(q, word, letter):
                    grow(StringWord(q, letters + (letter,), word.base_vertex))

    for v in q.vertices:
        grow(StringWord(q, (), v))
    return sorted(out, key=lambda w: (len(w), w.sort_key()))


def string_module(q: BoundQuiver, w: StringWord, p: int = 2) -> R.Representation:
    """The string module of w: one basis vector per walk vertex."""
    walk = w.vertex_walk()
    idx_at = []
    counts = {v: 0 for v in q.vertices}
    for v in walk:
        idx_at.append(counts[v])
        counts[v] += 1
    dims = [counts[v] for v in q.vertices]
    maps = {
        a.name: zeros(dims[q.vertex_index(a.target)], dims[q.vertex_index(a.source)])
        for a in q.arrows
    }
    for k, (nm, d) in enumerate(w.letters):
        if d > 0:
            maps[nm][idx_at[k + 1], idx_at[k]] = 1
        else:
            maps[nm][idx_at[k], idx_at[k + 1]] = 1
    return R.Representation(q, dims, maps, p)


@dataclass
class IndList:
    """List of indecomposables with a completeness certificate."""

    algebra: BoundQuiver
    modules: list[R.Representation]
    words: list[StringWord]
    completeness: str  # "certified-all" or "bounded"
    cap: int
    p: int

    @property
    def certified(self) -> bool:
        return self.completeness == "certified-all"

    def __len__(self) -> int:
        return len(self.modules)

    def index_by_dims(self, dims: tuple[int, ...]) -> list[int]:
        return [i for i, m in enumerate(self.modules) if m.dims == dims]

    def unique_by_dims(self, dims) -> R.Representation:
        hits = self.index_by_dims(tuple(dims))
        if len(hits) != 1:
            raise KeyError(f"{len(hits)} modules with dims {tuple(dims)}")
        return self.modules[hits[0]]


def classify_ind(q: BoundQuiver, len_cap: int = 12, p: int = 2) -> IndList:
    """String modules up to the cap; certified complete when the string
    enumeration exhausts below the cap and no band exists."""
    words, exhausted = enumerate_strings(q, len_cap)
    bands = enumerate_bands(q, len_cap)
    certified = exhausted and not bands
    modules = [string_module(q, w, p) for w in words]
    return IndList(
        algebra=q,
        modules=modules,
        words=list(words),
        completeness="certified-all" if certified else "bounded",
        cap=len_cap,
        p=p,
    )


def bricks_of(ind: IndList) -> IndList:
    """Filter an IndList down to its bricks; completeness is inherited."""
    keep = [i for i, m in enumerate(ind.modules) if R.is_brick(m)]
    return IndList(
        algebra=ind.algebra,
        modules=[ind.modules[i] for i in keep],
        words=[ind.words[i] for i in keep],
        completeness=ind.completeness,
        cap=ind.cap,
        p=ind.p,
    )
