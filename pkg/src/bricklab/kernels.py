"""Dense linear algebra over GF(p) for small prime p.

All matrices are numpy int64 arrays with entries reduced mod p.  The row
reduction inner loop is the hot kernel of the whole package (it backs every
Hom-space computation), so it carries a numba @njit version next to a pure
numpy one.  Set BRICKLAB_NO_NUMBA=1 to force the numpy path; the benchmark
in benchmarks/bench_kernels.py compares the two.
"""

import os

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        return wrap


USE_NUMBA = NUMBA_AVAILABLE and os.environ.get("BRICKLAB_NO_NUMBA", "") == ""


def modp(a, p: int) -> np.ndarray:
    return np.asarray(np.asarray(a, dtype=np.int64) % p, dtype=np.int64)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # entries < p <= 3 and inner dims are desk scale, so int64 never overflows
    return (a @ b) % p


def _inv_scalar(a: int, p: int) -> int:
    return pow(int(a) % p, p - 2, p)


@njit(cache=True)
def _rref_njit(a, p):  # pragma: no cover - exercised via rref()
    m, n = a.shape
    piv = np.empty(min(m, n), dtype=np.int64)
    r = 0
    c = 0
    while r < m and c < n:
        pr = -1
        for i in range(r, m):
            if a[i, c] % p != 0:
                pr = i
                break
        if pr == -1:
            c += 1
            continue
        if pr != r:
            for j in range(n):
                t = a[r, j]
                a[r, j] = a[pr, j]
                a[pr, j] = t
        # scale pivot row; p is prime so Fermat inversion is exact
        inv = 1
        base = a[r, c] % p
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for j in range(n):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(m):
            if i != r:
                f = a[i, c] % p
                if f != 0:
                    for j in range(n):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
        piv[r] = c
        r += 1
        c += 1
    return a, piv[:r]


def _rref_np(a: np.ndarray, p: int):
    m, n = a.shape
    piv = []
    r = 0
    c = 0
    while r < m and c < n:
        col = a[r:, c] % p
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            c += 1
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = (a[r] * _inv_scalar(a[r, c], p)) % p
        f = a[:, c] % p
        f[r] = 0
        a -= np.outer(f, a[r])
        a %= p
        piv.append(c)
        r += 1
        c += 1
    return a, np.array(piv, dtype=np.int64)


def rref(a: np.ndarray, p: int):
    """Reduced row echelon form over GF(p); returns (R, pivot_columns)."""
    work = modp(a, p).copy()
    if work.size == 0:
        return work, np.array([], dtype=np.int64)
    if USE_NUMBA:
        return _rref_njit(work, p)
    return _rref_np(work, p)


def rank(a: np.ndarray, p: int) -> int:
    _, piv = rref(a, p)
    return int(piv.size)


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Right nullspace basis of a over GF(p); columns form a basis."""
    a = modp(a, p)
    m, n = a.shape
    if n == 0:
        return zeros(0, 0)
    if m == 0:
        return eye(n)
    red, piv = rref(a, p)
    piv_set = set(int(x) for x in piv)
    free = [j for j in range(n) if j not in piv_set]
    basis = zeros(n, len(free))
    for k, f in enumerate(free):
        basis[f, k] = 1
        for row, pc in enumerate(piv):
            basis[int(pc), k] = (-red[row, f]) % p
    return basis


def solve(a: np.ndarray, b: np.ndarray, p: int):
    """One solution of a x = b over GF(p) (free vars 0), or None."""
    a = modp(a, p)
    b = modp(b, p).reshape(-1, 1)
    m, n = a.shape
    red, piv = rref(np.concatenate([a, b], axis=1), p)
    for i in range(m):
        if np.all(red[i, :n] == 0) and red[i, n] != 0:
            return None
    x = zeros(n, 1)
    for row, pc in enumerate(piv):
        if int(pc) < n:
            x[int(pc), 0] = red[row, n]
    return x.reshape(-1)


def inv(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    red, _ = rref(np.concatenate([modp(a, p), eye(n)], axis=1), p)
    if not np.array_equal(red[:, :n], eye(n)):
        raise ValueError("matrix not invertible mod %d" % p)
    return red[:, n:].copy()


def is_invertible(a: np.ndarray, p: int) -> bool:
    if a.shape[0] != a.shape[1]:
        return False
    return rank(a, p) == a.shape[0]


def row_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis (RREF nonzero rows) of the row space of a."""
    red, piv = rref(a, p)
    return red[: piv.size].copy()


def in_row_space(basis: np.ndarray, v: np.ndarray, p: int) -> bool:
    if basis.shape[0] == 0:
        return bool(np.all(modp(v, p) == 0))
    return solve(basis.T, v, p) is not None


def rows_contained(basis: np.ndarray, other: np.ndarray, p: int) -> bool:
    """True iff every row of `other` lies in the row space of `basis`."""
    if other.shape[0] == 0:
        return True
    stacked = row_basis(np.concatenate([basis, other], axis=0), p)
    return stacked.shape[0] == row_basis(basis, p).shape[0]


def all_vectors(length: int, p: int):
    """All vectors of F_p^length in lexicographic order."""
    if length == 0:
        yield np.zeros(0, dtype=np.int64)
        return
    v = np.zeros(length, dtype=np.int64)
    while True:
        yield v.copy()
        i = length - 1
        while i >= 0:
            v[i] += 1
            if v[i] < p:
                break
            v[i] = 0
            i -= 1
        if i < 0:
            return


def enumerate_subspaces(dim: int, p: int) -> list[np.ndarray]:
    """All subspaces of F_p^dim, each as its canonical RREF row basis.

    The zero subspace is the (0, dim) matrix.  Enumeration is by rank, then
    by pivot-column pattern, then by free entries, so the order is stable.
    """
    out = [zeros(0, dim)]
    from itertools import combinations

    for r in range(1, dim + 1):
        for pivots in combinations(range(dim), r):
            free_slots = []
            for row, pc in enumerate(pivots):
                for col in range(pc + 1, dim):
                    if col not in pivots:
                        free_slots.append((row, col))
            for assign in all_vectors(len(free_slots), p):
                mat = zeros(r, dim)
                for row, pc in enumerate(pivots):
                    mat[row, pc] = 1
                for (row, col), val in zip(free_slots, assign):
                    mat[row, col] = val
                out.append(mat)
    return out
