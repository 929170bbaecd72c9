"""Exact rational polyhedral helpers: Fourier-Motzkin, a tiny simplex, and
integer-lattice utilities.  No floating point anywhere; signs at walls are
decided in Fraction arithmetic.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True)
class Constraint:
    """coeffs . x + const  (>|>=)  0"""

    coeffs: tuple[Fraction, ...]
    const: Fraction
    strict: bool

    def normalized(self) -> "Constraint":
        nums = [self.const] + list(self.coeffs)
        denoms = [f.denominator for f in nums]
        scale = 1
        for d in denoms:
            scale = scale * d // gcd(scale, d)
        ints = [int(f * scale) for f in nums]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        if g > 1:
            ints = [v // g for v in ints]
        return Constraint(tuple(Fraction(v) for v in ints[1:]), Fraction(ints[0]), self.strict)


def _ct(coeffs, const=0, strict=False) -> Constraint:
    return Constraint(tuple(Fraction(c) for c in coeffs), Fraction(const), strict)


def make_ge(coeffs, const=0) -> Constraint:
    return _ct(coeffs, const, strict=False)


def make_gt(coeffs, const=0) -> Constraint:
    return _ct(coeffs, const, strict=True)


class Infeasible(Exception):
    """Raised with the contradictory constant constraint as certificate."""


def _substitute(c: Constraint, var: int, expr_coeffs, expr_const) -> Constraint:
    f = c.coeffs[var]
    coeffs = list(c.coeffs)
    coeffs[var] = Fraction(0)
    if f != 0:
        coeffs = [a + f * b for a, b in zip(coeffs, expr_coeffs)]
        const = c.const + f * expr_const
    else:
        const = c.const
    return Constraint(tuple(coeffs), const, c.strict)


def solve_system(
    equalities: list[tuple],
    inequalities: list[Constraint],
    nvars: int,
) -> tuple[Fraction, ...] | None:
    """One exact rational solution of {eq = 0} ∪ {ineq (>|>=) 0}, or None.

    Equalities are (coeffs, const) pairs.  Elimination is Fourier-Motzkin
    with strict/weak bookkeeping, so infeasibility is certified, and the
    witness is rebuilt by back-substitution.
    """
    eqs = [(tuple(Fraction(c) for c in co), Fraction(k)) for co, k in equalities]
    cons = [c.normalized() for c in inequalities]
    pivots: list[tuple[int, tuple, Fraction]] = []
    remaining = list(range(nvars))

    # Gaussian elimination of the equalities
    while eqs:
        co, k = eqs.pop()
        var = next((v for v in remaining if co[v] != 0), None)
        if var is None:
            if k != 0:
                return None
            continue
        f = co[var]
        expr_coeffs = tuple(-c / f if i != var else Fraction(0) for i, c in enumerate(co))
        expr_const = -k / f
        pivots.append((var, expr_coeffs, expr_const))
        remaining.remove(var)
        eqs = [
            (
                _substitute(Constraint(c0, k0, False), var, expr_coeffs, expr_const).coeffs,
                _substitute(Constraint(c0, k0, False), var, expr_coeffs, expr_const).const,
            )
            for c0, k0 in eqs
        ]
        cons = [_substitute(c, var, expr_coeffs, expr_const) for c in cons]

    # Fourier-Motzkin on the remaining variables
    stages: list[tuple[int, list[Constraint], list[Constraint]]] = []
    for var in remaining:
        lows, ups, keep = [], [], []
        for c in cons:
            f = c.coeffs[var]
            if f > 0:
                lows.append(c)  # x >= (-rest)/f,  strict accordingly
            elif f < 0:
                ups.append(c)
            else:
                keep.append(c)
        stages.append((var, lows, ups))
        new = keep
        seen = set()
        for lo in lows:
            for up in ups:
                fl, fu = lo.coeffs[var], up.coeffs[var]
                coeffs = tuple(
                    a * (-fu) + b * fl for a, b in zip(lo.coeffs, up.coeffs)
                )
                const = lo.const * (-fu) + up.const * fl
                c = Constraint(coeffs, const, lo.strict or up.strict).normalized()
                key = (c.coeffs, c.const, c.strict)
                if key not in seen:
                    seen.add(key)
                    new.append(c)
        cons = new

    for c in cons:
        if any(f != 0 for f in c.coeffs):
            continue
        if c.strict and not c.const > 0:
            return None
        if not c.strict and not c.const >= 0:
            return None

    # back-substitute: FM stages in reverse, then equality pivots
    x: list[Fraction] = [Fraction(0)] * nvars
    for var, lows, ups in reversed(stages):
        best_lo, lo_strict = None, False
        for c in lows:
            f = c.coeffs[var]
            val = -(c.const + sum(a * b for a, b in zip(c.coeffs, x)) - f * x[var]) / f
            if best_lo is None or val > best_lo:
                best_lo, lo_strict = val, c.strict
            elif val == best_lo:
                lo_strict = lo_strict or c.strict
        best_up, up_strict = None, False
        for c in ups:
            f = c.coeffs[var]
            val = -(c.const + sum(a * b for a, b in zip(c.coeffs, x)) - f * x[var]) / f
            if best_up is None or val < best_up:
                best_up, up_strict = val, c.strict
            elif val == best_up:
                up_strict = up_strict or c.strict
        if best_lo is None and best_up is None:
            x[var] = Fraction(0)
        elif best_up is None:
            x[var] = best_lo + 1 if lo_strict else best_lo
        elif best_lo is None:
            x[var] = best_up - 1 if up_strict else best_up
        else:
            x[var] = best_lo if best_lo == best_up else (best_lo + best_up) / 2
    for var, expr_coeffs, expr_const in reversed(pivots):
        x[var] = expr_const + sum(a * b for a, b in zip(expr_coeffs, x))
    return tuple(x)


def feasible(equalities, inequalities, nvars: int) -> bool:
    return solve_system(equalities, inequalities, nvars) is not None


# ---------------------------------------------------------------------------
# small exact simplex: maximize c.x subject to A x <= b, x >= 0, with b >= 0


def simplex_max(c, a_rows, b) -> Fraction:
    """Optimal value of max c.x, Ax <= b, x >= 0 (requires b >= 0).

    Bland's rule, Fraction arithmetic; objective must be bounded.
    """
    m = len(a_rows)
    n = len(c)
    tab = [[Fraction(x) for x in row] + [Fraction(0)] * m + [Fraction(b[i])] for i, row in enumerate(a_rows)]
    for i in range(m):
        tab[i][n + i] = Fraction(1)
    obj = [-Fraction(x) for x in c] + [Fraction(0)] * (m + 1)
    basis = [n + i for i in range(m)]
    while True:
        enter = next((j for j in range(n + m) if obj[j] < 0), None)
        if enter is None:
            return obj[-1]
        ratios = [
            (tab[i][-1] / tab[i][enter], basis[i], i)
            for i in range(m)
            if tab[i][enter] > 0
        ]
        if not ratios:
            raise ValueError("unbounded objective")
        _, _, row = min(ratios, key=lambda t: (t[0], t[1]))
        piv = tab[row][enter]
        tab[row] = [v / piv for v in tab[row]]
        for i in range(m):
            if i != row and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [v - f * w for v, w in zip(tab[i], tab[row])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [v - f * w for v, w in zip(obj, tab[row] + [])]
        basis[row] = enter


def _strictly_separable(diffs: list[tuple[int, ...]], n: int, equal_dir=None) -> bool:
    """Is there `a` with a.d > 0 for all d in diffs (and a.e = 0 if given)?

    Solved as max t s.t. t <= a.d, t <= 1 with a = a+ - a-; value 1 means yes.
    """
    if not diffs:
        return True
    rows = []
    b = []
    for d in diffs:
        # t - a.d <= 0
        row = [-x for x in d] + [x for x in d] + [1]
        rows.append([Fraction(v) for v in row])
        b.append(Fraction(0))
    if equal_dir is not None:
        for sgn in (1, -1):
            row = [sgn * x for x in equal_dir] + [-sgn * x for x in equal_dir] + [0]
            rows.append([Fraction(v) for v in row])
            b.append(Fraction(0))
    rows.append([Fraction(0)] * (2 * n) + [Fraction(1)])
    b.append(Fraction(1))
    cvec = [Fraction(0)] * (2 * n) + [Fraction(1)]
    return simplex_max(cvec, rows, b) == 1


def hull_vertices(points: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Vertices of conv(points): p is a vertex iff an exact LP strictly
    separates it from the others."""
    pts = sorted(set(points))
    if len(pts) == 1:
        return pts
    n = len(pts[0])
    out = []
    for v in pts:
        diffs = [tuple(a - b for a, b in zip(v, p)) for p in pts if p != v]
        if _strictly_separable(diffs, n):
            out.append(v)
    return out


def _on_segment(p, u, v) -> bool:
    # p on the closed segment [u, v] (all integer points)
    dv = [b - a for a, b in zip(u, v)]
    dp = [b - a for a, b in zip(u, p)]
    # collinear: dp x dv = 0 (all 2x2 minors vanish)
    for i in range(len(dv)):
        for j in range(i + 1, len(dv)):
            if dp[i] * dv[j] - dp[j] * dv[i] != 0:
                return False
    t_num = t_den = None
    for i in range(len(dv)):
        if dv[i] != 0:
            t_num, t_den = dp[i], dv[i]
            break
    if t_den is None:
        return all(x == 0 for x in dp)
    t = Fraction(t_num, t_den)
    return 0 <= t <= 1 and all(Fraction(dp[i]) == t * dv[i] for i in range(len(dv)))


def hull_edges(points, vertices) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pairs of vertices forming 1-faces of conv(points)."""
    pts = sorted(set(points))
    n = len(pts[0]) if pts else 0
    out = []
    for u, v in itertools.combinations(sorted(vertices), 2):
        seg = [p for p in pts if _on_segment(p, u, v)]
        rest = [p for p in pts if p not in seg]
        diffs = [tuple(a - b for a, b in zip(u, p)) for p in rest]
        edir = tuple(a - b for a, b in zip(u, v))
        if _strictly_separable(diffs, n, equal_dir=edir):
            out.append((u, v))
    return out


# ---------------------------------------------------------------------------
# integer-lattice helpers


def rational_rank(rows: list[tuple]) -> int:
    if not rows:
        return 0
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    col = 0
    while rank < len(mat) and col < ncols:
        piv = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        f = mat[rank][col]
        mat[rank] = [v / f for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                g = mat[r][col]
                mat[r] = [v - g * w for v, w in zip(mat[r], mat[rank])]
        rank += 1
        col += 1
    return rank


def _int_det(mat: list[list[int]]) -> int:
    # Bareiss
    m = [row[:] for row in mat]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def maximal_minors_gcd(rows: list[tuple[int, ...]]) -> int:
    """gcd of all k x k minors of the k x n integer matrix (k <= n).

    Equal to 1 exactly when the rows extend to a Z-basis of Z^n.
    """
    k = len(rows)
    if k == 0:
        return 1
    n = len(rows[0])
    if k > n:
        return 0
    g = 0
    for cols in itertools.combinations(range(n), k):
        minor = _int_det([[row[c] for c in cols] for row in rows])
        g = gcd(g, abs(minor))
    return g
