"""Combinatorics of pairs of flags: margin matrices, their closure order, and composition.

A weight is a weak composition v of d into n parts.  Positions 0..d-1 are
split by v into consecutive segments.  An orbit of flag pairs is recorded as
an n x n matrix of nonnegative integers whose row sums and column sums are
the two weights.  Everything here is exact integer combinatorics: the
partial order by corner sums, the transfer arrays between two composable
matrices, the associative composition they induce, and the peeling of a
matrix into adjacent elementary generators.

Matrices are tuples of tuples.  Permutations are tuples in one-line notation
on 0-based positions: sigma[a] is the image of a.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from math import comb

Matrix = tuple[tuple[int, ...], ...]
Perm = tuple[int, ...]


# -- weights and segments ----------------------------------------------------


def compositions(d: int, n: int) -> list[tuple[int, ...]]:
    """All weak compositions of d into n parts, lexicographically."""
    if n == 0:
        return [()] if d == 0 else []
    if n == 1:
        return [(d,)]
    out = []
    for first in range(d + 1):
        for rest in compositions(d - first, n - 1):
            out.append((first,) + rest)
    return out


def prefix_sums(v) -> tuple[int, ...]:
    out = [0]
    for part in v:
        out.append(out[-1] + part)
    return tuple(out)


def segments(v) -> tuple[frozenset[int], ...]:
    """Consecutive position blocks cut out by the weight v."""
    bar = prefix_sums(v)
    return tuple(frozenset(range(bar[i], bar[i + 1])) for i in range(len(v)))


# -- permutations --------------------------------------------------------------


def perm_identity(d: int) -> Perm:
    return tuple(range(d))


def perm_compose(a: Perm, b: Perm) -> Perm:
    """a after b: position s goes to a[b[s]]."""
    return tuple(a[b[s]] for s in range(len(b)))


def perm_inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for s, t in enumerate(a):
        out[t] = s
    return tuple(out)


def perm_inversions(a: Perm) -> int:
    d = len(a)
    return sum(1 for s in range(d) for t in range(s + 1, d) if a[s] > a[t])


def perm_to_matrix(sigma: Perm, v, w) -> Matrix:
    """Count how sigma scatters the segments of v across the segments of w."""
    d = len(sigma)
    if sum(v) != d or sum(w) != d:
        raise ValueError("weights do not match the permutation size")
    vbar, wbar = prefix_sums(v), prefix_sums(w)
    n_v, n_w = len(v), len(w)

    def w_piece(pos: int) -> int:
        for j in range(n_w):
            if wbar[j] <= pos < wbar[j + 1]:
                return j
        raise AssertionError

    m = [[0] * n_w for _ in range(n_v)]
    for i in range(n_v):
        for a in range(vbar[i], vbar[i + 1]):
            m[i][w_piece(sigma[a])] += 1
    return tuple(tuple(row) for row in m)


def bruhat_leq(sigma: Perm, tau: Perm) -> bool:
    """Bruhat-order comparison by the rank-count criterion."""
    d = len(sigma)
    if len(tau) != d:
        raise ValueError("permutations act on different sets")
    for i in range(d):
        cs = ct = 0
        # walk j from high to low, accumulating #{a <= i : perm(a) >= j}
        seen_s = sorted(sigma[: i + 1], reverse=True)
        seen_t = sorted(tau[: i + 1], reverse=True)
        for j in range(d - 1, -1, -1):
            while cs < len(seen_s) and seen_s[cs] >= j:
                cs += 1
            while ct < len(seen_t) and seen_t[ct] >= j:
                ct += 1
            if cs > ct:
                return False
    return True


# -- margin matrices and their order ------------------------------------------


def matrix_margins(a: Matrix) -> tuple[tuple[int, ...], tuple[int, ...]]:
    rows = tuple(sum(row) for row in a)
    cols = tuple(sum(row[j] for row in a) for j in range(len(a[0]) if a else 0))
    return rows, cols


def _validate(a: Matrix, square: bool = False) -> None:
    width = len(a[0]) if a else 0
    for row in a:
        if len(row) != width:
            raise ValueError("ragged matrix")
        for e in row:
            if not isinstance(e, int) or e < 0:
                raise ValueError("entries must be nonnegative integers")
    if square and width != len(a):
        raise ValueError("matrix is not square")


def order_leq(a: Matrix, b: Matrix) -> bool:
    """Closure order: every upper-right and lower-left corner sum of a stays under b's.

    Matrices with different margins live in different components and are
    incomparable, so the comparison is simply false for them.
    """
    _validate(a)
    _validate(b)
    if len(a) != len(b) or (a and len(a[0]) != len(b[0])):
        return False
    if matrix_margins(a) != matrix_margins(b):
        return False
    n = len(a)
    for i in range(n):
        for j in range(n):
            if i < j:
                sa = sum(a[p][q] for p in range(i + 1) for q in range(j, n))
                sb = sum(b[p][q] for p in range(i + 1) for q in range(j, n))
            elif i > j:
                sa = sum(a[p][q] for p in range(i, n) for q in range(j + 1))
                sb = sum(b[p][q] for p in range(i, n) for q in range(j + 1))
            else:
                continue
            if sa > sb:
                return False
    return True


def transpose(a: Matrix) -> Matrix:
    return tuple(tuple(row[i] for row in a) for i in range(len(a)))


# -- transfer arrays and composition -------------------------------------------


def _tables(rows: tuple[int, ...], cols: tuple[int, ...]):
    """All nonnegative integer matrices with the given margins."""
    if sum(rows) != sum(cols):
        return
    if not rows:
        if all(c == 0 for c in cols):
            yield ()
        return
    first, rest = rows[0], rows[1:]

    def fill(j: int, remaining: int, row: list[int], budget: list[int]):
        if j == len(cols) - 1:
            if remaining <= budget[j]:
                row[j] = remaining
                budget[j] -= remaining
                for tail in _tables(rest, tuple(budget)):
                    yield (tuple(row),) + tail
                budget[j] += remaining
            return
        top = min(remaining, budget[j])
        for e in range(top + 1):
            row[j] = e
            budget[j] -= e
            yield from fill(j + 1, remaining - e, row, budget)
            budget[j] += e
        row[j] = 0

    yield from fill(0, first, [0] * len(cols), list(cols))


ThreeArray = tuple[tuple[tuple[int, ...], ...], ...]  # indexed [i][j][k]


def enumerate_3arrays(a: Matrix, b: Matrix) -> tuple[ThreeArray, ...]:
    """All transfer arrays T with sum_k T[i][j][k] = a[i][j] and sum_i T[i][j][k] = b[j][k]."""
    _validate(a)
    _validate(b)
    n = len(a)
    _, a_cols = matrix_margins(a)
    b_rows, _ = matrix_margins(b)
    if a_cols != b_rows:
        return ()
    per_j: list[list[tuple[tuple[int, ...], ...]]] = []
    for j in range(n):
        rows_j = tuple(a[i][j] for i in range(n))
        cols_j = tuple(b[j][k] for k in range(n))
        per_j.append(list(_tables(rows_j, cols_j)))
    out = []

    def build(j: int, chosen: list):
        if j == n:
            array = tuple(
                tuple(tuple(chosen[jj][i][k] for k in range(n)) for jj in range(n))
                for i in range(n)
            )
            out.append(array)
            return
        for table in per_j[j]:
            chosen.append(table)
            build(j + 1, chosen)
            chosen.pop()

    build(0, [])
    return tuple(sorted(out))


def project_13(t: ThreeArray) -> Matrix:
    n = len(t)
    return tuple(
        tuple(sum(t[i][j][k] for j in range(n)) for k in range(n)) for i in range(n)
    )


def _adjacent_elementary(a: Matrix):
    """(h, value, upper?) when the off-diagonal support is one adjacent entry."""
    n = len(a)
    found = None
    for i in range(n):
        for j in range(n):
            if i != j and a[i][j]:
                if found is not None:
                    return None
                found = (i, j, a[i][j])
    if found is None:
        return None
    i, j, val = found
    if j == i + 1:
        return i, val, True
    if j == i - 1:
        return j, val, False
    return None


def _is_diagonal(a: Matrix) -> bool:
    return all(a[i][j] == 0 for i in range(len(a)) for j in range(len(a)) if i != j)


def _add_entry(a: Matrix, i: int, j: int, delta: int) -> Matrix:
    rows = [list(r) for r in a]
    rows[i][j] += delta
    return tuple(tuple(r) for r in rows)


def compose(a: Matrix, b: Matrix) -> Matrix:
    """The maximal 13-projection over all transfer arrays of the composable pair."""
    _validate(a)
    _validate(b)
    _, a_cols = matrix_margins(a)
    b_rows, _ = matrix_margins(b)
    if a_cols != b_rows:
        raise ValueError(
            f"column margins {a_cols} of the first matrix do not match row margins {b_rows}"
        )
    if _is_diagonal(a):
        return b
    if _is_diagonal(b):
        return a
    elem = _adjacent_elementary(a)
    if elem is not None:
        h, val, upper = elem
        if upper:
            row = b[h + 1]
            nz = [k for k in range(len(b)) if row[k]]
            if nz and row[max(nz)] >= val:
                l = max(nz)
                return _add_entry(_add_entry(b, h, l, val), h + 1, l, -val)
        else:
            row = b[h]
            nz = [k for k in range(len(b)) if row[k]]
            if nz and row[min(nz)] >= val:
                l = min(nz)
                return _add_entry(_add_entry(b, h + 1, l, val), h, l, -val)
    candidates = {project_13(t) for t in enumerate_3arrays(a, b)}
    maxima = [c for c in candidates if all(order_leq(other, c) for other in candidates)]
    if len(maxima) != 1:
        raise ArithmeticError(f"composition has {len(maxima)} maximal transfer projections")
    return maxima[0]


def elementary_tuples(a: Matrix, b: Matrix) -> list[tuple[tuple[int, ...], ThreeArray]]:
    """For adjacent elementary a at (h, h+1): distribution tuples s with their transfer arrays.

    Each s spreads the elementary value over row h+1 of b and determines the
    transfer array completely; its 13-marginal is
    b + sum_k s_k (E_{h,k} - E_{h+1,k}).  The arrays returned are exactly
    enumerate_3arrays(a, b).
    """
    if _is_diagonal(a):
        h, val = 0, 0
    else:
        elem = _adjacent_elementary(a)
        if elem is None or not elem[2]:
            raise ValueError("first factor must be elementary with one entry at (h, h+1)")
        h, val, _ = elem
    _, a_cols = matrix_margins(a)
    b_rows, _ = matrix_margins(b)
    if a_cols != b_rows:
        raise ValueError("margins do not match")
    n = len(b)
    out = []

    def array_for(s: tuple[int, ...]) -> ThreeArray:
        t = [[[0] * n for _ in range(n)] for _ in range(n)]
        for j in range(n):
            if j == h + 1:
                for k in range(n):
                    t[h][j][k] = s[k]
                    t[h + 1][j][k] = b[j][k] - s[k]
            else:
                for k in range(n):
                    t[j][j][k] = b[j][k]
        return tuple(tuple(tuple(row) for row in plane) for plane in t)

    def walk(k: int, left: int, s: list[int]):
        if k == n:
            if left == 0:
                out.append((tuple(s), array_for(tuple(s))))
            return
        for e in range(min(left, b[h + 1][k]) + 1):
            s.append(e)
            walk(k + 1, left - e, s)
            s.pop()

    walk(0, val, [])
    return sorted(out)


# -- blocks ---------------------------------------------------------------------


def block_map(a: Matrix) -> dict[tuple[int, int], frozenset[int]]:
    """Positions 0..d-1 dealt to the blocks of a, columns first, rows inside a column."""
    n = len(a)
    pos = 0
    out = {}
    for j in range(n):
        for i in range(n):
            out[(i, j)] = frozenset(range(pos, pos + a[i][j]))
            pos += a[i][j]
    return out


def block_partition(a: Matrix) -> tuple[frozenset[int], ...]:
    bm = block_map(a)
    n = len(a)
    return tuple(bm[(i, j)] for j in range(n) for i in range(n) if bm[(i, j)])


def row_unions(a: Matrix) -> tuple[frozenset[int], ...]:
    bm = block_map(a)
    n = len(a)
    return tuple(
        frozenset().union(*(bm[(i, j)] for j in range(n))) for i in range(n)
    )


def col_unions(a: Matrix) -> tuple[frozenset[int], ...]:
    bm = block_map(a)
    n = len(a)
    return tuple(
        frozenset().union(*(bm[(i, j)] for i in range(n))) for j in range(n)
    )


# -- length and generator decomposition ------------------------------------------


def elementary(v, i: int, value: int, lower: bool = False) -> Matrix:
    """Adjacent elementary matrix with column margins v and the given entry value.

    Upper: value sits at (i, i+1), taken from the diagonal at (i+1, i+1).
    Lower: value sits at (i+1, i), taken from the diagonal at (i, i).
    """
    n = len(v)
    if not 0 <= i < n - 1:
        raise ValueError("adjacent index out of range")
    m = [[0] * n for _ in range(n)]
    for j in range(n):
        m[j][j] = v[j]
    if lower:
        m[i][i] -= value
        m[i + 1][i] += value
    else:
        m[i + 1][i + 1] -= value
        m[i][i + 1] += value
    if min(m[i][i], m[i + 1][i + 1]) < 0:
        raise ValueError("margin too small for the elementary value")
    return tuple(tuple(r) for r in m)


def length(c: Matrix) -> int:
    """Dimension count of the orbit: sum of binomial(|i-j|+1, 2) over off-diagonal entries."""
    n = len(c)
    return sum(
        comb(abs(i - j) + 1, 2) * c[i][j] for i in range(n) for j in range(n) if i != j
    )


def peel(c: Matrix):
    """One upper peeling step: c = elementary * rest with the rest strictly shorter.

    Returns (elementary_factor, rest), or None when c has no strictly upper entry.
    """
    n = len(c)
    support = [(i, j) for i in range(n) for j in range(i + 1, n) if c[i][j]]
    if not support:
        return None
    h, l = max(support, key=lambda ij: (ij[1], ij[0]))
    val = c[h][l]
    rest = _add_entry(_add_entry(c, h, l, -val), h + 1, l, val)
    rows, _ = matrix_margins(c)
    vcols = list(rows)
    vcols[h] -= val
    vcols[h + 1] += val
    factor = elementary(tuple(vcols), h, val)
    return factor, rest


def _split_elementary(factor: Matrix) -> list[Matrix]:
    h, val, upper = _adjacent_elementary(factor)
    if not upper:
        raise AssertionError("split expects an upper factor")
    _, v = matrix_margins(factor)
    out = []
    for k in range(val - 1, -1, -1):
        vk = list(v)
        vk[h] += k
        vk[h + 1] -= k
        out.append(elementary(tuple(vk), h, 1))
    return out


def generator_decomposition(c: Matrix) -> list[Matrix]:
    """Factor c into unit adjacent elementary matrices (times a final diagonal).

    Composing the factors left to right returns c, and the lengths of the
    successive right-to-left partial composites strictly increase.
    """
    _validate(c, square=True)
    factors = [f for f in _decompose(c) if length(f) > 0]
    return factors or [c]


def _decompose(c: Matrix) -> list[Matrix]:
    if length(c) <= 1:
        return [c]
    step = peel(c)
    if step is None:
        # only strictly lower entries remain; mirror through the transpose
        mirror = _decompose(transpose(c))
        return [transpose(f) for f in reversed(mirror)]
    factor, rest = step
    return _split_elementary(factor) + _decompose(rest)
