"""Flag-pair combinatorics: margins, closure order, transfer arrays, decomposition."""

from itertools import permutations

import pytest

from qflag.flagcomb import (
    block_map,
    block_partition,
    bruhat_leq,
    col_unions,
    compose,
    compositions,
    elementary,
    elementary_tuples,
    enumerate_3arrays,
    generator_decomposition,
    length,
    matrix_margins,
    order_leq,
    peel,
    perm_compose,
    perm_identity,
    perm_inverse,
    perm_inversions,
    perm_to_matrix,
    prefix_sums,
    project_13,
    row_unions,
    segments,
    transpose,
)


def _diag(v):
    n = len(v)
    return tuple(tuple(v[i] if i == j else 0 for j in range(n)) for i in range(n))


def _all_matrices(d, n):
    out = []
    cells = n * n

    def walk(idx, left, flat):
        if idx == cells:
            if left == 0:
                out.append(tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(n)))
            return
        for e in range(left + 1):
            flat.append(e)
            walk(idx + 1, left - e, flat)
            flat.pop()

    walk(0, d, [])
    return out


def _compose_brute(a, b):
    cands = {project_13(t) for t in enumerate_3arrays(a, b)}
    maxima = [c for c in cands if all(order_leq(o, c) for o in cands)]
    assert len(maxima) == 1, (a, b, cands)
    return maxima[0]


def test_compositions_and_segments():
    assert compositions(2, 2) == [(0, 2), (1, 1), (2, 0)]
    assert prefix_sums((1, 2, 1)) == (0, 1, 3, 4)
    assert segments((1, 1)) == (frozenset({0}), frozenset({1}))
    assert segments((2, 0)) == (frozenset({0, 1}), frozenset())
    assert segments((1, 2, 1)) == (frozenset({0}), frozenset({1, 2}), frozenset({3}))


def test_perm_to_matrix():
    assert perm_to_matrix((0, 1), (1, 1), (1, 1)) == ((1, 0), (0, 1))
    assert perm_to_matrix((1, 0), (1, 1), (1, 1)) == ((0, 1), (1, 0))
    assert perm_to_matrix((0, 1), (2, 0), (1, 1)) == ((1, 1), (0, 0))
    for v in compositions(3, 2):
        assert perm_to_matrix(perm_identity(3), v, v) == _diag(v)


def test_order_leq():
    ident = ((1, 0), (0, 1))
    anti = ((0, 1), (1, 0))
    assert order_leq(ident, anti)
    assert not order_leq(anti, ident)
    assert order_leq(anti, anti)
    # different margins: incomparable, not an error
    assert not order_leq(ident, ((2, 0), (0, 0)))


def test_enumerate_3arrays_diag_case():
    b = ((1, 0), (1, 1))
    arrays = enumerate_3arrays(_diag((1, 2)), b)
    assert len(arrays) == 1
    t = arrays[0]
    n = 2
    for i in range(n):
        for j in range(n):
            for k in range(n):
                assert t[i][j][k] == (b[j][k] if i == j else 0)
    assert enumerate_3arrays(_diag((2, 1)), b) == ()


def test_enumerate_3arrays_elementary_case():
    a = ((1, 1), (0, 1))
    b = ((1, 0), (1, 1))
    arrays = enumerate_3arrays(a, b)
    assert len(arrays) == 2
    projections = sorted(project_13(t) for t in arrays)
    assert projections == [((1, 1), (1, 0)), ((2, 0), (0, 1))]
    pairs = elementary_tuples(a, b)
    assert [s for s, _ in pairs] == [(0, 1), (1, 0)]
    assert sorted(t for _, t in pairs) == sorted(arrays)
    assert dict((s, project_13(t)) for s, t in pairs) == {
        (1, 0): ((2, 0), (0, 1)),
        (0, 1): ((1, 1), (1, 0)),
    }


def test_elementary_tuples_zero_value():
    b = ((1, 0), (1, 1))
    pairs = elementary_tuples(_diag((1, 2)), b)
    assert len(pairs) == 1
    s, t = pairs[0]
    assert s == (0, 0)
    assert project_13(t) == b


def test_elementary_tuples_match_enumeration_exhaustively():
    for d in range(1, 4):
        for n in (2, 3):
            for v in compositions(d, n):
                for h in range(n - 1):
                    for a_val in range(0, v[h + 1] + 1):
                        va = list(v)
                        va[h] += a_val
                        va[h + 1] -= a_val
                        try:
                            amat = elementary(tuple(v), h, a_val)
                        except ValueError:
                            continue
                        for b in _all_matrices(d, n):
                            rows, _ = matrix_margins(b)
                            _, acols = matrix_margins(amat)
                            if rows != acols:
                                continue
                            pairs = elementary_tuples(amat, b)
                            assert sorted(t for _, t in pairs) == sorted(
                                enumerate_3arrays(amat, b)
                            )
                            for s, t in pairs:
                                want = [list(r) for r in b]
                                for k, sk in enumerate(s):
                                    want[h][k] += sk
                                    want[h + 1][k] -= sk
                                assert project_13(t) == tuple(tuple(r) for r in want)


def test_compose_examples():
    b = ((1, 0), (1, 1))
    assert compose(_diag((1, 2)), b) == b
    assert compose(b, _diag((2, 1))) == b
    assert compose(((1, 1), (0, 1)), ((1, 0), (1, 1))) == ((1, 1), (1, 0))
    # two-step filtration example: adjacent elementary pieces merge their values
    for v1, v2, a, b_ in [(0, 0, 1, 1), (1, 0, 1, 2), (1, 2, 2, 1)]:
        first = ((v1 + b_, a), (0, v2))
        second = ((v1, b_), (0, v2 + a))
        assert compose(first, second) == ((v1, a + b_), (0, v2))


def test_compose_margin_error():
    with pytest.raises(ValueError):
        compose(((1, 0), (0, 1)), ((2, 0), (0, 0)))


def test_compose_matches_brute_force_and_is_maximal():
    for d in range(1, 4):
        for n in (2, 3):
            if n == 3 and d > 2:
                continue  # larger grid covered by the acceptance suite
            mats = _all_matrices(d, n)
            by_rows = {}
            for m in mats:
                by_rows.setdefault(matrix_margins(m)[0], []).append(m)
            for a in mats:
                _, acols = matrix_margins(a)
                for b in by_rows.get(acols, []):
                    got = compose(a, b)
                    assert got == _compose_brute(a, b)


def test_compose_transpose_duality():
    for d in (2, 3):
        mats = _all_matrices(d, 2)
        for a in mats:
            _, acols = matrix_margins(a)
            for b in mats:
                if matrix_margins(b)[0] != acols:
                    continue
                assert transpose(compose(a, b)) == compose(transpose(b), transpose(a))


def test_closed_form_elementary_compose():
    # when the elementary value fits under the last nonzero entry of row h+1,
    # composition just moves that much mass up one row
    for d in range(1, 4):
        for n in (2, 3):
            for b in _all_matrices(d, n):
                rows, _ = matrix_margins(b)
                for h in range(n - 1):
                    nz = [k for k in range(n) if b[h + 1][k]]
                    if not nz:
                        continue
                    l = max(nz)
                    for a_val in range(1, b[h + 1][l] + 1):
                        v = list(rows)
                        v[h] += a_val
                        v[h + 1] -= a_val
                        amat = tuple(
                            tuple(
                                (rows[i] if i != h + 1 else rows[h + 1] - a_val)
                                if i == j
                                else (a_val if (i, j) == (h, h + 1) else 0)
                                for j in range(n)
                            )
                            for i in range(n)
                        )
                        want = [list(r) for r in b]
                        want[h][l] += a_val
                        want[h + 1][l] -= a_val
                        assert compose(amat, b) == tuple(tuple(r) for r in want)


def test_blocks():
    bm = block_map(((1, 1), (0, 0)))
    assert bm[(0, 0)] == frozenset({0})
    assert bm[(1, 0)] == frozenset()
    assert bm[(0, 1)] == frozenset({1})
    assert bm[(1, 1)] == frozenset()
    bm = block_map(((1, 0), (1, 1)))
    assert bm[(0, 0)] == frozenset({0})
    assert bm[(1, 0)] == frozenset({1})
    assert bm[(0, 1)] == frozenset()
    assert bm[(1, 1)] == frozenset({2})
    assert block_partition(_diag((1, 2))) == segments((1, 2))
    a = ((1, 0), (1, 1))
    assert row_unions(a) == (frozenset({0}), frozenset({1, 2}))
    assert col_unions(a) == (frozenset({0, 1}), frozenset({2}))


def test_length():
    assert length(_diag((3, 1))) == 0
    assert length(((1, 1), (0, 1))) == 1
    assert length(((0, 0, 1), (0, 0, 0), (0, 0, 0))) == 3
    assert length(((0, 0), (1, 0))) == 1


def test_peel_shortens():
    c = ((1, 1), (1, 0))
    step = peel(c)
    assert step is not None
    factor, rest = step
    assert length(rest) < length(c)
    assert compose(factor, rest) == c
    assert peel(_diag((2, 1))) is None
    assert peel(((0, 0), (2, 0))) is None


def test_generator_decomposition_basics():
    d2 = _diag((2, 1))
    assert generator_decomposition(d2) == [d2]
    e = elementary((1, 1), 0, 1)
    assert generator_decomposition(e) == [e]


def _recompose(factors):
    acc = factors[-1]
    lens = [length(acc)]
    for f in reversed(factors[:-1]):
        acc = compose(f, acc)
        lens.append(length(acc))
    return acc, lens


def test_generator_decomposition_recomposes():
    for d in range(1, 4):
        for n in (2, 3):
            if n == 3 and d > 2:
                continue
            for c in _all_matrices(d, n):
                factors = generator_decomposition(c)
                for f in factors:
                    assert length(f) <= 1
                got, lens = _recompose(factors)
                assert got == c
                assert all(x < y for x, y in zip(lens, lens[1:])), (c, lens)


def test_bruhat_rank_criterion_matches_closure():
    for d in (2, 3, 4):
        perms = list(permutations(range(d)))
        below = {p: {p} for p in perms}
        changed = True
        while changed:
            changed = False
            for p in perms:
                cur = below[p]
                grown = set(cur)
                for s in cur:
                    for a in range(d):
                        for b in range(a + 1, d):
                            t = list(s)
                            t[a], t[b] = t[b], t[a]
                            t = tuple(t)
                            if perm_inversions(t) < perm_inversions(s):
                                grown.add(t)
                if grown != cur:
                    below[p] = grown
                    changed = True
        for s in perms:
            for t in perms:
                assert bruhat_leq(s, t) == (s in below[t]), (s, t)


def test_matrix_order_monotone_in_bruhat():
    d = 3
    perms = list(permutations(range(d)))
    for s in perms:
        for t in perms:
            if not bruhat_leq(s, t):
                continue
            for n in (2, 3):
                for v in compositions(d, n):
                    for w in compositions(d, n):
                        assert order_leq(perm_to_matrix(s, v, w), perm_to_matrix(t, v, w))


def test_perm_helpers():
    s = (1, 2, 0)
    assert perm_compose(perm_inverse(s), s) == perm_identity(3)
    assert perm_inversions((2, 1, 0)) == 3
