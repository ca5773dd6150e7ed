"""Naive per-bit GF(2) reference implementations used as test oracles.

Everything here works on plain lists of 0/1 ints with textbook loops, kept
deliberately independent of the packed-integer implementation under test.
"""


def naive_rank(rows):
    mat = [list(r) for r in rows]
    if not mat:
        return 0
    m, n = len(mat), len(mat[0])
    rank = 0
    row = 0
    for col in range(n):
        pivot = None
        for i in range(row, m):
            if mat[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        for i in range(m):
            if i != row and mat[i][col]:
                mat[i] = [(a + b) % 2 for a, b in zip(mat[i], mat[row])]
        row += 1
        rank += 1
        if row == m:
            break
    return rank


def naive_rref(rows):
    mat = [list(r) for r in rows]
    if not mat:
        return mat, []
    m, n = len(mat), len(mat[0])
    pivots = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        pivot = None
        for i in range(row, m):
            if mat[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        for i in range(m):
            if i != row and mat[i][col]:
                mat[i] = [(a + b) % 2 for a, b in zip(mat[i], mat[row])]
        pivots.append(col)
        row += 1
    return mat, pivots


def naive_mat_vec(rows, vec):
    return [sum(a * b for a, b in zip(r, vec)) % 2 for r in rows]


def naive_mat_mat(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % 2 for col in bt] for row in a]


def naive_kernel(rows, n):
    """All kernel vectors by brute-force enumeration (use only for small n)."""
    out = []
    for x in range(1 << n):
        vec = [(x >> j) & 1 for j in range(n)]
        if all(s == 0 for s in naive_mat_vec(rows, vec)):
            out.append(tuple(vec))
    return out


def naive_span(rows):
    """All row-space vectors by enumerating row combinations."""
    m = len(rows)
    out = set()
    for x in range(1 << m):
        acc = tuple([0] * (len(rows[0]) if rows else 0))
        for i in range(m):
            if (x >> i) & 1:
                acc = tuple((a + b) % 2 for a, b in zip(acc, rows[i]))
        out.add(acc)
    return out
