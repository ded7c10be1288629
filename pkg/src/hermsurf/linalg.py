"""Row reduction and friends for small matrices over a FieldCtx.

Matrices are lists of rows of integer element codes.
"""
from __future__ import annotations


def rref(ctx, rows):
    """Reduced row-echelon form; returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ctx.inv(m[r][c])
        m[r] = [ctx.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(ctx, rows):
    return len(rref(ctx, rows)[1])


def nullspace(ctx, rows, ncols=None):
    """Basis of {x : rows . x = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(ctx, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = ctx.neg(row[f])
        basis.append(v)
    return basis


def matmul(ctx, a, b):
    return [[ctx.sum(ctx.mul(a[i][k], b[k][j]) for k in range(len(b)))
             for j in range(len(b[0]))] for i in range(len(a))]


def matvec(ctx, a, v):
    return [ctx.sum(ctx.mul(x, y) for x, y in zip(row, v)) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def inverse(ctx, a):
    n = len(a)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(ctx, aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def det(ctx, a):
    """Determinant by elimination."""
    m = [list(r) for r in a]
    n = len(m)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = ctx.neg(d)
        d = ctx.mul(d, m[c][c])
        inv = ctx.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c]:
                f = ctx.mul(m[i][c], inv)
                m[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(m[i], m[c])]
    return d


def complete_basis(ctx, rows, n=4):
    """Extend independent rows to a basis of GF^n with unit vectors."""
    out = [list(r) for r in rows]
    for i in range(n):
        e = [int(i == j) for j in range(n)]
        if rank(ctx, out + [e]) > len(out):
            out.append(e)
        if len(out) == n:
            break
    return out
