"""Dense exact linear algebra over a field Ring (QQ or GF(p)).

Matrices are lists of row lists of raw field values.  Everything is small
here, so plain Gaussian elimination is used throughout.
"""

from __future__ import annotations

from .exactnum import Ring


def rref(rows, ring: Ring):
    """Reduced row echelon form.  Returns (new_rows, pivot_columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(m)):
            if m[i][c] != ring.zero():
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = ring.invert(m[r][c])
        m[r] = [ring.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != ring.zero():
                f = m[i][c]
                m[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows, ring: Ring) -> int:
    return len(rref(rows, ring)[1])


def nullspace(rows, ring: Ring):
    """Basis of the right null space {x : rows . x = 0}."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows, ring)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ring.zero()] * ncols
        v[fc] = ring.one()
        for i, pc in enumerate(pivots):
            v[pc] = ring.neg(red[i][fc])
        basis.append(v)
    return basis


def solve_right(rows, rhs, ring: Ring):
    """One solution x of rows . x = rhs, or None if inconsistent."""
    if not rows:
        return None if any(b != ring.zero() for b in rhs) else []
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ring)
    if ncols in pivots:
        return None
    x = [ring.zero()] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = red[i][ncols]
    return x


def transpose(rows):
    return [list(col) for col in zip(*rows)] if rows else []


def reduce_mod_span(span_rref, pivots, vec, ring: Ring):
    """Residue of vec modulo the row span (given in rref form)."""
    v = list(vec)
    for row, pc in zip(span_rref, pivots):
        f = v[pc]
        if f != ring.zero():
            v = [ring.sub(x, ring.mul(f, y)) for x, y in zip(v, row)]
    return v
