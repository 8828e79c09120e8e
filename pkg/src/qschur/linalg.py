"""Dense and sparse exact linear algebra over any exact field.

A field object only needs `zero`, `one` attributes and elements supporting
+, -, *, / and equality; Q(v), Q, and cyclotomic fields all qualify.
"""

from __future__ import annotations


def mat_mul(a, b, field):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    zero = field.zero
    out = [[zero] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x == zero:
                continue
            bt = b[t]
            for j in range(m):
                y = bt[j]
                if y != zero:
                    oi[j] = oi[j] + x * y
    return out

def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def mat_eq(a, b):
    if len(a) != len(b):
        return False
    return all(ra == rb for ra, rb in zip(a, b))


def identity(n, field):
    return [[field.one if i == j else field.zero for j in range(n)]
            for i in range(n)]


def zeros(n, m, field):
    return [[field.zero] * m for _ in range(n)]


def is_zero_matrix(a, field):
    zero = field.zero
    return all(x == zero for row in a for x in row)


def mat_pow(a, k, field):
    n = len(a)
    out = identity(n, field)
    base = [row[:] for row in a]
    while k:
        if k & 1:
            out = mat_mul(out, base, field)
        base = mat_mul(base, base, field)
        k >>= 1
    return out


def rref(matrix, field):
    """Reduced row echelon form.  Returns (rref_rows, pivot_columns)."""
    zero, one = field.zero, field.one
    rows = [row[:] for row in matrix]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(m):
        pivot = None
        for i in range(r, n):
            if rows[i][c] != zero:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        if pv != one:
            inv = one / pv
            rows[r] = [inv * x for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != zero:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return rows, pivots


def rank(matrix, field):
    return len(rref(matrix, field)[1])


def column_basis(matrix, field):
    """Indices of a lexicographically-first column basis."""
    return rref(matrix, field)[1]


def solve_columns(matrix, basis_cols, field):
    """Express every column of `matrix` in terms of the columns indexed by
    basis_cols.  Returns a dict col_index -> coefficient list (len(basis_cols)).

    Assumes basis_cols were produced by column_basis, so every column lies in
    their span.
    """
    rows, pivots = rref(matrix, field)
    assert pivots == list(basis_cols), "basis columns must be the rref pivots"
    m = len(matrix[0]) if matrix else 0
    out = {}
    for c in range(m):
        out[c] = [rows[r][c] for r in range(len(basis_cols))]
    return out


def solve_in_span(basis_vectors, target, field):
    """Coefficients expressing target in the span of basis_vectors, or None.

    basis_vectors: list of equal-length coordinate lists (independent).
    """
    zero = field.zero
    if not basis_vectors:
        return [] if all(x == zero for x in target) else None
    m = len(target)
    aug = [[basis_vectors[j][i] for j in range(len(basis_vectors))] + [target[i]]
           for i in range(m)]
    rows, pivots = rref(aug, field)
    k = len(basis_vectors)
    if k in pivots:
        return None  # target outside the span
    coeffs = [zero] * k
    for r, c in enumerate(pivots):
        coeffs[c] = rows[r][k]
    return coeffs


def nullspace(matrix, field):
    """Basis of the right kernel as a list of coordinate lists."""
    zero, one = field.zero, field.one
    m = len(matrix[0]) if matrix else 0
    if not matrix:
        return [[one if i == j else zero for j in range(m)] for i in range(m)]
    rows, pivots = rref(matrix, field)
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        vec = [zero] * m
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][fc]
        basis.append(vec)
    return basis


def det_unit_check(matrix, field):
    """Determinant via fraction-free-ish Gaussian elimination over the field.

    Returns the determinant (a field element); intended for unit checks on
    change-of-basis matrices.
    """
    zero, one = field.zero, field.one
    n = len(matrix)
    rows = [row[:] for row in matrix]
    det = one
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if rows[i][c] != zero:
                pivot = i
                break
        if pivot is None:
            return zero
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        pv = rows[c][c]
        det = det * pv
        inv = one / pv
        for i in range(c + 1, n):
            if rows[i][c] != zero:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


class SparseEchelon:
    """Incremental echelon basis of sparse vectors (dict index -> element).

    Used for span-closure computations; insertion order determines pivots,
    pivot choice is the smallest index, so results are deterministic.
    """

    def __init__(self, field):
        self.field = field
        self.pivots = {}  # pivot index -> reduced vector with that pivot = 1

    def reduce(self, vec):
        """Reduce vec against the current basis; returns the residue dict."""
        zero = self.field.zero
        vec = {k: x for k, x in vec.items() if x != zero}
        changed = True
        while changed:
            changed = False
            for k in sorted(vec):
                if k in self.pivots:
                    f = vec[k]
                    for j, y in self.pivots[k].items():
                        s = vec.get(j, zero) - f * y
                        if s != zero:
                            vec[j] = s
                        else:
                            vec.pop(j, None)
                    changed = True
                    break
        return vec

    def insert(self, vec):
        """Insert a vector; returns True when it enlarged the span."""
        res = self.reduce(vec)
        if not res:
            return False
        p = min(res)
        pv = res[p]
        one = self.field.one
        if pv != one:
            inv = one / pv
            res = {k: inv * x for k, x in res.items()}
        # back-substitute into existing rows for a fully reduced basis
        for q, row in self.pivots.items():
            if p in row:
                f = row[p]
                for j, y in res.items():
                    s = row.get(j, self.field.zero) - f * y
                    if s != self.field.zero:
                        row[j] = s
                    else:
                        row.pop(j, None)
        self.pivots[p] = res
        return True

    def contains(self, vec):
        return not self.reduce(vec)

    @property
    def rank(self):
        return len(self.pivots)
