"""Small exact linear algebra: field elimination, integer HNF/SNF, and F_p routines."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import InvalidInput


def _entry(x):
    return Fraction(x) if isinstance(x, int) else x


def det(M: Sequence[Sequence]):
    """Determinant by Gaussian elimination over any field (Fractions, field elements)."""
    A = [[_entry(x) for x in r] for r in M]
    n = len(A)
    d = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            return 0 * A[0][0] if n else 1
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            d = -d
        d = d * A[k][k]
        for i in range(k + 1, n):
            if A[i][k] != 0:
                m = A[i][k] / A[k][k]
                for j in range(k, n):
                    A[i][j] = A[i][j] - m * A[k][j]
    return d


def inverse(M: Sequence[Sequence]) -> list[list]:
    M = [[_entry(x) for x in r] for r in M]
    n = len(M)
    one = M[0][0] ** 0 if n else 1
    A = [list(r) + [one if i == j else one * 0 for j in range(n)] for i, r in enumerate(M)]
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            raise InvalidInput("singular matrix")
        A[k], A[piv] = A[piv], A[k]
        p = A[k][k]
        A[k] = [x / p for x in A[k]]
        for i in range(n):
            if i != k and A[i][k] != 0:
                m = A[i][k]
                A[i] = [x - m * y for x, y in zip(A[i], A[k])]
    return [row[n:] for row in A]


def matmul(A, B):
    return [[sum((a * b for a, b in zip(row, col)), 0 * row[0]) for col in zip(*B)] for row in A]


def identity(n: int, one=Fraction(1)):
    return [[one if i == j else one * 0 for j in range(n)] for i in range(n)]


# --- integer lattices ---

def hnf_columns(vectors: Sequence[Sequence[int]], n: int) -> tuple[tuple[int, ...], ...]:
    """Upper-triangular column Hermite normal form of the Z-span of ``vectors``.

    Returned as an n x n matrix (rows of the matrix); column j is the j-th basis
    vector, zero below row j, positive diagonal, and 0 <= H[i][j] < H[i][i] for j > i.
    The span must have full rank n.
    """
    vecs = [list(v) for v in vectors if any(v)]
    cols = [None] * n
    for r in range(n - 1, -1, -1):
        piv = None
        rest = []
        for v in vecs:
            if v[r] == 0:
                rest.append(v)
                continue
            if piv is None:
                piv = v
                continue
            # extended-gcd combine piv and v on coordinate r
            a, b = piv[r], v[r]
            g, x, y = _xgcd(a, b)
            new_piv = [x * p + y * w for p, w in zip(piv, v)]
            other = [(b // g) * p - (a // g) * w for p, w in zip(piv, v)]
            piv = new_piv
            if any(other):
                rest.append(other)
        if piv is None:
            raise InvalidInput("lattice is not of full rank")
        if piv[r] < 0:
            piv = [-x for x in piv]
        cols[r] = piv
        vecs = rest
    for j in range(n):
        for i in range(j - 1, -1, -1):
            q = cols[j][i] // cols[i][i]
            if q:
                cols[j] = [x - q * y for x, y in zip(cols[j], cols[i])]
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def solve_upper_columns(H, v) -> list[Fraction]:
    """Coefficients c with sum_j c_j * column_j(H) = v, for triangular H."""
    n = len(H)
    c = [Fraction(0)] * n
    rem = [Fraction(x) for x in v]
    for j in range(n - 1, -1, -1):
        c[j] = rem[j] / H[j][j]
        if c[j]:
            for i in range(j + 1):
                rem[i] -= c[j] * H[i][j]
    return c


def smith_form(rows: Sequence[Sequence[int]], ncols: int) -> tuple[list[int], list[list[int]]]:
    """Smith form of an integer relation matrix, tracking column operations.

    Returns (diagonal, V) with V unimodular (ncols x ncols) such that the quotient
    Z^ncols / rowspace is isomorphic to sum Z/d_i via x -> x V.
    """
    A = [list(r) for r in rows if any(r)]
    m = len(A)
    V = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def col_op(j, k, q):  # column j -= q * column k
        for row in A:
            row[j] -= q * row[k]
        for row in V:
            row[j] -= q * row[k]

    def col_swap(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    diag = []
    t = 0
    while t < min(m, ncols):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, ncols) if A[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        A[t], A[i] = A[i], A[t]
        if j != t:
            col_swap(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, ncols):
                if A[t][j]:
                    col_op(j, t, A[t][j] // A[t][t])
                    if A[t][j]:
                        done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, ncols)
                            if A[i][j] % A[t][t]), None)
                if bad is None:
                    break
                A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
                continue
            entries = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            entries += [(abs(A[t][j]), t, j) for j in range(t, ncols) if A[t][j]]
            _, i, j = min(entries)
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                col_swap(t, j)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
        diag.append(A[t][t])
        t += 1
    diag += [0] * (ncols - len(diag))
    return diag, V


# --- linear algebra over F_p ---

def fp_rref(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    A = [[x % p for x in r] for r in rows]
    ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [(x * inv) % p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                m = A[i][c]
                A[i] = [(x - m * y) % p for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def fp_rank(rows, p: int) -> int:
    rows = [r for r in rows]
    return len(fp_rref(rows, p)[1]) if rows else 0


def fp_kernel(rows: Sequence[Sequence[int]], p: int, ncols: int) -> list[list[int]]:
    """Basis of {x : A x = 0} over F_p."""
    if not rows:
        return [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    R, pivots = fp_rref(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, pc in zip(R, pivots):
            x[pc] = (-row[f]) % p
        basis.append(x)
    return basis


def fp_solve(rows: Sequence[Sequence[int]], rhs: Sequence[int], p: int):
    """One solution of A x = b over F_p, or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = fp_rref(aug, p)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols] % p
    return x


class FpQuotient:
    """The quotient F_p^n / W with a fixed coordinate system.

    Coordinates are read off at the non-pivot columns of the reduced basis of W.
    """

    def __init__(self, p: int, n: int, relations: Sequence[Sequence[int]]):
        self.p, self.n = p, n
        rel = [list(r) for r in relations if any(x % p for x in r)]
        self._rref, self._pivots = fp_rref(rel, p) if rel else ([], [])
        self.free = [c for c in range(n) if c not in self._pivots]

    @property
    def rank(self) -> int:
        return len(self.free)

    def project(self, v: Sequence[int]) -> tuple[int, ...]:
        v = [x % self.p for x in v]
        for row, pc in zip(self._rref, self._pivots):
            if v[pc]:
                m = v[pc]
                v = [(x - m * y) % self.p for x, y in zip(v, row)]
        return tuple(v[c] for c in self.free)
