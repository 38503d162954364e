"""Exact integer linear algebra.

Matrices are lists of rows of Python ints. Nothing here ever touches a
float; entries grow as large as they need to.

Every basis choice is a deterministic function of the input matrix, so
class vectors derived from these routines are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Matrix = list[list[int]]


def _ncols(A: Sequence[Sequence[int]], ncols: Optional[int]) -> int:
    if ncols is not None:
        return ncols
    return len(A[0]) if len(A) else 0


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def copy(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(row) for row in A]


def transpose(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    n = _ncols(A, ncols)
    return [[A[i][j] for i in range(len(A))] for j in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Product of an m x k and a k x n matrix.

    ``ncols`` gives n when B has no rows.
    """
    n = _ncols(B, ncols)
    Bt = transpose(B, n)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    M = copy(A)
    n = len(M)
    sign, prev = 1, 1
    for k in range(n):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def adjugate(A: Sequence[Sequence[int]]) -> Matrix:
    """Classical adjoint, so that ``adjugate(A) @ A == det(A) * I``."""
    n = len(A)
    if n == 1:
        return [[1]]
    adj = zeros(n, n)
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(A) if k != i]
            adj[j][i] = (-1) ** (i + j) * determinant(minor)
    return adj


def rank(A: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals, by fraction-free elimination."""
    M = copy(A)
    if not M:
        return 0
    m, n = len(M), len(M[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        for i in range(r + 1, m):
            f = M[i][c]
            if f:
                M[i] = [p * x - f * y for x, y in zip(M[i], M[r])]
                g = 0
                for x in M[i]:
                    g = gcd(g, x)
                if g > 1:
                    M[i] = [x // g for x in M[i]]
        r += 1
        if r == m:
            break
    return r


@dataclass(frozen=True)
class SmithDecomposition:
    """``P @ A @ Q == D`` with P, Q unimodular and D diagonal.

    The nonzero diagonal entries are positive and each divides the next.
    """

    D: Matrix
    P: Matrix
    Q: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.Q)))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> SmithDecomposition:
    m = len(A)
    n = _ncols(A, ncols)
    D = copy(A)
    P = identity(m)
    Q = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        D[dst] = [x + f * y for x, y in zip(D[dst], D[src])]
        P[dst] = [x + f * y for x, y in zip(P[dst], P[src])]

    def add_col(dst, src, f):
        for row in D:
            row[dst] += f * row[src]
        for row in Q:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = D[i][j]
                    if v and (best is None or abs(v) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return SmithDecomposition(D, P, Q)
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            # divisibility: fold an offending row into row t and retry
            bad = next(
                (i for i in range(t + 1, m) if any(D[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            P[t] = [-x for x in P[t]]
    return SmithDecomposition(D, P, Q)


def hermite_normal_form(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Row-style Hermite normal form; zero rows are dropped.

    The rows returned span the same Z-lattice as the rows of A.
    """
    n = _ncols(A, ncols)
    M = copy(A)
    m = len(M)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if M[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(M[i][c]), i))
            M[r], M[piv] = M[piv], M[r]
            done = True
            for i in range(r + 1, m):
                if M[i][c]:
                    q = M[i][c] // M[r][c]
                    M[i] = [x - q * y for x, y in zip(M[i], M[r])]
                    done = done and M[i][c] == 0
            if done:
                break
        if r < m and M[r][c] != 0:
            if M[r][c] < 0:
                M[r] = [-x for x in M[r]]
            for i in range(r):
                q = M[i][c] // M[r][c]
                if q:
                    M[i] = [x - q * y for x, y in zip(M[i], M[r])]
            r += 1
    return M[:r]


def kernel_basis(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Basis of the integer kernel of A, as the columns of an n x k matrix.

    The lattice is saturated by construction; the basis is put in Hermite
    form so it does not depend on the path the elimination took.
    """
    n = _ncols(A, ncols)
    snf = smith_normal_form(A, n)
    r = snf.rank
    cols = [[snf.Q[i][j] for i in range(n)] for j in range(r, n)]
    cols = hermite_normal_form(cols, n)
    return [[c[i] for c in cols] for i in range(n)]


def cokernel_projection(A: Sequence[Sequence[int]], ncols: Optional[int] = None):
    """Free part of coker(A: Z^n -> Z^m).

    Returns ``(rank, torsion, proj)`` where ``proj`` is a rank x m matrix
    whose kernel is the saturation of the image of A, and ``torsion`` lists
    the invariant factors greater than one.
    """
    m = len(A)
    snf = smith_normal_form(A, ncols)
    diag = snf.diagonal
    r = snf.rank
    torsion = [d for d in diag if d > 1]
    proj = hermite_normal_form(snf.P[r:], m)
    return m - r, torsion, proj


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int], ncols: Optional[int] = None) -> Optional[list[int]]:
    """Some integer x with A x = b, or None when no integer solution exists."""
    n = _ncols(A, ncols)
    snf = smith_normal_form(A, n)
    c = matvec(snf.P, b)
    y = [0] * n
    for i, ci in enumerate(c):
        d = snf.D[i][i] if i < n else 0
        if d == 0:
            if ci != 0:
                return None
        elif ci % d:
            return None
        else:
            y[i] = ci // d
    return matvec(snf.Q, y)


def solve_rational(A: Sequence[Sequence[int]], b: Sequence) -> list[Fraction]:
    """Unique solution of a square nonsingular system over Q."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for c in range(n):
        piv = next(i for i in range(c, n) if M[i][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        p = M[c][c]
        M[c] = [x / p for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [M[i][n] for i in range(n)]


def primitive(v: Sequence[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return [x // g for x in v] if g > 1 else list(v)
