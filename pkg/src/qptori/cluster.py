"""Exchange matrices, compatible pairs and their mutations.

Mutable indices ``k`` are 1-based, as in the cluster literature.  Matrices are
returned as tuples of row tuples of ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from ._simplex import feasible_point
from .errors import DimensionMismatch, PreconditionError
from .lattice import Bicharacter, Sublattice, integer_kernel, rational_rank

Matrix = tuple[tuple[int, ...], ...]


def _as_matrix(M) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in M)


def _transpose(M: Matrix, cols: int) -> Matrix:
    return tuple(tuple(M[i][j] for i in range(len(M))) for j in range(cols))


def _matmul(A: Matrix, B: Matrix) -> Matrix:
    return tuple(
        tuple(sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(len(B[0]) if B else 0))
        for i in range(len(A))
    )


def symmetrizer(B: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    """Coprime positive ``d`` with ``diag(d) B`` skewsymmetric, or None.

    Each connected component of the support graph is normalized separately.
    """
    n = len(B)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp, stack = [start], [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if B[i][j] == 0 and B[j][i] == 0:
                    continue
                if B[i][j] == 0 or B[j][i] == 0 or (B[i][j] > 0) == (B[j][i] > 0):
                    return None
                dj = -d[i] * B[i][j] / B[j][i]
                if d[j] is None:
                    d[j] = dj
                    comp.append(j)
                    stack.append(j)
                elif d[j] != dj:
                    return None
        den = lcm(*(d[i].denominator for i in comp))
        ints = [int(d[i] * den) for i in comp]
        g = gcd(*ints)
        for i, v in zip(comp, ints):
            d[i] = Fraction(v // g)
    for i in range(n):
        if B[i][i] != 0:
            return None
    return tuple(int(x) for x in d)


@dataclass(frozen=True)
class ExchangeMatrix:
    """An ``m x n`` integer matrix whose top ``n x n`` block is skew-symmetrizable."""

    matrix: Matrix
    n: int

    def __init__(self, matrix, n: int | None = None):
        M = _as_matrix(matrix)
        if not M or not M[0]:
            raise PreconditionError("exchange matrix must be nonempty")
        cols = len(M[0])
        if any(len(r) != cols for r in M):
            raise DimensionMismatch("exchange matrix rows have different lengths")
        if n is not None and n != cols:
            raise DimensionMismatch(f"matrix has {cols} columns, expected {n}")
        if cols > len(M):
            raise DimensionMismatch("exchange matrix needs at least as many rows as columns")
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "n", cols)
        if symmetrizer(self.principal) is None:
            raise PreconditionError("principal part is not skew-symmetrizable")

    @property
    def m(self) -> int:
        return len(self.matrix)

    @property
    def principal(self) -> Matrix:
        return self.matrix[: self.n]

    @property
    def symmetrizer(self) -> tuple[int, ...]:
        return symmetrizer(self.principal)


@dataclass(frozen=True)
class CompatiblePair:
    Lambda: Matrix
    B: ExchangeMatrix
    d: tuple[int, ...]


def _exchange(B) -> ExchangeMatrix:
    return B if isinstance(B, ExchangeMatrix) else ExchangeMatrix(B)


def _lambda(L, m: int) -> Matrix:
    L = _as_matrix(L)
    if len(L) != m or any(len(r) != m for r in L):
        raise DimensionMismatch(f"Lambda must be {m} x {m}")
    for i in range(m):
        for j in range(m):
            if L[i][j] != -L[j][i]:
                raise PreconditionError(f"Lambda is not skewsymmetric at ({i + 1},{j + 1})")
    return L


def _check_k(B: ExchangeMatrix, k: int) -> int:
    if not 1 <= k <= B.n:
        raise PreconditionError(f"mutation index {k} outside the mutable range [1, {B.n}]")
    return k - 1


def is_compatible(Lambda, B) -> tuple[int, ...] | None:
    """The vector ``d`` if ``Lambda^T B`` is ``[diag(d); 0]`` with ``d > 0``."""
    B = _exchange(B)
    L = _lambda(Lambda, B.m)
    P = _matmul(_transpose(L, B.m), B.matrix)
    d = []
    for i in range(B.m):
        for j in range(B.n):
            if i == j:
                if P[i][j] <= 0:
                    return None
                d.append(P[i][j])
            elif P[i][j] != 0:
                return None
    return tuple(d)


def e_matrix(B, k: int) -> Matrix:
    B = _exchange(B)
    k0 = _check_k(B, k)
    m = B.m
    return tuple(
        tuple(
            (-1 if i == k0 else max(0, B.matrix[i][k0])) if j == k0 else int(i == j)
            for j in range(m)
        )
        for i in range(m)
    )


def mutate_lambda(Lambda, B, k: int) -> Matrix:
    """``E_k^T Lambda E_k``."""
    B = _exchange(B)
    L = _lambda(Lambda, B.m)
    E = e_matrix(B, k)
    return _matmul(_matmul(_transpose(E, B.m), L), E)


def mutate_b(B, k: int) -> ExchangeMatrix:
    """Fomin-Zelevinsky matrix mutation at ``k``."""
    B = _exchange(B)
    k0 = _check_k(B, k)
    M = B.matrix
    out = []
    for i in range(B.m):
        row = []
        for j in range(B.n):
            if i == k0 or j == k0:
                row.append(-M[i][j])
            else:
                bik, bkj = M[i][k0], M[k0][j]
                sign = (bik > 0) - (bik < 0)
                row.append(M[i][j] + sign * max(0, bik * bkj))
        out.append(tuple(row))
    return ExchangeMatrix(out)


def _lambda_unknowns(m: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(m) for j in range(i + 1, m)]


def _compat_system(B: ExchangeMatrix):
    """Rows of ``Lambda^T B - [diag(d); 0] = 0`` in the unknowns (lambda_ij for i<j, d)."""
    m, n = B.m, B.n
    pairs = _lambda_unknowns(m)
    index = {p: t for t, p in enumerate(pairs)}
    rows = []
    for i in range(m):
        for j in range(n):
            row = [0] * (len(pairs) + n)
            # (Lambda^T B)_{ij} = sum_t Lambda_{ti} B_{tj}
            for t in range(m):
                if t == i or B.matrix[t][j] == 0:
                    continue
                if t < i:
                    row[index[(t, i)]] += B.matrix[t][j]
                else:
                    row[index[(i, t)]] -= B.matrix[t][j]
            if i == j:
                row[len(pairs) + j] = -1
            rows.append(row)
    return pairs, rows


def _solve_particular(rows, rhs):
    """Some rational solution of ``rows x = rhs`` (free variables zero), or None."""
    nvar = len(rows[0]) if rows else 0
    A = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(nvar):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        A[r] = [x / A[r][c] for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] != 0 for row in A[r:]):
        return None
    x = [Fraction(0)] * nvar
    for i, c in enumerate(pivots):
        x[c] = A[i][-1]
    return x


def _to_lambda(m, pairs, values) -> Matrix:
    L = [[0] * m for _ in range(m)]
    for (i, j), v in zip(pairs, values):
        L[i][j] = v
        L[j][i] = -v
    return _as_matrix(L)


def _integral(values: list[Fraction]) -> list[int]:
    den = lcm(1, *(v.denominator for v in values))
    ints = [int(v * den) for v in values]
    g = gcd(*ints) or 1
    return [x // g for x in ints]


def find_compatible_lambda(B) -> Matrix | None:
    """Some integer ``Lambda`` compatible with ``B``, or None if none exists.

    First tries ``d`` equal to the coprime symmetrizer of the principal part
    (pivot solution, free unknowns zero, scaled to primitive integers).  If
    that system is inconsistent, falls back to an exact feasibility search
    over all ``d >= 1``.
    """
    B = _exchange(B)
    m, n = B.m, B.n
    if rational_rank(B.matrix) < n:
        return None
    pairs, rows = _compat_system(B)
    lam_rows = [r[: len(pairs)] for r in rows]
    sym = B.symmetrizer
    rhs = [sym[i] if i == j else 0 for i in range(m) for j in range(n)]
    sol = _solve_particular(lam_rows, rhs)
    if sol is not None:
        values = _integral(sol + [Fraction(x) for x in sym])
        L = _to_lambda(m, pairs, values[: len(pairs)])
        assert is_compatible(L, B) is not None
        return L
    # lambda = p - q with p, q >= 0; d = 1 + s with s >= 0
    k = len(pairs)
    A, b = [], []
    for r in rows:
        lam, dcoef = r[:k], r[k:]
        A.append(lam + [-x for x in lam] + dcoef)
        b.append(-sum(dcoef))
    x = feasible_point(A, b)
    if x is None:
        return None
    lam = [x[t] - x[k + t] for t in range(k)]
    d = [1 + x[2 * k + i] for i in range(n)]
    values = _integral(lam + d)
    L = _to_lambda(m, pairs, values[:k])
    assert is_compatible(L, B) is not None
    return L


def compatible_pair(B) -> CompatiblePair | None:
    B = _exchange(B)
    L = find_compatible_lambda(B)
    if L is None:
        return None
    return CompatiblePair(L, B, is_compatible(L, B))


def toric_lattice(B) -> Sublattice:
    """Saturated integer kernel of ``B^T``."""
    B = _exchange(B)
    return Sublattice(B.m, tuple(integer_kernel(_transpose(B.matrix, B.n), B.m)))


def gsv_bicharacter(Lambda) -> Bicharacter:
    """The log-canonical form ``{y_j, y_k} = lambda_jk y_j y_k``."""
    return Bicharacter(_as_matrix(Lambda))
