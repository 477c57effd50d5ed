"""Exact lattice linear algebra over the integers and rationals.

Exponent vectors are plain tuples of ints.  Matrices are tuples of row tuples.
Every kernel computation goes through unimodular column reduction, so the
returned lattices are the full integer points of the rational kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, PreconditionError

Vector = tuple[int, ...]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip().replace("−", "-"))
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or string")
    return Fraction(x)


def fmt_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def primitive(v: Sequence[int]) -> Vector:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise PreconditionError("the zero vector has no primitive representative")
    return tuple(x // g for x in v)


def mu_D(D: Sequence[int], alpha: Sequence[int]) -> int:
    """Degree of ``y^alpha`` in the grading ``deg y_k = D[k]``."""
    if len(D) != len(alpha):
        raise DimensionMismatch(f"grading has length {len(D)}, vector has {len(alpha)}")
    return sum(a * d for a, d in zip(alpha, D))


def check_grading(D: Sequence[int]) -> tuple[int, ...]:
    D = tuple(int(d) for d in D)
    if not D:
        raise PreconditionError("grading vector must be nonempty")
    if any(d < 1 for d in D):
        raise PreconditionError(f"grading entries must be positive, got {D}")
    return D


# -- integer reduction --------------------------------------------------------


def integer_kernel(rows: Sequence[Sequence[int]], m: int) -> list[Vector]:
    """Z-basis of ``{x in Z^m : A x = 0}`` in Hermite normal form.

    Column-reduces ``A`` while tracking the unimodular transform; the transform
    columns sitting over zero columns of the reduced matrix span the kernel.
    """
    for r in rows:
        if len(r) != m:
            raise DimensionMismatch(f"row of length {len(r)} in a matrix with {m} columns")
    # columns: (column of A, column of U)
    cols = [([int(r[j]) for r in rows], [int(i == j) for i in range(m)]) for j in range(m)]
    piv = 0
    for i in range(len(rows)):
        if piv == m:
            break
        while True:
            live = [j for j in range(piv, m) if cols[j][0][i] != 0]
            if not live:
                break
            j0 = min(live, key=lambda j: abs(cols[j][0][i]))
            cols[piv], cols[j0] = cols[j0], cols[piv]
            pa, pu = cols[piv]
            clean = True
            for j in range(piv + 1, m):
                a, u = cols[j]
                if a[i]:
                    q = a[i] // pa[i]
                    for t in range(len(a)):
                        a[t] -= q * pa[t]
                    for t in range(m):
                        u[t] -= q * pu[t]
                    if a[i]:
                        clean = False
            if clean:
                piv += 1
                break
    return hnf([tuple(c[1]) for c in cols[piv:]], m)


def hnf(vectors: Iterable[Sequence[int]], m: int) -> list[Vector]:
    """Row Hermite normal form of the lattice spanned by ``vectors``.

    Pivots are positive and entries above each pivot lie in ``[0, pivot)``;
    zero rows are dropped, so the result is a canonical basis.
    """
    B = [list(v) for v in vectors]
    for v in B:
        if len(v) != m:
            raise DimensionMismatch(f"vector of length {len(v)} in Z^{m}")
    row = 0
    for col in range(m):
        while True:
            live = [r for r in range(row, len(B)) if B[r][col] != 0]
            if not live:
                break
            r0 = min(live, key=lambda r: abs(B[r][col]))
            B[row], B[r0] = B[r0], B[row]
            p = B[row]
            done = True
            for r in range(row + 1, len(B)):
                if B[r][col]:
                    q = B[r][col] // p[col]
                    B[r] = [x - q * y for x, y in zip(B[r], p)]
                    if B[r][col]:
                        done = False
            if done:
                break
        if row < len(B) and B[row][col] != 0:
            if B[row][col] < 0:
                B[row] = [-x for x in B[row]]
            p = B[row]
            for r in range(row):
                q = B[r][col] // p[col]
                if q:
                    B[r] = [x - q * y for x, y in zip(B[r], p)]
            row += 1
    return [tuple(v) for v in B[:row]]


def saturate(vectors: Iterable[Sequence[int]], m: int) -> list[Vector]:
    """Canonical basis of ``(Q-span of vectors) ∩ Z^m``."""
    return integer_kernel(integer_kernel(list(vectors), m), m)


def clear_denominators(M: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    den = 1
    for row in M:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    return [[int(Fraction(x) * den) for x in row] for row in M]


def rational_rank(M: Sequence[Sequence]) -> int:
    if not M:
        return 0
    return len(M[0]) - len(integer_kernel(clear_denominators(M), len(M[0])))


@dataclass(frozen=True)
class Sublattice:
    """A saturated sublattice of Z^dim stored by its Hermite basis."""

    dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def spanned_by(cls, vectors: Iterable[Sequence[int]], dim: int) -> "Sublattice":
        return cls(dim, tuple(saturate(vectors, dim)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        v = tuple(int(x) for x in v)
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in Z^{self.dim}")
        return tuple(hnf(list(self.basis) + [v], self.dim)) == self.basis


# -- bicharacters -------------------------------------------------------------


@dataclass(frozen=True)
class Bicharacter:
    """Skewsymmetric form ``Omega(a, b) = a^T L b`` with rational ``L``."""

    L: tuple[tuple[Fraction, ...], ...]

    def __init__(self, L):
        rows = tuple(tuple(as_fraction(x) for x in row) for row in L)
        m = len(rows)
        if m < 1:
            raise PreconditionError("bicharacter needs dimension at least 1")
        for row in rows:
            if len(row) != m:
                raise DimensionMismatch("bicharacter matrix must be square")
        for i in range(m):
            for j in range(m):
                if rows[i][j] != -rows[j][i]:
                    raise PreconditionError(f"L is not skewsymmetric at ({i + 1},{j + 1})")
        object.__setattr__(self, "L", rows)

    @property
    def dim(self) -> int:
        return len(self.L)

    def __call__(self, alpha: Sequence[int], beta: Sequence[int]) -> Fraction:
        return bichar_eval(self, alpha, beta)

    def scaled(self, c) -> "Bicharacter":
        c = as_fraction(c)
        return Bicharacter([[c * x for x in row] for row in self.L])


def bichar_eval(omega: Bicharacter, alpha: Sequence[int], beta: Sequence[int]) -> Fraction:
    m = omega.dim
    if len(alpha) != m or len(beta) != m:
        raise DimensionMismatch(f"expected vectors of length {m}")
    total = Fraction(0)
    for i, a in enumerate(alpha):
        if a:
            row = omega.L[i]
            total += a * sum((row[j] * b for j, b in enumerate(beta) if b), Fraction(0))
    return total


def radical(omega: Bicharacter) -> Sublattice:
    """Integer radical ``{a : Omega(a, b) = 0 for all b}``."""
    m = omega.dim
    A = clear_denominators(omega.L)
    transpose = [[A[i][j] for i in range(m)] for j in range(m)]
    return Sublattice(m, tuple(integer_kernel(transpose, m)))


def center_generators(omega: Bicharacter) -> list[Vector]:
    """Free generators of the radical; ``y^{±v}`` generate the Poisson center."""
    return list(radical(omega).basis)
