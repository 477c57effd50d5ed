"""Cartan data, Weyl group words, convex root orders.

Conventions (Bourbaki numbering):

* ``C[i][j] = <alpha_j, alpha_i^vee>``; for B_r the short root is last, for
  C_r the long root is last, G2 has ``alpha_1`` short.
* ``d[i] = <alpha_i, alpha_i> / 2`` with value 1 on short roots, so
  ``<alpha_i, alpha_j> = d[i] C[i][j]``.
* Weights are integer tuples in the fundamental-weight basis; roots are
  tuples in the simple-root basis.  ``alpha_i`` has weight coordinates
  ``column i of C``.
* Indices in words and public arguments are 1-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import PreconditionError

Weight = tuple[int, ...]
Root = tuple[int, ...]


def _cartan_block(kind: str, r: int) -> tuple[list[list[int]], list[int]]:
    C = [[2 if i == j else 0 for j in range(r)] for i in range(r)]

    def bond(i, j, cij=-1, cji=-1):
        C[i][j], C[j][i] = cij, cji

    d = [1] * r
    if kind == "A":
        if r < 1:
            raise PreconditionError("A_r needs r >= 1")
        for i in range(r - 1):
            bond(i, i + 1)
    elif kind == "B":
        if r < 2:
            raise PreconditionError("B_r needs r >= 2")
        for i in range(r - 2):
            bond(i, i + 1)
        bond(r - 2, r - 1, -1, -2)
        d = [2] * (r - 1) + [1]
    elif kind == "C":
        if r < 2:
            raise PreconditionError("C_r needs r >= 2")
        for i in range(r - 2):
            bond(i, i + 1)
        bond(r - 2, r - 1, -2, -1)
        d = [1] * (r - 1) + [2]
    elif kind == "D":
        if r < 3:
            raise PreconditionError("D_r needs r >= 3")
        for i in range(r - 2):
            bond(i, i + 1)
        bond(r - 3, r - 1)
    elif kind == "E":
        if r not in (6, 7, 8):
            raise PreconditionError("E_r needs r in {6, 7, 8}")
        bond(0, 2)
        bond(1, 3)
        for i in range(2, r - 1):
            bond(i, i + 1)
    elif kind == "F":
        if r != 4:
            raise PreconditionError("F_r needs r = 4")
        bond(0, 1)
        bond(1, 2, -1, -2)
        bond(2, 3)
        d = [2, 2, 1, 1]
    elif kind == "G":
        if r != 2:
            raise PreconditionError("G_r needs r = 2")
        bond(0, 1, -3, -1)
        d = [1, 3]
    else:
        raise PreconditionError(f"unknown Cartan type {kind!r}")
    return C, d


_COMPONENT = re.compile(r"([ABCDEFG])(\d+)")


@dataclass(frozen=True)
class CartanData:
    components: tuple[tuple[str, int], ...]
    C: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]

    @classmethod
    def from_type(cls, name: str) -> "CartanData":
        """Parse names like ``"A2"``, ``"B3"`` or ``"A1xA1"`` (block sum)."""
        comps = []
        for part in name.replace("×", "x").split("x"):
            m = _COMPONENT.fullmatch(part.strip().upper())
            if not m:
                raise PreconditionError(f"cannot parse Cartan type {name!r}")
            comps.append((m.group(1), int(m.group(2))))
        r = sum(k for _, k in comps)
        C = [[0] * r for _ in range(r)]
        d: list[int] = []
        off = 0
        for kind, k in comps:
            block, dk = _cartan_block(kind, k)
            for i in range(k):
                for j in range(k):
                    C[off + i][off + j] = block[i][j]
            d += dk
            off += k
        return cls(tuple(comps), tuple(map(tuple, C)), tuple(d))

    @property
    def name(self) -> str:
        return "x".join(f"{k}{r}" for k, r in self.components)

    @property
    def rank(self) -> int:
        return len(self.C)

    @cached_property
    def C_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        r = self.rank
        A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(r)] for i, row in enumerate(self.C)]
        for c in range(r):
            p = next(i for i in range(c, r) if A[i][c] != 0)
            A[c], A[p] = A[p], A[c]
            A[c] = [x / A[c][c] for x in A[c]]
            for i in range(r):
                if i != c and A[i][c]:
                    f = A[i][c]
                    A[i] = [x - f * y for x, y in zip(A[i], A[c])]
        return tuple(tuple(row[r:]) for row in A)

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        """Positive roots from the Weyl orbit of the simple roots (word-free)."""
        r = self.rank
        simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for x in frontier:
                for i in range(r):
                    y = reflect_root(self, i + 1, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(x for x in seen if sum(x) > 0))

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)


def _check_index(cartan: CartanData, i: int) -> int:
    if not 1 <= i <= cartan.rank:
        raise PreconditionError(f"simple index {i} outside [1, {cartan.rank}]")
    return i - 1


def simple_root_weight(cartan: CartanData, i: int) -> Weight:
    i0 = _check_index(cartan, i)
    return tuple(cartan.C[j][i0] for j in range(cartan.rank))


def simple_reflect(cartan: CartanData, i: int, lam: Sequence[int]) -> Weight:
    """``s_i lam = lam - lam_i alpha_i`` in fundamental-weight coordinates."""
    i0 = _check_index(cartan, i)
    c = lam[i0]
    return tuple(x - c * cartan.C[j][i0] for j, x in enumerate(lam))


def reflect_root(cartan: CartanData, i: int, x: Sequence[int]) -> Root:
    """``s_i`` on a root-lattice vector in simple-root coordinates."""
    i0 = _check_index(cartan, i)
    pairing = sum(cartan.C[i0][j] * x[j] for j in range(cartan.rank))
    return tuple(v - pairing * (j == i0) for j, v in enumerate(x))


def act_weight(cartan: CartanData, word: Sequence[int], lam: Sequence[int]) -> Weight:
    """``s_{w_1} ... s_{w_l} lam`` (rightmost letter acts first)."""
    lam = tuple(lam)
    for i in reversed(word):
        lam = simple_reflect(cartan, i, lam)
    return lam


def act_root(cartan: CartanData, word: Sequence[int], x: Sequence[int]) -> Root:
    x = tuple(x)
    for i in reversed(word):
        x = reflect_root(cartan, i, x)
    return x


def weight_to_roots(cartan: CartanData, lam: Sequence[int]) -> tuple[Fraction, ...]:
    Ci = cartan.C_inverse
    return tuple(sum(Ci[i][j] * lam[j] for j in range(cartan.rank)) for i in range(cartan.rank))


def roots_to_weight(cartan: CartanData, x: Sequence) -> tuple:
    return tuple(sum(cartan.C[i][j] * x[j] for j in range(cartan.rank)) for i in range(cartan.rank))


def bilinear_form(cartan: CartanData, x: Sequence, y: Sequence, *, basis: str = "roots") -> Fraction:
    """Invariant form normalized by ``<alpha, alpha> = 2`` on short roots.

    ``basis`` is ``"roots"`` (simple-root coordinates) or ``"weights"``
    (fundamental-weight coordinates) and applies to both arguments.
    """
    if basis == "weights":
        x, y = weight_to_roots(cartan, x), weight_to_roots(cartan, y)
    elif basis != "roots":
        raise ValueError(f"unknown basis {basis!r}")
    r = cartan.rank
    return sum(
        (Fraction(x[i]) * cartan.d[i] * cartan.C[i][j] * y[j] for i in range(r) for j in range(r) if x[i] and y[j]),
        Fraction(0),
    )


def height(cartan: CartanData, root: Sequence) -> int:
    h = sum(root)
    if Fraction(h).denominator != 1:
        raise PreconditionError(f"{root} is not in the root lattice")
    return int(h)


# -- words --------------------------------------------------------------------


def is_reduced_w0_word(cartan: CartanData, word: Sequence[int]) -> bool:
    """Does ``word`` spell ``w_0`` without cancellation?

    Walks ``rho -> s_{i_1} rho -> ...``; every step must pair positively with
    the reflected coroot and the walk must end at ``-rho``.
    """
    if len(word) != cartan.num_positive_roots:
        return False
    lam = (1,) * cartan.rank
    for i in word:
        if not 1 <= i <= cartan.rank:
            return False
        if lam[i - 1] <= 0:
            return False
        lam = simple_reflect(cartan, i, lam)
    return lam == (-1,) * cartan.rank


def validate_word(cartan: CartanData, word: Sequence[int]) -> tuple[int, ...]:
    word = tuple(int(i) for i in word)
    if not is_reduced_w0_word(cartan, word):
        raise PreconditionError(f"{list(word)} is not a reduced word for w0 in type {cartan.name}")
    return word


def w0_reduced_word(cartan: CartanData) -> tuple[int, ...]:
    """Reduced word for ``w_0`` by rho-descent, smallest index first."""
    lam = (1,) * cartan.rank
    word = []
    while True:
        i = next((j for j, x in enumerate(lam) if x > 0), None)
        if i is None:
            return tuple(word)
        word.append(i + 1)
        lam = simple_reflect(cartan, i + 1, lam)


def braid_order(cartan: CartanData, i: int, j: int) -> int:
    """Order of ``s_i s_j`` for ``i != j``."""
    p = cartan.C[i - 1][j - 1] * cartan.C[j - 1][i - 1]
    return {0: 2, 1: 3, 2: 4, 3: 6}[p]


def braid_moves(cartan: CartanData, word: Sequence[int]) -> list[tuple[int, ...]]:
    """All words one commutation or braid relation away from ``word``."""
    word = tuple(word)
    out = []
    for pos in range(len(word)):
        for length in (2, 3, 4, 6):
            window = word[pos: pos + length]
            if len(window) < length:
                continue
            i, j = window[0], window[1]
            if i == j or braid_order(cartan, i, j) != length:
                continue
            if all(window[t] == (i if t % 2 == 0 else j) for t in range(length)):
                swapped = tuple(j if t % 2 == 0 else i for t in range(length))
                out.append(word[:pos] + swapped + word[pos + length:])
    return out


def random_reduced_word(cartan: CartanData, rng, steps: int = 40, start: Sequence[int] | None = None) -> tuple[int, ...]:
    """Lazy random walk on reduced words for ``w_0`` via commutation and braid moves.

    Each step stays put with probability 1/2, which removes the parity
    artifact of a plain walk (types with two reduced words would otherwise
    always return to the start after an even number of steps).
    """
    word = tuple(start) if start is not None else w0_reduced_word(cartan)
    for _ in range(steps):
        if rng.random() < 0.5:
            continue
        moves = braid_moves(cartan, word)
        if not moves:
            break
        word = rng.choice(moves)
    return validate_word(cartan, word)


@dataclass(frozen=True)
class ConvexOrder:
    word: tuple[int, ...]
    roots: tuple[Root, ...]


def positive_roots_convex(cartan: CartanData, word: Sequence[int]) -> ConvexOrder:
    """``beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k})``."""
    word = validate_word(cartan, word)
    r = cartan.rank
    roots = []
    for k, i in enumerate(word):
        alpha = tuple(int(j == i - 1) for j in range(r))
        roots.append(act_root(cartan, word[:k], alpha))
    return ConvexOrder(word, tuple(roots))


def w0_weight(cartan: CartanData, lam: Sequence[int], word: Sequence[int] | None = None) -> Weight:
    return act_weight(cartan, word or w0_reduced_word(cartan), lam)


def tau_involution(cartan: CartanData) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """``(tau, O1, O2)`` with ``alpha_tau(i) = -w0(alpha_i)``; ``tau`` as a 1-based tuple."""
    r = cartan.rank
    word = w0_reduced_word(cartan)
    tau = []
    for i in range(r):
        alpha = tuple(int(j == i) for j in range(r))
        image = tuple(-x for x in act_root(cartan, word, alpha))
        if sorted(image) != [0] * (r - 1) + [1]:
            raise AssertionError(f"-w0(alpha_{i + 1}) = {image} is not simple")
        tau.append(image.index(1) + 1)
    fixed = tuple(i for i in range(1, r + 1) if tau[i - 1] == i)
    reps = tuple(i for i in range(1, r + 1) if tau[i - 1] > i)
    return tuple(tau), fixed, reps


def m_coefficients(cartan: CartanData) -> tuple[tuple[int, ...], ...]:
    """Rows ``m_i`` with ``varpi_i - w0 varpi_i = sum_l m_il alpha_l``."""
    r = cartan.rank
    word = w0_reduced_word(cartan)
    rows = []
    for i in range(r):
        varpi = tuple(int(j == i) for j in range(r))
        diff = tuple(a - b for a, b in zip(varpi, act_weight(cartan, word, varpi)))
        coords = weight_to_roots(cartan, diff)
        if any(c.denominator != 1 for c in coords):
            raise AssertionError("varpi - w0 varpi left the root lattice")
        rows.append(tuple(int(c) for c in coords))
    return tuple(rows)


def coweight_grading(cartan: CartanData, coweight: Sequence[int], order: ConvexOrder) -> tuple[int, ...]:
    """Degrees ``<lambda, beta_k>`` for a dominant coweight in fundamental-coweight coordinates."""
    if len(coweight) != cartan.rank:
        raise PreconditionError(f"coweight needs {cartan.rank} coordinates")
    if any(c < 0 for c in coweight):
        raise PreconditionError("coweight is not dominant")
    degs = tuple(sum(c * b for c, b in zip(coweight, beta)) for beta in order.roots)
    if any(x <= 0 for x in degs):
        raise PreconditionError(f"coweight {tuple(coweight)} gives a nonpositive degree: {degs}")
    return degs
