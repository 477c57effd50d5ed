"""The Poisson torus of the minor cluster on the open Schubert cell.

Minors are tracked only through their positions ``1..N`` in a reduced word
for ``w0``; the torus exponent of the ``k``-th minor is the basis vector
``delta_k``.  The minor attached to position ``k`` uses the fundamental
weight ``varpi_{i_k}`` of the letter at that position.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .lattice import Bicharacter, Sublattice, Vector, radical
from .rootsys import (
    CartanData,
    ConvexOrder,
    act_weight,
    bilinear_form,
    height,
    positive_roots_convex,
    tau_involution,
    validate_word,
    w0_reduced_word,
    weight_to_roots,
)


def _varpi(r: int, i: int) -> tuple[int, ...]:
    return tuple(int(j == i - 1) for j in range(r))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _resolve(cartan: CartanData, word: Sequence[int] | None) -> tuple[int, ...]:
    return validate_word(cartan, word if word is not None else w0_reduced_word(cartan))


def minor_index(cartan: CartanData, word: Sequence[int]) -> dict[int, int]:
    """``i -> k(i)``: first position (1-based) of the letter ``i``."""
    out: dict[int, int] = {}
    for pos, i in enumerate(word, start=1):
        out.setdefault(i, pos)
    return out


def _prefix_images(cartan: CartanData, word: tuple[int, ...]):
    """``((w0)_{<k} varpi_{i_k}, w0 varpi_{i_k})`` for each position ``k``."""
    r = cartan.rank
    out = []
    for k, i in enumerate(word):
        varpi = _varpi(r, i)
        out.append((act_weight(cartan, word[:k], varpi), act_weight(cartan, word, varpi)))
    return out


def minor_bracket_matrix(cartan: CartanData, word: Sequence[int] | None = None) -> Bicharacter:
    """Log-canonical bracket of the minors:

    ``Omega_jk = -<((w0)_{<j} + w0) varpi_{i_j}, ((w0)_{<k} - w0) varpi_{i_k}>`` for ``j < k``.
    """
    word = _resolve(cartan, word)
    imgs = _prefix_images(cartan, word)
    N = len(word)
    L = [[Fraction(0)] * N for _ in range(N)]
    for j in range(N):
        left = _add(*imgs[j])
        for k in range(j + 1, N):
            right = _sub(*imgs[k])
            v = -bilinear_form(cartan, left, right, basis="weights")
            if v.denominator != 1:
                raise AssertionError(f"non-integral bracket entry {v} at ({j + 1},{k + 1})")
            L[j][k], L[k][j] = v, -v
    return Bicharacter(L)


def predicted_center(cartan: CartanData, word: Sequence[int] | None = None) -> list[Vector]:
    """``delta_k(i)`` for fixed points of tau, ``delta_k(l) + delta_k(tau l)`` per 2-orbit."""
    word = _resolve(cartan, word)
    N = len(word)
    kk = minor_index(cartan, word)
    tau, fixed, reps = tau_involution(cartan)

    def delta(pos):
        return tuple(int(t == pos - 1) for t in range(N))

    gens = [delta(kk[i]) for i in fixed]
    gens += [_add(delta(kk[l]), delta(kk[tau[l - 1]])) for l in reps]
    return gens


def verify_center(cartan: CartanData, word: Sequence[int] | None = None) -> bool:
    word = _resolve(cartan, word)
    predicted = Sublattice.spanned_by(predicted_center(cartan, word), len(word))
    return predicted == radical(minor_bracket_matrix(cartan, word))


def ls_leading_matrix(cartan: CartanData, word: Sequence[int] | None = None) -> Bicharacter:
    """Quadratic skeleton ``<beta_j, beta_k>`` (``j < k``) of the bracket on root coordinates."""
    order = positive_roots_convex(cartan, _resolve(cartan, word))
    N = len(order.roots)
    L = [[Fraction(0)] * N for _ in range(N)]
    for j in range(N):
        for k in range(j + 1, N):
            v = bilinear_form(cartan, order.roots[j], order.roots[k])
            L[j][k], L[k][j] = v, -v
    return Bicharacter(L)


def minor_degrees(cartan: CartanData, word: Sequence[int] | None = None) -> tuple[int, ...]:
    """``ht((w0)_{<k} varpi_{i_k} - w0 varpi_{i_k})`` for each position."""
    word = _resolve(cartan, word)
    degs = []
    for prefix_img, w0_img in _prefix_images(cartan, word):
        degs.append(height(cartan, weight_to_roots(cartan, _sub(prefix_img, w0_img))))
    if any(d < 1 for d in degs):
        raise AssertionError(f"nonpositive minor degree in {degs}")
    return tuple(degs)


@dataclass(frozen=True)
class SchubertTorus:
    cartan: CartanData
    order: ConvexOrder
    omega: Bicharacter
    minor_index: dict
    degrees: tuple[int, ...]

    @classmethod
    def build(cls, cartan: CartanData, word: Sequence[int] | None = None) -> "SchubertTorus":
        word = _resolve(cartan, word)
        return cls(
            cartan,
            positive_roots_convex(cartan, word),
            minor_bracket_matrix(cartan, word),
            minor_index(cartan, word),
            minor_degrees(cartan, word),
        )
