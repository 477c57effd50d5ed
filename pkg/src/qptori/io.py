"""JSON document encoding: exact rationals travel as strings like ``"-3/2"``."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .automorphism import (
    DEFAULT_TRUNCATION,
    TorusAutomorphism,
    aut_from_multipliers,
    exp_product,
)
from .laurent import LaurentPoly
from .lattice import Bicharacter, as_fraction, fmt_fraction


def rat(x) -> str:
    return fmt_fraction(Fraction(x))


def vector(v) -> list[int]:
    return [int(x) for x in v]


def rat_matrix(M) -> list[list[str]]:
    return [[rat(x) for x in row] for row in M]


def int_matrix(M) -> list[list[int]]:
    return [[int(x) for x in row] for row in M]


def parse_rat_matrix(M) -> list[list[Fraction]]:
    return [[as_fraction(x) for x in row] for row in M]


def poly(p: LaurentPoly) -> str:
    return str(p)


def automorphism(phi: TorusAutomorphism) -> dict[str, Any]:
    return {
        "D": list(phi.D),
        "L": rat_matrix(phi.omega.L),
        "N": phi.N,
        "multipliers": [str(u) for u in phi.multipliers],
    }


def read_automorphism(doc: dict, N: int | None = None) -> TorusAutomorphism:
    """Build an automorphism from ``multipliers`` or ``exponentials`` fields.

    ``multipliers`` are the texts of ``u_k = phi(y_k) y_k^{-1}``;
    ``exponentials`` is a list of ``{"a", "alpha"}`` composed left to right.
    """
    omega = Bicharacter(parse_rat_matrix(doc["L"]))
    D = vector(doc["D"])
    N = N if N is not None else int(doc.get("N", DEFAULT_TRUNCATION))
    m = len(D)
    if "multipliers" in doc:
        parts = [LaurentPoly.parse(t, m) - 1 for t in doc["multipliers"]]
        return aut_from_multipliers(D, omega, parts, N)
    factors = [(as_fraction(e["a"]), vector(e["alpha"])) for e in doc.get("exponentials", [])]
    return exp_product(factors, omega, D, N)


def dumps(doc: Any) -> str:
    """Canonical text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
