"""Laurent polynomials with rational coefficients and the quadratic bracket."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, PreconditionError
from .lattice import Bicharacter, Vector, as_fraction, bichar_eval, fmt_fraction, mu_D


class LaurentPoly:
    """Finite sum ``sum c_a y^a`` over exponent vectors ``a`` in Z^dim.

    Treat instances as immutable: every operation returns a new polynomial.
    """

    __slots__ = ("dim", "_terms")

    def __init__(self, dim: int, terms: Mapping[Sequence[int], object] | None = None):
        if dim < 1:
            raise PreconditionError("dimension must be at least 1")
        self.dim = dim
        clean: dict[Vector, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != dim:
                raise DimensionMismatch(f"exponent {e} does not have length {dim}")
            c = as_fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self._terms = clean

    @classmethod
    def _raw(cls, dim: int, terms: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.dim = dim
        p._terms = {e: c for e, c in terms.items() if c}
        return p

    @classmethod
    def zero(cls, dim: int) -> "LaurentPoly":
        return cls._raw(dim, {})

    @classmethod
    def one(cls, dim: int) -> "LaurentPoly":
        return cls._raw(dim, {(0,) * dim: Fraction(1)})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1) -> "LaurentPoly":
        return cls(len(exponent), {tuple(exponent): coeff})

    @classmethod
    def var(cls, dim: int, k: int) -> "LaurentPoly":
        """The generator ``y_k`` (1-based)."""
        return cls._raw(dim, {tuple(int(i == k - 1) for i in range(dim)): Fraction(1)})

    # -- container protocol -------------------------------------------------

    def items(self) -> list[tuple[Vector, Fraction]]:
        return sorted(self._terms.items())

    def coeff(self, alpha: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(alpha), Fraction(0))

    def support(self) -> set[Vector]:
        return set(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.dim == other.dim and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.one(self.dim) * other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self._terms.items())))

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        return LaurentPoly._raw(self.dim, {(0,) * self.dim: as_fraction(other)})

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.dim, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            c = as_fraction(other)
            return LaurentPoly._raw(self.dim, {e: c * v for e, v in self._terms.items()})
        self._check(other)
        out: dict[Vector, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw(self.dim, out)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "LaurentPoly":
        return self * (1 / as_fraction(c))

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._terms) != 1:
                raise PreconditionError("only monomials can be raised to negative powers")
            (e, c), = self._terms.items()
            return LaurentPoly._raw(self.dim, {tuple(n * x for x in e): c ** n})
        out = LaurentPoly.one(self.dim)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, alpha: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial ``y^alpha``."""
        return LaurentPoly._raw(
            self.dim, {tuple(a + b for a, b in zip(e, alpha)): c for e, c in self._terms.items()}
        )

    def filter(self, keep) -> "LaurentPoly":
        return LaurentPoly._raw(self.dim, {e: c for e, c in self._terms.items() if keep(e)})

    def truncate(self, D: Sequence[int], N: int) -> "LaurentPoly":
        """Drop every term of D-degree above ``N``."""
        return self.filter(lambda e: mu_D(D, e) <= N)

    def degrees(self, D: Sequence[int]) -> set[int]:
        return {mu_D(D, e) for e in self._terms}

    # -- text form ----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(
            f"{fmt_fraction(c)} * y^({','.join(map(str, e))})" for e, c in self.items()
        )

    def __repr__(self) -> str:
        return f"LaurentPoly({self.dim}, {self!s})"

    @classmethod
    def parse(cls, text: str, dim: int | None = None) -> "LaurentPoly":
        """Inverse of ``str``: terms ``coeff * y^(e1,...,em)`` joined by ``+``.

        The coefficient may be omitted (``y^(1,0)``, ``-y^(0,2)``) and a bare
        number is a constant term, which needs ``dim`` unless another term fixes it.
        Malformed text raises ``ValueError``.
        """
        text = text.replace("\u2212", "-").strip()
        parsed: list[tuple[Fraction, Vector | None]] = []
        for piece in (p.strip() for p in text.split("+")):
            m = _TERM.fullmatch(piece)
            if m:
                sign, num, exps = m.group(1), m.group(2), m.group(3)
                c = Fraction(num.replace(" ", "")) if num else Fraction(1)
                parsed.append((-c if sign else c, tuple(int(x) for x in exps.split(","))))
            elif _CONST.fullmatch(piece):
                parsed.append((Fraction(piece.replace(" ", "")), None))
            else:
                raise ValueError(f"cannot parse term {piece!r}")
        if dim is None:
            dims = {len(e) for _, e in parsed if e is not None}
            if not dims:
                raise ValueError(f"cannot infer the dimension of {text!r}")
            dim = min(dims)
        terms: dict[Vector, Fraction] = {}
        for c, e in parsed:
            e = (0,) * dim if e is None else e
            if len(e) != dim:
                raise DimensionMismatch(f"exponent {e} is not in dimension {dim}")
            terms[e] = terms.get(e, 0) + c
        return cls(dim, terms)


_TERM = re.compile(
    r"(-\s*)?(\d+(?:/\d+)?|-\s*\d+(?:/\d+)?)?\s*\*?\s*y\^\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)"
)
_CONST = re.compile(r"-?\s*\d+(?:/\d+)?")


def poly_bracket(f: LaurentPoly, g: LaurentPoly, omega: Bicharacter) -> LaurentPoly:
    """``{f, g}`` extended bilinearly from ``{y^a, y^b} = Omega(a, b) y^(a+b)``."""
    f._check(g)
    if f.dim != omega.dim:
        raise DimensionMismatch(f"polynomials in dimension {f.dim}, form in {omega.dim}")
    out: dict[Vector, Fraction] = {}
    for a, ca in f._terms.items():
        for b, cb in g._terms.items():
            w = bichar_eval(omega, a, b)
            if w:
                e = tuple(x + y for x, y in zip(a, b))
                out[e] = out.get(e, 0) + w * ca * cb
    return LaurentPoly._raw(f.dim, out)


def support(f: LaurentPoly) -> set[Vector]:
    return f.support()


def on_ray(diff: Sequence[int], ray: Sequence[int]) -> bool:
    """Is ``diff`` a nonnegative multiple of ``ray``?"""
    t = None
    for d, r in zip(diff, ray):
        if r == 0:
            if d != 0:
                return False
        elif t is None:
            t = Fraction(d, r)
            if t < 0:
                return False
        elif Fraction(d, r) != t:
            return False
    return True


def restrict_to_ray(f: LaurentPoly, base: Sequence[int], ray: Sequence[int]) -> LaurentPoly:
    """Keep the terms with exponent in ``base + R_{>=0} ray``."""
    if len(base) != f.dim or len(ray) != f.dim:
        raise DimensionMismatch(f"expected vectors of length {f.dim}")
    if not any(ray):
        raise PreconditionError("ray must be nonzero")
    return f.filter(lambda e: on_ray([x - b for x, b in zip(e, base)], ray))


def degree_component(f: LaurentPoly, D: Sequence[int], n: int) -> LaurentPoly:
    return f.filter(lambda e: mu_D(D, e) == n)


def monomials(dim: int, exps: Iterable[Sequence[int]]) -> LaurentPoly:
    return LaurentPoly(dim, {tuple(e): 1 for e in exps})
