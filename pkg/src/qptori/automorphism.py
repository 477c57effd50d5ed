"""Unipotent automorphisms of the graded completion of a Poisson torus.

An automorphism is stored through its multipliers ``u_k = phi(y_k) y_k^{-1}``.
The completion is modelled by truncation: each multiplier is known through
*relative* D-degree ``N``, i.e. ``phi(y^a)`` is exact in the degrees
``mu_D(a) .. mu_D(a) + N``.  All equalities below hold modulo that window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from ._simplex import feasible_point
from .errors import DimensionMismatch, FactorizationError, PreconditionError
from .laurent import LaurentPoly, on_ray, poly_bracket
from .lattice import Bicharacter, Vector, as_fraction, check_grading, mu_D, primitive, radical

DEFAULT_TRUNCATION = 12


@dataclass(frozen=True)
class TorusAutomorphism:
    D: tuple[int, ...]
    omega: Bicharacter
    multipliers: tuple[LaurentPoly, ...]
    N: int
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def dim(self) -> int:
        return len(self.D)

    def parts(self) -> list[LaurentPoly]:
        """The nonconstant parts ``f_k = u_k - 1``."""
        return [u - 1 for u in self.multipliers]

    def is_identity(self) -> bool:
        return all(u == 1 for u in self.multipliers)

    def __call__(self, alpha: Sequence[int]) -> LaurentPoly:
        return aut_apply(self, alpha)


@dataclass(frozen=True)
class SupportReport:
    generators: tuple[Vector, ...]
    N: int


@dataclass(frozen=True)
class ConeReport:
    generators: tuple[Vector, ...]
    extremal_rays: tuple[Vector, ...]


@dataclass(frozen=True)
class RigidityVerdict:
    central: bool
    witness: Vector | None = None


# -- truncated series helpers -------------------------------------------------


def _mul(f: LaurentPoly, g: LaurentPoly, D, N) -> LaurentPoly:
    out: dict = {}
    fd = [(e, c, mu_D(D, e)) for e, c in f.items()]
    gd = [(e, c, mu_D(D, e)) for e, c in g.items()]
    for e1, c1, d1 in fd:
        for e2, c2, d2 in gd:
            if d1 + d2 <= N:
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
    return LaurentPoly._raw(f.dim, out)


def _inverse_series(u: LaurentPoly, D, N) -> LaurentPoly:
    """``u^{-1} = sum_n (-f)^n`` for ``u = 1 + f`` with ``f`` of positive degree."""
    f = u - 1
    out = LaurentPoly.one(u.dim)
    power = LaurentPoly.one(u.dim)
    while True:
        power = _mul(power, -f, D, N)
        if not power:
            return out
        out = out + power


def _power(phi: TorusAutomorphism, k: int, e: int) -> LaurentPoly:
    key = ("pow", k, e)
    if key not in phi._cache:
        if e == 0:
            val = LaurentPoly.one(phi.dim)
        elif e == 1:
            val = phi.multipliers[k]
        elif e == -1:
            val = _inverse_series(phi.multipliers[k], phi.D, phi.N)
        else:
            step = 1 if e > 0 else -1
            val = _mul(_power(phi, k, e - step), _power(phi, k, step), phi.D, phi.N)
        phi._cache[key] = val
    return phi._cache[key]


def relative_multiplier(phi: TorusAutomorphism, alpha: Sequence[int]) -> LaurentPoly:
    """``phi(y^alpha) y^{-alpha} = prod_k u_k^{alpha_k}`` through degree ``N``."""
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != phi.dim:
        raise DimensionMismatch(f"expected a vector of length {phi.dim}")
    key = ("mult", alpha)
    if key not in phi._cache:
        out = LaurentPoly.one(phi.dim)
        for k, a in enumerate(alpha):
            if a:
                out = _mul(out, _power(phi, k, a), phi.D, phi.N)
        phi._cache[key] = out
    return phi._cache[key]


def _apply_relative(phi: TorusAutomorphism, g: LaurentPoly) -> LaurentPoly:
    """``phi(g)`` through degree ``N`` for ``g`` with terms of degree >= 0."""
    out: dict = {}
    for beta, c in g.items():
        db = mu_D(phi.D, beta)
        if db > phi.N:
            continue
        for e, c2 in relative_multiplier(phi, beta).items():
            if db + mu_D(phi.D, e) <= phi.N:
                t = tuple(a + b for a, b in zip(beta, e))
                out[t] = out.get(t, 0) + c * c2
    return LaurentPoly._raw(phi.dim, out)


def _check_same_ambient(phi: TorusAutomorphism, psi: TorusAutomorphism) -> None:
    if phi.D != psi.D or phi.omega != psi.omega or phi.N != psi.N:
        raise PreconditionError("automorphisms live on different graded tori or truncations")


# -- construction and group operations ----------------------------------------


def aut_from_multipliers(D, omega: Bicharacter, parts: Sequence[LaurentPoly], N: int = DEFAULT_TRUNCATION) -> TorusAutomorphism:
    """Automorphism with ``phi(y_k) = (1 + parts[k]) y_k``, kept modulo degree > N."""
    D = check_grading(D)
    if omega.dim != len(D):
        raise DimensionMismatch(f"form has dimension {omega.dim}, grading {len(D)}")
    if len(parts) != len(D):
        raise DimensionMismatch(f"need {len(D)} multipliers, got {len(parts)}")
    if N < 1:
        raise PreconditionError("truncation degree must be positive")
    mults = []
    for k, f in enumerate(parts):
        if f.dim != len(D):
            raise DimensionMismatch(f"multiplier {k + 1} has dimension {f.dim}")
        low = [e for e in f.support() if mu_D(D, e) <= 0]
        if low:
            raise PreconditionError(
                f"multiplier {k + 1} is not unipotent: term y^{min(low)} has degree {mu_D(D, min(low))}"
            )
        mults.append(1 + f.truncate(D, N))
    return TorusAutomorphism(D, omega, tuple(mults), N)


def identity(D, omega: Bicharacter, N: int = DEFAULT_TRUNCATION) -> TorusAutomorphism:
    return aut_from_multipliers(D, omega, [LaurentPoly.zero(len(D))] * len(D), N)


def aut_apply(phi: TorusAutomorphism, alpha: Sequence[int]) -> LaurentPoly:
    """``phi(y^alpha)``; negative powers expand through the geometric series."""
    return relative_multiplier(phi, alpha).shift(alpha)


def aut_compose(phi: TorusAutomorphism, psi: TorusAutomorphism) -> TorusAutomorphism:
    """``phi ∘ psi``: apply ``psi`` first, then ``phi``."""
    _check_same_ambient(phi, psi)
    mults = tuple(
        _mul(_apply_relative(phi, v), u, phi.D, phi.N)
        for u, v in zip(phi.multipliers, psi.multipliers)
    )
    return TorusAutomorphism(phi.D, phi.omega, mults, phi.N)


def aut_inverse(phi: TorusAutomorphism) -> TorusAutomorphism:
    """Inverse by degree-raising fixed-point correction.

    The inverse multipliers ``v_k`` solve ``phi(v_k) = u_k^{-1}``.  Adding the
    residual to ``v_k`` pushes the residual's lowest degree up by at least one,
    so ``N + 1`` rounds suffice.
    """
    targets = [_inverse_series(u, phi.D, phi.N) for u in phi.multipliers]
    vs = []
    for target in targets:
        v = LaurentPoly.one(phi.dim)
        for _ in range(phi.N + 1):
            residual = target - _apply_relative(phi, v)
            if not residual:
                break
            v = v + residual
        else:
            if target - _apply_relative(phi, v):
                raise AssertionError("inverse iteration failed to converge")
        vs.append(v)
    return TorusAutomorphism(phi.D, phi.omega, tuple(vs), phi.N)


def is_poisson_hom(phi: TorusAutomorphism) -> bool:
    """Check ``{phi(y_j), phi(y_k)} = phi({y_j, y_k})`` for all ``j < k``."""
    m, D, N = phi.dim, phi.D, phi.N
    for j in range(m):
        for k in range(j + 1, m):
            dj = tuple(int(i == j) for i in range(m))
            dk = tuple(int(i == k) for i in range(m))
            djk = tuple(a + b for a, b in zip(dj, dk))
            top = mu_D(D, djk) + N
            lhs = poly_bracket(aut_apply(phi, dj), aut_apply(phi, dk), phi.omega).truncate(D, top)
            rhs = aut_apply(phi, djk) * phi.omega.L[j][k]
            if lhs != rhs:
                return False
    return True


# -- Hamiltonian flows --------------------------------------------------------


def hamiltonian_exp(a, alpha: Sequence[int], omega: Bicharacter, D, N: int = DEFAULT_TRUNCATION) -> TorusAutomorphism:
    """``exp(a {y^alpha, -})``: ``y^b -> sum_n (a Omega(alpha, b))^n / n! y^(n alpha + b)``."""
    D = check_grading(D)
    a = as_fraction(a)
    alpha = tuple(int(x) for x in alpha)
    deg = mu_D(D, alpha)
    if deg < 1:
        raise PreconditionError(f"Hamiltonian exponent {alpha} has nonpositive degree {deg}")
    m = len(D)
    parts = []
    for k in range(m):
        w = a * sum(alpha[i] * omega.L[i][k] for i in range(m))
        terms = {}
        n = 1
        while n * deg <= N:
            c = w ** n / factorial(n)
            if c:
                terms[tuple(n * x for x in alpha)] = c
            n += 1
        parts.append(LaurentPoly(m, terms))
    return aut_from_multipliers(D, omega, parts, N)


def exp_product(factors: Iterable[tuple[object, Sequence[int]]], omega: Bicharacter, D, N: int = DEFAULT_TRUNCATION) -> TorusAutomorphism:
    """``exp(a_1 X_1) ∘ exp(a_2 X_2) ∘ ...`` for ``(a_i, alpha_i)`` pairs, left to right."""
    out = identity(D, omega, N)
    for a, alpha in factors:
        out = aut_compose(out, hamiltonian_exp(a, alpha, omega, D, N))
    return out


def exp_derivation_series(h: LaurentPoly, g: LaurentPoly, omega: Bicharacter, D, N: int) -> LaurentPoly:
    """``sum_n ad_h^n(g) / n!`` with ``ad_h = {h, -}``, from the bracket alone.

    Terms more than ``N`` above the lowest degree of ``g`` are dropped; needs
    every term of ``h`` to have positive degree.
    """
    if any(mu_D(D, e) < 1 for e in h.support()):
        raise PreconditionError("Hamiltonian must have positive degree")
    if not g:
        return g
    top = min(g.degrees(D)) + N
    term = g.truncate(D, top)
    out = term
    n = 1
    while term:
        term = (poly_bracket(h, term, omega) / n).truncate(D, top)
        out = out + term
        n += 1
    return out


# -- supports and cones -------------------------------------------------------


def multiplier_support(phi: TorusAutomorphism) -> set[Vector]:
    out: set[Vector] = set()
    for f in phi.parts():
        out |= f.support()
    return out


def aut_support(phi: TorusAutomorphism) -> SupportReport:
    """N-dilates of the multiplier supports, cut to degrees ``[1, N]``."""
    out: set[Vector] = set()
    for v in multiplier_support(phi):
        d = mu_D(phi.D, v)
        n = 1
        while n * d <= phi.N:
            out.add(tuple(n * x for x in v))
            n += 1
    return SupportReport(tuple(sorted(out)), phi.N)


def in_cone(v: Sequence[int], generators: Sequence[Sequence[int]]) -> bool:
    """Exact test of ``v`` being a nonnegative combination of ``generators``."""
    if not any(v):
        return True
    if not generators:
        return False
    A = [[g[i] for g in generators] for i in range(len(v))]
    return feasible_point(A, list(v)) is not None


def cone_extremal_rays(generators: Iterable[Sequence[int]], D) -> list[Vector]:
    """Primitive representatives of the extremal rays of ``R_{>=0} generators``."""
    D = check_grading(D)
    gens = sorted({tuple(int(x) for x in g) for g in generators})
    for g in gens:
        if mu_D(D, g) < 1:
            raise PreconditionError(f"generator {g} has nonpositive degree; cone is not strict")
    rays = sorted({primitive(g) for g in gens})
    return [r for r in rays if not in_cone(r, [s for s in rays if s != r])]


def aut_cone(phi: TorusAutomorphism) -> ConeReport:
    gens = sorted(multiplier_support(phi))
    return ConeReport(tuple(gens), tuple(cone_extremal_rays(gens, phi.D)))


def aut_restrict_to_ray(phi: TorusAutomorphism, ray: Sequence[int]) -> TorusAutomorphism:
    """Keep only the multiplier terms with exponent in ``R_{>=0} ray``.

    Meaningful when ``ray`` spans an extremal ray of the cone of ``phi``.
    """
    ray = tuple(int(x) for x in ray)
    if len(ray) != phi.dim:
        raise DimensionMismatch(f"expected a vector of length {phi.dim}")
    if not any(ray):
        raise PreconditionError("ray must be nonzero")
    mults = tuple(u.filter(lambda e: on_ray(e, ray)) for u in phi.multipliers)
    return TorusAutomorphism(phi.D, phi.omega, mults, phi.N)


def _ray_multiple(e: Sequence[int], ray: Sequence[int]) -> int | None:
    """The positive integer ``n`` with ``e = n * ray``, else None."""
    if not on_ray(e, ray) or not any(e):
        return None
    i = next(i for i, r in enumerate(ray) if r)
    if e[i] % ray[i]:
        return None
    return e[i] // ray[i]


def _check_on_ray(phi: TorusAutomorphism, ray: Vector) -> None:
    for v in multiplier_support(phi):
        if _ray_multiple(v, ray) is None:
            raise PreconditionError(f"support vector {v} is not a positive multiple of {ray}")
    if ray in radical(phi.omega):
        raise PreconditionError(f"ray {ray} lies in the radical of the form")


def exp_factorize(phi: TorusAutomorphism, ray: Sequence[int]) -> list[Fraction]:
    """Coefficients ``a_n`` with ``phi = prod_n exp(a_n {y^(n ray), -})``.

    The flows along one ray commute, so the order of peeling is irrelevant.
    Returns ``floor(N / mu_D(ray))`` coefficients.
    """
    ray = tuple(int(x) for x in ray)
    if len(ray) != phi.dim:
        raise DimensionMismatch(f"expected a vector of length {phi.dim}")
    if not any(ray):
        raise PreconditionError("ray must be nonzero")
    deg = mu_D(phi.D, ray)
    if deg < 1:
        raise PreconditionError(f"ray {ray} has nonpositive degree")
    _check_on_ray(phi, ray)
    m = phi.dim
    slopes = [sum(ray[i] * phi.omega.L[i][k] for i in range(m)) for k in range(m)]
    pivot = next(k for k in range(m) if slopes[k])
    coeffs: list[Fraction] = []
    current = phi
    for n in range(1, phi.N // deg + 1):
        target = tuple(n * x for x in ray)
        b = [u.coeff(target) for u in current.multipliers]
        a = b[pivot] / (n * slopes[pivot])
        for j in range(m):
            if b[j] != a * n * slopes[j]:
                raise FactorizationError(
                    f"degree {n} coefficients are not proportional to the Hamiltonian "
                    f"pattern (generator {j + 1}); the map is not a Poisson automorphism"
                )
        coeffs.append(a)
        if a:
            current = aut_compose(hamiltonian_exp(-a, target, phi.omega, phi.D, phi.N), current)
    if not current.is_identity():
        raise FactorizationError("residual after peeling is not the identity")
    return coeffs


def rigidity_check(phi: TorusAutomorphism) -> RigidityVerdict:
    """Are all multipliers central?  If not, exhibit a non-central extremal ray.

    The witness is the lexicographically first extremal ray of the cone that
    leaves the radical; one exists because the radical is saturated.
    """
    rad = radical(phi.omega)
    gens = multiplier_support(phi)
    if all(v in rad for v in gens):
        return RigidityVerdict(True, None)
    for r in cone_extremal_rays(gens, phi.D):
        if r not in rad:
            return RigidityVerdict(False, r)
    raise AssertionError("no non-central extremal ray although the support leaves the radical")


def cor_fix_check(phi: TorusAutomorphism, ray: Sequence[int]) -> bool:
    """For on-ray support, does ``phi`` fix ``y^ray``?"""
    ray = tuple(int(x) for x in ray)
    if len(ray) != phi.dim:
        raise DimensionMismatch(f"expected a vector of length {phi.dim}")
    if not any(ray):
        raise PreconditionError("ray must be nonzero")
    _check_on_ray(phi, ray)
    return aut_apply(phi, ray) == LaurentPoly.monomial(ray)
