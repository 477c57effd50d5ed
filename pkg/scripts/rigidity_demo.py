"""Rigidity verdicts on a few hand-built automorphisms of small tori."""

from dataclasses import dataclass
from fractions import Fraction

from qptori.automorphism import (
    aut_cone,
    aut_from_multipliers,
    exp_factorize,
    exp_product,
    is_poisson_hom,
    rigidity_check,
)
from qptori.laurent import LaurentPoly
from qptori.lattice import Bicharacter


@dataclass(frozen=True)
class Config:
    truncation: int = 8


def show(label, phi):
    verdict = rigidity_check(phi)
    cone = aut_cone(phi)
    print(f"{label}")
    print(f"  poisson={is_poisson_hom(phi)} central={verdict.central} witness={verdict.witness}")
    print(f"  extremal rays: {list(cone.extremal_rays)}")


def main(cfg: Config = Config()) -> None:
    N = cfg.truncation
    plane = Bicharacter([[0, 1], [-1, 0]])
    show("exp(X_(1,0)) on the symplectic 2-torus",
         exp_product([(1, (1, 0))], plane, (1, 1), N))
    phi = exp_product([(1, (1, 0)), (Fraction(-1, 2), (0, 1))], plane, (1, 1), N)
    show("exp(X_(1,0)) o exp(-1/2 X_(0,1))", phi)

    cyclic = Bicharacter([[0, 1, -1], [-1, 0, 1], [1, -1, 0]])
    c = LaurentPoly.monomial((1, 1, 1))
    central = aut_from_multipliers((1, 1, 1), cyclic, [c, c + 3 * c ** 2, LaurentPoly.zero(3)], 9)
    show("multipliers in the central monomial y1 y2 y3", central)

    on_ray = exp_product([(3, (1, 1)), (Fraction(1, 4), (2, 2))], plane, (1, 1), N)
    print("factorization along (1,1):", [str(a) for a in exp_factorize(on_ray, (1, 1))])


if __name__ == "__main__":
    main()
