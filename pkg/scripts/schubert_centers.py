"""Tabulate the Poisson center of the minor torus for a list of Cartan types.

For each type and each of a few reduced words, prints the number of minors,
the radical rank, the predicted rank |O1| + |O2|, and whether the predicted
generators saturate to the radical.
"""

import argparse
import random
from dataclasses import dataclass, field

from qptori.lattice import radical
from qptori.rootsys import CartanData, random_reduced_word, tau_involution, w0_reduced_word
from qptori.schubert import minor_bracket_matrix, verify_center


@dataclass
class Config:
    types: list[str] = field(default_factory=lambda: ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4"])
    random_words: int = 2
    seed: int = 0


def main(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    print(f"{'type':<6} {'N':>3} {'rank':>4} {'pred':>4}  verdict  word")
    for name in cfg.types:
        cartan = CartanData.from_type(name)
        _, fixed, reps = tau_involution(cartan)
        words = [w0_reduced_word(cartan)] + [random_reduced_word(cartan, rng) for _ in range(cfg.random_words)]
        for word in words:
            rank = radical(minor_bracket_matrix(cartan, word)).rank
            ok = verify_center(cartan, word)
            shown = "".join(map(str, word)) if len(word) <= 24 else "".join(map(str, word[:21])) + "..."
            print(f"{name:<6} {len(word):>3} {rank:>4} {len(fixed) + len(reps):>4}  {str(ok):<7}  {shown}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--types", nargs="+", default=Config().types)
    ap.add_argument("--random-words", type=int, default=Config.random_words)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    main(Config(a.types, a.random_words, a.seed))
