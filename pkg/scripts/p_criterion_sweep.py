"""Compare the combinatorial criterion for P with its definition on many tori.

For every enumerated datum the sober torus is checked, and then a batch of
random primitive lattices containing L is tried; those passing validation
are compared as well. Mismatches are printed and counted.
"""

import argparse
import random

from solvnorm.classifier import validate
from solvnorm.datum import FullDatum, character_ambient
from solvnorm.enumerator import EnumerationOptions, enumerate_data
from solvnorm.lattice import IntegerLattice, saturate
from solvnorm.normalizer import compute_P_criterion, compute_P_definition, normalizer_report
from solvnorm.rootsys import build_root_system


def random_tori(full: FullDatum, rng: random.Random, tries: int):
    rs = full.rs
    amb = character_ambient(rs)
    basis = rs.character_lattice
    for _ in range(tries):
        extra = []
        for _ in range(rng.randint(1, 2)):
            c = [rng.randint(-3, 3) for _ in basis]
            extra.append(tuple(sum(k * b[i] for k, b in zip(c, basis)) for i in range(rs.rank)))
        kt = saturate(IntegerLattice.from_generators(amb, list(full.ker_tau.basis) + extra))
        yield FullDatum.with_lattice(full.datum, kt)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("types", nargs="*", default=["A2", "A3", "B2", "B3", "C3", "G2"])
    ap.add_argument("--tries", type=int, default=5, help="random tori per datum")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    for spec in args.types:
        for lattice in ("adjoint", "simply_connected"):
            rs = build_root_system(spec, lattice)
            checked = mismatched = unstable = 0
            for full in enumerate_data(rs, EnumerationOptions(sober=True)):
                for cand in [full, *random_tori(full, rng, args.tries)]:
                    if cand.datum.equiv != full.datum.equiv or not validate(cand).valid:
                        continue
                    checked += 1
                    if compute_P_criterion(cand.datum) != compute_P_definition(cand):
                        mismatched += 1
                        print("mismatch:", spec, lattice, cand.key())
                        continue
                    rep = normalizer_report(cand)
                    unstable += rep.P != rep.P_S
            print(f"{spec:<4} {lattice:<17} checked {checked:>5}  mismatches {mismatched}  with P_S != P {unstable}")


if __name__ == "__main__":
    main()
