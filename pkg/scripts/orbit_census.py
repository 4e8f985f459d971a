"""Split sober catalogs into orbits of elementary transformations.

Reports the number of conjugacy classes, the largest orbit, and confirms that
normalizer quotients are constant along each orbit.
"""

import argparse

from solvnorm.enumerator import EnumerationOptions, enumerate_data
from solvnorm.normalizer import normalizer_report
from solvnorm.rootsys import build_root_system
from solvnorm.transforms import orbit


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("types", nargs="*", default=["A2", "A3", "B2", "B3", "C3", "G2", "A4", "D4"])
    ap.add_argument("--lattice", default="simply_connected", choices=["adjoint", "simply_connected"])
    args = ap.parse_args()

    for spec in args.types:
        rs = build_root_system(spec, args.lattice)
        seen = set()
        sizes = []
        varying = 0
        for full in enumerate_data(rs, EnumerationOptions(sober=True)):
            if full.key() in seen:
                continue
            members = orbit(full)
            # transforms carry sober data to sober data, so orbits partition the catalog
            seen.update(m.key() for m in members)
            sizes.append(len(members))
            varying += len({str(normalizer_report(m).quotient_NH) for m in members}) > 1
        print(f"{spec:<4} orbits {len(sizes):>5}  largest {max(sizes):>4}  total {sum(sizes):>6}  non-constant quotients {varying}")


if __name__ == "__main__":
    main()
