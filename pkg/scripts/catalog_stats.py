"""Catalog statistics: counts of data and the distribution of N_G(H)/H for sober data.

    python scripts/catalog_stats.py A2 A3 B3 G2 --lattice simply_connected
"""

import argparse
import time
from collections import Counter

from solvnorm.enumerator import EnumerationOptions, enumerate_data
from solvnorm.normalizer import normalizer_report
from solvnorm.rootsys import build_root_system


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("types", nargs="+")
    ap.add_argument("--lattice", default="adjoint", choices=["adjoint", "simply_connected"])
    args = ap.parse_args()

    print(f"{'type':<8} {'data':>6} {'mod aut':>8} {'max |M|':>8} {'secs':>6}  N_G(H)/H for sober tori")
    for spec in args.types:
        rs = build_root_system(spec, args.lattice)
        t0 = time.perf_counter()
        sober = enumerate_data(rs, EnumerationOptions(sober=True))
        deduped = enumerate_data(rs, EnumerationOptions(dedupe_automorphisms=True))
        quotients = Counter(str(normalizer_report(f).quotient_NH) for f in sober)
        dt = time.perf_counter() - t0
        biggest = max(len(f.datum.M) for f in sober)
        hist = ", ".join(f"{q}: {n}" for q, n in sorted(quotients.items()))
        print(f"{spec:<8} {len(sober):>6} {len(deduped):>8} {biggest:>8} {dt:>6.2f}  {hist}")


if __name__ == "__main__":
    main()
