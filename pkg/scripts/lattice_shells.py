"""Shell sizes and design strength for the bundled lattices."""

import argparse
import time

from confdesign.lattice import BUNDLED, bundled_lattice, design_report, iter_norms

NORMS = {"A1": (2, 8), "E8": (2, 4, 6), "D16plus": (2, 4), "BW16": (4,)}


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--tmax", type=int, default=8)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("lattices", nargs="*", default=list(BUNDLED))
    args = p.parse_args()

    for name in args.lattices:
        lat = bundled_lattice(name)
        for norm, shell in iter_norms(lat, NORMS.get(name, (2,)), args.workers).items():
            t0 = time.perf_counter()
            rep = design_report(shell, args.tmax)
            methods = " ".join(f"{c.degree}:{c.method}" for c in rep.checks if c.degree % 2 == 0)
            print(f"{name:8s} norm {str(norm):>3s}  {len(shell):6d} vectors  "
                  f"strength {rep.strength}  [{methods}]  {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
