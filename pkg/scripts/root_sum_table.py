"""Degree-4 and degree-6 zonal root sums by enumeration next to the closed
forms, as a CSV on stdout."""

import csv
import sys

from confdesign.rootsys import MIN_RANK, build_roots, closed_form_sum, special_values, zonal_root_sum

MAX_RANK = 10


def main():
    w = csv.writer(sys.stdout)
    w.writerow(["system", "l", "enumerated", "closed_form"])
    for fam, lo in MIN_RANK.items():
        for n in range(max(lo, 2), MAX_RANK + 1):
            phi = build_roots(fam, n)
            for l in (4, 6):
                w.writerow([phi.label, l, zonal_root_sum(l, phi), closed_form_sum(l, fam, n)])
    for sv in special_values():
        w.writerow([sv.label, 6, sv.r6, sv.reference_r6])


if __name__ == "__main__":
    main()
