"""Run the integrality scan, time it, and write the candidate table.

    python scripts/run_scan.py [--workers N] [--out DIR]
"""

import argparse
import json
import time
from pathlib import Path

from confdesign.classify import diophant_scan, fermion_feasibility_scan, scan_form, table1, table1_markdown


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", type=Path, default=Path("results"))
    args = p.parse_args()

    form = scan_form()
    t0 = time.perf_counter()
    scan = diophant_scan(workers=args.workers)
    elapsed = time.perf_counter() - t0
    print(f"scanned k <= {form.bound()} in {elapsed:.2f}s, {len(scan)} values")

    rows = table1(scan)
    fermions = fermion_feasibility_scan([c for c, _ in scan])
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "scan.json").write_text(json.dumps(
        {"bound": form.bound(), "seconds": round(elapsed, 3),
         "values": [[str(c), d] for c, d in scan],
         "fermion_feasible": [str(r.c) for r in fermions if r.feasible]}, indent=2))
    (args.out / "table1.md").write_text(table1_markdown(rows))
    print(table1_markdown(rows))


if __name__ == "__main__":
    main()
