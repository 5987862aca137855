#!/usr/bin/env python3
"""Run every catalog competency question against its case closure and
report golden agreement. Exits nonzero on any mismatch."""

import sys
import time

from iconmodel import build_registry, close, cq_catalog, load_case, run_cq


def main() -> int:
    reg = build_registry()
    closures = {}
    failures = 0
    started = time.perf_counter()
    for cq in cq_catalog():
        if cq.case_id not in closures:
            g, _ = load_case(cq.case_id)
            closures[cq.case_id] = close(g, reg)
        result = run_cq(closures[cq.case_id], cq.id)
        verdict = "match" if result.matches_golden else "MISMATCH"
        print(f"{cq.id:5s} {cq.case_id:20s} {len(result.solutions):3d} "
              f"solutions  {verdict}")
        failures += not result.matches_golden
    elapsed = time.perf_counter() - started
    print(f"{len(cq_catalog())} questions in {elapsed:.3f}s, "
          f"{failures} mismatch(es)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
