#!/usr/bin/env python3
"""Replay every built-in certificate and print the summary table.

Equivalent to `k3cert verify --all`, plus the Q-basis determinant and
the negative-control mutations, so one run shows the whole evidence
surface.
"""

import sys, os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from k3cert.cases import mutation_kit, qbasis_check, run_mutation, verify_all


def main():
    reports = verify_all()
    for rep in reports:
        tag = rep.case_id + (f"[{rep.param}]" if rep.param is not None else "")
        print(f"{tag:24s} {rep.status}")
        for name, status, detail in rep.checks:
            if status == "FAIL":
                print(f"    FAIL {name}: {detail}")
    npass = sum(1 for r in reports if r.status == "PASS")
    print(f"{npass}/{len(reports)} PASS")

    det, nonzero = qbasis_check()
    print(f"qbasis determinant: {det} ({'nonzero' if nonzero else 'ZERO'})")

    print("negative controls:")
    for mut in mutation_kit():
        _, flipped = run_mutation(mut)
        mark = "ok" if flipped else "UNEXPECTED"
        print(f"  {mut.mutation_id:26s} -> {mut.expected_check:20s} [{mark}]")


if __name__ == "__main__":
    main()
