#!/usr/bin/env python3
"""Solve exported LP files with HiGHS and compare against the exact oracle."""
import argparse
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import highspy


def run(cli, *args):
    subprocess.run([cli, *args], check=True, stdout=subprocess.DEVNULL)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cli", required=True)
    ap.add_argument("--seeds", type=int, default=6)
    args = ap.parse_args()

    cases = []
    for seed in range(1, args.seeds + 1):
        n, m = 4 + seed % 2, 2 if seed % 3 else 1
        for scenario in ("base", "full_1meet", "rew_only", "alt_1depot"):
            cases.append((seed, n, m, scenario))

    bad = 0
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        for seed, n, m, scenario in cases:
            inst = tmp / f"g{seed}.json"
            run(args.cli, "gen", "-n", str(n), "-m", str(m), "--seed", str(seed), "--kappa", "1", "-o", str(inst))
            lp, sol = tmp / "m.lp", tmp / "o.json"
            run(args.cli, "export-milp", "-i", str(inst), "--scenario", scenario, "-o", str(lp))
            run(args.cli, "oracle", "-i", str(inst), "--scenario", scenario, "-o", str(sol))
            want = json.loads(sol.read_text())["objective"]

            h = highspy.Highs()
            h.setOptionValue("output_flag", False)
            h.setOptionValue("mip_rel_gap", 0.0)
            h.readModel(str(lp))
            h.run()
            got = h.getInfo().objective_function_value
            ok = abs(got - want) <= 1e-6 * max(1.0, abs(want))
            bad += not ok
            print(f"seed {seed} n={n} m={m} {scenario:11s} oracle {want:.4f} highs {got:.4f} {'ok' if ok else 'DIFF'}")
    print(f"{len(cases) - bad}/{len(cases)} agree")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
