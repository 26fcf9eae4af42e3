"""Phase sweep of the interferometer, with and without a bomb, as CSV.

Each sweep point draws clicks from its own seed derived from --seed.

    python scripts/mach_zehnder_sweep.py --points 9 --samples 2000 > sweep.csv
"""
import argparse
import csv
import math
import sys

import numpy as np

from dualsim.scenarios import ScenarioConfig, sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=9)
    ap.add_argument("--samples", type=int, default=0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    phases = np.linspace(0.0, 2 * math.pi, args.points).tolist()
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["kind", "phase", "p_cross", "p_bar", "p_absorbed", "emp_cross", "emp_bar", "emp_absorbed"])
    for kind in ("mach_zehnder", "bomb_test"):
        for r in sweep(ScenarioConfig(kind, {}, args.seed, args.samples), "phase", phases):
            a, e = r.analytic, r.empirical
            w.writerow([kind, repr(r.metadata["params"]["phase"]), repr(a["p_cross"]), repr(a["p_bar"]), repr(a["p_absorbed"]),
                        e.get("p_cross", ""), e.get("p_bar", ""), e.get("p_absorbed", "")])


if __name__ == "__main__":
    main()
