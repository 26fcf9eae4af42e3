"""Grid-refinement study for free-particle Liouville transport.

Prints the max-norm error of the evolved density against the exact shifted
initial condition, and the observed order between successive grids.

    python scripts/liouville_convergence.py --levels 64 128 256 --time 1.0
"""
import argparse
import math

import numpy as np

from dualsim.phase_space import HamiltonianField, PhaseSpaceDensity, PhaseSpaceGrid, evolve_liouville


def bump(length, sigma_q, sigma_p):
    def f(q, p):
        d = (q + length / 2) % length - length / 2
        return np.exp(-d**2 / (2 * sigma_q**2) - p**2 / (2 * sigma_p**2))
    return f


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--levels", type=int, nargs="+", default=[64, 128, 256])
    ap.add_argument("--n-p", type=int, default=32)
    ap.add_argument("--time", type=float, default=1.0)
    ap.add_argument("--mass", type=float, default=1.0)
    ap.add_argument("--cfl", type=float, default=0.5)
    args = ap.parse_args()

    f0 = bump(2 * math.pi, 0.4, 0.25)
    prev = None
    print("n_q,max_error,order,clamped_mass")
    for n in args.levels:
        g = PhaseSpaceGrid(n, args.n_p, -math.pi, math.pi, -1.5, 1.5, periodic=True)
        h = HamiltonianField.from_function(g, lambda q, p: p**2 / (2 * args.mass))
        out = evolve_liouville(PhaseSpaceDensity.from_function(g, f0), h, args.time, args.cfl / h.max_speed())
        exact = g.sample(lambda q, p: f0(q - p * args.time / args.mass, p))
        exact /= exact.sum() * g.cell
        err = float(np.max(np.abs(out.values - exact)))
        order = "" if prev is None else f"{math.log2(prev / err):.3f}"
        print(f"{n},{err:.6e},{order},{out.clamped_mass:.3e}")
        prev = err


if __name__ == "__main__":
    main()
