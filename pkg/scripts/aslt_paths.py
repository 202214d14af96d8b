#!/usr/bin/env python3
"""Logarithmic running averages along several independent ASLT paths.
CSV to stdout: one row per (seed, point, checkpoint)."""

import argparse

import hrlab as H


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lambda", dest="lam", type=float, default=1.0)
    ap.add_argument("--phi", type=float, default=0.5)
    ap.add_argument("--nmax", type=int, default=20000)
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--coupling", default="indep", help="indep or shared:C")
    args = ap.parse_args()

    model = H.WeakAR1Model(args.lam, args.phi)
    if args.coupling == "indep":
        coupling = H.INDEPENDENT_ROWS
    else:
        coupling = H.shared_innovations(float(args.coupling.split(":", 1)[1]))
    points = ((0.0, 0.0), (1.0, 1.0))
    root = H.SeedLineage(args.seed)
    print("seed_index,x,y,checkpoint,average,target,ceiling")
    for s in range(args.seeds):
        path = H.aslt_average(model, coupling, args.nmax, points, root.child(s))
        for ip, (x, y) in enumerate(points):
            target = H.hr_cdf(args.lam, x, y)
            for ic, cp in enumerate(path.checkpoints):
                print(f"{s},{x:g},{y:g},{cp},{path.averages[ip, ic]:.6f},"
                      f"{target:.6f},{path.ceiling[ic]:.6f}")


if __name__ == "__main__":
    main()
