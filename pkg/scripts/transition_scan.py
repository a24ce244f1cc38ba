#!/usr/bin/env python3
"""sigma near v_c for several alpha: third-order contact and the size of the jump.

Compares the one-sided finite-difference third derivative at v_c+ with
2/(v_c(1-v_c^2)) and with half that value.
"""

import argparse

from aztec_efp.asymptotics import sigma_profile


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, nargs="+", default=[0.1, 0.25, 0.5, 0.75])
    ap.add_argument("--h", type=float, default=1e-4)
    args = ap.parse_args()
    print("alpha,v_c,fd_sigma3,two_over,one_over,sigma_over_eps3_1e-3")
    for a in args.alpha:
        p = sigma_profile(a)
        vc, h = p.v_c, args.h
        s = [p.sigma(vc + k * h) for k in range(4)]
        fd = (s[3] - 3 * s[2] + 3 * s[1] - s[0]) / h**3
        base = 1 / (vc * (1 - vc * vc))
        print(f"{a:g},{vc:.10f},{fd:.6f},{2 * base:.6f},{base:.6f},{p.sigma(vc + 1e-3) / 1e-9:.6f}")


if __name__ == "__main__":
    main()
