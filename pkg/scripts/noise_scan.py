"""Detection significance versus white-noise visibility.

For each visibility p, simulate ``--runs`` experiments at ``--shots`` per
setting and report the mean witness value, mean error and the fraction of
runs with a negative value at 3 sigma or more.
"""

import argparse

import numpy as np

from mpwitness import measurement, states, witness

TARGETS = {"Ww1": "W3", "Ww2": "W3", "Wpsi4": "Psi4"}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("witness", choices=sorted(TARGETS))
    ap.add_argument("--shots", type=int, default=2000)
    ap.add_argument("--runs", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--p", type=float, nargs="+", default=[0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95, 1.0])
    args = ap.parse_args()

    w = witness.named_witness(args.witness)
    d = measurement.decomposition(args.witness)
    psi = states.named_state(TARGETS[args.witness])
    print(f"{'p':>6} {'exact':>9} {'mean':>9} {'err':>7} {'3sigma':>7}")
    for p in args.p:
        rho = states.mix_white_noise(psi, p).rho
        exact = witness.expectation(w, rho)
        res = np.array(
            [measurement.estimate(measurement.simulate_counts(rho, d, args.shots, args.seed * 100003 + r), d) for r in range(args.runs)]
        )
        detected = np.mean(res[:, 0] + 3 * res[:, 1] < 0)
        print(f"{p:6.3f} {exact:+9.4f} {res[:, 0].mean():+9.4f} {res[:, 1].mean():7.4f} {detected:7.2f}")


if __name__ == "__main__":
    main()
