"""Empirical coverage of the estimate +- k*error interval for each built-in
witness on its target state."""

import argparse

from mpwitness import measurement, states, witness

CASES = [("Ww1", "W3"), ("Ww2", "GHZbar"), ("Ww2", "W3"), ("Wpsi4", "Psi4"), ("Wghz", "GHZbar")]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--shots", type=int, default=2000)
    ap.add_argument("--seeds", type=int, default=1000)
    ap.add_argument("--k", type=float, default=3.0)
    args = ap.parse_args()
    for name, target in CASES:
        d = measurement.decomposition(name)
        rho = states.named_state(target).density()
        exact = witness.expectation(witness.named_witness(name), rho)
        hits = 0
        for seed in range(args.seeds):
            v, e = measurement.estimate(measurement.simulate_counts(rho, d, args.shots, seed), d)
            hits += abs(v - exact) <= args.k * e
        print(f"{name:6s} on {target:7s} exact {exact:+.4f}  coverage {hits}/{args.seeds}")


if __name__ == "__main__":
    main()
