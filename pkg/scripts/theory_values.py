"""Print every theoretical number the toolkit reproduces: alpha bounds,
expectation values on the target states, setting counts and the noise
threshold."""

from mpwitness import measurement, schmidt, states, witness


def main():
    print("alpha (max squared Schmidt coefficient over all cuts)")
    for name in ("W3", "GHZbar", "Psi4"):
        value, part = schmidt.alpha(states.named_state(name))
        print(f"  {name:7s} {value:.12f}   argmax cut {part}")

    print("\nexpectation values on pure targets")
    w3 = states.make_w(3).density()
    rows = [
        ("Ww1", w3, "W3"),
        ("Ww2", w3, "W3"),
        ("Wpsi4", states.make_psi4().density(), "Psi4"),
        ("Wghz", states.make_ghz_bar().density(), "GHZbar"),
        ("Wghz", w3, "W3"),
    ]
    for name, rho, label in rows:
        print(f"  Tr({name:5s} rho_{label:6s}) = {witness.expectation(witness.named_witness(name), rho):+.12f}")

    print("\nlocal decompositions")
    for name in ("Ww1", "Ww2", "Wpsi4", "Wghz"):
        rep = measurement.verification_report(name)
        print(f"  {name:5s} K={rep['K']:2d}  max deviation {rep['max_deviation']:.1e}  pass={rep['pass']}")
    rep = measurement.verification_report("Wpsi4")["printed_variant"]
    print(f"  Wpsi4 as printed (x+z twice): deviation {rep['max_deviation']:.6f}")

    # Tr(Ww1 rho_p) = 2/3 - p - (1-p)/8 vanishes at p = 13/21
    p = (2 / 3 - 1 / 8) / (1 - 1 / 8)
    print(f"\nwhite-noise threshold for Ww1: p = {p:.12f} (13/21 = {13 / 21:.12f})")


if __name__ == "__main__":
    main()
