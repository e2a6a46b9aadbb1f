"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 data error, 4 decomposition
verification failure.
"""

import argparse
import json
import sys

import numpy as np

from . import measurement, schmidt, states, witness
from .config import DEFAULT, DataError, VerificationError

EXIT_USAGE, EXIT_DATA, EXIT_VERIFY = 2, 3, 4


class UsageError(Exception):
    pass


def _dump(obj):
    return json.dumps(obj, indent=2) + "\n"


def _emit(args, obj):
    text = _dump(obj)
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    sys.stdout.write(text)


def _load_state(args):
    if getattr(args, "file", None):
        try:
            return states.read_state(args.file)
        except OSError as exc:
            raise DataError(f"cannot read state file: {exc}") from None
    if getattr(args, "state", None):
        try:
            return states.named_state(args.state)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    raise UsageError("give --state NAME or --file PATH")


def _named_witness(name):
    try:
        return witness.named_witness(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def cmd_alpha(args):
    psi = _load_state(args)
    _emit(args, schmidt.alpha_report(psi))


def cmd_build(args):
    psi = _load_state(args)
    w = witness.build_witness(psi)
    _, part = schmidt.alpha(psi)
    evals = np.linalg.eigvalsh(w.matrix)
    if args.export_state:
        states.write_state(args.export_state, psi)
    _emit(
        args,
        {
            "witness": w.label,
            "kind": w.kind.value,
            "n": w.n,
            "alpha": w.alpha,
            "argmax": str(part),
            "min_eigenvalue": float(evals[0]),
            "max_eigenvalue": float(evals[-1]),
            "expectation_on_target": witness.expectation(w, psi.density()),
        },
    )


def cmd_verify(args):
    _named_witness(args.witness)
    tol = args.tolerance if args.tolerance is not None else DEFAULT.decomposition
    report = measurement.verification_report(args.witness, tol)
    _emit(args, report)
    if not report["pass"]:
        raise VerificationError(f"{args.witness}: max deviation {report['max_deviation']:.3g} > {tol:g}")


def _target_rho(args, w):
    psi = _load_state(args)
    if psi.n != w.n:
        raise DataError(f"state {psi.label} has {psi.n} qubits, witness {w.label} acts on {w.n}")
    return states.mix_white_noise(psi, args.p).rho


def cmd_simulate(args):
    w = _named_witness(args.witness)
    d = measurement.decomposition(args.witness)
    rho = _target_rho(args, w)
    if args.exact:
        value, error = measurement.estimate_from_probabilities(measurement.exact_probabilities(rho, d), d)
    else:
        counts = measurement.simulate_counts(rho, d, args.shots, args.seed)
        if args.counts:
            measurement.write_counts(args.counts, counts)
        value, error = measurement.estimate(counts, d)
    _emit(args, witness.classify(value, error, w).to_dict())


def cmd_analyze(args):
    w = _named_witness(args.witness)
    d = measurement.decomposition(args.witness)
    try:
        counts = measurement.read_counts(args.counts)
    except OSError as exc:
        raise DataError(f"cannot read counts file: {exc}") from None
    value, error = measurement.estimate(counts, d)
    _emit(args, witness.classify(value, error, w).to_dict())


def cmd_group(args):
    if args.witness:
        w = _named_witness(args.witness)
        matrix, label = w.matrix, w.label
    else:
        psi = _load_state(args)
        w = witness.build_witness(psi)
        matrix, label = w.matrix, w.label
    d = measurement.group_pauli_terms(matrix, label=f"greedy[{label}]")
    tol = args.tolerance if args.tolerance is not None else 1e-9
    dev = measurement.max_deviation(d, matrix)
    _emit(
        args,
        {
            "witness": label,
            "K": d.K,
            "constant": d.constant,
            "settings": [s.label for s in d.settings],
            "max_deviation": dev,
            "pass": bool(dev <= tol),
        },
    )
    if dev > tol:
        raise VerificationError(f"greedy decomposition deviates by {dev:.3g}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--out", help="also write the JSON report to this path")
    common.add_argument("--tolerance", type=float, help="override the verification tolerance")

    state_src = argparse.ArgumentParser(add_help=False)
    g = state_src.add_mutually_exclusive_group()
    g.add_argument("--state", help=f"named state: {', '.join(states.NAMED_STATES)}")
    g.add_argument("--file", help="state file ('n=<k>' then 're im' lines)")

    parser = argparse.ArgumentParser(prog="mpwitness", description="Multipartite entanglement witness toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("alpha", parents=[common, state_src], help="biseparable overlap bound and Schmidt spectra")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("build", parents=[common, state_src], help="build the projector witness for a state")
    p.add_argument("--export-state", help="write the state in the text state format")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", parents=[common], help="check a built-in decomposition against its witness")
    p.add_argument("witness", choices=witness.WITNESS_NAMES)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", parents=[common, state_src], help="simulate counts and evaluate a witness")
    p.add_argument("witness", choices=witness.WITNESS_NAMES)
    p.add_argument("--p", type=float, default=1.0, help="visibility of the target in white noise")
    p.add_argument("--shots", type=int, default=2000, help="shots per setting (default 2000)")
    p.add_argument("--exact", action="store_true", help="use exact probabilities, no sampling")
    p.add_argument("--counts", help="write simulated counts (CSV, or JSON if the name ends in .json)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", parents=[common], help="evaluate a witness from a counts file")
    p.add_argument("counts", help="counts CSV or JSON file")
    p.add_argument("witness", choices=witness.WITNESS_NAMES)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("group", parents=[common, state_src], help="greedy Pauli-grouping decomposition")
    p.add_argument("--witness", choices=witness.WITNESS_NAMES)
    p.set_defaults(func=cmd_group)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "simulate" and args.shots < 1:
        parser.error("--shots must be at least 1")
    if args.command == "simulate" and not 0.0 <= args.p <= 1.0:
        parser.error("--p must lie in [0, 1]")
    if args.command == "simulate" and not (args.state or args.file):
        args.state = {"Ww1": "W3", "Ww2": "W3", "Wpsi4": "Psi4", "Wghz": "GHZbar"}[args.witness]
    try:
        args.func(args)
    except UsageError as exc:
        print(f"mpwitness: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationError as exc:
        print(f"mpwitness: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (DataError, ValueError) as exc:
        print(f"mpwitness: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return 0


if __name__ == "__main__":
    sys.exit(main())
