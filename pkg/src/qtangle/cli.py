"""Command-line interface.

Every command writes one JSON object to stdout and a short human summary to
stderr. Exit codes: 0 success, 1 verification failure, 2 bad arguments,
3 I/O or malformed input file, 4 unsupported domain (e.g. odd n), 5 resource
guard.
"""

import argparse
import json
import sys
import time

from . import errors
from .io import read_density, read_state, serialize_state, write_state
from .mixed import ConvexRoofConfig, convex_roof_minimize, lambda_spectrum, tau_min_analytic
from .pure import concurrence_pure, epsilon_contraction_oracle, n_tangle
from .states import make_named_state, random_state
from .verify import DEFAULT_TOL, SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_ARGS, EXIT_IO, EXIT_DOMAIN, EXIT_RESOURCE = range(6)

_DOMAIN_ERRORS = (
    errors.UndefinedForOddN,
    errors.OddNUnsupported,
    errors.UnsupportedSize,
    errors.WrongQubitCount,
    errors.IndexOutOfRange,
)
_RESOURCE_ERRORS = (errors.OracleTooLarge, errors.DimensionTooLarge)
_INPUT_ERRORS = (
    errors.ParseError,
    errors.NormError,
    errors.TraceError,
    errors.NotHermitian,
    errors.NotPSD,
)


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _report(command, argv, inputs, outputs, residuals=None, passed=None):
    return {
        "command": command,
        "argv": list(argv),
        "inputs": inputs,
        "outputs": outputs,
        "residuals": residuals or {},
        "passed": passed,
    }


def cmd_gen(args):
    if args.type == "random":
        if args.n is None:
            raise CliError(EXIT_ARGS, "--n is required for random states")
        state = random_state(args.n, args.seed)
    elif args.type == "ghz":
        state = make_named_state("ghz")
    elif args.type == "basis":
        bits = args.bits if args.bits is not None else "0" * (args.n or 0)
        state = make_named_state("basis", bits)
    elif args.type == "singlets":
        if args.n is None or args.n % 2:
            raise CliError(EXIT_ARGS, "--n must be an even qubit count for singlets")
        state = make_named_state("singlets", args.n // 2)
    else:
        if args.n is None:
            raise CliError(EXIT_ARGS, f"--n is required for {args.type} states")
        state = make_named_state(args.type, args.n)
    text = serialize_state(state)
    if args.out is None:
        sys.stdout.write(text)
        return None, f"generated {args.type} state on {state.n} qubits"
    try:
        write_state(args.out, state)
    except OSError as exc:
        raise CliError(EXIT_IO, str(exc)) from exc
    rep = _report("gen", args.argv, {"type": args.type, "n": state.n, "seed": args.seed},
                  {"path": args.out, "n": state.n})
    return rep, f"wrote {args.type} state ({state.n} qubits) to {args.out}"


def _load(reader, path):
    try:
        return reader(path)
    except OSError as exc:
        raise CliError(EXIT_IO, str(exc)) from exc
    except _INPUT_ERRORS as exc:
        raise CliError(EXIT_IO, f"{path}: {exc}") from exc


def cmd_tangle(args):
    psi = _load(read_state, args.inp)
    outputs = {"n": psi.n}
    residuals = {}
    lines = []
    if not args.oracle or psi.n == 3 or psi.n % 2 == 0:
        tau = n_tangle(psi)
        outputs["tau"] = tau
        lines.append(f"tau = {tau:.12g}")
        if psi.n % 2 == 0:
            outputs["concurrence"] = concurrence_pure(psi)
    if args.oracle:
        raw = epsilon_contraction_oracle(psi, args.last_pair_qubit, allow_large=args.allow_large)
        outputs["oracle"] = raw
        outputs["last_pair_qubit"] = args.last_pair_qubit or psi.n
        lines.append(f"oracle = {raw:.12g}")
        if "tau" in outputs:
            residuals["oracle_discrepancy"] = abs(outputs["tau"] - raw)
    rep = _report("tangle", args.argv, {"path": args.inp}, outputs, residuals)
    return rep, "; ".join(lines)


def cmd_taumin(args):
    rho = _load(read_density, args.inp)
    outputs = {"n": rho.n, "lambdas": [float(x) for x in lambda_spectrum(rho).lambdas]}
    lines = []
    if rho.n % 2 == 0:
        outputs["tau_min_analytic"] = tau_min_analytic(rho).value
        lines.append(f"tau_min (analytic) = {outputs['tau_min_analytic']:.12g}")
    elif not args.convex_roof:
        raise errors.OddNUnsupported(
            f"no analytic tau_min for odd n={rho.n}; rerun with --convex-roof for an upper bound"
        )
    residuals = {}
    if args.convex_roof:
        cfg = ConvexRoofConfig(restarts=args.restarts, seed=args.seed)
        res = convex_roof_minimize(rho, cfg=cfg)
        outputs["tau_min_convex_roof"] = res.value
        outputs["convex_roof_converged"] = res.converged
        outputs["witness"] = [
            {"p": float(p), "qst": serialize_state(s)}
            for p, s in zip(res.witness.probabilities, res.witness.states)
        ]
        lines.append(f"tau_min (convex roof, upper bound) = {res.value:.12g}")
        if "tau_min_analytic" in outputs:
            residuals["convex_roof_minus_analytic"] = res.value - outputs["tau_min_analytic"]
    rep = _report("taumin", args.argv, {"path": args.inp, "seed": args.seed,
                                        "restarts": args.restarts}, outputs, residuals)
    return rep, "; ".join(lines)


def cmd_verify(args):
    res = run_suite(args.suite, n=args.n, trials=args.trials, seed=args.seed, tol=args.tol)
    inputs = {"suite": args.suite, "n": args.n, "trials": args.trials, "seed": args.seed,
              "tol": res.tol}
    outputs = {"checks": len(res.residuals), "max_residual": res.max_residual, **res.details}
    rep = _report("verify", args.argv, inputs, outputs,
                  {"max": res.max_residual, "all": res.residuals}, res.passed)
    verdict = "PASS" if res.passed else "FAIL"
    summary = f"{verdict} {args.suite}: {len(res.residuals)} checks, max residual {res.max_residual:.3e} (tol {res.tol:.0e})"
    return rep, summary


def build_parser():
    parser = argparse.ArgumentParser(prog="qtangle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a named or random state as QST")
    g.add_argument("--type", required=True, choices=["cat", "w", "ghz", "singlets", "basis", "random"])
    g.add_argument("--n", type=int, help="number of qubits")
    g.add_argument("--bits", help="bitstring for --type basis")
    g.add_argument("--seed", type=int, default=0, help="seed for --type random")
    g.add_argument("--out", help="output path; QST goes to stdout if omitted")
    g.set_defaults(func=cmd_gen)

    t = sub.add_parser("tangle", help="n-tangle of a QST file")
    t.add_argument("--in", dest="inp", required=True, help="QST file")
    t.add_argument("--oracle", action="store_true", help="also evaluate the literal contraction")
    t.add_argument("--last-pair-qubit", type=int, help="distinguished qubit for the oracle (default n)")
    t.add_argument("--allow-large", action="store_true", help="permit the oracle up to n=6")
    t.set_defaults(func=cmd_tangle)

    m = sub.add_parser("taumin", help="mixed-state tau_min of a QDM file")
    m.add_argument("--in", dest="inp", required=True, help="QDM file")
    m.add_argument("--convex-roof", action="store_true", help="also run the ensemble search (n <= 4)")
    m.add_argument("--restarts", type=int, default=20, help="convex-roof restarts")
    m.add_argument("--seed", type=int, default=0, help="convex-roof seed")
    m.set_defaults(func=cmd_taumin)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=SUITES)
    v.add_argument("--n", type=int, help="qubits (default 4; weq runs 3..6)")
    v.add_argument("--trials", type=int, help="trial count (suite default if omitted)")
    v.add_argument("--seed", type=int, default=0, help="master seed")
    v.add_argument("--tol", type=float, help="defaults: " + ", ".join(f"{k}={v:g}" for k, v in DEFAULT_TOL.items()))
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    start = time.perf_counter()
    try:
        report, summary = args.func(args)
        code = EXIT_OK if report is None or report["passed"] in (None, True) else EXIT_FAIL
    except CliError as exc:
        report, summary, code = None, f"error: {exc}", exc.code
    except _RESOURCE_ERRORS as exc:
        report, summary, code = None, f"error: {exc}", EXIT_RESOURCE
    except _DOMAIN_ERRORS as exc:
        report, summary, code = None, f"error: {exc}", EXIT_DOMAIN
    except errors.QTangleError as exc:
        report, summary, code = None, f"error: {exc}", EXIT_ARGS
    if report is None and code != EXIT_OK:
        report = _report(args.command, argv, {}, {}, passed=False)
        report["error"] = summary.removeprefix("error: ")
        report["exit_code"] = code
    if report is not None:
        # wall time is the only field that varies between identical seeded runs
        report["wall_time_s"] = time.perf_counter() - start
        json.dump(report, sys.stdout, indent=2)
        sys.stdout.write("\n")
    print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
