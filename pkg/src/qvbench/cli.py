"""Command-line benchmark driver.

Default action is a width sweep; ``--suite`` switches to one of the
statistical verification suites. Exit codes: 0 success, 1 config error,
2 capacity error at the minimum width, 3 I/O error.
"""

import argparse
import csv
import os
import sys

from . import backend
from .bench import DEFAULT_TIME_LIMIT_SECONDS, SweepConfig, run_sweep, scaling_report
from .circuit import generate_qv_circuit, serialize_circuit
from .errors import CapacityError, InsufficientDataError
from .results import emit_results, render_scaling_svg
from .stats import (
    finite_n_marginal_fit,
    haar_amplitude_squares,
    hop_convergence_suite,
    noisy_hop_suite,
    porter_thomas_fit,
)
from .sampling import RngStream, derive_seed


def _parse_schedule(text):
    # "17:10,21:1" -> ((17, 10), (21, 1))
    entries = []
    for chunk in text.split(","):
        w, t = chunk.split(":")
        entries.append((int(w), int(t)))
    return tuple(entries)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qvbench",
        description="Quantum-volume statevector benchmark harness",
        exit_on_error=False,
    )
    parser.add_argument("--min-qubits", type=int, default=4)
    parser.add_argument("--max-qubits", type=int, default=8)
    parser.add_argument("--trials", type=int, default=100, help="circuit instances per width")
    parser.add_argument("--shots", type=int, default=0, help="0 = exact ideal HOP only")
    parser.add_argument("--seed", type=int, default=1, help="master seed")
    parser.add_argument("--threads", type=int, default=0, help="0 = all hardware threads")
    parser.add_argument("--fusion", choices=("on", "off"), default="off")
    parser.add_argument(
        "--time-limit-seconds", type=float, default=DEFAULT_TIME_LIMIT_SECONDS
    )
    parser.add_argument(
        "--noise-p",
        default=None,
        help="two-qubit Pauli insertion probability; comma list for --suite noise",
    )
    parser.add_argument("--memory-budget", type=int, default=0, help="bytes; 0 = auto")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", default=None, help="results file path")
    parser.add_argument(
        "--export-circuits", default=None, metavar="DIR", help="write interchange documents"
    )
    parser.add_argument(
        "--suite",
        choices=("hop", "porter-thomas", "marginal", "noise"),
        default=None,
        help="run a verification suite instead of the sweep",
    )
    parser.add_argument("--svg", default=None, metavar="PATH", help="scaling chart output")
    parser.add_argument(
        "--trial-schedule",
        default=None,
        metavar="W:T,...",
        help="reduce trials at wide circuits, e.g. 17:10,21:1",
    )
    return parser


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _suite_noise_p_values(args):
    text = args.noise_p if args.noise_p is not None else "0.01,0.05,0.2"
    return [float(p) for p in str(text).split(",")]


def _run_suite(args):
    threads = args.threads or None
    if args.suite == "hop":
        rows = hop_convergence_suite(
            range(args.min_qubits, args.max_qubits + 1), args.trials, args.seed, threads
        )
        print("width  mean_hop   stderr     trials")
        for row in rows:
            print(f"{row.width:5d}  {row.mean_hop:.6f}  {row.stderr:.6f}  {row.trials:6d}")
        if args.out:
            _write_csv(
                args.out,
                ("width", "mean_hop", "stderr", "trials"),
                [(r.width, repr(r.mean_hop), repr(r.stderr), r.trials) for r in rows],
            )
    elif args.suite == "porter-thomas":
        width = args.max_qubits
        from .circuit import execute
        from .state import probabilities

        circ = generate_qv_circuit(width, args.seed, 0)
        state, _ = execute(circ, threads=threads)
        fit = porter_thomas_fit(probabilities(state))
        verdict = "pass" if fit.passed else "FAIL"
        print(
            f"porter-thomas width={width}: KS={fit.ks_statistic:.5f} "
            f"threshold={fit.ks_threshold:.5f} -> {verdict}"
        )
        if args.out:
            _write_csv(
                args.out,
                ("width", "ks_statistic", "ks_threshold", "passed"),
                [(width, repr(fit.ks_statistic), repr(fit.ks_threshold), fit.passed)],
            )
    elif args.suite == "marginal":
        dim = 1 << args.min_qubits
        rng = RngStream(derive_seed(args.seed, dim, 0))
        samples = haar_amplitude_squares(rng, dim, 10_000)
        fit = finite_n_marginal_fit(samples, dim)
        verdict = "pass" if fit.passed else "FAIL"
        print(
            f"finite-N marginal N={dim}: KS={fit.ks_statistic:.5f} "
            f"threshold={fit.ks_threshold:.5f} -> {verdict}"
        )
        if args.out:
            _write_csv(
                args.out,
                ("dim", "ks_statistic", "ks_threshold", "passed"),
                [(dim, repr(fit.ks_statistic), repr(fit.ks_threshold), fit.passed)],
            )
    elif args.suite == "noise":
        width = args.max_qubits
        rows = noisy_hop_suite(width, _suite_noise_p_values(args), args.trials, args.seed, threads)
        print("noise_p  mean_hop   stderr     trials")
        for row in rows:
            print(f"{row.noise_p:7.3f}  {row.mean_hop:.6f}  {row.stderr:.6f}  {row.trials:6d}")
        if args.out:
            _write_csv(
                args.out,
                ("noise_p", "mean_hop", "stderr", "trials"),
                [(repr(r.noise_p), repr(r.mean_hop), repr(r.stderr), r.trials) for r in rows],
            )
    return 0


def _export_hook(args):
    if not args.export_circuits:
        return None
    os.makedirs(args.export_circuits, exist_ok=True)

    def hook(width, trial):
        circ = generate_qv_circuit(width, args.seed, trial)
        name = f"qv_w{width:02d}_t{trial:04d}.json"
        with open(os.path.join(args.export_circuits, name), "w") as fh:
            fh.write(serialize_circuit(circ))

    return hook


def _run_sweep(args):
    noise_p = float(args.noise_p) if args.noise_p is not None else None
    config = SweepConfig(
        min_width=args.min_qubits,
        max_width=args.max_qubits,
        trials_per_width=args.trials,
        shots=args.shots,
        master_seed=args.seed,
        threads=args.threads or None,
        fusion=args.fusion == "on",
        time_limit_seconds=args.time_limit_seconds,
        noise_p=noise_p,
        memory_budget_bytes=args.memory_budget or None,
        output_format=args.format,
        output_path=args.out,
        trial_schedule=_parse_schedule(args.trial_schedule) if args.trial_schedule else None,
    )
    config.validate()
    result = run_sweep(config, trial_hook=_export_hook(args))

    for kind, width, message in result.notices:
        print(f"notice [{kind}] width {width}: {message}", file=sys.stderr)
    if not result.records:
        if any(k == "capacity" and w == config.min_width for k, w, _ in result.notices):
            print("capacity error: minimum width exceeds the memory budget", file=sys.stderr)
            return 2
        print("no records produced", file=sys.stderr)
        return 1

    print(f"backend={backend.get_backend()} records={len(result.records)}")
    for dec in result.decisions:
        verdict = f"PASS (QV {dec.quantum_volume})" if dec.passed else "fail"
        print(
            f"width {dec.width:2d}: mean HOP {dec.mean_hop:.4f} "
            f"+/- {dec.stderr:.4f} over {dec.trials} trials -> {verdict}"
        )
    if args.out:
        emit_results(result.records, result.decisions, args.format, args.out)
        print(f"wrote {args.format} results to {args.out}")
    if args.svg:
        try:
            report = scaling_report(result.records)
        except InsufficientDataError as exc:
            print(f"skipping SVG: {exc}", file=sys.stderr)
        else:
            render_scaling_svg(report, args.svg)
            print(f"wrote scaling chart to {args.svg}")
    return 0


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except argparse.ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse internal exits (e.g. --help)
        return 0 if exc.code in (0, None) else 1
    try:
        if args.suite:
            return _run_suite(args)
        return _run_sweep(args)
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
