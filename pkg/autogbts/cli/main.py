import argparse
import logging
import sys
from typing import List, Optional

import autogbts as ag
from autogbts import exc
from autogbts.cli import bench, verify
from autogbts.cli.report import RunReport
from autogbts.conf import setting
from autogbts.hafnian.dispatch import ENGINES

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_FORMAT = 2
EXIT_PRECONDITION = 3
EXIT_UNPHYSICAL = 4


def number_text(value: float) -> str:
    """
    A float at 15 significant digits, without a negative zero.
    """
    return f"{value + 0.0:.15g}"


def reps_from(text: Optional[str]) -> Optional[List[int]]:

    if text is None:
        return None

    try:
        return [int(value) for value in text.replace(",", " ").split()]
    except ValueError:
        raise exc.FormatException(
            f"The repetition counts '{text}' must be a list of integers."
        )


def cmd_lhaf(args) -> int:

    matrix = ag.ComplexMatrix.from_file(args.matrix_file)

    value = ag.lhaf_auto(
        matrix=matrix, reps=reps_from(args.reps), engine=args.engine, w=args.bandwidth
    )

    print(f"{number_text(value.real)} {number_text(value.imag)}")

    return EXIT_OK


def cmd_prob(args) -> int:

    circuit = ag.CircuitSpec.from_json(args.circuit_file)
    pattern = ag.parse_pattern(args.pattern, modes=circuit.modes)

    print(number_text(ag.prob(ag.prepare_state(circuit), pattern.counts, engine=args.engine)))

    return EXIT_OK


def cmd_sample(args) -> int:

    report = RunReport(command=args.argv)

    with report.stage("prepare"):
        report.add_input(args.circuit_file)
        circuit = ag.CircuitSpec.from_json(args.circuit_file)
        config = ag.SamplerConfig(c=args.threshold, seed=args.seed, engine=args.engine)

    with report.stage("sample"):
        samples, counters = ag.batch_sample_with_counters(
            circuit=circuit, config=config, total_samples=args.samples, n_cores=args.cores
        )

    for pattern in samples:
        print(pattern.text)

    report.calls = counters
    report.output = {
        pattern.text: frequency for pattern, frequency in ag.frequency_table(samples).items()
    }
    report.output_to_json(args.report)

    return EXIT_OK


def cmd_verify(args) -> int:

    checks = verify.run_suite(suite=args.suite, seed=args.seed)

    for check in checks:
        print(check.line)

    passed = all(check.passed for check in checks)

    print("PASS" if passed else "FAIL")

    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def cmd_bench(args) -> int:

    if args.out is None:
        bench.bench(kernel=args.kernel, sweep=args.sweep, fixed=args.set)
        return EXIT_OK

    with open(args.out, "w", newline="", encoding="utf-8") as out:
        bench.bench(kernel=args.kernel, sweep=args.sweep, fixed=args.set, out=out)

    return EXIT_OK


def parser_from() -> argparse.ArgumentParser:

    parser = argparse.ArgumentParser(
        prog="autogbts",
        description="Exact Gaussian boson threshold sampling of shallow local optical circuits.",
    )
    parser.add_argument(
        "--log-level",
        default=None,
        help="The logging level, [output] log_level of the config by default.",
    )

    subparsers = parser.add_subparsers(dest="command", required=True)

    lhaf = subparsers.add_parser("lhaf", help="The loop hafnian of a matrix file.")
    lhaf.add_argument("matrix_file")
    lhaf.add_argument("--engine", default="auto", choices=ENGINES)
    lhaf.add_argument("--reps", default=None, help="Repetition counts, e.g. '1,2,0,3'.")
    lhaf.add_argument("--bandwidth", type=int, default=None)
    lhaf.set_defaults(func=cmd_lhaf)

    prob = subparsers.add_parser("prob", help="The probability of a photon pattern.")
    prob.add_argument("circuit_file")
    prob.add_argument("--pattern", required=True, help="Photon counts, e.g. '0 2 1'.")
    prob.add_argument("--engine", default="auto", choices=ENGINES)
    prob.set_defaults(func=cmd_prob)

    sample = subparsers.add_parser("sample", help="Threshold samples of a circuit.")
    sample.add_argument("circuit_file")
    sample.add_argument("--threshold", type=int, required=True, help="The detector resolution c.")
    sample.add_argument("--samples", type=int, required=True)
    sample.add_argument("--seed", type=int, default=0)
    sample.add_argument("--engine", default="auto", choices=ENGINES)
    sample.add_argument("--cores", type=int, default=None)
    sample.add_argument("--report", default=None, help="Path of the JSON run report.")
    sample.set_defaults(func=cmd_sample)

    verify_parser = subparsers.add_parser("verify", help="Run the verification suites.")
    verify_parser.add_argument("--suite", default="all", choices=verify.SUITES)
    verify_parser.add_argument("--seed", type=int, default=0)
    verify_parser.set_defaults(func=cmd_verify)

    bench_parser = subparsers.add_parser("bench", help="Time a kernel over a parameter sweep.")
    bench_parser.add_argument("--kernel", required=True, choices=tuple(bench.RUNS))
    bench_parser.add_argument("--sweep", required=True, help="e.g. n=500:2000:500")
    bench_parser.add_argument("--set", action="append", default=None, help="e.g. w=3")
    bench_parser.add_argument("--out", default=None, help="CSV path, stdout by default.")
    bench_parser.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[List[str]] = None) -> int:

    args = parser_from().parse_args(argv)
    args.argv = list(argv) if argv is not None else sys.argv[1:]

    logging.basicConfig(
        level=(args.log_level or setting("output", "log_level", "INFO")).upper(),
        stream=sys.stderr,
        format="%(levelname)s:%(name)s:%(message)s",
    )

    try:
        return args.func(args)
    except (exc.FormatException, OSError) as e:
        logger.error(e)
        return EXIT_FORMAT
    except (
        exc.MatrixException,
        exc.HafnianException,
        exc.CircuitException,
        exc.SamplerException,
    ) as e:
        logger.error(e)
        return EXIT_PRECONDITION
    except (exc.UnphysicalStateException, exc.NumericalException) as e:
        logger.error(e)
        return EXIT_UNPHYSICAL


if __name__ == "__main__":
    sys.exit(main())
