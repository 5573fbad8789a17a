"""
Command-line interface for witnesspy

Subcommands:
    lnorm       exact, brute-force or see-saw L_k(M) (and L(M) with --local)
    seesaw      see-saw lower bound with its strategy
    qlb         achievable lower bound on q(M)
    gilbert     witness search toward a noisy correlation family
    gisin       Monte Carlo check of the one-bit Gisin-Gisin model
    certify     exact certificate of K_PM / K_D lower bounds
    gen         matrices, packings and run templates
    integerize  scale and truncate a real matrix into an integer witness

Every subcommand accepts --config FILE; values are taken from the command
line first, then from the config section of the same name, then from
WITNESSPY_* environment variables, then from built-in defaults.

Exit codes: 0 success, 1 usage error, 2 input error, 3 resource-cap error,
4 certification failed.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence
import argparse
import logging
import sys

import numpy as np

from .certify import certify_witness, check_violation, eta_bisect, write_certificate
from .config import ConfigParser, TemplateManager
from .core import MatrixIO, gen_family, integerize, make_doubled
from .errors import (
    DegenerateRatioError,
    GuessDominatedError,
    MatrixOverflowError,
    MatrixParseError,
    NoViolationError,
    SizeCapError,
    VectorNormalizationError,
)
from .geometry import (
    BlochConfig,
    correlation_matrix,
    gen_packing,
    load_vectors,
    noisy_family,
    q_lowerbound_alternate,
    q_value,
    save_vectors,
    visibility_family,
)
from .heuristics import seesaw_l2, seesaw_lk
from .norms import SolverConfig, lk_branch_bound, lk_bruteforce, local_bound_bruteforce
from .search import GilbertConfig, run_gilbert, write_dist_history
from .simulation import simulate_gg
from .utils import EnvManager, SerializationUtils

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_NOT_CERTIFIED = 4

logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser reporting usage errors with exit code 1."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _shape(values: Optional[Sequence[int]]):
    return tuple(values) if values else None


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with every subcommand."""
    common = _ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML/JSON run configuration; the section named after the subcommand is used")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"], help="Logging level")

    parser = _ArgumentParser(prog="witnesspy", description="Quantumness witnesses in the prepare-and-measure scenario")
    subparsers = parser.add_subparsers(dest="command", required=True)

    lnorm = subparsers.add_parser("lnorm", parents=[common], help="Compute L_k(M)")
    lnorm.add_argument("matrix", help="Integer matrix file")
    lnorm.add_argument("--shape", type=int, nargs=2, metavar=("N", "M"), help="Dimensions of a headerless matrix file")
    lnorm.add_argument("--k", type=int, help="Group count (default 2)")
    method = lnorm.add_mutually_exclusive_group()
    method.add_argument("--exact", dest="method", action="store_const", const="exact", help="Branch and bound (default)")
    method.add_argument("--bruteforce", dest="method", action="store_const", const="bruteforce", help="Exhaustive enumeration")
    method.add_argument("--seesaw", dest="method", action="store_const", const="seesaw", help="See-saw lower bound")
    method.add_argument("--local", dest="method", action="store_const", const="local", help="Local bound L(M) by enumeration")
    _add_solver_flags(lnorm)
    lnorm.add_argument("--witness", action="store_true", default=None, help="Also print the witness assignment")
    lnorm.add_argument("--restarts", type=int, help="See-saw restarts")
    lnorm.add_argument("--seed", type=int, help="See-saw seed")

    seesaw = subparsers.add_parser("seesaw", parents=[common], help="See-saw lower bound on L_k(M)")
    seesaw.add_argument("matrix", help="Integer or real matrix file")
    seesaw.add_argument("--shape", type=int, nargs=2, metavar=("N", "M"))
    seesaw.add_argument("--real", action="store_true", help="Read a real-valued matrix")
    seesaw.add_argument("--k", type=int, help="Group count (default 2)")
    seesaw.add_argument("--restarts", type=int, help="Restarts (default 10)")
    seesaw.add_argument("--seed", type=int, help="Base seed")

    qlb = subparsers.add_parser("qlb", parents=[common], help="Lower bound on q(M)")
    qlb.add_argument("matrix", help="Integer matrix file")
    qlb.add_argument("--shape", type=int, nargs=2, metavar=("N", "M"))
    qlb.add_argument("--vectors", help="Shared vectors a_i = b_i to start from")
    qlb.add_argument("--fixed", action="store_true", default=None, help="Evaluate the vectors without alternation")
    qlb.add_argument("--restarts", type=int, help="Random restarts (default 10)")
    qlb.add_argument("--seed", type=int, help="Base seed")
    qlb.add_argument("--max-iter", type=int, help="Iteration cap (default 10000)")
    qlb.add_argument("--tol", type=float, help="Improvement threshold (default 1e-10)")

    gilbert = subparsers.add_parser("gilbert", parents=[common], help="Gilbert witness search")
    source = gilbert.add_mutually_exclusive_group()
    source.add_argument("--vectors", help="Shared vectors a_i = b_i")
    source.add_argument("--packing", type=int, help="Generate a packing of this many vectors")
    gilbert.add_argument("--eta", type=float, help="Detection efficiency (or visibility with --visibility)")
    gilbert.add_argument("--visibility", action="store_true", default=None, help="Use the white-noise family p E")
    gilbert.add_argument("--eps", type=float, help="Distance threshold (default 1e-6)")
    gilbert.add_argument("--imax", type=int, help="Iteration cap (default 200000)")
    gilbert.add_argument("--buffer", type=int, help="Buffer size (default 40)")
    gilbert.add_argument("--oracle-restarts", type=int, help="See-saw restarts per oracle call (default 20)")
    gilbert.add_argument("--seed", type=int, help="Base seed")
    gilbert.add_argument("--scale", type=int, help="Integerization scale (default 1000)")
    gilbert.add_argument("--log-every", type=int, help="Progress log interval (default 1000)")
    gilbert.add_argument("--residual-out", help="Write the real residual matrix here")
    gilbert.add_argument("--witness-out", help="Write the integerized witness here")
    gilbert.add_argument("--dist-csv", help="Write the distance history as CSV")
    gilbert.add_argument("--verify", action="store_true", help="Check the integer witness with the exact solver")
    _add_solver_flags(gilbert)

    gisin = subparsers.add_parser("gisin", parents=[common], help="Gisin-Gisin Monte Carlo")
    pairs = gisin.add_mutually_exclusive_group()
    pairs.add_argument("--pairs", help="random:K for K random (a, b) pairs (default random:20)")
    pairs.add_argument("--vectors", help="Simulate every pair of a shared configuration")
    gisin.add_argument("--samples", type=int, help="Rounds per pair (default 1000000)")
    gisin.add_argument("--seed", type=int, help="Master seed")
    gisin.add_argument("--workers", type=int, help="Worker processes (default 1)")
    gisin.add_argument("--chunk", type=int, help="Rounds per chunk")
    gisin.add_argument("--out", help="Write the summary as a key-value file")
    gisin.add_argument("--csv", help="Write the per-pair grid as CSV")

    certify = subparsers.add_parser("certify", parents=[common], help="Certify K_PM / K_D lower bounds")
    certify.add_argument("matrix_path", nargs="?", help="Integer matrix file")
    certify.add_argument("--matrix", dest="matrix_flag", help="Integer matrix file")
    certify.add_argument("--shape", type=int, nargs=2, metavar=("N", "M"))
    certify.add_argument("--vectors", help="Shared vectors a_i = b_i")
    certify.add_argument("--fixed", action="store_true", default=None, help="Use the vectors without alternation")
    certify.add_argument("--restarts", type=int, help="Random restarts of the q alternation (default 10)")
    certify.add_argument("--seed", type=int, help="Base seed")
    certify.add_argument("--eta", type=float, help="Also check the violation at this detection efficiency")
    certify.add_argument("--bisect", action="store_true", default=None, help="Bisect the critical detection efficiency")
    certify.add_argument("--tol", type=float, help="Bisection tolerance (default 1e-9)")
    certify.add_argument("--out", help="Write the machine-readable certificate")
    _add_solver_flags(certify)

    gen = subparsers.add_parser("gen", parents=[common], help="Generate matrices, packings or templates")
    what = gen.add_mutually_exclusive_group(required=True)
    what.add_argument("--family", type=int, help="Write the k x 2^(k-1) family matrix")
    what.add_argument("--doubled", help="Write (M; -M) for a matrix file")
    what.add_argument("--packing", type=int, help="Write a packing of N unit vectors")
    what.add_argument("--template", choices=TemplateManager.list_templates(), help="Write a run template")
    gen.add_argument("--seed", type=int, help="Packing seed")
    gen.add_argument("--iters", type=int, help="Packing descent steps (default 2000)")
    gen.add_argument("--out", help="Output file (matrices and vectors go to stdout when omitted)")

    integer = subparsers.add_parser("integerize", parents=[common], help="Integerize a real matrix")
    integer.add_argument("matrix", help="Real matrix file")
    integer.add_argument("--shape", type=int, nargs=2, metavar=("N", "M"))
    integer.add_argument("--scale", type=int, help="Scale factor (default 1000)")
    integer.add_argument("--out", help="Output file (stdout when omitted)")

    return parser


def _add_solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--guess", type=int, help="Guessed L_k(M) used as initial incumbent")
    parser.add_argument("--threads", type=int, help="Worker processes (env WITNESSPY_THREADS)")
    parser.add_argument("--depth", type=int, help="Parallel split depth (env WITNESSPY_DEPTH)")
    parser.add_argument("--skip-frac", type=float, help="Suffix fraction skipping the prune test (env WITNESSPY_SKIP_FRAC)")
    parser.add_argument(
        "--no-warm-start", dest="warm_start", action="store_false", default=None, help="Skip the see-saw warm start"
    )
    parser.add_argument("--warm-restarts", type=int, help="See-saw restarts for the warm start (default 8)")


class WitnessCLI:
    """
    Runs one parsed command.

    Effective settings are resolved per option (flag, config section,
    environment, default) and logged before the command starts.
    """

    def __init__(self, args: argparse.Namespace, env: Optional[EnvManager] = None):
        self.args = args
        self.env = env or EnvManager()
        self.section: Dict[str, Any] = {}
        if args.config:
            config = ConfigParser.parse_file(args.config)
            self.section = ConfigParser.section(config, args.command)
            ConfigParser.validate_section(args.command, self.section)
        self.effective: Dict[str, Any] = {}

    def option(self, name: str, default: Any = None) -> Any:
        value = getattr(self.args, name, None)
        if value is None:
            value = self.section.get(name, default)
        self.effective[name] = value
        return value

    def solver_config(self) -> SolverConfig:
        return SolverConfig(
            threads=self.option("threads", self.env.get_threads()),
            parallel_depth=self.option("depth", self.env.get_depth()),
            skip_fraction=self.option("skip_frac", self.env.get_skip_fraction()),
            guess=self.option("guess", 0),
            warm_start=self.option("warm_start", True),
            warm_restarts=self.option("warm_restarts", 8),
        )

    def seed(self) -> int:
        return self.option("seed", self.env.get_seed())

    def log_effective(self) -> None:
        logger.info(f"witnesspy {self.args.command}: effective configuration {self.effective}")

    def run(self) -> int:
        handler = getattr(self, f"cmd_{self.args.command}")
        return handler()

    # Commands

    def cmd_lnorm(self) -> int:
        matrix = MatrixIO.load_matrix(self.args.matrix, _shape(self.args.shape))
        k = self.option("k", 2)
        method = self.option("method", "exact")
        show_witness = self.option("witness", False)

        if method == "exact":
            cfg = self.solver_config()
            self.log_effective()
            result = lk_branch_bound(matrix, k, cfg)
            print(result.value)
            if result.guess_dominated:
                logger.warning("Guess exceeds L_k(M); the printed value is the guess")
            elif show_witness:
                print(result.witness)
        elif method == "bruteforce":
            self.log_effective()
            print(lk_bruteforce(matrix, k))
        elif method == "local":
            self.log_effective()
            print(local_bound_bruteforce(matrix))
        else:
            restarts = self.option("restarts", 10)
            seed = self.seed()
            self.log_effective()
            if k == 2:
                report = seesaw_l2(matrix, restarts=restarts, seed=seed)
                print(report.value)
                if show_witness:
                    print(report.strategy)
            else:
                value, groups = seesaw_lk(matrix, k, restarts=restarts, seed=seed)
                print(value)
                if show_witness:
                    print(" ".join(str(g) for g in groups))
        return EXIT_OK

    def cmd_seesaw(self) -> int:
        shape = _shape(self.args.shape)
        if self.args.real:
            matrix = MatrixIO.load_real_matrix(self.args.matrix, shape)
        else:
            matrix = MatrixIO.load_matrix(self.args.matrix, shape)
        k = self.option("k", 2)
        restarts = self.option("restarts", 10)
        seed = self.seed()
        self.log_effective()
        if k == 2:
            report = seesaw_l2(matrix, restarts=restarts, seed=seed)
            print(report.value)
            print(report.strategy)
            logger.info(f"Best restart converged after {report.iterations} iterations")
        else:
            value, groups = seesaw_lk(matrix, k, restarts=restarts, seed=seed)
            print(value)
            print(" ".join(str(g) for g in groups))
        return EXIT_OK

    def cmd_qlb(self) -> int:
        matrix = MatrixIO.load_matrix(self.args.matrix, _shape(self.args.shape))
        vectors_path = self.option("vectors")
        fixed = self.option("fixed", False)
        restarts = self.option("restarts", 10)
        seed = self.seed()
        max_iter = self.option("max_iter", 10_000)
        tol = self.option("tol", 1e-10)
        self.log_effective()

        if vectors_path:
            cfg = BlochConfig.shared(load_vectors(vectors_path))
            value = q_value(matrix, cfg)
            if not fixed:
                alternated, _ = q_lowerbound_alternate(matrix, init=cfg, max_iter=max_iter, tol=tol)
                value = max(value, alternated)
        else:
            value, _ = q_lowerbound_alternate(matrix, init=seed, max_iter=max_iter, tol=tol, restarts=restarts)
        print(SerializationUtils.format_real(value))
        return EXIT_OK

    def cmd_gilbert(self) -> int:
        vectors_path = self.option("vectors")
        packing = self.option("packing")
        seed = self.seed()
        if vectors_path:
            vectors = load_vectors(vectors_path)
        else:
            vectors = gen_packing(packing or 20, seed=seed)
        eta = self.option("eta", 0.8)
        use_visibility = self.option("visibility", False)
        cfg = GilbertConfig(
            epsilon=self.option("eps", 1e-6),
            i_max=self.option("imax", 200_000),
            buffer_size=self.option("buffer", 40),
            oracle_restarts=self.option("oracle_restarts", 20),
            seed=seed,
            log_every=self.option("log_every", 1000),
        )
        scale = self.option("scale", 1000)
        self.log_effective()

        correlations = correlation_matrix(BlochConfig.shared(vectors))
        target = visibility_family(correlations, eta) if use_visibility else noisy_family(correlations, eta)
        residual, dist, state = run_gilbert(target, cfg)
        witness = integerize(residual, scale)
        print(f"dist {SerializationUtils.format_real(dist)}")

        if self.args.residual_out:
            MatrixIO.save_matrix(residual, self.args.residual_out)
        if self.args.witness_out:
            MatrixIO.save_matrix(witness, self.args.witness_out)
        if self.args.dist_csv:
            write_dist_history(state, self.args.dist_csv)

        if self.args.verify:
            if not np.any(witness.entries):
                logger.warning("Integerized witness is zero; nothing to verify")
                return EXIT_NOT_CERTIFIED
            result = lk_branch_bound(witness, 2, self.solver_config())
            report = check_violation(witness, target, result.value)
            print(f"L2 {result.value}")
            print(f"witness_value {SerializationUtils.format_real(report.value)}")
            print(f"violated {str(report.violated).lower()}")
            if not report:
                return EXIT_NOT_CERTIFIED
        return EXIT_OK

    def cmd_gisin(self) -> int:
        samples = self.option("samples", 1_000_000)
        seed = self.seed()
        workers = self.option("workers", 1)
        chunk = self.option("chunk", 1 << 18)
        vectors_path = self.option("vectors")
        pairs_spec = self.option("pairs", "random:20")
        self.log_effective()

        if vectors_path:
            vectors = load_vectors(vectors_path)
            pairs = [(vectors[x], vectors[y]) for x in range(len(vectors)) for y in range(len(vectors))]
        else:
            pairs = _random_pairs(pairs_spec, seed)

        master = np.random.SeedSequence(seed)
        rows: List[List[Any]] = []
        worst_coarse = worst_detected = 0.0
        rates = []
        for index, ((a, b), child) in enumerate(zip(pairs, master.spawn(len(pairs)))):
            report = simulate_gg(a, b, samples, seed=child, chunk_size=chunk, workers=workers)
            dot = float(np.dot(a, b))
            worst_coarse = max(worst_coarse, abs(report.e_coarse - (dot + 1.0) / 2.0))
            worst_detected = max(worst_detected, abs(report.e_detected - dot))
            rates.append(report.detect_rate)
            rows.append([index, dot, report.detect_rate, report.e_detected, report.e_coarse, (dot + 1.0) / 2.0])

        summary = {
            "pairs": len(pairs),
            "samples": samples,
            "seed": seed,
            "max_coarse_deviation": worst_coarse,
            "max_detected_deviation": worst_detected,
            "min_detect_rate": min(rates),
            "max_detect_rate": max(rates),
        }
        print(SerializationUtils.format_key_values(summary))
        if self.args.out:
            SerializationUtils.write_key_values(summary, self.args.out)
        if self.args.csv:
            SerializationUtils.write_csv(
                ["pair", "a_dot_b", "detect_rate", "e_detected", "e_coarse", "e_coarse_expected"], rows, self.args.csv
            )
        return EXIT_OK

    def cmd_certify(self) -> int:
        path = self.args.matrix_flag or self.args.matrix_path
        if not path:
            raise _UsageError("certify needs a matrix file (positional or --matrix)")
        matrix = MatrixIO.load_matrix(path, _shape(self.args.shape))
        vectors_path = self.option("vectors")
        fixed = self.option("fixed", False)
        restarts = self.option("restarts", 10)
        seed = self.seed()
        eta = self.option("eta")
        bisect = self.option("bisect", False)
        tol = self.option("tol", 1e-9)
        solver_cfg = self.solver_config()
        self.log_effective()

        cfg_vectors = BlochConfig.shared(load_vectors(vectors_path)) if vectors_path else None
        cert = certify_witness(matrix, cfg_vectors, solver_cfg, seed=seed, restarts=restarts, alternate=not fixed)
        print(cert.report())
        if self.args.out:
            write_certificate(cert, self.args.out)

        status = EXIT_OK if cert.margin_ok else EXIT_NOT_CERTIFIED
        if eta is not None:
            violated = cert.eta_violated(eta)
            print(f"violated_at_eta {SerializationUtils.format_real(eta)}: {str(violated).lower()}")
            if not violated:
                status = EXIT_NOT_CERTIFIED
        if bisect:
            threshold = eta_bisect(matrix, tol=tol, certificate=cert)
            print(f"eta_threshold {SerializationUtils.format_real(threshold)}")
        return status

    def cmd_gen(self) -> int:
        out = self.args.out
        seed = self.seed()
        if self.args.template:
            if not out:
                raise _UsageError("gen --template needs --out")
            self.log_effective()
            TemplateManager.write_template(self.args.template, out)
            return EXIT_OK
        if self.args.packing is not None:
            iters = self.option("iters", 2000)
            self.log_effective()
            vectors = gen_packing(self.args.packing, seed=seed, iters=iters)
            if out:
                save_vectors(vectors, out)
            else:
                print(len(vectors))
                for row in vectors:
                    print(" ".join(repr(float(v)) for v in row))
            return EXIT_OK

        self.log_effective()
        if self.args.family is not None:
            matrix = gen_family(self.args.family)
        else:
            matrix = make_doubled(MatrixIO.load_matrix(self.args.doubled))
        _emit_matrix(matrix, out)
        return EXIT_OK

    def cmd_integerize(self) -> int:
        real = MatrixIO.load_real_matrix(self.args.matrix, _shape(self.args.shape))
        scale = self.option("scale", 1000)
        self.log_effective()
        _emit_matrix(integerize(real, scale), self.args.out)
        return EXIT_OK


class _UsageError(ValueError):
    """Invalid flag combination detected after parsing."""


def _emit_matrix(matrix, out: Optional[str]) -> None:
    if out:
        MatrixIO.save_matrix(matrix, out)
    else:
        sys.stdout.write(MatrixIO.format_matrix(matrix))


def _random_pairs(pairs_spec: str, seed: int):
    kind, _, count = pairs_spec.partition(":")
    if kind != "random" or not count.isdigit() or int(count) < 1:
        raise _UsageError(f"--pairs must look like random:K, got {pairs_spec!r}")
    rng = np.random.default_rng(seed)
    draws = rng.standard_normal((int(count), 2, 3))
    draws /= np.linalg.norm(draws, axis=2, keepdims=True)
    return [(pair[0], pair[1]) for pair in draws]


def _configure_logging(level: str, log_file: Optional[str]) -> None:
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file, encoding="utf-8"))
    logging.basicConfig(
        level=getattr(logging, level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        handlers=handlers,
        force=True,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point of the witnesspy command.

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE

    env = EnvManager()
    settings = env.get_config_dict()
    _configure_logging(args.log_level or settings["log_level"], settings["log_file"])
    logger.debug(f"Environment defaults: {settings}")

    try:
        return WitnessCLI(args, env).run()
    except SizeCapError as e:
        logger.error(f"Size cap exceeded: {e}")
        return EXIT_CAP
    except (GuessDominatedError, NoViolationError) as e:
        logger.error(f"Certification failed: {e}")
        return EXIT_NOT_CERTIFIED
    except (
        MatrixParseError,
        MatrixOverflowError,
        VectorNormalizationError,
        DegenerateRatioError,
        FileNotFoundError,
    ) as e:
        logger.error(f"Input error: {e}")
        return EXIT_INPUT
    except ValueError as e:
        logger.error(f"Usage error: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
