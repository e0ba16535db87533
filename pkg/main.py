"""
q-series verifier - Main Entry Point
Command-line driver for identity verification runs, positivity sweeps and expansion
of single q-series objects.
"""

import argparse
import os
import sys
from typing import Dict, List, Optional

from dotenv import load_dotenv
from loguru import logger

from algebra.polycore import TruncSeries
from algebra.qcomb import q_binom
from models.parameters import GParams, KernelKind
from models.run_config import Command, IntRange, OutputFormat, RunConfig
from services.report_service import ReportService
from services.sweep_service import (
    SweepService,
    TaskBatch,
    conjecture_tasks,
    identity_param_names,
    identity_tasks,
    point_task,
    positivity_tasks,
    theorem1_tasks,
    verify_all_tasks,
)
from verifiers import identities
from verifiers.bressoud import g_poly
from verifiers.series import ProductFactor, ProductSideSpec, product_side
from verifiers.transforms import kernel

EXIT_OK = 0
EXIT_CONFIG = 2

RANGE_FLAGS = ("L", "a", "k", "n", "nu", "s")


def configure_logging(verbose: bool = False) -> None:
    level = "DEBUG" if verbose else os.getenv("QSERIES_LOG_LEVEL", "WARNING").upper()
    logger.remove()
    logger.add(sys.stderr, level=level, format="<level>{level: <8}</level> {name}:{line} - {message}")


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


def parse_product_factors(text: str) -> List[ProductFactor]:
    """``"21,8,13/21;4/4"`` -> [(q^21, q^8, q^13; q^21)_inf, (q^4; q^4)_inf]."""
    factors = []
    for chunk in filter(None, (part.strip() for part in text.split(";"))):
        exponents, sep, modulus = chunk.partition("/")
        if not sep:
            raise ValueError(f"product factor {chunk!r} needs the form a,b,.../m")
        factors.append(ProductFactor(tuple(int(e) for e in exponents.split(",")), int(modulus)))
    return factors


class QSeriesCLI:
    """
    Command-line interface for the exact q-series verifier.
    """

    def __init__(self):
        load_dotenv()
        self.default_parallelism = _env_int("QSERIES_PARALLELISM", 1)
        self.render_limit = _env_int("QSERIES_RENDER_LIMIT", identities.DEFAULT_RENDER_LIMIT)
        self.parser = self.build_parser()

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="main.py", description="Exact verification of q-series identities and positivity claims"
        )
        sub = parser.add_subparsers(dest="command", required=True)

        def common(p: argparse.ArgumentParser) -> None:
            p.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.TEXT.value)
            p.add_argument("--output", help="write the report stream to this file")
            p.add_argument("--parallelism", type=int, help="worker pool size (env QSERIES_PARALLELISM)")
            p.add_argument("--stable", action="store_true", help="write elapsedMillis as 0")
            p.add_argument("--verbose", action="store_true", help="debug logging")

        def ranges(p: argparse.ArgumentParser, names) -> None:
            for name in names:
                p.add_argument(f"--{name}", metavar="A..B", help=f"inclusive range for {name}")

        verify = sub.add_parser("verify", help="verify registered identities over parameter ranges")
        verify.add_argument("identity_ids", nargs="+", metavar="ID")
        verify.add_argument("--cap", type=int, help="truncation cap for series identities")
        ranges(verify, RANGE_FLAGS)
        common(verify)

        verify_all = sub.add_parser("verify-all", help="every identity at its default range or cap")
        verify_all.add_argument("--cap", type=int, help="override the series caps")
        common(verify_all)

        positivity = sub.add_parser("sweep-positivity", help="kernels, proven G families, Borwein, Theorem 1")
        ranges(positivity, ("L", "n", "nu"))
        positivity.add_argument("--show-passing", action="store_true")
        common(positivity)

        conjecture = sub.add_parser("sweep-conjecture", help="G(N, M, alpha, beta, K) >= 0 over the region")
        conjecture.add_argument("--K", default="2..4", metavar="A..B")
        conjecture.add_argument("--size", type=int, default=16, help="bound on N + M")
        conjecture.add_argument("--alphaK", metavar="A..B")
        conjecture.add_argument("--betaK", metavar="A..B")
        conjecture.add_argument("--N", type=int, help="check the single point (N, M, alphaK, betaK, K)")
        conjecture.add_argument("--M", type=int)
        conjecture.add_argument("--family", choices=["region", "theorem1"], default="region")
        ranges(conjecture, ("nu", "L"))
        conjecture.add_argument("--show-passing", action="store_true")
        common(conjecture)

        expand = sub.add_parser("expand", help="print one exact object")
        expand.add_argument("--verbose", action="store_true")
        builders = expand.add_subparsers(dest="builder", required=True)
        qb = builders.add_parser("qbinom", help="[m+n; m]_q")
        qb.add_argument("m", type=int)
        qb.add_argument("n", type=int)
        kern = builders.add_parser("kernel", help="C, W or O kernel entry")
        kern.add_argument("kind", choices=[k.value for k in KernelKind])
        kern.add_argument("L", type=int)
        kern.add_argument("k", type=int)
        g = builders.add_parser("g", help="Bressoud polynomial")
        for name in ("N", "M", "alphaK", "betaK", "K"):
            g.add_argument(f"--{name}", type=int, required=True)
        prod = builders.add_parser("product", help="truncated infinite product")
        prod.add_argument("--factors", default="", help='e.g. "21,8,13/21;4/4"')
        prod.add_argument("--denominator", action="store_true", help="divide by (q)_inf")
        prod.add_argument("--cap", type=int, default=20)
        return parser

    # ------------------------------------------------------------------

    def make_config(self, args: argparse.Namespace) -> RunConfig:
        parsed: Dict[str, IntRange] = {}
        for name in RANGE_FLAGS:
            value = getattr(args, name, None)
            if value is not None:
                parsed[name] = IntRange.parse(value)
        parallelism = getattr(args, "parallelism", None)
        if parallelism is None:
            parallelism = self.default_parallelism
        return RunConfig(
            command=Command(args.command),
            identity_ids=getattr(args, "identity_ids", None) or [],
            ranges=parsed,
            cap=getattr(args, "cap", None),
            output=getattr(args, "output", None),
            format=OutputFormat(getattr(args, "format", OutputFormat.TEXT.value)),
            parallelism=parallelism,
            stable=getattr(args, "stable", False),
            size=getattr(args, "size", 16),
            family=getattr(args, "family", "region"),
            show_passing=getattr(args, "show_passing", True)
            if args.command not in ("sweep-positivity", "sweep-conjecture")
            else args.show_passing or getattr(args, "format", "text") == OutputFormat.JSON.value,
            render_limit=self.render_limit,
        )

    def build_batch(self, config: RunConfig, args: argparse.Namespace) -> TaskBatch:
        if config.command == Command.VERIFY:
            accepted = set().union(*(identity_param_names(i) for i in config.identity_ids))
            unused = sorted(set(config.ranges) - accepted)
            if unused:
                flags = ", ".join(f"--{name}" for name in unused)
                raise ValueError(f"{flags} does not apply to {' '.join(config.identity_ids)}")
            batch = TaskBatch()
            for identity_id in config.identity_ids:
                batch.extend(identity_tasks(identity_id, config.ranges, config.cap, config.render_limit))
            return batch
        if config.command == Command.VERIFY_ALL:
            return verify_all_tasks(config.cap, config.render_limit)
        if config.command == Command.SWEEP_POSITIVITY:
            return positivity_tasks(config.ranges, config.render_limit)

        K_range = IntRange.parse(args.K)
        if config.family == "theorem1":
            nu = config.ranges.get("nu", IntRange(start=1, stop=3)).values()
            L = config.ranges.get("L", IntRange(start=0, stop=14)).values()
            return theorem1_tasks(nu, L, config.render_limit)
        if args.N is not None or args.M is not None:
            if None in (args.N, args.M, args.alphaK, args.betaK) or K_range.start != K_range.stop:
                raise ValueError("a single point needs --N, --M, --alphaK, --betaK and one --K")
            point = GParams(
                N=args.N,
                M=args.M,
                alpha_k=IntRange.parse(args.alphaK).start,
                beta_k=IntRange.parse(args.betaK).start,
                K=K_range.start,
            )
            return point_task(point, config.render_limit)
        alpha = IntRange.parse(args.alphaK) if args.alphaK else None
        beta = IntRange.parse(args.betaK) if args.betaK else None
        return conjecture_tasks(K_range.values(), config.size, alpha, beta, config.render_limit)

    def run_expand(self, args: argparse.Namespace) -> int:
        if args.builder == "qbinom":
            print(q_binom(args.m, args.n).render())
        elif args.builder == "kernel":
            print(kernel(KernelKind(args.kind), args.L, args.k).render())
        elif args.builder == "g":
            params = GParams(N=args.N, M=args.M, alpha_k=args.alphaK, beta_k=args.betaK, K=args.K)
            print(g_poly(params).render())
        elif args.builder == "product":
            spec = ProductSideSpec(tuple(parse_product_factors(args.factors)), args.denominator)
            result: TruncSeries = product_side(spec, args.cap)
            print(result.render())
        else:
            raise ValueError(f"unknown builder {args.builder!r}")
        return EXIT_OK

    def run(self, argv: Optional[List[str]] = None) -> int:
        args = self.parser.parse_args(argv)
        try:
            configure_logging(getattr(args, "verbose", False))
            if args.command == Command.EXPAND.value:
                return self.run_expand(args)
            config = self.make_config(args)
            logger.info("command {} with {}", config.command.value, config.model_dump(exclude={"command"}))
            batch = self.build_batch(config, args)
            service = SweepService(config.parallelism)
            reports = service.run(batch)
            summary = service.summarize(reports, batch.skipped)
            writer = ReportService(config.format, config.output, config.stable, config.show_passing)
            writer.write(reports, summary)
            return summary.exit_code
        except (ValueError, OSError) as e:
            # unknown ids, missing parameters, invalid ranges and unwritable output
            print(f"error: {e}", file=sys.stderr)
            return EXIT_CONFIG


def main(argv: Optional[List[str]] = None) -> int:
    return QSeriesCLI().run(argv)


if __name__ == "__main__":
    sys.exit(main())
