"""``staircase`` command-line interface.

Exit codes: 0 success, 2 usage error, 3 factorization budget exhausted,
4 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import classes, depth, geometry, staircase, tangency, verify
from .factor import FactorizationBudgetExceeded

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_INVARIANT = 0, 2, 3, 4
MODEL_T_MAX = 1000


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    n: int | None = None
    bins: int = 2000
    t_max: int = 50
    output: str | None = None
    format: str = "csv"
    threads: int = 1
    factor_budget: int | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.bins < 1:
            raise UsageError("--bins must be >= 1")
        if self.t_max < 1:
            raise UsageError("--t-max must be >= 1")
        if self.threads < 1:
            raise UsageError("--threads must be >= 1")
        if self.format not in ("csv", "json", "svg"):
            raise UsageError(f"unknown format {self.format!r}")


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def cmd_classes(cfg: RunConfig) -> int:
    cl = classes.enumerate_classes_fast(cfg.n, chunks=cfg.threads, workers=cfg.threads)
    rows = [(*f, *q) for f, q in zip(cl.forms, cl.quadruples())]
    if cfg.format == "json":
        keys = ("A", "B", "C", "a", "b", "c", "d")
        _emit(cfg, json.dumps({"n": cfg.n, "classes": [dict(zip(keys, r)) for r in rows]}, indent=1) + "\n")
    else:
        lines = ["A,B,C,a,b,c,d"] + [",".join(map(str, r)) for r in rows]
        _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


def _l1(counts: list[int], model: list[float]) -> float:
    total = sum(counts) or 1
    return math.fsum(abs(c / total - m) for c, m in zip(counts, model))


def cmd_rmc(cfg: RunConfig) -> int:
    n, bins = cfg.n, cfg.bins
    if cfg.extra.get("bottom_only"):
        mult = tangency.rmc0(n)
        hist = depth.weighted_histogram(tangency.rmc0_points(mult), bins)
        model = [1.0 / bins] * bins
        size_key, size = "points", sum(mult)
    else:
        recs = depth.rmc(n, workers=cfg.threads, chunks=cfg.threads)
        hist = depth.histogram(depth.heights(recs), bins)
        masses = staircase.build_staircase(MODEL_T_MAX).bin_masses(bins)
        total = math.fsum(masses)
        model = [m / total for m in masses]
        size_key, size = "classes", len(recs)
    counts = [c for _, _, c in hist]
    report = {"n": n, "bins": bins, "bottom_only": bool(cfg.extra.get("bottom_only")), size_key: size,
              "staircase_t_max": MODEL_T_MAX, "l1_distance": _l1(counts, model)}
    if cfg.format == "json":
        report["histogram"] = [{"bin_lo": str(lo), "bin_hi": str(hi), "count": c} for lo, hi, c in hist]
        _emit(cfg, json.dumps(report, indent=1) + "\n")
        return EXIT_OK
    lines = ["bin_lo,bin_hi,count"] + [f"{lo},{hi},{c}" for lo, hi, c in hist]
    _emit(cfg, "\n".join(lines) + "\n")
    sidecar = json.dumps(report, indent=1) + "\n"
    if cfg.output:
        Path(cfg.output).with_suffix(".json").write_text(sidecar, encoding="utf-8", newline="\n")
    else:
        sys.stderr.write(sidecar)
    return EXIT_OK


def cmd_stairs(cfg: RunConfig) -> int:
    model = staircase.build_staircase(cfg.t_max)
    if cfg.format == "json":
        stairs = [{"words": s.words, "t": s.t, "kind": s.kind.value, "width": s.width, "height": s.height,
                   "d_W": s.mass} for s in model.stairs]
        _emit(cfg, json.dumps({"t_max": cfg.t_max, "mass": model.mass, "stairs": stairs}, indent=1) + "\n")
    else:
        _emit(cfg, model.to_csv())
        sys.stderr.write(f"mass={model.mass:.10f}\n")
    return EXIT_OK


def cmd_tangency(cfg: RunConfig) -> int:
    c1, c2 = cfg.extra["c1"], cfg.extra["c2"]
    if c1 + c2 <= 0:
        raise UsageError("need c1 + c2 > 0")
    T = tangency.tangency_number(c1, c2, budget=cfg.factor_budget)
    est = tangency.tangency_estimate(c1, c2, budget=cfg.factor_budget)
    _emit(cfg, f"T={T} estimate={float(est):g}\n")
    return EXIT_OK


def cmd_spikes(cfg: RunConfig) -> int:
    if cfg.n < 2:
        raise UsageError("spikes needs n >= 2")
    rep = tangency.predict_spikes(cfg.n, cfg.factor_budget)
    if not rep.rows:
        _emit(cfg, "no spikes predicted\n")
    elif cfg.format == "json":
        rows = [dict(asdict(r), positions_modulus=r.modulus, magnitude_class=r.magnitude) for r in rep.rows]
        _emit(cfg, json.dumps({"n": cfg.n, "spikes": rows}, indent=1) + "\n")
    else:
        _emit(cfg, rep.to_csv())
    return EXIT_OK


def cmd_draw(cfg: RunConfig) -> int:
    what = cfg.extra["what"]
    nums = cfg.extra["values"]
    try:
        if what == "depth-circles":
            if len(nums) != 1:
                raise UsageError("draw depth-circles MAX_DEPTH")
            scene = geometry.render_depth_circles(int(nums[0]))
        elif what == "packing":
            if len(nums) != 4:
                raise UsageError("draw packing A B C D --max-curvature K")
            scene = geometry.render_packing([int(x) for x in nums], cfg.extra["max_curvature"])
        else:
            if len(nums) != 4:
                raise UsageError("draw epsilon T U V W --eps E [E ...]")
            c = [int(x) for x in nums]
            eps = cfg.extra["eps"] or [geometry.max_epsilon(c)]
            scene = geometry.render_epsilon_circles(c, eps)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    fmt = cfg.format if cfg.extra.get("format_given") else "svg"
    _emit(cfg, scene.to_csv() if fmt == "csv" else scene.to_svg(label_px=cfg.extra["label_px"]))
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    ok = verify.run_all(lambda line: print(line, flush=True))
    return EXIT_OK if ok else EXIT_INVARIANT


COMMANDS = {"classes": cmd_classes, "rmc": cmd_rmc, "stairs": cmd_stairs, "tangency": cmd_tangency,
            "spikes": cmd_spikes, "draw": cmd_draw, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--format", choices=("csv", "json", "svg"))
    common.add_argument("--threads", type=_positive, help="worker processes (default: $STAIRCASE_THREADS or CPU count)")
    common.add_argument("--factor-budget", type=_positive, help="Pollard rho iteration budget")

    p = argparse.ArgumentParser(prog="staircase", description="Apollonian staircase experiments")
    sub = p.add_subparsers(dest="subcommand", required=True)
    sp = sub.add_parser("classes", parents=[common], help="list ID(n)")
    sp.add_argument("n", type=_positive)
    sp = sub.add_parser("rmc", parents=[common], help="histogram of heights MC/n")
    sp.add_argument("n", type=_positive)
    sp.add_argument("--bins", type=_positive, default=2000)
    sp.add_argument("--bottom-only", action="store_true")
    sp = sub.add_parser("stairs", parents=[common], help="stair table")
    sp.add_argument("--t-max", type=_positive, default=50)
    sp = sub.add_parser("tangency", parents=[common], help="T(c1, c2) and its estimate")
    sp.add_argument("c1", type=int)
    sp.add_argument("c2", type=int)
    sp = sub.add_parser("spikes", parents=[common], help="predicted spike families of RMC_0(n)")
    sp.add_argument("n", type=_positive)
    sp = sub.add_parser("draw", parents=[common], help="SVG/CSV drawings")
    sp.add_argument("what", choices=("depth-circles", "packing", "epsilon"))
    sp.add_argument("values", nargs="+", help="max depth, a Descartes quadruple, or a coefficient quadruple")
    sp.add_argument("--max-curvature", type=_positive, default=100)
    sp.add_argument("--eps", type=float, nargs="+")
    sp.add_argument("--label-px", type=float, default=12.0)
    sub.add_parser("verify", parents=[common], help="run the invariant suite")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    threads = args.threads or classes.default_threads()
    extra = {k: v for k, v in vars(args).items()
             if k not in ("subcommand", "n", "bins", "t_max", "output", "format", "threads", "factor_budget")}
    extra["format_given"] = args.format is not None
    return RunConfig(
        subcommand=args.subcommand,
        n=getattr(args, "n", None),
        bins=getattr(args, "bins", 2000),
        t_max=getattr(args, "t_max", 50),
        output=args.output,
        format=args.format or "csv",
        threads=threads,
        factor_budget=args.factor_budget,
        extra=extra,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.subcommand](cfg)
    except UsageError as exc:
        print(f"staircase: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FactorizationBudgetExceeded as exc:
        print(f"staircase: factorization budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (AssertionError, depth.ReductionError) as exc:
        print(f"staircase: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
