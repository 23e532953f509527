"""Command line front end.

Four subcommands:

* ``walk``        amplitude grid for one configuration (csv or json)
* ``truncation``  the planner record for one (t, epsilon, N)
* ``verify``      cross-oracle property suite, one line per property
* ``figure1``     four-panel probability dataset, one file per regime

Exit codes: 0 success, 1 verify property failure, 2 configuration
error, 3 numerical failure.  The environment variable QWALK_MAX_ORDER
raises the Bessel order cap when very deep grids need it.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import oracle
from .bounds import TruncationPlan, truncation_k
from .verify import run_suite
from .walk import (
    AmplitudeGrid,
    Dirichlet,
    LeftWall,
    Periodic,
    Unbounded,
    WalkSpec,
    evaluate_grid,
)

__all__ = ["cmd_figure1", "cmd_truncation", "cmd_verify", "cmd_walk", "main"]


@dataclass(frozen=True)
class RunConfig:
    """Validated flags of one invocation."""

    subcommand: str
    spec: WalkSpec | None
    times: np.ndarray | None
    epsilon: float
    method: str
    fmt: str
    out: str | None


def _fmt(value: float) -> str:
    return f"{value:.15g}"


def _boundary(args) -> WalkSpec:
    """Cross-check boundary flags and build the walk spec."""
    name = args.boundary
    if name == "none":
        if args.L is not None or args.R is not None:
            raise ValueError("--L/--R are not allowed with --boundary none")
        boundary = Unbounded()
    elif name == "left":
        if args.L is None:
            raise ValueError("--boundary left requires --L")
        if args.R is not None:
            raise ValueError("--R is not allowed with --boundary left")
        boundary = LeftWall(L=args.L)
    else:
        if args.L is None or args.R is None:
            raise ValueError(f"--boundary {name} requires both --L and --R")
        boundary = (Dirichlet(L=args.L, R=args.R) if name == "dirichlet"
                    else Periodic(L=args.L, R=args.R))
    return WalkSpec(boundary=boundary, x0=args.x0, q=args.q)


def _times(args) -> np.ndarray:
    if args.t is not None and args.t_max is not None:
        raise ValueError("use exactly one of --t or --t-max")
    if args.t is not None:
        if args.t_steps is not None:
            raise ValueError("--t-steps requires --t-max, not --t")
        if args.t < 0:
            raise ValueError(f"--t must be non-negative, got {args.t}")
        return np.array([args.t])
    if args.t_max is None:
        raise ValueError("one of --t or --t-max is required")
    if args.t_max <= 0:
        raise ValueError(f"--t-max must be positive, got {args.t_max}")
    steps = args.t_steps if args.t_steps is not None else 240
    if steps < 1:
        raise ValueError(f"--t-steps must be at least 1, got {steps}")
    return np.linspace(0.0, args.t_max, steps + 1)


def _check_epsilon(epsilon: float) -> None:
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"--epsilon must lie in (0, 1), got {epsilon}")


def _default_sites(spec: WalkSpec, times: np.ndarray) -> np.ndarray:
    b = spec.boundary
    if isinstance(b, Dirichlet):
        return np.arange(b.L, b.R + 1)
    if isinstance(b, Periodic):
        return np.arange(b.L, b.R)
    reach = math.ceil(2.0 * float(times.max()))
    if isinstance(b, LeftWall):
        return np.arange(b.L, spec.x0 + reach + 1)
    return np.arange(spec.x0 - reach, spec.x0 + reach + 1)


def _spec_metadata(grid: AmplitudeGrid, epsilon: float) -> list[tuple[str, str]]:
    spec = grid.spec
    b = spec.boundary
    names = {Unbounded: "none", LeftWall: "left",
             Dirichlet: "dirichlet", Periodic: "periodic"}
    items = [("boundary", names[type(b)])]
    if hasattr(b, "L"):
        items.append(("L", str(b.L)))
    if hasattr(b, "R"):
        items.append(("R", str(b.R)))
    items += [("x0", str(spec.x0)), ("q", _fmt(spec.q)),
              ("epsilon", _fmt(epsilon)), ("method", grid.method)]
    if grid.truncation_order is not None:
        items.append(("k", str(grid.truncation_order)))
    return items


def _write_walk_csv(grid: AmplitudeGrid, epsilon: float, stream) -> None:
    meta = " ".join(f"{key}={val}" for key, val in _spec_metadata(grid, epsilon))
    stream.write(f"# {meta}\n")
    stream.write("x,t,re,im,prob\n")
    for i, x in enumerate(grid.sites):
        for j, t in enumerate(grid.times):
            value = grid.data[i, j]
            prob = value.real * value.real + value.imag * value.imag
            stream.write(f"{x},{_fmt(t)},{_fmt(value.real)},"
                         f"{_fmt(value.imag)},{_fmt(prob)}\n")


def _plan_payload(plan: TruncationPlan) -> dict:
    return {
        "t_threshold": plan.t_threshold,
        "epsilon": plan.epsilon,
        "N": plan.N,
        "k": plan.k,
        "zeta": plan.zeta,
        "apriori_bound": plan.apriori_bound,
        "fallback_used": plan.fallback_used,
    }


def _write_walk_json(grid: AmplitudeGrid, epsilon: float, stream) -> None:
    spec_items = dict(_spec_metadata(grid, epsilon))
    spec_items.pop("method")
    spec_items.pop("k", None)
    truncation = None
    if grid.truncation_order is not None:
        b = grid.spec.boundary
        plan = truncation_k(float(grid.times.max()), epsilon, b.R - b.L)
        truncation = _plan_payload(plan)
    payload = {
        "spec": {
            "boundary": spec_items["boundary"],
            **({"L": int(spec_items["L"])} if "L" in spec_items else {}),
            **({"R": int(spec_items["R"])} if "R" in spec_items else {}),
            "x0": grid.spec.x0,
            "q": grid.spec.q,
        },
        "method": grid.method,
        "truncation": truncation,
        "sites": [int(x) for x in grid.sites],
        "times": [float(t) for t in grid.times],
        "data": [[[value.real, value.imag] for value in row]
                 for row in grid.data],
    }
    json.dump(payload, stream)
    stream.write("\n")


def _open_out(out: str | None):
    if out is None or out == "-":
        return None
    return open(out, "w", encoding="utf-8", newline="\n")


def _emit(write, out: str | None) -> None:
    handle = _open_out(out)
    if handle is None:
        write(sys.stdout)
    else:
        with handle:
            write(handle)


def cmd_walk(args) -> int:
    """Evaluate one amplitude grid and write it as csv or json."""
    spec = _boundary(args)
    times = _times(args)
    _check_epsilon(args.epsilon)
    if args.method == "spectral" and not isinstance(
            spec.boundary, (Dirichlet, Periodic)):
        raise ValueError(
            "--method spectral requires --boundary dirichlet or periodic")
    sites = _default_sites(spec, times)
    if args.method == "series":
        grid = evaluate_grid(spec, sites, times, epsilon=args.epsilon)
    elif args.method == "spectral":
        grid = oracle.spectral_grid(spec, sites, times)
    else:
        grid = oracle.ode_grid(spec, sites, times)
    writer = _write_walk_csv if args.format == "csv" else _write_walk_json
    _emit(lambda stream: writer(grid, args.epsilon, stream), args.out)
    return 0


def cmd_truncation(args) -> int:
    """Print the truncation planner record for one configuration."""
    if args.boundary not in ("dirichlet", "periodic"):
        raise ValueError(
            "--boundary must be dirichlet or periodic for truncation")
    if args.L is None or args.R is None:
        raise ValueError("truncation requires both --L and --R")
    width_floor = 2 if args.boundary == "dirichlet" else 1
    if args.R - args.L < width_floor:
        raise ValueError(
            f"need R - L >= {width_floor} for --boundary {args.boundary}, "
            f"got L={args.L}, R={args.R}")
    if args.t is None:
        raise ValueError("truncation requires --t")
    if args.t <= 0:
        raise ValueError(f"--t must be positive, got {args.t}")
    _check_epsilon(args.epsilon)
    plan = truncation_k(args.t, args.epsilon, args.R - args.L)
    payload = {"t": args.t, **_plan_payload(plan)}

    def write(stream):
        if args.format == "json":
            json.dump(payload, stream)
            stream.write("\n")
        else:
            stream.write(",".join(payload) + "\n")
            values = [
                _fmt(payload["t"]), _fmt(payload["t_threshold"]),
                _fmt(payload["epsilon"]), str(payload["N"]),
                str(payload["k"]), _fmt(payload["zeta"]),
                _fmt(payload["apriori_bound"]),
                "true" if payload["fallback_used"] else "false",
            ]
            stream.write(",".join(values) + "\n")

    _emit(write, args.out)
    return 0


def cmd_verify(args) -> int:
    """Run the property suite; exit 0 only if every property passes."""
    results = run_suite(perturb=args.inject_perturbation)
    width = max(len(r.name) for r in results)

    def write(stream):
        for r in results:
            verdict = "PASS" if r.passed else "FAIL"
            stream.write(f"{r.name:<{width}}  measured={r.measured:12.5e}  "
                         f"tolerance={r.tolerance:12.5e}  {verdict}\n")
        failed = [r.name for r in results if not r.passed]
        if failed:
            stream.write(f"{len(failed)} of {len(results)} properties failed: "
                         f"{', '.join(failed)}\n")
        else:
            stream.write(f"all {len(results)} properties passed\n")

    _emit(write, args.out)
    return 0 if all(r.passed for r in results) else 1


_PANELS = (
    ("none", lambda: Unbounded(), 31),
    ("left", lambda: LeftWall(L=0), 31),
    ("dirichlet", lambda: Dirichlet(L=0, R=30), 31),
    ("periodic", lambda: Periodic(L=0, R=30), 30),
)


def cmd_figure1(args) -> int:
    """Probability dataset for the four boundary regimes, x0 = 13.

    Writes figure1_<regime>.csv files of (x, t, prob) records suitable
    for external heat-map plotting.
    """
    t_max = args.t_max if args.t_max is not None else 60.0
    if t_max <= 0:
        raise ValueError(f"--t-max must be positive, got {t_max}")
    steps = args.t_steps if args.t_steps is not None else 240
    if steps < 1:
        raise ValueError(f"--t-steps must be at least 1, got {steps}")
    _check_epsilon(args.epsilon)
    times = np.linspace(0.0, t_max, steps + 1)
    out_dir = Path(args.out if args.out is not None else ".")
    out_dir.mkdir(parents=True, exist_ok=True)

    for name, make_boundary, site_count in _PANELS:
        spec = WalkSpec(boundary=make_boundary(), x0=13, q=0.0)
        sites = np.arange(0, site_count)
        grid = evaluate_grid(spec, sites, times, epsilon=args.epsilon)
        path = out_dir / f"figure1_{name}.csv"
        with open(path, "w", encoding="utf-8", newline="\n") as stream:
            meta = " ".join(
                f"{key}={val}"
                for key, val in _spec_metadata(grid, args.epsilon)
                if key != "method")
            stream.write(f"# panel={name} {meta} t_max={_fmt(t_max)} "
                         f"t_steps={steps}\n")
            stream.write("x,t,prob\n")
            for i, x in enumerate(grid.sites):
                for j, t in enumerate(grid.times):
                    value = grid.data[i, j]
                    prob = value.real * value.real + value.imag * value.imag
                    stream.write(f"{x},{_fmt(t)},{_fmt(prob)}\n")
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwalk",
        description="Bessel-series amplitudes for continuous-time quantum "
                    "walks on 1D lattices")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, with_method=True):
        p.add_argument("--boundary", required=True,
                       choices=["none", "left", "dirichlet", "periodic"])
        p.add_argument("--L", type=int, default=None,
                       help="left wall or ring edge")
        p.add_argument("--R", type=int, default=None,
                       help="right wall or ring edge")
        p.add_argument("--x0", type=int, default=0, help="start site")
        p.add_argument("--q", type=float, default=0.0,
                       help="uniform potential offset")
        p.add_argument("--t", type=float, default=None, help="single horizon")
        p.add_argument("--t-max", type=float, default=None,
                       help="grid horizon, paired with --t-steps")
        p.add_argument("--t-steps", type=int, default=None,
                       help="number of time steps up to --t-max (default 240)")
        p.add_argument("--epsilon", type=float, default=1e-5,
                       help="series accuracy target (default 1e-5)")
        if with_method:
            p.add_argument("--method", default="series",
                           choices=["series", "spectral", "ode"])
        p.add_argument("--format", default="csv", choices=["csv", "json"])
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p_walk = sub.add_parser("walk", help="amplitude grid for one configuration")
    add_common(p_walk)
    p_walk.set_defaults(handler=cmd_walk)

    p_trunc = sub.add_parser("truncation", help="series truncation planner record")
    add_common(p_trunc, with_method=False)
    p_trunc.set_defaults(handler=cmd_truncation)

    p_verify = sub.add_parser("verify", help="cross-oracle property suite")
    p_verify.add_argument("--inject-perturbation", action="store_true",
                          help="testing hook: corrupt one Bessel order by "
                               "1e-3 and show the suite catching it")
    p_verify.add_argument("--out", default=None,
                          help="report path (default stdout)")
    p_verify.set_defaults(handler=cmd_verify)

    p_fig = sub.add_parser("figure1",
                           help="four-panel probability dataset, x0=13 on [0, 30]")
    p_fig.add_argument("--t-max", type=float, default=None,
                       help="horizon (default 60)")
    p_fig.add_argument("--t-steps", type=int, default=None,
                       help="time steps (default 240)")
    p_fig.add_argument("--epsilon", type=float, default=1e-5,
                       help="series accuracy target (default 1e-5)")
    p_fig.add_argument("--out", default=None,
                       help="output directory (default current)")
    p_fig.set_defaults(handler=cmd_figure1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except RuntimeError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
