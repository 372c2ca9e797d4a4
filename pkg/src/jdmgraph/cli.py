"""Command-line interface.

Exit codes: 0 success, 1 domain failure (not graphical, simplicity
violation, oracle refusal), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

from . import __version__
from .construct import greedy_construct
from .diagnostics import (
    LagGrid,
    ar1_series,
    autocorrelation,
    autocorrelation_experiment,
    integrated_autocorr,
    potential_edges,
    select_probe_edges,
    tvd_convergence,
)
from .errors import JDMError, LimitExceeded, NotGraphical, ParseError, SimplicityViolation, TooLarge
from .io import format_jdm, read_edge_list, read_jdm, write_edge_list
from .mcmc import ChainKind, SamplerSchedule, sample
from .model import (
    derive_degree_vector,
    edge_count,
    erdos_gallai_check,
    extract_jdm,
    is_graphical,
    require_graphical,
)
from .oracle import enumerate_realizations, exact_edge_means, swap_graph_connected
from .synth import SynthSpec, generate_synthetic

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def cmd_check(args) -> int:
    jdm = read_jdm(args.jdm)
    report = is_graphical(jdm)
    m = edge_count(jdm)
    if report.graphical:
        dv = derive_degree_vector(jdm)
        eg = erdos_gallai_check(dv)
        print("graphical")
        print(f"n={dv.vertex_count} m={m} entries={len(jdm)}")
        print(f"erdos-gallai: {'pass' if eg else 'fail'}")
        return EXIT_OK
    print("not graphical")
    try:
        dv = derive_degree_vector(jdm)
        print(f"n={dv.vertex_count} m={m} entries={len(jdm)}")
        print(f"erdos-gallai: {'pass' if erdos_gallai_check(dv) else 'fail'}")
    except JDMError:
        print(f"n=? m={m} entries={len(jdm)}")
        print("erdos-gallai: n/a (non-integer degree counts)")
    for v in report.violations:
        print(f"violation {v.condition} ({v.pair[0]},{v.pair[1]}): {v.detail}")
    return EXIT_DOMAIN


def cmd_construct(args) -> int:
    jdm = read_jdm(args.jdm)
    graph = greedy_construct(jdm)
    out, close = _open_out(args.out)
    try:
        write_edge_list(graph, out)
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_extract(args) -> int:
    try:
        graph, labels = read_edge_list(args.edges, pseudo=args.pseudo)
    except SimplicityViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    jdm = extract_jdm(graph)
    if args.labels_out:
        with open(args.labels_out, "w") as fh:
            for i, name in enumerate(labels):
                fh.write(f"{i} {name}\n")
    out, close = _open_out(args.out)
    try:
        out.write(format_jdm(jdm))
    finally:
        if close:
            out.close()
    if args.verbose:
        dv = derive_degree_vector(jdm)
        print(f"# n={dv.vertex_count} m={edge_count(jdm)} entries={len(jdm)}", file=sys.stderr)
    return EXIT_OK


def cmd_sample(args) -> int:
    jdm = read_jdm(args.jdm)
    require_graphical(jdm)
    m = edge_count(jdm)
    schedule = SamplerSchedule(
        burn_in=args.burn_in,
        gap=args.gap if args.gap is not None else 5 * m,
        sample_count=args.samples,
        seed=args.seed,
    )
    stream = sample(jdm, args.chain, schedule, progress=args.progress)
    if args.stream or not args.out_dir:
        out, close = _open_out(args.out)
        try:
            for i, g in enumerate(stream):
                out.write(f"# sample {i}\n")
                write_edge_list(g, out)
        finally:
            if close:
                out.close()
        return EXIT_OK
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    width = max(5, len(str(max(0, args.samples - 1))))
    for i, g in enumerate(stream):
        with open(out_dir / f"sample_{i:0{width}d}.edges", "w") as fh:
            write_edge_list(g, fh)
    return EXIT_OK


def _probe_edges(args, jdm):
    if args.edges == "auto":
        return select_probe_edges(jdm, args.count)
    if args.edges == "all":
        return potential_edges(jdm)
    lookup = {(e.u, e.v): e for e in potential_edges(jdm)}
    chosen = []
    with open(args.edges) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                u, v = (int(t) for t in line.split()[:2])
            except ValueError:
                raise ParseError(f"expected two vertex indices, got {line!r}", lineno) from None
            key = (min(u, v), max(u, v))
            if key not in lookup:
                raise ParseError(f"pair {u} {v} is not a potential edge", lineno)
            chosen.append(lookup[key])
    return chosen


def _parse_gaps(text, m):
    if text == "auto":
        return sorted({max(1, round(f * m)) for f in (0.25, 0.5, 1, 2, 3, 5)})
    return [int(t) for t in text.split(",") if t.strip()]


def cmd_diagnose(args) -> int:
    jdm = read_jdm(args.jdm)
    require_graphical(jdm)
    m = edge_count(jdm)
    edges = _probe_edges(args, jdm)
    default = LagGrid.default_for(m)
    grid = LagGrid(
        args.lag_start if args.lag_start is not None else default.start,
        args.lag_end if args.lag_end is not None else default.end,
        args.lag_step if args.lag_step is not None else default.step,
    )
    steps = args.steps if args.steps is not None else max(50_000, grid.end + grid.step)
    if args.progress:
        print(f"autocorrelation: {len(edges)} edges, {args.replicas} replicas x {steps} steps",
              file=sys.stderr)
    report = autocorrelation_experiment(
        jdm, edges, kind=args.chain, steps=steps, grid=grid, window=args.window,
        threshold=args.threshold, replicas=args.replicas, seed=args.seed,
        burn_in=args.burn_in, workers=args.workers,
    )
    gaps = _parse_gaps(args.gaps, m)
    if args.progress:
        print(f"tvd: gaps {gaps}, {args.tvd_samples} samples", file=sys.stderr)
    report.tvd = tvd_convergence(
        jdm, args.chain, gaps, args.tvd_samples, args.tvd_replicas or args.replicas,
        seed=args.seed, burn_in=args.burn_in, workers=args.workers,
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_diagnostic_csvs(report, out_dir)
    agg = report.aggregates()
    thr = agg["threshold_time:mean"]
    tau = agg["tau_int:max"]
    print(f"edges={len(edges)} replicas={args.replicas} steps={steps}")
    print(f"threshold_time mean-per-edge: max={_fmt(thr['max'])} mean={_fmt(thr['mean'])} min={_fmt(thr['min'])}")
    print(f"tau_int max-per-edge: max={_fmt(tau['max'])} mean={_fmt(tau['mean'])} min={_fmt(tau['min'])}")
    return EXIT_OK


def write_diagnostic_csvs(report, out_dir: Path) -> None:
    """acf_long.csv, edge_summary.csv, aggregates.csv and tvd.csv."""
    with open(out_dir / "acf_long.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["edge", "replica", "lag", "rho"])
        for r in range(report.rho.shape[0]):
            for j, e in enumerate(report.edges):
                col = report.rho[r, :, j]
                w.writerow([e.label, r, 0, _fmt(1.0) if not math.isnan(col[0]) else ""])
                for lag, val in zip(report.lags, col):
                    w.writerow([e.label, r, int(lag), _fmt(float(val))])
    with open(out_dir / "edge_summary.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["edge", "u", "v", "k", "l", "mu", "replica", "tau_int", "threshold_time"])
        for r in range(report.tau.shape[0]):
            for j, e in enumerate(report.edges):
                thr = report.threshold_time[r, j]
                w.writerow([
                    e.label, e.u, e.v, e.k, e.l, _fmt(float(e.mean)), r,
                    _fmt(float(report.tau[r, j])),
                    "" if math.isnan(thr) else int(thr),
                ])
    with open(out_dir / "aggregates.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["statistic", "per_edge", "across_edges", "value"])
        for key, vals in report.aggregates().items():
            stat, per_edge = key.split(":")
            for across, val in vals.items():
                w.writerow([stat, per_edge, across, _fmt(val)])
        for r, t in enumerate(report.mean_abs_time):
            w.writerow(["mean_abs_threshold_time", f"replica{r}", "", _fmt(t)])
    with open(out_dir / "tvd.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["gap", "tvd_min", "tvd_median", "tvd_max"])
        for p in report.tvd:
            w.writerow([p.gap, _fmt(p.min), _fmt(p.median), _fmt(p.max)])


def cmd_synth(args) -> int:
    jdm = generate_synthetic(SynthSpec(fill=args.fill))
    out, close = _open_out(args.out)
    try:
        out.write(format_jdm(jdm))
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_oracle(args) -> int:
    jdm = read_jdm(args.jdm)
    try:
        rs = enumerate_realizations(jdm, limit=args.limit)
    except (TooLarge, LimitExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    count = len(rs)
    noun = "realization" if count == 1 else "realizations"
    if not count:
        print(f"0 {noun}")
        return EXIT_OK
    connected, diameter = swap_graph_connected(rs)
    state = "connected" if connected else "disconnected"
    print(f"{count} {noun}, {state}, diameter {diameter}")
    if args.csv:
        out, close = _open_out(args.csv)
        try:
            w = csv.writer(out)
            w.writerow(["u", "v", "k", "l", "realizations_with_edge", "realizations", "mean"])
            for (u, v), mean in exact_edge_means(rs).items():
                k, l = sorted((rs.degrees[u], rs.degrees[v]))
                w.writerow([u, v, k, l, mean.numerator * count // mean.denominator, count, str(mean)])
        finally:
            if close:
                out.close()
    return EXIT_OK


def cmd_ar1(args) -> int:
    x = ar1_series(args.phi, args.n, args.seed)
    tau = integrated_autocorr(x, args.window)
    acf = autocorrelation(x, list(range(0, 21)))
    exact = 0.5 * (1 + args.phi) / (1 - args.phi)
    print(f"tau_int={tau:.4f} exact={exact:.4f}")
    dev = max(abs(r - args.phi ** t) for t, r in zip(acf.lags, acf.rho))
    print(f"max |rho(t) - phi^t| for t<=20: {dev:.4f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jdm", description="Joint degree matrix graph tools.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--config", help="key=value file supplying defaults for any flag")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="test whether a JDM is graphical")
    s.add_argument("jdm")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("construct", help="build a simple graph realizing a JDM")
    s.add_argument("jdm")
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("extract", help="print the JDM of an edge list")
    s.add_argument("edges")
    s.add_argument("--pseudo", action="store_true", help="accept self-loops and multi-edges")
    s.add_argument("-o", "--out")
    s.add_argument("--labels-out", help="write 'index label' mapping here")
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_extract)

    s = sub.add_parser("sample", help="sample graphs with the endpoint-swap chain")
    s.add_argument("jdm")
    s.add_argument("--chain", type=ChainKind.parse, default=ChainKind.B, choices=list(ChainKind))
    s.add_argument("--samples", type=int, default=1)
    s.add_argument("--gap", type=int, help="steps between samples (default 5m)")
    s.add_argument("--burn-in", type=int, help="steps before the first gap (default 5m)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out-dir", help="write one edge-list file per sample")
    s.add_argument("--stream", action="store_true", help="write all samples to --out / stdout")
    s.add_argument("-o", "--out")
    s.add_argument("--progress", action="store_true")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("diagnose", help="autocorrelation and TVD convergence reports")
    s.add_argument("jdm")
    s.add_argument("--edges", default="auto", help="auto, all, or a file of 'u v' vertex pairs")
    s.add_argument("--count", type=int, default=300, help="probe edges for --edges auto")
    s.add_argument("--chain", type=ChainKind.parse, default=ChainKind.B, choices=list(ChainKind))
    s.add_argument("--steps", type=int, help="chain steps recorded per replica (default 50000)")
    s.add_argument("--burn-in", type=int)
    s.add_argument("--lag-start", type=int)
    s.add_argument("--lag-end", type=int)
    s.add_argument("--lag-step", type=int)
    s.add_argument("--window", type=int, help="tau_int cutoff, lags < window (default lag end)")
    s.add_argument("--threshold", type=float, default=0.001)
    s.add_argument("--replicas", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--gaps", default="auto", help="comma-separated TVD gaps or 'auto'")
    s.add_argument("--tvd-samples", type=int, default=2000)
    s.add_argument("--tvd-replicas", type=int)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out-dir", required=True)
    s.add_argument("--progress", action="store_true")
    s.set_defaults(func=cmd_diagnose)

    s = sub.add_parser("synth", help="emit the synthetic i/20 JDM")
    s.add_argument("-o", "--out")
    s.add_argument("--fill", choices=["degree1", "dense"], default="degree1")
    s.set_defaults(func=cmd_synth)

    s = sub.add_parser("oracle", help="enumerate realizations of a toy JDM")
    s.add_argument("jdm")
    s.add_argument("--csv", help="write exact per-pair means here ('-' for stdout)")
    s.add_argument("--limit", type=int, default=10**6)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("ar1", help="estimator self-test on a synthetic AR(1) series")
    s.add_argument("--phi", type=float, default=0.9)
    s.add_argument("--n", type=int, default=100_000)
    s.add_argument("--window", type=int, default=60)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_ar1)
    return p


def read_config(path) -> dict[str, str]:
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParseError(f"expected key=value, got {line!r}", lineno)
            key, value = line.split("=", 1)
            values[key.strip().lstrip("-").replace("-", "_")] = value.strip()
    return values


def _apply_config(parser, argv, config_path):
    """Re-parse with config values as defaults; explicit flags still win."""
    values = read_config(config_path)
    ns = parser.parse_args(argv)
    sub = parser._subparsers._group_actions[0].choices[ns.command]
    defaults = {}
    for action in sub._actions:
        if action.dest in values:
            raw = values[action.dest]
            if action.const is True and action.nargs == 0:
                defaults[action.dest] = raw.lower() in ("1", "true", "yes", "on")
            elif action.type is not None:
                defaults[action.dest] = action.type(raw)
            else:
                defaults[action.dest] = raw
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
        if args.config:
            args = _apply_config(parser, argv, args.config)
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotGraphical as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except JDMError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
