"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 input-validation failure, 3 bound
violation detected.
"""
import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import datasets
from .states import InvalidStateError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_VIOLATION = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser():
    p = _Parser(prog="entmix", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"entmix {datasets.__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="measure one state read from a JSON matrix file")
    a.add_argument("file")
    a.add_argument("--family", choices=datasets.FAMILIES, default="random")
    a.add_argument("--format", choices=("csv", "json"), default="json")
    a.add_argument("--out")

    c = sub.add_parser("campaign", help="sample states and write a dataset")
    c.add_argument("--n", type=_positive, default=1000)
    c.add_argument("--seed", type=int, default=7)
    c.add_argument("--family", choices=datasets.FAMILIES, default="random")
    c.add_argument("--figure", choices=datasets.FIGURES, default="none")
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.add_argument("--out", required=True)
    c.add_argument("--svg", action="store_true", help="also render <out>.svg")
    c.add_argument("--workers", type=int, default=1)

    f = sub.add_parser("fuzz", help="search for bound violations")
    f.add_argument("--n", type=_positive, default=100_000)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--inject", action="append", default=[], metavar="FILE",
                   help="extra matrix file to validate and test (repeatable)")
    f.add_argument("--out")

    g = sub.add_parser("memms-grid", help="maximally entangled states on a marginal-spectrum grid")
    g.add_argument("--n", type=int, default=50, help="grid resolution per axis")
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    g.add_argument("--out", required=True)
    g.add_argument("--svg", action="store_true")

    line = sub.add_parser("lptps-line", help="maximally entangled LPTPS against purity deficit")
    line.add_argument("--n", type=int, default=11, help="number of points")
    line.add_argument("--format", choices=("csv", "json"), default="csv")
    line.add_argument("--out", required=True)
    line.add_argument("--svg", action="store_true")
    return p


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from exc


def _write(ds, out, fmt):
    try:
        datasets.write_dataset(ds, out, fmt)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from exc


def _svg(ds, figure, out):
    from .plotting import render_figure

    path = str(Path(out).with_suffix(".svg"))
    render_figure(ds.data, figure, path)
    return path


def cmd_analyze(args):
    rho = datasets.load_matrix(args.file)
    record = datasets.analyze(rho, family=args.family)
    row = record.to_row()
    row["min_pt_eigenvalue"] = float(record.verdict.min_pt_eigenvalue)
    row["wootters_lambdas"] = [float(x) for x in record.ent.wootters_lambdas]
    if args.format == "json":
        text = json.dumps({k: (None if isinstance(v, float) and np.isnan(v) else v) for k, v in row.items()},
                          indent=1) + "\n"
    else:
        ds = datasets.Dataset(datasets.FULL_COLUMNS, {k: np.array([row[k]]) for k in datasets.FULL_COLUMNS},
                              {"tool": "entmix", "version": datasets.__version__}, {})
        text = datasets.dataset_to_csv(ds)
    _emit(text, args.out)
    return EXIT_OK


def _summary_exit(summary):
    print(json.dumps(summary, indent=1))
    return EXIT_VIOLATION if summary.get("total_violations", 0) else EXIT_OK


def cmd_campaign(args):
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    config = datasets.CampaignConfig(args.n, args.seed, args.family, args.figure, args.out, args.format,
                                     workers=args.workers)
    ds = datasets.run_campaign(config)
    _write(ds, args.out, args.format)
    if args.svg:
        ds.summary["svg"] = _svg(ds, "fig1a" if args.figure == "none" else args.figure, args.out)
    ds.summary["output"] = args.out
    return _summary_exit(ds.summary)


def cmd_fuzz(args):
    extra = []
    for path in args.inject:
        try:
            extra.append(datasets.load_matrix(path))
        except InvalidStateError as exc:
            print(f"rejected {path}: {exc}", file=sys.stderr)
    report = datasets.fuzz_bounds(args.n, args.seed, extra_states=extra)
    text = json.dumps(report.as_dict(), indent=1) + "\n"
    _emit(text, args.out)
    if args.out:
        sys.stdout.write(text)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _grid_dataset(cols, kind, meta):
    cols = dict(cols)
    cols["id"] = np.arange(len(cols["sV"]), dtype=np.int64)
    cols["series"] = np.full(len(cols["id"]), kind, dtype=object)
    columns = datasets.FULL_COLUMNS[:-1] + ("series", "bundle")
    return datasets.Dataset(columns, cols, meta, {})


def cmd_memms_grid(args):
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    cols = datasets.memms_grid(args.n)
    gap = np.abs(np.atleast_1d(datasets.memms_tangle_bound(cols["sL1"], cols["sL2"])) - cols["tangle"])
    ds = _grid_dataset(cols, datasets.SERIES_MEMMS,
                       {"tool": "entmix", "version": datasets.__version__, "grid": "memms", "resolution": args.n})
    _write(ds, args.out, args.format)
    summary = {"rows": len(ds), "max_abs_saturation_gap": float(gap.max()),
               "total_violations": int(np.sum(gap > 1e-10)), "output": args.out}
    if args.svg:
        summary["svg"] = _svg(ds, "fig2", args.out)
    return _summary_exit(summary)


def cmd_lptps_line(args):
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    cols = datasets.lptps_line(args.n)
    ds = _grid_dataset(cols, datasets.SERIES_LINE,
                       {"tool": "entmix", "version": datasets.__version__, "grid": "lptps_line", "points": args.n})
    _write(ds, args.out, args.format)
    resid = np.abs(cols["tangle"] + 2.0 * cols["delta_mu"] - 2.0 * datasets.DELTA_MU_MAX)
    summary = {"rows": len(ds), "max_line_residual": float(resid.max()),
               "total_violations": int(np.sum(resid > 1e-9)), "output": args.out}
    if args.svg:
        summary["svg"] = _svg(ds, "fig3b", args.out)
    return _summary_exit(summary)


COMMANDS = {
    "analyze": cmd_analyze,
    "campaign": cmd_campaign,
    "fuzz": cmd_fuzz,
    "memms-grid": cmd_memms_grid,
    "lptps-line": cmd_lptps_line,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InvalidStateError as exc:
        print(f"entmix: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (UsageError, ValueError, FileNotFoundError) as exc:
        print(f"entmix: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
