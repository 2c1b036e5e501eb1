"""Command-line interface.

Subcommands: score, design, estimate, check, simulate, thresholds, serve.
Console output is a human-readable table; machine-readable files are only
written to explicit --out paths. Exit code 0 means no errors were reported.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import conjoint, degrees, estimation, ingest, scoring
from .conjoint import Attribute, DesignKind
from .optim import NelderMeadConfig


def _parse_floats(text: str, count: int, label: str) -> tuple[float, ...]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise argparse.ArgumentTypeError(f"{label} needs {count} comma-separated numbers")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"bad {label}: {err}") from err


def _parse_attr(text: str) -> Attribute:
    """Attribute syntax: NAME[@DIMENSION]=LEVEL,LEVEL,... e.g. Comments@stability=0,2,5,10"""
    head, _, levels = text.partition("=")
    if not levels:
        raise argparse.ArgumentTypeError(f"attribute '{text}' missing '=LEVELS'")
    name, _, dimension = head.partition("@")
    return Attribute(
        name=name.strip(),
        levels=tuple(float(v) for v in levels.split(",")),
        dimension=dimension.strip() or None,
    )


def _source(path: str):
    return sys.stdin if path == "-" else path


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*headers), fmt.format(*("-" * w for w in widths))]
    lines.extend(fmt.format(*row) for row in rows)
    return "\n".join(lines)


def _print_errors(errors, where: str) -> None:
    for err in errors:
        print(f"error: {where} record {err.record_index}: {err.field}: {err.reason}", file=sys.stderr)


def cmd_score(args) -> int:
    annotations, errors = ingest.load_annotations(_source(args.annotations))
    _print_errors(errors, "annotation")
    weights = scoring.TrustWeights(*args.weights)
    thresholds = degrees.TranslatorThresholds(*args.thresholds)
    rows = []
    for annotation in annotations:
        t0 = annotation.created_at
        p = max((e.timestamp for e in annotation.edits), default=annotation.created_at)
        s = scoring.stability(annotation, t0, p)
        c = scoring.credibility(annotation)
        q = scoring.quality(annotation, args.ntop)
        value = weights.alpha * s + weights.beta * c + weights.gamma * q
        degree = degrees.translate_trust(value, thresholds)
        rows.append(
            [annotation.id, str(s), f"{c:.4f}", f"{q:.4f}", f"{value:.4f}", degree.label]
        )
    print(_table(["annotation", "stability", "credibility", "quality", "trust", "degree"], rows))
    return 1 if errors else 0


def cmd_design(args) -> int:
    attributes = tuple(args.attr) if args.attr else conjoint.STANDARD_ATTRIBUTES
    kind = DesignKind.FULL_FACTORIAL if args.fraction == "1" else DesignKind.HALF_FRACTION
    design = conjoint.make_design(attributes, kind, args.alts, args.seed)
    if args.out:
        ingest.save_design(design, args.out)
    print(
        f"{kind.value} design: {len(design.attributes)} attributes, "
        f"{sum(len(t.concepts) for t in design.tasks)} concepts, "
        f"{len(design.tasks)} tasks of {args.alts}"
        + (f" -> {args.out}" if args.out else "")
    )
    return 0


def _print_estimates(design, tally, part_worths, importances) -> None:
    counts_importance = conjoint.importance_counts(tally)
    rows = []
    for attr, sel, off in zip(tally.attributes, tally.selected, tally.offered):
        for ix, level in enumerate(attr.levels):
            rows.append(
                [
                    attr.name,
                    f"{level:g}",
                    str(sel[ix]),
                    str(off[ix]),
                    f"{part_worths.for_attribute(attr.name)[ix]:+.4f}" if part_worths else "-",
                ]
            )
    print(_table(["attribute", "level", "selected", "offered", "utility"], rows))
    print()
    imp_rows = []
    for name in counts_importance.attributes:
        fitted = f"{importances.as_dict()[name] * 100:.2f}%" if importances else "-"
        imp_rows.append([name, f"{counts_importance.as_dict()[name] * 100:.2f}%", fitted])
    print(_table(["attribute", "importance (counts)", "importance (fit)"], imp_rows))


def cmd_estimate(args) -> int:
    design = ingest.load_design(args.design)
    choices, errors = ingest.load_choices(_source(args.choices), design)
    _print_errors(errors, "choice")
    if not choices:
        print("error: no valid choice records to estimate from", file=sys.stderr)
        return 1
    tally = conjoint.tally_choices(design, choices)
    part_worths = None
    importances = None
    if not args.tally_only:
        part_worths = estimation.fit_logit(design, choices)
        importances = conjoint.importance_partworths(part_worths)
    _print_estimates(design, tally, part_worths, importances)
    n = len({c.respondent_id for c in choices})
    check = conjoint.sample_size_check(
        n=n,
        t=len(design.tasks),
        a=design.alternatives_per_task,
        c=max(len(a.levels) for a in design.attributes),
    )
    print(f"\nsample size: n={n} ratio={check.ratio:g} -> {'pass' if check.ok else 'FAIL'}")
    if args.out and part_worths is not None and importances is not None:
        ingest.export_results(part_worths, importances, args.out)
        print(f"results written to {args.out}")
    return 1 if errors else 0


def cmd_check(args) -> int:
    check = conjoint.sample_size_check(args.n, args.t, args.a, args.c)
    print(f"ratio = {args.n}*{args.t}*{args.a}/{args.c} = {check.ratio:g}")
    print("pass" if check.ok else "FAIL: below the minimum of 500")
    return 0


def cmd_simulate(args) -> int:
    design = ingest.load_design(args.design)
    part_worths, _ = ingest.load_results(args.partworths)
    choices = estimation.simulate_respondents(part_worths, design, args.respondents, args.seed)
    ingest.save_choices(choices, args.out)
    print(f"{len(choices)} choices from {args.respondents} respondents -> {args.out}")
    return 0


def cmd_thresholds(args) -> int:
    text = ingest._read_text(_source(args.values))
    values = [float(line) for line in text.split() if line.strip()]
    cuts = degrees.derive_thresholds(values, tuple(args.shares))
    print(f"very trusted >= {cuts.vt_cut:g}")
    print(f"trusted      >= {cuts.t_cut:g}")
    print(f"untrusted    >= {cuts.u_cut:g}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    design_path = args.design or os.environ.get("ANNOTRUST_DESIGN")
    log_path = args.log or os.environ.get("ANNOTRUST_LOG")
    listen = args.listen or os.environ.get("ANNOTRUST_LISTEN", "127.0.0.1:8000")
    if not design_path or not log_path:
        print("error: serve needs --design and --log (or env equivalents)", file=sys.stderr)
        return 1
    if not Path(design_path).exists():
        print(f"error: design file {design_path} not found", file=sys.stderr)
        return 1
    design = ingest.load_design(design_path)
    host, _, port = listen.partition(":")
    app = create_app(design, log_path)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000), log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="annotrust")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="score annotations and translate to trust degrees")
    p.add_argument("annotations", help="annotation records (JSON lines), or - for stdin")
    p.add_argument(
        "--weights",
        type=lambda t: _parse_floats(t, 3, "--weights"),
        default=(scoring.DEFAULT_WEIGHTS.alpha, scoring.DEFAULT_WEIGHTS.beta, scoring.DEFAULT_WEIGHTS.gamma),
        help="stability,credibility,quality weights",
    )
    p.add_argument("--ntop", type=int, default=2, help="top contributors for the quality dimension")
    p.add_argument(
        "--thresholds",
        type=lambda t: _parse_floats(t, 3, "--thresholds"),
        default=(15.0, 13.5, 12.0),
        help="very-trusted,trusted,untrusted cuts",
    )
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("design", help="generate a factorial choice design")
    p.add_argument("--attr", action="append", type=_parse_attr,
                   help="NAME[@DIMENSION]=LEVELS, repeatable; default is the standard 3x4 layout")
    p.add_argument("--fraction", choices=["1", "1/2"], default="1/2")
    p.add_argument("--alts", type=int, default=4, help="alternatives per task")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", help="design file path")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("estimate", help="tally choices and fit part-worths")
    p.add_argument("design")
    p.add_argument("choices", help="choice log, or - for stdin")
    p.add_argument("--tally-only", action="store_true", help="skip the logit fit")
    p.add_argument("--out", help="results file path")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("check", help="sample-size rule of thumb (n*t*a/c >= 500)")
    p.add_argument("n", type=int)
    p.add_argument("t", type=int)
    p.add_argument("a", type=int)
    p.add_argument("c", type=int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("simulate", help="simulate respondents from known part-worths")
    p.add_argument("design")
    p.add_argument("partworths", help="results file supplying the true part-worths")
    p.add_argument("--respondents", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="choice log to write")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("thresholds", help="derive translator cuts from observed trust values")
    p.add_argument("values", help="one number per line, or - for stdin")
    p.add_argument(
        "--shares",
        type=lambda t: _parse_floats(t, 4, "--shares"),
        default=degrees.DEFAULT_CLASS_SHARES,
        help="class shares in vu,u,t,vt order",
    )
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("serve", help="run the survey HTTP service")
    p.add_argument("--design", help="design file (or ANNOTRUST_DESIGN)")
    p.add_argument("--log", help="append-only choice log (or ANNOTRUST_LOG)")
    p.add_argument("--listen", help="host:port (or ANNOTRUST_LISTEN)")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
