"""Command-line interface.

Subcommands: morph, features, evaluate, analyze, plot, synth. Exit codes:
0 success, 2 usage/validation error, 3 runtime failure; diagnostics go to
standard error as a single line.
"""

import argparse
import json
import sys
from pathlib import Path

from .analysis import ExperimentConfig, report_from_json, run_experiment
from .corpus import (
    CORPUS_FORMATS,
    dump_json,
    load_corpus,
    load_json,
    read_series_csv,
    write_series_csv,
)
from .errors import (
    AlphaOutOfRangeError,
    CorpusTooSmallError,
    DuplicateIdError,
    EmptyCorpusError,
    EmptyFileError,
    FeatureNotInReportError,
    HorizonTooLargeError,
    InvalidCountError,
    LengthMismatchError,
    MalformedReportError,
    MixedLengthsError,
    NotEnoughFeaturesError,
    ParseError,
    TsmorphError,
)
from .features import extract_features
from .forecasting import ForecasterSpec, evaluate, FORECASTER_KINDS
from .morph import morph_pair
from .plotting import PlotSpec, parse_color, render_plot
from .series import interpolate_missing
from .synth import SYNTH_KINDS, generate_corpus, write_corpus

#: Errors caused by bad inputs or flags; everything else in the tsmorph
#: hierarchy counts as a runtime failure.
VALIDATION_ERRORS = (
    AlphaOutOfRangeError,
    CorpusTooSmallError,
    DuplicateIdError,
    EmptyCorpusError,
    EmptyFileError,
    FeatureNotInReportError,
    HorizonTooLargeError,
    InvalidCountError,
    LengthMismatchError,
    MalformedReportError,
    MixedLengthsError,
    NotEnoughFeaturesError,
    ParseError,
    ValueError,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3


def _parse_param_value(token: str):
    for converter in (int, float):
        try:
            return converter(token)
        except ValueError:
            continue
    return token


def _collect_params(pairs: list[str] | None) -> dict:
    params = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise ValueError(f"--param expects key=value, got {pair!r}")
        params[key] = _parse_param_value(value)
    return params


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def cmd_morph(args: argparse.Namespace) -> int:
    source = read_series_csv(args.source)
    target = read_series_csv(args.target)
    if args.interpolate:
        source = interpolate_missing(source)
        target = interpolate_missing(target)
    sequence = morph_pair(source, target, args.n)
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    files = []
    for index, step in enumerate(sequence.steps):
        name = f"step_{index:03d}.csv"
        write_series_csv(out_dir / name, step.series)
        files.append(name)
    meta = {
        "source_id": sequence.source_id,
        "target_id": sequence.target_id,
        "n": sequence.n,
        "alphas": sequence.alphas(),
        "files": files,
    }
    dump_json(meta, out_dir / "morph_meta.json")
    return EXIT_OK


def cmd_features(args: argparse.Namespace) -> int:
    lines = []
    for path in args.inputs:
        s = read_series_csv(path)
        if args.interpolate:
            s = interpolate_missing(s)
        vector = extract_features(s)
        lines.append(json.dumps(vector.as_dict()))
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    s = read_series_csv(args.input)
    if args.interpolate:
        s = interpolate_missing(s)
    spec = ForecasterSpec(kind=args.forecaster, params=_collect_params(args.param))
    record = evaluate(spec, s, args.horizon, args.season)
    _emit(dump_json(record.to_json(), None), args.output)
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    _, corpus = load_corpus(args.corpus, format=args.format)
    spec = ForecasterSpec(kind=args.forecaster, params=_collect_params(args.param))
    report = run_experiment(
        corpus,
        spec,
        horizon=args.horizon,
        season=args.season,
        n=args.n,
        pairs=args.pairs,
        seed=args.seed,
        jobs=args.jobs,
    )
    _emit(dump_json(report.to_json(), None), args.output)
    return EXIT_OK


def cmd_plot(args: argparse.Namespace) -> int:
    doc = load_json(args.report)
    if not isinstance(doc, dict):
        raise MalformedReportError("report document must be a JSON object")
    report = report_from_json(doc)
    spec = PlotSpec(
        feature=args.feature,
        marker_size=args.marker_size,
        width=args.width,
        height=args.height,
        color_low=parse_color(args.color_low),
        color_high=parse_color(args.color_high),
    )
    _emit(render_plot(report, spec), args.output)
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    series_list = generate_corpus(
        kind=args.kind,
        count=args.count,
        length=args.length,
        seed=args.seed,
        params=_collect_params(args.param),
    )
    write_corpus(args.output, series_list)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsmorph",
        description=(
            "Generate semi-synthetic time series by morphing between a source "
            "and a target, evaluate forecasters on them, and analyze how "
            "meta-features track forecasting error."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_morph = sub.add_parser("morph", help="morph a source series into a target")
    p_morph.add_argument("--source", required=True, help="source series CSV (t,value)")
    p_morph.add_argument("--target", required=True, help="target series CSV (t,value)")
    p_morph.add_argument("-n", type=int, required=True, help="number of steps (>= 2)")
    p_morph.add_argument("-o", "--output", required=True, help="output directory")
    p_morph.add_argument(
        "--interpolate", action="store_true", help="repair missing values first"
    )
    p_morph.set_defaults(func=cmd_morph)

    p_feat = sub.add_parser("features", help="extract meta-features from series")
    p_feat.add_argument("inputs", nargs="+", help="series CSV files (t,value)")
    p_feat.add_argument("--interpolate", action="store_true")
    p_feat.add_argument("-o", "--output", default=None, help="output path (default stdout)")
    p_feat.set_defaults(func=cmd_features)

    p_eval = sub.add_parser("evaluate", help="forecast one series and score MASE")
    p_eval.add_argument("--input", required=True, help="series CSV (t,value)")
    p_eval.add_argument("--forecaster", required=True, choices=FORECASTER_KINDS)
    p_eval.add_argument("--param", action="append", metavar="K=V")
    p_eval.add_argument("--horizon", type=int, required=True)
    p_eval.add_argument("--season", type=int, default=1, help="MASE season m (default 1)")
    p_eval.add_argument("--interpolate", action="store_true")
    p_eval.add_argument("-o", "--output", default=None)
    p_eval.set_defaults(func=cmd_evaluate)

    p_an = sub.add_parser("analyze", help="run the full morph/feature/MASE pipeline")
    p_an.add_argument("--corpus", required=True, help="corpus directory or wide CSV")
    p_an.add_argument("--format", choices=CORPUS_FORMATS, default="per-file")
    p_an.add_argument("--forecaster", required=True, choices=FORECASTER_KINDS)
    p_an.add_argument("--param", action="append", metavar="K=V")
    p_an.add_argument("--horizon", type=int, required=True)
    p_an.add_argument("--season", type=int, default=1, help="MASE season m (default 1)")
    p_an.add_argument("-n", type=int, required=True, help="morph steps per pair (>= 3)")
    p_an.add_argument("--pairs", type=int, required=True, help="number of source series")
    p_an.add_argument("-o", "--output", default=None, help="report path (default stdout)")
    p_an.add_argument("--seed", type=int, default=None)
    p_an.add_argument("--jobs", type=int, default=1)
    p_an.set_defaults(func=cmd_analyze)

    p_plot = sub.add_parser("plot", help="render one feature of a report to SVG")
    p_plot.add_argument("--report", required=True, help="tsmorph-report/1 JSON path")
    p_plot.add_argument("--feature", required=True)
    p_plot.add_argument("-o", "--output", default=None, help="SVG path (default stdout)")
    p_plot.add_argument("--width", type=int, default=720)
    p_plot.add_argument("--height", type=int, default=480)
    p_plot.add_argument("--marker-size", type=float, default=4.0)
    p_plot.add_argument("--color-low", default="#2166ac", help="ramp color at MASE 0")
    p_plot.add_argument("--color-high", default="#b2182b", help="ramp color at MASE 1")
    p_plot.set_defaults(func=cmd_plot)

    p_synth = sub.add_parser("synth", help="generate a deterministic synthetic corpus")
    p_synth.add_argument("--kind", required=True, choices=SYNTH_KINDS)
    p_synth.add_argument("--count", type=int, required=True)
    p_synth.add_argument("--length", type=int, required=True)
    p_synth.add_argument("--seed", type=int, required=True)
    p_synth.add_argument("-o", "--output", required=True, help="output directory")
    p_synth.add_argument("--param", action="append", metavar="K=V")
    p_synth.set_defaults(func=cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VALIDATION_ERRORS as exc:
        print(f"tsmorph {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except TsmorphError as exc:
        print(f"tsmorph {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
