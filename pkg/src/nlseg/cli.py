"""Command line interface.

    nlseg segment features.csv --n-segments 8 -o boundaries.txt
    nlseg eval features.csv truth.txt
    nlseg sweep features.csv truth.txt --mode local
    nlseg synth K=300 P=20 seed=7 -o features.csv --truth truth.txt
    nlseg bench bench.cfg -o report.tsv

Options may also come from ``--config FILE`` (``key = value`` lines);
command-line flags override the file, which overrides the defaults.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import fields, replace
from pathlib import Path

from nlseg.evaluation import best_f_over_cuts, f_measure, sweep_cuts
from nlseg.pipeline.bench import run_benchmark
from nlseg.pipeline.core import PipelineConfig, run_pipeline, write_stages
from nlseg.pipeline.io import (
    coerce,
    read_boundaries,
    read_features,
    read_key_values,
    write_boundaries,
    write_features,
    write_records,
)
from nlseg.pipeline.synth import SyntheticSpec, generate_piecewise, spawn_specs

log = logging.getLogger("nlseg")


def add_pipeline_options(parser: argparse.ArgumentParser):
    # defaults stay None so that unset flags fall through to the config file
    g = parser.add_argument_group("pipeline")
    g.add_argument("--config", type=Path, help="key = value configuration file")
    g.add_argument("--mode", choices=("local", "nonlocal"))
    g.add_argument("--patch-radius", "-M", dest="patch_radius")
    g.add_argument("--bandwidth", help="'auto' or a positive number")
    g.add_argument("--include-self", dest="include_self", action="store_const", const="true")
    g.add_argument("--no-include-self", dest="include_self", action="store_const", const="false")
    g.add_argument("--n-components", dest="n_components")
    g.add_argument("--n-segments", dest="n_segments", help="'sweep' or a positive integer")
    g.add_argument("--max-segments", dest="max_segments")
    g.add_argument("--tolerance", help="boundary tolerance in frames")
    g.add_argument("--seed")
    g.add_argument("--nl-input", dest="nl_input", choices=("standardized", "raw"))
    g.add_argument("--dump-stages", dest="dump_stages", action="store_const", const="true")
    g.add_argument("--dump-dir", type=Path, default=Path("stages"))
    g.add_argument("--header", action="store_true", help="skip the first line of the features CSV")


def build_config(args, base=None) -> PipelineConfig:
    entries = dict(base or {})
    if args.config is not None:
        entries.update(read_key_values(args.config))
    for f in fields(PipelineConfig):
        value = getattr(args, f.name, None)
        if value is not None:
            entries[f.name] = value
    return PipelineConfig(**coerce(PipelineConfig, entries))


def load(args):
    seq = read_features(args.features, header=args.header)
    truth = read_boundaries(args.truth, seq.K) if getattr(args, "truth", None) else None
    return seq, truth


def sequence_id(args) -> str:
    return args.sequence_id or Path(args.features).stem


def run(args, config):
    result = run_pipeline(args.features_seq, config)
    if config.dump_stages:
        for name, path in write_stages(result, args.dump_dir).items():
            log.info("wrote %s stage to %s", name, path)
    return result


def cmd_segment(args):
    config = build_config(args)
    if config.n_segments == "sweep":
        raise ValueError("segment needs a numeric --n-segments (use 'sweep' with ground truth)")
    args.features_seq, _ = load(args)
    result = run(args, config)
    if args.output:
        write_boundaries(args.output, result.segmentation)
    else:
        sys.stdout.write("".join(f"{b}\n" for b in result.segmentation.boundaries))


def cmd_eval(args):
    args.features_seq, truth = load(args)
    config = build_config(args)
    if config.n_segments == "sweep":
        config = replace(config, n_segments=truth.n_segments)
    result = run(args, config)
    report = f_measure(result.segmentation, truth, config.tolerance)
    emit(args, [report.as_record(sequence_id(args), config.mode)])


def cmd_sweep(args):
    args.features_seq, truth = load(args)
    config = replace(build_config(args), n_segments="sweep")
    tree = run(args, config).tree
    if args.all:
        reports = sweep_cuts(tree, truth, config.tolerance, config.max_segments)
    else:
        reports = [best_f_over_cuts(tree, truth, config.tolerance, config.max_segments)]
    emit(args, [r.as_record(sequence_id(args), config.mode) for r in reports])


def cmd_synth(args):
    entries = {}
    for item in args.spec:
        if "=" not in item:
            raise ValueError(f"expected key=value, got {item!r}")
        key, value = item.split("=", 1)
        entries[key.strip().replace("-", "_")] = value.strip()
    unknown = set(entries) - {f.name for f in fields(SyntheticSpec)}
    if unknown:
        raise ValueError(f"unknown synthetic spec keys: {', '.join(sorted(unknown))}")
    spec = SyntheticSpec(**coerce(SyntheticSpec, entries))
    seq, truth = generate_piecewise(spec)
    write_features(args.output, seq)
    if args.truth:
        write_boundaries(args.truth, truth)


def cmd_bench(args):
    entries = read_key_values(args.spec_file)
    n_sequences = int(entries.pop("n_sequences", 20))
    template = SyntheticSpec(**coerce(SyntheticSpec, entries))
    config = build_config(args, base={k: v for k, v in entries.items() if k in {f.name for f in fields(PipelineConfig)}})
    report = run_benchmark(spawn_specs(template, n_sequences), config, config)
    text = report.to_text()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if args.records:
        with open(args.records, "w") as fh:
            write_records(fh, report.records())


def emit(args, records):
    if args.output:
        with open(args.output, "w") as fh:
            write_records(fh, records)
    else:
        write_records(sys.stdout, records)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nlseg", description="Temporal segmentation with nonlocal self-similarity features.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("segment", help="segment a feature CSV into a fixed number of segments")
    p.add_argument("features")
    p.add_argument("-o", "--output", help="boundary file (default: stdout)")
    add_pipeline_options(p)
    p.set_defaults(func=cmd_segment)

    for name, func, text in (
        ("eval", cmd_eval, "score a fixed cut (default: the true segment count)"),
        ("sweep", cmd_sweep, "score the best cut over segment counts"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("features")
        p.add_argument("truth")
        p.add_argument("-o", "--output", help="JSON-lines report (default: stdout)")
        p.add_argument("--sequence-id", dest="sequence_id")
        if name == "sweep":
            p.add_argument("--all", action="store_true", help="report every segment count, not only the best")
        add_pipeline_options(p)
        p.set_defaults(func=func)

    p = sub.add_parser("synth", help="generate a synthetic sequence from key=value spec fields")
    p.add_argument("spec", nargs="*", metavar="key=value")
    p.add_argument("-o", "--output", required=True, help="features CSV")
    p.add_argument("--truth", help="boundary file for the true segmentation")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("bench", help="compare local and nonlocal features on synthetic sequences")
    p.add_argument("spec_file", help="key = value file with synthetic spec fields, n_sequences and pipeline options")
    p.add_argument("-o", "--output", help="report table (default: stdout)")
    p.add_argument("--records", help="also write per-sequence JSON-lines records here")
    add_pipeline_options(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        args.func(args)
    except Exception as exc:  # one-line diagnostic, nonzero exit
        message = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"nlseg: error: {message}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
