"""Command-line entry point: analyze study tables, re-classify stored
summaries against new thresholds, or serve precomputed results.

Per-study summary records use the JSON schema::

    {"id", "point_estimate", "ci_lo", "ci_hi", "ls_pct", "ms_pct",
     "credible_level", "negligible", "meaningful", "k", "seed"}

with null for decisions whose threshold was not supplied.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import effectsize, ingest, plotting, posterior

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_SAMPLING_ERROR = 3

MIN_ANALYSIS_SAMPLES = 1000
MAX_THRESHOLD = 10.0

RECORD_KEYS = ["id", "point_estimate", "ci_lo", "ci_hi", "ls_pct", "ms_pct",
               "credible_level", "negligible", "meaningful", "k", "seed"]


def summary_record(summary: effectsize.EffectSizeSummary,
                   delta: float | None,
                   delta_m: float | None) -> dict:
    return {
        "id": summary.study_id,
        "point_estimate": summary.point_estimate,
        "ci_lo": summary.ci_lo,
        "ci_hi": summary.ci_hi,
        "ls_pct": summary.ls_pct,
        "ms_pct": summary.ms_pct,
        "credible_level": summary.credible_level,
        "negligible": (None if delta is None
                       else effectsize.test_negligible(summary.ms_pct, delta)),
        "meaningful": (None if delta_m is None
                       else effectsize.test_meaningful(summary.ls_pct, delta_m)),
        "k": summary.k,
        "seed": summary.seed,
    }


def record_to_summary(rec: dict) -> effectsize.EffectSizeSummary:
    try:
        return effectsize.EffectSizeSummary(
            study_id=int(rec["id"]),
            point_estimate=float(rec["point_estimate"]),
            ci_lo=float(rec["ci_lo"]),
            ci_hi=float(rec["ci_hi"]),
            ls_pct=float(rec["ls_pct"]),
            ms_pct=float(rec["ms_pct"]),
            credible_level=float(rec["credible_level"]),
            k=int(rec["k"]),
            seed=int(rec["seed"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed summary record: {exc}") from exc


def summarize_all(studies, k, seed):
    """Per-study summaries, sampled concurrently, returned in input order."""
    with ThreadPoolExecutor() as pool:
        return list(pool.map(
            lambda s: effectsize.summarize_study(s, k=k, seed=seed), studies))


def _check_threshold(name, value):
    if value is not None and not (0.0 < value <= MAX_THRESHOLD):
        raise ValueError(f"{name} must be in (0, {MAX_THRESHOLD}]")


def _print_table(pairs, delta, out=None):
    out = out if out is not None else sys.stdout
    cols = plotting.DEFAULT_COLUMNS
    headers = [plotting.TABLE_COLUMNS[c][0] for c in cols]
    rows = [[plotting.TABLE_COLUMNS[c][1](s, e) for c in cols] for s, e in pairs]
    if delta is not None:
        headers.append("Negligible")
        for row, (s, e) in zip(rows, pairs):
            row.append("yes" if effectsize.test_negligible(e.ms_pct, delta) else "no")
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)), file=out)
    for row in rows:
        print("  ".join(c.ljust(w) for c, w in zip(row, widths)), file=out)


def run_analyze(args) -> int:
    try:
        _check_threshold("--threshold-negligible", args.threshold_negligible)
        _check_threshold("--threshold-meaningful", args.threshold_meaningful)
        if args.samples < MIN_ANALYSIS_SAMPLES:
            raise ValueError(f"--samples must be >= {MIN_ANALYSIS_SAMPLES}")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    try:
        studies = ingest.load_studies_file(args.input)
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (ingest.TableSchemaError, ingest.RowParseError,
            ingest.DuplicateIdError) as exc:
        print(f"error: {args.input}: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ingest.StudyValidationError as exc:
        for detail in exc.details:
            print(f"error: {args.input}: {detail}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    if not studies:
        print("warning: no studies in input", file=sys.stderr)
        if args.out_json:
            with open(args.out_json, "w", encoding="utf-8") as fh:
                json.dump([], fh)
                fh.write("\n")
        else:
            print("[]")
        return EXIT_OK

    try:
        summaries = summarize_all(studies, args.samples, args.seed)
    except posterior.ControlMeanNearZeroError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SAMPLING_ERROR

    pairs = list(zip(studies, summaries))
    if args.sort == "center_out":
        pairs = plotting.sort_studies(pairs)

    records = [summary_record(e, args.threshold_negligible,
                              args.threshold_meaningful) for _, e in pairs]
    _print_table(pairs, args.threshold_negligible)

    if args.out_json:
        with open(args.out_json, "w", encoding="utf-8") as fh:
            json.dump(records, fh, indent=1)
            fh.write("\n")
    if args.out_plot:
        spec = plotting.ContraPlotSpec(
            studies=pairs,
            negligible_threshold=args.threshold_negligible,
            meaningful_threshold=args.threshold_meaningful,
            title=os.path.basename(args.input),
        )
        with open(args.out_plot, "w", encoding="utf-8") as fh:
            fh.write(plotting.render_contra_plot(spec))
    return EXIT_OK


def run_classify(args) -> int:
    try:
        _check_threshold("--threshold-negligible", args.threshold_negligible)
        _check_threshold("--threshold-meaningful", args.threshold_meaningful)
        with open(args.summaries, encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, list):
            raise ValueError("summaries file must hold a JSON array")
        summaries = [record_to_summary(r) for r in raw]
    except OSError as exc:
        print(f"error: cannot read {args.summaries}: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (json.JSONDecodeError, ValueError) as exc:
        print(f"error: {args.summaries}: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    records = [summary_record(e, args.threshold_negligible,
                              args.threshold_meaningful) for e in summaries]
    text = json.dumps(records, indent=1)
    if args.out_json:
        with open(args.out_json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _default_seed() -> int:
    env = os.environ.get("CONTRA_SEED")
    return int(env) if env else posterior.DEFAULT_SEED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contra",
        description="Negligible-effect analysis of two-group study tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="sample posteriors and summarize a study table")
    pa.add_argument("input", nargs="?", help="study table CSV")
    pa.add_argument("--input", dest="input_flag", help="study table CSV")
    pa.add_argument("--samples", type=int, default=posterior.DEFAULT_SAMPLES)
    pa.add_argument("--seed", type=int, default=None)
    pa.add_argument("--threshold-negligible", type=float, default=None)
    pa.add_argument("--threshold-meaningful", type=float, default=None)
    pa.add_argument("--out-json", default=None)
    pa.add_argument("--out-plot", default=None)
    pa.add_argument("--sort", choices=["center_out", "file_order"],
                    default="center_out")

    pc = sub.add_parser("classify", help="re-test stored summaries against new thresholds")
    pc.add_argument("summaries", nargs="?", help="summaries JSON from analyze")
    pc.add_argument("--input", dest="summaries_flag", help="summaries JSON")
    pc.add_argument("--threshold-negligible", type=float, required=True)
    pc.add_argument("--threshold-meaningful", type=float, default=None)
    pc.add_argument("--out-json", default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "analyze":
        args.input = args.input_flag or args.input
        if not args.input:
            print("error: no input file given", file=sys.stderr)
            return EXIT_INPUT_ERROR
        if args.seed is None:
            args.seed = _default_seed()
        return run_analyze(args)
    args.summaries = args.summaries_flag or args.summaries
    if not args.summaries:
        print("error: no summaries file given", file=sys.stderr)
        return EXIT_INPUT_ERROR
    return run_classify(args)


if __name__ == "__main__":
    sys.exit(main())
