"""Command-line front end: ``melogeo measure|scale|compress|convert``.

Exit codes: 0 success, 2 usage error, 3 unreadable, malformed or invalid
input, 4 an oracle cross-check (``--check``) disagreed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import oracle
from .compression import compress_points, compress_segments
from .core import SegmentMelody, as_rational, format_rational, segment_to_point
from .errors import BadK, FormatError, MelodyError, MelodyWarning, MelogeoError
from .io import export_profile_csv, midi_to_segment, parse_document, serialize_json, to_document
from .measures import area_between, extend_query, t_monotone_matching
from .scaling import min_area_scaling, min_matching_scaling, scale_points, scale_segment

EXIT_USAGE, EXIT_INPUT, EXIT_MISMATCH = 2, 3, 4
MIDI_SUFFIXES = (".mid", ".midi")


class InputError(Exception):
    pass


class CheckFailed(Exception):
    pass


def rational(text: str):
    try:
        return as_rational(text)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _fmt(value):
    return None if value is None else format_rational(value)


# input ------------------------------------------------------------------------


def load(path, source: str | None = None):
    """Read a melody from a JSON document or a MIDI file; returns (melody, unit)."""
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    if source is None:
        source = "midi" if path.suffix.lower() in MIDI_SUFFIXES else "json"
    try:
        if source == "midi":
            return midi_to_segment(data), "tick"
        doc = parse_document(data)
        return doc.melody, doc.time_unit
    except (FormatError, MelodyError) as exc:
        raise InputError(f"{path}: {type(exc).__name__}: {exc}") from None


def as_segments(melody, path):
    if not isinstance(melody, SegmentMelody):
        raise InputError(f"{path}: the area metric needs a segment melody")
    return melody


def as_points(melody):
    return segment_to_point(melody) if isinstance(melody, SegmentMelody) else melody


# subcommands --------------------------------------------------------------------


def cmd_measure(args):
    r, _ = load(args.reference)
    q, _ = load(args.query)
    if args.metric == "area":
        r, q = as_segments(r, args.reference), as_segments(q, args.query)
        if args.epsilon is not None:
            q = scale_segment(q, args.epsilon)
        try:
            cost = area_between(r, extend_query(q, r.end))
        except MelodyError as exc:
            raise InputError(str(exc)) from None
        if args.check and oracle.oracle_area(r, extend_query(q, r.end)) != cost:
            raise CheckFailed("area disagrees with the oracle")
        return {"metric": "area", "cost": _fmt(cost)}
    r, q = as_points(r), as_points(q)
    if args.epsilon is not None:
        q = scale_points(q, args.epsilon)
    match = t_monotone_matching(r, q)
    if args.check and oracle.oracle_matching(r, q) != match:
        raise CheckFailed("matching disagrees with the oracle")
    return {
        "metric": "match",
        "cost": _fmt(match.cost),
        "a_minus": sorted(match.a_minus),
        "a_plus": sorted(match.a_plus),
    }


def _scale_one(metric, r, q, eps_max, want_profile, check):
    if metric == "area":
        res = min_area_scaling(r, q, profile=want_profile)
        ref = oracle.oracle_min_area_scaling(r, q) if check else None
    else:
        res = min_matching_scaling(r, q, eps_max, profile=want_profile)
        ref = oracle.oracle_min_matching_scaling(r, q, res.eps_max) if check else None
    if ref is not None and (ref.best_cost, ref.best_epsilon) != (res.best_cost, res.best_epsilon):
        raise CheckFailed(
            f"sweep gives cost {res.best_cost} at eps={res.best_epsilon}, "
            f"oracle gives {ref.best_cost} at eps={ref.best_epsilon}"
        )
    return res


def _result_dict(res, check):
    out = {
        "best_epsilon": _fmt(res.best_epsilon),
        "best_cost": _fmt(res.best_cost),
        "attained": res.attained,
        "eps_max": _fmt(res.eps_max),
        "evaluated_events": res.evaluated_events,
    }
    if check:
        out["check"] = "ok"
    return out


def _prepare(metric, melody, path):
    return as_segments(melody, path) if metric == "area" else as_points(melody)


def cmd_scale(args):
    if args.metric == "area" and args.eps_max is not None:
        raise UsageError("--eps-max applies to the match metric only")
    if (args.query is None) == (args.query_dir is None):
        raise UsageError("give exactly one of --query and --query-dir")
    r = _prepare(args.metric, load(args.reference)[0], args.reference)
    if args.query is not None:
        q = _prepare(args.metric, load(args.query)[0], args.query)
        try:
            res = _scale_one(args.metric, r, q, args.eps_max, args.profile is not None, args.check)
        except MelodyError as exc:
            raise InputError(str(exc)) from None
        if args.profile is not None:
            Path(args.profile).write_bytes(export_profile_csv(res.profile))
        return {"metric": args.metric, **_result_dict(res, args.check)}

    if args.profile is not None:
        raise UsageError("--profile needs a single --query")
    paths = sorted(
        p for p in Path(args.query_dir).iterdir()
        if p.is_file() and p.suffix.lower() in (".json",) + MIDI_SUFFIXES
    )

    def task(path):
        try:
            q = _prepare(args.metric, load(path)[0], path)
            return path.name, _result_dict(
                _scale_one(args.metric, r, q, args.eps_max, False, args.check), args.check
            ), None
        except (InputError, MelodyError) as exc:
            return path.name, None, ("input", str(exc))
        except CheckFailed as exc:
            return path.name, None, ("mismatch", str(exc))

    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        results = list(pool.map(task, paths))  # input order
    ok = [dict(query=name, **res) for name, res, err in results if err is None]
    ok.sort(key=lambda row: (as_rational(row["best_cost"]), row["query"]))
    for rank, row in enumerate(ok, start=1):
        row["rank"] = rank
    errors = [
        {"query": name, "kind": err[0], "error": err[1]}
        for name, _, err in results if err is not None
    ]
    return {"metric": args.metric, "ranking": ok, "errors": errors}


def thread_count() -> int:
    raw = os.environ.get("MELOGEO_THREADS")
    default = min(8, os.cpu_count() or 1)
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"MELOGEO_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"MELOGEO_THREADS must be a positive integer, got {raw!r}")
    return value


def cmd_compress(args):
    melody, unit = load(args.input)
    try:
        if args.metric == "area":
            r = as_segments(melody, args.input)
            res = compress_segments(r, args.k)
            out_melody = res.melody
            if args.check and oracle.oracle_compress_segments(r, args.k).cost != res.cost:
                raise CheckFailed("compression cost disagrees with the oracle")
            extra = {}
        else:
            r = as_points(melody)
            res = compress_points(r, args.k)
            out_melody = res.melody(r)
            if args.check and oracle.oracle_compress_points(r, args.k).cost != res.cost:
                raise CheckFailed("compression cost disagrees with the oracle")
            extra = {"indices": list(res.indices)}
    except BadK as exc:
        raise InputError(str(exc)) from None
    if args.output is not None:
        Path(args.output).write_bytes(serialize_json(out_melody, unit))
    out = {"metric": args.metric, "k": args.k, "cost": _fmt(res.cost), **extra}
    if args.check:
        out["check"] = "ok"
    out["melody"] = to_document(out_melody, unit)
    return out


def cmd_convert(args):
    melody, unit = load(args.input, args.source)
    if args.target == "point":
        melody = as_points(melody)
    data = serialize_json(melody, unit)
    if args.output is not None:
        Path(args.output).write_bytes(data)
        return {"written": str(args.output)}
    return {"melody": to_document(melody, unit)}


# plumbing -------------------------------------------------------------------------


class UsageError(Exception):
    pass


def read_config(path) -> dict:
    """``key = value`` lines; ``#`` starts a comment, ``[section]`` lines are skipped."""
    config = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror or exc}") from None
    for number, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line or (line.startswith("[") and line.endswith("]")):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{number}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        config[key.replace("-", "_")] = value.strip("\"'")
    return config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="melogeo", description="Melodic similarity by area and t-monotone matching."
    )
    parser.add_argument("--config", help="file of key = value defaults for any option")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--check", action="store_true", help="cross-check with the brute-force oracle")

    p = sub.add_parser("measure", help="cost between a reference and a query")
    p.add_argument("--reference", "-r", required=True)
    p.add_argument("--query", "-q", required=True)
    p.add_argument("--metric", choices=("area", "match"), required=True)
    p.add_argument("--epsilon", type=rational, help="scale the query first")
    common(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("scale", help="best query scaling against a reference")
    p.add_argument("--reference", "-r", required=True)
    p.add_argument("--query", "-q")
    p.add_argument("--query-dir", help="rank every .json/.mid query in this directory")
    p.add_argument("--metric", choices=("area", "match"), required=True)
    p.add_argument("--eps-max", type=rational)
    p.add_argument("--profile", metavar="OUT.csv", help="write the piecewise cost profile")
    common(p)
    p.set_defaults(func=cmd_scale)

    p = sub.add_parser("compress", help="optimal k-note compression")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--metric", choices=("area", "match"), required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--output", "-o")
    common(p)
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("convert", help="MIDI or JSON to a JSON melody document")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--from", dest="source", choices=("midi", "json"))
    p.add_argument("--to", dest="target", choices=("json", "point"), default="json")
    p.add_argument("--output", "-o")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_convert)
    return parser


def _apply_config(parser, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config is None:
        return
    config = read_config(known.config)
    for action in parser._subparsers._group_actions:
        for subparser in action.choices.values():
            dests = {a.dest for a in subparser._actions}
            defaults = {k: v for k, v in config.items() if k in dests}
            for a in subparser._actions:
                if a.dest in defaults:
                    if a.const is True:  # store_true flags
                        defaults[a.dest] = defaults[a.dest].lower() in ("1", "true", "yes", "on")
                    a.required = False
            subparser.set_defaults(**defaults)


def _print_text(result, out):
    if "ranking" in result:
        for row in result["ranking"]:
            print(f"{row['rank']}\t{row['query']}\tcost={row['best_cost']}\tepsilon={row['best_epsilon']}", file=out)
        for row in result["errors"]:
            print(f"-\t{row['query']}\t{row['kind']} error: {row['error']}", file=out)
        return
    for key, value in result.items():
        if key == "melody":
            print(json.dumps(value), file=out)
        elif isinstance(value, (list, tuple)):
            print(f"{key}: {json.dumps(value)}", file=out)
        else:
            print(f"{key}: {value}", file=out)


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"melogeo: warning: {message}", file=sys.stderr)


def main(argv=None) -> int:
    with warnings.catch_warnings():
        warnings.showwarning = _show_warning
        warnings.simplefilter("always", MelodyWarning)
        return _main(sys.argv[1:] if argv is None else list(argv))


def _main(argv) -> int:
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        result = args.func(args)
    except SystemExit as exc:  # argparse usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except UsageError as exc:
        print(f"melogeo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"melogeo: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CheckFailed as exc:
        print(f"melogeo: oracle mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except MelogeoError as exc:
        print(f"melogeo: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "json", False):
        print(json.dumps(result, sort_keys=True))
    else:
        _print_text(result, sys.stdout)
    if result.get("errors"):
        kinds = {e["kind"] for e in result["errors"]}
        return EXIT_MISMATCH if "mismatch" in kinds else EXIT_INPUT
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
