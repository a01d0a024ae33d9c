"""Command-line front end: validate sites, serve, replay logs, run analyses.

Exit codes: 0 success, 2 usage, 3 unparsable document, 4 site/vocabulary
validation failure, 5 domain error (conflicts, unsatisfiable tasks, failed
replays, ...).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis
from .errors import (
    DocumentParseError,
    ExtemporeError,
    SiteValidationError,
    VocabularyError,
)
from .fixtures import (
    full_congress_document,
    full_congress_vocab_document,
    mini_congress_document,
    mini_vocab_document,
)
from .site import SiteTree, load_site
from .vocab import build_lexicon, expand_terms, parse_fds

EXIT_OK = 0
EXIT_PARSE = 3
EXIT_VALIDATION = 4
EXIT_DOMAIN = 5

_BUNDLED_SITES = {
    "mini-congress": mini_congress_document,
    "full-congress": full_congress_document,
}
_BUNDLED_VOCABS = {
    "mini-congress": mini_vocab_document,
    "full-congress": full_congress_vocab_document,
}


def _read_document(ref: str, bundled: dict | None = None):
    if bundled and ref in bundled:
        return bundled[ref]()
    path = Path(ref)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentParseError(f"cannot read {ref!r}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentParseError(f"{ref}: invalid JSON: {exc}") from exc


def _load_site_arg(ref: str) -> SiteTree:
    return load_site(_read_document(ref, _BUNDLED_SITES))


def _prepare_records(records, lexicon, fds):
    """Fill in aspects for scripted utterances that carry only raw text."""
    out = []
    for record in records:
        if record.kind == "utterance" and not record.aspects:
            aspects = tuple(expand_terms(lexicon.resolve(record.payload), fds))
            record = analysis.EventRecord(
                step=record.step,
                kind=record.kind,
                payload=record.payload,
                aspects=aspects,
                verification=record.verification,
            )
        out.append(record)
    return out


def _emit(args, payload, text: str) -> None:
    if getattr(args, "format", "text") == "records":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _cmd_validate(args) -> int:
    site = _load_site_arg(args.site)
    lines = [
        f"site {site.site_id!r}: {len(site.facets)} facets ({', '.join(site.facets)}), "
        f"{site.leaf_count} pages, depth {site.max_depth}"
    ]
    if args.vocab:
        vocab_doc = _read_document(args.vocab, _BUNDLED_VOCABS)
        lexicon = build_lexicon(site, vocab_doc)
        fds = parse_fds(site, vocab_doc)
        lines.append(f"vocabulary: {len(lexicon.entries)} tokens, {len(fds)} dependencies")
    lines.append("OK")
    print("\n".join(lines))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import SiteEntry, create_app, default_catalog

    if args.site:
        site_doc = _read_document(args.site, _BUNDLED_SITES)
        vocab_doc = _read_document(args.vocab, _BUNDLED_VOCABS) if args.vocab else None
        catalog = [SiteEntry.from_documents(site_doc, vocab_doc)]
    else:
        catalog = default_catalog()
    app = create_app(catalog, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def _session_context(args):
    site = _load_site_arg(args.site)
    vocab_doc = _read_document(args.vocab, _BUNDLED_VOCABS) if args.vocab else None
    lexicon = build_lexicon(site, vocab_doc)
    fds = parse_fds(site, vocab_doc) if vocab_doc else ()
    return site, lexicon, fds


def _cmd_interact(args) -> int:
    site, lexicon, fds = _session_context(args)
    records = analysis.parse_log_document(_read_document(args.log))
    records = _prepare_records(records, lexicon, fds)
    result = analysis.replay(site, records)
    if args.format == "records":
        print(json.dumps(result.summaries, indent=2, sort_keys=True))
        return EXIT_OK
    for record, summary in zip(records, result.summaries):
        state = (
            f"terminal {summary['leaf']['id']}"
            if summary["terminal"]
            else f"solicits {summary['solicits']}, links {summary['links']}"
        )
        print(
            f"{record.step}. {record.kind} {record.payload!r} -> "
            f"{state}, {summary['remainingLeafCount']} pages"
        )
    return EXIT_OK


def _cmd_replay(args) -> int:
    site, lexicon, fds = _session_context(args)
    records = _prepare_records(
        analysis.parse_log_document(_read_document(args.log)), lexicon, fds
    )
    result = analysis.replay(site, records)
    _emit(
        args,
        {"tokens": result.tokens, "per_event": result.tokens_per_event},
        "".join(result.tokens),
    )
    return EXIT_OK


def _cmd_classify(args) -> int:
    if args.tokens:
        tokens = list(args.tokens.strip().upper())
    else:
        if not (args.site and args.log):
            print("classify needs --tokens or both --site and --log", file=sys.stderr)
            return 2
        site, lexicon, fds = _session_context(args)
        records = _prepare_records(
            analysis.parse_log_document(_read_document(args.log)), lexicon, fds
        )
        tokens = analysis.replay(site, records).tokens
    seq = analysis.classify_sequence(tokens)
    _emit(
        args,
        {"class": seq.category, "pattern": seq.pattern},
        seq.category if seq.category != "M" else f"M {seq.pattern}",
    )
    return EXIT_OK


def _cmd_mincount(args) -> int:
    site = _load_site_arg(args.site)
    task = analysis.load_task(_read_document(args.task))
    values = {
        regime: analysis.min_interactions(site, task, regime) for regime in analysis.REGIMES
    }
    _emit(
        args,
        values,
        "\n".join(f"{regime}: {count}" for regime, count in values.items()),
    )
    return EXIT_OK


def _cmd_orient(args) -> int:
    site = _load_site_arg(args.site)
    task = analysis.load_task(_read_document(args.task))
    result = analysis.orientation(site, task)
    _emit(args, {"orientation": result}, result)
    return EXIT_OK


def _cmd_curve(args) -> int:
    site, lexicon, fds = _session_context(args)
    records = _prepare_records(
        analysis.parse_log_document(_read_document(args.log)), lexicon, fds
    )
    curve = analysis.narrowing_curve(site, records)
    _emit(
        args,
        {"points": [list(p) for p in curve.points]},
        "\n".join(f"{step} {count}" for step, count in curve.points),
    )
    return EXIT_OK


def _cmd_report(args) -> int:
    site, lexicon, fds = _session_context(args)
    tasks = args.task or []
    logs = args.log or []
    if len(tasks) != len(logs):
        print("report needs matching --task/--log pairs", file=sys.stderr)
        return 2
    entries = []
    for task_ref, log_ref in zip(tasks, logs):
        task = analysis.load_task(_read_document(task_ref))
        records = _prepare_records(
            analysis.parse_log_document(_read_document(log_ref)), lexicon, fds
        )
        entries.append(analysis.ReportEntry(task=task, records=records, label=log_ref))
    report = analysis.aggregate_report(site, entries)
    _emit(args, report, analysis.render_report(report))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extempore",
        description="Out-of-turn interaction engine: site tools, service, and analyses.",
        epilog="--site accepts a file path or a bundled fixture name "
        "(mini-congress, full-congress).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("validate", _cmd_validate, "check a site (and optional vocabulary) document")
    p.add_argument("--site", required=True)
    p.add_argument("--vocab")

    p = add("serve", _cmd_serve, "run the HTTP service")
    p.add_argument("--site")
    p.add_argument("--vocab")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--ui-dir", help="directory of built UI assets to mount at /ui")

    for name, func, help_text in (
        ("interact", _cmd_interact, "run a scripted session, printing each state"),
        ("replay", _cmd_replay, "replay a log and print its token sequence"),
        ("curve", _cmd_curve, "print the narrowing curve of a log"),
    ):
        p = add(name, func, help_text)
        p.add_argument("--site", required=True)
        p.add_argument("--vocab")
        p.add_argument("--log", required=True)
        p.add_argument("--format", choices=("text", "records"), default="text")

    p = add("classify", _cmd_classify, "classify a token sequence or a log")
    p.add_argument("--tokens", help="literal token string, e.g. OOI")
    p.add_argument("--site")
    p.add_argument("--vocab")
    p.add_argument("--log")
    p.add_argument("--format", choices=("text", "records"), default="text")

    for name, func, help_text in (
        ("mincount", _cmd_mincount, "minimum interactions for a task, both regimes"),
        ("orient", _cmd_orient, "task orientation against a site"),
    ):
        p = add(name, func, help_text)
        p.add_argument("--site", required=True)
        p.add_argument("--task", required=True)
        p.add_argument("--format", choices=("text", "records"), default="text")

    p = add("report", _cmd_report, "aggregate classification table over task/log pairs")
    p.add_argument("--site", required=True)
    p.add_argument("--vocab")
    p.add_argument("--task", action="append")
    p.add_argument("--log", action="append")
    p.add_argument("--format", choices=("text", "records"), default="text")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DocumentParseError as exc:
        print(f"parse error: {exc.message}", file=sys.stderr)
        return EXIT_PARSE
    except (SiteValidationError, VocabularyError) as exc:
        print(f"validation error: {exc.message}", file=sys.stderr)
        return EXIT_VALIDATION
    except ExtemporeError as exc:
        print(f"error [{exc.code}]: {exc.message}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
