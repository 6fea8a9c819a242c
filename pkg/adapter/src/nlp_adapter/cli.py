"""Command line front end: adapter --records F --out F [--model NAME]."""

import argparse
import logging
import os
import sys

from .config import DEFAULT_MODEL, AdapterConfig
from .errors import AdapterError
from .pipeline import parse_records

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2

LOG_ENV_VAR = "ADAPTER_LOG"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adapter",
        description="Parse source records into a CoNLL-U file for claim detection.",
    )
    parser.add_argument("--records", required=True, help="input records JSONL file")
    parser.add_argument("--out", required=True, help="output CoNLL-U file")
    parser.add_argument(
        "--model",
        default=DEFAULT_MODEL,
        help=f"parser model name, or 'builtin' for the rule parser (default {DEFAULT_MODEL})",
    )
    parser.add_argument(
        "--no-split",
        action="store_true",
        help="treat each title or snippet as a single sentence",
    )
    return parser


def main(argv=None) -> int:
    level = os.environ.get(LOG_ENV_VAR, "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(message)s")
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    if not os.path.isfile(args.records):
        print(f"adapter: records file not found: {args.records}", file=sys.stderr)
        return EXIT_USAGE
    try:
        config = AdapterConfig(
            records_path=args.records,
            out_path=args.out,
            model=args.model,
            split_sentences=not args.no_split,
        )
        stats = parse_records(config)
    except AdapterError as exc:
        print(f"adapter: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(
        f"records={stats.records} skipped={stats.skipped}"
        f" duplicates={stats.duplicates} blocks={stats.blocks} tokens={stats.tokens}"
    )
    return EXIT_OK


def run() -> None:
    raise SystemExit(main())
