"""Command-line entry point: ``procextract extract``."""

from __future__ import annotations

import argparse
import logging
import sys

from .pipeline import read_raw_jsonl, run_pipeline


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="procextract",
        description="Turn raw procedural texts into question-answer extraction files.")
    parser.add_argument("--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", help="extract a raw JSONL corpus")
    p_extract.add_argument("--in", dest="input", required=True,
                           help='raw corpus JSONL: {"doc_id", "prompt", "text"} per line')
    p_extract.add_argument("--out-dir", required=True,
                           help="directory for the per-document extraction files")
    p_extract.add_argument("--emb", required=True,
                           help="path for the corpus embedding file")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        raw_docs = read_raw_jsonl(args.input)
        written = run_pipeline(raw_docs, args.out_dir, args.emb)
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    sys.stderr.write(f"extracted {len(written)} documents to {args.out_dir}, "
                     f"embeddings to {args.emb}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
