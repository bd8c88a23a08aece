"""Command-line entry point.

Subcommands: ``map`` (one document pair), ``mine`` (rank a corpus directory),
``eval-map`` / ``eval-rank`` (the two evaluation protocols) and ``debug``
(filter / clusters / sim stage dumps).  Exit codes are a stable contract:
0 success, 1 input error, 2 configuration error.  Every output carries a
metadata header with the engine version, the config hash and the mode, so a
run can be replayed; the engine itself is free of randomness.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import ConfigError, EngineConfig, load_config
from .entity_clustering import cluster_document, format_clusters
from .interchange import (
    ParseError,
    ValidationError,
    document_embedding_keys,
    load_corpus,
    load_document,
    load_embeddings,
)
from .mapper import find_mappings, mapping_to_dict, render_mapping
from .metrics import (
    average_precision_at_k,
    best_mapping_prf,
    load_gold_mapping,
    ndcg_at_k,
    normalize_span,
    precision_at_k,
    read_labels_csv,
)
from .mining import mine, read_ranking_csv, ranking_to_csv
from .qa_filter import filter_document
from .similarity import MODES, apply_relation_bonus, matrix_to_dict, score_pairs

logger = logging.getLogger(__name__)

ENGINE = "rolemap"


def _version() -> str:
    from . import __version__
    return __version__


def _metadata(config: EngineConfig) -> dict:
    return {
        "engine": f"{ENGINE} {_version()}",
        "config_hash": config.hash(),
        "mode": config.similarity.mode,
    }


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, ensure_ascii=False, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_engine_config(args) -> EngineConfig:
    config = load_config(getattr(args, "config", None))
    mode = getattr(args, "mode", None)
    if mode:
        config = config.with_mode(mode)
    return config


def _prepare_pair(base_path: str, target_path: str, emb_path: str, config: EngineConfig,
                  debug_filter: bool = False, debug_clusters: bool = False):
    base_doc = load_document(base_path)
    target_doc = load_document(target_path)
    base_filtered = filter_document(base_doc, config.filter)
    target_filtered = filter_document(target_doc, config.filter)

    if debug_filter:
        for doc_id, result in ((base_doc.doc_id, base_filtered),
                               (target_doc.doc_id, target_filtered)):
            for rejection in result.rejections:
                sys.stderr.write(json.dumps({
                    "doc_id": doc_id,
                    "sentence_index": rejection.sentence_index,
                    "record_position": rejection.record_position,
                    "reason": rejection.reason,
                }, ensure_ascii=False) + "\n")

    required = document_embedding_keys(base_filtered.document)
    required |= document_embedding_keys(target_filtered.document)
    emb = load_embeddings(emb_path, required)

    base = cluster_document(base_filtered.document, emb, config.clustering)
    target = cluster_document(target_filtered.document, emb, config.clustering)

    if debug_clusters:
        for clustered in (base, target):
            sys.stderr.write(f"clusters of {clustered.document.doc_id}:\n")
            sys.stderr.write(format_clusters(clustered.clusters) + "\n")

    return base, target, emb


def cmd_map(args) -> int:
    config = _load_engine_config(args)
    base, target, emb = _prepare_pair(args.base, args.target, args.embeddings, config,
                                      debug_filter=args.debug_filter,
                                      debug_clusters=args.debug_clusters)
    matrix = apply_relation_bonus(score_pairs(base, target, emb, config.similarity),
                                  config.similarity)
    if args.debug_sim:
        sys.stderr.write(json.dumps(matrix_to_dict(matrix, base, target),
                                    ensure_ascii=False) + "\n")
    mappings = find_mappings(matrix, config.beam)

    payload = {
        "metadata": _metadata(config) | {
            "base_doc": base.document.doc_id,
            "target_doc": target.document.doc_id,
        },
        "mappings": [mapping_to_dict(m, base, target) for m in mappings],
    }
    _emit(payload, args.out)

    if args.graph:
        Path(args.graph).write_text(render_mapping(mappings[0], base, target),
                                    encoding="utf-8")
    return 0


def cmd_mine(args) -> int:
    config = _load_engine_config(args)
    corpus = load_corpus(args.corpus)
    if len(corpus) < 2:
        raise ValidationError(f"need >= 2 documents in {args.corpus}, found {len(corpus)}")

    required: set[str] = set()
    for doc in corpus:
        required |= document_embedding_keys(filter_document(doc, config.filter).document)
    emb = load_embeddings(args.embeddings, required)

    ranked = mine(corpus, emb, config, jobs=args.jobs)
    meta = _metadata(config)
    text = ranking_to_csv(ranked, {k: str(v) for k, v in meta.items()})
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _mapping_json_span_pairs(path: str) -> list[list[tuple[frozenset[str], frozenset[str]]]]:
    """Predicted span-set pairs per mapping, read from a ``map`` output file."""
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed JSON: {exc}") from exc
    mappings = obj.get("mappings") if isinstance(obj, dict) else None
    if not isinstance(mappings, list):
        raise ValidationError(f"{path}: expected an object with a 'mappings' list")
    result = []
    for mapping in mappings:
        pairs = []
        for pair in mapping.get("pairs", []):
            pairs.append((
                frozenset(normalize_span(s) for s in pair["base"]["spans"]),
                frozenset(normalize_span(s) for s in pair["target"]["spans"]),
            ))
        result.append(pairs)
    return result


def cmd_eval_map(args) -> int:
    config = _load_engine_config(args)
    predictions = _mapping_json_span_pairs(args.pred)
    gold = load_gold_mapping(args.gold)
    results = {}
    for k in args.k:
        prf = best_mapping_prf(predictions, gold, k)
        results[str(k)] = {"precision": prf.precision, "recall": prf.recall, "f1": prf.f1}
    _emit({"metadata": _metadata(config), "results": results}, args.out)
    return 0


def cmd_eval_rank(args) -> int:
    config = _load_engine_config(args)
    ranking = read_ranking_csv(args.ranking)
    labels = read_labels_csv(args.labels)
    results = {}
    for k in args.k:
        results[str(k)] = {
            "precision": precision_at_k(ranking, labels, k),
            "average_precision": average_precision_at_k(ranking, labels, k),
            "ndcg": ndcg_at_k(ranking, labels, k),
        }
    _emit({"metadata": _metadata(config), "results": results}, args.out)
    return 0


def cmd_debug(args) -> int:
    config = _load_engine_config(args)
    if args.stage in ("clusters", "sim") and not args.embeddings:
        raise ConfigError(f"debug {args.stage} requires --embeddings")
    if args.stage == "sim" and not args.target:
        raise ConfigError("debug sim needs both a base and a target document")
    if args.stage == "filter":
        doc = load_document(args.base)
        result = filter_document(doc, config.filter)
        for rejection in result.rejections:
            sys.stdout.write(json.dumps({
                "doc_id": doc.doc_id,
                "sentence_index": rejection.sentence_index,
                "record_position": rejection.record_position,
                "reason": rejection.reason,
            }, ensure_ascii=False) + "\n")
        return 0

    if args.stage == "clusters":
        doc = load_document(args.base)
        filtered = filter_document(doc, config.filter).document
        emb = load_embeddings(args.embeddings, document_embedding_keys(filtered))
        clustered = cluster_document(filtered, emb, config.clustering)
        sys.stdout.write(format_clusters(clustered.clusters) + "\n")
        return 0

    # sim
    base, target, emb = _prepare_pair(args.base, args.target, args.embeddings, config)
    matrix = apply_relation_bonus(score_pairs(base, target, emb, config.similarity),
                                  config.similarity)
    sys.stdout.write(json.dumps(matrix_to_dict(matrix, base, target),
                                ensure_ascii=False, indent=2) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=ENGINE,
        description="Find and mine analogical mappings between procedural texts.")
    parser.add_argument("--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p_map = sub.add_parser("map", help="map one base document onto one target document")
    p_map.add_argument("base")
    p_map.add_argument("target")
    p_map.add_argument("--embeddings", required=True)
    p_map.add_argument("--config")
    p_map.add_argument("--mode", choices=MODES)
    p_map.add_argument("--out")
    p_map.add_argument("--graph", help="also write the top-1 mapping as a DOT file")
    p_map.add_argument("--debug-filter", action="store_true")
    p_map.add_argument("--debug-clusters", action="store_true")
    p_map.add_argument("--debug-sim", action="store_true")
    p_map.set_defaults(func=cmd_map)

    p_mine = sub.add_parser("mine", help="rank all document pairs in a corpus directory")
    p_mine.add_argument("corpus")
    p_mine.add_argument("--embeddings", required=True)
    p_mine.add_argument("--config")
    p_mine.add_argument("--mode", choices=MODES)
    p_mine.add_argument("--jobs", type=int, default=1)
    p_mine.add_argument("--out")
    p_mine.set_defaults(func=cmd_mine)

    p_emap = sub.add_parser("eval-map", help="precision/recall/F1 of predicted mappings")
    p_emap.add_argument("--pred", required=True)
    p_emap.add_argument("--gold", required=True)
    p_emap.add_argument("--k", type=int, nargs="+", default=[1, 3])
    p_emap.add_argument("--config")
    p_emap.add_argument("--out")
    p_emap.set_defaults(func=cmd_eval_map)

    p_erank = sub.add_parser("eval-rank", help="P@k / AP@k / NDCG@k of a mined ranking")
    p_erank.add_argument("--ranking", required=True)
    p_erank.add_argument("--labels", required=True)
    p_erank.add_argument("--k", type=int, nargs="+", required=True)
    p_erank.add_argument("--config")
    p_erank.add_argument("--out")
    p_erank.set_defaults(func=cmd_eval_rank)

    p_debug = sub.add_parser("debug", help="dump one pipeline stage")
    p_debug.add_argument("stage", choices=["filter", "clusters", "sim"])
    p_debug.add_argument("base")
    p_debug.add_argument("target", nargs="?")
    p_debug.add_argument("--embeddings")
    p_debug.add_argument("--config")
    p_debug.add_argument("--mode", choices=MODES)
    p_debug.set_defaults(func=cmd_debug)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2
    except (ParseError, ValidationError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
