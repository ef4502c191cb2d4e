"""Command-line entry point orchestrating the pipeline stages.

Stages communicate through line-delimited record files; each stage writes
a machine-readable run manifest next to its output.  Exit codes: 0 ok,
1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import evaluation, forest, selection
from .annotate import (
    AnnotatedSentence,
    PipelineOptions,
    annotate_corpus,
    corpus_predicate_frequencies,
)
from .corpus import load_corpus
from .entities import EntityRepository, load_source_entries, merge_records
from .events import CandidateQuintuple, candidates_by_event, generate_candidates, group_sentences
from .jsonl import read_records, write_records
from .kbstore import KBStore
from .matching import load_ground_truth
from .ontology import (
    LexicalResource,
    Ontology,
    build_ontology,
    export_event_triples,
    load_noun_lexicon,
    load_overlay,
    load_seeds,
)
from .selection import SelectionResult

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

_DATA_DIR = Path(__file__).parent / "data"
DEFAULT_ONTOLOGY = _DATA_DIR / "ontology.jsonl"
DEFAULT_NOUN_LEXICON = _DATA_DIR / "noun_lexicon.tsv"
DEFAULT_ENTITY_SOURCE = _DATA_DIR / "entities_source.jsonl"


class _UsageError(SystemExit):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _setting(args: argparse.Namespace, config: dict, key: str, default):
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in config:
        return config[key]
    return default


def _write_manifest(output: str | Path, stage: str, inputs: dict, config: dict, counts: dict) -> None:
    manifest = {"stage": stage, "inputs": inputs, "config": config, "counts": counts}
    Path(str(output) + ".manifest.json").write_text(
        json.dumps(manifest, indent=2), encoding="utf-8"
    )


def _load_ontology(args: argparse.Namespace, config: dict | None = None) -> Ontology:
    config = config or {}
    path = _setting(args, config, "ontology", DEFAULT_ONTOLOGY)
    nouns = _setting(args, config, "noun_lexicon", DEFAULT_NOUN_LEXICON)
    return Ontology.load(path, nouns)


def _load_repository(path: str | Path) -> EntityRepository:
    """A prebuilt repository file, or raw source entries as a fallback."""
    first = ""
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                first = line
                break
    if first and "entity_id" in json.loads(first):
        return EntityRepository.load(path)
    return merge_records(load_source_entries(path))


def _read_candidates(path: str | Path) -> dict:
    candidates = [CandidateQuintuple.from_record(rec) for rec in read_records(path)]
    return candidates_by_event(candidates)


def build_parser() -> _Parser:
    parser = _Parser(prog="econevents", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ontology", help="build or export the predicate hierarchy")
    osub = p.add_subparsers(dest="ontology_command", required=True)
    b = osub.add_parser("build")
    b.add_argument("--seeds", required=True)
    b.add_argument("--lexres", required=True)
    b.add_argument("--overlay")
    b.add_argument("--noun-lexicon", dest="noun_lexicon")
    b.add_argument("-o", "--output", required=True)
    x = osub.add_parser("export-triples")
    x.add_argument("--ontology")
    x.add_argument("--noun-lexicon", dest="noun_lexicon")
    x.add_argument("--selections", required=True)
    x.add_argument("-o", "--output", required=True)

    p = sub.add_parser("entities", help="build or query the entity repository")
    esub = p.add_subparsers(dest="entities_command", required=True)
    b = esub.add_parser("build")
    b.add_argument("--source", default=str(DEFAULT_ENTITY_SOURCE))
    b.add_argument("-o", "--output", required=True)
    q = esub.add_parser("lookup")
    q.add_argument("text")
    q.add_argument("--entities", default=str(DEFAULT_ENTITY_SOURCE))
    q.add_argument("--require-description", action="store_true", default=None)

    p = sub.add_parser("annotate", help="semantic annotation of corpus sentences")
    p.add_argument("--corpus", required=True)
    p.add_argument("--ontology")
    p.add_argument("--noun-lexicon", dest="noun_lexicon")
    p.add_argument("--entities", default=str(DEFAULT_ENTITY_SOURCE))
    p.add_argument("--noun-predicates", dest="noun_predicates", action="store_true", default=None)
    p.add_argument("--enforce-roles", dest="enforce_roles", action="store_true", default=None)
    p.add_argument("--require-description", dest="require_description",
                   action="store_true", default=None)
    p.add_argument("--config")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("extract", help="group sentences into events and emit candidates")
    p.add_argument("--annotated", required=True)
    p.add_argument("--ontology")
    p.add_argument("--noun-lexicon", dest="noun_lexicon")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("select", help="choose one quintuple per event")
    p.add_argument("--candidates", required=True)
    p.add_argument("--method", required=True,
                   choices=["earliest", "latest", "frequent", "supervised"])
    p.add_argument("--model")
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--config")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("train", help="train the quintuple ranker")
    p.add_argument("--candidates", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--ontology")
    p.add_argument("--noun-lexicon", dest="noun_lexicon")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trees", type=int, default=None)
    p.add_argument("--max-depth", dest="max_depth", type=int, default=None)
    p.add_argument("--min-leaf", dest="min_leaf", type=int, default=None)
    p.add_argument("--config")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("importance", help="report per-feature Gini importance")
    p.add_argument("--model", required=True)

    p = sub.add_parser("evaluate", help="score selections against ground truth")
    p.add_argument("--selections", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--ontology")
    p.add_argument("--noun-lexicon", dest="noun_lexicon")
    p.add_argument("--mode", choices=["events", "strict", "relaxed"], default="relaxed")

    p = sub.add_parser("loocv", help="leave-one-out cross-validation by company")
    p.add_argument("--corpus", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--entities", default=str(DEFAULT_ENTITY_SOURCE))
    p.add_argument("--ontology")
    p.add_argument("--noun-lexicon", dest="noun_lexicon")
    p.add_argument("--mode", choices=["events", "strict", "relaxed"], default="relaxed")
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--config")

    p = sub.add_parser("stats", help="corpus predicate frequencies and counts")
    p.add_argument("--corpus", required=True)
    p.add_argument("--ontology")
    p.add_argument("--noun-lexicon", dest="noun_lexicon")

    p = sub.add_parser("serve", help="serve the curation HTTP API")
    p.add_argument("--data", required=True, help="directory with candidates.jsonl etc.")
    p.add_argument("--port", type=int, default=8400)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--gamma", type=float, default=None)

    return parser


def _cmd_ontology(args: argparse.Namespace) -> int:
    if args.ontology_command == "build":
        seeds = load_seeds(args.seeds)
        resource = LexicalResource.load(args.lexres)
        overlay = load_overlay(args.overlay) if args.overlay else None
        nouns = load_noun_lexicon(args.noun_lexicon) if args.noun_lexicon else None
        ontology = build_ontology(seeds, resource, overlay, nouns)
        ontology.save(args.output)
        _write_manifest(args.output, "ontology-build",
                        {"seeds": args.seeds, "lexres": args.lexres, "overlay": args.overlay},
                        {}, {"nodes": len(ontology)})
        return EXIT_OK
    ontology = _load_ontology(args)
    selections = [SelectionResult.from_record(rec) for rec in read_records(args.selections)]
    lines = []
    for sel in selections:
        if sel.chosen is None:
            continue
        triples = export_event_triples(
            ontology,
            sel.chosen.subject_id,
            sel.chosen.predicate_label,
            sel.chosen.object_id,
            sel.event_key.encode(),
        )
        lines.extend("\t".join(t) for t in triples)
    Path(args.output).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    _write_manifest(args.output, "export-triples", {"selections": args.selections}, {},
                    {"triples": len(lines)})
    return EXIT_OK


def _cmd_entities(args: argparse.Namespace) -> int:
    if args.entities_command == "build":
        repo = merge_records(load_source_entries(args.source))
        repo.save(args.output)
        _write_manifest(args.output, "entities-build", {"source": args.source}, {},
                        {"entities": len(repo)})
        return EXIT_OK
    repo = _load_repository(args.entities)
    rec = repo.resolve_mention(args.text, bool(args.require_description))
    if rec is None:
        print("no match")
        return EXIT_OK
    print(json.dumps(rec.to_record(), indent=2))
    return EXIT_OK


def _cmd_annotate(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    options = PipelineOptions(
        noun_predicates=bool(_setting(args, config, "noun_predicates", False)),
        enforce_roles=bool(_setting(args, config, "enforce_roles", False)),
        require_description=bool(_setting(args, config, "require_description", False)),
    )
    ontology = _load_ontology(args, config)
    repository = _load_repository(args.entities)
    docs = list(load_corpus(args.corpus))
    annotated = annotate_corpus(docs, ontology, repository, options)
    write_records(args.output, (a.to_record() for a in annotated))
    _write_manifest(
        args.output, "annotate",
        {"corpus": args.corpus, "entities": args.entities},
        {"noun_predicates": options.noun_predicates, "enforce_roles": options.enforce_roles,
         "require_description": options.require_description},
        {"documents": len(docs), "annotated_sentences": len(annotated)},
    )
    return EXIT_OK


def _cmd_extract(args: argparse.Namespace) -> int:
    ontology = _load_ontology(args)
    annotated = [AnnotatedSentence.from_record(rec) for rec in read_records(args.annotated)]
    groups = group_sentences(annotated, ontology)
    candidates = [c for g in groups for c in generate_candidates(g)]
    write_records(args.output, (c.to_record() for c in candidates))
    _write_manifest(args.output, "extract", {"annotated": args.annotated}, {},
                    {"events": len(groups), "quintuples": len(candidates)})
    return EXIT_OK


def _cmd_select(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    gamma = float(_setting(args, config, "gamma", selection.DEFAULT_GAMMA))
    by_event = _read_candidates(args.candidates)
    model = None
    if args.method == "supervised":
        model_path = _setting(args, config, "model", None)
        if not model_path:
            print("econevents select: error: --model is required for supervised selection",
                  file=sys.stderr)
            return EXIT_USAGE
        model = forest.ForestModel.load(model_path)
    results = selection.run_selection(by_event, args.method, model=model, gamma=gamma)
    write_records(args.output, (r.to_record() for r in results))
    _write_manifest(
        args.output, "select", {"candidates": args.candidates},
        {"method": args.method, "gamma": gamma},
        {"events": len(results), "returned": sum(1 for r in results if r.chosen)},
    )
    return EXIT_OK


def _cmd_train(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    ontology = _load_ontology(args, config)
    by_event = _read_candidates(args.candidates)
    truths = load_ground_truth(args.truth)
    instances = forest.label_instances(by_event, truths, ontology)
    model = forest.train_forest(
        instances,
        n_trees=int(_setting(args, config, "trees", forest.DEFAULT_N_TREES)),
        max_depth=int(_setting(args, config, "max_depth", forest.DEFAULT_MAX_DEPTH)),
        min_leaf=int(_setting(args, config, "min_leaf", forest.DEFAULT_MIN_LEAF)),
        seed=int(_setting(args, config, "seed", 0)),
    )
    model.save(args.output)
    _write_manifest(
        args.output, "train", {"candidates": args.candidates, "truth": args.truth},
        model.hyperparams | {"seed": model.seed},
        {"instances": len(instances), "positives": sum(i.label for i in instances)},
    )
    return EXIT_OK


def _cmd_importance(args: argparse.Namespace) -> int:
    model = forest.ForestModel.load(args.model)
    importances = forest.gini_importance(model)
    for name, weight in sorted(importances.items(), key=lambda kv: -kv[1]):
        print(f"{name}\t{weight:.4f}")
    return EXIT_OK


_MODE_MAP = {"events": evaluation.MODE_EVENTS_ONLY, "strict": evaluation.MODE_STRICT,
             "relaxed": evaluation.MODE_RELAXED}


def _cmd_evaluate(args: argparse.Namespace) -> int:
    ontology = _load_ontology(args)
    selections = [SelectionResult.from_record(rec) for rec in read_records(args.selections)]
    truths = load_ground_truth(args.truth)
    report = evaluation.evaluate(selections, truths, ontology, _MODE_MAP[args.mode])
    print(f"mode={report.mode} P={report.precision:.3f} R={report.recall:.3f} "
          f"F1={report.f1:.3f} (tp={report.tp} fp={report.fp} fn={report.fn})")
    print(json.dumps(report.to_record()))
    return EXIT_OK


def _cmd_loocv(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    ontology = _load_ontology(args, config)
    repository = _load_repository(_setting(args, config, "entities", args.entities))
    options = PipelineOptions(
        noun_predicates=bool(config.get("noun_predicates", True)),
        enforce_roles=bool(config.get("enforce_roles", True)),
        require_description=bool(config.get("require_description", True)),
    )
    docs = list(load_corpus(_setting(args, config, "corpus", args.corpus)))
    annotated = annotate_corpus(docs, ontology, repository, options)
    groups = group_sentences(annotated, ontology)
    by_event = {g.key: generate_candidates(g) for g in groups}
    truths = load_ground_truth(args.truth)
    report = evaluation.loo_cv(
        by_event, truths, ontology,
        mode=_MODE_MAP[args.mode],
        gamma=float(_setting(args, config, "gamma", selection.DEFAULT_GAMMA)),
        seed=int(_setting(args, config, "seed", 0)),
    )
    for company, fold in report.folds:
        print(f"{company}: P={fold.precision:.3f} R={fold.recall:.3f} F1={fold.f1:.3f}")
    agg = report.aggregate
    print(f"aggregate: P={agg.precision:.3f} R={agg.recall:.3f} F1={agg.f1:.3f} "
          f"(tp={agg.tp} fp={agg.fp} fn={agg.fn})")
    print(json.dumps(report.to_record()))
    return EXIT_OK


def _cmd_stats(args: argparse.Namespace) -> int:
    ontology = _load_ontology(args)
    docs = list(load_corpus(args.corpus))
    counts = corpus_predicate_frequencies(docs, ontology)
    total = sum(counts.values())
    out = {
        "documents": len(docs),
        "predicate_occurrences": total,
        "counts": {k: v for k, v in sorted(counts.items(), key=lambda kv: -kv[1]) if v},
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    data = Path(args.data)
    candidates_path = data / "candidates.jsonl"
    if not candidates_path.exists():
        print(f"econevents serve: error: missing {candidates_path}", file=sys.stderr)
        return EXIT_DATA
    by_event = _read_candidates(candidates_path)
    model = None
    if (data / "model.json").exists():
        model = forest.ForestModel.load(data / "model.json")
    entities_path = data / "entities.jsonl"
    if not entities_path.exists():
        entities_path = DEFAULT_ENTITY_SOURCE
    repository = _load_repository(entities_path)
    ontology_path = data / "ontology.jsonl"
    nouns_path = data / "noun_lexicon.tsv"
    ontology = Ontology.load(
        ontology_path if ontology_path.exists() else DEFAULT_ONTOLOGY,
        nouns_path if nouns_path.exists() else DEFAULT_NOUN_LEXICON,
    )
    corpus_path = data / "corpus.jsonl"
    journal = data / "journal.jsonl"
    store = KBStore.from_candidates(
        by_event,
        model=model,
        gamma=args.gamma if args.gamma is not None else selection.DEFAULT_GAMMA,
        journal_path=journal,
        corpus_path=corpus_path if corpus_path.exists() else None,
    )
    if journal.exists():
        store.replay_journal(journal)
    app = create_app(store, repository, ontology)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


_COMMANDS = {
    "ontology": _cmd_ontology,
    "entities": _cmd_entities,
    "annotate": _cmd_annotate,
    "extract": _cmd_extract,
    "select": _cmd_select,
    "train": _cmd_train,
    "importance": _cmd_importance,
    "evaluate": _cmd_evaluate,
    "loocv": _cmd_loocv,
    "stats": _cmd_stats,
    "serve": _cmd_serve,
}


def run_stage(argv: list[str]) -> int:
    """Parse and run one stage; data problems exit 2 with a named artifact."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        print(f"econevents {args.command}: error: missing input {exc.filename}", file=sys.stderr)
        return EXIT_DATA
    except (ValueError, KeyError) as exc:
        print(f"econevents {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    return run_stage(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
