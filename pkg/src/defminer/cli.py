"""Command-line pipeline: ingest -> extract -> analyze -> graph -> evaluate.

Every subcommand reads a flat key=value config file whose entries can be
overridden by same-named flags.  Outputs are deterministic: identical
inputs and config produce byte-identical files (the manifest timestamp
excepted).

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

from . import __version__
from .analytics import (
    distribution_entropy,
    feature_cooccurrence,
    feature_distribution,
    genus_distribution,
    observation_profile,
)
from .corpus_io import (
    Corpus,
    CorpusError,
    attach_conllu,
    data_path,
    file_checksum,
    load_corpus,
    load_stopwords,
)
from .evaluation import (
    EvaluationError,
    evaluate_rule_set,
    induce_rule_statistics,
    load_counts_csv,
    load_gold,
    rank_and_select,
    RuleSetCandidate,
    write_report_csv,
)
from .extraction import (
    ExtractionDiagnostics,
    definitions_to_csv,
    definitions_to_jsonl,
    extract_definitions,
    extract_hyponyms,
    extract_synonyms,
    hyponyms_to_csv,
    hyponyms_to_jsonl,
)
from .graphs import (
    GraphExportError,
    build_definition_network,
    build_ontology,
    cluster_network,
    export_graph,
)
from .rule_engine import RuleError, load_rule_catalog

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3

_DATA_ERRORS = (CorpusError, RuleError, EvaluationError, GraphExportError, FileNotFoundError)


class UsageError(Exception):
    pass


class StageError(Exception):
    """A pipeline stage failed; carries the stage name for the message."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage {stage}: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass(frozen=True)
class RunConfig:
    corpus_path: str = ""
    conllu_path: str = ""
    format: str = "jsonl"
    term: str = ""
    rule_catalog_path: str = ""
    stopword_path: str = ""
    output_dir: str = "out"
    min_cooccurrence: int = 2
    network_min_weight: int = 1
    cluster_threshold: int = 1
    precision_floor: float = 0.65

    def validate(self) -> None:
        if self.min_cooccurrence < 1:
            raise UsageError("min_cooccurrence must be at least 1")
        if self.network_min_weight < 1:
            raise UsageError("network_min_weight must be at least 1")
        if self.cluster_threshold < 1:
            raise UsageError("cluster_threshold must be at least 1")
        if not (0.0 < self.precision_floor <= 1.0):
            raise UsageError("precision_floor must lie in (0, 1]")
        if self.format not in ("jsonl", "csv"):
            raise UsageError(f"unknown corpus format {self.format!r}")


_INT_KEYS = {"min_cooccurrence", "network_min_weight", "cluster_threshold"}
_FLOAT_KEYS = {"precision_floor"}


def load_config_file(path: str | Path) -> dict[str, str]:
    values: dict[str, str] = {}
    known = {f.name for f in fields(RunConfig)}
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"config line {line_no}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in known:
            raise UsageError(f"config line {line_no}: unknown key {key!r}")
        values[key] = value.strip()
    return values


def build_config(args: argparse.Namespace) -> RunConfig:
    values: dict = {}
    if getattr(args, "config", None):
        values.update(load_config_file(args.config))
    for f in fields(RunConfig):
        flag_value = getattr(args, f.name, None)
        if flag_value is not None:
            values[f.name] = flag_value
    for key in list(values):
        if key in _INT_KEYS:
            values[key] = int(values[key])
        elif key in _FLOAT_KEYS:
            values[key] = float(values[key])
    config = RunConfig(**values)
    config.validate()
    return config


# ---------------------------------------------------------------------------
# pipeline plumbing
# ---------------------------------------------------------------------------

def _require(config: RunConfig, *keys: str) -> None:
    for key in keys:
        if not getattr(config, key):
            raise UsageError(f"missing required option --{key.replace('_', '-')}")


def _catalog_path(config: RunConfig) -> Path:
    return Path(config.rule_catalog_path) if config.rule_catalog_path else data_path("rules.jsonl")


def _stopword_path(config: RunConfig) -> Path:
    return Path(config.stopword_path) if config.stopword_path else data_path("stopwords.txt")


def _load_corpus(config: RunConfig) -> Corpus:
    corpus = load_corpus(config.corpus_path, config.format)
    if config.conllu_path:
        conllu_text = Path(config.conllu_path).read_text(encoding="utf-8")
        corpus = attach_conllu(corpus, conllu_text)
    return corpus


def _load_inputs(config: RunConfig):
    corpus = _load_corpus(config)
    catalog_path = _catalog_path(config)
    if not catalog_path.exists():
        raise FileNotFoundError(f"rule_catalog_path {catalog_path} does not exist")
    catalog = load_rule_catalog(catalog_path)
    stopword_path = _stopword_path(config)
    if not stopword_path.exists():
        raise FileNotFoundError(f"stopword_path {stopword_path} does not exist")
    stopwords = load_stopwords(stopword_path)
    return corpus, catalog, stopwords, catalog_path, stopword_path


class OutputWriter:
    """Collects output files so a failed run leaves nothing behind."""

    def __init__(self, output_dir: str | Path):
        self.output_dir = Path(output_dir)
        self.written: list[Path] = []

    def write_bytes(self, name: str, data: bytes) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        path = self.output_dir / name
        path.write_bytes(data)
        self.written.append(path)
        return path

    def write_text(self, name: str, text: str) -> Path:
        return self.write_bytes(name, text.encode("utf-8"))

    def write_json(self, name: str, payload) -> Path:
        return self.write_text(name, json.dumps(payload, indent=2, sort_keys=True) + "\n")

    def rollback(self) -> None:
        for path in self.written:
            try:
                path.unlink()
            except OSError:
                pass
        self.written.clear()


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _frac(value: float) -> str:
    return f"{value:.6f}"


# ---------------------------------------------------------------------------
# extraction + analytics bundles reused by several subcommands
# ---------------------------------------------------------------------------

@dataclass
class ExtractionBundle:
    corpus: Corpus
    synonyms: list
    definitions: list
    hyponyms: list
    diagnostics: ExtractionDiagnostics


def _run_extraction(config: RunConfig, corpus, catalog, stopwords) -> ExtractionBundle:
    diagnostics = ExtractionDiagnostics()
    synonyms = extract_synonyms(corpus, config.term)
    aliases = tuple(sorted({s.synonym for s in synonyms}))
    definitions = extract_definitions(
        corpus,
        config.term,
        catalog,
        aliases=aliases,
        stopwords=stopwords,
        diagnostics=diagnostics,
    )
    hyponyms = extract_hyponyms(
        corpus,
        config.term,
        catalog,
        aliases=aliases,
        stopwords=stopwords,
        diagnostics=diagnostics,
    )
    return ExtractionBundle(corpus, synonyms, definitions, hyponyms, diagnostics)


def _synonyms_csv(synonyms) -> str:
    rows = [[r.doc_id, r.term, r.synonym, r.sentence_text] for r in synonyms]
    return _csv_text(["doc_id", "term", "synonym", "sentence"], rows)


def _freq_csv(table, key_name: str) -> str:
    rows = [[key, str(count), _frac(frac)] for key, count, frac in table.entries]
    return _csv_text([key_name, "count", "fraction"], rows)


def _cooccurrence_csv(table) -> str:
    rows = [[a, b, str(count), _frac(frac)] for a, b, count, frac in table.pairs]
    return _csv_text(["feature_a", "feature_b", "count", "fraction"], rows)


def _profile_payload(profile) -> dict:
    return {
        "term": profile.term,
        "paper_count": profile.paper_count,
        "first_year": profile.first_year,
        "subject_gini": profile.subject_gini,
    }


def _clusters_payload(result, threshold: int) -> dict:
    return {
        "threshold": threshold,
        "cohesion": result.cohesion,
        "components": [list(component) for component in result.components],
    }


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_ingest(config: RunConfig) -> int:
    _require(config, "corpus_path")
    corpus = _load_corpus(config)
    sentence_count = sum(len(corpus.sentences(doc)) for doc in corpus)
    print(
        json.dumps(
            {
                "documents": len(corpus),
                "sentences": sentence_count,
                "tagger_mode": corpus.tagger_mode,
            },
            indent=2,
            sort_keys=True,
        )
    )
    return EXIT_OK


def _stage(name: str, func, *args, **kwargs):
    try:
        return func(*args, **kwargs)
    except StageError:
        raise
    except Exception as exc:
        raise StageError(name, exc) from exc


def cmd_define(config: RunConfig) -> int:
    _require(config, "corpus_path", "term")
    corpus, catalog, stopwords, catalog_path, stopword_path = _stage(
        "ingest", _load_inputs, config
    )
    bundle = _stage("extract", _run_extraction, config, corpus, catalog, stopwords)

    def analyze():
        genera = genus_distribution(bundle.definitions)
        features = feature_distribution(bundle.definitions)
        cooccurrence = feature_cooccurrence(bundle.definitions, config.min_cooccurrence)
        profile = observation_profile(config.term, corpus)
        return genera, features, cooccurrence, profile

    genera, features, cooccurrence, profile = _stage("analyze", analyze)

    def graph():
        ontology = build_ontology(config.term, bundle.hyponyms)
        network = build_definition_network(
            bundle.definitions, config.network_min_weight, stopwords
        )
        clusters = cluster_network(network, config.cluster_threshold)
        return ontology, network, clusters

    ontology, network, clusters = _stage("graph", graph)

    writer = OutputWriter(config.output_dir)

    def write_outputs():
        writer.write_text("definitions.csv", definitions_to_csv(bundle.definitions))
        writer.write_text("definitions.jsonl", definitions_to_jsonl(bundle.definitions))
        writer.write_text("hyponyms.csv", hyponyms_to_csv(bundle.hyponyms))
        writer.write_text("hyponyms.jsonl", hyponyms_to_jsonl(bundle.hyponyms))
        writer.write_text("synonyms.csv", _synonyms_csv(bundle.synonyms))
        writer.write_text("genera.csv", _freq_csv(genera, "genus"))
        writer.write_text("features.csv", _freq_csv(features, "feature"))
        writer.write_text("cooccurrence.csv", _cooccurrence_csv(cooccurrence))
        writer.write_bytes("ontology.dot", export_graph(ontology, "dot"))
        writer.write_bytes("ontology.graphml", export_graph(ontology, "graphml"))
        writer.write_bytes("network.csv", export_graph(network, "csv"))
        writer.write_json("clusters.json", _clusters_payload(clusters, config.cluster_threshold))
        writer.write_json("profile.json", _profile_payload(profile))
        manifest = {
            "tool_version": __version__,
            "term": config.term,
            "corpus_path": config.corpus_path,
            "conllu_path": config.conllu_path or None,
            "tagger_mode": bundle.corpus.tagger_mode,
            "catalog_sha256": file_checksum(catalog_path),
            "stopwords_sha256": file_checksum(stopword_path),
            "counts": {
                "documents": len(corpus),
                "definitions": len(bundle.definitions),
                "hyponyms": len(bundle.hyponyms),
                "synonyms": len(bundle.synonyms),
                "genera": len(genera.entries),
                "features": len(features.entries),
                "cooccurrence_pairs": len(cooccurrence.pairs),
                "network_nodes": len(network.nodes()),
                "network_edges": len(network.edges()),
                "clusters": len(clusters.components),
            },
            "diagnostics": {
                "definition_candidates": bundle.diagnostics.definition_candidates,
                "duplicate_definitions": bundle.diagnostics.duplicate_definitions,
                "genus_not_found": bundle.diagnostics.genus_not_found,
                "self_referential_hyponyms": bundle.diagnostics.self_referential_hyponyms,
            },
            "created_at": _dt.datetime.now(_dt.timezone.utc).isoformat(),
        }
        writer.write_json("run_manifest.json", manifest)

    try:
        _stage("write", write_outputs)
    except StageError:
        writer.rollback()
        raise
    print(f"wrote {len(writer.written)} files to {writer.output_dir}")
    return EXIT_OK


def cmd_hyponyms(config: RunConfig) -> int:
    _require(config, "corpus_path", "term")
    corpus, catalog, stopwords, _, _ = _load_inputs(config)
    bundle = _run_extraction(config, corpus, catalog, stopwords)
    writer = OutputWriter(config.output_dir)
    writer.write_text("hyponyms.csv", hyponyms_to_csv(bundle.hyponyms))
    writer.write_text("hyponyms.jsonl", hyponyms_to_jsonl(bundle.hyponyms))
    writer.write_text("synonyms.csv", _synonyms_csv(bundle.synonyms))
    print(f"wrote {len(writer.written)} files to {writer.output_dir}")
    return EXIT_OK


def cmd_stats(config: RunConfig) -> int:
    _require(config, "corpus_path", "term")
    corpus, catalog, stopwords, _, _ = _load_inputs(config)
    bundle = _run_extraction(config, corpus, catalog, stopwords)
    writer = OutputWriter(config.output_dir)
    writer.write_text(
        "genera.csv", _freq_csv(genus_distribution(bundle.definitions), "genus")
    )
    writer.write_text(
        "features.csv", _freq_csv(feature_distribution(bundle.definitions), "feature")
    )
    writer.write_text(
        "cooccurrence.csv",
        _cooccurrence_csv(
            feature_cooccurrence(bundle.definitions, config.min_cooccurrence)
        ),
    )
    writer.write_json(
        "profile.json", _profile_payload(observation_profile(config.term, corpus))
    )
    print(f"wrote {len(writer.written)} files to {writer.output_dir}")
    return EXIT_OK


def cmd_ontology(config: RunConfig) -> int:
    _require(config, "corpus_path", "term")
    corpus, catalog, stopwords, _, _ = _load_inputs(config)
    bundle = _run_extraction(config, corpus, catalog, stopwords)
    ontology = build_ontology(config.term, bundle.hyponyms)
    writer = OutputWriter(config.output_dir)
    writer.write_bytes("ontology.dot", export_graph(ontology, "dot"))
    writer.write_bytes("ontology.graphml", export_graph(ontology, "graphml"))
    print(f"wrote {len(writer.written)} files to {writer.output_dir}")
    return EXIT_OK


def cmd_network(config: RunConfig) -> int:
    _require(config, "corpus_path", "term")
    corpus, catalog, stopwords, _, _ = _load_inputs(config)
    bundle = _run_extraction(config, corpus, catalog, stopwords)
    network = build_definition_network(
        bundle.definitions, config.network_min_weight, stopwords
    )
    clusters = cluster_network(network, config.cluster_threshold)
    writer = OutputWriter(config.output_dir)
    writer.write_bytes("network.csv", export_graph(network, "csv"))
    writer.write_json("clusters.json", _clusters_payload(clusters, config.cluster_threshold))
    print(f"wrote {len(writer.written)} files to {writer.output_dir}")
    return EXIT_OK


def _parse_rule_sets(specs: list[str]) -> list[tuple[str, frozenset[str]]]:
    parsed = []
    for spec in specs:
        if "=" not in spec:
            raise UsageError(f"rule set spec must look like name=rule1,rule2 (got {spec!r})")
        name, _, ids = spec.partition("=")
        rule_ids = frozenset(x.strip() for x in ids.split(",") if x.strip())
        if not name.strip() or not rule_ids:
            raise UsageError(f"empty rule set spec {spec!r}")
        parsed.append((name.strip(), rule_ids))
    return parsed


def cmd_eval(config: RunConfig, args: argparse.Namespace) -> int:
    decimal_comma = bool(args.decimal_comma)
    if args.counts:
        summaries = load_counts_csv(args.counts)
        ordered = [summaries[k] for k in summaries]
    else:
        if not args.gold or not args.rule_set or not args.observations:
            raise UsageError("eval requires --counts, or --gold with --rule-set and --observations")
        _require(config, "corpus_path")
        corpus, catalog, _, _, _ = _load_inputs(config)
        gold = load_gold(args.gold)
        observations = [t.strip() for t in args.observations.split(",") if t.strip()]
        ordered = [
            evaluate_rule_set(rule_ids, observations, corpus, gold, catalog, rule_set_id=name)
            for name, rule_ids in _parse_rule_sets(args.rule_set)
        ]
    report = write_report_csv(ordered, decimal_comma=decimal_comma)
    if args.select:
        candidates = [
            RuleSetCandidate(
                rule_set_id=s.rule_set_id,
                rule_ids=frozenset(s.rule_set_id.split("+")),
                summary=s,
            )
            for s in ordered
        ]
        selection = rank_and_select(
            candidates, precision_floor=config.precision_floor, exclusive=args.exclusive
        )
        chosen = selection.selected.rule_set_id if selection.selected else None
        report += f"# selected: {chosen} ({selection.reason})\n"
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(report, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(report)
    return EXIT_OK


def cmd_compare(config: RunConfig, args: argparse.Namespace) -> int:
    terms = [t.strip() for t in args.terms.split(",") if t.strip()]
    if len(terms) < 2:
        raise UsageError("compare requires at least 2 comma-separated terms")
    _require(config, "corpus_path")
    corpus, catalog, stopwords, _, _ = _load_inputs(config)
    entries = []
    for term in terms:
        bundle = _run_extraction(replace(config, term=term), corpus, catalog, stopwords)
        genera = genus_distribution(bundle.definitions)
        features = feature_distribution(bundle.definitions)
        network = build_definition_network(
            bundle.definitions, config.network_min_weight, stopwords
        )
        clusters = cluster_network(network, config.cluster_threshold)
        entries.append(
            {
                "term": term,
                "definitions": len(bundle.definitions),
                "hyponyms": len(bundle.hyponyms),
                "cohesion": clusters.cohesion,
                "genus_entropy": distribution_entropy(genera),
                "top_genera": genera.keys()[:5],
                "top_features": features.keys()[:5],
            }
        )
    most = max(entries, key=lambda e: (e["cohesion"], e["term"]))
    least = min(entries, key=lambda e: (e["cohesion"], e["term"]))
    for entry in entries:
        entry["fuzzily_defined"] = entry["term"] == least["term"] and least["cohesion"] < most["cohesion"]
    payload = {
        "terms": entries,
        "most_cohesive": most["term"],
        "least_cohesive": least["term"],
    }
    rows = [
        [
            e["term"],
            str(e["definitions"]),
            str(e["hyponyms"]),
            _frac(e["cohesion"]),
            _frac(e["genus_entropy"]),
            ";".join(e["top_genera"]),
            ";".join(e["top_features"]),
            "1" if e["fuzzily_defined"] else "0",
        ]
        for e in entries
    ]
    csv_text = _csv_text(
        [
            "term", "definitions", "hyponyms", "cohesion", "genus_entropy",
            "top_genera", "top_features", "fuzzily_defined",
        ],
        rows,
    )
    writer = OutputWriter(config.output_dir)
    writer.write_json("comparison.json", payload)
    writer.write_text("comparison.csv", csv_text)
    print(f"wrote {len(writer.written)} files to {writer.output_dir}")
    return EXIT_OK


def cmd_induce(config: RunConfig, args: argparse.Namespace) -> int:
    entries = []
    with open(args.definitions, newline="", encoding="utf-8") as handle:
        for row in csv.DictReader(handle):
            entries.append((row["term"], row["sentence"]))
    import warnings as _warnings

    with _warnings.catch_warnings():
        _warnings.simplefilter("ignore")
        report = induce_rule_statistics(entries)
    payload = {
        "total": report.total,
        "skipped": report.skipped,
        "definitors": [list(item) for item in report.definitor_counts],
        "genus_pos_patterns": [list(item) for item in report.genus_pos_counts],
        "gap_words": [list(item) for item in report.gap_word_counts],
        "warning": report.warning,
    }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures to exit code 1
        raise UsageError(message)


def _add_config_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--corpus", dest="corpus_path", help="corpus file (jsonl or csv)")
    parser.add_argument("--conllu", dest="conllu_path", help="gold CoNLL-U annotation file")
    parser.add_argument("--format", dest="format", choices=("jsonl", "csv"))
    parser.add_argument("--term", dest="term", help="target term (the definiendum)")
    parser.add_argument("--catalog", dest="rule_catalog_path", help="rule catalog file")
    parser.add_argument("--stopwords", dest="stopword_path", help="stopword list file")
    parser.add_argument("--output-dir", dest="output_dir", help="directory for output files")
    parser.add_argument("--min-cooccurrence", dest="min_cooccurrence", type=int)
    parser.add_argument("--network-min-weight", dest="network_min_weight", type=int)
    parser.add_argument("--cluster-threshold", dest="cluster_threshold", type=int)
    parser.add_argument("--precision-floor", dest="precision_floor", type=float)


def _build_parser() -> _Parser:
    parser = _Parser(prog="defminer", description=__doc__)
    parser.add_argument("--version", action="version", version=f"defminer {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("ingest", "load and validate a corpus (and optional CoNLL-U file)"),
        ("define", "run the full pipeline and write every output file"),
        ("hyponyms", "extract hypernym/hyponym pairs and synonyms"),
        ("stats", "write genus/feature distributions, co-occurrence and profile"),
        ("ontology", "build and export the concept ontology"),
        ("network", "build the definition network and its clusters"),
        ("eval", "score rule sets against gold labels or aggregate counts"),
        ("compare", "compare convergence of two or more terms"),
        ("induce", "tally definitor and genus statistics from known definitions"),
    ):
        sub = subparsers.add_parser(name, help=help_text)
        _add_config_options(sub)
        if name == "eval":
            sub.add_argument("--gold", help="gold label CSV (doc_id,fingerprint,relevant)")
            sub.add_argument(
                "--rule-set",
                action="append",
                default=[],
                help="name=rule1,rule2 (repeatable)",
            )
            sub.add_argument("--observations", help="comma-separated terms to evaluate on")
            sub.add_argument("--counts", help="aggregate counts CSV instead of extraction")
            sub.add_argument("--decimal-comma", action="store_true")
            sub.add_argument("--select", action="store_true", help="append rule-set selection")
            sub.add_argument("--exclusive", action="store_true")
            sub.add_argument("--out", help="write the report here instead of stdout")
        elif name == "compare":
            sub.add_argument("--terms", required=True, help="comma-separated terms (>= 2)")
        elif name == "induce":
            sub.add_argument("--definitions", required=True, help="CSV with term,sentence columns")
            sub.add_argument("--out", help="write the report here instead of stdout")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        config = build_config(args)
        if args.command == "ingest":
            return cmd_ingest(config)
        if args.command == "define":
            return cmd_define(config)
        if args.command == "hyponyms":
            return cmd_hyponyms(config)
        if args.command == "stats":
            return cmd_stats(config)
        if args.command == "ontology":
            return cmd_ontology(config)
        if args.command == "network":
            return cmd_network(config)
        if args.command == "eval":
            return cmd_eval(config, args)
        if args.command == "compare":
            return cmd_compare(config, args)
        if args.command == "induce":
            return cmd_induce(config, args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StageError as exc:
        underlying = exc.cause
        code = EXIT_DATA if isinstance(underlying, _DATA_ERRORS) else EXIT_INTERNAL
        print(f"error: {exc}", file=sys.stderr)
        return code
    except _DATA_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # anything else is an internal failure
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
