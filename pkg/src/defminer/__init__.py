"""defminer: mine genus-differentia definitions of technological terms.

The pipeline loads a corpus of scientific abstracts, matches a data-driven
rule catalog over tagged sentences, decomposes hits into definiendum /
definitor / genus / distinctive features, extracts hypernym-hyponym pairs
and acronym synonyms, and derives corpus analytics: frequency and
co-occurrence tables, subject-area concentration, an ontology graph and a
definition-similarity network with a cohesion score.
"""

from .analytics import (
    CooccurrenceTable,
    FreqTable,
    ObservationProfile,
    distribution_entropy,
    feature_cooccurrence,
    feature_distribution,
    genus_distribution,
    gini_index,
    observation_profile,
)
from .corpus_io import (
    Corpus,
    CorpusError,
    Document,
    Sentence,
    Token,
    attach_conllu,
    load_conllu,
    load_corpus,
    load_lexicon,
    load_stopwords,
    normalize_text,
    parse_conllu,
    segment_sentences,
    sentence_from_raw,
    serialize_conllu,
    singularize_noun,
    tag_heuristic,
)
from .evaluation import (
    EvaluationError,
    EvaluationSummary,
    GoldLabel,
    InductionReport,
    RuleEvaluation,
    RuleSetCandidate,
    Selection,
    evaluate_rule_set,
    induce_rule_statistics,
    load_counts_csv,
    load_gold,
    mean_relevant,
    rank_and_select,
    summary_from_counts,
    weighted_precision,
    write_report_csv,
)
from .extraction import (
    DefinitionRecord,
    ExtractionDiagnostics,
    GenusNotFound,
    HyponymRecord,
    SynonymRecord,
    definitions_to_csv,
    definitions_to_jsonl,
    extract_definitions,
    extract_features,
    extract_hyponyms,
    extract_synonyms,
    hyponyms_to_csv,
    hyponyms_to_jsonl,
    parse_genus,
    split_coordination,
)
from .graphs import (
    ClusterResult,
    DefinitionNetwork,
    OntologyGraph,
    build_definition_network,
    build_ontology,
    cluster_network,
    definition_word_set,
    export_graph,
    import_edge_list_csv,
)
from .rule_engine import (
    Match,
    Matcher,
    PatternSpec,
    Rule,
    RuleCatalog,
    RuleError,
    compile_rule,
    default_catalog,
    load_rule_catalog,
    match_sentence,
    parse_pattern,
)

__version__ = "0.1.0"
