"""citnet: citation-network analytics over pluggable bibliographic corpora.

Submodules
----------
corpus      records, loading, validation, serial-number utilities
impact      journal-level citation timing metrics
selfcite    citation/reference rates and the publication solidarity index
matching    control-journal selection by category, impact, and size tercile
jnet        yearly journal citation networks and centralities
novelty     atypical reference-pair z-scores against a shuffled null
disruption  disruptiveness index and grouped averages
authors     author identity resolution and career statistics
synth       synthetic corpora and the solidarity validation protocol
pipeline    declarative multi-stage runs and figure-ready exports
"""

from .corpus import (Corpus, Journal, LoadReport, Paper, Publisher,
                     ValidationReport, extract_issns, load_corpus,
                     validate_corpus, validate_issn)
from .impact import (ImpactRecord, NormalizationTable,
                     build_normalization_table, cited_half_life,
                     citing_half_life, immediacy_index, journal_impact,
                     market_share, normalize_citations,
                     normalized_journal_impact)
from .selfcite import (CitationCounts, PublisherExpectation, RateQuery,
                       SolidarityScore, aggregate_citation_counts,
                       citation_rate, publisher_self_expectations,
                       reference_rate, solidarity_index, solidarity_ratio)
from .matching import (MatchRecord, RegistryEntry, build_registry,
                       select_control, size_terciles)
from .jnet import (CentralityVector, JournalCitationNetwork, betweenness,
                   build_journal_network, centrality_comparison, closeness,
                   pagerank, pathcore)
from .novelty import (PairStatistics, PaperNovelty, ShuffleConfig,
                      pair_zscores, paper_novelty, shuffle_citations)
from .disruption import (DisruptionCounts, disruption_counts, disruptiveness,
                         disruptiveness_by_team_size, disruptiveness_by_year)
from .authors import (AuthorClusters, AuthorStats, SimilarityWeights,
                      author_demographics, disambiguate, paper_similarity)
from .synth import (RewireConfig, SynthConfig, generate_synthetic,
                    psi_rewiring_experiment, psi_scenarios, rewire)

__version__ = "0.1.0"
