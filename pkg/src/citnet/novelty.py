"""Rarity of journal pairings in reference lists, against a shuffled null.

The null model randomizes the paper-level citation network with
double-edge swaps stratified on (citing year, cited year), so every
paper keeps its exact reference count, its exact received-citation
count, and the year at both ends of every edge. Pair frequencies from an
ensemble of such shuffles give the expectation and spread against which
the observed pairing frequency is standardized:

    z = (observed - ensemble mean) / ensemble std

Pairs whose ensemble spread is zero stay undefined and are only counted;
an infinite z would otherwise dominate the per-paper percentiles.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .corpus import Corpus

logger = logging.getLogger(__name__)

__all__ = [
    "ShuffleConfig",
    "PairStatistics",
    "PaperNovelty",
    "shuffle_citations",
    "ensemble_pair_frequencies",
    "pair_frequencies",
    "pair_zscores",
    "paper_novelty",
    "paper_pairs",
]


@dataclass(frozen=True)
class ShuffleConfig:
    ensemble_count: int = 10
    swaps_per_edge: float = 10.0
    seed: int = 0
    # count each co-referenced journal pair once per paper instead of
    # per reference-pair instance
    collapse_multiplicity: bool = False

    def __post_init__(self):
        if self.ensemble_count < 1:
            raise ValueError("ensemble_count must be >= 1")
        if self.swaps_per_edge <= 0:
            raise ValueError("swaps_per_edge must be positive")


@dataclass(frozen=True)
class PairStatistics:
    journal_pair: tuple[str, str]       # unordered, stored sorted
    o: float
    e: float
    sigma: float
    z: Optional[float]


@dataclass(frozen=True)
class PaperNovelty:
    paper_id: str
    median_z: Optional[float]
    p10_z: Optional[float]
    defined_pair_count: int = 0
    undefined_pair_count: int = 0


def shuffle_citations(corpus: Corpus, config: ShuffleConfig,
                      replicate_index: int) -> list[tuple[str, str]]:
    """One degree- and time-preserving randomization of the citation edges.

    Edges are grouped by (citing year, cited year); within each stratum
    target endpoints are exchanged by repeated double-edge swaps that
    reject self-citations and duplicate edges. Strata with fewer than two
    edges are left untouched. The result is reproducible from
    (config.seed, replicate_index) alone.
    """
    rng = np.random.default_rng([config.seed, replicate_index])
    strata: dict[tuple[int, int], list[list[str]]] = {}
    for citing, cited in corpus.citation_edges():
        key = (corpus.papers[citing].year, corpus.papers[cited].year)
        strata.setdefault(key, []).append([citing, cited])

    shuffled: list[tuple[str, str]] = []
    for key in sorted(strata):
        edges = strata[key]
        m = len(edges)
        if m < 2:
            logger.info("year stratum %s has %d edge(s); left untouched",
                        key, m)
            shuffled.extend((s, t) for s, t in edges)
            continue
        present = {(s, t) for s, t in edges}
        attempts = int(round(config.swaps_per_edge * m))
        picks = rng.integers(0, m, size=(attempts, 2))
        for a, b in picks:
            if a == b:
                continue
            s1, t1 = edges[a]
            s2, t2 = edges[b]
            if t1 == t2:
                continue
            if s1 == t2 or s2 == t1:
                continue
            if (s1, t2) in present or (s2, t1) in present:
                continue
            present.discard((s1, t1))
            present.discard((s2, t2))
            present.add((s1, t2))
            present.add((s2, t1))
            edges[a][1] = t2
            edges[b][1] = t1
        shuffled.extend((s, t) for s, t in edges)
    return shuffled


def _pair_counts_from_lists(ref_journals_by_paper, collapse):
    counts: dict[tuple[str, str], float] = {}
    for pid in ref_journals_by_paper:
        for pair, mult in paper_pairs(ref_journals_by_paper[pid], collapse):
            counts[pair] = counts.get(pair, 0) + mult
    return counts


def paper_pairs(journals, collapse=False):
    """Unordered journal pairs formed by one reference list.

    ``journals`` is the list of reference journals with multiplicity.
    Without collapsing, a journal appearing m times pairs with itself
    C(m, 2) times and with another appearing k times m*k times; with
    ``collapse`` every distinct pair counts once.
    """
    tally: dict[str, int] = {}
    for j in journals:
        tally[j] = tally.get(j, 0) + 1
    names = sorted(tally)
    out = []
    for i, a in enumerate(names):
        m = tally[a]
        if m >= 2:
            out.append(((a, a), 1 if collapse else m * (m - 1) // 2))
        for b in names[i + 1:]:
            out.append(((a, b), 1 if collapse else m * tally[b]))
    return out


def _reference_journals(corpus, edges):
    by_paper: dict[str, list[str]] = {}
    for citing, cited in edges:
        jid = corpus.journal_of(cited)
        if jid is None:
            continue
        by_paper.setdefault(citing, []).append(jid)
    return by_paper


def pair_frequencies(corpus: Corpus, edges, collapse=False):
    """Journal-pair co-reference counts over an explicit edge list."""
    return _pair_counts_from_lists(_reference_journals(corpus, edges), collapse)


def ensemble_pair_frequencies(corpus: Corpus, config: ShuffleConfig,
                              threads: int = 1):
    """Pair counts for every replicate of the shuffled ensemble."""
    from ._util import parallel_map

    def one(idx):
        edges = shuffle_citations(corpus, config, idx)
        return pair_frequencies(corpus, edges, config.collapse_multiplicity)

    return parallel_map(one, range(config.ensemble_count), threads=threads)


def pair_zscores(corpus: Corpus, config: ShuffleConfig,
                 ensembles=None, threads: int = 1
                 ) -> dict[tuple[str, str], PairStatistics]:
    """Standardized rarity for every journal pair observed in the data.

    ``ensembles`` may inject precomputed replicate pair counts (used by
    the estimator self-checks); otherwise the ensemble is generated.
    """
    observed = pair_frequencies(corpus, list(corpus.citation_edges()),
                                config.collapse_multiplicity)
    if ensembles is None:
        ensembles = ensemble_pair_frequencies(corpus, config, threads=threads)
    stats = {}
    for pair in sorted(observed):
        o = observed[pair]
        samples = np.array([ens.get(pair, 0) for ens in ensembles], dtype=float)
        e = float(samples.mean())
        sigma = float(samples.std())
        z = (o - e) / sigma if sigma > 0 else None
        stats[pair] = PairStatistics(journal_pair=pair, o=o, e=e,
                                     sigma=sigma, z=z)
    return stats


def paper_novelty(corpus: Corpus, paper_id: str,
                  zmap: dict[tuple[str, str], PairStatistics],
                  collapse: bool = False) -> PaperNovelty:
    """Median and 10th-percentile z over one paper's reference pairs.

    Percentiles use linear interpolation. Pairs with undefined z are
    excluded from the percentiles and reported in the count; a paper with
    no defined pair comes back undefined.
    """
    journals = []
    for ref in corpus.forward[paper_id]:
        jid = corpus.journal_of(ref)
        if jid is not None:
            journals.append(jid)
    zs = []
    undefined = 0
    for pair, mult in paper_pairs(journals, collapse):
        stat = zmap.get(pair)
        if stat is None or stat.z is None:
            undefined += int(mult)
            continue
        zs.extend([stat.z] * int(mult))
    if not zs:
        return PaperNovelty(paper_id, None, None, 0, undefined)
    arr = np.array(zs, dtype=float)
    return PaperNovelty(
        paper_id=paper_id,
        median_z=float(np.percentile(arr, 50)),
        p10_z=float(np.percentile(arr, 10)),
        defined_pair_count=len(zs),
        undefined_pair_count=undefined,
    )
