"""Disruptiveness of individual papers and grouped averages.

For a focal paper x with citers and references drawn from the corpus:

    n_i  citers of x citing none of x's references
    n_j  citers of x citing at least one of x's references
    n_k  papers citing at least one reference of x but not x

    D = (n_i - n_j) / (n_i + n_j + n_k)   in [-1, 1]

D = 1 means the follow-up literature ignores x's sources entirely;
D = -1 means it always carries them along. The focal paper itself never
counts as a citer of its own references. A zero denominator (never
cited, references never cited) leaves D undefined; such papers are
excluded from every group mean and counted instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .corpus import Corpus

__all__ = [
    "DisruptionCounts",
    "disruption_counts",
    "disruptiveness",
    "disruptiveness_by_team_size",
    "disruptiveness_by_year",
    "journal_mean_disruption",
]


@dataclass(frozen=True)
class DisruptionCounts:
    paper_id: str
    n_i: int
    n_j: int
    n_k: int

    @property
    def value(self) -> Optional[float]:
        total = self.n_i + self.n_j + self.n_k
        if total == 0:
            return None
        return (self.n_i - self.n_j) / total


def _citers(corpus, paper_id, window):
    out = set()
    for citer, year in corpus.citers[paper_id]:
        if window is not None and not (window[0] <= year <= window[1]):
            continue
        out.add(citer)
    return out


def disruption_counts(corpus: Corpus, paper_id: str,
                      window=None) -> DisruptionCounts:
    """The three citer tallies for one focal paper.

    ``window`` optionally restricts the citer set by publication year
    (sensitivity runs); by default every corpus paper may count.
    """
    citers_x = _citers(corpus, paper_id, window)
    citers_refs: set[str] = set()
    for ref in corpus.forward[paper_id]:
        citers_refs.update(_citers(corpus, ref, window))
    citers_refs.discard(paper_id)

    n_j = len(citers_x & citers_refs)
    n_i = len(citers_x) - n_j
    n_k = len(citers_refs - citers_x)
    return DisruptionCounts(paper_id=paper_id, n_i=n_i, n_j=n_j, n_k=n_k)


def disruptiveness(corpus: Corpus, paper_id: str,
                   window=None) -> Optional[float]:
    """D for one paper; None when the denominator is empty."""
    return disruption_counts(corpus, paper_id, window).value


def _group_means(corpus, paper_ids, key, window):
    sums: dict = {}
    counts: dict = {}
    skipped = 0
    for pid in sorted(set(paper_ids)):
        d = disruptiveness(corpus, pid, window)
        if d is None:
            skipped += 1
            continue
        k = key(corpus.papers[pid])
        sums[k] = sums.get(k, 0.0) + d
        counts[k] = counts.get(k, 0) + 1
    return {k: sums[k] / counts[k] for k in sorted(sums)}, skipped


def disruptiveness_by_team_size(corpus: Corpus, paper_ids: Iterable[str],
                                window=None):
    """Mean D per author count; papers with undefined D are dropped.

    Returns (means, undefined_count); buckets holding only undefined
    papers are absent.
    """
    return _group_means(corpus, paper_ids,
                        lambda p: len(p.author_keys), window)


def disruptiveness_by_year(corpus: Corpus, paper_ids: Iterable[str],
                           window=None):
    """Mean D per publication year; same exclusion policy as team size."""
    return _group_means(corpus, paper_ids, lambda p: p.year, window)


def journal_mean_disruption(corpus: Corpus, paper_ids: Iterable[str],
                            window=None):
    """Mean D per journal, for the journal-level difference table."""
    means, _ = _group_means(corpus, paper_ids,
                            lambda p: p.journal_id, window)
    return means
