from collections import Counter

import numpy as np
import pytest

from citnet.novelty import (PairStatistics, ShuffleConfig, pair_frequencies,
                            pair_zscores, paper_novelty, paper_pairs,
                            shuffle_citations)

from conftest import make_corpus
from oracles import percentile_oracle


def shuffle_fixture(seed=0, n_targets=12, n_citers=10):
    """Citers spread over two years referencing a pool of older papers."""
    rng = np.random.default_rng(seed)
    papers = [(f"t{i}", f"J{i % 4}", 1998 + (i % 2), [])
              for i in range(n_targets)]
    for c in range(n_citers):
        refs = sorted({f"t{int(i)}" for i in
                       rng.integers(0, n_targets, size=4)})
        papers.append((f"c{c}", f"J{c % 4}", 2000 + (c % 2), refs))
    return make_corpus(papers, {f"J{k}": {} for k in range(4)})


def margins(corpus, edges):
    out = Counter(s for s, _t in edges)
    inn = Counter(t for _s, t in edges)
    years = Counter((corpus.papers[s].year, corpus.papers[t].year)
                    for s, t in edges)
    return out, inn, years


def test_shuffle_preserves_all_margins():
    corpus = shuffle_fixture()
    original = list(corpus.citation_edges())
    config = ShuffleConfig(seed=5)
    for replicate in range(5):
        shuffled = shuffle_citations(corpus, config, replicate)
        assert len(shuffled) == len(original)
        assert margins(corpus, shuffled) == margins(corpus, original)


def test_shuffle_keeps_edges_simple():
    corpus = shuffle_fixture(seed=3)
    shuffled = shuffle_citations(corpus, ShuffleConfig(seed=9), 0)
    assert len(set(shuffled)) == len(shuffled)
    assert all(s != t for s, t in shuffled)


def test_shuffle_actually_moves_edges():
    corpus = shuffle_fixture(seed=1, n_targets=20, n_citers=20)
    original = set(corpus.citation_edges())
    shuffled = set(shuffle_citations(corpus, ShuffleConfig(seed=2), 0))
    assert shuffled != original


def test_shuffle_seeded_determinism():
    corpus = shuffle_fixture()
    config = ShuffleConfig(seed=11)
    first = shuffle_citations(corpus, config, 3)
    second = shuffle_citations(corpus, config, 3)
    assert first == second
    other_replicate = shuffle_citations(corpus, config, 4)
    assert other_replicate != first


def test_tiny_stratum_left_untouched():
    papers = [("t", "J1", 1999, []), ("c", "J2", 2000, ["t"])]
    corpus = make_corpus(papers, {"J1": {}, "J2": {}})
    assert shuffle_citations(corpus, ShuffleConfig(seed=0), 0) == [("c", "t")]


def test_paper_pairs_multiplicity():
    pairs = dict(paper_pairs(["A", "A", "B"]))
    assert pairs == {("A", "A"): 1, ("A", "B"): 2}
    collapsed = dict(paper_pairs(["A", "A", "B"], collapse=True))
    assert collapsed == {("A", "A"): 1, ("A", "B"): 1}


def test_zscore_direct_substitution():
    stats = PairStatistics(("A", "B"), o=8, e=5, sigma=1.5, z=2.0)
    assert stats.z == (stats.o - stats.e) / stats.sigma


def test_pair_zscores_centered_and_degenerate():
    corpus = shuffle_fixture(seed=2)
    observed = pair_frequencies(corpus, list(corpus.citation_edges()))
    # inject the real network as every ensemble member: e == o, sigma == 0
    ensembles = [dict(observed) for _ in range(10)]
    stats = pair_zscores(corpus, ShuffleConfig(seed=1), ensembles=ensembles)
    assert set(stats) == set(observed)
    for pair, st in stats.items():
        assert st.e == observed[pair]
        assert st.sigma == 0.0
        assert st.z is None


def test_pair_zscores_from_real_ensemble():
    corpus = shuffle_fixture(seed=4, n_targets=16, n_citers=16)
    stats = pair_zscores(corpus, ShuffleConfig(ensemble_count=10, seed=21))
    assert stats
    for pair, st in stats.items():
        assert st.o >= 1
        assert st.sigma >= 0.0
        if st.sigma > 0:
            assert st.z == pytest.approx((st.o - st.e) / st.sigma)
        else:
            assert st.z is None


def zmap(pairs):
    out = {}
    for pair, z in pairs.items():
        pair = tuple(sorted(pair))
        out[pair] = PairStatistics(pair, o=1, e=0.5,
                                   sigma=1.0 if z is not None else 0.0, z=z)
    return out


def test_paper_novelty_interpolated_percentiles():
    papers = [("p", "J1", 2005, ["r1", "r2", "r3"]),
              ("r1", "A", 2000, []), ("r2", "B", 2000, []),
              ("r3", "C", 2000, [])]
    corpus = make_corpus(papers, {"J1": {}, "A": {}, "B": {}, "C": {}})
    scores = zmap({("A", "B"): -2.0, ("A", "C"): 0.0, ("B", "C"): 1.0})
    nov = paper_novelty(corpus, "p", scores)
    assert nov.median_z == pytest.approx(0.0)
    assert nov.p10_z == pytest.approx(-1.6)
    assert nov.p10_z == pytest.approx(percentile_oracle([-2.0, 0.0, 1.0], 10))
    assert nov.median_z == pytest.approx(
        percentile_oracle([-2.0, 0.0, 1.0], 50))
    assert nov.defined_pair_count == 3


def test_paper_novelty_single_pair():
    papers = [("p", "J1", 2005, ["r1", "r2"]),
              ("r1", "A", 2000, []), ("r2", "B", 2000, [])]
    corpus = make_corpus(papers, {"J1": {}, "A": {}, "B": {}})
    nov = paper_novelty(corpus, "p", zmap({("A", "B"): 1.0}))
    assert nov.median_z == 1.0
    assert nov.p10_z == 1.0


def test_paper_novelty_all_undefined():
    papers = [("p", "J1", 2005, ["r1", "r2"]),
              ("r1", "A", 2000, []), ("r2", "B", 2000, [])]
    corpus = make_corpus(papers, {"J1": {}, "A": {}, "B": {}})
    nov = paper_novelty(corpus, "p", zmap({("A", "B"): None}))
    assert nov.median_z is None
    assert nov.p10_z is None
    assert nov.undefined_pair_count == 1


def test_p10_never_exceeds_median():
    corpus = shuffle_fixture(seed=6, n_targets=16, n_citers=16)
    stats = pair_zscores(corpus, ShuffleConfig(ensemble_count=8, seed=3))
    for pid in corpus.papers:
        if len(corpus.forward[pid]) < 2:
            continue
        nov = paper_novelty(corpus, pid, stats)
        if nov.median_z is not None:
            assert nov.p10_z <= nov.median_z + 1e-12
