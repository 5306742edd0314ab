import pytest

from citnet.selfcite import (aggregate_citation_counts, citation_rate,
                             psi_from_counts, publisher_self_expectations,
                             reference_rate, solidarity_index,
                             solidarity_ratio, SolidarityScore)

from conftest import make_corpus


def rate_fixture():
    """J1 receives 4 citations: 1 from J2 (the group), 3 from J3."""
    papers = [("t", "J1", 2000, []),
              ("g", "J2", 2001, ["t"]),
              ("o1", "J3", 2001, ["t"]), ("o2", "J3", 2002, ["t"]),
              ("o3", "J3", 2002, ["t"])]
    return make_corpus(papers, {"J1": {}, "J2": {}, "J3": {}})


def test_citation_rate_fraction():
    corpus = rate_fixture()
    assert citation_rate(corpus, "J1", ["J2"]) == 0.25
    assert citation_rate(corpus, "J1", ["J3"]) == 0.75
    assert citation_rate(corpus, "J1", ["J1", "J2", "J3"]) == 1.0
    assert citation_rate(corpus, "J2", ["J1"]) is None   # never cited


def test_citation_rate_partition():
    corpus = rate_fixture()
    groups = [["J1"], ["J2"], ["J3"]]
    total = sum(citation_rate(corpus, "J1", g) for g in groups)
    assert total == pytest.approx(1.0, abs=1e-12)


def test_citation_rate_window():
    corpus = rate_fixture()
    assert citation_rate(corpus, "J1", ["J3"], window=(2002, 2002)) == 1.0
    assert citation_rate(corpus, "J1", ["J2"], window=(2002, 2002)) == 0.0


def test_reference_rate():
    papers = [("s", "J1", 2005, [f"x{i}" for i in range(10)])]
    papers += [(f"x{i}", "J2" if i < 3 else "J3", 2000, [])
               for i in range(10)]
    corpus = make_corpus(papers, {"J1": {}, "J2": {}, "J3": {}})
    assert reference_rate(corpus, "J1", ["J2"]) == 0.3
    assert reference_rate(corpus, "J1", ["J1"]) == 0.0
    assert reference_rate(corpus, "J1", ["J1", "J2", "J3"]) == 1.0
    assert reference_rate(corpus, "J2", ["J1"]) is None  # no references


def expectation_fixture():
    """Publisher P with J1, J2: 2 internal, 2 outbound, 2 inbound edges."""
    papers = [
        ("a1", "J1", 2000, []), ("a2", "J1", 2002, ["b1", "e1"]),
        ("b1", "J2", 2000, []), ("b2", "J2", 2002, ["a1", "e1"]),
        ("e1", "E", 2000, []), ("e2", "E", 2002, ["a1", "b1"]),
    ]
    return make_corpus(papers, {"J1": {"publisher_id": "P"},
                                "J2": {"publisher_id": "P"},
                                "E": {"publisher_id": "Q"}})


def test_publisher_expectations_hand_count():
    corpus = expectation_fixture()
    exp = publisher_self_expectations(corpus, "P")
    assert exp.q_r == pytest.approx(0.5)
    assert exp.q_c == pytest.approx(0.5)


def test_pub_expectations_only_internal():
    papers = [("a", "J1", 2000, ["b"]), ("b", "J2", 2001, ["a"])]
    corpus = make_corpus(papers, {"J1": {"publisher_id": "P"},
                                  "J2": {"publisher_id": "P"}})
    exp = publisher_self_expectations(corpus, "P")
    assert exp.q_r == 1.0


def test_pub_expectations_undefined_side():
    # publisher never cited by anyone, including itself
    papers = [("a", "J1", 2001, ["e"]), ("b", "J2", 2001, ["e"]),
              ("e", "E", 2000, [])]
    corpus = make_corpus(papers, {"J1": {"publisher_id": "P"},
                                  "J2": {"publisher_id": "P"},
                                  "E": {"publisher_id": "Q"}})
    exp = publisher_self_expectations(corpus, "P")
    assert exp.q_c is None
    assert exp.q_r == 0.0


def neutral_counts(paper_total_per_journal):
    """Count table where every rate ratio term cancels to 1.

    Two journals; each directs half its references at the other member
    and half outside, and receives likewise, so the journal's share
    equals the publisher-wide expectation exactly.
    """
    from citnet.selfcite import CitationCounts

    table = CitationCounts()
    for a, b in [("J1", "J2"), ("J2", "J1")]:
        table.counts[(a, b)] = 50
    for j in ("J1", "J2"):
        table.counts[(j, "E")] = 50
        table.counts[("E", j)] = 50
        table.out_total[j] = 100
        table.in_total[j] = 100
    table.out_total["E"] = 100
    table.in_total["E"] = 100
    return table


def test_psi_ratio_terms_cancel():
    table = neutral_counts(50)
    score = psi_from_counts(table, "J1", ["J1", "J2"],
                            {"J1": 50, "J2": 50})
    assert score.psi == pytest.approx(1 / 100)
    score = psi_from_counts(table, "J1", ["J1", "J2"],
                            {"J1": 500, "J2": 500})
    assert score.psi == pytest.approx(1 / 1000)


def solidarity_fixture(extra_self=0):
    """Three journals under publisher P plus outside world E.

    ``extra_self`` adds that many extra J1 -> publisher citations on top
    of a neutral baseline shared by J1 and J2.
    """
    papers = []
    # shared targets inside the publisher
    papers += [("t1", "J2", 2000, []), ("t2", "J3", 2000, []),
               ("te", "E", 2000, [])]
    refs_j1 = ["t1", "te"] + ["t2"] * min(extra_self, 1)
    papers += [("a", "J1", 2005, refs_j1)]
    papers += [("b", "J2", 2005, ["t2", "te"])]
    papers += [("c", "J3", 2005, ["t1", "te"])]
    # incoming citations toward J1 and the others
    papers += [("x", "E", 2006, ["a", "b", "c", "t1"])]
    papers += [("y", "J2", 2006, ["a"])]
    return make_corpus(papers, {"J1": {"publisher_id": "P"},
                                "J2": {"publisher_id": "P"},
                                "J3": {"publisher_id": "P"},
                                "E": {"publisher_id": "Q"}})


def brute_force_psi(corpus, journal_id):
    """Direct evaluation of the defining sums from raw paper loops."""
    members = corpus.publishers[corpus.journals[journal_id].publisher_id]
    members = list(members.journal_ids)

    def jrnl(pid):
        return corpus.papers[pid].journal_id

    edges = [(jrnl(a), jrnl(b)) for a, b in corpus.citation_edges()]
    out_i = sum(1 for s, _t in edges if s == journal_id)
    in_i = sum(1 for _s, t in edges if t == journal_id)
    rr = sum(1 for s, t in edges if s == journal_id and t in members) / out_i
    rc = sum(1 for s, t in edges if t == journal_id and s in members) / in_i
    internal = sum(1 for s, t in edges if s in members and t in members)
    made = sum(1 for s, _t in edges if s in members)
    received = sum(1 for _s, t in edges if t in members)
    q_r = internal / made
    q_c = internal / received
    n_total = sum(len(corpus.papers_of_journal(j)) for j in members)
    return (1 / n_total) * (rr / q_r) / (rc / q_c)


def test_solidarity_against_bruteforce():
    corpus = solidarity_fixture(extra_self=1)
    for jid in ("J1", "J2", "J3"):
        score = solidarity_index(corpus, jid)
        assert score.status == "ok"
        assert score.psi == pytest.approx(brute_force_psi(corpus, jid),
                                          abs=1e-12)


def test_self_favouring_journal_scores_higher():
    corpus = solidarity_fixture(extra_self=1)
    eager = solidarity_index(corpus, "J1").psi
    neutral = solidarity_index(corpus, "J3").psi
    assert eager > neutral


def test_standalone_publisher_excluded():
    papers = [("a", "J1", 2000, []), ("b", "E", 2001, ["a"])]
    corpus = make_corpus(papers, {"J1": {"publisher_id": "P"},
                                  "E": {"publisher_id": "Q"}})
    score = solidarity_index(corpus, "J1")
    assert score.status == "excluded"
    assert score.psi is None
    # no publisher at all behaves the same way
    corpus = make_corpus(papers, {"J1": {}, "E": {}})
    assert solidarity_index(corpus, "J1").status == "excluded"


def test_solidarity_undefined_when_never_cited():
    papers = [("a", "J1", 2005, ["t"]), ("t", "J2", 2000, [])]
    corpus = make_corpus(papers, {"J1": {"publisher_id": "P"},
                                  "J2": {"publisher_id": "P"}})
    score = solidarity_index(corpus, "J1")
    assert score.status == "undefined"
    assert score.psi is None


def test_scaling_invariance():
    corpus = solidarity_fixture(extra_self=1)
    table = aggregate_citation_counts(corpus)
    members = ["J1", "J2", "J3"]
    totals = {j: len(corpus.papers_of_journal(j)) for j in members}
    base = psi_from_counts(table, "J1", members, totals)
    for k in (2, 10, 1000):
        scaled = psi_from_counts(table.scaled(k), "J1", members, totals)
        assert abs(scaled.psi - base.psi) <= 1e-12
        assert scaled.q_r == pytest.approx(base.q_r, abs=1e-15)
        assert scaled.q_c == pytest.approx(base.q_c, abs=1e-15)


def test_include_self_flag_changes_level_not_order():
    corpus = solidarity_fixture(extra_self=1)
    with_self = {j: solidarity_index(corpus, j, include_self=True).psi
                 for j in ("J1", "J3")}
    without = {j: solidarity_index(corpus, j, include_self=False).psi
               for j in ("J1", "J3")}
    assert (with_self["J1"] > with_self["J3"]) == \
        (without["J1"] > without["J3"])


def test_solidarity_ratio():
    a = SolidarityScore("q", 0.02, 100, 1.0, 1.0)
    b = SolidarityScore("u", 0.01, 100, 1.0, 1.0)
    undef = SolidarityScore("x", None, 0, None, None, status="undefined")
    assert solidarity_ratio(a, b) == pytest.approx(2.0)
    assert solidarity_ratio(a, a) == pytest.approx(1.0)
    assert solidarity_ratio(a, undef) is None
    assert solidarity_ratio(undef, b) is None
