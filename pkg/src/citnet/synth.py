"""Synthetic corpora and the solidarity-index validation protocol.

Three pieces live here:

* a generator for random citation corpora with publisher/journal labels,
  Gaussian out-degrees and a heavy in-degree tail grown by preferential
  attachment;
* a rewiring process that retargets links with per-journal probabilities
  of staying inside the citing journal's publisher, used to dial
  publisher-level self-citation up or down while out-degrees stay fixed;
* closed-form scenario sweeps evaluating the solidarity index on
  synthetic citation-count tables.

Everything is reproducible from the configured seeds alone: ensembles
derive their generators from (seed, ensemble_index), and rewiring
consumes links in seeded random sweeps, each sweep retargeting every
link exactly once. Sweep scanning (rather than sampling links with
replacement) is what makes the index settle once rewiring passes about
twice the link count: after two sweeps every link has been redrawn from
the target rule twice, so later checkpoints only jitter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .corpus import Corpus, Journal, LoadReport, Paper, Publisher
from .selfcite import CitationCounts, psi_from_counts

__all__ = [
    "SynthConfig",
    "RewireConfig",
    "generate_synthetic",
    "rewire",
    "psi_scenarios",
    "psi_rewiring_experiment",
    "publisher_psi_baseline",
    "RewireCurves",
    "DEFAULT_SPECIAL_RATES",
    "DEFAULT_CHECKPOINTS",
]

DEFAULT_SPECIAL_RATES = (0.5, 0.25, 0.125, 0.0625, 0.0625)
DEFAULT_CHECKPOINTS = (0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0)

SYNTH_CATEGORY = "00"


@dataclass(frozen=True)
class SynthConfig:
    publisher_count: int = 5
    journals_per_publisher: int = 5
    component_size_range: tuple[int, int] = (450, 550)
    out_degree_mean: float = 20.0
    out_degree_std: float = 5.0
    in_degree_exponent: float = 3.0
    seed: int = 0
    year_range: tuple[int, int] = (2000, 2009)

    def __post_init__(self):
        if self.publisher_count < 1 or self.journals_per_publisher < 1:
            raise ValueError("counts must be positive")
        lo, hi = self.component_size_range
        if lo > hi or lo < 1:
            raise ValueError("empty component size range")
        if self.in_degree_exponent <= 2.0:
            raise ValueError("in-degree exponent must exceed 2")


@dataclass(frozen=True)
class RewireConfig:
    # journal id -> probability of retargeting inside its own publisher;
    # empty means "assign the default rate set, one special journal per
    # publisher, seeded"
    special_rates: dict = field(default_factory=dict)
    baseline_rate: float = 0.2
    rewire_fraction: float = 3.0
    ensemble_count: int = 20
    seed: int = 0
    checkpoints: tuple[float, ...] = DEFAULT_CHECKPOINTS

    def __post_init__(self):
        for rate in list(self.special_rates.values()) + [self.baseline_rate]:
            if not (0.0 <= rate <= 1.0):
                raise ValueError("rates must lie in [0, 1]")


class _OccurrenceSampler:
    """Uniform sampling over a multiset with O(1) add/remove.

    Holding each item once per unit of weight makes a uniform draw from
    the array a draw proportional to the item's multiplicity.
    """

    __slots__ = ("arr", "slot", "pos")

    def __init__(self):
        self.arr: list[int] = []
        self.slot: list[int] = []
        self.pos: dict[int, list[int]] = {}

    def __len__(self):
        return len(self.arr)

    def add(self, item: int):
        positions = self.pos.setdefault(item, [])
        self.slot.append(len(positions))
        positions.append(len(self.arr))
        self.arr.append(item)

    def remove_one(self, item: int):
        positions = self.pos[item]
        i = positions.pop()
        j = len(self.arr) - 1
        if i != j:
            moved = self.arr[j]
            sj = self.slot[j]
            self.arr[i] = moved
            self.slot[i] = sj
            self.pos[moved][sj] = i
        self.arr.pop()
        self.slot.pop()
        if not positions:
            del self.pos[item]

    def sample(self, rng) -> int:
        return self.arr[int(rng.integers(len(self.arr)))]


@dataclass
class _SynthNet:
    """Array form of a synthetic corpus, used by the hot loops."""

    publisher_of: np.ndarray          # node -> publisher index
    journal_of: list[str]             # node -> journal id
    year_of: np.ndarray               # node -> year
    src: list[int]
    dst: list[int]
    journal_ids: list[str]            # all journal ids, sorted
    publishers: list[list[str]]       # publisher index -> journal ids

    @property
    def n_nodes(self):
        return len(self.journal_of)

    def counts_table(self) -> CitationCounts:
        table = CitationCounts()
        counts = table.counts
        out_total = table.out_total
        in_total = table.in_total
        jof = self.journal_of
        for s, t in zip(self.src, self.dst):
            a, b = jof[s], jof[t]
            counts[(a, b)] = counts.get((a, b), 0) + 1
            out_total[a] = out_total.get(a, 0) + 1
            in_total[b] = in_total.get(b, 0) + 1
        return table

    def journal_paper_totals(self):
        totals = {j: 0 for j in self.journal_ids}
        for j in self.journal_of:
            totals[j] += 1
        return totals


def _generate_network(config: SynthConfig, rng) -> _SynthNet:
    p_count = config.publisher_count
    jpp = config.journals_per_publisher
    sizes = rng.integers(config.component_size_range[0],
                         config.component_size_range[1] + 1, size=p_count)
    n = int(sizes.sum())

    publisher_of = np.repeat(np.arange(p_count), sizes)
    publishers = [[f"P{p + 1}-J{j + 1}" for j in range(jpp)]
                  for p in range(p_count)]
    journal_idx = rng.integers(0, jpp, size=n)
    journal_of = [publishers[publisher_of[v]][journal_idx[v]] for v in range(n)]

    order = rng.permutation(n)
    y0, y1 = config.year_range
    span = y1 - y0 + 1
    cohort = math.ceil(n / span)
    year_of = np.empty(n, dtype=np.int64)
    for k, v in enumerate(order):
        year_of[v] = y0 + min(k // cohort, span - 1)

    # Attachment kernel (in_degree + a) with a = (exponent - 2) * mean
    # out-degree yields the requested in-degree tail exponent.
    base_weight = max(1, round((config.in_degree_exponent - 2.0)
                               * config.out_degree_mean))
    sampler = _OccurrenceSampler()
    src: list[int] = []
    dst: list[int] = []
    degrees = rng.normal(config.out_degree_mean, config.out_degree_std, size=n)
    for k, v in enumerate(order):
        v = int(v)
        want = max(0, int(round(degrees[k])))
        want = min(want, k)            # can only cite already-arrived papers
        chosen: set[int] = set()
        attempts = 0
        while len(chosen) < want and attempts < 20 * want:
            attempts += 1
            t = sampler.sample(rng)
            if t == v or t in chosen:
                continue
            chosen.add(t)
        for t in sorted(chosen):
            src.append(v)
            dst.append(t)
            sampler.add(t)
        for _ in range(base_weight):
            sampler.add(v)

    return _SynthNet(publisher_of=publisher_of, journal_of=journal_of,
                     year_of=year_of, src=src, dst=dst,
                     journal_ids=sorted(j for js in publishers for j in js),
                     publishers=publishers)


def _materialize(net: _SynthNet, year_range) -> Corpus:
    refs_of: dict[int, list[int]] = {}
    for s, t in zip(net.src, net.dst):
        refs_of.setdefault(s, []).append(t)

    def pid(v):
        return f"n{v:05d}"

    papers = {}
    for v in range(net.n_nodes):
        papers[pid(v)] = Paper(
            paper_id=pid(v),
            journal_id=net.journal_of[v],
            year=int(net.year_of[v]),
            author_keys=(),
            references=tuple(pid(t) for t in sorted(refs_of.get(v, ()))),
        )

    counts: dict[str, dict[int, int]] = {j: {} for j in net.journal_ids}
    for v in range(net.n_nodes):
        per = counts[net.journal_of[v]]
        year = int(net.year_of[v])
        per[year] = per.get(year, 0) + 1

    journals = {}
    publishers = {}
    for p, jids in enumerate(net.publishers):
        pub_id = f"P{p + 1}"
        publishers[pub_id] = Publisher(publisher_id=pub_id,
                                       journal_ids=tuple(sorted(jids)))
        for jid in jids:
            journals[jid] = Journal(
                journal_id=jid,
                publisher_id=pub_id,
                categories=(SYNTH_CATEGORY,),
                paper_count_by_year=dict(sorted(counts[jid].items())),
            )
    return Corpus(papers, journals, publishers, LoadReport(),
                  year_range=year_range)


def generate_synthetic(config: SynthConfig) -> Corpus:
    """Random labeled citation corpus under the configured degree model.

    Papers split into publishers of uniform-random size, each spread over
    its journals; arrival order maps to years; every arriving paper cites
    earlier papers drawn preferentially by in-degree, with a Gaussian
    reference count.
    """
    rng = np.random.default_rng(config.seed)
    net = _generate_network(config, rng)
    return _materialize(net, config.year_range)


class _Rewirer:
    """Retargets links in seeded sweeps, one full pass per link count."""

    def __init__(self, net: _SynthNet, rates: dict[str, float],
                 baseline: float, rng):
        self.net = net
        self.rng = rng
        self.rate_of = np.array([rates.get(j, baseline)
                                 for j in net.journal_of], dtype=float)
        p_count = len(net.publishers)
        self.pools = [_OccurrenceSampler() for _ in range(p_count)]
        for v in range(net.n_nodes):
            self.pools[net.publisher_of[v]].add(v)
        for t in net.dst:
            self.pools[net.publisher_of[t]].add(t)
        self.edge_set = set(zip(net.src, net.dst))
        self._order: list[int] = []
        self._cursor = 0
        self.steps_done = 0

    def _pick_pool(self, own: int):
        others = [p for p in range(len(self.pools)) if p != own]
        weights = [len(self.pools[p]) for p in others]
        total = sum(weights)
        r = int(self.rng.integers(total))
        for p, w in zip(others, weights):
            if r < w:
                return self.pools[p]
            r -= w
        return self.pools[others[-1]]

    def _rewire_edge(self, e: int):
        net = self.net
        s = net.src[e]
        t_old = net.dst[e]
        own = int(net.publisher_of[s])
        stay = float(self.rng.random()) < self.rate_of[s]
        pool = self.pools[own] if stay else self._pick_pool(own)
        for _ in range(100):
            t_new = pool.sample(self.rng)
            if t_new == t_old:
                return                  # redrew the same target: no-op
            if t_new == s or (s, t_new) in self.edge_set:
                continue
            self.edge_set.discard((s, t_old))
            self.edge_set.add((s, t_new))
            net.dst[e] = t_new
            self.pools[net.publisher_of[t_old]].remove_one(t_old)
            self.pools[net.publisher_of[t_new]].add(t_new)
            return

    def advance(self, steps: int):
        m = len(self.net.src)
        for _ in range(steps):
            if self._cursor >= len(self._order):
                self._order = list(self.rng.permutation(m))
                self._cursor = 0
            self._rewire_edge(self._order[self._cursor])
            self._cursor += 1
            self.steps_done += 1


def _net_from_corpus(corpus: Corpus) -> _SynthNet:
    node_ids = sorted(corpus.papers)
    index = {p: v for v, p in enumerate(node_ids)}
    pub_ids = sorted(corpus.publishers)
    pub_index = {p: i for i, p in enumerate(pub_ids)}
    publisher_of = np.empty(len(node_ids), dtype=np.int64)
    journal_of = []
    year_of = np.empty(len(node_ids), dtype=np.int64)
    for v, p in enumerate(node_ids):
        paper = corpus.papers[p]
        journal = corpus.journals[paper.journal_id]
        if journal.publisher_id is None:
            raise ValueError(f"journal {journal.journal_id!r} has no publisher")
        publisher_of[v] = pub_index[journal.publisher_id]
        journal_of.append(paper.journal_id)
        year_of[v] = paper.year
    src = []
    dst = []
    for citing, cited in corpus.citation_edges():
        src.append(index[citing])
        dst.append(index[cited])
    publishers = [sorted(corpus.publishers[p].journal_ids) for p in pub_ids]
    return _SynthNet(publisher_of=publisher_of, journal_of=journal_of,
                     year_of=year_of, src=src, dst=dst,
                     journal_ids=sorted(corpus.journals),
                     publishers=publishers)


def rewire(corpus: Corpus, config: RewireConfig, step_count: int) -> Corpus:
    """Retarget ``step_count`` links of a publisher-labeled corpus.

    Sources (and hence all out-degrees) are untouched. Each retargeted
    link lands inside the citing journal's publisher with that journal's
    configured probability, otherwise among the other publishers'
    papers, drawn preferentially by current in-degree + 1 either way.
    """
    net = _net_from_corpus(corpus)
    rng = np.random.default_rng(config.seed)
    rewirer = _Rewirer(net, dict(config.special_rates),
                       config.baseline_rate, rng)
    rewirer.advance(step_count)
    return _materialize(net, corpus.year_range)


def _default_rate_assignment(net: _SynthNet, rng):
    """One special journal per publisher; the default rates are dealt
    across publishers in seeded random order."""
    rates = list(DEFAULT_SPECIAL_RATES)
    if len(net.publishers) != len(rates):
        raise ValueError("default rate set expects "
                         f"{len(rates)} publishers, got {len(net.publishers)}")
    order = rng.permutation(len(rates))
    assignment = {}
    for p, jids in enumerate(net.publishers):
        jid = sorted(jids)[int(rng.integers(len(jids)))]
        assignment[jid] = rates[int(order[p])]
    return assignment


def _psi_of(net: _SynthNet, table, journal_id, totals):
    pub = next(js for js in net.publishers if journal_id in js)
    score = psi_from_counts(table, journal_id, sorted(pub),
                            {j: totals[j] for j in pub})
    return score.psi


@dataclass
class RewireCurves:
    """Ensemble-averaged solidarity trajectories of the special journals.

    ``rows`` carry (checkpoint, slot, rate, psi_ratio_mean, psi_ratio_std)
    with slots S1..Sk ordered by descending rate; ``ratios`` holds the
    raw per-ensemble ratios behind each row.
    """

    checkpoints: tuple[float, ...]
    slots: list[tuple[str, float]]
    rows: list[tuple[float, str, float, float, float]]
    ratios: dict[tuple[float, str], list[float]]

    def mean_ratio(self, checkpoint: float, slot: str) -> float:
        data = self.ratios[(checkpoint, slot)]
        return sum(data) / len(data)


def psi_rewiring_experiment(synth_config: SynthConfig,
                            rewire_config: RewireConfig) -> RewireCurves:
    """Track psi(rewired)/psi(original) for the special journals.

    Every ensemble generates a fresh corpus, assigns the special rates
    (one journal per publisher unless ``special_rates`` is given), and
    rewires through the checkpoint grid, all from seeds derived from the
    configured ones. Ratios are averaged across ensembles per rate slot.
    """
    checkpoints = tuple(c for c in rewire_config.checkpoints
                        if c <= rewire_config.rewire_fraction + 1e-9)
    per_slot: dict[tuple[float, str], list[float]] = {}
    slots: list[tuple[str, float]] = []

    for ens in range(rewire_config.ensemble_count):
        gen_rng = np.random.default_rng([synth_config.seed, ens])
        net = _generate_network(synth_config, gen_rng)
        rw_rng = np.random.default_rng([rewire_config.seed, ens])
        if rewire_config.special_rates:
            rates = dict(rewire_config.special_rates)
        else:
            rates = _default_rate_assignment(net, rw_rng)

        ordered = sorted(rates.items(), key=lambda kv: (-kv[1], kv[0]))
        slots = [(f"S{k + 1}", rate) for k, (_j, rate) in enumerate(ordered)]
        specials = [jid for jid, _r in ordered]

        totals = net.journal_paper_totals()
        base_psi = {}
        table = net.counts_table()
        for jid in specials:
            base_psi[jid] = _psi_of(net, table, jid, totals)

        rewirer = _Rewirer(net, rates, rewire_config.baseline_rate, rw_rng)
        m = len(net.src)
        for cp in checkpoints:
            target = int(round(cp * m))
            rewirer.advance(target - rewirer.steps_done)
            table = net.counts_table()
            for k, jid in enumerate(specials):
                psi = _psi_of(net, table, jid, totals)
                ratio = (psi / base_psi[jid]
                         if psi is not None and base_psi[jid] else None)
                if ratio is not None:
                    per_slot.setdefault((cp, f"S{k + 1}"), []).append(ratio)

    rows = []
    for cp in checkpoints:
        for slot, rate in slots:
            data = per_slot.get((cp, slot), [])
            if not data:
                continue
            arr = np.array(data)
            rows.append((cp, slot, rate, float(arr.mean()), float(arr.std())))
    return RewireCurves(checkpoints=checkpoints, slots=slots, rows=rows,
                        ratios=per_slot)


def publisher_psi_baseline(synth_config: SynthConfig, ensemble_count: int
                           ) -> dict[str, list[float]]:
    """Per-publisher solidarity samples before any rewiring.

    Returns publisher id -> flat list of journal psi values pooled over
    the ensembles, for fairness checks between the generated components.
    """
    pools: dict[str, list[float]] = {}
    for ens in range(ensemble_count):
        rng = np.random.default_rng([synth_config.seed, ens])
        net = _generate_network(synth_config, rng)
        table = net.counts_table()
        totals = net.journal_paper_totals()
        for p, jids in enumerate(net.publishers):
            pub_id = f"P{p + 1}"
            for jid in sorted(jids):
                psi = _psi_of(net, table, jid, totals)
                if psi is not None:
                    pools.setdefault(pub_id, []).append(psi)
    return pools


# ---------------------------------------------------------------------------
# Scenario sweeps on synthetic count tables
# ---------------------------------------------------------------------------

_SCENARIO_MEMBERS = ("F", "J1", "J2", "J3", "J4")
_SCENARIO_TOTALS = {j: 100 for j in _SCENARIO_MEMBERS}


def _scenario_table(scenario: str, value: float) -> CitationCounts:
    """Count table for one sweep point of the named scenario.

    F is the focal journal; J1..J4 share its publisher; E is the outside
    world. Scenario "a" sweeps F's citations into the publisher where
    they dominate the publisher's internal exchange; "b" sweeps the same
    count on top of a large constant internal base, pinning the
    publisher-wide expectations; "c" holds F's giving fixed and sweeps
    what F receives from the publisher.
    """
    base = {("F", "E"): 800, ("E", "F"): 160,
            ("E", "J1"): 40, ("E", "J2"): 40, ("E", "J3"): 40, ("E", "J4"): 40}
    cross = {("J1", "J2"): 500, ("J2", "J3"): 500,
             ("J3", "J4"): 500, ("J4", "J1"): 500}
    if scenario == "a":
        counts = dict(base)
        counts[("F", "J1")] = value
        counts[("J1", "F")] = 40
    elif scenario == "b":
        counts = dict(base) | dict(cross)
        counts[("F", "J1")] = value
        counts[("J1", "F")] = 40
    elif scenario == "c":
        counts = dict(base) | dict(cross)
        counts[("F", "J1")] = 40
        counts[("J1", "F")] = value
    else:
        raise ValueError(f"unknown scenario: {scenario!r}")

    table = CitationCounts()
    for (a, b), c in counts.items():
        if c <= 0:
            continue
        table.counts[(a, b)] = float(c)
        table.out_total[a] = table.out_total.get(a, 0) + float(c)
        table.in_total[b] = table.in_total.get(b, 0) + float(c)
    return table


def psi_scenarios(scenario: str, grid: Optional[Sequence[float]] = None):
    """Solidarity of the focal journal over a citation-count sweep.

    Returns [(sweep_value, psi), ...]. Scenarios "a" and "b" sweep the
    focal journal's citations into its publisher (rising curves, with
    "a" peaking higher); "c" sweeps the citations it receives from the
    publisher (falling curve).
    """
    if grid is None:
        start = 10 if scenario == "c" else 0
        grid = range(start, 201, 10)
    curve = []
    for value in grid:
        table = _scenario_table(scenario, float(value))
        score = psi_from_counts(table, "F", _SCENARIO_MEMBERS, _SCENARIO_TOTALS)
        curve.append((float(value), score.psi))
    return curve
