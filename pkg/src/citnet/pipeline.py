"""Declarative multi-stage runs over one corpus.

A run is described by a single config file (YAML or JSON). Stages
execute in dependency order (corpus loading first, impact before
matching, matching before everything comparative); each stage writes its
own CSV outputs into the output directory and communicates with later
stages only through those files. A manifest records the resolved config
hash, per-stage status and timings; when a stage fails its dependents
are skipped and the manifest carries a partial-run marker, with the
completed outputs left in place.

All randomness derives from the configured seed, and per-item work is
split deterministically, so a rerun with the same config produces
byte-identical CSVs at any worker-thread count.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import yaml

from . import __version__
from ._util import parallel_map, write_csv
from .corpus import Corpus, load_corpus
from . import authors as authors_mod
from . import disruption as disruption_mod
from . import impact as impact_mod
from . import jnet as jnet_mod
from . import matching as matching_mod
from . import novelty as novelty_mod
from . import selfcite as selfcite_mod
from . import synth as synth_mod

__all__ = [
    "RunConfig",
    "StageResult",
    "load_config",
    "config_hash",
    "run_pipeline",
    "run_synth",
    "emit_plot_data",
    "FIGURE_IDS",
]

STAGES = ("impact", "matching", "selfcite", "jnet", "novelty",
          "disruption", "authors")

# declared dependency chain; a failed stage halts everything after it
# that names it (directly or transitively)
STAGE_DEPS = {
    "impact": (),
    "matching": ("impact",),
    "selfcite": ("matching",),
    "jnet": ("matching",),
    "novelty": ("matching",),
    "disruption": ("matching",),
    "authors": ("matching",),
}

_DEFAULTS = {
    "year_range": [1996, 2018],
    "seed": 0,
    "threads": 1,
    "output": "out",
    "stages": list(STAGES),
    "impact": {"years": [], "reference_year": 2017, "market_share": False},
    "matching": {"year": None, "impact_kind": "normalized"},
    "selfcite": {"window": None, "include_self_journal": True,
                 "rate_years": [], "query_file": None},
    "jnet": {"year": None, "windows": [2], "link_types": ["citation"]},
    "novelty": {"ensemble_count": 10, "swaps_per_edge": 10.0,
                "collapse_multiplicity": False},
    "disruption": {"window": None, "by_journal": False},
    "authors": {"weights": None, "pair_threshold": 1.0,
                "group_threshold": 0.19},
    "synth": {},
}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    raw: dict
    path: Optional[Path] = None

    def __post_init__(self):
        merged = {k: (dict(v) if isinstance(v, dict) else v)
                  for k, v in _DEFAULTS.items()}
        for key, value in self.raw.items():
            if isinstance(value, dict) and isinstance(merged.get(key), dict):
                merged[key].update(value)
            else:
                merged[key] = value
        self.resolved = merged

    def __getitem__(self, key):
        return self.resolved[key]

    def corpus_paths(self):
        section = self.resolved.get("corpus") or {}
        base = self.path.parent if self.path else Path(".")
        return {k: (base / v) for k, v in section.items()}

    def validate(self):
        """Static checks; every referenced path must exist."""
        errors = []
        section = self.resolved.get("corpus") or {}
        for key in ("papers", "journals", "publishers"):
            if key not in section:
                errors.append(f"corpus.{key} missing from config")
        for key, path in self.corpus_paths().items():
            if not Path(path).exists():
                errors.append(f"corpus.{key}: no such file: {path}")
        unknown = set(self.resolved["stages"]) - set(STAGES)
        if unknown:
            errors.append(f"unknown stages: {sorted(unknown)}")
        if "authors" in self.resolved["stages"] and \
                not self.resolved["authors"].get("weights"):
            errors.append("authors stage needs explicit similarity weights "
                          "(authors.weights); the built-in defaults are "
                          "fixture placeholders")
        qf = self.resolved["selfcite"].get("query_file")
        if qf and not Path(qf).exists():
            errors.append(f"selfcite.query_file: no such file: {qf}")
        return errors


def load_config(path) -> RunConfig:
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        raw = yaml.safe_load(fh) or {}
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: config must be a mapping")
    return RunConfig(raw=raw, path=path)


def config_hash(config: RunConfig) -> str:
    canon = json.dumps(config.resolved, sort_keys=True, default=str)
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


@dataclass
class StageResult:
    name: str
    status: str          # "ok" | "failed" | "skipped"
    seconds: float = 0.0
    error: str = ""
    outputs: list[str] = field(default_factory=list)


@dataclass
class _RunContext:
    config: RunConfig
    corpus: Corpus
    outdir: Path
    threads: int
    seed: int


def _fraction_or_none(x):
    return None if x is None else float(x)


# ---------------------------------------------------------------------------
# Stages
# ---------------------------------------------------------------------------


def _impact_years(ctx):
    years = ctx.config["impact"]["years"]
    if years:
        return list(years)
    lo, hi = ctx.config["year_range"]
    return list(range(lo, hi + 1))


def _stage_impact(ctx: _RunContext):
    years = _impact_years(ctx)
    ref_year = ctx.config["impact"]["reference_year"]
    try:
        table = impact_mod.build_normalization_table(ctx.corpus, ref_year)
    except ValueError:
        table = None
    records = impact_mod.impact_table(ctx.corpus, years, table,
                                      threads=ctx.threads)
    rows = [(r.journal_id, r.year, _fraction_or_none(r.impact),
             r.normalized_impact, r.immediacy, r.cited_half_life,
             r.citing_half_life)
            for r in records]
    write_csv(ctx.outdir / "impact.csv",
              ["journal_id", "year", "impact", "normalized_impact",
               "immediacy", "cited_half_life", "citing_half_life"], rows)
    outputs = ["impact.csv"]

    if ctx.config["impact"]["market_share"]:
        share_rows = []
        for year in years:
            for pub in sorted(ctx.corpus.publishers):
                share = impact_mod.market_share(ctx.corpus, pub, year)
                if share is not None:
                    share_rows.append((pub, year, share))
        write_csv(ctx.outdir / "market_share.csv",
                  ["publisher_id", "year", "share"], share_rows)
        outputs.append("market_share.csv")
    return outputs


def _read_impact_csv(path):
    table = {}
    with Path(path).open(newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            norm = row["normalized_impact"]
            raw = row["impact"]
            table[(row["journal_id"], int(row["year"]))] = (
                float(raw) if raw else None,
                float(norm) if norm else None,
            )
    return table


def _matching_year(ctx):
    year = ctx.config["matching"]["year"]
    if year is not None:
        return int(year)
    return _impact_years(ctx)[-1]


def _stage_matching(ctx: _RunContext):
    year = _matching_year(ctx)
    kind = ctx.config["matching"]["impact_kind"]
    impacts = _read_impact_csv(ctx.outdir / "impact.csv")
    if not any(y == year for _j, y in impacts):
        raise ConfigError(f"matching year {year} is not covered by the "
                          f"impact stage years")

    registry = {}
    for jid in sorted(ctx.corpus.journals):
        journal = ctx.corpus.journals[jid]
        raw, norm = impacts.get((jid, year), (None, None))
        imp = norm if kind == "normalized" else raw
        registry[jid] = matching_mod.RegistryEntry(
            journal_id=jid,
            categories=journal.categories,
            questionable=journal.questionable_flag,
            annual_size=journal.paper_count_by_year.get(year, 0),
            impact=imp,
        )
    flagged = [j for j in sorted(registry) if registry[j].questionable]
    records = []
    for recs in parallel_map(
            lambda qj: matching_mod.match_registry(registry, qj),
            flagged, threads=ctx.threads):
        records.extend(recs)
    rows = [(r.qj_id, r.category, r.uj_id, r.impact_gap, r.tercile)
            for r in sorted(records, key=lambda r: (r.qj_id, r.category))]
    write_csv(ctx.outdir / "matches.csv",
              ["qj_id", "category", "uj_id", "impact_gap", "tercile"], rows)
    return ["matches.csv"]


def _read_matches_csv(path):
    records = []
    with Path(path).open(newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            records.append(matching_mod.MatchRecord(
                qj_id=row["qj_id"],
                category=row["category"],
                uj_id=row["uj_id"] or None,
                impact_gap=float(row["impact_gap"]) if row["impact_gap"] else None,
                tercile=row["tercile"] or None,
            ))
    return records


def _group_journals(ctx):
    """(flagged set, matched-control set) from corpus flags and matches.csv."""
    qj = {j for j in sorted(ctx.corpus.journals)
          if ctx.corpus.journals[j].questionable_flag}
    uj = set()
    matches_path = ctx.outdir / "matches.csv"
    if matches_path.exists():
        uj = {m.uj_id for m in _read_matches_csv(matches_path) if m.uj_id}
    return qj, uj


def _stage_selfcite(ctx: _RunContext):
    section = ctx.config["selfcite"]
    window = tuple(section["window"]) if section["window"] else None
    include_self = section["include_self_journal"]
    table = selfcite_mod.aggregate_citation_counts(ctx.corpus, window)

    scores = parallel_map(
        lambda jid: selfcite_mod.solidarity_index(
            ctx.corpus, jid, window, include_self=include_self, table=table),
        sorted(ctx.corpus.journals), threads=ctx.threads)
    rows = [(s.journal_id, s.psi, s.q_r, s.q_c, s.publisher_paper_total)
            for s in scores]
    write_csv(ctx.outdir / "solidarity.csv",
              ["journal_id", "psi", "Q_r", "Q_c", "publisher_paper_total"],
              rows)
    outputs = ["solidarity.csv"]

    rate_rows = []
    qj, uj = _group_journals(ctx)
    windows = ([(y, y) for y in section["rate_years"]]
               if section["rate_years"] else [window or ctx.corpus.year_range])

    def battery(jid):
        out = []
        journal = ctx.corpus.journals[jid]
        for win in windows:
            tab = (table if win == window or (window is None and
                                              win == ctx.corpus.year_range)
                   else selfcite_mod.aggregate_citation_counts(ctx.corpus, win))
            targets = {"self": {jid}, "qj_group": qj, "uj_group": uj}
            if journal.publisher_id in ctx.corpus.publishers:
                targets["publisher"] = set(
                    ctx.corpus.publishers[journal.publisher_id].journal_ids)
            for label in sorted(targets):
                group = targets[label]
                if not group:
                    continue
                cr = selfcite_mod.citation_rate(ctx.corpus, jid, group,
                                                table=tab)
                rr = selfcite_mod.reference_rate(ctx.corpus, jid, group,
                                                 table=tab)
                out.append((jid, label, "citation", win[0], win[1], cr))
                out.append((jid, label, "reference", win[0], win[1], rr))
        return out

    for chunk in parallel_map(battery, sorted(qj | uj), threads=ctx.threads):
        rate_rows.extend(chunk)

    query_file = section["query_file"]
    if query_file:
        with Path(query_file).open(encoding="utf-8") as fh:
            raw_queries = yaml.safe_load(fh) or []
        for raw in raw_queries:
            targets = raw["targets"] if isinstance(raw["targets"], list) \
                else [raw["targets"]]
            query = selfcite_mod.RateQuery(
                source=raw["source"], targets=tuple(targets),
                window=tuple(raw["window"]) if raw.get("window") else None,
                kind=raw.get("kind", "citation"))
            group = selfcite_mod.resolve_group(ctx.corpus, query.targets)
            fn = (selfcite_mod.citation_rate if query.kind == "citation"
                  else selfcite_mod.reference_rate)
            rate = fn(ctx.corpus, query.source, group, window=query.window)
            lo, hi = query.window if query.window else ctx.corpus.year_range
            rate_rows.append((query.source, "+".join(query.targets),
                              query.kind, lo, hi, rate))

    write_csv(ctx.outdir / "rates.csv",
              ["source", "target", "kind", "year_start", "year_end", "rate"],
              sorted(rate_rows, key=lambda r: (r[0], r[1], r[2], r[3])))
    outputs.append("rates.csv")
    return outputs


def _stage_jnet(ctx: _RunContext):
    section = ctx.config["jnet"]
    year = section["year"]
    if year is None:
        year = _matching_year(ctx)
    variants = [(int(w), lt) for w in section["windows"]
                for lt in section["link_types"]]

    matches_path = ctx.outdir / "matches.csv"
    matches = _read_matches_csv(matches_path) if matches_path.exists() else []

    def one(variant):
        window, link_type = variant
        network = jnet_mod.build_journal_network(ctx.corpus, year, window,
                                                 link_type)
        if network.empty:
            return (variant, None, [], {})
        vectors = [jnet_mod.betweenness(network), jnet_mod.closeness(network),
                   jnet_mod.pagerank(network), jnet_mod.pathcore(network)]
        comparison = (jnet_mod.centrality_comparison(matches, vectors)
                      if matches else {})
        return (variant, network, vectors, comparison)

    outputs = []
    comparison_rows = []
    for (window, link_type), network, vectors, comparison in parallel_map(
            one, variants, threads=ctx.threads):
        if network is None:
            continue
        tag = f"{year}_{window}{link_type}"
        name = f"network_{tag}.csv"
        write_csv(ctx.outdir / name, ["citing_id", "cited_id", "weight"],
                  [(u, v, w) for (u, v), w in sorted(network.edges.items())])
        outputs.append(name)
        for vec in vectors:
            name = f"centrality_{vec.metric}_{tag}.csv"
            write_csv(ctx.outdir / name, ["journal_id", "score"],
                      sorted(vec.scores.items()))
            outputs.append(name)
        for metric in sorted(comparison):
            rep = comparison[metric]
            comparison_rows.append((year, window, link_type, metric,
                                    rep.uj_higher_fraction, rep.pair_count,
                                    rep.excluded_pairs))
    if comparison_rows:
        write_csv(ctx.outdir / "centrality_comparison.csv",
                  ["year", "window", "link_type", "metric",
                   "uj_higher_fraction", "pair_count", "excluded_pairs"],
                  comparison_rows)
        outputs.append("centrality_comparison.csv")
    return outputs


def _stage_novelty(ctx: _RunContext):
    section = ctx.config["novelty"]
    config = novelty_mod.ShuffleConfig(
        ensemble_count=int(section["ensemble_count"]),
        swaps_per_edge=float(section["swaps_per_edge"]),
        seed=ctx.seed,
        collapse_multiplicity=bool(section["collapse_multiplicity"]),
    )
    zmap = novelty_mod.pair_zscores(ctx.corpus, config, threads=ctx.threads)
    rows = []
    for pid in sorted(ctx.corpus.papers):
        if len(ctx.corpus.forward[pid]) < 2:
            continue
        nov = novelty_mod.paper_novelty(ctx.corpus, pid, zmap,
                                        collapse=config.collapse_multiplicity)
        rows.append((pid, nov.median_z, nov.p10_z, nov.defined_pair_count,
                     nov.undefined_pair_count))
    write_csv(ctx.outdir / "novelty.csv",
              ["paper_id", "median_z", "p10_z", "defined_pair_count",
               "undefined_pair_count"], rows)
    return ["novelty.csv"]


def _stage_disruption(ctx: _RunContext):
    section = ctx.config["disruption"]
    window = tuple(section["window"]) if section["window"] else None

    def one(pid):
        c = disruption_mod.disruption_counts(ctx.corpus, pid, window)
        paper = ctx.corpus.papers[pid]
        return (pid, c.n_i, c.n_j, c.n_k, c.value,
                len(paper.author_keys), paper.year)

    rows = parallel_map(one, sorted(ctx.corpus.papers), threads=ctx.threads)
    write_csv(ctx.outdir / "disruption.csv",
              ["paper_id", "n_i", "n_j", "n_k", "D", "author_count", "year"],
              rows)
    outputs = ["disruption.csv"]

    if section["by_journal"]:
        means = disruption_mod.journal_mean_disruption(
            ctx.corpus, sorted(ctx.corpus.papers), window)
        write_csv(ctx.outdir / "disruption_journal.csv",
                  ["journal_id", "mean_D"], sorted(means.items()))
        outputs.append("disruption_journal.csv")
    return outputs


def _stage_authors(ctx: _RunContext):
    section = ctx.config["authors"]
    w = section["weights"] or {}
    weights = authors_mod.SimilarityWeights(
        w_self_citation=float(w.get("self_citation", 1.0)),
        w_shared_author=float(w.get("shared_author", 0.5)),
        w_shared_citation=float(w.get("shared_citation", 0.2)),
        w_shared_reference=float(w.get("shared_reference", 0.2)),
        pair_threshold=float(section["pair_threshold"]),
        group_threshold=float(section["group_threshold"]),
    )
    clusters = authors_mod.disambiguate(ctx.corpus, weights,
                                        threads=ctx.threads)
    rows = []
    for cid in sorted(clusters.clusters):
        for key, pid in sorted(clusters.clusters[cid]):
            rows.append((cid, key, pid))
    write_csv(ctx.outdir / "clusters.csv",
              ["cluster_id", "author_key", "paper_id"], rows)

    qj, uj = _group_journals(ctx)
    stat_rows = []
    for label, group in (("qj", qj), ("uj", uj)):
        if not group:
            continue
        for s in authors_mod.author_demographics(ctx.corpus, clusters, group):
            stat_rows.append((label, s.cluster_id, s.academic_age,
                              s.paper_count, s.group_paper_count,
                              s.self_cited_fraction, s.self_citing_fraction,
                              s.group_self_cited_any, s.group_self_citing_any,
                              s.group_self_cited_own, s.group_self_citing_own))
    write_csv(ctx.outdir / "author_stats.csv",
              ["group", "cluster_id", "academic_age", "paper_count",
               "group_paper_count", "self_cited_fraction",
               "self_citing_fraction", "group_self_cited_any",
               "group_self_citing_any", "group_self_cited_own",
               "group_self_citing_own"], stat_rows)
    return ["clusters.csv", "author_stats.csv"]


_STAGE_FNS = {
    "impact": _stage_impact,
    "matching": _stage_matching,
    "selfcite": _stage_selfcite,
    "jnet": _stage_jnet,
    "novelty": _stage_novelty,
    "disruption": _stage_disruption,
    "authors": _stage_authors,
}


def run_pipeline(config: RunConfig, outdir=None, seed=None, threads=None):
    """Execute the enabled stages and write the manifest.

    Returns the list of StageResult in execution order. Stage failures
    do not raise; they mark the run partial and skip dependents.
    """
    errors = config.validate()
    if errors:
        raise ConfigError("; ".join(errors))
    outdir = Path(outdir or config["output"])
    outdir.mkdir(parents=True, exist_ok=True)
    seed = config["seed"] if seed is None else seed
    threads = config["threads"] if threads is None else threads

    corpus = load_corpus(config.corpus_paths(),
                         year_range=tuple(config["year_range"]))
    ctx = _RunContext(config=config, corpus=corpus, outdir=outdir,
                      threads=int(threads), seed=int(seed))

    enabled = [s for s in STAGES if s in config["stages"]]
    results: list[StageResult] = []
    failed: set[str] = set()
    for name in enabled:
        deps = STAGE_DEPS[name]
        blocked = [d for d in deps if d in failed]
        if blocked:
            results.append(StageResult(name, "skipped",
                                       error=f"dependency failed: {blocked[0]}"))
            failed.add(name)
            continue
        t0 = time.perf_counter()
        try:
            outputs = _STAGE_FNS[name](ctx)
            results.append(StageResult(name, "ok",
                                       seconds=time.perf_counter() - t0,
                                       outputs=outputs))
        except Exception as exc:  # stage isolation: report, halt dependents
            results.append(StageResult(name, "failed",
                                       seconds=time.perf_counter() - t0,
                                       error=f"{type(exc).__name__}: {exc}"))
            failed.add(name)

    manifest = {
        "config_hash": config_hash(config),
        "version": __version__,
        "seed": int(seed),
        "threads": int(threads),
        "partial": bool(failed),
        "load_report": corpus.load_report.summary(),
        "stages": [{"name": r.name, "status": r.status,
                    "seconds": round(r.seconds, 6), "error": r.error,
                    "outputs": r.outputs} for r in results],
    }
    with (outdir / "manifest.json").open("w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return results


def run_synth(config: RunConfig, outdir=None, seed=None):
    """Scenario sweeps plus the rewiring experiment, written as CSVs."""
    outdir = Path(outdir or config["output"])
    outdir.mkdir(parents=True, exist_ok=True)
    section = config["synth"] or {}
    seed = config["seed"] if seed is None else int(seed)

    scen_rows = []
    for scenario in ("a", "b", "c"):
        for value, psi in synth_mod.psi_scenarios(scenario,
                                                  section.get("grid")):
            scen_rows.append((scenario, value, psi))
    write_csv(outdir / "synth_psi_scenarios.csv",
              ["scenario", "sweep_value", "psi"], scen_rows)

    synth_cfg = synth_mod.SynthConfig(
        publisher_count=int(section.get("publisher_count", 5)),
        journals_per_publisher=int(section.get("journals_per_publisher", 5)),
        component_size_range=tuple(section.get("component_size_range",
                                               (450, 550))),
        out_degree_mean=float(section.get("out_degree_mean", 20.0)),
        out_degree_std=float(section.get("out_degree_std", 5.0)),
        in_degree_exponent=float(section.get("in_degree_exponent", 3.0)),
        seed=seed,
    )
    rewire_cfg = synth_mod.RewireConfig(
        baseline_rate=float(section.get("baseline_rate", 0.2)),
        rewire_fraction=float(section.get("rewire_fraction", 3.0)),
        ensemble_count=int(section.get("ensemble_count", 20)),
        seed=seed + 1,
    )
    curves = synth_mod.psi_rewiring_experiment(synth_cfg, rewire_cfg)
    write_csv(outdir / "synth_psi_rewire.csv",
              ["checkpoint", "journal", "rate", "psi_ratio_mean",
               "psi_ratio_std"], curves.rows)
    return curves


# ---------------------------------------------------------------------------
# Figure-ready exports
# ---------------------------------------------------------------------------

FIGURE_IDS = ("2B", "2C", "2D", "2E", "2F", "3", "4A", "4B", "4C", "4D",
              "S15", "S18")


def _need(outdir, filename, stage):
    path = Path(outdir) / filename
    if not path.exists():
        raise FileNotFoundError(
            f"figure needs {filename}, which the '{stage}' stage produces; "
            f"run that stage first")
    return path


def _read_rows(path):
    with Path(path).open(newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def _load_groups(config, outdir):
    corpus = load_corpus(config.corpus_paths(),
                         year_range=tuple(config["year_range"]))
    qj = {j for j in sorted(corpus.journals)
          if corpus.journals[j].questionable_flag}
    matches = _read_matches_csv(_need(outdir, "matches.csv", "matching"))
    uj = {m.uj_id for m in matches if m.uj_id}
    return corpus, matches, qj, uj


def _mean_rate_figure(config, outdir, target_label):
    rows = _read_rows(_need(outdir, "rates.csv", "selfcite"))
    corpus = load_corpus(config.corpus_paths(),
                         year_range=tuple(config["year_range"]))
    qj = {j for j in sorted(corpus.journals)
          if corpus.journals[j].questionable_flag}
    acc: dict[tuple, list[float]] = {}
    for row in rows:
        if row["target"] != target_label and target_label != "group":
            continue
        if target_label == "group" and row["target"] not in ("qj_group",
                                                             "uj_group"):
            continue
        if not row["rate"]:
            continue
        group = "qj" if row["source"] in qj else "uj"
        key = (int(row["year_start"]), int(row["year_end"]), group,
               row["kind"], row["target"])
        acc.setdefault(key, []).append(float(row["rate"]))
    out = [(k[0], k[1], k[2], k[3], k[4], sum(v) / len(v), len(v))
           for k, v in sorted(acc.items())]
    return ["year_start", "year_end", "group", "kind", "target",
            "mean_rate", "n"], out


def _figure_2f(config, outdir):
    _corpus, matches, _qj, _uj = _load_groups(config, outdir)
    solidarity = {r["journal_id"]: r for r in
                  _read_rows(_need(outdir, "solidarity.csv", "selfcite"))}
    impacts = _read_impact_csv(_need(outdir, "impact.csv", "impact"))
    year = (config["matching"]["year"]
            if config["matching"]["year"] is not None
            else max(y for _j, y in impacts) if impacts else None)
    rows = []
    for m in sorted({(m.qj_id, m.uj_id) for m in matches if m.uj_id}):
        qj_id, uj_id = m
        sq, su = solidarity.get(qj_id), solidarity.get(uj_id)
        if not sq or not su or not sq["psi"] or not su["psi"]:
            continue
        ratio = float(sq["psi"]) / float(su["psi"])
        rel_size = None
        if sq["publisher_paper_total"] and su["publisher_paper_total"] \
                and float(su["publisher_paper_total"]) > 0:
            rel_size = (float(sq["publisher_paper_total"])
                        / float(su["publisher_paper_total"]))
        imp = impacts.get((qj_id, year), (None, None))[1] if year else None
        rows.append((qj_id, ratio, rel_size, imp))
    return ["qj_id", "psi_ratio", "relative_publisher_size", "qj_impact"], rows


def _figure_3(config, outdir):
    _corpus, matches, _qj, _uj = _load_groups(config, outdir)
    pairs = sorted({(m.qj_id, m.uj_id) for m in matches if m.uj_id})
    rows = []
    for path in sorted(Path(outdir).glob("centrality_*_*.csv")):
        parts = path.stem.split("_")
        if len(parts) != 4 or parts[0] != "centrality":
            continue
        metric, tag = parts[1], parts[3]
        scores = {r["journal_id"]: float(r["score"]) for r in _read_rows(path)}
        for qj_id, uj_id in pairs:
            if qj_id in scores and uj_id in scores:
                q, u = scores[qj_id], scores[uj_id]
                logdiff = (math.log10(u / q) if q > 0 and u > 0 else None)
                rows.append((metric, tag, qj_id, uj_id, q, u, logdiff))
    if not rows:
        _need(outdir, "centrality_comparison.csv", "jnet")
    return (["metric", "network", "qj_id", "uj_id", "qj_score", "uj_score",
             "log10_ratio"], rows)


def _paper_group(corpus, pid, qj, uj):
    jid = corpus.papers[pid].journal_id
    if jid in qj:
        return "qj"
    if jid in uj:
        return "uj"
    return "other"


def _figure_4a(config, outdir):
    data = _read_rows(_need(outdir, "disruption.csv", "disruption"))
    corpus, _matches, qj, uj = _load_groups(config, outdir)
    rows = []
    for r in data:
        pid = r["paper_id"]
        cites = int(r["n_i"]) + int(r["n_j"])
        rows.append((_paper_group(corpus, pid, qj, uj), pid, cites))
    return ["group", "paper_id", "citation_count"], sorted(rows)


def _figure_4b(config, outdir):
    data = _read_rows(_need(outdir, "novelty.csv", "novelty"))
    corpus, _matches, qj, uj = _load_groups(config, outdir)
    rows = []
    for r in data:
        pid = r["paper_id"]
        rows.append((_paper_group(corpus, pid, qj, uj), pid,
                     float(r["median_z"]) if r["median_z"] else None,
                     float(r["p10_z"]) if r["p10_z"] else None))
    return ["group", "paper_id", "median_z", "p10_z"], sorted(rows)


def _figure_4c(config, outdir):
    data = _read_rows(_need(outdir, "disruption.csv", "disruption"))
    corpus, _matches, qj, uj = _load_groups(config, outdir)
    acc: dict[tuple, list[float]] = {}
    for r in data:
        if not r["D"]:
            continue
        group = _paper_group(corpus, r["paper_id"], qj, uj)
        acc.setdefault((group, int(r["author_count"])), []).append(float(r["D"]))
    rows = [(g, k, sum(v) / len(v), len(v))
            for (g, k), v in sorted(acc.items())]
    return ["group", "team_size", "mean_D", "n"], rows


def _passthrough(filename, stage):
    def build(config, outdir):
        rows = _read_rows(_need(outdir, filename, stage))
        if not rows:
            return [], []
        header = list(rows[0].keys())
        return header, [tuple(r[h] for h in header) for r in rows]
    return build


_FIGURES = {
    "2B": lambda c, o: _mean_rate_figure(c, o, "self"),
    "2C": lambda c, o: _mean_rate_figure(c, o, "group"),
    "2D": lambda c, o: _mean_rate_figure(c, o, "publisher"),
    "2E": _passthrough("market_share.csv", "impact (enable market_share)"),
    "2F": _figure_2f,
    "3": _figure_3,
    "4A": _figure_4a,
    "4B": _figure_4b,
    "4C": _figure_4c,
    "4D": _passthrough("author_stats.csv", "authors"),
    "S15": _passthrough("synth_psi_scenarios.csv", "synth"),
    "S18": _passthrough("synth_psi_rewire.csv", "synth"),
}


def emit_plot_data(config: RunConfig, outdir, figure_id: str) -> Path:
    """Write one figure panel's tidy table under <outdir>/figures/.

    Raises KeyError for unknown panel ids and FileNotFoundError naming
    the absent stage when required inputs are missing.
    """
    if figure_id not in _FIGURES:
        raise KeyError(f"unknown figure id: {figure_id!r}; "
                       f"known: {', '.join(FIGURE_IDS)}")
    header, rows = _FIGURES[figure_id](config, Path(outdir))
    path = Path(outdir) / "figures" / f"figure_{figure_id}.csv"
    write_csv(path, header, rows)
    return path
