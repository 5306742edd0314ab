"""Journal-level citation timing metrics on a synthetic corpus.

Impact in year y counts citations arriving during y to the journal's
papers of the two prior years, per such paper. Normalization deflates
citation counts by the growth of the busiest field so that impacts from
different years can be compared. Undefined values are None, never 0.
"""

from citnet import (build_normalization_table, cited_half_life,
                    citing_half_life, immediacy_index, journal_impact,
                    market_share, normalized_journal_impact)
from citnet.synth import SynthConfig, generate_synthetic

corpus = generate_synthetic(SynthConfig(
    publisher_count=3, journals_per_publisher=2,
    component_size_range=(300, 360), out_degree_mean=8.0,
    out_degree_std=2.0, seed=1, year_range=(2000, 2005)))

table = build_normalization_table(corpus, reference_year=2004)
print("reference field:", table.top_field)
print("articles per year in it:", table.n_top)

year = 2003
for jid in sorted(corpus.journals)[:4]:
    raw = journal_impact(corpus, jid, year)
    norm = normalized_journal_impact(corpus, jid, year, table)
    print(f"{jid}: impact {float(raw):.3f} (exact {raw}), "
          f"normalized {norm:.3f}")

# Same-year citation speed and the median ages of citations given and
# received. The medians use the midpoint convention for even counts.
jid = sorted(corpus.journals)[0]
print("immediacy:", immediacy_index(corpus, jid, year))
print("cited half-life:", cited_half_life(corpus, jid, year))
print("citing half-life:", citing_half_life(corpus, jid, year))

# Market shares over all publishers partition the year's output.
shares = {pub: market_share(corpus, pub, year)
          for pub in sorted(corpus.publishers)}
print("market shares:", {p: round(s, 3) for p, s in shares.items()},
      "sum:", round(sum(shares.values()), 12))
