#include "doctest.h"
#include "oracles.hpp"
#include "temp_dir.hpp"
#include "citenet/common/error.hpp"
#include "citenet/filter/filter.hpp"
#include "citenet/graph/components.hpp"

using namespace citenet;
using namespace citenet::filter;
using graph::build_graph;
using graph::CitationEdge;

namespace {

const std::vector<std::string> kIntents = {"background", "method", "result"};

FilterSpec removing(std::set<std::uint32_t> intents, bool drop_isolated = true) {
  FilterSpec spec;
  spec.removed_intents = std::move(intents);
  spec.drop_isolated_nodes = drop_isolated;
  return spec;
}

ImpactReport report(GraphCounts before, GraphCounts after) { return {before, after}; }

}  // namespace

TEST_SUITE("filter") {
  TEST_CASE("an empty removal set is the identity") {
    Rng rng(1);
    for (int trial = 0; trial < 10; ++trial) {
      const auto g = build_graph(testing::random_edges(rng, 30, 0.1), kIntents, std::vector<std::string>{"iso"});
      CHECK(filter_graph(g, removing({})) == g);
    }
  }

  TEST_CASE("triangle with one background edge") {
    const std::vector<CitationEdge> edges = {{"a", "b", 0, 1.0}, {"b", "c", 1, 1.0}, {"c", "a", 2, 1.0}};
    const auto g = build_graph(edges, kIntents);
    const auto f = filter_graph(g, make_spec(g, std::vector<std::string>{"background"}));
    CHECK(f.node_count() == 3);
    CHECK(f.edge_count() == 2);
    CHECK(f.out_degree(*f.find("a")) == 0);
  }

  TEST_CASE("isolated nodes are kept when dropping is off") {
    const std::vector<CitationEdge> edges = {{"a", "b", 0, 1.0}, {"b", "c", 1, 1.0}};
    const auto g = build_graph(edges, kIntents);
    CHECK(filter_graph(g, removing({0, 1}, false)).node_count() == 3);
    CHECK(filter_graph(g, removing({0, 1}, true)).node_count() == 0);
    CHECK(filter_graph(g, removing({0}, true)).node_count() == 2);
  }

  TEST_CASE("filter counts agree with a recompute-from-scratch oracle") {
    Rng rng(42);
    for (int trial = 0; trial < 40; ++trial) {
      const auto n = 2 + rng.index(199);
      const auto edges = testing::random_edges(rng, n, 2.0 / static_cast<double>(n), 3, 0.2, true);
      const std::vector<std::string> extra = {"iso-a", "iso-b"};
      const auto g = build_graph(edges, kIntents, extra);
      std::set<std::uint32_t> removed;
      for (std::uint32_t i = 0; i < 3; ++i) {
        if (rng.bernoulli(0.5)) removed.insert(i);
      }
      const auto f = filter_graph(g, removing(removed));
      const auto want = testing::naive_filter_counts(edges, removed, extra);
      const auto got = count(f);
      CHECK(got.nodes == want.nodes);
      CHECK(got.edges == want.edges);
      CHECK(got.components == want.components);
    }
  }

  TEST_CASE("removal is monotone in nodes and edges") {
    Rng rng(6);
    for (int trial = 0; trial < 30; ++trial) {
      const auto g = build_graph(testing::random_edges(rng, 2 + rng.index(100), 0.05), kIntents);
      const auto f = filter_graph(g, removing({static_cast<std::uint32_t>(rng.index(3))}));
      CHECK(f.edge_count() <= g.edge_count());
      CHECK(f.node_count() <= g.node_count());
      if (!f.empty()) CHECK(count(f).components >= 1);
    }
  }

  TEST_CASE("filtering in two passes equals one pass with the union") {
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
      const auto g = build_graph(testing::random_edges(rng, 2 + rng.index(100), 0.05), kIntents);
      const auto two = filter_graph(filter_graph(g, removing({0})), removing({1}));
      const auto one = filter_graph(g, removing({0, 1}));
      CHECK(two == one);
    }
  }

  TEST_CASE("min_confidence spares low-confidence edges") {
    const std::vector<CitationEdge> edges = {{"a", "b", 0, 0.9}, {"b", "c", 0, 0.4}, {"c", "d", 1, 0.9}};
    const auto g = build_graph(edges, kIntents);
    auto spec = removing({0});
    spec.min_confidence = 0.5;
    const auto f = filter_graph(g, spec);
    CHECK(f.edge_count() == 2);
    CHECK_FALSE(f.find("a"));
    CHECK(f.find("b"));
  }

  TEST_CASE("unknown intents and unlabeled edges are rejected") {
    const std::vector<CitationEdge> labeled = {{"a", "b", 0, 1.0}};
    const auto g = build_graph(labeled, kIntents);
    CHECK_THROWS_AS(make_spec(g, std::vector<std::string>{"rebuttal"}), ValidationError);
    CHECK_THROWS_AS(filter_graph(g, removing({3})), ValidationError);
    const std::vector<CitationEdge> bare = {{"a", "b", std::nullopt, std::nullopt}};
    CHECK_THROWS_AS(filter_graph(build_graph(bare, kIntents), removing({0})), ValidationError);
  }

  TEST_CASE("impact of identical graphs is zero everywhere") {
    Rng rng(3);
    const auto g = build_graph(testing::random_edges(rng, 40, 0.05), kIntents);
    const auto r = impact_report(g, g);
    CHECK(r.node_delta() == 0.0);
    CHECK(r.edge_delta() == 0.0);
    CHECK(r.component_delta() == 0.0);
    const std::vector<std::pair<std::string, ImpactReport>> cols = {{"None", r}};
    const auto table = format_impact_table(cols);
    CHECK(table.find("(0.0%)") != std::string::npos);
    CHECK(table.find('+') == std::string::npos);
  }

  TEST_CASE("impact table renders published-scale counts with signed one-decimal deltas") {
    const GraphCounts full{76640, 171403, 340};
    const std::vector<std::pair<std::string, ImpactReport>> cols = {
        {"Background Filtered", report(full, {37644, 65739, 2267})},
        {"Method Filtered", report(full, {70877, 137850, 511})},
        {"Result Filtered", report(full, {76115, 170070, 347})}};
    const auto table = format_impact_table(cols);
    CHECK(table ==
          "Metric      Full Network  Background Filtered  Method Filtered   Result Filtered\n"
          "Nodes       76,640        37,644 (-50.9%)      70,877 (-7.5%)    76,115 (-0.7%)\n"
          "Edges       171,403       65,739 (-61.6%)      137,850 (-19.6%)  170,070 (-0.8%)\n"
          "Components  340           2,267 (+566.8%)      511 (+50.3%)      347 (+2.1%)\n");
  }

  TEST_CASE("impact CSV keeps unrounded deltas") {
    testing::TempDir dir;
    const std::vector<std::pair<std::string, ImpactReport>> cols = {{"-x", report({3, 3, 1}, {2, 1, 2})}};
    write_impact_csv(cols, dir / "impact.csv");
    CHECK(testing::slurp(dir / "impact.csv") ==
          "filter,quantity,before,after,delta_pct\n"
          "-x,nodes,3,2,-33.333333333333329\n"
          "-x,edges,3,1,-66.666666666666657\n"
          "-x,components,1,2,100\n");
  }

  TEST_CASE("a no-op filter leaves every rank in place for every metric") {
    Rng rng(21);
    for (int trial = 0; trial < 5; ++trial) {
      const auto g = build_graph(testing::random_edges(rng, 60, 0.06), kIntents);
      const auto same = filter_graph(g, removing({}));
      for (auto metric : {centrality::Metric::in_degree, centrality::Metric::betweenness,
                          centrality::Metric::closeness, centrality::Metric::pagerank}) {
        const auto r = rank_shift(g, same, metric, 20);
        CHECK(r.rows.size() == std::min<std::size_t>(20, g.node_count()));
        for (const auto& row : r.rows) {
          CHECK(row.rank_after == row.rank_before);
          CHECK_FALSE(row.dropped);
          CHECK(row.value_after == row.value_before);
        }
      }
    }
  }

  TEST_CASE("rank shift marks removed nodes and ranks beyond the horizon as dropped") {
    // Star into hub h; filtering background removes the spoke from s0 and hence s0.
    std::vector<CitationEdge> edges;
    for (int i = 0; i < 5; ++i) edges.push_back({"s" + std::to_string(i), "h", i == 0 ? 0u : 1u, 1.0});
    edges.push_back({"s1", "s2", 1, 1.0});
    const auto g = build_graph(edges, kIntents);
    const auto f = filter_graph(g, removing({0}));
    const auto r = rank_shift(g, f, centrality::Metric::in_degree, 3, 3);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.rows[0].node_id == "h");
    CHECK(r.rows[0].value_after == 4.0);
    CHECK(r.rows[1].node_id == "s2");
    // s0 sorts before s1 among zero in-degrees and disappears after filtering.
    CHECK(r.rows[2].node_id == "s0");
    CHECK(r.rows[2].dropped);
    CHECK_FALSE(r.rows[2].value_after);
    CHECK_THROWS_AS(rank_shift(g, f, centrality::Metric::in_degree, 0), ParameterError);
    CHECK_THROWS_AS(rank_shift(g, f, centrality::Metric::in_degree, 5, 4), ParameterError);
  }

  TEST_CASE("bump data: header-only, sorted rows and exact round trip") {
    testing::TempDir dir;
    RankShiftReport empty;
    CHECK(export_bump_data(empty, dir / "empty.csv") == 0);
    CHECK(testing::slurp(dir / "empty.csv") == "node_id,rank_before,rank_after,value_before,value_after,dropped\n");

    Rng rng(17);
    RankShiftReport r;
    r.metric = centrality::Metric::closeness;
    r.k = 20;
    r.horizon = 50;
    for (std::size_t i = 1; i <= 20; ++i) {
      RankShiftRow row;
      row.node_id = "node," + std::to_string(i);
      row.rank_before = i;
      row.value_before = rng.uniform(0.0, 1.0);
      if (rng.bernoulli(0.7)) {
        row.rank_after = 1 + rng.index(50);
        row.value_after = rng.uniform(0.0, 1.0);
      } else {
        row.dropped = true;
      }
      r.rows.push_back(row);
    }
    auto shuffled = r;
    rng.shuffle(std::span(shuffled.rows));
    CHECK(export_bump_data(shuffled, dir / "bump.csv") == 20);
    const auto back = read_bump_data(dir / "bump.csv");
    CHECK(back == r);
  }
}
