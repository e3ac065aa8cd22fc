#include <cstring>

#include "doctest.h"
#include "oracles.hpp"
#include "temp_dir.hpp"
#include "citenet/centrality/centrality.hpp"
#include "citenet/common/error.hpp"
#include "citenet/common/parallel.hpp"

using namespace citenet;
using namespace citenet::centrality;
using graph::build_graph;
using graph::CitationEdge;

namespace {

graph::CitationGraph from_pairs(std::initializer_list<std::pair<const char*, const char*>> pairs,
                                std::vector<std::string> nodes = {}) {
  std::vector<CitationEdge> edges;
  for (auto [a, b] : pairs) edges.push_back({a, b, std::nullopt, std::nullopt});
  return build_graph(edges, {}, nodes);
}

double at(const graph::CitationGraph& g, const CentralityVector& v, std::string_view id) { return v.values[*g.find(id)]; }

graph::CitationGraph random_graph(Rng& rng, std::size_t max_n) {
  const auto n = 1 + rng.index(max_n);
  std::vector<std::string> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(testing::node_name(i));
  const double p = rng.uniform(0.0, 4.0 / static_cast<double>(n));
  return build_graph(testing::random_edges(rng, n, p), testing::intent_names(3), nodes);
}

}  // namespace

TEST_SUITE("centrality") {
  TEST_CASE("degree: isolated node and star") {
    const auto g = from_pairs({{"a", "x"}, {"b", "x"}, {"c", "x"}}, {"iso"});
    const auto [in, out] = degree(g);
    CHECK(at(g, in, "x") == 3);
    CHECK(at(g, out, "x") == 0);
    CHECK(at(g, in, "iso") == 0);
    CHECK(at(g, out, "iso") == 0);
    CHECK(at(g, out, "a") == 1);
  }

  TEST_CASE("degree is permutation-equivariant") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      auto edges = testing::random_edges(rng, 2 + rng.index(40), 0.1);
      const auto a = build_graph(edges);
      rng.shuffle(std::span(edges));
      const auto b = build_graph(edges);
      const auto [ia, oa] = degree(a);
      const auto [ib, ob] = degree(b);
      for (graph::NodeIndex v = 0; v < a.node_count(); ++v) {
        CHECK(ia.values[v] == at(b, ib, a.node_id(v)));
        CHECK(oa.values[v] == at(b, ob, a.node_id(v)));
      }
    }
  }

  TEST_CASE("betweenness: path and diamond") {
    const auto path = from_pairs({{"a", "b"}, {"b", "c"}});
    const auto bp = betweenness(path);
    CHECK(at(path, bp, "b") == 1.0);
    CHECK(at(path, bp, "a") == 0.0);
    CHECK(at(path, bp, "c") == 0.0);

    const auto diamond = from_pairs({{"a", "b"}, {"b", "d"}, {"a", "c"}, {"c", "d"}});
    const auto bd = betweenness(diamond);
    CHECK(at(diamond, bd, "b") == 0.5);
    CHECK(at(diamond, bd, "c") == 0.5);
  }

  TEST_CASE("betweenness matches brute-force path counting, directed and undirected") {
    Rng rng(31);
    for (int trial = 0; trial < 25; ++trial) {
      const auto g = random_graph(rng, 40);
      for (bool undirected : {false, true}) {
        const auto got = betweenness(g, undirected).values;
        const auto want = testing::brute_force_betweenness(testing::adjacency_matrix(g, undirected));
        for (std::size_t v = 0; v < want.size(); ++v) CHECK(std::abs(got[v] - want[v]) <= 1e-12 * std::max(1.0, want[v]));
      }
    }
  }

  TEST_CASE("closeness: directed path examples") {
    const auto g = from_pairs({{"a", "b"}, {"b", "c"}}, {"iso"});
    const auto std_in = closeness(from_pairs({{"a", "b"}, {"b", "c"}}), ClosenessVariant::standard, Direction::incoming);
    const auto path = from_pairs({{"a", "b"}, {"b", "c"}});
    CHECK(at(path, std_in, "c") == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    const auto farness = closeness(path, ClosenessVariant::farness_sum, Direction::incoming);
    CHECK(at(path, farness, "c") == 1.0);
    const auto with_iso = closeness(g);
    CHECK(at(g, with_iso, "iso") == 0.0);
    CHECK(at(g, with_iso, "a") == 0.0);
  }

  TEST_CASE("closeness matches the distance-matrix oracle in every mode") {
    Rng rng(77);
    for (int trial = 0; trial < 25; ++trial) {
      const auto g = random_graph(rng, 40);
      for (auto variant : {ClosenessVariant::standard, ClosenessVariant::farness_sum}) {
        const bool farness = variant == ClosenessVariant::farness_sum;
        for (auto dir : {Direction::incoming, Direction::outgoing}) {
          const auto got = closeness(g, variant, dir).values;
          const auto want = testing::reference_closeness(testing::adjacency_matrix(g), dir == Direction::incoming, farness);
          for (std::size_t v = 0; v < want.size(); ++v) CHECK(got[v] == doctest::Approx(want[v]).epsilon(1e-12));
        }
        const auto got = closeness(g, variant, Direction::incoming, true).values;
        const auto want = testing::reference_closeness(testing::adjacency_matrix(g, true), true, farness);
        for (std::size_t v = 0; v < want.size(); ++v) CHECK(got[v] == doctest::Approx(want[v]).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("closeness monotonicity: a shortcut between already-connected DAG nodes never lowers closeness") {
    Rng rng(19);
    for (int trial = 0; trial < 30; ++trial) {
      // Random DAG: edges only from higher to lower index.
      const auto n = 3 + rng.index(25);
      std::vector<CitationEdge> edges;
      std::vector<std::string> nodes;
      for (std::size_t i = 0; i < n; ++i) nodes.push_back(testing::node_name(i));
      for (std::size_t u = 1; u < n; ++u) {
        for (std::size_t v = 0; v < u; ++v) {
          if (rng.bernoulli(0.15)) edges.push_back({nodes[u], nodes[v], std::nullopt, std::nullopt});
        }
      }
      const auto before = build_graph(edges, {}, nodes);
      const auto dist = testing::all_pairs_distances(testing::adjacency_matrix(before));
      // A shortcut u -> v where v is already reachable from u adds no new reachers.
      std::vector<std::pair<std::size_t, std::size_t>> shortcuts;
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          const auto du = *before.find(nodes[u]), dv = *before.find(nodes[v]);
          if (dist[du][dv] >= 2 && dist[du][dv] < testing::kUnreachable) shortcuts.emplace_back(u, v);
        }
      }
      if (shortcuts.empty()) continue;
      const auto [u, v] = shortcuts[rng.index(shortcuts.size())];
      auto more = edges;
      more.push_back({nodes[u], nodes[v], std::nullopt, std::nullopt});
      const auto after = build_graph(more, {}, nodes);
      for (auto dir : {Direction::incoming, Direction::outgoing}) {
        const auto cb = closeness(before, ClosenessVariant::standard, dir);
        const auto ca = closeness(after, ClosenessVariant::standard, dir);
        for (const auto& id : nodes) CHECK(at(after, ca, id) >= at(before, cb, id));
      }
    }
  }

  TEST_CASE("closeness: an edge that makes a long chain reachable can lower standard closeness") {
    // Ten direct citers of t, plus a 20-node chain that starts citing one of them.
    std::vector<CitationEdge> edges;
    for (int i = 0; i < 10; ++i) edges.push_back({"s" + std::to_string(i), "t", std::nullopt, std::nullopt});
    for (int i = 1; i < 20; ++i) edges.push_back({"c" + std::to_string(i), "c" + std::to_string(i - 1), std::nullopt, std::nullopt});
    const auto before = build_graph(edges);
    edges.push_back({"c0", "s0", std::nullopt, std::nullopt});
    const auto after = build_graph(edges, {}, before.node_ids());
    CHECK(at(after, closeness(after), "t") < at(before, closeness(before), "t"));
  }

  TEST_CASE("pagerank: 3-cycle and two-node fixed points") {
    const auto cycle = from_pairs({{"a", "b"}, {"b", "c"}, {"c", "a"}});
    const auto pr = pagerank(cycle);
    CHECK(pr.converged);
    for (double v : pr.values) CHECK(std::abs(v - 1.0) <= 1e-10);

    const auto pair = from_pairs({{"a", "b"}});
    const auto drop = pagerank(pair, 0.85, 1e-12, 1000, Dangling::drop);
    CHECK(at(pair, drop, "a") == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(at(pair, drop, "b") == doctest::Approx(0.15 + 0.85 * 0.15).epsilon(1e-12));
    CHECK(at(pair, drop, "b") == doctest::Approx(0.2775).epsilon(1e-12));
  }

  TEST_CASE("pagerank matches the dense linear solve in both dangling modes") {
    Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
      const auto g = random_graph(rng, 100);
      for (auto mode : {Dangling::redistribute, Dangling::drop}) {
        const auto got = pagerank(g, 0.85, 1e-10, 10000, mode);
        REQUIRE(got.converged);
        const auto want = testing::dense_pagerank(testing::adjacency_matrix(g), 0.85, mode == Dangling::redistribute);
        for (std::size_t v = 0; v < got.values.size(); ++v) {
          CHECK(std::abs(got.values[v] - want(static_cast<Eigen::Index>(v))) <= 1e-8);
        }
        if (mode == Dangling::redistribute) {
          const double sum = std::accumulate(got.values.begin(), got.values.end(), 0.0);
          CHECK(std::abs(sum - static_cast<double>(g.node_count())) <= 1e-10 * static_cast<double>(g.node_count()));
        }
      }
    }
  }

  TEST_CASE("pagerank under drop: an isolated node leaves the existing order unchanged") {
    Rng rng(55);
    for (int trial = 0; trial < 10; ++trial) {
      auto edges = testing::random_edges(rng, 20, 0.1);
      const auto g = build_graph(edges);
      std::vector<std::string> nodes = g.node_ids();
      nodes.push_back("isolated");
      const auto h = build_graph(edges, {}, nodes);
      const auto a = pagerank(g, 0.85, 1e-12, 10000, Dangling::drop);
      const auto b = pagerank(h, 0.85, 1e-12, 10000, Dangling::drop);
      const auto ra = top_k(g, a, g.node_count());
      const auto rb = top_k(h, b, h.node_count());
      std::vector<std::string> order_b;
      for (const auto& r : rb) {
        if (r.node_id != "isolated") order_b.push_back(r.node_id);
      }
      std::vector<std::string> order_a;
      for (const auto& r : ra) order_a.push_back(r.node_id);
      CHECK(order_a == order_b);
    }
  }

  TEST_CASE("pagerank reports non-convergence and rejects bad parameters") {
    Rng rng(2);
    const auto g = build_graph(testing::random_edges(rng, 50, 0.1));
    const auto capped = pagerank(g, 0.85, 1e-10, 3);
    CHECK_FALSE(capped.converged);
    CHECK(capped.iterations == 3);
    CHECK_THROWS_AS(pagerank(g, 1.0), ParameterError);
    CHECK_THROWS_AS(pagerank(g, 0.85, 0.0), ParameterError);
    CHECK_THROWS_AS(pagerank(build_graph({})), ValidationError);
  }

  TEST_CASE("top_k: hand sort and lexicographic ties") {
    const auto g = from_pairs({}, {"a", "b", "c"});
    CentralityVector v;
    v.values = {3, 1, 2};
    const auto top = top_k(g, v, 2);
    REQUIRE(top.size() == 2);
    CHECK(top[0] == RankedNode{1, "a", 3});
    CHECK(top[1] == RankedNode{2, "c", 2});

    const auto h = from_pairs({}, {"delta", "alpha", "charlie", "bravo"});
    CentralityVector flat;
    flat.values = {1, 1, 1, 1};
    const auto ties = top_k(h, flat, 10);
    std::vector<std::string> ids;
    for (const auto& r : ties) ids.push_back(r.node_id);
    CHECK(ids == std::vector<std::string>{"alpha", "bravo", "charlie", "delta"});
    CHECK_THROWS_AS(top_k(h, flat, 0), ParameterError);
  }

  TEST_CASE("every metric is independent of the thread count") {
    Rng rng(8);
    const auto g = random_graph(rng, 150);
    for (auto metric : {Metric::in_degree, Metric::betweenness, Metric::closeness, Metric::pagerank}) {
      set_thread_count(1);
      const auto one = compute(g, metric).values;
      set_thread_count(3);
      const auto three = compute(g, metric).values;
      CHECK(std::memcmp(one.data(), three.data(), one.size() * sizeof(double)) == 0);
    }
    set_thread_count(0);
  }

  TEST_CASE("centrality CSV and metadata sidecar") {
    testing::TempDir dir;
    const auto cycle = from_pairs({{"a", "b"}, {"b", "c"}, {"c", "a"}});
    CHECK(write_centrality_csv(cycle, pagerank(cycle), 20, dir / "pr.csv") == 3);
    CHECK(testing::slurp(dir / "pr.csv") ==
          "node_id,metric,value,rank\na,pagerank,1,1\nb,pagerank,1,2\nc,pagerank,1,3\n");
    const auto meta = testing::slurp(dir / "pr.csv.meta");
    CHECK(meta.find("damping=0.84999999999999998\n") != std::string::npos);
    CHECK(meta.find("converged=true\n") != std::string::npos);
  }

  TEST_CASE("metric and option names parse") {
    CHECK(parse_metric("pagerank") == Metric::pagerank);
    CHECK(parse_metric("in-degree") == Metric::in_degree);
    CHECK(parse_variant("paper-literal") == ClosenessVariant::farness_sum);
    CHECK(parse_variant("standard") == ClosenessVariant::standard);
    CHECK_FALSE(parse_metric("eigenvector"));
  }
}
