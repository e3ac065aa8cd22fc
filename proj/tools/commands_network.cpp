#include <algorithm>
#include <filesystem>
#include <iostream>

#include "cli_support.hpp"
#include "citenet/centrality/centrality.hpp"
#include "citenet/common/error.hpp"
#include "citenet/common/numfmt.hpp"
#include "citenet/filter/filter.hpp"
#include "citenet/graph/components.hpp"
#include "citenet/graph/graph_io.hpp"
#include "citenet/ingest/label_schema.hpp"

namespace citenet::tool {

namespace fs = std::filesystem;

namespace {

struct GraphInput {
  std::string edges, nodes, schema;

  graph::CitationGraph load() const {
    std::optional<ingest::LabelSchema> s;
    if (!schema.empty()) s = ingest::LabelSchema::load(schema);
    std::optional<fs::path> node_path;
    if (!nodes.empty()) node_path = nodes;
    return graph::read_graph(edges, node_path, s ? &*s : nullptr);
  }
};

void add_graph_input(CLI::App* sub, GraphInput& in, const std::string& edges_flag) {
  sub->add_option(edges_flag, in.edges, "edge-list CSV (citing_id,cited_id,intent,confidence)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--nodes", in.nodes, "node CSV fixing node order and adding isolated nodes")
      ->check(CLI::ExistingFile);
  sub->add_option("--schema", in.schema, "label schema; fixes intent order and rejects unknown labels")
      ->check(CLI::ExistingFile);
}

graph::CitationGraph scoped(const graph::CitationGraph& g, const cli::RunConfig& config,
                            std::string_view key = "scope") {
  return config.text(key) == "full" ? g : graph::largest_component(g);
}

struct GraphArgs {
  std::shared_ptr<ConfigLayers> layers = std::make_shared<ConfigLayers>();
  GraphInput input;
  bool largest_wcc = false;
  std::string out_edges, out_nodes;
};

int run_graph(const GraphArgs& a) {
  const auto config = resolve(*a.layers);
  const auto full = a.input.load();
  const auto g = a.largest_wcc ? graph::largest_component(full) : full;
  const auto comps = graph::weakly_connected_components(g);
  const auto& st = full.stats();
  std::cout << "raw contexts: " << st.raw_edges << "\nself-loops dropped: " << st.self_loops_dropped
            << "\nduplicates collapsed: " << st.duplicates_collapsed << "\nnodes: " << g.node_count()
            << "\nedges: " << g.edge_count() << "\ncomponents: " << comps.count()
            << "\nlargest component: " << (comps.count() ? comps.sizes.front() : 0) << '\n';
  std::vector<std::size_t> per_intent(g.intent_labels().size(), 0);
  std::size_t unlabeled = 0;
  for (graph::EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& intent = g.edge_attributes(e).intent;
    intent ? ++per_intent[*intent] : ++unlabeled;
  }
  for (std::size_t i = 0; i < per_intent.size(); ++i) {
    std::cout << "edges[" << g.intent_labels()[i] << "]: " << per_intent[i] << '\n';
  }
  if (unlabeled) std::cout << "edges[unlabeled]: " << unlabeled << '\n';
  if (!a.out_edges.empty()) {
    graph::write_graph_edges(g, a.out_edges);
    write_resolved(config, a.out_edges);
  }
  if (!a.out_nodes.empty()) graph::write_node_csv(g, comps, a.out_nodes);
  return 0;
}

struct CentralityArgs {
  std::shared_ptr<ConfigLayers> layers = std::make_shared<ConfigLayers>();
  GraphInput input;
  std::string metric, out;
};

int run_centrality(const CentralityArgs& a) {
  const auto config = resolve(*a.layers);
  const auto metric = centrality::parse_metric(a.metric);
  if (!metric) throw ValidationError("unknown metric '" + a.metric + "'");
  const auto g = scoped(a.input.load(), config);
  const auto v = centrality::compute(g, *metric, config.centrality_options());
  const auto rows = centrality::write_centrality_csv(g, v, config.count("top_k"), a.out);
  write_resolved(config, a.out);
  std::cout << "metric: " << centrality::to_string(*metric) << "\nnodes: " << g.node_count() << "\nrows: " << rows
            << '\n';
  if (*metric == centrality::Metric::pagerank) {
    std::cout << "iterations: " << v.iterations << "\nresidual: " << format_real(v.residual) << '\n';
    if (!v.converged) {
      throw ConvergenceError("PageRank did not reach tolerance " + format_real(v.params.tolerance) + " within " +
                             std::to_string(v.params.max_iterations) + " iterations");
    }
  }
  return 0;
}

struct FilterArgs {
  std::shared_ptr<ConfigLayers> layers = std::make_shared<ConfigLayers>();
  GraphInput input;
  bool per_intent = false;
  std::string impact, rank_shift, bump, out_edges, out_nodes;
};

filter::FilterSpec spec_for(const graph::CitationGraph& g, const std::vector<std::string>& names,
                            const cli::RunConfig& config) {
  auto spec = filter::make_spec(g, names);
  spec.min_confidence = config.optional_real("min_confidence");
  spec.drop_isolated_nodes = config.flag("drop_isolated_nodes");
  return spec;
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : "+") + n;
  return out.empty() ? "none" : out;
}

int run_filter(const FilterArgs& a) {
  const auto config = resolve(*a.layers);
  const auto input = a.input.load();
  const auto full = scoped(input, config, "impact_scope");
  const auto names = config.list("remove_intents");
  const auto spec = spec_for(full, names, config);

  std::vector<std::pair<std::string, filter::ImpactReport>> columns;
  if (a.per_intent) {
    for (const auto& label : full.intent_labels()) {
      const auto g = filter::filter_graph(full, spec_for(full, {label}, config));
      columns.emplace_back("-" + label, filter::impact_report(full, g));
    }
  }
  const auto filtered = filter::filter_graph(full, spec);
  const auto combined = "-" + join(names);
  const bool listed = std::any_of(columns.begin(), columns.end(), [&](const auto& c) { return c.first == combined; });
  if (!listed && (!a.per_intent || !names.empty())) columns.emplace_back(combined, filter::impact_report(full, filtered));
  std::cout << filter::format_impact_table(columns);

  std::optional<fs::path> primary;
  if (!a.impact.empty()) {
    filter::write_impact_csv(columns, a.impact);
    primary = a.impact;
  }
  if (!a.out_edges.empty()) {
    graph::write_graph_edges(filtered, a.out_edges);
    if (!primary) primary = a.out_edges;
  }
  if (!a.out_nodes.empty()) graph::write_node_csv(filtered, graph::weakly_connected_components(filtered), a.out_nodes);

  if (!a.rank_shift.empty()) {
    const auto metric = centrality::parse_metric(a.rank_shift);
    if (!metric) throw ValidationError("unknown metric '" + a.rank_shift + "'");
    if (a.bump.empty()) throw ValidationError("--rank-shift needs --bump");
    const auto before = scoped(input, config);
    const auto after = filter::filter_graph(before, spec_for(before, names, config));
    const auto report = filter::rank_shift(before, after, *metric, config.count("top_k"), config.count("horizon"),
                                           config.centrality_options());
    filter::export_bump_data(report, a.bump);
    std::size_t moved = 0, dropped = 0;
    for (const auto& r : report.rows) {
      if (r.dropped) ++dropped;
      else if (r.rank_after != r.rank_before) ++moved;
    }
    std::cout << "rank shift (" << centrality::to_string(*metric) << ", top " << report.k << "): " << moved
              << " moved, " << dropped << " dropped\n";
    if (!primary) primary = a.bump;
  }
  if (primary) write_resolved(config, *primary);
  return 0;
}

}  // namespace

void register_network_commands(CLI::App& app, Command& slot) {
  {
    auto args = std::make_shared<GraphArgs>();
    auto* sub = app.add_subcommand("graph", "build the citation network and summarize it");
    add_graph_input(sub, args->input, "--edges");
    sub->add_flag("--largest-wcc", args->largest_wcc, "restrict to the largest weakly connected component");
    sub->add_option("--out-edges", args->out_edges, "write the (deduplicated) edge list");
    sub->add_option("--out-nodes", args->out_nodes, "write node_id,component_label");
    add_config_options(sub, args->layers);
    on_selected(sub, slot, [args] { return run_graph(*args); });
  }
  {
    auto args = std::make_shared<CentralityArgs>();
    auto* sub = app.add_subcommand("centrality", "rank papers by a centrality metric");
    add_graph_input(sub, args->input, "--graph");
    sub->add_option("--metric", args->metric, "in-degree, out-degree, betweenness, closeness or pagerank")
        ->required();
    sub->add_option("--out", args->out, "centrality CSV output (node_id,metric,value,rank) plus .meta")->required();
    add_config_options(sub, args->layers);
    add_key_flag(sub, args->layers, "--top-k", "top_k");
    add_key_flag(sub, args->layers, "--scope", "scope");
    add_key_flag(sub, args->layers, "--damping", "damping");
    add_key_flag(sub, args->layers, "--tolerance", "tolerance");
    add_key_flag(sub, args->layers, "--max-iterations", "max_iterations");
    add_key_flag(sub, args->layers, "--dangling", "dangling");
    add_key_flag(sub, args->layers, "--variant", "closeness_variant");
    add_key_flag(sub, args->layers, "--direction", "direction");
    add_key_flag(sub, args->layers, "--undirected", "undirected");
    on_selected(sub, slot, [args] { return run_centrality(*args); });
  }
  {
    auto args = std::make_shared<FilterArgs>();
    auto* sub = app.add_subcommand("filter", "remove intents and measure the structural impact");
    add_graph_input(sub, args->input, "--graph");
    sub->add_flag("--per-intent", args->per_intent, "also report removing each intent on its own");
    sub->add_option("--impact", args->impact, "impact CSV output (filter,quantity,before,after,delta_pct)");
    sub->add_option("--rank-shift", args->rank_shift,
                    "track the top-K of this metric (in-degree, betweenness, closeness, pagerank)");
    sub->add_option("--bump", args->bump, "bump-chart CSV output for --rank-shift, plus .meta");
    sub->add_option("--out-edges", args->out_edges, "write the filtered edge list");
    sub->add_option("--out-nodes", args->out_nodes, "write node_id,component_label for the filtered graph");
    add_config_options(sub, args->layers);
    add_key_flag(sub, args->layers, "--remove-intents", "remove_intents");
    add_key_flag(sub, args->layers, "--min-confidence", "min_confidence");
    add_key_flag(sub, args->layers, "--drop-isolated", "drop_isolated_nodes");
    add_key_flag(sub, args->layers, "--impact-scope", "impact_scope");
    add_key_flag(sub, args->layers, "--top-k", "top_k");
    add_key_flag(sub, args->layers, "--horizon", "horizon");
    add_key_flag(sub, args->layers, "--scope", "scope");
    add_key_flag(sub, args->layers, "--damping", "damping");
    add_key_flag(sub, args->layers, "--tolerance", "tolerance");
    add_key_flag(sub, args->layers, "--max-iterations", "max_iterations");
    add_key_flag(sub, args->layers, "--variant", "closeness_variant");
    add_key_flag(sub, args->layers, "--direction", "direction");
    add_key_flag(sub, args->layers, "--undirected", "undirected");
    on_selected(sub, slot, [args] { return run_filter(*args); });
  }
}

}  // namespace citenet::tool
