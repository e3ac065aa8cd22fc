#include "citenet/cli/run_config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "citenet/common/csv.hpp"
#include "citenet/common/error.hpp"
#include "citenet/common/numfmt.hpp"

namespace citenet::cli {

namespace {

bool parse_bool(std::string_view v, bool& out) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") {
    out = true;
    return true;
  }
  if (v == "false" || v == "0" || v == "no" || v == "off") {
    out = false;
    return true;
  }
  return false;
}

std::string render_count(std::size_t n) { return std::to_string(n); }

}  // namespace

const std::vector<KeySpec>& known_keys() {
  using K = ValueKind;
  static const std::vector<KeySpec> keys = {
      // training
      {"seed", K::text, "", {}, "RNG seed for splitting and training (required by train)"},
      {"objective", K::choice, "semi-supervised", {"semi-supervised", "supervised"}, "training objective"},
      {"batch_size", K::integer, "16", {}, "minibatch size"},
      {"epochs", K::integer, "30", {}, "training epochs"},
      {"lr_discriminator", K::real, "5e-05", {}, "discriminator learning rate"},
      {"lr_generator", K::real, "0.0005", {}, "generator learning rate"},
      {"adam_epsilon", K::real, "2e-07", {}, "Adam epsilon"},
      {"warmup_proportion", K::real, "0.1", {}, "fraction of steps with linear warm-up"},
      {"max_seq_len", K::integer, "64", {}, "encoder truncation length, recorded for provenance"},
      // architecture
      {"noise_dim", K::integer, "100", {}, "generator noise dimension"},
      {"generator_hidden_layers", K::integer, "2", {}, "generator hidden layers"},
      {"discriminator_hidden_layers", K::integer, "1", {}, "discriminator hidden layers"},
      {"hidden_width", K::integer, "0", {}, "hidden layer width; 0 uses the embedding dimension"},
      {"dropout_rate", K::real, "0.1", {}, "dropout rate"},
      {"leaky_slope", K::real, "0.2", {}, "leaky ReLU negative slope"},
      // split
      {"labeled_fraction", K::real, "1", {}, "fraction of training records kept labeled"},
      {"dev_fraction", K::real, "0", {}, "fraction of records held out for dev"},
      {"test_fraction", K::real, "0", {}, "fraction of records held out for test"},
      // filter
      {"remove_intents", K::text, "", {}, "comma-separated intent labels to remove"},
      {"min_confidence", K::optional_real, "", {}, "only remove edges at or above this confidence"},
      {"impact_scope", K::choice, "full", {"full", "largest-wcc"}, "graph the structural impact is measured on"},
      {"drop_isolated_nodes", K::boolean, "true", {}, "drop nodes left without edges after filtering"},
      // centrality
      {"scope", K::choice, "largest-wcc", {"largest-wcc", "full"}, "graph the centralities are computed on"},
      {"top_k", K::integer, "20", {}, "rows kept in ranked outputs; 0 keeps all"},
      {"horizon", K::integer, "100", {}, "rank horizon for rank-shift tracking"},
      {"damping", K::real, "0.85", {}, "PageRank damping factor"},
      {"tolerance", K::real, "1e-10", {}, "PageRank L1 convergence tolerance"},
      {"max_iterations", K::integer, "100", {}, "PageRank iteration cap"},
      {"dangling", K::choice, "redistribute", {"redistribute", "drop"}, "PageRank dangling-node handling"},
      {"closeness_variant", K::choice, "standard", {"standard", "farness"}, "closeness formula"},
      {"direction", K::choice, "incoming", {"incoming", "outgoing"}, "closeness path direction"},
      {"undirected", K::boolean, "false", {}, "betweenness and closeness on the undirected graph"},
      // runtime
      {"threads", K::integer, "0", {}, "worker threads; 0 uses available parallelism"},
  };
  return keys;
}

RunConfig::RunConfig() {
  for (const auto& k : known_keys()) values_[k.name] = k.default_value;
}

const KeySpec& RunConfig::spec(std::string_view key) const {
  for (const auto& k : known_keys()) {
    if (k.name == key) return k;
  }
  throw ValidationError("unknown config key '" + std::string(key) + "'");
}

void RunConfig::apply_preset(const ssgan::Preset& p) {
  set("batch_size", render_count(p.train.batch_size));
  set("epochs", render_count(p.train.epochs));
  set("lr_discriminator", format_real(p.train.lr_discriminator));
  set("lr_generator", format_real(p.train.lr_generator));
  set("adam_epsilon", format_real(p.train.adam_epsilon));
  set("warmup_proportion", format_real(p.train.warmup_proportion));
  set("max_seq_len", render_count(p.train.max_seq_len));
  set("noise_dim", render_count(p.arch.noise_dim));
  set("generator_hidden_layers", render_count(p.arch.generator_hidden_layers));
  set("discriminator_hidden_layers", render_count(p.arch.discriminator_hidden_layers));
  set("hidden_width", render_count(p.arch.hidden_width));
  set("dropout_rate", format_real(p.arch.dropout_rate));
  set("leaky_slope", format_real(p.arch.leaky_slope));
}

void RunConfig::load(std::istream& in, std::string_view source) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    try {
      set_assignment(body);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string(source) + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void RunConfig::load(const std::filesystem::path& path) {
  auto in = open_input(path);
  load(in, path.string());
}

void RunConfig::set_assignment(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ValidationError("expected key=value, got '" + std::string(assignment) + "'");
  }
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void RunConfig::set(std::string_view key, std::string_view value) {
  const auto& s = spec(key);
  const auto bad = [&](std::string_view why) {
    return ValidationError("config key '" + s.name + "': " + std::string(why) + " '" + std::string(value) + "'");
  };
  std::string stored(value);
  switch (s.kind) {
    case ValueKind::integer: {
      const auto v = parse_int(value);
      if (!v || *v < 0) throw bad("expected a non-negative integer, got");
      stored = std::to_string(*v);
      break;
    }
    case ValueKind::real:
      if (!parse_real(value)) throw bad("expected a number, got");
      break;
    case ValueKind::optional_real:
      if (!value.empty() && !parse_real(value)) throw bad("expected a number or nothing, got");
      break;
    case ValueKind::boolean: {
      bool b = false;
      if (!parse_bool(value, b)) throw bad("expected true or false, got");
      stored = b ? "true" : "false";
      break;
    }
    case ValueKind::choice:
      if (std::find(s.choices.begin(), s.choices.end(), value) == s.choices.end()) throw bad("unsupported value");
      break;
    case ValueKind::text:
      if (stored.find('\n') != std::string::npos) throw bad("value spans lines:");
      break;
  }
  values_.find(key)->second = std::move(stored);
}

bool RunConfig::has_value(std::string_view key) const { return !text(key).empty(); }

const std::string& RunConfig::text(std::string_view key) const {
  spec(key);
  return values_.find(key)->second;
}

std::int64_t RunConfig::integer(std::string_view key) const {
  const auto v = parse_int(text(key));
  if (!v) throw ValidationError("config key '" + std::string(key) + "' is not an integer");
  return *v;
}

std::size_t RunConfig::count(std::string_view key) const { return static_cast<std::size_t>(integer(key)); }

double RunConfig::real(std::string_view key) const {
  const auto v = parse_real(text(key));
  if (!v) throw ValidationError("config key '" + std::string(key) + "' is not a number");
  return *v;
}

std::optional<double> RunConfig::optional_real(std::string_view key) const {
  if (!has_value(key)) return std::nullopt;
  return real(key);
}

bool RunConfig::flag(std::string_view key) const { return text(key) == "true"; }

std::vector<std::string> RunConfig::list(std::string_view key) const {
  std::vector<std::string> out;
  std::string_view rest = text(key);
  while (true) {
    const auto comma = rest.find(',');
    const auto item = trim(rest.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

ssgan::TrainConfig RunConfig::train_config() const {
  if (!has_value("seed")) throw ValidationError("a seed is required");
  const auto seed = parse_int(text("seed"));
  if (!seed || *seed < 0) throw ValidationError("seed must be a non-negative integer");
  ssgan::TrainConfig c;
  c.seed = static_cast<std::uint64_t>(*seed);
  c.batch_size = count("batch_size");
  c.epochs = count("epochs");
  c.lr_discriminator = real("lr_discriminator");
  c.lr_generator = real("lr_generator");
  c.adam_epsilon = real("adam_epsilon");
  c.warmup_proportion = real("warmup_proportion");
  c.max_seq_len = count("max_seq_len");
  return c;
}

ssgan::Architecture RunConfig::architecture(std::size_t num_classes, std::size_t embedding_dim) const {
  ssgan::Architecture a;
  a.num_classes = num_classes;
  a.embedding_dim = embedding_dim;
  a.noise_dim = count("noise_dim");
  a.generator_hidden_layers = count("generator_hidden_layers");
  a.discriminator_hidden_layers = count("discriminator_hidden_layers");
  a.hidden_width = count("hidden_width");
  a.dropout_rate = real("dropout_rate");
  a.leaky_slope = real("leaky_slope");
  return a;
}

centrality::CentralityOptions RunConfig::centrality_options() const {
  centrality::CentralityOptions o;
  o.undirected = flag("undirected");
  o.variant = *centrality::parse_variant(text("closeness_variant"));
  o.direction = *centrality::parse_direction(text("direction"));
  o.damping = real("damping");
  o.tolerance = real("tolerance");
  o.max_iterations = count("max_iterations");
  o.dangling = *centrality::parse_dangling(text("dangling"));
  return o;
}

void RunConfig::write(std::ostream& out) const {
  for (const auto& k : known_keys()) out << k.name << '=' << values_.find(k.name)->second << '\n';
}

void RunConfig::write(const std::filesystem::path& path) const {
  std::ostringstream buf;
  write(buf);
  auto out = open_output(path);
  out << buf.str();
  if (!out) throw IoError("failed writing " + path.string());
}

std::filesystem::path resolved_config_path(const std::filesystem::path& output) {
  auto p = output;
  p += ".run.conf";
  return p;
}

}  // namespace citenet::cli
