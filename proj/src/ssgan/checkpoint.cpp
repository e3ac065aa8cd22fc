#include "citenet/ssgan/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <iterator>

#include "citenet/common/binary.hpp"
#include "citenet/common/csv.hpp"

namespace citenet::ssgan {

namespace {

constexpr char kMagic[4] = {'C', 'G', 'A', 'N'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kHasGenerator = 1u;

void put_shapes(ByteWriter& w, const Mlp<double>& net) {
  w.u32(static_cast<std::uint32_t>(net.layers.size()));
  for (const auto& l : net.layers) {
    w.u32(static_cast<std::uint32_t>(l.out_dim()));
    w.u32(static_cast<std::uint32_t>(l.in_dim()));
  }
}

// Weights row-major, then bias, layer by layer.
void put_values(ByteWriter& w, const std::vector<DenseLayer<double>>& layers) {
  for (const auto& l : layers) {
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) w.f64(l.weight(r, c));
    }
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) w.f64(l.bias(r));
  }
}

void put_network(ByteWriter& w, const Mlp<double>& net, const AdamState<double>& opt) {
  put_shapes(w, net);
  w.f64(net.leaky_slope);
  w.f64(net.dropout_rate);
  w.u32(net.input_dropout ? 1u : 0u);
  put_values(w, net.layers);
  w.u64(opt.step);
  put_values(w, opt.m);
  put_values(w, opt.v);
}

std::vector<DenseLayer<double>> get_values(ByteReader& r, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& shapes,
                                           std::string_view what) {
  std::vector<DenseLayer<double>> layers;
  for (auto [rows, cols] : shapes) {
    DenseLayer<double> l(cols, rows);
    for (Eigen::Index i = 0; i < l.weight.rows(); ++i) {
      for (Eigen::Index j = 0; j < l.weight.cols(); ++j) l.weight(i, j) = r.f64(what);
    }
    for (Eigen::Index i = 0; i < l.bias.size(); ++i) l.bias(i) = r.f64(what);
    layers.push_back(std::move(l));
  }
  return layers;
}

std::pair<Mlp<double>, AdamState<double>> get_network(ByteReader& r, std::string_view name) {
  const auto count = r.u32("layer count");
  if (count == 0 || count > 64) throw FormatError(std::string(name) + ": implausible layer count " + std::to_string(count));
  std::vector<std::pair<std::uint32_t, std::uint32_t>> shapes;
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto rows = r.u32("layer shape");
    const auto cols = r.u32("layer shape");
    shapes.emplace_back(rows, cols);
  }
  Mlp<double> net;
  net.leaky_slope = r.f64("leaky slope");
  net.dropout_rate = r.f64("dropout rate");
  net.input_dropout = r.u32("input dropout flag") != 0;
  net.layers = get_values(r, shapes, "parameters");
  AdamState<double> opt;
  opt.step = r.u64("optimizer step");
  opt.m = get_values(r, shapes, "Adam first moments");
  opt.v = get_values(r, shapes, "Adam second moments");
  return {std::move(net), std::move(opt)};
}

}  // namespace

std::vector<unsigned char> encode_checkpoint(const GanModel& model, bool include_generator) {
  const bool with_gen = include_generator && model.generator && model.generator_opt;
  const auto& a = model.arch;
  ByteWriter w;
  w.raw(std::string_view(kMagic, 4));
  w.u32(kVersion);
  w.u32(static_cast<std::uint32_t>(model.schema.size()));
  w.u32(static_cast<std::uint32_t>(a.embedding_dim));
  w.u32(static_cast<std::uint32_t>(a.noise_dim));
  for (const auto& label : model.schema.labels()) {
    w.u32(static_cast<std::uint32_t>(label.size()));
    w.raw(label);
  }
  w.u32(static_cast<std::uint32_t>(a.generator_hidden_layers));
  w.u32(static_cast<std::uint32_t>(a.discriminator_hidden_layers));
  w.u32(static_cast<std::uint32_t>(a.hidden_width));
  w.f64(a.dropout_rate);
  w.f64(a.leaky_slope);
  w.u32(static_cast<std::uint32_t>(model.discriminator.feature_layer));
  w.u32(with_gen ? kHasGenerator : 0u);
  put_network(w, model.discriminator.net, model.discriminator_opt);
  if (with_gen) put_network(w, model.generator->net, *model.generator_opt);
  return w.take();
}

GanModel decode_checkpoint(std::span<const unsigned char> bytes) {
  ByteReader r(bytes);
  const auto magic = r.raw(4, "magic");
  if (std::memcmp(magic.data(), kMagic, 4) != 0) throw FormatError("not a CGAN checkpoint: bad magic");
  const auto version = r.u32("version");
  if (version != kVersion) throw FormatError("unsupported checkpoint version " + std::to_string(version));

  Architecture a;
  a.num_classes = r.u32("k");
  a.embedding_dim = r.u32("H");
  a.noise_dim = r.u32("z_dim");
  if (a.num_classes > 4096) throw FormatError("implausible class count " + std::to_string(a.num_classes));
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < a.num_classes; ++c) {
    const auto len = r.u32("label length");
    labels.push_back(r.raw(len, "label"));
  }
  a.generator_hidden_layers = r.u32("generator depth");
  a.discriminator_hidden_layers = r.u32("discriminator depth");
  a.hidden_width = r.u32("hidden width");
  a.dropout_rate = r.f64("dropout rate");
  a.leaky_slope = r.f64("leaky slope");
  const auto feature_layer = r.u32("feature layer");
  const auto flags = r.u32("flags");

  auto [d_net, d_opt] = get_network(r, "discriminator");
  Discriminator<double> d{std::move(d_net), feature_layer};
  validate(d);
  if (d.input_dim() != static_cast<Eigen::Index>(a.embedding_dim) ||
      d.num_classes() != static_cast<Eigen::Index>(a.num_classes)) {
    throw FormatError("discriminator shape disagrees with checkpoint header");
  }

  GanModel model{ingest::LabelSchema(std::move(labels)), a, std::move(d), std::move(d_opt), std::nullopt, std::nullopt};
  if (flags & kHasGenerator) {
    auto [g_net, g_opt] = get_network(r, "generator");
    Generator<double> g{std::move(g_net), static_cast<Eigen::Index>(a.noise_dim), static_cast<Eigen::Index>(a.num_classes)};
    validate(g);
    model.generator = std::move(g);
    model.generator_opt = std::move(g_opt);
  }
  if (!r.at_end()) throw CorruptionError("trailing bytes after checkpoint payload", r.offset());
  return model;
}

void save_checkpoint(const GanModel& model, const std::filesystem::path& path, bool include_generator) {
  const auto bytes = encode_checkpoint(model, include_generator);
  auto out = open_output(path, true);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

GanModel load_checkpoint(const std::filesystem::path& path) {
  auto in = open_input(path, true);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode_checkpoint(bytes);
  } catch (const CorruptionError& e) {
    throw CorruptionError(path.string() + ": " + e.detail(), e.offset());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace citenet::ssgan
