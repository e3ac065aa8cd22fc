#include "citenet/ssgan/evaluate.hpp"

#include <algorithm>
#include <sstream>

#include "citenet/common/error.hpp"
#include "citenet/common/numfmt.hpp"
#include "json.hpp"

namespace citenet::ssgan {

namespace {

double ratio(std::size_t num, std::size_t den) { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

double f1_score(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

std::string id_list(std::vector<std::string> ids) {
  std::sort(ids.begin(), ids.end());
  std::string out;
  const std::size_t shown = std::min<std::size_t>(ids.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) out += (i ? ", " : "") + ids[i];
  if (ids.size() > shown) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

}  // namespace

std::size_t EvalReport::errors() const {
  std::size_t correct = 0;
  for (Eigen::Index c = 0; c < confusion.rows(); ++c) correct += confusion(c, c);
  return n_examples - correct;
}

EvalReport evaluate(const LabelMap& predictions, const LabelMap& gold, std::size_t num_classes) {
  std::vector<std::string> no_prediction, no_gold;
  for (const auto& [id, _] : gold) {
    if (!predictions.contains(id)) no_prediction.push_back(id);
  }
  for (const auto& [id, _] : predictions) {
    if (!gold.contains(id)) no_gold.push_back(id);
  }
  if (!no_prediction.empty() || !no_gold.empty()) {
    std::string msg = "prediction and gold IDs differ;";
    if (!no_prediction.empty()) msg += " missing predictions: " + id_list(no_prediction) + ";";
    if (!no_gold.empty()) msg += " missing gold: " + id_list(no_gold) + ";";
    throw ValidationError(msg);
  }

  const auto k = static_cast<Eigen::Index>(num_classes);
  EvalReport report;
  report.confusion.setZero(k, k);
  for (const auto& [id, g] : gold) {
    const auto p = predictions.at(id);
    if (g >= num_classes || p >= num_classes) throw ValidationError("label index out of range for record '" + id + "'");
    ++report.confusion(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(p));
  }
  report.n_examples = gold.size();

  std::size_t correct = 0;
  for (Eigen::Index c = 0; c < k; ++c) {
    const std::size_t tp = report.confusion(c, c);
    const std::size_t gold_c = report.confusion.row(c).sum();
    const std::size_t pred_c = report.confusion.col(c).sum();
    ClassScores s;
    s.precision = ratio(tp, pred_c);
    s.recall = ratio(tp, gold_c);
    s.f1 = f1_score(s.precision, s.recall);
    s.support = gold_c;
    report.per_class.push_back(s);
    report.macro_f1 += s.f1;
    correct += tp;
  }
  report.macro_f1 /= static_cast<double>(k);
  report.micro_f1 = ratio(correct, report.n_examples);
  return report;
}

std::string format_text(const EvalReport& report, const ingest::LabelSchema& schema, bool micro) {
  std::ostringstream out;
  std::size_t width = 5;
  for (const auto& l : schema.labels()) width = std::max(width, l.size());
  auto pad = [&](const std::string& s) { return s + std::string(width + 2 - std::min(width + 1, s.size()), ' '); };

  // Scores are at most "100.00"; right-align each numeric column.
  auto cell = [](const std::string& s, std::size_t w) { return std::string(w - std::min(w, s.size()), ' ') + s; };
  out << pad("class") << "precision  " << cell("recall", 6) << "  " << cell("f1", 6) << "  support\n";
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    const auto& s = report.per_class[c];
    out << pad(schema.name(c)) << cell(format_fixed(100.0 * s.precision, 2), 9) << "  "
        << cell(format_fixed(100.0 * s.recall, 2), 6) << "  " << cell(format_fixed(100.0 * s.f1, 2), 6) << "  "
        << cell(std::to_string(s.support), 7) << '\n';
  }
  out << "macro-F1 " << format_fixed(100.0 * report.macro_f1, 2) << '\n';
  if (micro) out << "micro-F1 " << format_fixed(100.0 * report.micro_f1, 2) << '\n';
  out << "examples " << report.n_examples << ", errors " << report.errors() << '\n';
  out << "confusion (rows gold, columns predicted)\n";
  for (Eigen::Index r = 0; r < report.confusion.rows(); ++r) {
    out << pad(schema.name(static_cast<std::size_t>(r)));
    for (Eigen::Index c = 0; c < report.confusion.cols(); ++c) out << (c ? " " : "") << report.confusion(r, c);
    out << '\n';
  }
  return out.str();
}

std::string format_json(const EvalReport& report, const ingest::LabelSchema& schema) {
  nlohmann::ordered_json j;
  j["n_examples"] = report.n_examples;
  j["errors"] = report.errors();
  j["macro_f1"] = report.macro_f1;
  j["micro_f1"] = report.micro_f1;
  auto& classes = j["per_class"];
  classes = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    const auto& s = report.per_class[c];
    classes.push_back({{"label", schema.name(c)},
                       {"precision", s.precision},
                       {"recall", s.recall},
                       {"f1", s.f1},
                       {"support", s.support}});
  }
  auto& conf = j["confusion"];
  conf = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < report.confusion.rows(); ++r) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < report.confusion.cols(); ++c) row.push_back(report.confusion(r, c));
    conf.push_back(row);
  }
  return j.dump(2) + "\n";
}

}  // namespace citenet::ssgan
