#include "trustsel/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "trustsel/error.hpp"

namespace trustsel::io {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    cells.push_back(trim(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return cells;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open '{}'", path.string()));
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError(fmt::format("cannot write '{}'", path.string()));
  return out;
}

BinaryTrustMatrix to_binary(const LabeledMatrix& m) {
  Grid<std::uint8_t> g(m.values.rows(), m.values.cols());
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
      const double v = m.values(r, c);
      if (v != 0.0 && v != 1.0) {
        throw InputError(fmt::format("binary matrix cell for '{}' at t{} is {}, expected 0 or 1",
                                     m.ids[r], c + 1, v));
      }
      g(r, c) = v == 1.0 ? 1 : 0;
    }
  }
  return BinaryTrustMatrix(std::move(g));
}

}  // namespace

LabeledMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    for (auto cell : split(line)) header.emplace_back(cell);
  }
  if (header.empty()) throw ParseError("empty matrix file", line_no);
  if (header.front() != "model_id") throw ParseError("header must start with 'model_id'", line_no);
  if (header.size() < 2) throw ParseError("header names no slot columns", line_no);
  const std::size_t slots = header.size() - 1;

  std::vector<std::string> ids;
  std::vector<double> cells;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto row = split(line);
    if (row.size() != header.size()) {
      throw ParseError(fmt::format("expected {} cells, found {}", header.size(), row.size()),
                       line_no);
    }
    if (row.front().empty()) throw ParseError("empty model id", line_no);
    ids.emplace_back(row.front());
    for (std::size_t c = 1; c < row.size(); ++c) {
      const auto cell = row[c];
      double v = 0.0;
      const auto* end = cell.data() + cell.size();
      const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
      if (cell.empty() || ec != std::errc() || ptr != end) {
        throw ParseError(fmt::format("cell '{}' in column {} is not a number", cell, header[c]),
                         line_no);
      }
      if (!std::isfinite(v)) {
        throw ParseError(fmt::format("cell '{}' in column {} is not finite", cell, header[c]),
                         line_no);
      }
      cells.push_back(v);
    }
  }
  if (ids.empty()) throw ParseError("matrix has no model rows", line_no);

  LabeledMatrix out{std::move(ids), Grid<double>(cells.size() / slots, slots)};
  for (std::size_t r = 0; r < out.values.rows(); ++r) {
    for (std::size_t c = 0; c < slots; ++c) out.values(r, c) = cells[r * slots + c];
  }
  return out;
}

void write_matrix(std::ostream& out, const std::vector<std::string>& ids,
                  const Grid<double>& values) {
  out << "model_id";
  for (std::size_t c = 0; c < values.cols(); ++c) out << ",t" << c + 1;
  out << '\n';
  for (std::size_t r = 0; r < values.rows(); ++r) {
    out << ids[r];
    for (double v : values.row(r)) out << ',' << fmt::format("{:.17g}", v);
    out << '\n';
  }
}

ModelOutputs read_outputs(std::istream& in) {
  auto m = read_matrix(in);
  return ModelOutputs(std::move(m.ids), std::move(m.values));
}

ModelOutputs load_outputs(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_outputs(in);
}

void save_outputs(const std::filesystem::path& path, const ModelOutputs& outputs) {
  auto out = open_out(path);
  write_matrix(out, outputs.model_ids(), outputs.values());
}

LabeledBinary read_binary(std::istream& in) {
  auto m = read_matrix(in);
  auto matrix = to_binary(m);
  return {std::move(m.ids), std::move(matrix)};
}

LabeledBinary load_binary(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_binary(in);
}

void save_binary(const std::filesystem::path& path, const std::vector<std::string>& ids,
                 const BinaryTrustMatrix& matrix) {
  auto out = open_out(path);
  out << "model_id";
  for (std::size_t c = 0; c < matrix.slot_count(); ++c) out << ",t" << c + 1;
  out << '\n';
  for (std::size_t r = 0; r < matrix.model_count(); ++r) {
    out << ids[r];
    for (auto v : matrix.values().row(r)) out << ',' << static_cast<int>(v);
    out << '\n';
  }
}

void save_trust(const std::filesystem::path& path, const std::vector<std::string>& ids,
                const TrustMatrix& trust) {
  auto out = open_out(path);
  write_matrix(out, ids, trust.values());
}

std::vector<double> load_series(const std::filesystem::path& path) {
  auto in = open_in(path);
  const auto m = read_matrix(in);
  if (m.values.rows() != 1) {
    throw InputError(fmt::format("'{}' should hold exactly one series", path.string()));
  }
  const auto row = m.values.row(0);
  return {row.begin(), row.end()};
}

void save_series(const std::filesystem::path& path, const std::string& id,
                 const std::vector<double>& series) {
  Grid<double> g(1, series.size());
  std::copy(series.begin(), series.end(), g.row(0).begin());
  auto out = open_out(path);
  write_matrix(out, {id}, g);
}

nlohmann::json config_to_json(const BudgetConfig& c) {
  return {{"budget", c.budget}, {"rate", c.rate}, {"p_max", c.p_max},
          {"lambda", c.lambda}, {"h0", c.h0},     {"eps", c.eps}};
}

BudgetConfig config_from_json(const nlohmann::json& j, BudgetConfig base) {
  try {
    if (j.contains("budget")) base.budget = j.at("budget").get<std::size_t>();
    if (j.contains("rate")) base.rate = j.at("rate").get<std::size_t>();
    if (j.contains("p_max")) base.p_max = j.at("p_max").get<double>();
    if (j.contains("lambda")) base.lambda = j.at("lambda").get<double>();
    if (j.contains("h0")) base.h0 = j.at("h0").get<double>();
    if (j.contains("eps")) base.eps = j.at("eps").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("bad config value: {}", e.what()));
  }
  return base;
}

nlohmann::json plan_to_json(const SelectionPlan& plan, const std::string& solver,
                            const std::vector<std::string>& model_ids) {
  nlohmann::json models = nlohmann::json::array();
  for (auto m : plan.assignment) models.push_back(m < model_ids.size() ? model_ids[m] : "");
  return {{"schema_version", kSchemaVersion},
          {"kind", "plan"},
          {"solver", solver},
          {"assignment", plan.assignment},
          {"models", models},
          {"switch_count", plan.switch_count},
          {"trust_score", plan.trust_score},
          {"failsafe_slots", plan.failsafe_slots}};
}

SelectionPlan plan_from_json(const nlohmann::json& j) {
  try {
    SelectionPlan plan;
    plan.assignment = j.at("assignment").get<std::vector<ModelIndex>>();
    plan.switch_count = j.at("switch_count").get<std::size_t>();
    plan.trust_score = j.at("trust_score").get<std::int64_t>();
    plan.failsafe_slots = j.at("failsafe_slots").get<std::vector<SlotIndex>>();
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(fmt::format("malformed plan: {}", e.what()));
  }
}

nlohmann::json read_json(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(fmt::format("'{}': {}", path.string(), e.what()), 0);
  }
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

}  // namespace trustsel::io
