#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "trustsel/grid.hpp"
#include "trustsel/types.hpp"

namespace trustsel::io {

inline constexpr int kSchemaVersion = 1;

// CSV matrix schema: header "model_id,t1,...,tT", then one row per model with
// its id followed by T numeric cells. UTF-8, LF line ends, '.' decimals.
struct LabeledMatrix {
  std::vector<std::string> ids;
  Grid<double> values;
};

/// Parses the CSV schema. Throws ParseError (with the 1-based line) on a bad
/// header, ragged row, non-numeric or non-finite cell.
LabeledMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const std::vector<std::string>& ids, const Grid<double>& values);

ModelOutputs read_outputs(std::istream& in);
ModelOutputs load_outputs(const std::filesystem::path& path);
void save_outputs(const std::filesystem::path& path, const ModelOutputs& outputs);

struct LabeledBinary {
  std::vector<std::string> ids;
  BinaryTrustMatrix matrix;
};

/// Same schema, every cell exactly 0 or 1; anything else is an InputError.
LabeledBinary read_binary(std::istream& in);
LabeledBinary load_binary(const std::filesystem::path& path);
void save_binary(const std::filesystem::path& path, const std::vector<std::string>& ids,
                 const BinaryTrustMatrix& matrix);

void save_trust(const std::filesystem::path& path, const std::vector<std::string>& ids,
                const TrustMatrix& trust);

/// Single-row CSV whose id is "ground_truth".
std::vector<double> load_series(const std::filesystem::path& path);
void save_series(const std::filesystem::path& path, const std::string& id,
                 const std::vector<double>& series);

nlohmann::json config_to_json(const BudgetConfig& config);
/// Overlays the keys present in `j` onto `base`.
BudgetConfig config_from_json(const nlohmann::json& j, BudgetConfig base = {});

nlohmann::json plan_to_json(const SelectionPlan& plan, const std::string& solver,
                            const std::vector<std::string>& model_ids);
SelectionPlan plan_from_json(const nlohmann::json& j);

nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace trustsel::io
