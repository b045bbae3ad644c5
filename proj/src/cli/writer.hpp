#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lmeasure/cli.hpp"

namespace lmeasure::cli {

using Cell = std::variant<double, std::int64_t, std::string, bool>;

/// Writes the configuration header, then table rows and summary records in
/// the chosen format. CSV: a "# ..." comment row, a header row, data rows and
/// "# summary ..." rows. JSON: one object per line, tagged by "record".
class RecordWriter {
 public:
  RecordWriter(std::ostream& out, const RunConfig& config);

  void columns(std::vector<std::string> names);
  void row(const std::vector<Cell>& cells);
  void summary(const nlohmann::ordered_json& fields) { record("summary", fields); }
  /// JSON: {"record": kind, ...fields}; CSV: "# kind key=value ...".
  void record(const std::string& kind, const nlohmann::ordered_json& fields);

 private:
  std::ostream& out_;
  Format format_;
  std::vector<std::string> columns_;
};

nlohmann::ordered_json config_json(const RunConfig& config);

}  // namespace lmeasure::cli
