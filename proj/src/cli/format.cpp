#include <charconv>
#include <cmath>
#include <sstream>

#include "lmeasure/errors.hpp"
#include "writer.hpp"

namespace lmeasure::cli {
namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool to_double(std::string_view s, double& v) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(v);
}

std::string csv_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&cell)) return *b ? "true" : "false";
  const std::string& s = std::get<std::string>(cell);
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

nlohmann::ordered_json json_cell(const Cell& cell) {
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, cell);
}

// Comment rows are "key=value" pairs separated by spaces.
std::string comment_value(const nlohmann::ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_number(v.get<double>());
  return v.dump();
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::vector<double> parse_real_list(std::string_view text, const char* what) {
  std::vector<double> out;
  for (std::string_view item : split(text, ',')) {
    double v = 0.0;
    if (!to_double(item, v) || !(v > 0.0)) {
      std::ostringstream msg;
      msg << what << ": '" << trim(item) << "' is not a positive number (in \"" << text << "\")";
      throw ParseError(msg.str());
    }
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_int_list(std::string_view text, const char* what) {
  std::vector<int> out;
  for (std::string_view item : split(text, ',')) {
    item = trim(item);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      std::ostringstream msg;
      msg << what << ": '" << item << "' is not an integer (in \"" << text << "\")";
      throw ParseError(msg.str());
    }
    out.push_back(v);
  }
  return out;
}

StepFunction parse_step_function(std::string_view spec) {
  std::vector<double> breakpoints{0.0};
  std::vector<double> values;
  for (std::string_view segment : split(spec, ',')) {
    segment = trim(segment);
    auto fail = [&](const std::string& why) {
      std::ostringstream msg;
      msg << "step function \"" << spec << "\": segment '" << segment << "' " << why;
      throw ParseError(msg.str());
    };
    const std::size_t at = segment.find('@');
    const std::size_t colon = segment.find(':', at == std::string_view::npos ? 0 : at);
    if (at == std::string_view::npos || colon == std::string_view::npos) {
      fail("is not of the form value@start:end");
    }
    double v = 0.0, lo = 0.0, hi = 0.0;
    if (!to_double(segment.substr(0, at), v)) fail("has an unreadable value");
    if (!to_double(segment.substr(at + 1, colon - at - 1), lo) ||
        !to_double(segment.substr(colon + 1), hi)) {
      fail("has unreadable breakpoints");
    }
    if (!(v > 0.0)) fail("has a non-positive value");
    if (!(hi > lo)) fail("is empty or reversed");
    const double prev = breakpoints.back();
    if (lo > prev) {
      fail("leaves a gap at [" + format_number(prev) + "," + format_number(lo) + ")");
    }
    if (lo < prev) {
      fail("overlaps at [" + format_number(lo) + "," + format_number(prev) + ")");
    }
    breakpoints.push_back(hi);
    values.push_back(v);
  }
  if (breakpoints.back() != 1.0) {
    std::ostringstream msg;
    msg << "step function \"" << spec << "\": segments must end at 1, coverage stops at "
        << format_number(breakpoints.back());
    throw ParseError(msg.str());
  }
  return StepFunction(std::move(breakpoints), std::move(values));
}

nlohmann::ordered_json config_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = c.command;
  j["theta"] = c.theta;
  j["eps"] = c.eps;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["streams"] = c.streams;
  j["out"] = c.out;
  j["format"] = c.format == Format::csv ? "csv" : "json";
  j["f"] = c.f;
  j["a"] = c.a;
  j["allow_infinite_variance"] = c.allow_infinite_variance;
  j["process"] = c.process;
  j["partition"] = c.partition;
  j["route"] = c.route;
  j["b"] = c.b;
  j["lambda"] = c.lambda;
  j["n"] = c.n;
  j["nmax"] = c.nmax;
  j["smax"] = c.smax;
  j["points"] = c.points;
  j["schedule"] = c.schedule;
  j["scale"] = c.scale;
  return j;
}

RecordWriter::RecordWriter(std::ostream& out, const RunConfig& config)
    : out_(out), format_(config.format) {
  const auto cfg = config_json(config);
  if (format_ == Format::json) {
    nlohmann::ordered_json header;
    header["record"] = "config";
    header["tool"] = "lmeasure";
    header["version"] = LMEASURE_VERSION;
    header["config"] = cfg;
    out_ << header.dump() << '\n';
    return;
  }
  out_ << "# lmeasure " << LMEASURE_VERSION;
  for (const auto& [key, value] : cfg.items()) out_ << ' ' << key << '=' << comment_value(value);
  out_ << '\n';
}

void RecordWriter::columns(std::vector<std::string> names) {
  columns_ = std::move(names);
  if (format_ == Format::csv) {
    for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
    out_ << '\n';
  }
}

void RecordWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("RecordWriter: row width mismatch");
  if (format_ == Format::csv) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << csv_cell(cells[i]);
    out_ << '\n';
    return;
  }
  nlohmann::ordered_json j;
  j["record"] = "row";
  for (std::size_t i = 0; i < cells.size(); ++i) j[columns_[i]] = json_cell(cells[i]);
  out_ << j.dump() << '\n';
}

void RecordWriter::record(const std::string& kind, const nlohmann::ordered_json& fields) {
  if (format_ == Format::json) {
    nlohmann::ordered_json j;
    j["record"] = kind;
    for (const auto& [key, value] : fields.items()) j[key] = value;
    out_ << j.dump() << '\n';
    return;
  }
  out_ << "# " << kind;
  for (const auto& [key, value] : fields.items()) out_ << ' ' << key << '=' << comment_value(value);
  out_ << '\n';
}

}  // namespace lmeasure::cli
