#include "lmeasure/serialize.hpp"

#include "lmeasure/errors.hpp"

namespace lmeasure {

nlohmann::ordered_json to_json(const WeightedAtomSeries& s) {
  nlohmann::ordered_json j;
  j["theta"] = s.theta;
  j["eps"] = s.eps;
  j["masses"] = s.masses;
  j["locations"] = s.locations;
  j["total_mass"] = s.total_mass ? nlohmann::ordered_json(*s.total_mass) : nullptr;
  j["tail_bound"] = s.tail_bound;
  j["log_weight"] = s.log_weight;
  j["seed"] = s.seed;
  j["stream_id"] = s.stream_id;
  return j;
}

WeightedAtomSeries series_from_json(const nlohmann::ordered_json& j) {
  WeightedAtomSeries s;
  try {
    s.theta = j.at("theta").get<double>();
    s.eps = j.at("eps").get<double>();
    s.masses = j.at("masses").get<std::vector<double>>();
    s.locations = j.at("locations").get<std::vector<double>>();
    const auto& total = j.at("total_mass");
    if (!total.is_null()) s.total_mass = total.get<double>();
    s.tail_bound = j.at("tail_bound").get<double>();
    s.log_weight = j.at("log_weight").get<double>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.stream_id = j.at("stream_id").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("series JSON: ") + e.what());
  }
  s.validate();
  return s;
}

}  // namespace lmeasure
