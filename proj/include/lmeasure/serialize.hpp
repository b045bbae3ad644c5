#pragma once

// JSON form of a series:
//   {theta, eps, masses[], locations[], total_mass, tail_bound, log_weight, seed, stream_id}
// with total_mass null for normalized series.

#include <json.hpp>

#include "lmeasure/processes.hpp"

namespace lmeasure {

nlohmann::ordered_json to_json(const WeightedAtomSeries& series);

/// Throws ParseError on missing keys or wrong types, DomainError when the
/// decoded series breaks an invariant.
WeightedAtomSeries series_from_json(const nlohmann::ordered_json& j);

}  // namespace lmeasure
