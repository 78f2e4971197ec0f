#pragma once

// CSV and JSON renderings of the reports. Exact rationals are always written
// as "num/den" strings, never as floats.

#include <ostream>

#include "json.hpp"

#include "clab/congruence.hpp"
#include "clab/exppair.hpp"
#include "clab/variance.hpp"

namespace clab::io {

using nlohmann::json;

/// Header "alpha3,count", one row per residue, LF line endings.
void write_histogram_csv(std::ostream& out, const SolutionHistogram& histogram);

json config_json(const ExperimentConfig& cfg);
json to_json(const SolutionHistogram& histogram);
json to_json(const MainTermReport& report);
json to_json(const ExceptionalReport& report);
json to_json(const VarianceReport& report);
json to_json(const QuadrupleCount& count);
json to_json(const BoundRatioReport& report);
json to_json(const ExponentPair& pair);
json to_json(const SearchResult& result);

/// Bound-ratio table as CSV: bound_name,n_exponent,q_exponent,empirical_max,reference_value,ratio
void write_bound_ratios_csv(std::ostream& out, const BoundRatioReport& report);

}  // namespace clab::io
