#pragma once

#include <json.hpp>
#include <string>

#include "matings/combinatorics.hpp"
#include "matings/invariants.hpp"
#include "matings/pullback.hpp"
#include "matings/solver.hpp"

namespace matings {

using json = nlohmann::json;

cplx parse_complex(const std::string& text); ///< "a+bi", "a-bi", "a", "bi"
std::string format_complex(cplx z);

json to_json(const Angle& a);
json to_json(const MatingSpec& spec);
MatingSpec mating_spec_from_json(const json& j);
json to_json(const ClusterData& data);
json to_json(const StarModel& star);
json to_json(const LevyReport& report);
json to_json(const std::vector<RayClass>& classes);
json to_json(const BicriticalCoefficients& coeffs);
BicriticalCoefficients coefficients_from_json(const json& j);
json to_json(const PullbackTrace& trace);
json to_json(const MultiplierSpectrum& spectrum);
json to_json(const PolySpec& spec);

MatingSpec load_mating_spec(const std::string& path);
json load_json(const std::string& path);

} // namespace matings
