#pragma once

// JSON views of the library's reports. Numbers are printed with 17
// significant digits so outputs are byte-stable and round-trip exactly.

#include <string>
#include <vector>

#include <json.hpp>

#include "lagmech/builtins/catalog.hpp"
#include "lagmech/finsler/finsler.hpp"
#include "lagmech/mechanics/classify.hpp"
#include "lagmech/trajectories/trajectory.hpp"

namespace lagmech::io {

using Json = nlohmann::ordered_json;

// Pretty-printed with two-space indentation, finite doubles as %.17g,
// non-finite doubles as null.
std::string dump(const Json& j);

Json to_json(const std::vector<double>& v);
Json to_json(const numkernel::Matrix<double>& m);  // array of rows
Json to_json(const numkernel::Cube<double>& c);    // c[i][j][k]
Json to_json(const numkernel::PhasePoint& p);
Json to_json(const mechanics::SampleBox& box);
Json to_json(const mechanics::PointFailure& f);
Json to_json(const mechanics::ClassificationReport& r);
Json to_json(const finsler::HomogeneityReport& r);
Json to_json(const finsler::FinslerIdentities& r);
Json to_json(const trajectories::EnergyAudit& a);
Json to_json(const trajectories::Trajectory& t);
Json to_json(const builtins::BuiltinEntry& e);

trajectories::Trajectory trajectory_from_json(const Json& j);

}  // namespace lagmech::io
