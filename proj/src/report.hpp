#pragma once

// JSON encodings of the result types.

#include <json.hpp>

#include "beltrami.hpp"
#include "quotient.hpp"

namespace hyperrig {

using Json = nlohmann::json;

inline constexpr const char* kReportVersion = "1.0";

Json to_json(const Vec& v);
Json to_json(const GaussScan& scan);
Json to_json(const RigidityReport& report);
Json to_json(const BallResult& ball);
Json to_json(const DegreeResult& degree);
Json to_json(const SharpnessResult& scan);
Json to_json(const BlowupStudy& study);
Json to_json(const LemmaReport& lemmas);
/// Sizes, area, curvature range and analytic comparison of one mesh.
Json mesh_summary(const HypersurfaceMesh& mesh);

}  // namespace hyperrig
