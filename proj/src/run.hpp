#pragma once

// Config-driven pipelines behind the command-line tool and hr_run().

#include <map>
#include <string>

#include "immersion.hpp"

namespace hyperrig {

/// Radians as a plain number or a multiple of pi: "0.5236", "pi/6", "5pi/12",
/// "-pi/8", "2*pi/3". Throws ConfigError.
double parse_angle(const std::string& text);

/// Chart specs: sphere:rho=,n=,tilt=  clifford:r=,j=,k=  cartan:theta=
/// clifford-patch  equator:n=  (the last is the great sphere about e_{n+2}).
ChartPtr chart_from_spec(const std::string& spec);

/// Flat key = value lines; '#' starts a comment; later lines override earlier
/// ones. Unknown keys throw ConfigError.
std::map<std::string, std::string> parse_config(const std::string& text);

struct RunOutput {
  int exit_code = 0;
  std::string report_json;
};

/// Exit codes: 0 success, 2 hypothesis check completed with the hypothesis
/// failing, 1 computational error or falsification, 64 configuration error.
/// Never throws; errors are reported in the JSON.
RunOutput run(const std::string& config_text);

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitHypothesisFailed = 2;
inline constexpr int kExitConfig = 64;

}  // namespace hyperrig
