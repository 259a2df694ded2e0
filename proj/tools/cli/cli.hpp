#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lucasdensity/density.hpp"
#include "lucasdensity/lucasrank.hpp"

namespace lucasdensity::cli {

enum ExitCode : int {
  kOk = 0,
  kToleranceFailure = 1,  // verify --strict only
  kInvalidInput = 2,
  kInternalFailure = 3,
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Decimal expansion cut (not rounded) after `places` digits.
std::string truncate_decimal(const Rational& q, unsigned places = 6);

nlohmann::json rational_json(const Rational& q);
nlohmann::json density_json(const DensityResult& r);

/// Name of the most derived library exception type, e.g. "TorsionError".
std::string error_name(const std::exception& e);

}  // namespace lucasdensity::cli
