#pragma once

#include <json.hpp>
#include <string>

#include "run_config.hpp"

namespace bosecorr::app {

// 17 significant digits, C locale
std::string fmt17(double x);

std::string csv_header();
std::string csv_row(const EnergyReport& r, const RunConfig& cfg);
std::string csv_error_row(double N, const RunConfig& cfg, const std::string& message);

nlohmann::ordered_json report_json(const EnergyReport& r, const RunConfig& cfg);

}  // namespace bosecorr::app
