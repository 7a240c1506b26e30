#pragma once

#include <string>

#include <json.hpp>

#include "varpol/dists.hpp"
#include "varpol/fit.hpp"
#include "varpol/gof.hpp"

namespace varpol {

/// {"family": ..., params...}; KDE carries its sample and bandwidth.
nlohmann::json model_to_json(const DistModel& model);
DistModel model_from_json(const nlohmann::json& j);

/// Parameter/estimate/std-error rows plus the embedded model document.
nlohmann::json fit_report_to_json(const FitReport& report);

nlohmann::json ks_result_to_json(const std::string& family, const KsResult& result);

}  // namespace varpol
