#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "asurf/metrics.hpp"
#include "asurf/model.hpp"
#include "asurf/partition.hpp"

namespace asurf {

using Json = nlohmann::ordered_json;

// 6 significant digits, the precision used by all text/CSV output.
std::string fmt6(double v);

Json path_score_json(const PathScore& s);
Json surface_report_json(const std::string& model_name, const SurfaceReport& r);
Json diagnostics_json(const std::string& model_name,
                      const std::vector<Diagnostic>& diags);
Json partition_result_json(const std::string& model_name,
                           const PartitionResult& r);

std::string surface_report_text(const std::string& model_name,
                                const SurfaceReport& r);
std::string surface_report_csv(const SurfaceReport& r);

}  // namespace asurf
