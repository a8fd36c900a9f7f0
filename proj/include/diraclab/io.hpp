#pragma once

#include "diraclab/field.hpp"
#include "diraclab/harness.hpp"

#include <json.hpp>

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace diraclab {

/// 17 significant digits, scientific.
std::string format_double(double v);

inline constexpr const char* kResultsHeader = "scheme,eps,h,tau,error,order,status,wall_time";

/// One row per record; absent error/order are empty fields. wall_time is written as 0
/// when include_timing is false so repeated runs are byte-identical.
void write_results_csv(std::ostream& os, const std::vector<ConvergenceRecord>& records, bool include_timing = true);

/// Flat little-endian float64 array plus a JSON sidecar with `meta`.
void write_snapshot(const std::filesystem::path& dir, const std::string& stem, const std::vector<double>& data,
                    const nlohmann::json& meta);

/// Complex field as interleaved float64 (component-planar order) plus sidecar.
void write_field_snapshot(const std::filesystem::path& dir, const std::string& stem, const SpinorField& field,
                          double t);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

const char* library_version();

} // namespace diraclab
