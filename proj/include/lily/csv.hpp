#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "lily/experiments.hpp"

namespace lily {

inline constexpr std::string_view kCurveHeader = "t,mean_fidelity,stderr,n,model,sigma_eff,seed";
inline constexpr std::string_view kScalingHeader = "sigma_eff,n,t_peak,f_peak,model,seed";

/// Locale-independent rendering with 17 significant digits.
std::string format_double(double value);

/// CSV text for a curve. stderr and seed are empty for deterministic models.
std::string curve_csv(const FidelityCurve& curve);

std::string scaling_csv(const ScalingTable& table);

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace lily
