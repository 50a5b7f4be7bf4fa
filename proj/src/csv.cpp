#include "lily/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>
#include <unistd.h>

namespace lily {

std::string format_double(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw std::runtime_error("lily: failed to format double");
  return std::string(buf, res.ptr);
}

std::string curve_csv(const FidelityCurve& curve) {
  const ModelFamily family = family_of(curve.scenario.model);
  const std::string n = std::to_string(curve.scenario.n);
  const std::string model(model_name(family));
  const std::string sigma = format_double(sigma_eff(curve.scenario.model));
  const std::string seed = is_stochastic(family) ? std::to_string(curve.scenario.numerics.master_seed) : "";

  std::string out(kCurveHeader);
  out += '\n';
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    out += format_double(curve.times[i]);
    out += ',';
    out += format_double(curve.mean_fidelity[i]);
    out += ',';
    if (curve.std_error) out += format_double((*curve.std_error)[i]);
    out += ',' + n + ',' + model + ',' + sigma + ',' + seed + '\n';
  }
  return out;
}

std::string scaling_csv(const ScalingTable& table) {
  const std::string model(model_name(table.model));
  const std::string seed = is_stochastic(table.model) ? std::to_string(table.seed) : "";
  std::string out(kScalingHeader);
  out += '\n';
  for (const PeakRecord& r : table.rows) {
    out += format_double(r.sigma_eff) + ',' + std::to_string(r.n) + ',' + format_double(r.t_peak) + ',' +
           format_double(r.f_peak) + ',' + model + ',' + seed + '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("lily: cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("lily: failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("lily: cannot move output into place at " + path.string() + ": " + ec.message());
  }
}

}  // namespace lily
