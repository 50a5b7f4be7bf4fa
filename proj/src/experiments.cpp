#include "lily/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lily/dynamics.hpp"
#include "lily/fidelity.hpp"
#include "lily/graph.hpp"

namespace lily {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument("lily: " + message);
}

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

std::vector<double> noiseless_curve(int n, std::span<const double> times) {
  const SpectralPropagator<ReducedMatrixd> prop(
      build_reduced_hamiltonian<double>(n, kOptimalBeta, kOptimalGamma, kOptimalDelta));
  InputBlock inputs = InputBlock::Zero();
  inputs(0, 0) = 1.0;
  inputs(1, 1) = 1.0;
  std::vector<double> out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    out[i] = avg_fidelity_closed(InputBlock(prop.apply(times[i], inputs)));
  }
  return out;
}

void split(const std::vector<EnsembleEstimate>& estimates, FidelityCurve& curve) {
  curve.mean_fidelity.resize(estimates.size());
  std::vector<double> err(estimates.size());
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    curve.mean_fidelity[i] = estimates[i].mean;
    err[i] = estimates[i].std_error;
  }
  curve.std_error = std::move(err);
}

}  // namespace

std::string_view model_name(ModelFamily family) {
  switch (family) {
    case ModelFamily::Noiseless: return "noiseless";
    case ModelFamily::StaticPhase: return "static-phase";
    case ModelFamily::StaticWeight: return "static-weight";
    case ModelFamily::OUPhase: return "ou-phase";
    case ModelFamily::OUWeight: return "ou-weight";
  }
  return "unknown";
}

std::optional<ModelFamily> parse_model(std::string_view name) {
  for (auto f : {ModelFamily::Noiseless, ModelFamily::StaticPhase, ModelFamily::StaticWeight, ModelFamily::OUPhase,
                 ModelFamily::OUWeight}) {
    if (model_name(f) == name) return f;
  }
  return std::nullopt;
}

ModelFamily family_of(const NoiseSpec& spec) { return static_cast<ModelFamily>(spec.index()); }

bool is_stochastic(ModelFamily family) {
  return family == ModelFamily::OUPhase || family == ModelFamily::OUWeight;
}

double sigma_eff(const NoiseSpec& spec) {
  return std::visit(overloaded{
                        [](const Noiseless&) { return 0.0; },
                        [](const StaticPhaseNoise& s) { return 1.0 / std::sqrt(s.k); },
                        [](const StaticWeightNoise& s) { return s.sigma; },
                        [](const OUPhaseNoise& s) { return s.volatility / std::sqrt(2.0 * s.theta); },
                        [](const OUWeightNoise& s) { return s.volatility / std::sqrt(2.0 * s.theta); },
                    },
                    spec);
}

NoiseSpec spec_for_sigma(ModelFamily family, double sigma, double theta) {
  require(positive(sigma), "sigma_eff must be > 0");
  require(positive(theta), "theta must be > 0");
  switch (family) {
    case ModelFamily::Noiseless: return Noiseless{};
    case ModelFamily::StaticPhase: return StaticPhaseNoise{1.0 / (sigma * sigma)};
    case ModelFamily::StaticWeight: return StaticWeightNoise{sigma};
    case ModelFamily::OUPhase: return OUPhaseNoise{theta, sigma * std::sqrt(2.0 * theta)};
    case ModelFamily::OUWeight: return OUWeightNoise{theta, sigma * std::sqrt(2.0 * theta)};
  }
  throw std::invalid_argument("lily: unknown model family");
}

void validate(const NoiseSpec& spec) {
  std::visit(overloaded{
                 [](const Noiseless&) {},
                 [](const StaticPhaseNoise& s) { require(positive(s.k), "k must be > 0"); },
                 [](const StaticWeightNoise& s) { require(positive(s.sigma), "sigma must be > 0"); },
                 [](const OUPhaseNoise& s) {
                   require(positive(s.theta), "theta must be > 0");
                   require(s.volatility >= 0.0 && std::isfinite(s.volatility), "volatility must be >= 0");
                 },
                 [](const OUWeightNoise& s) {
                   require(positive(s.theta), "theta must be > 0");
                   require(s.volatility >= 0.0 && std::isfinite(s.volatility), "volatility must be >= 0");
                 },
             },
             spec);
}

std::vector<double> TimeGrid::times() const {
  require(positive(t_max), "t_max must be > 0");
  require(points >= 2, "time grid needs at least two points");
  std::vector<double> t(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) t[i] = t_max * i / (points - 1);
  return t;
}

void validate(const Scenario& s) {
  validate(s.model);
  detail::require_outputs(s.n);
  require(positive(s.grid.t_max), "t_max must be > 0");
  require(s.grid.points >= 2, "time grid needs at least two points");
  const NumericConfig& c = s.numerics;
  require(c.phase_grid >= 3 && c.phase_grid % 2 == 1, "phase grid must be odd and >= 3");
  require(c.weight_nodes >= 1, "weight nodes must be >= 1");
  require(positive(c.dt), "dt must be > 0");
  require(c.realizations >= 2, "need at least two realizations");
  require(c.threads >= 0, "threads must be >= 0");
}

FidelityCurve fidelity_curve(const Scenario& s) {
  validate(s);
  FidelityCurve curve;
  curve.scenario = s;
  curve.times = s.grid.times();
  const NumericConfig& c = s.numerics;
  const int threads = resolve_threads(c.threads);
  const EnsembleConfig ensemble{c.dt, c.realizations, c.master_seed, threads};

  std::visit(overloaded{
                 [&](const Noiseless&) { curve.mean_fidelity = noiseless_curve(s.n, curve.times); },
                 [&](const StaticPhaseNoise& m) {
                   curve.mean_fidelity = static_phase_curve(s.n, curve.times, m.k, c.phase_grid, threads);
                 },
                 [&](const StaticWeightNoise& m) {
                   curve.mean_fidelity = static_weight_curve(s.n, curve.times, m.sigma, c.weight_nodes);
                 },
                 [&](const OUPhaseNoise& m) {
                   split(ou_phase_curve(s.n, curve.times, m.theta, m.volatility, ensemble), curve);
                 },
                 [&](const OUWeightNoise& m) {
                   split(ou_weight_curve(s.n, curve.times, m.theta, m.volatility, ensemble), curve);
                 },
             },
             s.model);
  return curve;
}

PeakRecord peak_scan(const FidelityCurve& curve, PeakWindow window) {
  const auto& t = curve.times;
  const auto& f = curve.mean_fidelity;
  require(t.size() == f.size(), "curve times and values differ in length");

  std::size_t first = t.size();
  std::size_t last = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= window.lo && t[i] <= window.hi) {
      first = std::min(first, i);
      last = i;
    }
  }
  if (first == t.size()) {
    throw std::invalid_argument("lily: peak window [" + std::to_string(window.lo) + ", " + std::to_string(window.hi) +
                                "] contains no grid point");
  }

  PeakRecord rec;
  rec.n = curve.scenario.n;
  rec.sigma_eff = sigma_eff(curve.scenario.model);

  std::size_t best = first;
  double lowest = f[first];
  for (std::size_t i = first; i <= last; ++i) {
    if (f[i] > f[best]) best = i;
    lowest = std::min(lowest, f[i]);
  }
  rec.t_peak = t[best];
  rec.f_peak = f[best];
  if (f[best] - lowest < 1e-12) {
    rec.flat = true;
    rec.t_peak = t[first];
    rec.f_peak = f[first];
    return rec;
  }
  if (best == first || best == last) return rec;

  // Parabola y - y1 = a u^2 + b u in coordinates centred on the discrete maximum.
  const double u0 = t[best - 1] - t[best];
  const double u2 = t[best + 1] - t[best];
  const double d0 = f[best - 1] - f[best];
  const double d2 = f[best + 1] - f[best];
  const double det = u0 * u2 * (u0 - u2);
  const double a = (d0 * u2 - d2 * u0) / det;
  const double b = (u0 * u0 * d2 - u2 * u2 * d0) / det;
  if (!(a < 0.0)) return rec;
  const double u = std::clamp(-b / (2.0 * a), u0, u2);
  rec.t_peak = t[best] + u;
  rec.f_peak = f[best] + a * u * u + b * u;
  return rec;
}

ScalingTable peak_scaling(ModelFamily family, std::span<const double> sigma_grid, std::span<const int> n_list,
                          const Scenario& base, PeakWindow window, double theta) {
  require(!sigma_grid.empty() && !n_list.empty(), "scaling table needs at least one sigma and one n");
  for (double s : sigma_grid) require(positive(s), "sigma values must be > 0");

  ScalingTable table;
  table.model = family;
  table.seed = base.numerics.master_seed;
  table.rows.reserve(sigma_grid.size() * n_list.size());
  for (double sigma : sigma_grid) {
    for (int n : n_list) {
      Scenario s = base;
      s.model = spec_for_sigma(family, sigma, theta);
      s.n = n;
      PeakRecord rec = peak_scan(fidelity_curve(s), window);
      rec.sigma_eff = sigma;
      table.rows.push_back(rec);
    }
  }
  return table;
}

ResourceCounts resource_counts(std::int64_t n, std::int64_t d) {
  require(n >= 1 && d >= 1, "resource counts need n >= 1 and D >= 1");
  std::int64_t square = 0, pairs = 0, transfer = 0, routing = 0;
  if (__builtin_mul_overflow(n, n, &square) || __builtin_add_overflow(square, n, &pairs) ||
      __builtin_mul_overflow(d, pairs, &transfer) || __builtin_mul_overflow(d, n + 1, &routing) ||
      __builtin_add_overflow(routing, 2, &routing)) {
    throw std::overflow_error("lily: resource counts overflow 64-bit integers");
  }
  return {transfer, routing};
}

}  // namespace lily
