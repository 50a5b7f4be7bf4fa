#include "lily/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lily/dynamics.hpp"
#include "lily/fidelity.hpp"
#include "lily/graph.hpp"

namespace lily {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument("lily: " + message);
}

InputBlock initial_inputs() {
  InputBlock b = InputBlock::Zero();
  b(0, 0) = 1.0;
  b(1, 1) = 1.0;
  return b;
}

// Accumulates weight * F(t) for one fixed Hamiltonian into `curve`.
void accumulate_static(const ReducedMatrixd& h, double weight, std::span<const double> times,
                       std::vector<double>& curve) {
  const SpectralPropagator<ReducedMatrixd> prop(h);
  const InputBlock inputs = initial_inputs();
  for (std::size_t i = 0; i < times.size(); ++i) {
    curve[i] += weight * avg_fidelity_closed(InputBlock(prop.apply(times[i], inputs)));
  }
}

std::vector<double> clamp_unit(std::vector<double> values) {
  for (double& v : values) v = std::clamp(v, 0.0, 1.0);
  return values;
}

int steps_to_cover(double t_max, double dt) {
  const double ratio = t_max / dt;
  require(ratio < 1e8, "time span / dt too large");
  return std::max(1, static_cast<int>(std::ceil(ratio - 1e-9)));
}

void require_sweep_times(std::span<const double> times) {
  require(!times.empty(), "empty time grid");
  for (std::size_t i = 0; i < times.size(); ++i) {
    require(std::isfinite(times[i]) && times[i] >= 0.0, "times must be finite and non-negative");
    require(i == 0 || times[i] >= times[i - 1], "times must be ascending");
  }
}

void require_ou(double theta, double volatility, const EnsembleConfig& config) {
  require(theta > 0.0 && std::isfinite(theta), "OU theta must be > 0");
  require(volatility >= 0.0 && std::isfinite(volatility), "OU volatility must be >= 0");
  require(config.dt > 0.0 && std::isfinite(config.dt), "dt must be > 0");
  require(config.realizations >= 2, "need at least two realizations");
}

// Runs one Trotter sweep per realization and reduces each time column.
template <typename PathBuilder>
std::vector<EnsembleEstimate> ensemble_curve(int n, std::span<const double> times, const EnsembleConfig& config,
                                             PathBuilder&& build_path) {
  detail::require_outputs(n);
  require_sweep_times(times);
  const int steps = steps_to_cover(times.back(), config.dt);
  const std::size_t count = static_cast<std::size_t>(config.realizations);

  // values[time][realization]
  std::vector<std::vector<double>> values(times.size(), std::vector<double>(count));
  parallel_for(count, config.threads, [&](std::size_t r) {
    const ParameterPath path = build_path(steps, r);
    trotter_sweep(n, path, times,
                  [&](std::size_t i, const InputBlock& block) { values[i][r] = avg_fidelity_closed(block); });
  });

  std::vector<EnsembleEstimate> out;
  out.reserve(times.size());
  for (const auto& column : values) out.push_back(summarize(column));
  return out;
}

}  // namespace

double von_mises_pdf(double eps, double k) {
  require(k >= 0.0 && !std::isnan(k), "von Mises concentration must be >= 0");
  return std::exp(k * (std::cos(eps) - 1.0)) / (2.0 * std::numbers::pi * bessel_i0_scaled(k));
}

QuadratureRule von_mises_rule(double k, int grid) {
  QuadratureRule rule = periodic_trapezoid_rule(grid);
  double total = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    rule.weights[j] *= von_mises_pdf(rule.nodes[j], k);
    total += rule.weights[j];
  }
  for (double& w : rule.weights) w /= total;
  return rule;
}

std::vector<double> static_phase_curve(int n, std::span<const double> times, double k, int grid, int threads) {
  detail::require_outputs(n);
  require(k > 0.0 && std::isfinite(k), "von Mises concentration must be > 0");
  const QuadratureRule rule = von_mises_rule(k, grid);

  // One partial curve per gamma node, summed in node order afterwards.
  std::vector<std::vector<double>> rows(rule.size(), std::vector<double>(times.size(), 0.0));
  parallel_for(rule.size(), threads, [&](std::size_t a) {
    if (rule.weights[a] == 0.0) return;
    for (std::size_t b = 0; b < rule.size(); ++b) {
      const double w = rule.weights[a] * rule.weights[b];
      if (w == 0.0) continue;
      const ReducedMatrixd h = build_reduced_hamiltonian<double>(n, kOptimalBeta, kOptimalGamma + rule.nodes[a],
                                                                 kOptimalDelta + rule.nodes[b]);
      accumulate_static(h, w, times, rows[a]);
    }
  });

  std::vector<double> curve(times.size(), 0.0);
  std::vector<double> column(rule.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (std::size_t a = 0; a < rule.size(); ++a) column[a] = rows[a][i];
    curve[i] = pairwise_sum(column);
  }
  return clamp_unit(std::move(curve));
}

double static_phase_avg_fidelity(int n, double t, double k, int grid) {
  const double times[] = {t};
  return static_phase_curve(n, times, k, grid).front();
}

std::vector<double> static_weight_curve(int n, std::span<const double> times, double sigma, int nodes) {
  detail::require_outputs(n);
  require(sigma > 0.0 && std::isfinite(sigma), "weight noise sigma must be > 0");
  const QuadratureRule rule = gauss_hermite_rule(nodes);
  std::vector<double> curve(times.size(), 0.0);
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const ReducedMatrixd h = build_reduced_hamiltonian<double>(n, kOptimalBeta + sigma * rule.nodes[j],
                                                               kOptimalGamma, kOptimalDelta);
    accumulate_static(h, rule.weights[j], times, curve);
  }
  return clamp_unit(std::move(curve));
}

double static_weight_avg_fidelity(int n, double t, double sigma, int nodes) {
  const double times[] = {t};
  return static_weight_curve(n, times, sigma, nodes).front();
}

std::vector<double> ou_samples(const OUProcess& p, double dt, int steps, std::mt19937_64& rng) {
  require(p.theta > 0.0 && std::isfinite(p.theta), "OU theta must be > 0");
  require(p.volatility >= 0.0 && std::isfinite(p.volatility), "OU volatility must be >= 0");
  require(dt > 0.0 && std::isfinite(dt), "dt must be > 0");
  require(steps >= 0, "steps must be >= 0");

  const double stationary_sd = std::sqrt(p.stationary_variance());
  const double decay = std::exp(-p.theta * dt);
  const double innovation_sd = stationary_sd * std::sqrt(-std::expm1(-2.0 * p.theta * dt));

  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(steps) + 1);
  x[0] = p.mu + stationary_sd * normal(rng);
  for (int j = 0; j < steps; ++j) {
    x[j + 1] = p.mu + (x[j] - p.mu) * decay + innovation_sd * normal(rng);
  }
  return x;
}

OUPath ou_path(const OUProcess& process, double dt, int steps, std::uint64_t master_seed, std::uint64_t realization,
               std::uint32_t channel) {
  auto rng = realization_stream(master_seed, realization, channel);
  return {dt, ou_samples(process, dt, steps, rng), master_seed, realization};
}

std::vector<EnsembleEstimate> ou_phase_curve(int n, std::span<const double> times, double theta, double volatility,
                                             const EnsembleConfig& config) {
  require_ou(theta, volatility, config);
  const OUProcess gamma_process{theta, kOptimalGamma, volatility};
  const OUProcess delta_process{theta, kOptimalDelta, volatility};
  return ensemble_curve(n, times, config, [&](int steps, std::size_t r) {
    const auto gamma = ou_path(gamma_process, config.dt, steps, config.master_seed, r,
                               static_cast<std::uint32_t>(NoiseChannel::Gamma));
    const auto delta = ou_path(delta_process, config.dt, steps, config.master_seed, r,
                               static_cast<std::uint32_t>(NoiseChannel::Delta));
    ParameterPath path{config.dt, std::vector<ControlPoint>(static_cast<std::size_t>(steps))};
    for (int j = 0; j < steps; ++j) path.samples[j] = {kOptimalBeta, gamma.samples[j], delta.samples[j]};
    return path;
  });
}

EnsembleEstimate ou_phase_avg_fidelity(int n, double t, double theta, double volatility,
                                       const EnsembleConfig& config) {
  const double times[] = {t};
  return ou_phase_curve(n, times, theta, volatility, config).front();
}

std::vector<EnsembleEstimate> ou_weight_curve(int n, std::span<const double> times, double theta, double volatility,
                                              const EnsembleConfig& config) {
  require_ou(theta, volatility, config);
  const OUProcess beta_process{theta, kOptimalBeta, volatility};
  return ensemble_curve(n, times, config, [&](int steps, std::size_t r) {
    const auto beta = ou_path(beta_process, config.dt, steps, config.master_seed, r,
                              static_cast<std::uint32_t>(NoiseChannel::Beta));
    ParameterPath path{config.dt, std::vector<ControlPoint>(static_cast<std::size_t>(steps))};
    for (int j = 0; j < steps; ++j) path.samples[j] = {beta.samples[j], kOptimalGamma, kOptimalDelta};
    return path;
  });
}

EnsembleEstimate ou_weight_avg_fidelity(int n, double t, double theta, double volatility,
                                        const EnsembleConfig& config) {
  const double times[] = {t};
  return ou_weight_curve(n, times, theta, volatility, config).front();
}

}  // namespace lily
