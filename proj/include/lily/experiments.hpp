#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lily/noise.hpp"

namespace lily {

struct Noiseless {};
struct StaticPhaseNoise {
  double k = 1.0;  // von Mises concentration
};
struct StaticWeightNoise {
  double sigma = 0.1;
};
struct OUPhaseNoise {
  double theta = 1.0;
  double volatility = 0.1;
};
struct OUWeightNoise {
  double theta = 1.0;
  double volatility = 0.1;
};

using NoiseSpec = std::variant<Noiseless, StaticPhaseNoise, StaticWeightNoise, OUPhaseNoise, OUWeightNoise>;

enum class ModelFamily { Noiseless, StaticPhase, StaticWeight, OUPhase, OUWeight };

std::string_view model_name(ModelFamily family);
std::optional<ModelFamily> parse_model(std::string_view name);
ModelFamily family_of(const NoiseSpec& spec);
bool is_stochastic(ModelFamily family);

/// Common noise-strength axis: 1/sqrt(k), sigma, or volatility/sqrt(2 theta). Zero when noiseless.
double sigma_eff(const NoiseSpec& spec);

/// Inverse of sigma_eff for a family; OU families use the given theta.
NoiseSpec spec_for_sigma(ModelFamily family, double sigma, double theta = 1.0);

/// Throws std::invalid_argument when a noise parameter is out of range.
void validate(const NoiseSpec& spec);

struct NumericConfig {
  int phase_grid = kDefaultPhaseGrid;
  int weight_nodes = kDefaultWeightNodes;
  double dt = kDefaultTrotterStep;
  int realizations = kDefaultRealizations;
  std::uint64_t master_seed = 42;
  int threads = 1;
};

/// Uniform grid of `points` times on [0, t_max].
struct TimeGrid {
  double t_max = 4.0 * std::numbers::pi;
  int points = 512;

  std::vector<double> times() const;
};

struct Scenario {
  NoiseSpec model = Noiseless{};
  int n = 2;
  TimeGrid grid;
  NumericConfig numerics;
};

void validate(const Scenario& scenario);

struct FidelityCurve {
  Scenario scenario;
  std::vector<double> times;
  std::vector<double> mean_fidelity;
  std::optional<std::vector<double>> std_error;  // Monte-Carlo models only
};

/// Mean fidelity at every grid time for the scenario's noise model.
FidelityCurve fidelity_curve(const Scenario& scenario);

struct PeakWindow {
  double lo = std::numbers::pi - 0.5;
  double hi = std::numbers::pi + 0.5;
};

struct PeakRecord {
  double t_peak = 0.0;
  double f_peak = 0.0;
  double sigma_eff = 0.0;
  int n = 0;
  bool flat = false;  // curve constant (to 1e-12) inside the window
};

/// Discrete argmax inside the window (ties to the earlier time), refined by the
/// parabola through the maximum and its two in-window neighbours.
PeakRecord peak_scan(const FidelityCurve& curve, PeakWindow window = {});

struct ScalingTable {
  ModelFamily model = ModelFamily::Noiseless;
  std::uint64_t seed = 0;
  std::vector<PeakRecord> rows;  // sigma-major, then n, in request order
};

/// First-peak height and position for every (sigma_eff, n) pair. The base
/// scenario supplies the time grid and numerics; OU families use `theta`.
ScalingTable peak_scaling(ModelFamily family, std::span<const double> sigma_grid, std::span<const int> n_list,
                          const Scenario& base, PeakWindow window = {}, double theta = 1.0);

/// Spin-chain state transfer versus routing: D(n^2 + n) and D(n + 1) + 2.
struct ResourceCounts {
  std::int64_t state_transfer = 0;
  std::int64_t routing = 0;
};

ResourceCounts resource_counts(std::int64_t n, std::int64_t d);

}  // namespace lily
