#pragma once

#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "lily/ensemble.hpp"
#include "lily/special.hpp"

namespace lily {

inline constexpr int kDefaultPhaseGrid = 129;
inline constexpr int kDefaultWeightNodes = 61;
inline constexpr double kDefaultTrotterStep = std::numbers::pi / 400.0;
inline constexpr int kDefaultRealizations = 2000;

// ---------------------------------------------------------------------------
// Static disorder

/// Von Mises density e^{k cos eps} / (2 pi I0(k)), evaluated in scaled form.
double von_mises_pdf(double eps, double k);

/// Periodic trapezoid rule on [-pi, pi) weighted by the von Mises density.
/// Weights are renormalised to sum to one so that very concentrated laws
/// (k -> infinity) collapse onto the node at 0 instead of being under-resolved.
QuadratureRule von_mises_rule(double k, int grid);

/// Bloch-averaged fidelity with both effective phases independently
/// perturbed by von Mises noise of concentration k, around (gamma, delta) = (0, pi).
double static_phase_avg_fidelity(int n, double t, double k, int grid = kDefaultPhaseGrid);
std::vector<double> static_phase_curve(int n, std::span<const double> times, double k,
                                       int grid = kDefaultPhaseGrid, int threads = 1);

/// Bloch-averaged fidelity with beta = sqrt(3)/2 + zeta, zeta ~ N(0, sigma^2),
/// integrated by Gauss-Hermite. Negative effective beta is allowed.
double static_weight_avg_fidelity(int n, double t, double sigma, int nodes = kDefaultWeightNodes);
std::vector<double> static_weight_curve(int n, std::span<const double> times, double sigma,
                                        int nodes = kDefaultWeightNodes);

// ---------------------------------------------------------------------------
// Ornstein-Uhlenbeck disorder

/// dX = theta (mu - X) dt + volatility dW.
struct OUProcess {
  double theta = 1.0;
  double mu = 0.0;
  double volatility = 0.0;

  double stationary_variance() const { return volatility * volatility / (2.0 * theta); }
};

struct OUPath {
  double dt = 0.0;
  std::vector<double> samples;  // X_0 ... X_steps
  std::uint64_t master_seed = 0;
  std::uint64_t realization = 0;
};

/// Exact OU transition on a uniform grid, X_0 drawn from the stationary law.
std::vector<double> ou_samples(const OUProcess& process, double dt, int steps, std::mt19937_64& rng);

/// Path for one realization; the stream is fixed by (master_seed, realization, channel).
OUPath ou_path(const OUProcess& process, double dt, int steps, std::uint64_t master_seed,
               std::uint64_t realization, std::uint32_t channel = 0);

/// Stream channels used by the ensemble estimators.
enum class NoiseChannel : std::uint32_t { Gamma = 0, Delta = 1, Beta = 2 };

struct EnsembleConfig {
  double dt = kDefaultTrotterStep;
  int realizations = kDefaultRealizations;
  std::uint64_t master_seed = 42;
  int threads = 1;
};

/// Phases gamma(t), delta(t) follow independent OU processes (shared theta and
/// volatility) around 0 and pi; each realization is Trotter-evolved.
EnsembleEstimate ou_phase_avg_fidelity(int n, double t, double theta, double volatility,
                                       const EnsembleConfig& config = {});
std::vector<EnsembleEstimate> ou_phase_curve(int n, std::span<const double> times, double theta,
                                             double volatility, const EnsembleConfig& config = {});

/// beta(t) follows an OU process around sqrt(3)/2 with phases held optimal.
EnsembleEstimate ou_weight_avg_fidelity(int n, double t, double theta, double volatility,
                                        const EnsembleConfig& config = {});
std::vector<EnsembleEstimate> ou_weight_curve(int n, std::span<const double> times, double theta,
                                              double volatility, const EnsembleConfig& config = {});

}  // namespace lily
