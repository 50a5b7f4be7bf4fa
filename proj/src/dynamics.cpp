#include "lily/dynamics.hpp"

#include <cmath>
#include <optional>
#include <string>

namespace lily {

namespace {

void validate(const ParameterPath& path) {
  if (!(path.dt > 0.0) || !std::isfinite(path.dt)) {
    throw std::invalid_argument("lily: parameter path needs a finite dt > 0");
  }
  if (path.samples.empty()) {
    throw std::invalid_argument("lily: parameter path is empty");
  }
}

}  // namespace

ReducedMatrixd trotter_evolve(int n, const ParameterPath& path) {
  validate(path);
  ReducedMatrixd u = ReducedMatrixd::Identity();
  for (const ControlPoint& c : path.samples) {
    u = hermitian_expm(build_reduced_hamiltonian(n, c), path.dt) * u;
  }
  return u;
}

void trotter_sweep(int n, const ParameterPath& path, std::span<const double> times,
                   const std::function<void(std::size_t, const InputBlock&)>& visit) {
  validate(path);
  const std::size_t steps = path.samples.size();
  // Relative slack so t = k*dt lands on the step boundary despite round-off.
  const double slack = 1e-12 * path.dt;

  InputBlock block = InputBlock::Zero();
  block(0, 0) = 1.0;
  block(1, 1) = 1.0;

  // A step's decomposition is shared between partial and full applications.
  std::optional<SpectralPropagator<ReducedMatrixd>> cached;
  std::size_t cached_step = steps;
  auto propagator = [&](std::size_t j) -> const SpectralPropagator<ReducedMatrixd>& {
    if (j != cached_step) {
      cached.emplace(build_reduced_hamiltonian(n, path.samples[j]));
      cached_step = j;
    }
    return *cached;
  };

  std::size_t step = 0;
  double previous = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    if (!(t >= previous) || !std::isfinite(t)) {
      throw std::invalid_argument("lily: sweep times must be finite, non-negative and ascending");
    }
    previous = t;
    while (step < steps && static_cast<double>(step + 1) * path.dt <= t + slack) {
      block = propagator(step).apply(path.dt, block);
      ++step;
    }
    const double rest = t - static_cast<double>(step) * path.dt;
    if (rest <= slack) {
      visit(i, block);
      continue;
    }
    if (step >= steps) {
      throw std::invalid_argument("lily: sweep time " + std::to_string(t) + " exceeds path span " +
                                  std::to_string(path.span()));
    }
    visit(i, propagator(step).apply(rest, block));
  }
}

}  // namespace lily
