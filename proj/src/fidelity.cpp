#include "lily/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lily {

namespace {

constexpr int kInput1 = 0;
constexpr int kInput2 = 1;
constexpr int kSelectedRouting = 3;
constexpr int kSelectedOutput = 4;

ReducedVectord qubit_on(int cos_slot, int sin_slot, const BlochAngles& a) {
  ReducedVectord psi = ReducedVectord::Zero();
  psi(cos_slot) = std::cos(a.alpha / 2);
  psi(sin_slot) = std::polar(std::sin(a.alpha / 2), a.chi);
  return psi;
}

}  // namespace

ReducedVectord input_state(const BlochAngles& angles) { return qubit_on(kInput1, kInput2, angles); }

ReducedVectord target_state(const BlochAngles& angles) {
  return qubit_on(kSelectedOutput, kSelectedRouting, angles);
}

double routing_fidelity(const ReducedMatrixd& u, const BlochAngles& angles) {
  return std::norm(target_state(angles).dot(u * input_state(angles)));
}

RoutingBlock routing_block(const ReducedMatrixd& u) {
  return {u(kSelectedOutput, kInput1), u(kSelectedRouting, kInput2), u(kSelectedRouting, kInput1),
          u(kSelectedOutput, kInput2)};
}

RoutingBlock routing_block(const InputBlock& b) {
  return {b(kSelectedOutput, 0), b(kSelectedRouting, 1), b(kSelectedRouting, 0), b(kSelectedOutput, 1)};
}

double avg_fidelity_closed(const RoutingBlock& b) {
  const std::complex<double> value =
      (std::norm(b.f_from_1) + std::norm(b.r_from_2)) / 3.0 +
      (b.f_from_1 * std::conj(b.r_from_2) + std::norm(b.r_from_1) + std::norm(b.f_from_2) +
       b.r_from_2 * std::conj(b.f_from_1)) /
          6.0;
  if (std::abs(value.imag()) > 1e-10) {
    throw std::domain_error("lily: averaged fidelity has imaginary residue " + std::to_string(value.imag()));
  }
  const double f = value.real();
  if (f < -1e-12 || f > 1.0 + 1e-12) {
    throw std::domain_error("lily: averaged fidelity " + std::to_string(f) + " outside [0, 1]");
  }
  return std::clamp(f, 0.0, 1.0);
}

double avg_fidelity_closed(const ReducedMatrixd& u) { return avg_fidelity_closed(routing_block(u)); }

double avg_fidelity_closed(const InputBlock& evolved_inputs) {
  return avg_fidelity_closed(routing_block(evolved_inputs));
}

}  // namespace lily
