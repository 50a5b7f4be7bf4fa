#pragma once

#include "lily/dynamics.hpp"
#include "lily/graph.hpp"

namespace lily {

/// Qubit on the Bloch sphere: cos(alpha/2)|a> + e^{i chi} sin(alpha/2)|b>.
struct BlochAngles {
  double alpha = 0.0;  // [0, pi]
  double chi = 0.0;    // [0, 2 pi)
};

/// Qubit encoded on |1>, |2>.
ReducedVectord input_state(const BlochAngles& angles);

/// Same qubit on the selected output pair: f carries the cos term, r the e^{i chi} sin term.
ReducedVectord target_state(const BlochAngles& angles);

/// |<target|U|input>|^2 for one input qubit.
double routing_fidelity(const ReducedMatrixd& u, const BlochAngles& angles);

/// The four propagator elements the Bloch average depends on (0-based indices).
struct RoutingBlock {
  std::complex<double> f_from_1;  // U(4, 0)
  std::complex<double> r_from_2;  // U(3, 1)
  std::complex<double> r_from_1;  // U(3, 0)
  std::complex<double> f_from_2;  // U(4, 1)
};

RoutingBlock routing_block(const ReducedMatrixd& u);
RoutingBlock routing_block(const InputBlock& evolved_inputs);

/// Fidelity averaged uniformly over all input qubits, in closed form:
///   (|U51|^2 + |U42|^2)/3 + (U51 U42* + |U41|^2 + |U52|^2 + U42 U51*)/6.
/// Throws std::domain_error if the result has an imaginary residue above 1e-10
/// or leaves [0, 1] by more than 1e-12 (non-unitary input).
double avg_fidelity_closed(const RoutingBlock& block);
double avg_fidelity_closed(const ReducedMatrixd& u);
double avg_fidelity_closed(const InputBlock& evolved_inputs);

}  // namespace lily
