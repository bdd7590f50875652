#pragma once

// The pure parity state (checksum qubit first) and its comparison with the
// classical checksum register.

#include "borromean/classical.hpp"
#include "borromean/product.hpp"
#include "borromean/tensor.hpp"

#include <optional>
#include <vector>

namespace borromean {

inline constexpr int kMaxParityBits = 11;

/// 2^{-n/2} sum_{i_1..i_n} |i_1 xor ... xor i_n>|i_1>...|i_n>; n + 1 qubits.
PureState parity_state(int n);

/// Born-rule probabilities in the computational basis; arities are the site dims.
JointDistribution computational_distribution(const PureState& psi);

/// <|1><1|> on every qubit. Throws for non-qubit sites.
std::vector<double> projector_expectations(const PureState& psi);

struct ParityComparison {
  JointDistribution quantum_distribution;
  JointDistribution classical_distribution;
  double max_abs_difference = 0.0;
  std::vector<double> per_qubit_expectations;
  /// Independence gaps of the quantum distribution with each qubit dropped; empty for n = 1.
  std::vector<double> drop_one_gaps;
  /// Borromean report of the full density matrix; empty for n = 1 (two qubits).
  std::optional<BorromeanReport> density_report;
};

ParityComparison compare_to_classical(int n, double borromean_tol = kOptimizerTolerance);

}  // namespace borromean
