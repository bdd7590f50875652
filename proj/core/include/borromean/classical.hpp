#pragma once

// Exact model of a classical register of independent bits plus a checksum bit
// A_0 = A_1 xor ... xor A_N.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace borromean {

inline constexpr int kMaxRegisterBits = 20;

/// P(A_i = 0) for i = 1..N; P(A_i = 1) = 1 - p_i.
class RegisterSpec {
 public:
  explicit RegisterSpec(std::vector<double> zero_probabilities);

  [[nodiscard]] int bits() const noexcept { return static_cast<int>(p_.size()); }
  [[nodiscard]] const std::vector<double>& zero_probabilities() const noexcept { return p_; }

  static RegisterSpec uniform(int bits);

 private:
  std::vector<double> p_;
};

/// Exact probability table over finite-valued variables, row-major with the
/// last variable fastest.
class JointDistribution {
 public:
  JointDistribution(std::vector<int> arities, std::vector<double> probabilities);

  [[nodiscard]] const std::vector<int>& arities() const noexcept { return arities_; }
  [[nodiscard]] const std::vector<double>& probabilities() const noexcept { return probabilities_; }
  [[nodiscard]] int variables() const noexcept { return static_cast<int>(arities_.size()); }
  [[nodiscard]] std::size_t size() const noexcept { return probabilities_.size(); }

  [[nodiscard]] double at(const std::vector<int>& outcome) const;
  [[nodiscard]] std::vector<int> outcome(std::size_t flat) const;

  /// Distribution of one variable.
  [[nodiscard]] std::vector<double> single_marginal(int variable) const;

 private:
  std::vector<int> arities_;
  std::vector<double> probabilities_;
};

/// Joint of (A_0, A_1, ..., A_N).
JointDistribution checksum_joint(const RegisterSpec& spec);

/// Sums out one variable. Requires at least two variables.
JointDistribution drop_marginal(const JointDistribution& joint, int variable);

/// Total variation distance between the joint and the product of its
/// one-variable marginals.
double independence_gap(const JointDistribution& joint);

struct ClassicalBorromeanReport {
  /// gaps[k] = independence_gap(drop_marginal(joint, k)), k = 0..N.
  std::vector<double> drop_one_gaps;
  double full_joint_gap = 0.0;
  double tolerance = 0.0;
  bool is_borromean = false;
};

/// Requires N >= 2.
ClassicalBorromeanReport borromean_check_classical(const RegisterSpec& spec, double tol);

/// Inverse-CDF draws over the flattened table.
std::vector<std::vector<int>> sample(const JointDistribution& joint, std::size_t n, std::uint64_t seed);

}  // namespace borromean
