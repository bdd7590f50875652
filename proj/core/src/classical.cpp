#include "borromean/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace borromean {

RegisterSpec::RegisterSpec(std::vector<double> zero_probabilities) : p_(std::move(zero_probabilities)) {
  if (p_.empty()) throw std::invalid_argument("register needs at least one bit");
  if (bits() > kMaxRegisterBits) {
    throw std::invalid_argument("register is limited to " + std::to_string(kMaxRegisterBits) + " bits");
  }
  for (double p : p_) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability " + std::to_string(p) + " outside [0, 1]");
  }
}

RegisterSpec RegisterSpec::uniform(int bits) {
  if (bits < 1) throw std::invalid_argument("register needs at least one bit");
  return RegisterSpec(std::vector<double>(static_cast<std::size_t>(bits), 0.5));
}

JointDistribution::JointDistribution(std::vector<int> arities, std::vector<double> probabilities)
    : arities_(std::move(arities)), probabilities_(std::move(probabilities)) {
  if (arities_.empty()) throw std::invalid_argument("distribution needs at least one variable");
  std::size_t expected = 1;
  for (int a : arities_) {
    if (a < 1) throw std::invalid_argument("variable arity must be positive");
    expected *= static_cast<std::size_t>(a);
  }
  if (probabilities_.size() != expected) throw std::invalid_argument("probability table has the wrong size");
  double total = 0.0;
  for (double p : probabilities_) {
    if (!(p >= 0.0)) throw std::invalid_argument("negative or non-finite probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("probabilities do not sum to one");
}

double JointDistribution::at(const std::vector<int>& outcome) const {
  if (outcome.size() != arities_.size()) throw std::invalid_argument("outcome has wrong length");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < arities_.size(); ++k) {
    if (outcome[k] < 0 || outcome[k] >= arities_[k]) throw std::invalid_argument("outcome value out of range");
    flat = flat * static_cast<std::size_t>(arities_[k]) + static_cast<std::size_t>(outcome[k]);
  }
  return probabilities_[flat];
}

std::vector<int> JointDistribution::outcome(std::size_t flat) const {
  std::vector<int> values(arities_.size());
  for (std::size_t k = arities_.size(); k-- > 0;) {
    const auto a = static_cast<std::size_t>(arities_[k]);
    values[k] = static_cast<int>(flat % a);
    flat /= a;
  }
  return values;
}

std::vector<double> JointDistribution::single_marginal(int variable) const {
  if (variable < 0 || variable >= variables()) throw std::invalid_argument("variable index out of range");
  std::vector<double> marginal(static_cast<std::size_t>(arities_[static_cast<std::size_t>(variable)]), 0.0);
  for (std::size_t flat = 0; flat < probabilities_.size(); ++flat) {
    marginal[static_cast<std::size_t>(outcome(flat)[static_cast<std::size_t>(variable)])] += probabilities_[flat];
  }
  return marginal;
}

JointDistribution checksum_joint(const RegisterSpec& spec) {
  const int n = spec.bits();
  const std::size_t entries = std::size_t{1} << (n + 1);
  std::vector<double> table(entries, 0.0);
  const auto& p = spec.zero_probabilities();
  // Data bits A_1..A_N are the low n bits of the flat index; A_0 is the top bit.
  for (std::size_t data = 0; data < (std::size_t{1} << n); ++data) {
    double weight = 1.0;
    int parity = 0;
    for (int i = 0; i < n; ++i) {
      const int bit = static_cast<int>((data >> (n - 1 - i)) & 1U);
      parity ^= bit;
      weight *= bit == 0 ? p[static_cast<std::size_t>(i)] : 1.0 - p[static_cast<std::size_t>(i)];
    }
    table[(static_cast<std::size_t>(parity) << n) | data] = weight;
  }
  return JointDistribution(std::vector<int>(static_cast<std::size_t>(n) + 1, 2), std::move(table));
}

JointDistribution drop_marginal(const JointDistribution& joint, int variable) {
  if (joint.variables() < 2) throw std::invalid_argument("cannot drop the only variable");
  if (variable < 0 || variable >= joint.variables()) throw std::invalid_argument("variable index out of range");
  std::vector<int> arities = joint.arities();
  arities.erase(arities.begin() + variable);
  std::size_t size = 1;
  for (int a : arities) size *= static_cast<std::size_t>(a);
  std::vector<double> table(size, 0.0);
  for (std::size_t flat = 0; flat < joint.size(); ++flat) {
    std::vector<int> values = joint.outcome(flat);
    values.erase(values.begin() + variable);
    std::size_t target = 0;
    for (std::size_t k = 0; k < arities.size(); ++k) target = target * static_cast<std::size_t>(arities[k]) + static_cast<std::size_t>(values[k]);
    table[target] += joint.probabilities()[flat];
  }
  return JointDistribution(std::move(arities), std::move(table));
}

double independence_gap(const JointDistribution& joint) {
  if (joint.variables() < 2) throw std::invalid_argument("independence needs at least two variables");
  std::vector<std::vector<double>> marginals;
  for (int v = 0; v < joint.variables(); ++v) marginals.push_back(joint.single_marginal(v));
  double total = 0.0;
  for (std::size_t flat = 0; flat < joint.size(); ++flat) {
    const std::vector<int> values = joint.outcome(flat);
    double product = 1.0;
    for (std::size_t k = 0; k < values.size(); ++k) product *= marginals[k][static_cast<std::size_t>(values[k])];
    total += std::abs(joint.probabilities()[flat] - product);
  }
  return 0.5 * total;
}

ClassicalBorromeanReport borromean_check_classical(const RegisterSpec& spec, double tol) {
  if (spec.bits() < 2) throw std::invalid_argument("classical Borromean check needs at least two data bits");
  const JointDistribution joint = checksum_joint(spec);
  ClassicalBorromeanReport report;
  report.tolerance = tol;
  for (int k = 0; k < joint.variables(); ++k) report.drop_one_gaps.push_back(independence_gap(drop_marginal(joint, k)));
  report.full_joint_gap = independence_gap(joint);
  report.is_borromean = std::all_of(report.drop_one_gaps.begin(), report.drop_one_gaps.end(),
                                    [&](double gap) { return gap <= tol; });
  return report;
}

std::vector<std::vector<int>> sample(const JointDistribution& joint, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample count must be positive");
  std::vector<double> cdf(joint.size());
  std::partial_sum(joint.probabilities().begin(), joint.probabilities().end(), cdf.begin());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, cdf.back());
  std::vector<std::vector<int>> draws;
  draws.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = uniform(rng);
    // First cell whose cumulative mass exceeds u; zero-mass cells are never chosen.
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) it = std::prev(cdf.end());
    while (joint.probabilities()[static_cast<std::size_t>(it - cdf.begin())] == 0.0) --it;
    draws.push_back(joint.outcome(static_cast<std::size_t>(it - cdf.begin())));
  }
  return draws;
}

}  // namespace borromean
