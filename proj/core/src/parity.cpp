#include "borromean/parity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace borromean {

namespace {

void check_parity_bits(int n) {
  if (n < 1 || n > kMaxParityBits) {
    throw std::invalid_argument("parity state needs 1 <= n <= " + std::to_string(kMaxParityBits) + ", got " +
                                std::to_string(n));
  }
}

}  // namespace

PureState parity_state(int n) {
  check_parity_bits(n);
  const SiteDims dims = SiteDims::uniform(n + 1, 2);
  ComplexVector amplitudes = ComplexVector::Zero(static_cast<Eigen::Index>(dims.total()));
  const double weight = 1.0 / std::sqrt(std::ldexp(1.0, n));
  for (unsigned data = 0; data < (1U << n); ++data) {
    const unsigned checksum = static_cast<unsigned>(std::popcount(data) & 1);
    amplitudes(static_cast<Eigen::Index>((checksum << n) | data)) = weight;
  }
  return make_pure_state(dims, std::move(amplitudes));
}

JointDistribution computational_distribution(const PureState& psi) {
  std::vector<double> probabilities(psi.dims().total());
  for (std::size_t k = 0; k < probabilities.size(); ++k) probabilities[k] = std::norm(psi[k]);
  // make_pure_state normalizes to within rounding; absorb the residue so the table sums to one.
  double total = 0.0;
  for (double p : probabilities) total += p;
  for (double& p : probabilities) p /= total;
  return JointDistribution(psi.dims().values(), std::move(probabilities));
}

std::vector<double> projector_expectations(const PureState& psi) {
  const auto& dims = psi.dims().values();
  if (!std::all_of(dims.begin(), dims.end(), [](int d) { return d == 2; })) {
    throw std::invalid_argument("projector expectations need qubit sites");
  }
  std::vector<double> expectations;
  for (int s = 0; s < psi.sites(); ++s) expectations.push_back(single_site_marginal(psi, s)(1, 1).real());
  return expectations;
}

ParityComparison compare_to_classical(int n, double borromean_tol) {
  check_parity_bits(n);
  const PureState psi = parity_state(n);
  ParityComparison result{computational_distribution(psi), checksum_joint(RegisterSpec::uniform(n)), 0.0, {}, {}, {}};
  const auto& q = result.quantum_distribution.probabilities();
  const auto& c = result.classical_distribution.probabilities();
  for (std::size_t k = 0; k < q.size(); ++k) result.max_abs_difference = std::max(result.max_abs_difference, std::abs(q[k] - c[k]));
  result.per_qubit_expectations = projector_expectations(psi);
  for (int k = 0; n >= 2 && k <= n; ++k) {
    result.drop_one_gaps.push_back(independence_gap(drop_marginal(result.quantum_distribution, k)));
  }
  if (psi.sites() >= 3) result.density_report = borromean_deviation(psi, borromean_tol);
  return result;
}

}  // namespace borromean
