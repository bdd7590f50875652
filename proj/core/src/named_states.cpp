#include "borromean/named_states.hpp"

#include <cmath>
#include <stdexcept>

namespace borromean {

PureState basis_state(const SiteDims& dims, const std::vector<int>& digits) {
  ComplexVector amplitudes = ComplexVector::Zero(static_cast<Eigen::Index>(dims.total()));
  amplitudes(static_cast<Eigen::Index>(dims.flatten(digits))) = 1.0;
  return make_pure_state(dims, std::move(amplitudes));
}

PureState ghz_state(int sites, int d) {
  if (sites < 2) throw std::invalid_argument("GHZ state needs at least two sites");
  const SiteDims dims = SiteDims::uniform(sites, d);
  ComplexVector amplitudes = ComplexVector::Zero(static_cast<Eigen::Index>(dims.total()));
  for (int level = 0; level < d; ++level) {
    const std::vector<int> digits(static_cast<std::size_t>(sites), level);
    amplitudes(static_cast<Eigen::Index>(dims.flatten(digits))) = 1.0 / std::sqrt(static_cast<double>(d));
  }
  return make_pure_state(dims, std::move(amplitudes));
}

PureState w_state(int sites) {
  if (sites < 2) throw std::invalid_argument("W state needs at least two sites");
  const SiteDims dims = SiteDims::uniform(sites, 2);
  ComplexVector amplitudes = ComplexVector::Zero(static_cast<Eigen::Index>(dims.total()));
  for (int k = 0; k < sites; ++k) {
    amplitudes(Eigen::Index{1} << k) = 1.0 / std::sqrt(static_cast<double>(sites));
  }
  return make_pure_state(dims, std::move(amplitudes));
}

PureState bell_state() { return ghz_state(2, 2); }

PureState plus_state() {
  ComplexVector amplitudes(2);
  amplitudes << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return make_pure_state(SiteDims({2}), std::move(amplitudes));
}

PureState product_state(const std::vector<ComplexVector>& factors) {
  if (factors.empty()) throw std::invalid_argument("product state needs at least one factor");
  std::vector<int> dims;
  ComplexVector amplitudes = ComplexVector::Ones(1);
  for (const ComplexVector& f : factors) {
    const double norm = f.norm();
    if (norm == 0.0) throw std::invalid_argument("product factor is the zero vector");
    dims.push_back(static_cast<int>(f.size()));
    ComplexVector next(amplitudes.size() * f.size());
    for (Eigen::Index a = 0; a < amplitudes.size(); ++a) {
      next.segment(a * f.size(), f.size()) = amplitudes(a) * f / norm;
    }
    amplitudes = std::move(next);
  }
  return make_pure_state(SiteDims(std::move(dims)), std::move(amplitudes));
}

}  // namespace borromean
