#pragma once

// Full-product and Borromean tests for density matrices.
//
// A density matrix that is a tensor product of single-site states must equal
// the tensor product of its own single-site marginals, so the product
// candidate is always built from the marginals and no factorization search is
// needed.

#include "borromean/tensor.hpp"

#include <vector>

namespace borromean {

/// Default Frobenius tolerance for states derived in exact arithmetic.
inline constexpr double kExactTolerance = 1e-9;
/// Default Frobenius tolerance for states produced by an optimizer.
inline constexpr double kOptimizerTolerance = 1e-6;

struct ProductReport {
  double deviation_frobenius = 0.0;
  /// Full trace norm of the difference (not halved).
  double deviation_trace = 0.0;
  /// Single-site marginals forming the product candidate, in site order.
  std::vector<DensityMatrix> factors;
  double tolerance = kExactTolerance;
  bool is_product = false;
};

struct BorromeanReport {
  /// Frobenius product deviation of the state with site r traced out, indexed by r.
  std::vector<double> per_site_deviation;
  /// Same, measured in the full trace norm.
  std::vector<double> per_site_trace_deviation;
  double max_deviation = 0.0;
  double tolerance = kExactTolerance;
  bool is_borromean = false;
};

/// Distance between rho and the tensor product of its marginals. Requires N >= 2.
ProductReport product_deviation(const DensityMatrix& rho, double tol = kExactTolerance);

/// Throws std::invalid_argument for tol <= 0.
bool is_product(const DensityMatrix& rho, double tol);

/// Product deviation after tracing out each site in turn. Requires N >= 3.
BorromeanReport borromean_deviation(const DensityMatrix& rho, double tol = kExactTolerance);
BorromeanReport borromean_deviation(const PureState& psi, double tol = kExactTolerance);

bool is_borromean(const DensityMatrix& rho, double tol);

/// Max over sites of the Frobenius deviation only; the hot path of the
/// counterexample search. Requires N >= 3.
double max_borromean_frobenius_deviation(const PureState& psi);

/// max_s (1 - tr(rho_s^2)) over single-site marginals rho_s. Requires N >= 2.
double linear_entropy_entanglement(const PureState& psi);

}  // namespace borromean
