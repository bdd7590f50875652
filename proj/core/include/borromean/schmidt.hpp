#pragma once

// Generalized Schmidt normal form of multipartite pure states.
//
// The first level is the product state of maximal overlap with psi, found by
// alternating rank-1 updates (higher-order power iteration) from seeded random
// starting points. Each further level repeats the maximization inside the
// subspace where every site index is at least that level, rotating only the
// not-yet-fixed basis columns. At a maximizer the coefficient tensor in the
// resulting local bases satisfies
//   * zero pattern: c[j, i, ..., i] = c[i, j, ..., i] = ... = 0 for i < j,
//   * dominance:    |c[i, ..., i]| >= |c[j_1, ..., j_N]| whenever every j_r >= i.
// All multi-indices in this API are 0-based.

#include "borromean/tensor.hpp"

#include <cstdint>
#include <vector>

namespace borromean {

inline constexpr int kDefaultSweepCap = 500;
inline constexpr double kDefaultSweepTolerance = 1e-15;
/// Deflated components below this norm carry no coefficient mass.
inline constexpr double kDeflationFloor = 1e-12;

struct ProductApproximation {
  /// Unit local vectors, one per site.
  std::vector<ComplexVector> factors;
  /// |<factor_0 ... factor_{N-1} | psi>|.
  double overlap = 0.0;
  bool converged = false;
  int sweeps = 0;
  /// Index of the winning restart; its seed is seed + best_restart.
  int best_restart = 0;
  /// Overlap after each sweep of the winning restart; non-decreasing.
  std::vector<double> sweep_overlaps;
};

/// Maximizes |<phi_1 ... phi_N | psi>| over unit local vectors. Restart k
/// starts from Gaussian factors drawn with seed + k; the best overlap wins with
/// ties going to the lowest restart index. A restart stops once the overlap
/// gain of a sweep drops below `tol` or after `max_sweeps` sweeps.
ProductApproximation closest_product_state(const PureState& psi, int restarts, double tol,
                                           std::uint64_t seed = 0, int max_sweeps = kDefaultSweepCap);

/// Dense coefficient tensor; dims may be any positive integers here.
struct CoefficientTensor {
  std::vector<int> dims;
  ComplexVector values;

  [[nodiscard]] Complex at(const std::vector<int>& index) const;
};

struct NormalForm {
  int local_dimension = 0;
  /// Unitary d x d matrices; column i of basis r is the i-th local basis vector of site r.
  std::vector<ComplexMatrix> local_bases;
  /// Coefficients of psi in the product of the local bases.
  CoefficientTensor coefficients;
  /// |c[0, ..., 0]|.
  double achieved_overlap = 0.0;
  /// Restarts used at every level.
  int restart_count = 0;
  /// False if any level hit the sweep cap.
  bool converged = false;
  std::uint64_t seed = 0;
  /// Number of levels that ran an optimization before the remainder deflated away.
  int levels_optimized = 0;
};

/// max(16, 8 * N * d) for a uniform register.
int default_restart_count(const SiteDims& dims);

/// Throws std::invalid_argument for heterogeneous dims or restarts < 1.
NormalForm normal_form(const PureState& psi, int restarts, double tol, std::uint64_t seed = 0,
                       int max_sweeps = kDefaultSweepCap);

/// Amplitudes of the original state rebuilt from the local bases and coefficients.
ComplexVector reconstruct(const NormalForm& nf);

enum class NormalFormProperty { zero_pattern, dominance };

struct PropertyOffender {
  NormalFormProperty property;
  std::vector<int> index;
  double violation;
};

struct PropertyViolationReport {
  /// Largest |c| over entries the zero pattern requires to vanish.
  double zero_pattern_violation = 0.0;
  /// Largest positive excess |c[j]| - |c[i, ..., i]| over dominance pairs.
  double dominance_violation = 0.0;
  /// Entries whose violation exceeds the tolerance.
  std::vector<PropertyOffender> offenders;
  double tolerance = 0.0;

  [[nodiscard]] bool satisfied() const noexcept { return offenders.empty(); }
};

/// Requires equal dims.
PropertyViolationReport verify_normal_form(const CoefficientTensor& coefficients, double tol);
PropertyViolationReport verify_normal_form(const NormalForm& nf, double tol);

struct MixedEntry {
  std::vector<int> index;
  double magnitude;
};

/// Every entry with |c| > tol whose multi-index is not constant (i, i, ..., i).
std::vector<MixedEntry> vanishing_cascade_check(const CoefficientTensor& coefficients, double tol);

/// For two sites: max abs difference between the sorted normal-form diagonal
/// magnitudes and the singular values of the coefficient matrix.
double bipartite_crosscheck(const PureState& psi, int restarts = 32, double tol = kDefaultSweepTolerance,
                            std::uint64_t seed = 0);

}  // namespace borromean
