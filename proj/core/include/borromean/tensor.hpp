#pragma once

// Dense multipartite pure states and density matrices.
//
// Index layout everywhere in this library is row-major with the last site
// varying fastest: for dims (d_0, ..., d_{N-1}) the basis string
// (i_0, ..., i_{N-1}) lives at flat index
//   i_0 * d_1 * ... * d_{N-1} + ... + i_{N-2} * d_{N-1} + i_{N-1}.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace borromean {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Largest total Hilbert-space dimension accepted anywhere in the library.
inline constexpr std::size_t kMaxTotalDimension = 4096;

/// Norm band inside which make_pure_state renormalizes instead of rejecting.
inline constexpr double kNormalizationBand = 1e-6;

/// Absolute tolerance for the Hermitian and unit-trace checks.
inline constexpr double kStructureTolerance = 1e-12;

/// Eigenvalues above this (negative) bound count as nonnegative.
inline constexpr double kEigenvalueFloor = -1e-10;

/// Ordered per-site dimensions of a register, each at least 2.
class SiteDims {
 public:
  explicit SiteDims(std::vector<int> dims);

  static SiteDims uniform(int sites, int d);

  [[nodiscard]] int sites() const noexcept { return static_cast<int>(dims_.size()); }
  [[nodiscard]] int operator[](int site) const { return dims_.at(static_cast<std::size_t>(site)); }
  [[nodiscard]] std::size_t total() const noexcept { return total_; }
  [[nodiscard]] const std::vector<int>& values() const noexcept { return dims_; }

  /// Product of the dimensions strictly after `site`.
  [[nodiscard]] std::size_t stride(int site) const;

  [[nodiscard]] bool is_uniform() const noexcept;

  /// Dims with `site` removed. Requires at least two sites.
  [[nodiscard]] SiteDims without(int site) const;

  [[nodiscard]] SiteDims concat(const SiteDims& other) const;

  [[nodiscard]] std::vector<int> unflatten(std::size_t index) const;
  [[nodiscard]] std::size_t flatten(std::span<const int> digits) const;

  friend bool operator==(const SiteDims&, const SiteDims&) = default;

 private:
  std::vector<int> dims_;
  std::size_t total_ = 1;
};

/// Unit-norm amplitude vector over a SiteDims register.
class PureState {
 public:
  [[nodiscard]] const SiteDims& dims() const noexcept { return dims_; }
  [[nodiscard]] const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  [[nodiscard]] int sites() const noexcept { return dims_.sites(); }
  [[nodiscard]] Complex operator[](std::size_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }

 private:
  friend PureState make_pure_state(SiteDims dims, ComplexVector amplitudes);
  PureState(SiteDims dims, ComplexVector amplitudes) : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {}

  SiteDims dims_;
  ComplexVector amplitudes_;
};

/// Validates the length and renormalizes when the norm is within
/// kNormalizationBand of one. Throws std::invalid_argument otherwise.
PureState make_pure_state(SiteDims dims, ComplexVector amplitudes);

/// Hermitian, unit-trace operator on a SiteDims register.
class DensityMatrix {
 public:
  /// Checks shape, Hermiticity and unit trace (kStructureTolerance).
  DensityMatrix(SiteDims dims, ComplexMatrix entries);

  /// As the constructor, and additionally rejects eigenvalues below kEigenvalueFloor.
  static DensityMatrix from_matrix(SiteDims dims, ComplexMatrix entries);

  [[nodiscard]] const SiteDims& dims() const noexcept { return dims_; }
  [[nodiscard]] const ComplexMatrix& entries() const noexcept { return entries_; }
  [[nodiscard]] int sites() const noexcept { return dims_.sites(); }
  [[nodiscard]] Complex operator()(std::size_t row, std::size_t col) const {
    return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

 private:
  SiteDims dims_;
  ComplexMatrix entries_;
};

/// |psi><psi|.
DensityMatrix density_of(const PureState& psi);

/// Kronecker product; the dims of `b` are appended to those of `a`.
PureState tensor_product(const PureState& a, const PureState& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// Traces out one site. Requires at least two sites.
DensityMatrix partial_trace(const DensityMatrix& rho, int site);

/// Same contraction evaluated straight from the amplitudes of a pure state,
/// without forming the full density matrix.
DensityMatrix partial_trace(const PureState& psi, int site);

/// Reduced state of a single site.
DensityMatrix single_site_marginal(const DensityMatrix& rho, int site);
DensityMatrix single_site_marginal(const PureState& psi, int site);

double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Full trace norm ||a - b||_1, the sum of absolute eigenvalues of the
/// difference. Halve it for the conventional trace distance.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// tr(rho^2).
double purity(const DensityMatrix& rho);

/// Eigenvalues in ascending order with values in [kEigenvalueFloor, 0) clamped to zero.
std::vector<double> spectrum(const DensityMatrix& rho);

}  // namespace borromean
