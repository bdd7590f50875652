#include "borromean/tensor.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace borromean {

namespace {

void check_site(const SiteDims& dims, int site) {
  if (site < 0 || site >= dims.sites()) {
    throw std::invalid_argument("site " + std::to_string(site) + " out of range for " +
                                std::to_string(dims.sites()) + "-site register");
  }
}

void check_same_dims(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("density matrices have different site dimensions");
}

// Splits a flat index around `site` into (left block, local index, right block).
struct Split {
  Eigen::Index left;
  Eigen::Index local;
  Eigen::Index right;
};

Split split_around(const SiteDims& dims, int site) {
  const auto right = static_cast<Eigen::Index>(dims.stride(site));
  const auto local = static_cast<Eigen::Index>(dims[site]);
  const auto left = static_cast<Eigen::Index>(dims.total()) / (local * right);
  return {left, local, right};
}

}  // namespace

SiteDims::SiteDims(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("site dimension list is empty");
  for (int d : dims_) {
    if (d < 2) throw std::invalid_argument("every site dimension must be at least 2, got " + std::to_string(d));
    total_ *= static_cast<std::size_t>(d);
    if (total_ > kMaxTotalDimension) {
      throw std::invalid_argument("total dimension exceeds " + std::to_string(kMaxTotalDimension));
    }
  }
}

SiteDims SiteDims::uniform(int sites, int d) {
  if (sites < 1) throw std::invalid_argument("register needs at least one site");
  return SiteDims(std::vector<int>(static_cast<std::size_t>(sites), d));
}

std::size_t SiteDims::stride(int site) const {
  std::size_t s = 1;
  for (std::size_t k = static_cast<std::size_t>(site) + 1; k < dims_.size(); ++k) s *= static_cast<std::size_t>(dims_[k]);
  return s;
}

bool SiteDims::is_uniform() const noexcept {
  return std::all_of(dims_.begin(), dims_.end(), [&](int d) { return d == dims_.front(); });
}

SiteDims SiteDims::without(int site) const {
  if (sites() < 2) throw std::invalid_argument("cannot remove the only site of a register");
  if (site < 0 || site >= sites()) throw std::invalid_argument("site out of range");
  std::vector<int> rest = dims_;
  rest.erase(rest.begin() + site);
  return SiteDims(std::move(rest));
}

SiteDims SiteDims::concat(const SiteDims& other) const {
  std::vector<int> joined = dims_;
  joined.insert(joined.end(), other.dims_.begin(), other.dims_.end());
  return SiteDims(std::move(joined));
}

std::vector<int> SiteDims::unflatten(std::size_t index) const {
  std::vector<int> digits(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    const auto d = static_cast<std::size_t>(dims_[k]);
    digits[k] = static_cast<int>(index % d);
    index /= d;
  }
  return digits;
}

std::size_t SiteDims::flatten(std::span<const int> digits) const {
  if (digits.size() != dims_.size()) throw std::invalid_argument("multi-index has wrong length");
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (digits[k] < 0 || digits[k] >= dims_[k]) throw std::invalid_argument("multi-index digit out of range");
    index = index * static_cast<std::size_t>(dims_[k]) + static_cast<std::size_t>(digits[k]);
  }
  return index;
}

PureState make_pure_state(SiteDims dims, ComplexVector amplitudes) {
  if (static_cast<std::size_t>(amplitudes.size()) != dims.total()) {
    throw std::invalid_argument("amplitude count " + std::to_string(amplitudes.size()) +
                                " does not match total dimension " + std::to_string(dims.total()));
  }
  if (!amplitudes.allFinite()) throw std::invalid_argument("amplitudes contain non-finite values");
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > kNormalizationBand) {
    throw std::invalid_argument("state norm " + std::to_string(norm) + " is outside the normalization band");
  }
  amplitudes /= norm;
  return PureState(std::move(dims), std::move(amplitudes));
}

DensityMatrix::DensityMatrix(SiteDims dims, ComplexMatrix entries)
    : dims_(std::move(dims)), entries_(std::move(entries)) {
  const auto n = static_cast<Eigen::Index>(dims_.total());
  if (entries_.rows() != n || entries_.cols() != n) {
    throw std::invalid_argument("density matrix shape does not match site dimensions");
  }
  if (!entries_.allFinite()) throw std::invalid_argument("density matrix has non-finite entries");
  const double asymmetry = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (asymmetry > kStructureTolerance) {
    throw std::invalid_argument("density matrix is not Hermitian (deviation " + std::to_string(asymmetry) + ")");
  }
  const Complex tr = entries_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kStructureTolerance) {
    throw std::invalid_argument("density matrix trace is not one");
  }
}

DensityMatrix DensityMatrix::from_matrix(SiteDims dims, ComplexMatrix entries) {
  DensityMatrix rho(std::move(dims), std::move(entries));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.entries_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < kEigenvalueFloor) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
  return rho;
}

DensityMatrix density_of(const PureState& psi) {
  const ComplexVector& a = psi.amplitudes();
  return DensityMatrix(psi.dims(), a * a.adjoint());
}

PureState tensor_product(const PureState& a, const PureState& b) {
  ComplexVector joined = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes());
  return make_pure_state(a.dims().concat(b.dims()), std::move(joined));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  ComplexMatrix joined = Eigen::kroneckerProduct(a.entries(), b.entries());
  return DensityMatrix(a.dims().concat(b.dims()), std::move(joined));
}

DensityMatrix partial_trace(const DensityMatrix& rho, int site) {
  check_site(rho.dims(), site);
  if (rho.sites() < 2) throw std::invalid_argument("partial trace needs at least two sites");
  const auto [left, local, right] = split_around(rho.dims(), site);
  const ComplexMatrix& m = rho.entries();
  ComplexMatrix out = ComplexMatrix::Zero(left * right, left * right);
  for (Eigen::Index l1 = 0; l1 < left; ++l1) {
    for (Eigen::Index l2 = 0; l2 < left; ++l2) {
      for (Eigen::Index i = 0; i < local; ++i) {
        const Eigen::Index row0 = (l1 * local + i) * right;
        const Eigen::Index col0 = (l2 * local + i) * right;
        out.block(l1 * right, l2 * right, right, right) += m.block(row0, col0, right, right);
      }
    }
  }
  return DensityMatrix(rho.dims().without(site), std::move(out));
}

DensityMatrix partial_trace(const PureState& psi, int site) {
  check_site(psi.dims(), site);
  if (psi.sites() < 2) throw std::invalid_argument("partial trace needs at least two sites");
  const auto [left, local, right] = split_around(psi.dims(), site);
  // Columns of `kept` are the unnormalized branches of the remaining sites,
  // one per value of the traced index.
  ComplexMatrix kept(left * right, local);
  const ComplexVector& a = psi.amplitudes();
  for (Eigen::Index l = 0; l < left; ++l) {
    for (Eigen::Index i = 0; i < local; ++i) {
      kept.block(l * right, i, right, 1) = a.segment((l * local + i) * right, right);
    }
  }
  ComplexMatrix out = kept * kept.adjoint();
  // The product is Hermitian only up to rounding; symmetrize so downstream checks see exact structure.
  out = (0.5 * (out + out.adjoint())).eval();
  return DensityMatrix(psi.dims().without(site), std::move(out));
}

DensityMatrix single_site_marginal(const DensityMatrix& rho, int site) {
  check_site(rho.dims(), site);
  const auto [left, local, right] = split_around(rho.dims(), site);
  const ComplexMatrix& m = rho.entries();
  ComplexMatrix out = ComplexMatrix::Zero(local, local);
  for (Eigen::Index i = 0; i < local; ++i) {
    for (Eigen::Index j = 0; j < local; ++j) {
      Complex sum = 0.0;
      for (Eigen::Index l = 0; l < left; ++l) {
        for (Eigen::Index r = 0; r < right; ++r) {
          sum += m((l * local + i) * right + r, (l * local + j) * right + r);
        }
      }
      out(i, j) = sum;
    }
  }
  return DensityMatrix(SiteDims({rho.dims()[site]}), std::move(out));
}

DensityMatrix single_site_marginal(const PureState& psi, int site) {
  check_site(psi.dims(), site);
  const auto [left, local, right] = split_around(psi.dims(), site);
  // Rows indexed by the site value, columns by everything else.
  ComplexMatrix unfolded(local, left * right);
  const ComplexVector& a = psi.amplitudes();
  for (Eigen::Index l = 0; l < left; ++l) {
    for (Eigen::Index i = 0; i < local; ++i) {
      unfolded.block(i, l * right, 1, right) = a.segment((l * local + i) * right, right).transpose();
    }
  }
  ComplexMatrix out = unfolded * unfolded.adjoint();
  out = (0.5 * (out + out.adjoint())).eval();
  return DensityMatrix(SiteDims({psi.dims()[site]}), std::move(out));
}

double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b) {
  check_same_dims(a, b);
  return (a.entries() - b.entries()).norm();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  check_same_dims(a, b);
  const ComplexMatrix diff = a.entries() - b.entries();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(diff, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

double purity(const DensityMatrix& rho) {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.entries().squaredNorm();
}

std::vector<double> spectrum(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.entries(), Eigen::EigenvaluesOnly);
  std::vector<double> values(solver.eigenvalues().begin(), solver.eigenvalues().end());
  for (double& v : values) {
    if (v < 0.0 && v >= kEigenvalueFloor) v = 0.0;
  }
  return values;
}

}  // namespace borromean
