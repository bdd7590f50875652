#include "borromean/schmidt.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

namespace borromean {

namespace {

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Index product_of(const std::vector<int>& dims, std::size_t begin, std::size_t end) {
  Eigen::Index p = 1;
  for (std::size_t k = begin; k < end; ++k) p *= dims[k];
  return p;
}

// out(L, a, R) = sum_b op(a, b) * in(L, b, R) along `axis`; the axis takes op.rows() values afterwards.
ComplexVector apply_on_axis(const ComplexVector& in, std::vector<int>& dims, std::size_t axis, const ComplexMatrix& op) {
  const Eigen::Index left = product_of(dims, 0, axis);
  const Eigen::Index right = product_of(dims, axis + 1, dims.size());
  const Eigen::Index from = dims[axis];
  const Eigen::Index to = op.rows();
  ComplexVector out(left * to * right);
  for (Eigen::Index l = 0; l < left; ++l) {
    Eigen::Map<const RowMajorMatrix> block(in.data() + l * from * right, from, right);
    Eigen::Map<RowMajorMatrix> target(out.data() + l * to * right, to, right);
    target.noalias() = op * block;
  }
  dims[axis] = static_cast<int>(to);
  return out;
}

// Contracts every axis except `keep` against the conjugated factors.
ComplexVector contract_all_but(const ComplexVector& tensor, const std::vector<int>& dims,
                               const std::vector<ComplexVector>& factors, std::size_t keep) {
  ComplexVector current = tensor;
  std::vector<int> shape = dims;
  // Contract from the last axis so earlier axis positions stay valid.
  for (std::size_t axis = dims.size(); axis-- > 0;) {
    if (axis == keep) continue;
    current = apply_on_axis(current, shape, axis, factors[axis].adjoint());
  }
  return current;
}

Complex full_overlap(const ComplexVector& tensor, const std::vector<int>& dims, const std::vector<ComplexVector>& factors) {
  const ComplexVector v = contract_all_but(tensor, dims, factors, 0);
  return factors[0].dot(v);
}

// First entry of maximal magnitude becomes real and positive.
void canonicalize_phase(ComplexVector& f) {
  Eigen::Index pivot = 0;
  for (Eigen::Index i = 1; i < f.size(); ++i) {
    if (std::abs(f(i)) > std::abs(f(pivot))) pivot = i;
  }
  const double mag = std::abs(f(pivot));
  if (mag > 0.0) f *= std::conj(f(pivot)) / mag;
}

struct RestartResult {
  std::vector<ComplexVector> factors;
  double overlap = 0.0;
  bool converged = false;
  int sweeps = 0;
  std::vector<double> history;
};

RestartResult run_restart(const ComplexVector& tensor, const std::vector<int>& dims, double tol, int max_sweeps,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  RestartResult result;
  for (int d : dims) {
    ComplexVector f(d);
    for (int i = 0; i < d; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      f(i) = Complex(re, im);
    }
    f.normalize();
    result.factors.push_back(std::move(f));
  }
  double overlap = std::abs(full_overlap(tensor, dims, result.factors));
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (std::size_t r = 0; r < dims.size(); ++r) {
      if (dims[r] == 1) continue;
      const ComplexVector v = contract_all_but(tensor, dims, result.factors, r);
      const double norm = v.norm();
      if (norm > 0.0) result.factors[r] = v / norm;
    }
    const double updated = std::abs(full_overlap(tensor, dims, result.factors));
    result.history.push_back(updated);
    result.sweeps = sweep + 1;
    const double gain = updated - overlap;
    overlap = updated;
    if (gain < tol) {
      result.converged = true;
      break;
    }
  }
  result.overlap = overlap;
  return result;
}

ProductApproximation maximize_overlap(const ComplexVector& tensor, const std::vector<int>& dims, int restarts,
                                      double tol, std::uint64_t seed, int max_sweeps) {
  if (restarts < 1) throw std::invalid_argument("need at least one restart");
  if (!(tol > 0.0)) throw std::invalid_argument("sweep tolerance must be positive");
  if (max_sweeps < 1) throw std::invalid_argument("sweep cap must be positive");
  ProductApproximation best;
  best.overlap = -1.0;
  for (int k = 0; k < restarts; ++k) {
    RestartResult run = run_restart(tensor, dims, tol, max_sweeps, seed + static_cast<std::uint64_t>(k));
    if (run.overlap > best.overlap) {
      best.factors = std::move(run.factors);
      best.overlap = run.overlap;
      best.converged = run.converged;
      best.sweeps = run.sweeps;
      best.best_restart = k;
      best.sweep_overlaps = std::move(run.history);
    }
  }
  for (ComplexVector& f : best.factors) canonicalize_phase(f);
  return best;
}

// Unitary whose first column is `first`; the rest come from pivoted
// Gram-Schmidt over the standard basis, largest residual first, lowest index on ties.
ComplexMatrix complete_unitary(const ComplexVector& first) {
  const Eigen::Index m = first.size();
  ComplexMatrix q(m, m);
  q.col(0) = first.normalized();
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  for (Eigen::Index filled = 1; filled < m; ++filled) {
    Eigen::Index pick = -1;
    double best_norm = -1.0;
    ComplexVector best_residual;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      ComplexVector e = ComplexVector::Unit(m, j);
      ComplexVector residual = e - q.leftCols(filled) * (q.leftCols(filled).adjoint() * e);
      const double n = residual.norm();
      if (n > best_norm) {
        best_norm = n;
        pick = j;
        best_residual = std::move(residual);
      }
    }
    used[static_cast<std::size_t>(pick)] = true;
    // Second pass restores orthogonality lost to cancellation.
    best_residual -= q.leftCols(filled) * (q.leftCols(filled).adjoint() * best_residual);
    q.col(filled) = best_residual.normalized();
  }
  return q;
}

ComplexVector to_local_coefficients(const ComplexVector& amplitudes, const std::vector<int>& dims,
                                    const std::vector<ComplexMatrix>& bases) {
  ComplexVector current = amplitudes;
  std::vector<int> shape = dims;
  for (std::size_t axis = 0; axis < dims.size(); ++axis) {
    current = apply_on_axis(current, shape, axis, bases[axis].adjoint());
  }
  return current;
}

// Visits every multi-index of `dims` in row-major order.
void for_each_index(const std::vector<int>& dims, const std::function<void(const std::vector<int>&, Eigen::Index)>& visit) {
  std::vector<int> digits(dims.size(), 0);
  const Eigen::Index total = product_of(dims, 0, dims.size());
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    visit(digits, flat);
    for (std::size_t k = dims.size(); k-- > 0;) {
      if (++digits[k] < dims[k]) break;
      digits[k] = 0;
    }
  }
}

Eigen::Index flat_index(const std::vector<int>& dims, const std::vector<int>& digits) {
  Eigen::Index index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
  return index;
}

// Entries whose digits are all >= level.
ComplexVector tail_block(const ComplexVector& coefficients, const std::vector<int>& dims, int level) {
  std::vector<int> tail_dims(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) tail_dims[k] = dims[k] - level;
  ComplexVector block(product_of(tail_dims, 0, tail_dims.size()));
  std::vector<int> shifted(dims.size());
  for_each_index(tail_dims, [&](const std::vector<int>& digits, Eigen::Index flat) {
    for (std::size_t k = 0; k < digits.size(); ++k) shifted[k] = digits[k] + level;
    block(flat) = coefficients(flat_index(dims, shifted));
  });
  return block;
}

int uniform_dimension(const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("coefficient tensor has no sites");
  if (!std::all_of(dims.begin(), dims.end(), [&](int d) { return d == dims.front(); })) {
    throw std::invalid_argument("normal-form properties are defined for equal site dimensions only");
  }
  return dims.front();
}

}  // namespace

ProductApproximation closest_product_state(const PureState& psi, int restarts, double tol, std::uint64_t seed,
                                           int max_sweeps) {
  return maximize_overlap(psi.amplitudes(), psi.dims().values(), restarts, tol, seed, max_sweeps);
}

Complex CoefficientTensor::at(const std::vector<int>& index) const {
  if (index.size() != dims.size()) throw std::invalid_argument("multi-index has wrong length");
  return values(flat_index(dims, index));
}

int default_restart_count(const SiteDims& dims) {
  return std::max(16, 8 * dims.sites() * dims[0]);
}

NormalForm normal_form(const PureState& psi, int restarts, double tol, std::uint64_t seed, int max_sweeps) {
  if (!psi.dims().is_uniform()) {
    throw std::invalid_argument("normal form requires equal site dimensions");
  }
  if (restarts < 1) throw std::invalid_argument("need at least one restart");
  const std::vector<int>& dims = psi.dims().values();
  const int d = dims.front();
  const std::size_t sites = dims.size();

  NormalForm nf;
  nf.local_dimension = d;
  nf.restart_count = restarts;
  nf.seed = seed;
  nf.converged = true;
  nf.local_bases.assign(sites, ComplexMatrix::Identity(d, d));

  for (int level = 0; level < d; ++level) {
    const ComplexVector coefficients = to_local_coefficients(psi.amplitudes(), dims, nf.local_bases);
    ComplexVector tail = tail_block(coefficients, dims, level);
    const double mass = tail.norm();
    if (mass < kDeflationFloor) break;
    tail /= mass;

    const int m = d - level;
    std::vector<int> tail_dims(sites, m);
    std::vector<ComplexVector> factors;
    if (m == 1) {
      factors.assign(sites, ComplexVector::Ones(1));
    } else {
      ProductApproximation best = maximize_overlap(tail, tail_dims, restarts, tol, seed, max_sweeps);
      nf.converged = nf.converged && best.converged;
      ++nf.levels_optimized;
      factors = std::move(best.factors);
    }
    // Rotate site 0 so the new diagonal coefficient is real and nonnegative.
    const Complex diagonal = full_overlap(tail, tail_dims, factors);
    if (std::abs(diagonal) > 0.0) factors[0] *= diagonal / std::abs(diagonal);

    for (std::size_t r = 0; r < sites; ++r) {
      const ComplexMatrix rotation = complete_unitary(factors[r]);
      nf.local_bases[r].rightCols(m) = (nf.local_bases[r].rightCols(m) * rotation).eval();
    }
  }

  nf.coefficients.dims = dims;
  nf.coefficients.values = to_local_coefficients(psi.amplitudes(), dims, nf.local_bases);
  nf.achieved_overlap = std::abs(nf.coefficients.values(0));
  return nf;
}

ComplexVector reconstruct(const NormalForm& nf) {
  ComplexVector current = nf.coefficients.values;
  std::vector<int> shape = nf.coefficients.dims;
  for (std::size_t axis = 0; axis < shape.size(); ++axis) {
    current = apply_on_axis(current, shape, axis, nf.local_bases[axis]);
  }
  return current;
}

PropertyViolationReport verify_normal_form(const CoefficientTensor& coefficients, double tol) {
  const int d = uniform_dimension(coefficients.dims);
  const std::size_t sites = coefficients.dims.size();
  PropertyViolationReport report;
  report.tolerance = tol;

  std::vector<double> diagonal(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) diagonal[static_cast<std::size_t>(i)] = std::abs(coefficients.at(std::vector<int>(sites, i)));

  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      for (std::size_t r = 0; r < sites; ++r) {
        std::vector<int> index(sites, i);
        index[r] = j;
        const double magnitude = std::abs(coefficients.at(index));
        report.zero_pattern_violation = std::max(report.zero_pattern_violation, magnitude);
        if (magnitude > tol) report.offenders.push_back({NormalFormProperty::zero_pattern, index, magnitude});
      }
    }
  }

  for_each_index(coefficients.dims, [&](const std::vector<int>& digits, Eigen::Index flat) {
    const int lowest = *std::min_element(digits.begin(), digits.end());
    const double magnitude = std::abs(coefficients.values(flat));
    double excess = 0.0;
    for (int i = 0; i <= lowest; ++i) excess = std::max(excess, magnitude - diagonal[static_cast<std::size_t>(i)]);
    report.dominance_violation = std::max(report.dominance_violation, excess);
    if (excess > tol) report.offenders.push_back({NormalFormProperty::dominance, digits, excess});
  });
  return report;
}

PropertyViolationReport verify_normal_form(const NormalForm& nf, double tol) {
  return verify_normal_form(nf.coefficients, tol);
}

std::vector<MixedEntry> vanishing_cascade_check(const CoefficientTensor& coefficients, double tol) {
  std::vector<MixedEntry> mixed;
  for_each_index(coefficients.dims, [&](const std::vector<int>& digits, Eigen::Index flat) {
    const bool constant = std::all_of(digits.begin(), digits.end(), [&](int v) { return v == digits.front(); });
    const double magnitude = std::abs(coefficients.values(flat));
    if (!constant && magnitude > tol) mixed.push_back({digits, magnitude});
  });
  return mixed;
}

double bipartite_crosscheck(const PureState& psi, int restarts, double tol, std::uint64_t seed) {
  if (psi.sites() != 2) throw std::invalid_argument("bipartite cross-check needs exactly two sites");
  const NormalForm nf = normal_form(psi, restarts, tol, seed);
  const int d = nf.local_dimension;
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> matrix(
      psi.amplitudes().data(), d, d);
  const Eigen::VectorXd singular = Eigen::JacobiSVD<ComplexMatrix>(ComplexMatrix(matrix)).singularValues();
  std::vector<double> diagonal;
  for (int i = 0; i < d; ++i) diagonal.push_back(std::abs(nf.coefficients.at({i, i})));
  std::sort(diagonal.begin(), diagonal.end(), std::greater<>());
  double worst = 0.0;
  for (int i = 0; i < d; ++i) worst = std::max(worst, std::abs(diagonal[static_cast<std::size_t>(i)] - singular(i)));
  return worst;
}

}  // namespace borromean
