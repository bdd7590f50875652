#include "borromean/product.hpp"

#include <algorithm>
#include <stdexcept>

namespace borromean {

namespace {

void check_tolerance(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

std::vector<DensityMatrix> marginals_of(const DensityMatrix& rho) {
  std::vector<DensityMatrix> factors;
  factors.reserve(static_cast<std::size_t>(rho.sites()));
  for (int s = 0; s < rho.sites(); ++s) factors.push_back(single_site_marginal(rho, s));
  return factors;
}

DensityMatrix product_of(const std::vector<DensityMatrix>& factors) {
  DensityMatrix joined = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) joined = tensor_product(joined, factors[k]);
  return joined;
}

BorromeanReport summarize(std::vector<double> frobenius, std::vector<double> trace, double tol) {
  BorromeanReport report;
  report.max_deviation = *std::max_element(frobenius.begin(), frobenius.end());
  report.per_site_deviation = std::move(frobenius);
  report.per_site_trace_deviation = std::move(trace);
  report.tolerance = tol;
  report.is_borromean = report.max_deviation <= tol;
  return report;
}

void check_borromean_sites(int sites) {
  if (sites < 3) throw std::invalid_argument("Borromean check needs at least three sites");
}

}  // namespace

ProductReport product_deviation(const DensityMatrix& rho, double tol) {
  check_tolerance(tol);
  if (rho.sites() < 2) throw std::invalid_argument("product test needs at least two sites");
  ProductReport report;
  report.factors = marginals_of(rho);
  const DensityMatrix candidate = product_of(report.factors);
  report.deviation_frobenius = frobenius_distance(rho, candidate);
  report.deviation_trace = trace_distance(rho, candidate);
  report.tolerance = tol;
  report.is_product = report.deviation_frobenius <= tol;
  return report;
}

bool is_product(const DensityMatrix& rho, double tol) {
  check_tolerance(tol);
  return product_deviation(rho, tol).is_product;
}

BorromeanReport borromean_deviation(const DensityMatrix& rho, double tol) {
  check_tolerance(tol);
  check_borromean_sites(rho.sites());
  std::vector<double> frobenius;
  std::vector<double> trace;
  for (int r = 0; r < rho.sites(); ++r) {
    const ProductReport p = product_deviation(partial_trace(rho, r), tol);
    frobenius.push_back(p.deviation_frobenius);
    trace.push_back(p.deviation_trace);
  }
  return summarize(std::move(frobenius), std::move(trace), tol);
}

BorromeanReport borromean_deviation(const PureState& psi, double tol) {
  check_tolerance(tol);
  check_borromean_sites(psi.sites());
  std::vector<double> frobenius;
  std::vector<double> trace;
  for (int r = 0; r < psi.sites(); ++r) {
    const ProductReport p = product_deviation(partial_trace(psi, r), tol);
    frobenius.push_back(p.deviation_frobenius);
    trace.push_back(p.deviation_trace);
  }
  return summarize(std::move(frobenius), std::move(trace), tol);
}

bool is_borromean(const DensityMatrix& rho, double tol) {
  check_tolerance(tol);
  return borromean_deviation(rho, tol).is_borromean;
}

double max_borromean_frobenius_deviation(const PureState& psi) {
  check_borromean_sites(psi.sites());
  double worst = 0.0;
  for (int r = 0; r < psi.sites(); ++r) {
    const DensityMatrix reduced = partial_trace(psi, r);
    worst = std::max(worst, frobenius_distance(reduced, product_of(marginals_of(reduced))));
  }
  return worst;
}

double linear_entropy_entanglement(const PureState& psi) {
  if (psi.sites() < 2) throw std::invalid_argument("entanglement needs at least two sites");
  double worst = 0.0;
  for (int s = 0; s < psi.sites(); ++s) {
    worst = std::max(worst, 1.0 - purity(single_site_marginal(psi, s)));
  }
  return worst;
}

}  // namespace borromean
