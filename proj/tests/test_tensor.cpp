#include "borromean/named_states.hpp"
#include "borromean/search.hpp"
#include "borromean/tensor.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace borromean;

namespace {

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

ComplexMatrix diag(std::initializer_list<double> values) {
  ComplexVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double x : values) v(k++) = x;
  return v.asDiagonal();
}

// Random dims with N <= 4 sites and d <= 3, seeded.
SiteDims random_dims(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> sites(2, 4);
  std::uniform_int_distribution<int> local(2, 3);
  std::vector<int> dims(static_cast<std::size_t>(sites(rng)));
  for (int& d : dims) d = local(rng);
  return SiteDims(dims);
}

}  // namespace

TEST(SiteDims, RejectsSmallAndOversizedRegisters) {
  EXPECT_THROW(SiteDims({2, 1}), std::invalid_argument);
  EXPECT_THROW(SiteDims(std::vector<int>{}), std::invalid_argument);
  EXPECT_THROW(SiteDims::uniform(13, 2), std::invalid_argument);
  EXPECT_NO_THROW(SiteDims::uniform(12, 2));
  const SiteDims dims({2, 3, 4});
  EXPECT_EQ(dims.total(), 24U);
  EXPECT_EQ(dims.stride(0), 12U);
  EXPECT_EQ(dims.flatten(std::vector<int>{1, 2, 3}), 23U);
  EXPECT_EQ(dims.unflatten(23), (std::vector<int>{1, 2, 3}));
}

TEST(PureState, BasisStateAndGhzAreAccepted) {
  ComplexVector zero(2);
  zero << 1.0, 0.0;
  const PureState ket0 = make_pure_state(SiteDims({2}), zero);
  EXPECT_EQ(ket0[0], Complex(1.0));

  ComplexVector ghz = ComplexVector::Zero(8);
  ghz(0) = ghz(7) = 1.0 / std::sqrt(2.0);
  EXPECT_NO_THROW(make_pure_state(SiteDims::uniform(3, 2), ghz));
}

TEST(PureState, RejectsOffBandNormAndWrongLength) {
  ComplexVector ones(2);
  ones << 1.0, 1.0;
  EXPECT_THROW(make_pure_state(SiteDims({2}), ones), std::invalid_argument);
  EXPECT_THROW(make_pure_state(SiteDims({2, 2}), ones / std::sqrt(2.0)), std::invalid_argument);
}

TEST(PureState, RenormalizesInsideTheBand) {
  ComplexVector v(2);
  v << 1.0 + 5e-7, 0.0;
  const PureState psi = make_pure_state(SiteDims({2}), v);
  EXPECT_NEAR(psi.amplitudes().norm(), 1.0, 1e-15);
}

TEST(DensityMatrix, RejectsNonHermitianNonUnitTraceAndNegative) {
  ComplexMatrix m = diag({0.5, 0.5});
  m(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix(SiteDims({2}), m), std::invalid_argument);
  EXPECT_THROW(DensityMatrix(SiteDims({2}), diag({1.0, 1.0})), std::invalid_argument);
  EXPECT_THROW(DensityMatrix::from_matrix(SiteDims({2}), diag({1.5, -0.5})), std::invalid_argument);
  EXPECT_NO_THROW(DensityMatrix::from_matrix(SiteDims({2}), diag({1.0, 0.0})));
}

TEST(DensityOf, MatchesOuterProducts) {
  EXPECT_LT(max_abs_diff(density_of(basis_state(SiteDims({2}), {0})).entries(), diag({1.0, 0.0})), 1e-15);
  const ComplexMatrix plus = density_of(plus_state()).entries();
  EXPECT_LT(max_abs_diff(plus, ComplexMatrix::Constant(2, 2, 0.5)), 1e-15);

  const ComplexMatrix ghz = density_of(ghz_state(3)).entries();
  ComplexMatrix expected = ComplexMatrix::Zero(8, 8);
  expected(0, 0) = expected(0, 7) = expected(7, 0) = expected(7, 7) = 0.5;
  EXPECT_LT(max_abs_diff(ghz, expected), 1e-15);
  EXPECT_NEAR(purity(density_of(ghz_state(3))), 1.0, 1e-14);
}

TEST(TensorProduct, KroneckerOfStates) {
  const PureState a = tensor_product(basis_state(SiteDims({2}), {0}), basis_state(SiteDims({2}), {1}));
  EXPECT_EQ(a.dims(), SiteDims({2, 2}));
  EXPECT_EQ(a[1], Complex(1.0));

  const PureState pp = tensor_product(plus_state(), plus_state());
  EXPECT_LT((pp.amplitudes() - ComplexVector::Constant(4, 0.5)).cwiseAbs().maxCoeff(), 1e-15);

  const PureState bell0 = tensor_product(bell_state(), basis_state(SiteDims({2}), {0}));
  const ComplexVector expected = oracle::kron_vectors(bell_state().amplitudes(), ComplexVector::Unit(2, 0));
  EXPECT_LT((bell0.amplitudes() - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(std::abs(bell0[0]), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(bell0[6]), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(PartialTrace, KnownValues) {
  const DensityMatrix bell = density_of(bell_state());
  EXPECT_LT(max_abs_diff(partial_trace(bell, 0).entries(), diag({0.5, 0.5})), 1e-15);
  EXPECT_LT(max_abs_diff(partial_trace(bell, 0).entries(), oracle::partial_trace({2, 2}, bell.entries(), 0)), 1e-15);

  const DensityMatrix zp = density_of(tensor_product(basis_state(SiteDims({2}), {0}), plus_state()));
  EXPECT_LT(max_abs_diff(partial_trace(zp, 0).entries(), density_of(plus_state()).entries()), 1e-15);

  const DensityMatrix ghz = density_of(ghz_state(3));
  EXPECT_LT(max_abs_diff(partial_trace(ghz, 2).entries(), diag({0.5, 0.0, 0.0, 0.5})), 1e-15);
}

TEST(PartialTrace, ErrorPaths) {
  const DensityMatrix ghz = density_of(ghz_state(3));
  EXPECT_THROW(partial_trace(ghz, 3), std::invalid_argument);
  EXPECT_THROW(partial_trace(ghz, -1), std::invalid_argument);
  EXPECT_THROW(partial_trace(density_of(plus_state()), 0), std::invalid_argument);
  EXPECT_THROW(partial_trace(plus_state(), 0), std::invalid_argument);
}

TEST(PartialTrace, MatchesBruteForceOracleOnRandomStates) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const SiteDims dims = random_dims(rng);
    const PureState psi = haar_random_state(dims, 100 + static_cast<std::uint64_t>(trial));
    const DensityMatrix rho = density_of(psi);
    for (int site = 0; site < dims.sites(); ++site) {
      const ComplexMatrix expected = oracle::partial_trace(dims.values(), rho.entries(), site);
      EXPECT_LE(max_abs_diff(partial_trace(rho, site).entries(), expected), 1e-12);
      EXPECT_LE(max_abs_diff(partial_trace(psi, site).entries(), expected), 1e-12);
      EXPECT_NEAR(partial_trace(rho, site).entries().trace().real(), 1.0, 1e-12);
    }
  }
}

TEST(PartialTrace, TracingCommutes) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    SiteDims dims = random_dims(rng);
    if (dims.sites() < 3) dims = dims.concat(SiteDims({2}));
    const DensityMatrix rho = density_of(haar_random_state(dims, static_cast<std::uint64_t>(trial)));
    for (int r = 0; r < dims.sites(); ++r) {
      for (int s = r + 1; s < dims.sites(); ++s) {
        // Tracing r first shifts s down by one; tracing s first leaves r in place.
        const ComplexMatrix rs = partial_trace(partial_trace(rho, r), s - 1).entries();
        const ComplexMatrix sr = partial_trace(partial_trace(rho, s), r).entries();
        EXPECT_LE(max_abs_diff(rs, sr), 1e-12);
      }
    }
  }
}

TEST(PartialTrace, ReturnsRemainingFactorOfProducts) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PureState a = haar_random_state(SiteDims({2, 3}), seed);
    const PureState b = haar_random_state(SiteDims({3}), seed + 100);
    const DensityMatrix rho = density_of(tensor_product(a, b));
    EXPECT_LE(max_abs_diff(partial_trace(rho, 2).entries(), density_of(a).entries()), 1e-12);
  }
}

TEST(SingleSiteMarginal, KnownValues) {
  for (int s = 0; s < 3; ++s) {
    EXPECT_LT(max_abs_diff(single_site_marginal(density_of(ghz_state(3)), s).entries(), diag({0.5, 0.5})), 1e-15);
  }
  const PureState zo = tensor_product(basis_state(SiteDims({2}), {0}), basis_state(SiteDims({2}), {1}));
  EXPECT_LT(max_abs_diff(single_site_marginal(density_of(zo), 1).entries(), diag({0.0, 1.0})), 1e-15);

  const DensityMatrix w = density_of(w_state(3));
  EXPECT_LT(max_abs_diff(single_site_marginal(w, 0).entries(), diag({2.0 / 3.0, 1.0 / 3.0})), 1e-15);
  EXPECT_LT(max_abs_diff(single_site_marginal(w, 0).entries(), oracle::marginal({2, 2, 2}, w.entries(), 0)), 1e-15);
  EXPECT_THROW(single_site_marginal(w, 3), std::invalid_argument);
}

TEST(SingleSiteMarginal, EqualsIteratedPartialTraceInAnyOrder) {
  const SiteDims dims({2, 3, 2});
  const DensityMatrix rho = density_of(haar_random_state(dims, 11));
  const ComplexMatrix direct = single_site_marginal(rho, 1).entries();
  const ComplexMatrix forward = partial_trace(partial_trace(rho, 0), 1).entries();
  const ComplexMatrix backward = partial_trace(partial_trace(rho, 2), 0).entries();
  EXPECT_LE(max_abs_diff(direct, forward), 1e-12);
  EXPECT_LE(max_abs_diff(direct, backward), 1e-12);
  EXPECT_LE(max_abs_diff(direct, single_site_marginal(haar_random_state(dims, 11), 1).entries()), 1e-12);
}

TEST(Distances, KnownValues) {
  const DensityMatrix zero(SiteDims({2}), diag({1.0, 0.0}));
  const DensityMatrix one(SiteDims({2}), diag({0.0, 1.0}));
  EXPECT_EQ(frobenius_distance(zero, zero), 0.0);
  EXPECT_EQ(trace_distance(zero, zero), 0.0);
  EXPECT_NEAR(frobenius_distance(zero, one), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(trace_distance(zero, one), 2.0, 1e-15);

  // GHZ two-site reduction against the product of its marginals: difference diag(1/4, -1/4, -1/4, 1/4).
  const DensityMatrix reduced = partial_trace(density_of(ghz_state(3)), 2);
  const DensityMatrix product(SiteDims({2, 2}), diag({0.25, 0.25, 0.25, 0.25}));
  EXPECT_NEAR(frobenius_distance(reduced, product), 0.5, 1e-15);
  EXPECT_NEAR(trace_distance(reduced, product), 1.0, 1e-15);
  EXPECT_THROW(frobenius_distance(zero, reduced), std::invalid_argument);
  EXPECT_THROW(trace_distance(zero, reduced), std::invalid_argument);
}

TEST(Distances, TriangleInequalityOnRandomTriples) {
  const SiteDims dims({2, 3});
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    // Mixtures of pure states give full-rank-ish inputs.
    auto mixed = [&](std::uint64_t s) {
      const ComplexMatrix m = 0.5 * density_of(haar_random_state(dims, s)).entries() +
                              0.5 * density_of(haar_random_state(dims, s + 1000)).entries();
      return DensityMatrix(dims, m);
    };
    const DensityMatrix a = mixed(3 * seed), b = mixed(3 * seed + 1), c = mixed(3 * seed + 2);
    EXPECT_LE(frobenius_distance(a, c), frobenius_distance(a, b) + frobenius_distance(b, c) + 1e-10);
    EXPECT_LE(trace_distance(a, c), trace_distance(a, b) + trace_distance(b, c) + 1e-10);
    EXPECT_NEAR(trace_distance(a, b), trace_distance(b, a), 1e-12);
  }
}

TEST(Purity, KnownValues) {
  EXPECT_NEAR(purity(density_of(basis_state(SiteDims({2}), {0}))), 1.0, 1e-15);
  EXPECT_NEAR(purity(DensityMatrix(SiteDims({2}), diag({0.5, 0.5}))), 0.5, 1e-15);
  EXPECT_NEAR(purity(single_site_marginal(density_of(ghz_state(3)), 1)), 0.5, 1e-15);
}

TEST(Spectrum, ClampsTinyNegativeEigenvalues) {
  const std::vector<double> values = spectrum(partial_trace(density_of(ghz_state(3)), 0));
  ASSERT_EQ(values.size(), 4U);
  for (double v : values) EXPECT_GE(v, 0.0);
  EXPECT_NEAR(values.back(), 0.5, 1e-15);
}

TEST(TensorCore, HeterogeneousDims) {
  const SiteDims dims({3, 2, 4});
  const PureState psi = haar_random_state(dims, 5);
  const DensityMatrix rho = density_of(psi);
  EXPECT_EQ(partial_trace(rho, 1).dims(), SiteDims({3, 4}));
  EXPECT_EQ(single_site_marginal(rho, 2).dims(), SiteDims({4}));
  for (int s = 0; s < 3; ++s) {
    EXPECT_LE(max_abs_diff(single_site_marginal(rho, s).entries(), oracle::marginal(dims.values(), rho.entries(), s)),
              1e-12);
  }
}
