#include "borromean/search.hpp"

#include "borromean/named_states.hpp"
#include "borromean/product.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

namespace borromean {

namespace {

ComplexVector gaussian_vector(Eigen::Index size, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(size);
  for (Eigen::Index k = 0; k < size; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(k) = Complex(re, im);
  }
  return v;
}

struct Evaluation {
  double borromean;
  double entanglement;
  double objective;
};

class PenalizedObjective {
 public:
  PenalizedObjective(double floor, double penalty) : floor_(floor), penalty_(penalty) {}

  Evaluation operator()(const PureState& psi) const {
    const double b = max_borromean_frobenius_deviation(psi);
    const double e = linear_entropy_entanglement(psi);
    const double shortfall = std::max(0.0, floor_ - e);
    return {b, e, b + penalty_ * shortfall * shortfall};
  }

 private:
  double floor_;
  double penalty_;
};

// Product of the leading eigenvectors of the single-site marginals, phased to
// have a real nonnegative overlap with psi.
ComplexVector marginal_anchor(const PureState& psi) {
  std::vector<ComplexVector> factors;
  for (int s = 0; s < psi.sites(); ++s) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(single_site_marginal(psi, s).entries());
    factors.push_back(solver.eigenvectors().col(solver.eigenvectors().cols() - 1));
  }
  ComplexVector anchor = product_state(factors).amplitudes();
  const Complex overlap = anchor.dot(psi.amplitudes());
  if (std::abs(overlap) > 0.0) anchor *= overlap / std::abs(overlap);
  return anchor;
}

}  // namespace

PureState haar_random_state(const SiteDims& dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ComplexVector amplitudes = gaussian_vector(static_cast<Eigen::Index>(dims.total()), rng);
  amplitudes.normalize();
  return make_pure_state(dims, std::move(amplitudes));
}

CampaignReport theorem_campaign(const CampaignConfig& config) {
  if (config.sample_count < 0) throw std::invalid_argument("sample count must be nonnegative");
  if (!(config.borromean_tol > 0.0) || !(config.product_tol > 0.0)) {
    throw std::invalid_argument("campaign tolerances must be positive");
  }
  if (config.dims.sites() < 3) throw std::invalid_argument("campaign needs at least three sites");

  CampaignReport report{config, {}, 0, std::numeric_limits<double>::infinity()};
  auto evaluate = [&](const std::string& label, std::optional<std::uint64_t> seed, const PureState& psi) {
    CampaignRecord record;
    record.label = label;
    record.seed = seed;
    record.borromean_deviation = borromean_deviation(psi, config.borromean_tol).max_deviation;
    record.product_deviation = product_deviation(density_of(psi), config.product_tol).deviation_frobenius;
    record.entanglement = linear_entropy_entanglement(psi);
    record.borromean = record.borromean_deviation <= config.borromean_tol;
    record.product = record.product_deviation <= config.product_tol;
    record.counterexample = record.borromean && !record.product;
    if (record.counterexample) ++report.counterexample_count;
    report.min_borromean_deviation = std::min(report.min_borromean_deviation, record.borromean_deviation);
    report.records.push_back(std::move(record));
  };

  for (int k = 0; k < config.sample_count; ++k) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(k);
    evaluate("haar", seed, haar_random_state(config.dims, seed));
  }
  for (const LabelledState& extra : config.injected) evaluate(extra.label, std::nullopt, extra.state);
  return report;
}

SearchReport counterexample_search(const SiteDims& dims, double entanglement_floor, int restarts, std::uint64_t seed,
                                   const SearchOptions& options) {
  if (dims.sites() < 3) throw std::invalid_argument("search needs at least three sites");
  if (!(entanglement_floor >= 0.0)) throw std::invalid_argument("entanglement floor must be nonnegative");
  if (restarts < 1) throw std::invalid_argument("need at least one restart");
  if (options.iterations < 0 || !(options.penalty >= 0.0) || !(options.initial_step > 0.0)) {
    throw std::invalid_argument("invalid search options");
  }
  for (const PureState& start : options.start_states) {
    if (start.dims() != dims) throw std::invalid_argument("start state dims do not match the search dims");
  }

  SearchReport report;
  report.dims = dims.values();
  report.entanglement_floor = entanglement_floor;
  report.restarts = restarts;
  report.seed = seed;
  report.penalty = options.penalty;
  report.iteration_cap = options.iterations;
  report.violation_tol = options.violation_tol;

  const PenalizedObjective objective(entanglement_floor, options.penalty);
  const auto size = static_cast<Eigen::Index>(dims.total());

  for (int k = 0; k < restarts; ++k) {
    RestartSummary summary;
    summary.seed = seed + static_cast<std::uint64_t>(k);
    std::mt19937_64 rng(summary.seed);

    summary.from_start_state = static_cast<std::size_t>(k) < options.start_states.size();
    PureState current = summary.from_start_state ? options.start_states[static_cast<std::size_t>(k)]
                                                 : make_pure_state(dims, gaussian_vector(size, rng).normalized());
    Evaluation value = objective(current);
    summary.initial_borromean = value.borromean;
    summary.initial_entanglement = value.entanglement;

    std::optional<PureState> best_state;
    auto consider = [&](const PureState& psi, const Evaluation& ev) {
      if (ev.entanglement < entanglement_floor) return;
      if (!summary.best_feasible_borromean || ev.borromean < *summary.best_feasible_borromean) {
        summary.best_feasible_borromean = ev.borromean;
        best_state = psi;
      }
    };
    consider(current, value);

    double step = options.initial_step;
    int iteration = 0;
    for (; iteration < options.iterations; ++iteration) {
      ComplexVector direction = gaussian_vector(size, rng);
      direction -= current.amplitudes().dot(direction) * current.amplitudes();
      direction.normalize();
      bool accepted = false;
      for (const double sign : {1.0, -1.0}) {
        PureState trial =
            make_pure_state(dims, (current.amplitudes() + sign * step * direction).normalized());
        const Evaluation trial_value = objective(trial);
        if (trial_value.objective < value.objective) {
          current = std::move(trial);
          value = trial_value;
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        // Random directions cannot follow the valley of near-product states, whose walls are
        // first order in two-body entanglement; step toward the marginal anchor instead.
        const ComplexVector anchor = marginal_anchor(current);
        PureState trial =
            make_pure_state(dims, (current.amplitudes() + step * (anchor - current.amplitudes())).normalized());
        const Evaluation trial_value = objective(trial);
        if (trial_value.objective < value.objective) {
          current = std::move(trial);
          value = trial_value;
          accepted = true;
          ++summary.anchor_steps;
        }
      }
      if (accepted) {
        ++summary.accepted_steps;
        consider(current, value);
        step = std::min(2.0 * step, 1.0);
      } else {
        step *= 0.5;
        if (step < 1e-15) {
          ++iteration;
          break;
        }
      }
    }
    summary.iterations = iteration;
    summary.final_step = step;
    summary.final_borromean = value.borromean;
    summary.final_entanglement = value.entanglement;
    summary.final_objective = value.objective;

    if (summary.best_feasible_borromean &&
        (!report.best_borromean_deviation || *summary.best_feasible_borromean < *report.best_borromean_deviation)) {
      report.best_borromean_deviation = summary.best_feasible_borromean;
      report.best_restart = k;
      report.best_state = best_state;
    }
    report.trajectories.push_back(summary);
  }

  if (report.best_state) report.best_entanglement = linear_entropy_entanglement(*report.best_state);
  report.theorem_violation = entanglement_floor > 0.0 && report.best_borromean_deviation &&
                             *report.best_borromean_deviation <= options.violation_tol;
  return report;
}

}  // namespace borromean
