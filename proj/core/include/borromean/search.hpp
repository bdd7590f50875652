#pragma once

// Randomized checks that Borromean pure states are product states: Haar
// campaigns over sampled states, and a derivative-free hunt for an entangled
// state with Borromean reductions.

#include "borromean/tensor.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace borromean {

/// Independent standard-normal real and imaginary parts, then normalized.
PureState haar_random_state(const SiteDims& dims, std::uint64_t seed);

struct LabelledState {
  std::string label;
  PureState state;
};

struct CampaignConfig {
  SiteDims dims;
  int sample_count = 1000;
  std::uint64_t seed = 0;
  double borromean_tol = 1e-6;
  double product_tol = 1e-4;
  /// Extra states evaluated after the Haar samples (need >= 3 sites each).
  std::vector<LabelledState> injected;
};

struct CampaignRecord {
  std::string label;
  /// Seed of a Haar sample; empty for injected states.
  std::optional<std::uint64_t> seed;
  double borromean_deviation = 0.0;
  double product_deviation = 0.0;
  double entanglement = 0.0;
  bool borromean = false;
  bool product = false;
  /// Borromean within tolerance yet not product within tolerance.
  bool counterexample = false;
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<CampaignRecord> records;
  int counterexample_count = 0;
  double min_borromean_deviation = 0.0;
};

/// Sample k uses seed + k. Requires N >= 3 and positive tolerances.
CampaignReport theorem_campaign(const CampaignConfig& config);

struct SearchOptions {
  int iterations = 2000;
  double penalty = 100.0;
  double initial_step = 0.5;
  /// A feasible candidate with B at or below this is a theorem violation.
  double violation_tol = 1e-6;
  /// Starting points for the first restarts; later restarts start from Haar states.
  std::vector<PureState> start_states;
};

struct RestartSummary {
  std::uint64_t seed = 0;
  bool from_start_state = false;
  double initial_borromean = 0.0;
  double initial_entanglement = 0.0;
  double final_borromean = 0.0;
  double final_entanglement = 0.0;
  double final_objective = 0.0;
  /// Lowest B among visited points with entanglement >= floor, if any.
  std::optional<double> best_feasible_borromean;
  int accepted_steps = 0;
  /// Accepted steps that moved toward the marginal anchor.
  int anchor_steps = 0;
  int iterations = 0;
  double final_step = 0.0;
};

struct SearchReport {
  std::vector<int> dims;
  double entanglement_floor = 0.0;
  int restarts = 0;
  std::uint64_t seed = 0;
  double penalty = 0.0;
  int iteration_cap = 0;
  double violation_tol = 0.0;
  /// Minimum over restarts; empty if no visited point met the floor.
  std::optional<double> best_borromean_deviation;
  std::optional<double> best_entanglement;
  int best_restart = -1;
  std::optional<PureState> best_state;
  bool theorem_violation = false;
  std::vector<RestartSummary> trajectories;
};

/// Minimizes B(psi) + penalty * max(0, floor - E(psi))^2 on the unit sphere,
/// where B is the largest per-site Frobenius Borromean deviation and E the
/// linear-entropy entanglement. Restart k draws its randomness from seed + k.
/// Each iteration tries psi +/- step * g for a random tangent direction g,
/// then, if neither improves, a step of the same length toward the product of
/// the leading eigenvectors of the single-site marginals. The step doubles
/// (capped at 1) on acceptance and halves otherwise.
SearchReport counterexample_search(const SiteDims& dims, double entanglement_floor, int restarts, std::uint64_t seed,
                                   const SearchOptions& options = {});

}  // namespace borromean
