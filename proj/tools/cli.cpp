#include "cli.hpp"

#include "borromean/classical.hpp"
#include "borromean/named_states.hpp"
#include "borromean/parity.hpp"
#include "borromean/product.hpp"
#include "borromean/schmidt.hpp"
#include "borromean/search.hpp"
#include "borromean/serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>

namespace borromean::cli {

namespace {

constexpr const char* kToolName = "borromean";
constexpr const char* kVersion = BORROMEAN_VERSION;

// Config echo, payload and exit code of one subcommand run.
struct Outcome {
  Json config;
  Json result;
  int code;
};

Json envelope(const std::string& command, Outcome outcome) {
  return Json{{"tool", kToolName},
              {"version", kVersion},
              {"command", command},
              {"config", std::move(outcome.config)},
              {"result", std::move(outcome.result)},
              {"exit_code", outcome.code}};
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::invalid_argument("cannot open output file " + path);
  file << text;
  if (!file) throw std::invalid_argument("failed writing output file " + path);
}

PureState load_state(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("cannot open state file " + path);
  return read_state(file);
}

PureState seeded_product_state(const SiteDims& dims, std::uint64_t seed) {
  std::vector<ComplexVector> factors;
  for (int s = 0; s < dims.sites(); ++s) {
    factors.push_back(haar_random_state(SiteDims({dims[s]}), seed + static_cast<std::uint64_t>(s)).amplitudes());
  }
  return product_state(factors);
}

PureState named_state(const std::string& kind, int n, const std::vector<int>& dims, std::uint64_t seed) {
  auto need_n = [&](int lo) {
    if (n < lo) throw std::invalid_argument(kind + " needs --n >= " + std::to_string(lo));
  };
  auto need_dims = [&] {
    if (dims.empty()) throw std::invalid_argument(kind + " needs --dims");
    return SiteDims(dims);
  };
  if (kind == "ghz") {
    need_n(2);
    return ghz_state(n);
  }
  if (kind == "w") {
    need_n(2);
    return w_state(n);
  }
  if (kind == "parity") {
    need_n(1);
    return parity_state(n);
  }
  if (kind == "product") return seeded_product_state(need_dims(), seed);
  if (kind == "haar") return haar_random_state(need_dims(), seed);
  throw std::invalid_argument("unknown state kind " + kind);
}

Json marginal_summary(const PureState& psi) {
  Json marginals = Json::array();
  for (int s = 0; s < psi.sites(); ++s) {
    const DensityMatrix m = single_site_marginal(psi, s);
    marginals.push_back(Json{{"site", s}, {"entries", to_json(m.entries())}, {"spectrum", spectrum(m)}, {"purity", purity(m)}});
  }
  return marginals;
}

Outcome analyze(const std::string& path, double tol, double product_tol) {
  const PureState psi = load_state(path);
  if (psi.sites() < 3) throw std::invalid_argument("analyze needs a state with at least three sites");
  const DensityMatrix rho = density_of(psi);
  const BorromeanReport borromean = borromean_deviation(rho, tol);
  Json result{{"dims", psi.dims().values()},
              {"purity", purity(rho)},
              {"entanglement", linear_entropy_entanglement(psi)},
              {"marginals", marginal_summary(psi)},
              {"product", to_json(product_deviation(rho, product_tol))},
              {"borromean", to_json(borromean)}};
  Json config{{"state", path}, {"tol", tol}, {"product_tol", product_tol}};
  return {std::move(config), std::move(result), borromean.is_borromean ? kPassed : kFailed};
}

Outcome schmidt(const std::string& path, std::optional<int> restarts, double tol, double sweep_tol, std::uint64_t seed,
                int max_sweeps) {
  const PureState psi = load_state(path);
  if (!psi.dims().is_uniform()) throw std::invalid_argument("schmidt needs equal site dimensions");
  const int used_restarts = restarts.value_or(default_restart_count(psi.dims()));
  const NormalForm nf = normal_form(psi, used_restarts, sweep_tol, seed, max_sweeps);
  const PropertyViolationReport violations = verify_normal_form(nf, tol);
  const auto cascade = vanishing_cascade_check(nf.coefficients, tol);
  Json result{{"normal_form", to_json(nf)},
              {"violations", to_json(violations)},
              {"vanishing_cascade", to_json(cascade)},
              {"reconstruction_error", (reconstruct(nf) - psi.amplitudes()).cwiseAbs().maxCoeff()}};
  Json config{{"state", path},   {"restarts", used_restarts},   {"tol", tol},
              {"sweep_tol", sweep_tol}, {"seed", seed}, {"max_sweeps", max_sweeps},
              {"restart_seeds", "seed + restart index"}};
  const bool passed = nf.converged && violations.satisfied();
  return {std::move(config), std::move(result), passed ? kPassed : kFailed};
}

Outcome classical(const std::vector<double>& p, double tol) {
  const RegisterSpec spec(p);
  const ClassicalBorromeanReport report = borromean_check_classical(spec, tol);
  Json result{{"variables", "A_0 (checksum), A_1, ..., A_N"},
              {"joint", to_json(checksum_joint(spec))},
              {"check", to_json(report)}};
  Json config{{"p", p}, {"tol", tol}};
  return {std::move(config), std::move(result), report.is_borromean ? kPassed : kFailed};
}

Outcome parity(int n, double tol, double borromean_tol, const std::string& state_out) {
  const ParityComparison comparison = compare_to_classical(n, borromean_tol);
  if (!state_out.empty()) {
    std::ofstream file(state_out);
    if (!file) throw std::invalid_argument("cannot open state output " + state_out);
    write_state(file, parity_state(n));
  }
  const bool matches = comparison.max_abs_difference <= tol;
  // The density-matrix contrast needs three qubits; with n = 1 only the distributions are compared.
  const bool contrast = !comparison.density_report || !comparison.density_report->is_borromean;
  Json result = to_json(comparison);
  result["distributions_match"] = matches;
  result["density_matrix_non_borromean"] =
      comparison.density_report ? Json(!comparison.density_report->is_borromean) : Json(nullptr);
  Json config{{"n", n}, {"tol", tol}, {"borromean_tol", borromean_tol}};
  return {std::move(config), std::move(result), matches && contrast ? kPassed : kFailed};
}

std::vector<LabelledState> injected_states(const std::vector<std::string>& kinds, const SiteDims& dims,
                                           std::uint64_t seed) {
  std::vector<LabelledState> states;
  for (const std::string& kind : kinds) {
    if (kind == "ghz") {
      if (!dims.is_uniform()) throw std::invalid_argument("ghz injection needs equal dims");
      states.push_back({kind, ghz_state(dims.sites(), dims[0])});
    } else if (kind == "w") {
      states.push_back({kind, w_state(dims.sites())});
    } else if (kind == "product") {
      states.push_back({kind, seeded_product_state(dims, seed)});
    } else {
      throw std::invalid_argument("unknown injected state " + kind);
    }
  }
  return states;
}

Outcome campaign(const std::vector<int>& dims, int samples, std::uint64_t seed, double borromean_tol,
                 double product_tol, const std::vector<std::string>& inject) {
  CampaignConfig config{SiteDims(dims), samples, seed, borromean_tol, product_tol, {}};
  config.injected = injected_states(inject, config.dims, seed);
  const CampaignReport report = theorem_campaign(config);
  Json result = to_json(report);
  Json echo = result["config"];
  echo["inject"] = inject;
  result.erase("config");
  return {std::move(echo), std::move(result), report.counterexample_count == 0 ? kPassed : kFailed};
}

Outcome search(const std::vector<int>& dims, double floor, int restarts, std::uint64_t seed, int iterations,
               double penalty, double violation_tol, const std::string& start, std::ostream& err) {
  const SiteDims site_dims(dims);
  SearchOptions options;
  options.iterations = iterations;
  options.penalty = penalty;
  options.violation_tol = violation_tol;
  if (!start.empty()) {
    for (LabelledState& s : injected_states({start}, site_dims, seed)) options.start_states.push_back(std::move(s.state));
  }
  const SearchReport report = counterexample_search(site_dims, floor, restarts, seed, options);
  Json result = to_json(report);
  Json echo = result["config"];
  echo["start"] = start.empty() ? Json(nullptr) : Json(start);
  result.erase("config");
  if (report.theorem_violation) {
    result["marker"] = "THEOREM VIOLATION: entangled state with Borromean reductions found";
    err << "*** THEOREM VIOLATION: best Borromean deviation " << *report.best_borromean_deviation
        << " at entanglement " << *report.best_entanglement << " ***\n";
  }
  return {std::move(echo), std::move(result), report.theorem_violation ? kFailed : kPassed};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Borromean correlation analysis for multipartite states and classical registers", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string out_path;
  std::uint64_t seed = 0;

  auto* gen = app.add_subcommand("gen", "Write a state file");
  std::string kind;
  int n = 0;
  std::vector<int> dims;
  gen->add_option("kind", kind, "ghz | w | parity | product | haar")
      ->required()
      ->check(CLI::IsMember({"ghz", "w", "parity", "product", "haar"}));
  gen->add_option("--n", n, "Number of sites (ghz, w) or data bits (parity)");
  gen->add_option("--dims", dims, "Comma-separated site dimensions (product, haar)")->delimiter(',');
  gen->add_option("--seed", seed, "Random seed")->capture_default_str();
  gen->add_option("--out", out_path, "Output path (default: standard output)");

  auto* analyze_cmd = app.add_subcommand("analyze", "Product and Borromean analysis of a state file");
  std::string state_path;
  double tol = kExactTolerance;
  std::optional<double> product_tol;
  analyze_cmd->add_option("state", state_path, "State file")->required();
  analyze_cmd->add_option("--tol", tol, "Borromean tolerance (Frobenius)")->capture_default_str();
  analyze_cmd->add_option("--product-tol", product_tol, "Full-product tolerance (default: --tol)");
  analyze_cmd->add_option("--out", out_path, "Report path");

  auto* schmidt_cmd = app.add_subcommand("schmidt", "Generalized Schmidt normal form of a state file");
  std::optional<int> restarts;
  double nf_tol = 1e-6;
  double sweep_tol = kDefaultSweepTolerance;
  int max_sweeps = kDefaultSweepCap;
  schmidt_cmd->add_option("state", state_path, "State file")->required();
  schmidt_cmd->add_option("--restarts", restarts, "Restarts per level (default max(16, 8*N*d))");
  schmidt_cmd->add_option("--tol", nf_tol, "Property-violation and cascade tolerance")->capture_default_str();
  schmidt_cmd->add_option("--sweep-tol", sweep_tol, "Overlap gain per sweep that ends a restart")->capture_default_str();
  schmidt_cmd->add_option("--max-sweeps", max_sweeps, "Sweep cap per restart")->capture_default_str();
  schmidt_cmd->add_option("--seed", seed, "Base seed")->capture_default_str();
  schmidt_cmd->add_option("--out", out_path, "Report path");

  auto* classical_cmd = app.add_subcommand("classical", "Checksum register independence gaps");
  std::vector<double> p;
  double classical_tol = 1e-12;
  classical_cmd->add_option("--p", p, "Comma-separated P(A_i = 0), i = 1..N")->required()->delimiter(',');
  classical_cmd->add_option("--tol", classical_tol, "Gap tolerance")->capture_default_str();
  classical_cmd->add_option("--out", out_path, "Report path");

  auto* parity_cmd = app.add_subcommand("parity", "Parity state versus the classical checksum register");
  double parity_tol = 1e-12;
  double parity_borromean_tol = kOptimizerTolerance;
  std::string state_out;
  parity_cmd->add_option("--n", n, "Data bits (total qubits n + 1)")->required();
  parity_cmd->add_option("--tol", parity_tol, "Distribution match tolerance")->capture_default_str();
  parity_cmd->add_option("--borromean-tol", parity_borromean_tol, "Density-matrix Borromean tolerance")->capture_default_str();
  parity_cmd->add_option("--state-out", state_out, "Also write the parity state file here");
  parity_cmd->add_option("--out", out_path, "Report path");

  auto* campaign_cmd = app.add_subcommand("campaign", "Haar-random check that Borromean pure states are product");
  int samples = 1000;
  double borromean_tol = 1e-6;
  double campaign_product_tol = 1e-4;
  std::vector<std::string> inject;
  campaign_cmd->add_option("--dims", dims, "Comma-separated site dimensions")->required()->delimiter(',');
  campaign_cmd->add_option("--samples", samples, "Haar samples")->capture_default_str();
  campaign_cmd->add_option("--seed", seed, "Base seed")->capture_default_str();
  campaign_cmd->add_option("--borromean-tol", borromean_tol, "Borromean tolerance")->capture_default_str();
  campaign_cmd->add_option("--product-tol", campaign_product_tol, "Product tolerance")->capture_default_str();
  campaign_cmd->add_option("--inject", inject, "Extra states: ghz, w, product")
      ->delimiter(',')
      ->check(CLI::IsMember({"ghz", "w", "product"}));
  campaign_cmd->add_option("--out", out_path, "Report path");

  auto* search_cmd = app.add_subcommand("search", "Hunt for an entangled pure state with Borromean reductions");
  double floor = 0.05;
  int search_restarts = 200;
  int iterations = 2000;
  double penalty = 100.0;
  double violation_tol = 1e-6;
  std::string start;
  search_cmd->add_option("--dims", dims, "Comma-separated site dimensions")->required()->delimiter(',');
  search_cmd->add_option("--floor", floor, "Entanglement floor")->capture_default_str();
  search_cmd->add_option("--restarts", search_restarts, "Restarts")->capture_default_str();
  search_cmd->add_option("--seed", seed, "Base seed")->capture_default_str();
  search_cmd->add_option("--iterations", iterations, "Iteration cap per restart")->capture_default_str();
  search_cmd->add_option("--penalty", penalty, "Entanglement floor penalty weight")->capture_default_str();
  search_cmd->add_option("--violation-tol", violation_tol, "B at or below this is a violation")->capture_default_str();
  search_cmd->add_option("--start", start, "Start restart 0 from: ghz, w, product")
      ->check(CLI::IsMember({"ghz", "w", "product"}));
  search_cmd->add_option("--out", out_path, "Report path");

  std::vector<const char*> argv{kToolName};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPassed : kUsageError;
  }

  try {
    if (gen->parsed()) {
      emit(dump(to_json(named_state(kind, n, dims, seed))), out_path, out);
      return kPassed;
    }
    std::string command;
    Outcome outcome;
    if (analyze_cmd->parsed()) {
      command = "analyze";
      outcome = analyze(state_path, tol, product_tol.value_or(tol));
    } else if (schmidt_cmd->parsed()) {
      command = "schmidt";
      outcome = schmidt(state_path, restarts, nf_tol, sweep_tol, seed, max_sweeps);
    } else if (classical_cmd->parsed()) {
      command = "classical";
      outcome = classical(p, classical_tol);
    } else if (parity_cmd->parsed()) {
      command = "parity";
      outcome = parity(n, parity_tol, parity_borromean_tol, state_out);
    } else if (campaign_cmd->parsed()) {
      command = "campaign";
      outcome = campaign(dims, samples, seed, borromean_tol, campaign_product_tol, inject);
    } else {
      command = "search";
      outcome = search(dims, floor, search_restarts, seed, iterations, penalty, violation_tol, start, err);
    }
    const int code = outcome.code;
    emit(dump(envelope(command, std::move(outcome))), out_path, out);
    return code;
  } catch (const std::exception& e) {
    err << kToolName << ": " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace borromean::cli
