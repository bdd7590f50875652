#include "borromean/serialize.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

namespace borromean {

namespace {

Json optional_number(const std::optional<double>& value) { return value ? Json(*value) : Json(nullptr); }

Json property_name(NormalFormProperty property) {
  return property == NormalFormProperty::zero_pattern ? "zero_pattern" : "dominance";
}

}  // namespace

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const PureState& psi) {
  Json amplitudes = Json::array();
  for (Eigen::Index k = 0; k < psi.amplitudes().size(); ++k) amplitudes.push_back(to_json(psi.amplitudes()(k)));
  return Json{{"dims", psi.dims().values()}, {"amplitudes", std::move(amplitudes)}};
}

Json to_json(const DensityMatrix& rho) {
  return Json{{"dims", rho.dims().values()}, {"entries", to_json(rho.entries())}};
}

Json to_json(const JointDistribution& joint) {
  return Json{{"arities", joint.arities()}, {"probabilities", joint.probabilities()}};
}

Json to_json(const ProductReport& report) {
  Json factors = Json::array();
  for (const DensityMatrix& f : report.factors) factors.push_back(to_json(f.entries()));
  return Json{{"deviation_frobenius", report.deviation_frobenius},
              {"deviation_trace_norm", report.deviation_trace},
              {"tolerance", report.tolerance},
              {"is_product", report.is_product},
              {"factors", std::move(factors)}};
}

Json to_json(const BorromeanReport& report) {
  return Json{{"per_site_deviation", report.per_site_deviation},
              {"per_site_trace_norm_deviation", report.per_site_trace_deviation},
              {"max_deviation", report.max_deviation},
              {"tolerance", report.tolerance},
              {"is_borromean", report.is_borromean},
              {"norms",
               {{"deviation", "Frobenius norm of (reduced state - product of its marginals)"},
                {"trace_norm_deviation", "full trace norm, sum of |eigenvalues|; halve for trace distance"}}}};
}

Json to_json(const ProductApproximation& approx) {
  Json factors = Json::array();
  for (const ComplexVector& f : approx.factors) {
    Json v = Json::array();
    for (Eigen::Index k = 0; k < f.size(); ++k) v.push_back(to_json(f(k)));
    factors.push_back(std::move(v));
  }
  return Json{{"overlap", approx.overlap},          {"converged", approx.converged},
              {"sweeps", approx.sweeps},            {"best_restart", approx.best_restart},
              {"factors", std::move(factors)}};
}

Json to_json(const NormalForm& nf) {
  Json bases = Json::array();
  for (const ComplexMatrix& u : nf.local_bases) bases.push_back(to_json(u));
  Json coefficients = Json::array();
  for (Eigen::Index k = 0; k < nf.coefficients.values.size(); ++k) coefficients.push_back(to_json(nf.coefficients.values(k)));
  return Json{{"local_dimension", nf.local_dimension},
              {"local_bases", std::move(bases)},
              {"coefficients", {{"dims", nf.coefficients.dims}, {"values", std::move(coefficients)}}},
              {"achieved_overlap", nf.achieved_overlap},
              {"restart_count", nf.restart_count},
              {"seed", nf.seed},
              {"converged", nf.converged},
              {"levels_optimized", nf.levels_optimized}};
}

Json to_json(const PropertyViolationReport& report) {
  Json offenders = Json::array();
  for (const PropertyOffender& o : report.offenders) {
    offenders.push_back(Json{{"property", property_name(o.property)}, {"index", o.index}, {"violation", o.violation}});
  }
  return Json{{"zero_pattern_violation", report.zero_pattern_violation},
              {"dominance_violation", report.dominance_violation},
              {"tolerance", report.tolerance},
              {"offenders", std::move(offenders)}};
}

Json to_json(const std::vector<MixedEntry>& entries) {
  Json list = Json::array();
  for (const MixedEntry& e : entries) list.push_back(Json{{"index", e.index}, {"magnitude", e.magnitude}});
  return list;
}

Json to_json(const ClassicalBorromeanReport& report) {
  return Json{{"drop_one_gaps", report.drop_one_gaps},
              {"full_joint_gap", report.full_joint_gap},
              {"tolerance", report.tolerance},
              {"is_borromean", report.is_borromean}};
}

Json to_json(const ParityComparison& comparison) {
  return Json{{"quantum_distribution", to_json(comparison.quantum_distribution)},
              {"classical_distribution", to_json(comparison.classical_distribution)},
              {"max_abs_difference", comparison.max_abs_difference},
              {"per_qubit_expectations", comparison.per_qubit_expectations},
              {"drop_one_gaps", comparison.drop_one_gaps},
              {"density_matrix_borromean",
               comparison.density_report ? to_json(*comparison.density_report) : Json(nullptr)}};
}

Json to_json(const CampaignReport& report) {
  Json records = Json::array();
  for (const CampaignRecord& r : report.records) {
    records.push_back(Json{{"label", r.label},
                           {"seed", r.seed ? Json(*r.seed) : Json(nullptr)},
                           {"borromean_deviation", r.borromean_deviation},
                           {"product_deviation", r.product_deviation},
                           {"entanglement", r.entanglement},
                           {"borromean", r.borromean},
                           {"product", r.product},
                           {"counterexample", r.counterexample}});
  }
  Json injected = Json::array();
  for (const LabelledState& s : report.config.injected) injected.push_back(s.label);
  return Json{{"config",
               {{"dims", report.config.dims.values()},
                {"sample_count", report.config.sample_count},
                {"seed", report.config.seed},
                {"sample_seeds", "seed + sample index"},
                {"borromean_tol", report.config.borromean_tol},
                {"product_tol", report.config.product_tol},
                {"injected", std::move(injected)}}},
              {"counterexample_count", report.counterexample_count},
              {"min_borromean_deviation", report.min_borromean_deviation},
              {"records", std::move(records)}};
}

Json to_json(const SearchReport& report) {
  Json trajectories = Json::array();
  for (const RestartSummary& t : report.trajectories) {
    trajectories.push_back(Json{{"seed", t.seed},
                                {"from_start_state", t.from_start_state},
                                {"initial_borromean", t.initial_borromean},
                                {"initial_entanglement", t.initial_entanglement},
                                {"final_borromean", t.final_borromean},
                                {"final_entanglement", t.final_entanglement},
                                {"final_objective", t.final_objective},
                                {"best_feasible_borromean", optional_number(t.best_feasible_borromean)},
                                {"accepted_steps", t.accepted_steps},
                                {"anchor_steps", t.anchor_steps},
                                {"iterations", t.iterations},
                                {"final_step", t.final_step}});
  }
  return Json{{"config",
               {{"dims", report.dims},
                {"entanglement_floor", report.entanglement_floor},
                {"restarts", report.restarts},
                {"seed", report.seed},
                {"restart_seeds", "seed + restart index"},
                {"penalty", report.penalty},
                {"iteration_cap", report.iteration_cap},
                {"violation_tol", report.violation_tol}}},
              {"best_borromean_deviation", optional_number(report.best_borromean_deviation)},
              {"best_entanglement", optional_number(report.best_entanglement)},
              {"best_restart", report.best_restart},
              {"best_state", report.best_state ? to_json(*report.best_state) : Json(nullptr)},
              {"theorem_violation", report.theorem_violation},
              {"trajectories", std::move(trajectories)}};
}

PureState state_from_json(const Json& document) {
  try {
    if (!document.is_object()) throw std::invalid_argument("state file must be a JSON object");
    const auto dims = document.at("dims").get<std::vector<int>>();
    const Json& amplitudes = document.at("amplitudes");
    if (!amplitudes.is_array()) throw std::invalid_argument("amplitudes must be a list");
    ComplexVector values(static_cast<Eigen::Index>(amplitudes.size()));
    for (std::size_t k = 0; k < amplitudes.size(); ++k) {
      const Json& entry = amplitudes[k];
      values(static_cast<Eigen::Index>(k)) = Complex(entry.at("re").get<double>(), entry.at("im").get<double>());
    }
    return make_pure_state(SiteDims(dims), std::move(values));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed state file: ") + e.what());
  }
}

PureState read_state(std::istream& in) {
  Json document;
  try {
    document = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("unparseable state file: ") + e.what());
  }
  return state_from_json(document);
}

void write_state(std::ostream& out, const PureState& psi) { out << dump(to_json(psi)); }

std::string dump(const Json& document) { return document.dump(2) + "\n"; }

}  // namespace borromean
