#include "report.hpp"

#include <algorithm>
#include <cmath>

namespace hyperrig {

namespace {

template <typename T>
void put_opt(Json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
  else j[key] = nullptr;
}

// Non-finite doubles have no JSON encoding; emit null.
Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v[i]));
  return a;
}

Json to_json(const GaussScan& s) {
  Json j;
  j["ran"] = s.ran;
  j["nonsingular"] = s.nonsingular;
  j["degree"] = s.degree;
  j["degree_raw"] = num(s.raw);
  j["degree_residual"] = num(s.residual);
  j["min_abs_jacobian"] = num(s.min_abs_jacobian);
  j["samples"] = s.samples;
  if (!s.error.empty()) j["error"] = s.error;
  return j;
}

Json to_json(const RigidityReport& r) {
  Json j;
  j["theorem_id"] = theorem_id_name(r.theorem_id);
  j["inputs_digest"] = r.inputs_digest;
  j["basepoint"] = to_json(r.basepoint);
  j["R"] = num(r.R);
  j["bound"] = num(r.bound);
  j["min_abs_curvature"] = num(r.min_abs_curvature);
  j["margin"] = num(r.margin);
  j["hypothesis_holds"] = r.hypothesis_holds;
  j["gauss_map_nonsingular"] = r.gauss_map_nonsingular;
  put_opt(j, "degree", r.degree);
  put_opt(j, "degree_raw", r.degree_raw);
  put_opt(j, "degree_residual", r.degree_residual);
  put_opt(j, "min_abs_jacobian", r.min_abs_jacobian);
  j["falsification"] = r.falsification;
  j["notes"] = r.notes;
  if (r.theorem_id == TheoremId::T1) put_opt(j, "ball_gap", r.ball_gap);
  if (r.theorem_id == TheoremId::T3) put_opt(j, "L", r.L);
  if (r.theorem_id == TheoremId::T2 || r.theorem_id == TheoremId::Corollary) {
    put_opt(j, "r", r.r);
    put_opt(j, "identity_residual", r.identity_residual);
    put_opt(j, "components_upstairs", r.components_upstairs);
    put_opt(j, "components_downstairs", r.components_downstairs);
    put_opt(j, "multiplicity", r.multiplicity);
    put_opt(j, "topology_label", r.topology_label);
    Json comps = Json::array();
    for (const auto& c : r.components) {
      Json cj;
      cj["samples"] = c.samples;
      cj["min_abs_curvature"] = num(c.min_abs_curvature);
      cj["min_distance_to_basepoint"] = num(c.min_distance_to_basepoint);
      cj["avoids_small_ball"] = c.avoids_small_ball;
      cj["gauss_scan"] = to_json(c.scan);
      comps.push_back(cj);
    }
    j["components"] = comps;
  }
  return j;
}

Json to_json(const BallResult& b) {
  Json j;
  j["center"] = to_json(b.center.coords());
  j["radius"] = num(b.radius);
  j["achiever_indices"] = b.achiever_indices;
  j["iterations"] = b.iterations;
  j["start_index"] = b.start_index;
  put_opt(j, "certified_gap", b.certified_gap);
  put_opt(j, "oracle_value", b.oracle_value);
  return j;
}

Json to_json(const DegreeResult& d) {
  Json j;
  j["degree"] = d.degree;
  j["degree_raw"] = num(d.raw);
  j["degree_residual"] = num(d.residual);
  j["min_abs_jacobian"] = num(d.min_abs_jacobian);
  j["nonsingular"] = d.nonsingular;
  return j;
}

Json to_json(const SharpnessResult& s) {
  Json j;
  j["epsilon"] = s.epsilon;
  j["best_r"] = s.best_r;
  j["max_ratio"] = num(s.max_ratio);
  j["max_ratio_analytic"] = num(s.max_ratio_analytic);
  j["ce_satisfiable"] = s.ce_satisfiable;
  j["ce_satisfiable_analytic"] = s.ce_satisfiable_analytic;
  Json rows = Json::array();
  for (const auto& r : s.rows) {
    Json rj;
    rj["r"] = r.r;
    rj["min_abs_curvature"] = num(r.min_abs_curvature);
    rj["min_abs_curvature_analytic"] = num(r.min_abs_curvature_analytic);
    rj["R_enclosing"] = num(r.R_enclosing);
    rj["R_enclosing_analytic"] = num(r.R_enclosing_analytic);
    rj["R_empty"] = num(r.R_empty);
    rj["R_empty_analytic"] = num(r.R_empty_analytic);
    rj["ratio"] = num(r.ratio);
    rj["ratio_analytic"] = num(r.ratio_analytic);
    rj["ratio_empty"] = num(r.ratio_empty);
    rj["euler_characteristic"] = num(r.euler_characteristic);
    rj["ce_holds"] = r.ce_holds;
    rj["ce_holds_analytic"] = r.ce_holds_analytic;
    rows.push_back(rj);
  }
  j["rows"] = rows;
  return j;
}

Json to_json(const BlowupStudy& s) {
  Json j;
  Json rows = Json::array();
  for (const auto& r : s.rows) {
    Json rj;
    rj["t"] = r.t;
    rj["min_abs_curvature"] = num(r.min_abs_curvature);
    rj["max_abs_curvature"] = num(r.max_abs_curvature);
    rj["R_enclosing"] = num(r.R_enclosing);
    rows.push_back(rj);
  }
  j["rows"] = rows;
  j["strictly_increasing"] = s.strictly_increasing;
  j["t_threshold"] = s.t_threshold;
  put_opt(j, "t_exceeds_one", s.t_exceeds_one);
  return j;
}

Json to_json(const LemmaReport& l) {
  Json j;
  j["small_ball_samples"] = l.small_ball_samples;
  j["small_ball_violations"] = l.small_ball_violations;
  j["isometry_pairs"] = l.isometry_pairs;
  j["isometry_max_error"] = num(l.isometry_max_error);
  j["injectivity_violations"] = l.injectivity_violations;
  j["antipode_excluded"] = l.antipode_excluded;
  j["antipode_bisector_size"] = l.antipode_bisector_size;
  return j;
}

Json mesh_summary(const HypersurfaceMesh& mesh) {
  Json j;
  const ImmersionChart& chart = mesh.chart();
  j["chart"] = chart.name();
  j["param_dim"] = chart.param_dim();
  j["resolution"] = mesh.resolution();
  j["samples"] = mesh.size();
  j["total_area"] = num(mesh.total_area());
  j["orientation_sign"] = chart.orientation_sign();
  j["closed"] = chart.closed();
  j["min_abs_curvature"] = num(mesh.min_abs_curvature());
  j["max_abs_curvature"] = num(mesh.max_abs_curvature());
  j["max_asymmetry"] = num(mesh.max_asymmetry());
  j["orientation_coherent"] = orientation_coherent(mesh);
  j["notes"] = chart.notes();
  if (const auto& a = chart.analytic_curvatures()) {
    j["analytic_curvatures"] = to_json(*a);
    double dev = 0.0;
    for (const auto& s : mesh.samples()) dev = std::max(dev, (s.principal_curvatures - *a).cwiseAbs().maxCoeff());
    j["max_analytic_deviation"] = num(dev);
  } else {
    j["analytic_curvatures"] = nullptr;
  }
  return j;
}

}  // namespace hyperrig
