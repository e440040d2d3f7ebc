// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "beltrami.hpp"
#include "error.hpp"
#include "gallery.hpp"
#include "quotient.hpp"
#include "rigidity.hpp"
#include "run.hpp"

using namespace hyperrig;

namespace {

// Every report produced by any criterion; the monitor criterion scans them.
std::vector<RigidityReport> g_reports;

RigidityReport keep(RigidityReport r) {
  g_reports.push_back(r);
  return r;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

Vec random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = g(rng);
  return v.normalized();
}

HypersurfaceMesh default_mesh(const ChartPtr& chart) {
  const int n = chart->param_dim();
  return sample_mesh(chart, std::vector<int>(static_cast<std::size_t>(n), default_resolution(n)));
}

// RK4 integration of V' = -<V, c'> c along the unit-speed great circle.
Vec transport_ode(const Vec& p, const Vec& q, const Vec& v, int steps) {
  const double theta = unit_angle(p, q);
  Vec dir = q - p.dot(q) * p;
  if (dir.norm() < 1e-15) return v;
  dir.normalize();
  auto rhs = [&](double t, const Vec& w) {
    const Vec c = std::cos(t) * p + std::sin(t) * dir;
    const Vec dc = -std::sin(t) * p + std::cos(t) * dir;
    return Vec(-w.dot(dc) * c);
  };
  const double h = theta / steps;
  Vec w = v;
  for (int i = 0; i < steps; ++i) {
    const double t = i * h;
    const Vec k1 = rhs(t, w);
    const Vec k2 = rhs(t + h / 2, w + h / 2 * k1);
    const Vec k3 = rhs(t + h / 2, w + h / 2 * k2);
    const Vec k4 = rhs(t + h, w + h * k3);
    w += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return w;
}

// Criterion 1
void transport_formula(Outcome& o) {
  std::mt19937_64 rng(101);
  std::normal_distribution<double> g;
  double worst = 0.0;
  int cases = 0;
  while (cases < 1000) {
    const int dim = 3 + cases % 4;
    const Vec p = random_unit(rng, dim), q = random_unit(rng, dim);
    if (1.0 + p.dot(q) < 1e-3) continue;
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = g(rng);
    const TangentVector tv(SpherePoint(p), v);
    const Vec closed = parallel_transport(tv, SpherePoint(q)).vec();
    worst = std::max(worst, (closed - transport_ode(p, q, tv.vec(), 200)).cwiseAbs().maxCoeff());
    ++cases;
  }
  o.detail << "cases=" << cases << " max_err=" << worst;
  o.require(worst < 1e-8, "max error < 1e-8");
}

// Criterion 2
void relationship_identity(Outcome& o) {
  struct Case {
    const char* label;
    ChartPtr chart;
  };
  const std::vector<Case> cases = {
      {"sphere(pi/6)", geodesic_sphere(SpherePoint::basis(4, 3), kPi / 6, 2)},
      {"clifford(0.6)", clifford_torus(0.6, 1, 1)},
      {"clifford(1/sqrt2)", clifford_torus(1.0 / std::sqrt(2.0), 1, 1)},
      {"cartan(pi/12)", cartan_hypersurface(kPi / 12)},
  };
  for (const auto& c : cases) {
    const HypersurfaceMesh mesh = default_mesh(c.chart);
    // The basepoint the rigidity checks use: the center of the smallest
    // enclosing ball, which keeps -p0 well away from the mesh.
    const SpherePoint p0 = smallest_enclosing_ball(mesh.point_matrix()).center;
    const double gap = (mesh.point_matrix().transpose() * p0.coords()).minCoeff() + 1.0;
    const GaussMapContext ctx(p0, mesh);
    const std::size_t stride = std::max<std::size_t>(1, mesh.size() / 400);
    double coarse = 0.0, fine = 0.0;
    for (std::size_t i = 0; i < mesh.size(); i += stride) {
      coarse = std::max(coarse, relationship_residual(ctx, {&mesh, i}, 1e-3));
      fine = std::max(fine, relationship_residual(ctx, {&mesh, i}, 5e-4));
    }
    const double ratio = coarse / fine;
    o.detail << c.label << ": res=" << coarse << " ratio=" << ratio << " min(1+<p,p0>)=" << gap << "  ";
    o.require(coarse < 5e-5, std::string(c.label) + " residual < 5e-5");
    // Second order: halving h divides the error by about 4.
    o.require(ratio > 3.0 && ratio < 5.0, std::string(c.label) + " O(h^2) decay");
  }
}

// Criterion 3
void curvature_closed_forms(Outcome& o) {
  CurvatureOptions fd;
  fd.force_finite_differences = true;
  for (double r : {0.6, 1.0 / std::sqrt(2.0), 0.3}) {
    const double s = std::sqrt(1 - r * r);
    const ChartPtr chart = clifford_torus(r, 1, 1);
    const HypersurfaceMesh mesh = default_mesh(chart);
    Vec expect(2);
    expect << -s / r, r / s;
    double err = 0.0, err_fd = 0.0;
    for (std::size_t i = 0; i < mesh.size(); ++i) {
      err = std::max(err, (mesh[i].principal_curvatures - expect).cwiseAbs().maxCoeff());
      if (i % 16 == 0)
        err_fd = std::max(err_fd, (principal_curvatures(*chart, mesh[i].u, fd) - expect).cwiseAbs().maxCoeff());
    }
    o.detail << "clifford(" << r << ") err=" << err << " fd_err=" << err_fd << "  ";
    o.require(err < 1e-5 && err_fd < 1e-5, "clifford curvatures within 1e-5");
  }
  const double theta = kPi / 12;
  const ChartPtr chart = cartan_hypersurface(theta);
  const HypersurfaceMesh mesh = default_mesh(chart);
  std::vector<double> expect = {1 / std::tan(theta - kPi / 3), 1 / std::tan(theta), 1 / std::tan(theta + kPi / 3)};
  std::sort(expect.begin(), expect.end());
  const Vec ex = Eigen::Map<Vec>(expect.data(), 3);
  double err = 0.0, err_fd = 0.0, c_err = 0.0;
  Vec mean = Vec::Zero(3), sq = Vec::Zero(3);
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const Vec& k = mesh[i].principal_curvatures;
    err = std::max(err, (k - ex).cwiseAbs().maxCoeff());
    mean += k;
    sq += k.cwiseProduct(k);
    if (i % 64 == 0)
      err_fd = std::max(err_fd, (principal_curvatures(*chart, mesh[i].u, fd) - ex).cwiseAbs().maxCoeff());
    const CartanInvariants inv = cartan_invariants(TracelessSym3(TracelessSym3::Coords(mesh[i].point.coords())));
    c_err = std::max(c_err, std::abs(inv.c - std::cos(3 * theta)));
  }
  const double count = static_cast<double>(mesh.size());
  mean /= count;
  const double stdev = (sq / count - mean.cwiseProduct(mean)).cwiseMax(0.0).cwiseSqrt().maxCoeff();
  o.detail << "cartan err=" << err << " fd_err=" << err_fd << " std=" << stdev << " C_err=" << c_err;
  o.require(err < 1e-5 && err_fd < 1e-5, "cartan curvatures within 1e-5");
  o.require(stdev < 1e-6, "cartan samplewise std < 1e-6");
  o.require(c_err < 1e-9, "cartan level set C = cos 3 theta within 1e-9");
}

// Criterion 4
void ball_problems(Outcome& o) {
  for (double r : {0.6, 1.0 / std::sqrt(2.0)}) {
    const HypersurfaceMesh mesh = sample_mesh(clifford_torus(r, 1, 1), {128, 128});
    const double R = largest_empty_ball(mesh.point_matrix()).radius;
    const double expect = std::min(r, std::sqrt(1 - r * r));
    o.detail << "empty clifford(" << r << ") cosR=" << std::cos(R) << "  ";
    o.require(std::abs(std::cos(R) - expect) < 1e-3, "clifford empty ball cos R = min{r, s}");
  }
  const std::vector<std::pair<const char*, ChartPtr>> gallery = {
      {"sphere(pi/6)", geodesic_sphere(SpherePoint::basis(4, 3), kPi / 6, 2)},
      {"sphere(5pi/12)", geodesic_sphere(SpherePoint(Vec::LinSpaced(4, 0.2, 1.0)), 5 * kPi / 12, 2)},
      {"clifford(0.6)", clifford_torus(0.6, 1, 1)},
      {"clifford(1/sqrt2)", clifford_torus(1.0 / std::sqrt(2.0), 1, 1)},
      {"clifford(0.5;1,2)", clifford_torus(0.5, 1, 2)},
      {"sphere3(1.0)", geodesic_sphere(SpherePoint::basis(5, 4), 1.0, 3)},
      {"cartan(pi/12)", cartan_hypersurface(kPi / 12)},
  };
  BallConfig cfg;
  cfg.oracle = true;
  for (const auto& [label, chart] : gallery) {
    const HypersurfaceMesh mesh = default_mesh(chart);
    const BallResult b = smallest_enclosing_ball(mesh.point_matrix(), cfg);
    const double gap = b.certified_gap.value_or(1e300);
    o.detail << label << " gap=" << gap << "  ";
    o.require(std::abs(gap) < 5e-3, std::string(label) + " enclosing ball vs oracle within 5e-3");
  }
}

// Criterion 5
void sharpness(Outcome& o) {
  const SharpnessResult res = sharpness_scan(0.3, default_sharpness_grid());
  const double target = std::sqrt(2.0) - 1.0;
  o.detail << "max_ratio=" << res.max_ratio << " (analytic " << res.max_ratio_analytic << ") at r=" << res.best_r;
  o.require(std::abs(res.max_ratio - target) < 1e-3, "max ratio = sqrt2 - 1 within 1e-3");
  o.require(std::abs(res.best_r - 1.0 / std::sqrt(2.0)) < 0.05, "maximum near r = 1/sqrt2");
  // (ce) holds for epsilon = 0.3 on some torus, and tori have Euler characteristic 0.
  bool witness = false;
  for (const auto& row : res.rows)
    if (row.ce_holds && std::abs(row.euler_characteristic) < 1e-6) {
      witness = true;
      o.detail << " witness r=" << row.r << " chi=" << row.euler_characteristic;
    }
  o.require(res.ce_satisfiable && witness, "epsilon = 0.3 admits a non-sphere");
}

// Criterion 6
void theorem1_positive(Outcome& o) {
  const double rho = kPi / 6;
  const SpherePoint c = SpherePoint::basis(4, 3);
  const HypersurfaceMesh mesh = default_mesh(geodesic_sphere(c, rho, 2));
  const RigidityReport t1 = keep(check_theorem1(mesh));
  const double margin = std::sqrt(3.0) - std::tan(kPi / 12);
  o.detail << "margin=" << t1.margin << " (closed form " << margin << ") degree=" << t1.degree.value_or(0)
           << " residual=" << t1.degree_residual.value_or(-1) << " min|J|=" << t1.min_abs_jacobian.value_or(0);
  o.require(t1.hypothesis_holds && t1.margin > 0.0, "hypothesis margin > 0");
  o.require(std::abs(t1.margin - margin) < 1e-4, "margin matches sqrt3 - tan(pi/12)");
  o.require(t1.gauss_map_nonsingular, "gauss map nonsingular");
  o.require(t1.degree && std::abs(*t1.degree) == 1, "|degree| = 1");
  o.require(t1.degree_residual && *t1.degree_residual < 0.05, "quadrature residual < 0.05");
  const RigidityReport t3 = keep(check_variation(mesh, c));
  o.detail << " t3_bound=" << t3.bound;
  o.require(std::abs(t3.bound - std::tan(rho / 2)) < 1e-9, "normal-strip bound = tan(rho/2) within 1e-9");
  o.require(t3.hypothesis_holds && t3.degree && std::abs(*t3.degree) == 1, "normal-strip check passes");
}

// Criterion 8
void beltrami_study(Outcome& o) {
  std::mt19937_64 rng(108);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const int dim = 3 + i % 3;
    Vec v = random_unit(rng, dim);
    v[dim - 1] = std::abs(v[dim - 1]) + 1e-3;
    const SpherePoint p(v);
    const double t = 0.05 + 0.001 * (i % 1000);
    worst = std::max(worst, (beltrami_inverse(beltrami(p)).coords() - p.coords()).norm());
    const Vec x = beltrami(p);
    worst = std::max(worst, (beltrami(beltrami_inverse(x)) - x).norm() / (1.0 + x.norm()));
    worst = std::max(worst, (beltrami_deform(p, t).coords() - beltrami_inverse(t * x).coords()).norm());
  }
  o.detail << "round_trip=" << worst;
  o.require(worst < 1e-12, "round trips within 1e-12");
  BlowupConfig cfg;
  const BlowupStudy st = blowup_study(off_pole_sphere(2), {1.0, 0.5, 0.25, 0.125}, cfg);
  o.detail << " min|k|:";
  for (const auto& row : st.rows) o.detail << " " << row.min_abs_curvature;
  o.require(st.strictly_increasing, "min|k| strictly increasing");
  o.require(st.rows.back().min_abs_curvature > 1.0, "min|k| > 1 at t = 1/8");
  // The deformed spheres also feed the falsification monitor.
  for (double t : {0.5, 0.125}) {
    const HypersurfaceMesh mesh = default_mesh(deform_chart(off_pole_sphere(2), t));
    keep(check_theorem1(mesh));
  }
}

// Criterion 9
void quotient_lemmas(Outcome& o) {
  const SpherePoint p0 = SpherePoint::basis(4, 3);
  std::vector<IsometryGroup> groups = {IsometryGroup::antipodal(4), IsometryGroup::lens(3), IsometryGroup::lens(5, 2)};
  for (const auto& g : groups) {
    const LemmaReport l = verify_lemmas(g, p0, 10000, 9);
    o.detail << g.name() << ": small_ball " << l.small_ball_violations << "/" << l.small_ball_samples
             << " iso_err=" << l.isometry_max_error << " inj=" << l.injectivity_violations
             << " antipode_excluded=" << l.antipode_excluded << "  ";
    o.require(l.small_ball_samples >= 10000 && l.small_ball_violations == 0, "small ball lemma");
    o.require(l.isometry_pairs >= 10000 && l.isometry_max_error < 1e-10 && l.injectivity_violations == 0,
              "isometry lemma");
    o.require(l.antipode_excluded, "antipodal lemma");
  }
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double id = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double r = kPi * (0.05 + 0.95 * unif(rng));
    const double R = 0.95 * unif(rng) * r / 2.0;
    id = std::max(id, theorem2_identity_residual(r, R));
  }
  o.detail << "identity=" << id << "  ";
  o.require(id < 1e-10, "bound identity within 1e-10");

  const CutLocusSampler sampler(groups[0], p0);
  double cut = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const SpherePoint x(random_unit(rng, 4));
    cut = std::max(cut, std::abs(sampler.distance(x) - distance_to_great_sphere(x, p0)));
  }
  o.detail << "cut_err=" << cut << "  ";
  o.require(cut < 2e-3, "antipodal cut-locus distance vs arcsin within 2e-3");

  for (double c : {kPi / 6, 5 * kPi / 12}) {
    const InvariantMesh mesh = latitude_pair(p0, c, 2, 64);
    const RigidityReport rep = keep(check_theorem2(groups[0], p0, mesh));
    keep(check_corollary(p0, mesh));
    bool leaves_ok = rep.components.size() == 2;
    for (const auto& comp : rep.components)
      leaves_ok = leaves_ok && comp.scan.ran && comp.scan.nonsingular && std::abs(comp.scan.degree) == 1;
    o.detail << "latpair(" << c << "): k=" << rep.components_upstairs.value_or(-1)
             << " multiplicity=" << rep.multiplicity.value_or(-1) << "  ";
    o.require(rep.components_upstairs == 2, "latitude pair has k = 2");
    o.require(rep.multiplicity == 1.0, "multiplicity |G|/k = 1");
    o.require(leaves_ok, "each leaf passes the gauss scan");
  }
}

// Criterion 7: runs last over everything collected above plus the gallery.
void falsification_monitor(Outcome& o) {
  const std::vector<ChartPtr> charts = {
      geodesic_sphere(SpherePoint::basis(4, 3), 5 * kPi / 12, 2),
      geodesic_sphere(SpherePoint::basis(5, 4), 0.4, 3),
      clifford_torus(0.6, 1, 1),
      clifford_torus(1.0 / std::sqrt(2.0), 1, 1),
      cartan_hypersurface(kPi / 12),
      deform_chart(clifford_patch(), 0.125),
  };
  for (const auto& chart : charts) {
    const HypersurfaceMesh mesh = default_mesh(chart);
    const RigidityReport t1 = keep(check_theorem1(mesh));
    keep(check_variation(mesh, SpherePoint(t1.basepoint)));
  }
  int holds = 0, bad = 0;
  for (const auto& r : g_reports) {
    holds += r.hypothesis_holds;
    bad += r.falsification;
  }
  o.detail << "reports=" << g_reports.size() << " hypothesis_holds=" << holds << " falsifications=" << bad;
  o.require(bad == 0, "no falsification events");
}

// Criterion 10
void determinism(Outcome& o) {
  const std::vector<std::string> configs = {
      "command = analyze\nchart = sphere:rho=pi/6\nseed = 4\n",
      "command = ball\nchart = cartan:theta=pi/12\nresolution = 12\nobjective = both\nseed = 5\n",
      "command = quotient-check\nchart = latpair:c=pi/6,n=2\nresolution = 32\nlemma.samples = 2000\nseed = 6\n",
      "command = beltrami-study\nresolution = 32\n",
  };
  for (const auto& cfg : configs) {
    const RunOutput a = run(cfg), b = run(cfg);
    o.require(a.report_json == b.report_json, "byte-identical reports");
    o.require(a.exit_code == b.exit_code, "equal exit codes");
    o.require(a.report_json.find("\"error\"") == std::string::npos, "runs complete");
  }
  o.detail << "configs=" << configs.size();
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0: no runtime budget
    std::function<void(Outcome&)> body;
  };
  const std::vector<Criterion> criteria = {
      {1, "parallel transport formula vs ODE", 5, transport_formula},
      {2, "relationship identity", 60, relationship_identity},
      {3, "curvature closed forms", 0, curvature_closed_forms},
      {4, "ball problems", 120, ball_problems},
      {5, "sharpness scan", 0, sharpness},
      {6, "enclosing-radius pinching, positive case", 0, theorem1_positive},
      {8, "beltrami study", 60, beltrami_study},
      {9, "quotient lemmas", 0, quotient_lemmas},
      {7, "falsification monitor", 0, falsification_monitor},
      {10, "determinism", 0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs >= c.budget_s) {
      o.pass = false;
      o.detail << " [over runtime budget " << c.budget_s << " s]";
    }
    failures += !o.pass;
    std::printf("%s criterion %d (%s): %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str(),
                secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
