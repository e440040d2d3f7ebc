#include <doctest.h>

#include "gallery.hpp"
#include "rigidity.hpp"

using namespace hyperrig;

namespace {

bool has_note(const RigidityReport& r, const std::string& text) {
  for (const auto& n : r.notes)
    if (n.find(text) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_SUITE("rigidity") {

TEST_CASE("geodesic sphere of radius pi/6 satisfies the enclosing-radius pinching") {
  const double rho = kPi / 6;
  auto mesh = sample_mesh(geodesic_sphere(SpherePoint::basis(4, 3), rho, 2), {64, 64});
  auto rep = check_theorem1(mesh);
  CHECK(rep.R == doctest::Approx(rho).epsilon(1e-6));
  CHECK(rep.bound == doctest::Approx(std::tan(rho / 2)).epsilon(1e-6));
  CHECK(rep.margin == doctest::Approx(std::sqrt(3.0) - std::tan(kPi / 12)).epsilon(1e-5));
  CHECK(rep.hypothesis_holds);
  CHECK(rep.gauss_map_nonsingular);
  REQUIRE(rep.degree);
  CHECK(std::abs(*rep.degree) == 1);
  CHECK(*rep.degree_residual < 0.05);
  CHECK_FALSE(rep.falsification);
}

TEST_CASE("normal-strip pinching gives the same bound on the sphere") {
  const double rho = kPi / 6;
  SpherePoint c = SpherePoint::basis(4, 3);
  auto mesh = sample_mesh(geodesic_sphere(c, rho, 2), {64, 64});
  auto rep = check_variation(mesh, c);
  REQUIRE(rep.L);
  CHECK(*rep.L == doctest::Approx(rho).epsilon(1e-12));
  CHECK(std::abs(rep.bound - std::tan(rho / 2)) < 1e-9);
  CHECK(rep.hypothesis_holds);
  CHECK(rep.degree.value_or(0) == 1);
}

TEST_CASE("large sphere fails the hypothesis with a note") {
  const double rho = 5 * kPi / 12;
  auto mesh = sample_mesh(geodesic_sphere(SpherePoint::basis(4, 3), rho, 2), {32, 32});
  auto rep = check_theorem1(mesh);
  CHECK_FALSE(rep.hypothesis_holds);
  CHECK(rep.margin < 0.0);
  CHECK(has_note(rep, "sufficient, not necessary"));
  CHECK_FALSE(rep.degree);
  CHECK_FALSE(rep.falsification);
}

TEST_CASE("clifford tori fail the hypothesis") {
  for (double r : {0.6, 1.0 / std::sqrt(2.0)}) {
    auto mesh = sample_mesh(clifford_torus(r, 1, 1), {32, 32});
    RigidityConfig cfg;
    cfg.always_scan = true;
    auto rep = check_theorem1(mesh, cfg);
    CHECK_FALSE(rep.hypothesis_holds);
    CHECK_FALSE(rep.falsification);
  }
}

TEST_CASE("falsification monitor") {
  RigidityReport rep;
  rep.hypothesis_holds = true;
  rep.degree = 1;
  rep.gauss_map_nonsingular = true;
  apply_falsification_monitor(rep);
  CHECK_FALSE(rep.falsification);

  rep.degree = 0;
  apply_falsification_monitor(rep);
  CHECK(rep.falsification);

  RigidityReport singular;
  singular.hypothesis_holds = true;
  singular.degree = 1;
  singular.gauss_map_nonsingular = false;
  apply_falsification_monitor(singular);
  CHECK(singular.falsification);

  RigidityReport unchecked;
  unchecked.hypothesis_holds = true;
  apply_falsification_monitor(unchecked);
  CHECK(unchecked.falsification);

  RigidityReport failing;
  failing.hypothesis_holds = false;
  failing.degree = 3;
  apply_falsification_monitor(failing);
  CHECK_FALSE(failing.falsification);
}

TEST_CASE("inputs digest") {
  auto a = sample_mesh(clifford_torus(0.6, 1, 1), {16, 16});
  auto b = sample_mesh(clifford_torus(0.6, 1, 1), {16, 16});
  auto c = sample_mesh(clifford_torus(0.61, 1, 1), {16, 16});
  CHECK(inputs_digest(a, "") == inputs_digest(b, ""));
  CHECK(inputs_digest(a, "") != inputs_digest(c, ""));
  CHECK(inputs_digest(a, "x") != inputs_digest(a, "y"));
  CHECK(inputs_digest(a, "").size() == 16);
  // FNV-1a 64 reference values.
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("user basepoint") {
  SpherePoint c = SpherePoint::basis(4, 3);
  auto mesh = sample_mesh(geodesic_sphere(c, 0.4, 2), {32, 32});
  auto rep = check_theorem1(mesh, {}, c);
  CHECK(rep.R == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(has_note(rep, "supplied"));
}

TEST_CASE("patches fail the closedness hypothesis") {
  auto patch = restrict_domain(geodesic_sphere(SpherePoint::basis(4, 3), kPi / 6, 2),
                               Vec((Vec(2) << 0.5, 0.0).finished()), Vec((Vec(2) << 2.5, 3.0).finished()));
  CHECK_FALSE(patch->closed());
  CHECK_FALSE(flip_orientation(patch)->closed());
  auto mesh = sample_mesh(patch, {32, 32});
  auto rep = check_theorem1(mesh);
  // Curvature alone would pass: every sample has |k| = sqrt3 and R < pi/6.
  CHECK(rep.margin > 0.0);
  CHECK_FALSE(rep.hypothesis_holds);
  CHECK(has_note(rep, "closed hypersurface"));
  CHECK_FALSE(rep.falsification);
}

TEST_CASE("sharpness scan on a short grid") {
  SharpnessConfig cfg;
  cfg.resolution = 32;
  auto res = sharpness_scan(0.3, {0.5, 1.0 / std::sqrt(2.0), 0.8}, cfg);
  REQUIRE(res.rows.size() == 3);
  CHECK(res.best_r == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(res.max_ratio_analytic == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
  CHECK(res.max_ratio == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-2));
  CHECK(res.ce_satisfiable);
  CHECK(res.ce_satisfiable_analytic);
  for (const auto& row : res.rows) {
    CHECK(std::abs(row.euler_characteristic) < 1e-6);
    CHECK(row.R_enclosing + row.R_empty == doctest::Approx(kPi).epsilon(1e-6));
  }
  auto grid = default_sharpness_grid();
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  CHECK(grid.size() == 18);
}

}
