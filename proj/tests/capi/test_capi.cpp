#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include <hyperrig/hyperrig.h>

TEST_CASE("status names and version") {
  CHECK(std::string(hr_version()).size() > 0);
  CHECK(std::string(hr_status_name(HR_OK)) == "Ok");
  CHECK(std::string(hr_status_name(HR_THETA_OUT_OF_RANGE)) == "ThetaOutOfRange");
}

TEST_CASE("sphere primitives") {
  const double p[3] = {1, 0, 0}, q[3] = {0, 1, 0}, v[3] = {0, 0, 1}, w[3] = {0, 1, 0};
  double d = 0;
  REQUIRE(hr_geodesic_distance(p, q, 3, &d) == HR_OK);
  CHECK(d == doctest::Approx(M_PI / 2));
  double out[3];
  REQUIRE(hr_parallel_transport(p, q, w, 3, out) == HR_OK);
  CHECK(out[0] == doctest::Approx(-1.0));
  REQUIRE(hr_parallel_transport(p, q, v, 3, out) == HR_OK);
  CHECK(out[2] == doctest::Approx(1.0));
  const double mp[3] = {-1, 0, 0};
  CHECK(hr_parallel_transport(p, mp, w, 3, out) == HR_ANTIPODAL_POINTS);
  CHECK(std::string(hr_last_error()).size() > 0);
  CHECK(hr_geodesic_distance(nullptr, q, 3, &d) == HR_INVALID_ARGUMENT);
}

TEST_CASE("charts and meshes") {
  hr_chart* chart = nullptr;
  REQUIRE(hr_chart_from_spec("clifford:r=0.6", &chart) == HR_OK);
  CHECK(hr_chart_param_dim(chart) == 2);
  CHECK(hr_chart_ambient_dim(chart) == 4);
  const double u[2] = {0.3, 0.4};
  double k[2];
  REQUIRE(hr_chart_curvatures(chart, u, k) == HR_OK);
  CHECK(k[0] == doctest::Approx(-0.8 / 0.6));
  CHECK(k[1] == doctest::Approx(0.6 / 0.8));

  const int res[2] = {32, 32};
  hr_mesh* mesh = nullptr;
  REQUIRE(hr_mesh_sample(chart, res, 1, &mesh) == HR_OK);
  CHECK(hr_mesh_size(mesh) == 1024);
  CHECK(hr_mesh_area(mesh) == doctest::Approx(4 * M_PI * M_PI * 0.48));
  double lo = 0, hi = 0;
  REQUIRE(hr_mesh_curvature_range(mesh, &lo, &hi) == HR_OK);
  CHECK(lo == doctest::Approx(0.75));
  double radius = 0, center[4];
  REQUIRE(hr_mesh_ball(mesh, 1, 0, &radius, center) == HR_OK);
  CHECK(std::abs(std::cos(radius) - 0.6) < 5e-3);
  CHECK(hr_mesh_write_csv(mesh, "/nonexistent-dir/x.csv") == HR_IO_ERROR);
  hr_mesh_free(mesh);

  hr_chart* bad = nullptr;
  CHECK(hr_chart_from_spec("cartan:theta=1.0", &bad) == HR_THETA_OUT_OF_RANGE);
  CHECK(bad == nullptr);
  hr_chart* deformed = nullptr;
  CHECK(hr_chart_deform(chart, 0.5, &deformed) == HR_OK);
  hr_chart_free(deformed);
  hr_chart_free(chart);
}

TEST_CASE("groups") {
  hr_group* g = nullptr;
  REQUIRE(hr_group_lens(3, 1, &g) == HR_OK);
  CHECK(hr_group_size(g) == 3);
  const double p[4] = {0, 0, 0, 1};
  double r = 0;
  REQUIRE(hr_group_separation(g, p, 4, &r) == HR_OK);
  CHECK(r == doctest::Approx(2 * M_PI / 3));
  hr_group_free(g);
  CHECK(hr_group_lens(4, 2, &g) == HR_INVALID_ARGUMENT);
  CHECK(hr_group_from_json("not json", &g) == HR_CONFIG_ERROR);
  REQUIRE(hr_group_antipodal(4, &g) == HR_OK);
  CHECK(hr_group_size(g) == 2);
  hr_group_free(g);
}

TEST_CASE("run") {
  char* report = nullptr;
  int code = -1;
  REQUIRE(hr_run("command = analyze\nchart = sphere:rho=pi/6\nresolution = 32\n", &report, &code) == HR_OK);
  CHECK(code == 0);
  CHECK(std::string(report).find("\"hypothesis_holds\": true") != std::string::npos);
  hr_string_free(report);
  REQUIRE(hr_run("bogus = 1\n", &report, &code) == HR_OK);
  CHECK(code == 64);
  hr_string_free(report);
}
