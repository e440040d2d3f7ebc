#include <doctest.h>

#include <functional>

#include "error.hpp"
#include "gallery.hpp"
#include "helpers.hpp"
#include "quotient.hpp"

using namespace hyperrig;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_SUITE("quotient") {

TEST_CASE("separation of the standard groups") {
  std::mt19937_64 rng(61);
  SpherePoint p(test::random_unit(rng, 4));
  CHECK(separation(IsometryGroup::antipodal(4), p) == doctest::Approx(kPi));
  for (int k : {3, 4, 5, 7}) {
    // Double rotation by the same angle moves every point by exactly 2 pi / k.
    CHECK(separation(IsometryGroup::lens(k, 1), p) == doctest::Approx(2 * kPi / k).epsilon(1e-12));
    CHECK(IsometryGroup::lens(k, 1).size() == static_cast<std::size_t>(k));
  }
  auto trivial = IsometryGroup::from_matrices({Mat::Identity(4, 4)});
  CHECK(code_of([&] { separation(trivial, p); }) == ErrorCode::TrivialGroup);
}

TEST_CASE("fundamental domain agrees with the inner product test") {
  std::mt19937_64 rng(62);
  for (const auto& group : {IsometryGroup::antipodal(4), IsometryGroup::lens(3), IsometryGroup::lens(5, 2)}) {
    SpherePoint p(test::random_unit(rng, 4));
    int agree = 0, total = 20000;
    for (int i = 0; i < total; ++i) {
      SpherePoint x(test::random_unit(rng, 4));
      bool inside = true;
      for (std::size_t g = 1; g < group.size(); ++g)
        inside = inside && x.coords().dot(p.coords()) > x.coords().dot(group[g] * p.coords());
      agree += inside == in_fundamental_domain(group, p, x);
    }
    CHECK(agree == total);
  }
}

TEST_CASE("bisector membership") {
  auto group = IsometryGroup::antipodal(4);
  SpherePoint p0 = SpherePoint::basis(4, 3);
  auto on = bisector_membership(group, p0, SpherePoint::basis(4, 0));
  REQUIRE(on.size() == 1);
  CHECK(on[0] == 1);
  CHECK(bisector_membership(group, p0, SpherePoint(Vec((Vec(4) << 0.6, 0, 0, 0.8).finished()))).empty());
  CHECK(in_domain_closure(group, p0, SpherePoint::basis(4, 0)));
  CHECK_FALSE(in_fundamental_domain(group, p0, SpherePoint::basis(4, 0)));
  CHECK_FALSE(in_domain_closure(group, p0, p0.antipode()));
}

TEST_CASE("quotient distance") {
  std::mt19937_64 rng(63);
  auto group = IsometryGroup::lens(4);
  for (int i = 0; i < 200; ++i) {
    SpherePoint x(test::random_unit(rng, 4)), y(test::random_unit(rng, 4));
    const double d = quotient_distance(group, x, y);
    CHECK(d <= geodesic_distance(x, y) + 1e-15);
    CHECK(d == doctest::Approx(quotient_distance(group, y, x)).epsilon(1e-12));
    CHECK(d == doctest::Approx(quotient_distance(group, SpherePoint(group[1] * x.coords()), y)).epsilon(1e-12));
  }
  auto anti = IsometryGroup::antipodal(4);
  SpherePoint x(test::random_unit(rng, 4));
  CHECK(quotient_distance(anti, x, x.antipode()) == doctest::Approx(0.0));
}

TEST_CASE("cut locus distances") {
  std::mt19937_64 rng(64);
  SpherePoint p0 = SpherePoint::basis(4, 3);
  CutLocusSampler anti(IsometryGroup::antipodal(4), p0);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    SpherePoint x(test::random_unit(rng, 4));
    worst = std::max(worst, std::abs(anti.distance(x) - distance_to_great_sphere(x, p0)));
  }
  CHECK(worst < 2e-3);
  CHECK(anti.distance(p0) == doctest::Approx(kPi / 2));

  auto lens = IsometryGroup::lens(3);
  CutLocusSampler cs(lens, p0);
  CHECK(cs.sample_count() > 1000);
  // The inradius of the Dirichlet domain is r / 2.
  CHECK(cs.distance(p0) == doctest::Approx(separation(lens, p0) / 2).epsilon(1e-9));
  Mat pts(4, 3);
  for (int i = 0; i < 3; ++i) pts.col(i) = test::random_unit(rng, 4);
  Vec batch = cs.distances(pts);
  for (int i = 0; i < 3; ++i) CHECK(batch[i] == doctest::Approx(cs.distance(SpherePoint(pts.col(i)))));
  // One grid point per bisector: either it lands on the boundary or the
  // sampler refuses to run.
  CutLocusOptions coarse;
  coarse.density = 1;
  try {
    CutLocusSampler tiny(lens, p0, coarse);
    CHECK(tiny.sample_count() <= 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SamplingTooCoarse);
  }
}

TEST_CASE("group validation") {
  Mat refl = Mat::Identity(4, 4);
  refl(3, 3) = -1;
  CHECK(code_of([&] { IsometryGroup::from_matrices({Mat::Identity(4, 4), refl}); }) == ErrorCode::InvalidArgument);
  Mat skew = Mat::Identity(4, 4) * 1.1;
  CHECK(code_of([&] { IsometryGroup::from_matrices({Mat::Identity(4, 4), skew}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { IsometryGroup::from_matrices({-Mat::Identity(4, 4), Mat::Identity(4, 4)}); }) ==
        ErrorCode::InvalidArgument);
  // Generator of order 4 without its powers: not closed.
  auto l4 = IsometryGroup::lens(4);
  CHECK(code_of([&] { IsometryGroup::from_matrices({l4[0], l4[1]}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { IsometryGroup::lens(4, 2); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { IsometryGroup::from_json("[[1,0],"); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { IsometryGroup::from_json("{\"name\":\"x\"}"); }) == ErrorCode::ConfigError);
  try {
    IsometryGroup::from_matrices({Mat::Identity(4, 4), skew});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("element 1") != std::string::npos);
  }
}

TEST_CASE("group JSON round trip") {
  auto lens = IsometryGroup::lens(5, 2);
  auto back = IsometryGroup::from_json(lens.to_json());
  REQUIRE(back.size() == lens.size());
  for (std::size_t i = 0; i < lens.size(); ++i) CHECK((back[i] - lens[i]).norm() < 1e-15);
  auto flat = IsometryGroup::from_json("[[1,0,0,0, 0,1,0,0, 0,0,1,0, 0,0,0,1], [-1,0,0,0, 0,-1,0,0, 0,0,-1,0, 0,0,0,-1]]");
  CHECK(flat.size() == 2);
  CHECK(separation(flat, SpherePoint::basis(4, 0)) == doctest::Approx(kPi));
}

TEST_CASE("lemma sampling") {
  for (const auto& group : {IsometryGroup::antipodal(4), IsometryGroup::lens(3)}) {
    auto rep = verify_lemmas(group, SpherePoint::basis(4, 3), 2000, 5);
    CHECK(rep.small_ball_violations == 0);
    CHECK(rep.injectivity_violations == 0);
    CHECK(rep.isometry_max_error < 1e-10);
    CHECK(rep.antipode_excluded);
  }
}

TEST_CASE("identity between the two forms of the bound") {
  std::mt19937_64 rng(65);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double r = 0.1 + unif(rng) * (kPi - 0.1);
    const double R = unif(rng) * r / 2 * 0.99;
    CHECK(theorem2_identity_residual(r, R) < 1e-10 * (1 + 1 / std::tan((r - 2 * R) / 4)));
  }
}

TEST_CASE("latitude pairs under the antipodal group") {
  SpherePoint p0 = SpherePoint::basis(4, 3);
  auto mesh = latitude_pair(p0, kPi / 6, 2, 32);
  CHECK(mesh.pieces.size() == 2);
  CHECK(invariance_defect(IsometryGroup::antipodal(4), mesh) < 1e-12);
  auto cc = count_components(IsometryGroup::antipodal(4), mesh);
  CHECK(cc.upstairs == 2);
  CHECK(cc.downstairs == 1);

  auto rep = check_theorem2(IsometryGroup::antipodal(4), p0, mesh);
  CHECK(*rep.r == doctest::Approx(kPi));
  CHECK(rep.R == doctest::Approx(kPi / 6).epsilon(1e-3));
  CHECK(*rep.multiplicity == 1.0);
  CHECK(*rep.identity_residual < 1e-10);
  REQUIRE(rep.components.size() == 2);
  for (const auto& c : rep.components) {
    CHECK(c.scan.ran);
    CHECK(c.scan.nonsingular);
    CHECK(std::abs(c.scan.degree) == 1);
  }
  CHECK_FALSE(rep.falsification);
}

TEST_CASE("corollary cases") {
  SpherePoint p0 = SpherePoint::basis(4, 3);
  auto quarter = check_corollary(p0, latitude_pair(p0, kPi / 4, 2, 32));
  CHECK(quarter.R == doctest::Approx(kPi / 4).epsilon(1e-12));
  CHECK(quarter.bound == doctest::Approx(1 + std::sqrt(2.0)).epsilon(1e-12));
  CHECK_FALSE(quarter.hypothesis_holds);
  CHECK(quarter.topology_label.value_or("") == "S^2");

  auto eq = check_corollary(p0, equator_mesh(p0, 2, 32));
  CHECK(*eq.components_upstairs == 1);
  CHECK_FALSE(eq.topology_label);

  // One latitude sphere alone is not antipodally invariant.
  InvariantMesh single;
  single.pieces.push_back(latitude_pair(p0, kPi / 6, 2, 16).pieces.front());
  CHECK(code_of([&] { check_corollary(p0, single); }) == ErrorCode::NotInvariant);
  CHECK(code_of([&] { check_theorem2(IsometryGroup::antipodal(4), p0, single); }) == ErrorCode::NotInvariant);
}

TEST_CASE("clifford torus under a lens group") {
  InvariantMesh torus;
  // Resolution divisible by k keeps the sample grid invariant.
  torus.pieces.push_back(sample_mesh(clifford_torus(1.0 / std::sqrt(2.0), 1, 1), {24, 24}));
  auto lens = IsometryGroup::lens(3);
  CHECK(invariance_defect(lens, torus) < 1e-12);
  auto rep = check_theorem2(lens, SpherePoint::basis(4, 3), torus);
  CHECK(*rep.components_upstairs == 1);
  CHECK(*rep.multiplicity == 3.0);
  CHECK_FALSE(rep.hypothesis_holds);
  CHECK_FALSE(rep.falsification);
  // A torus: the Gauss map has degree 0.
  REQUIRE(rep.components.size() == 1);
  CHECK(rep.components[0].scan.degree == 0);
  InvariantMesh odd;
  odd.pieces.push_back(sample_mesh(clifford_torus(1.0 / std::sqrt(2.0), 1, 1), {16, 16}));
  CHECK(code_of([&] { check_theorem2(lens, SpherePoint::basis(4, 3), odd); }) == ErrorCode::NotInvariant);
}

TEST_CASE("basepoint on the mesh leaves no room for the small ball") {
  SpherePoint q = SpherePoint::basis(4, 3);
  auto mesh = latitude_pair(q, kPi / 4, 2, 16);
  bool tested = false;
  for (const auto& s : mesh.pieces.front().samples()) {
    SpherePoint p0(s.point.coords());
    if (!(std::abs(p0.coords().dot(s.point.coords())) >= 1.0)) continue;
    // R = pi/2 = r/2 for the antipodal group.
    CHECK(code_of([&] { check_corollary(p0, mesh); }) == ErrorCode::RTooLarge);
    tested = true;
    break;
  }
  CHECK(tested);
}

}
