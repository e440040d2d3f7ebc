#include "hyperrig/hyperrig.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "beltrami.hpp"
#include "error.hpp"
#include "quotient.hpp"
#include "run.hpp"

using namespace hyperrig;

struct hr_chart {
  ChartPtr chart;
};
struct hr_mesh {
  HypersurfaceMesh mesh;
};
struct hr_group {
  IsometryGroup group;
};

namespace {

thread_local std::string last_error;

hr_status fail(hr_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <typename F>
hr_status guarded(F&& f) {
  try {
    f();
    return HR_OK;
  } catch (const Error& e) {
    return fail(static_cast<hr_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::exception& e) {
    return fail(HR_INTERNAL, e.what());
  } catch (...) {
    return fail(HR_INTERNAL, "unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

Vec to_vec(const double* p, int dim) {
  require(p != nullptr, "null coordinate pointer");
  require(dim >= 2, "dimension must be >= 2");
  return Eigen::Map<const Vec>(p, dim);
}

}  // namespace

extern "C" {

const char* hr_version(void) { return "1.0.0"; }

const char* hr_status_name(hr_status status) {
  if (status == HR_OK) return "Ok";
  if (status < HR_INVALID_ARGUMENT || status > HR_INTERNAL) return "Unknown";
  return error_code_name(static_cast<ErrorCode>(static_cast<int>(status)));
}

const char* hr_last_error(void) { return last_error.c_str(); }

hr_status hr_geodesic_distance(const double* p, const double* q, int dim, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = geodesic_distance(SpherePoint(to_vec(p, dim)), SpherePoint(to_vec(q, dim)));
  });
}

hr_status hr_parallel_transport(const double* p, const double* q, const double* v, int dim, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const TangentVector tv(SpherePoint(to_vec(p, dim)), to_vec(v, dim));
    const TangentVector moved = parallel_transport(tv, SpherePoint(to_vec(q, dim)));
    Eigen::Map<Vec>(out, dim) = moved.vec();
  });
}

hr_status hr_chart_from_spec(const char* spec, hr_chart** out) {
  return guarded([&] {
    require(spec != nullptr && out != nullptr, "null argument");
    *out = new hr_chart{chart_from_spec(spec)};
  });
}

hr_status hr_chart_deform(const hr_chart* chart, double t, hr_chart** out) {
  return guarded([&] {
    require(chart != nullptr && out != nullptr, "null argument");
    *out = new hr_chart{deform_chart(chart->chart, t)};
  });
}

void hr_chart_free(hr_chart* chart) { delete chart; }

int hr_chart_param_dim(const hr_chart* chart) { return chart ? chart->chart->param_dim() : 0; }

int hr_chart_ambient_dim(const hr_chart* chart) { return chart ? chart->chart->ambient_dim() : 0; }

hr_status hr_chart_curvatures(const hr_chart* chart, const double* u, double* out) {
  return guarded([&] {
    require(chart != nullptr && u != nullptr && out != nullptr, "null argument");
    const int n = chart->chart->param_dim();
    const Vec k = principal_curvatures(*chart->chart, Eigen::Map<const Vec>(u, n));
    Eigen::Map<Vec>(out, n) = k;
  });
}

hr_status hr_mesh_sample(const hr_chart* chart, const int* resolution, int threads, hr_mesh** out) {
  return guarded([&] {
    require(chart != nullptr && resolution != nullptr && out != nullptr, "null argument");
    const int n = chart->chart->param_dim();
    MeshOptions opts;
    opts.threads = threads < 1 ? 1 : threads;
    *out = new hr_mesh{sample_mesh(chart->chart, std::vector<int>(resolution, resolution + n), opts)};
  });
}

void hr_mesh_free(hr_mesh* mesh) { delete mesh; }

size_t hr_mesh_size(const hr_mesh* mesh) { return mesh ? mesh->mesh.size() : 0; }

double hr_mesh_area(const hr_mesh* mesh) { return mesh ? mesh->mesh.total_area() : 0.0; }

hr_status hr_mesh_curvature_range(const hr_mesh* mesh, double* min_abs, double* max_abs) {
  return guarded([&] {
    require(mesh != nullptr && min_abs != nullptr && max_abs != nullptr, "null argument");
    *min_abs = mesh->mesh.min_abs_curvature();
    *max_abs = mesh->mesh.max_abs_curvature();
  });
}

hr_status hr_mesh_write_csv(const hr_mesh* mesh, const char* path) {
  return guarded([&] {
    require(mesh != nullptr && path != nullptr, "null argument");
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::IoError, std::string("cannot open '") + path + "'");
    write_mesh_csv(mesh->mesh, f);
    if (!f) throw Error(ErrorCode::IoError, std::string("write to '") + path + "' failed");
  });
}

hr_status hr_mesh_ball(const hr_mesh* mesh, int objective, unsigned long long seed, double* radius,
                       double* center) {
  return guarded([&] {
    require(mesh != nullptr && radius != nullptr, "null argument");
    require(objective == 0 || objective == 1, "objective must be 0 (enclosing) or 1 (empty)");
    BallConfig cfg;
    cfg.seed = seed;
    const Mat pts = mesh->mesh.point_matrix();
    const BallResult b = objective == 0 ? smallest_enclosing_ball(pts, cfg) : largest_empty_ball(pts, cfg);
    *radius = b.radius;
    if (center) Eigen::Map<Vec>(center, b.center.ambient_dim()) = b.center.coords();
  });
}

hr_status hr_group_antipodal(int ambient_dim, hr_group** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new hr_group{IsometryGroup::antipodal(ambient_dim)};
  });
}

hr_status hr_group_lens(int k, int q, hr_group** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new hr_group{IsometryGroup::lens(k, q)};
  });
}

hr_status hr_group_from_json(const char* json, hr_group** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new hr_group{IsometryGroup::from_json(json)};
  });
}

void hr_group_free(hr_group* group) { delete group; }

size_t hr_group_size(const hr_group* group) { return group ? group->group.size() : 0; }

hr_status hr_group_separation(const hr_group* group, const double* p, int dim, double* out) {
  return guarded([&] {
    require(group != nullptr && out != nullptr, "null argument");
    require(dim == group->group.ambient_dim(), "point dimension does not match the group");
    *out = separation(group->group, SpherePoint(to_vec(p, dim)));
  });
}

hr_status hr_run(const char* config_text, char** report_json, int* exit_code) {
  return guarded([&] {
    require(config_text != nullptr && report_json != nullptr && exit_code != nullptr, "null argument");
    const RunOutput r = run(config_text);
    char* buf = static_cast<char*>(std::malloc(r.report_json.size() + 1));
    if (!buf) throw Error(ErrorCode::Internal, "out of memory");
    std::memcpy(buf, r.report_json.c_str(), r.report_json.size() + 1);
    *report_json = buf;
    *exit_code = r.exit_code;
  });
}

void hr_string_free(char* s) { std::free(s); }

}  // extern "C"
