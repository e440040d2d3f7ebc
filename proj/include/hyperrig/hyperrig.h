/* hyperrig: curvature-pinching rigidity checks for hypersurfaces of spheres.
 *
 * Plain C interface. Objects are opaque handles owned by the caller and
 * released with the matching *_free function. Every fallible call returns an
 * hr_status; on failure hr_last_error() describes the problem (thread-local,
 * valid until the next failing call on the same thread). */
#ifndef HYPERRIG_HYPERRIG_H
#define HYPERRIG_HYPERRIG_H

#include <stddef.h>

#if defined(HYPERRIG_BUILDING_LIBRARY)
#define HR_API __attribute__((visibility("default")))
#else
#define HR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hr_status {
  HR_OK = 0,
  HR_INVALID_ARGUMENT = 1,
  HR_ANTIPODAL_POINTS = 2,
  HR_DEGENERATE_IMMERSION = 3,
  HR_SINGULAR_GAUSS_MAP = 4,
  HR_NON_INTEGER_DEGREE = 5,
  HR_EMPTY_INPUT = 6,
  HR_DEGENERATE_ENCLOSURE = 7,
  HR_DIMENSION_TOO_LARGE = 8,
  HR_OUTSIDE_HEMISPHERE = 9,
  HR_THETA_OUT_OF_RANGE = 10,
  HR_BAD_DIMENSION = 11,
  HR_TRIVIAL_GROUP = 12,
  HR_NOT_INVARIANT = 13,
  HR_R_TOO_LARGE = 14,
  HR_SAMPLING_TOO_COARSE = 15,
  HR_CONFIG_ERROR = 16,
  HR_IO_ERROR = 17,
  HR_INTERNAL = 18
} hr_status;

typedef struct hr_chart hr_chart;
typedef struct hr_mesh hr_mesh;
typedef struct hr_group hr_group;

HR_API const char* hr_version(void);
HR_API const char* hr_status_name(hr_status status);
HR_API const char* hr_last_error(void);

/* Sphere geometry on raw coordinate arrays of length dim. */
HR_API hr_status hr_geodesic_distance(const double* p, const double* q, int dim, double* out);
/* Transport of v (tangent at p) to q along the minimizing geodesic. */
HR_API hr_status hr_parallel_transport(const double* p, const double* q, const double* v, int dim, double* out);

/* Charts from a spec string such as "sphere:rho=pi/6,n=2", "clifford:r=0.6,j=1,k=2",
 * "cartan:theta=pi/12", "clifford-patch" or "equator:n=2". */
HR_API hr_status hr_chart_from_spec(const char* spec, hr_chart** out);
/* The chart composed with the hemisphere deformation for parameter t > 0. */
HR_API hr_status hr_chart_deform(const hr_chart* chart, double t, hr_chart** out);
HR_API void hr_chart_free(hr_chart* chart);
HR_API int hr_chart_param_dim(const hr_chart* chart);
HR_API int hr_chart_ambient_dim(const hr_chart* chart);
/* Principal curvatures (ascending, param_dim values) at parameter u. */
HR_API hr_status hr_chart_curvatures(const hr_chart* chart, const double* u, double* out);

/* Samples the chart on a grid; resolution has param_dim entries. */
HR_API hr_status hr_mesh_sample(const hr_chart* chart, const int* resolution, int threads, hr_mesh** out);
HR_API void hr_mesh_free(hr_mesh* mesh);
HR_API size_t hr_mesh_size(const hr_mesh* mesh);
HR_API double hr_mesh_area(const hr_mesh* mesh);
HR_API hr_status hr_mesh_curvature_range(const hr_mesh* mesh, double* min_abs, double* max_abs);
HR_API hr_status hr_mesh_write_csv(const hr_mesh* mesh, const char* path);
/* Smallest enclosing (objective 0) or largest empty (objective 1) ball of
 * the mesh points. center receives ambient_dim values and may be NULL. */
HR_API hr_status hr_mesh_ball(const hr_mesh* mesh, int objective, unsigned long long seed, double* radius,
                              double* center);

HR_API hr_status hr_group_antipodal(int ambient_dim, hr_group** out);
HR_API hr_status hr_group_lens(int k, int q, hr_group** out);
HR_API hr_status hr_group_from_json(const char* json, hr_group** out);
HR_API void hr_group_free(hr_group* group);
HR_API size_t hr_group_size(const hr_group* group);
HR_API hr_status hr_group_separation(const hr_group* group, const double* p, int dim, double* out);

/* Runs one pipeline from flat "key = value" config text. *report_json
 * receives a string to release with hr_string_free; *exit_code receives 0
 * (success), 2 (hypothesis failed), 1 (error or falsification) or 64 (bad
 * config). Returns HR_OK whenever a report was produced. */
HR_API hr_status hr_run(const char* config_text, char** report_json, int* exit_code);
HR_API void hr_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
