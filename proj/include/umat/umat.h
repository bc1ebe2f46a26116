/* SPDX-License-Identifier: Apache-2.0 */
#ifndef UMAT_UMAT_H
#define UMAT_UMAT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(UMAT_BUILDING_LIBRARY)
#define UMAT_API __attribute__((visibility("default")))
#else
#define UMAT_API
#endif

/* Opaque material handle: a parameter table, its fibers and unit annotation. */
typedef struct umat_material umat_material;

typedef enum umat_status {
  UMAT_OK = 0,
  UMAT_ERR_NON_POSITIVE_JACOBIAN = 1,
  UMAT_ERR_INVALID_PAIR = 2,
  UMAT_ERR_LOG_DOMAIN = 3,
  UMAT_ERR_UNKNOWN_INVARIANT_SLOT = 4,
  UMAT_ERR_VOLUMETRIC_IN_INCOMPRESSIBLE = 5,
  UMAT_ERR_MISSING_PRESSURE = 6,
  UMAT_ERR_INCOMPRESSIBILITY_VIOLATED = 7,
  UMAT_ERR_PARSE = 8,
  UMAT_ERR_UNKNOWN_PRESET = 9,
  UMAT_ERR_MISSING_PARAMETER = 10,
  UMAT_ERR_UNKNOWN_PARAMETER = 11,
  UMAT_ERR_NON_POSITIVE_MODULUS = 12,
  UMAT_ERR_NO_CONVERGENCE = 13,
  UMAT_ERR_STEP_FAILURE = 14,
  UMAT_ERR_INVALID_ARGUMENT = 15,
  UMAT_ERR_INTERNAL = 16,
  UMAT_ERR_NULL_ARGUMENT = 17
} umat_status;

typedef enum umat_load_mode {
  UMAT_LOAD_UNIAXIAL = 0,
  UMAT_LOAD_EQUIBIAXIAL = 1,
  UMAT_LOAD_SIMPLE_SHEAR = 2,
  UMAT_LOAD_VOLUMETRIC = 3
} umat_load_mode;

typedef enum umat_report_format { UMAT_REPORT_TEXT = 0, UMAT_REPORT_TSV = 1 } umat_report_format;

/* Symbolic name of a status, e.g. "ParseError". */
UMAT_API const char* umat_status_name(umat_status status);

/* Message of the last failed call on this thread; "" after a success. Parse
 * errors read "line:col: reason". */
UMAT_API const char* umat_last_error(void);

/* Strings returned through char** out-parameters are released with this. */
UMAT_API void umat_string_free(char* text);

UMAT_API umat_status umat_material_from_deck(const char* text, umat_material** out);

/* params: "key=value" pairs separated by commas, or NULL/"" for defaults. */
UMAT_API umat_status umat_material_from_preset(const char* name, const char* params, umat_material** out);

UMAT_API void umat_material_free(umat_material* material);

/* Replaces the fiber directions: `count` row vectors of 3 doubles, normalized on
 * input. `count` must equal the table's LOCAL DIRECTIONS. */
UMAT_API umat_status umat_material_set_fibers(umat_material* material, const double* directions, int count);

UMAT_API umat_status umat_material_properties(const umat_material* material, int* incompressible, int* ndir,
                                              int* rows, int* mixed_rows);

/* Owned by the handle; valid until it is freed. */
UMAT_API const char* umat_material_name(const umat_material* material);
UMAT_API const char* umat_material_units(const umat_material* material);
/* Parser warnings, one per line as "line: message"; "" when there are none. */
UMAT_API const char* umat_material_warnings(const umat_material* material);

UMAT_API umat_status umat_material_serialize(const umat_material* material, char** out_text);

/* Energy and invariant derivatives at 15 invariant values (slot 3 holds J);
 * offsets come from the material's fibers. ui2 is packed: index i + j(j-1)/2
 * (1-based, i <= j), 120 entries. Any output pointer may be NULL. */
UMAT_API umat_status umat_uanisohyper_inv(const umat_material* material, const double invariants[15], double* ua,
                                          double ui1[15], double ui2[120]);

/* F is row-major. */
UMAT_API umat_status umat_invariants(const umat_material* material, const double F[9], double values[15],
                                     double offsets[15]);
UMAT_API umat_status umat_strain_energy(const umat_material* material, const double F[9], double* psi);

/* pressure: required (non-NULL) for incompressible tables, NULL otherwise.
 * sigma is row-major. */
UMAT_API umat_status umat_cauchy_stress(const umat_material* material, const double F[9], const double* pressure,
                                        double sigma[9]);

/* d sigma_ij / d F_kl at flat index ((i*3+j)*3+k)*3+l; step <= 0 selects 1e-6. */
UMAT_API umat_status umat_tangent(const umat_material* material, const double F[9], const double* pressure,
                                  double step, double dsigma_dF[81]);

/* Runs a load path and returns the CSV text. shear_a/shear_b select
 * F = I + gamma e_a (x) e_b for simple shear (1-based). tol <= 0 and
 * max_iter <= 0 select 1e-10 and 50. */
UMAT_API umat_status umat_run_curve(const umat_material* material, umat_load_mode mode, const double* controls,
                                    size_t count, int shear_a, int shear_b, double tol, int max_iter,
                                    char** out_csv);

/* Per-material verification checks; with material == NULL runs the closed-form
 * suite instead. *passed is 1 when every check passes. TSV rows are
 * name, samples, skipped, max_error, tolerance, PASS|FAIL. */
UMAT_API umat_status umat_check(const umat_material* material, unsigned long long seed, umat_report_format format,
                                int* passed, char** out_report);

/* Newline-separated preset names. */
UMAT_API umat_status umat_preset_list(char** out_text);

/* Description, units, parameters with defaults, and the default deck. */
UMAT_API umat_status umat_preset_describe(const char* name, char** out_text);

#ifdef __cplusplus
}
#endif

#endif /* UMAT_UMAT_H */
