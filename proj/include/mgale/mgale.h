/*---------------------------------*-C-*-------------------------------------*/
/* Copyright 2026 mgale developers.
 * SPDX-License-Identifier: Apache-2.0 */
/*---------------------------------------------------------------------------*/
/*! \file mgale/mgale.h
 * Stable C interface.
 *
 * Handles are opaque. Every call returns an mgale_status; on failure the
 * message (and, for configuration errors, the offending key) is available
 * from mgale_last_error() on the calling thread. Strings returned through
 * result handles stay valid until the handle is freed.
 */
/*---------------------------------------------------------------------------*/
#ifndef MGALE_MGALE_H
#define MGALE_MGALE_H

#include <stddef.h>
#include <stdint.h>

#if defined(MGALE_BUILDING_LIBRARY)
#    define MGALE_API __attribute__((visibility("default")))
#else
#    define MGALE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mgale_status
{
    MGALE_OK = 0,
    MGALE_ERR_INPUT = 1,       /*!< invalid argument */
    MGALE_ERR_MODEL = 2,       /*!< invalid model description */
    MGALE_ERR_UNSUPPORTED = 3, /*!< operation does not apply to the model */
    MGALE_ERR_BUDGET = 4,      /*!< size guard exceeded */
    MGALE_ERR_CONFIG = 5,      /*!< invalid configuration */
    MGALE_ERR_IO = 6,          /*!< file could not be read or written */
    MGALE_ERR_INCONCLUSIVE = 7, /*!< sample too small for the tolerance */
    MGALE_ERR_INTERNAL = 8
} mgale_status;

typedef struct mgale_model mgale_model;
typedef struct mgale_result mgale_result;

MGALE_API char const* mgale_version(void);
MGALE_API char const* mgale_status_name(mgale_status s);

/*! Message of the last failure on this thread ("" if none). */
MGALE_API char const* mgale_last_error(void);
/*! Configuration key of the last ConfigError on this thread ("" if none). */
MGALE_API char const* mgale_last_error_key(void);

/*--- Models ---------------------------------------------------------------*/
/*! catalogue_path may be NULL for the built-in catalogue. */
MGALE_API mgale_status mgale_model_from_catalogue(char const* id,
                                                  char const* catalogue_path,
                                                  mgale_model** out);
MGALE_API mgale_status mgale_model_from_json(char const* json, mgale_model** out);
MGALE_API void mgale_model_free(mgale_model* m);
MGALE_API mgale_status mgale_model_describe(mgale_model const* m, mgale_result** out);

/*! JSON listing of catalogue ids and parameter schemas. */
MGALE_API mgale_status mgale_list_models(char const* catalogue_path, mgale_result** out);

/*--- Simulation -----------------------------------------------------------*/
/*! Fill out[p * n + i] with X_i on path p (buffer of npaths * n doubles). */
MGALE_API mgale_status mgale_sample_paths(mgale_model const* m,
                                          size_t n,
                                          size_t npaths,
                                          uint64_t seed,
                                          unsigned workers,
                                          double* out);

/*--- Analyses (options and results as JSON) -------------------------------*/
/*! options: {"ids": [...], "npaths", "seed", "workers", "tol", "horizon"}. */
MGALE_API mgale_status mgale_criteria(mgale_model const* m,
                                      char const* options_json,
                                      mgale_result** out);
/*! kind: "plus" or "mplus"; options: {"n_grid", "npaths", "seed", "workers"}. */
MGALE_API mgale_status mgale_norm(mgale_model const* m,
                                  char const* functional,
                                  double p,
                                  char const* kind,
                                  char const* options_json,
                                  mgale_result** out);
/*! options: {"n", "k", "outer", "inner", "family", "tol", "seed", "workers"}. */
MGALE_API mgale_status mgale_clt_test(mgale_model const* m,
                                      char const* options_json,
                                      mgale_result** out);
/*! options: {"n", "paths", "functionals", "tol", "seed", "workers",
 *  "condition_state"}. */
MGALE_API mgale_status mgale_fclt_test(mgale_model const* m,
                                       char const* options_json,
                                       mgale_result** out);

/*--- Configured runs ------------------------------------------------------*/
/*! overrides: {"out", "seed", "paths", "format", "workers"} or NULL. */
MGALE_API mgale_status mgale_validate_config(char const* path,
                                             char const* overrides_json,
                                             mgale_result** out);
/*! Runs the configuration; *passed receives the overall verdict. */
MGALE_API mgale_status mgale_run_config(char const* path,
                                        char const* overrides_json,
                                        mgale_result** manifest,
                                        int* passed);

/*--- Results --------------------------------------------------------------*/
MGALE_API char const* mgale_result_json(mgale_result const* r);
MGALE_API void mgale_result_free(mgale_result* r);

#ifdef __cplusplus
}
#endif

#endif /* MGALE_MGALE_H */
