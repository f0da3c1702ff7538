/* Copyright 2026 The vismap Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the vismap visibility-map engine.
 *
 * All functions return a vismap_status. On failure a human-readable message
 * is available from vismap_last_error() on the calling thread until the next
 * call into the library from that thread. Handles are opaque and owned by
 * the caller; release them with the matching *_free function (NULL is
 * accepted).
 */
#ifndef VISMAP_VISMAP_H
#define VISMAP_VISMAP_H

#include <stddef.h>
#include <stdint.h>

#ifndef VISMAP_API
#if defined(_WIN32)
#define VISMAP_API __declspec(dllexport)
#else
#define VISMAP_API __attribute__((visibility("default")))
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum vismap_status {
  VISMAP_OK = 0,
  VISMAP_ERR_INTERNAL = 1,  /* null handle, unexpected failure */
  VISMAP_ERR_CONFIG = 2,
  VISMAP_ERR_PARSE = 3,
  VISMAP_ERR_COMPUTE = 4,
  VISMAP_ERR_IO = 5
} vismap_status;

typedef struct vismap_config vismap_config;
typedef struct vismap_dataset vismap_dataset;
typedef struct vismap_result vismap_result;

typedef struct vismap_waypoint {
  double x;     /* m */
  double y;     /* m */
  double c;     /* visibility factor */
  double alpha; /* degrees, 0 = normal along +y */
} vismap_waypoint;

typedef struct vismap_params {
  double vmax;      /* m, default 30 */
  double thickness; /* cells, default 3 */
  int every_cell;   /* nonzero: cast one ray per cell instead of edge rays */
  int workers;      /* 0: hardware concurrency */
} vismap_params;

typedef struct vismap_run_summary {
  int nx;
  int ny;
  int waypoints;
  int times;
  uint64_t geometry_evaluations;
  uint64_t pair_evaluations;
  uint64_t passable_cells; /* in the time-aggregated map */
} vismap_run_summary;

VISMAP_API const char* vismap_version(void);
VISMAP_API const char* vismap_last_error(void);
VISMAP_API const char* vismap_status_name(vismap_status status);
VISMAP_API vismap_params vismap_default_params(void);

/* Run configuration (JSON file plus key/value overrides). */
VISMAP_API vismap_status vismap_config_load(const char* path, vismap_config** out);
VISMAP_API vismap_status vismap_config_parse(const char* json_text, const char* base_dir, vismap_config** out);
/* Keys: input, out, times, vmax, thickness, quantity, height. */
VISMAP_API vismap_status vismap_config_set(vismap_config* config, const char* key, const char* value);
VISMAP_API void vismap_config_free(vismap_config* config);

/* Full pipeline: load inputs, compute, write artifacts and manifest.json. */
VISMAP_API vismap_status vismap_run(const vismap_config* config, vismap_run_summary* summary);

/* Scene + field loaded from an FDS directory/.smv file or a portable
 * directory (scene.txt + field.bin). quantity may be NULL for the default. */
VISMAP_API vismap_status vismap_dataset_open(const char* input, const char* quantity, double eval_height,
                                             vismap_dataset** out);
VISMAP_API vismap_status vismap_dataset_open_portable(const char* scene_path, const char* field_path,
                                                      vismap_dataset** out);
VISMAP_API vismap_status vismap_dataset_shape(const vismap_dataset* ds, int* nx, int* ny, double* origin_x,
                                              double* origin_y, double* cell_size);
VISMAP_API vismap_status vismap_dataset_frame_count(const vismap_dataset* ds, size_t* count);
VISMAP_API vismap_status vismap_dataset_frame_time(const vismap_dataset* ds, size_t frame, double* time);
/* Row-major (j outer) copy of the nx*ny obstruction mask. */
VISMAP_API vismap_status vismap_dataset_obstructions(const vismap_dataset* ds, uint8_t* mask, size_t len);
/* Writes scene.txt and field.bin into dir (created if needed). */
VISMAP_API vismap_status vismap_dataset_write_portable(const vismap_dataset* ds, const char* dir);
VISMAP_API void vismap_dataset_free(vismap_dataset* ds);

/* In-memory computation without any file output. */
VISMAP_API vismap_status vismap_compute(const vismap_dataset* ds, const vismap_waypoint* waypoints, size_t n_waypoints,
                                        const double* times, size_t n_times, const vismap_params* params,
                                        vismap_result** out);
VISMAP_API vismap_status vismap_result_summary(const vismap_result* r, vismap_run_summary* summary);
/* nx*ny bytes: 1 pass, 0 fail (obstructed cells are 0). */
VISMAP_API vismap_status vismap_result_aggregate(const vismap_result* r, uint8_t* map, size_t len);
VISMAP_API vismap_status vismap_result_time_map(const vismap_result* r, size_t t, uint8_t* map, size_t len);
/* nx*ny doubles; cells that never fail hold +infinity. */
VISMAP_API vismap_status vismap_result_aset(const vismap_result* r, double* aset, size_t len);
VISMAP_API void vismap_result_free(vismap_result* r);

#ifdef __cplusplus
}
#endif

#endif /* VISMAP_VISMAP_H */
