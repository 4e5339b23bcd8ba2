// SPDX-License-Identifier: Apache-2.0
//
// thz-vitals-sim: phase-based breathing monitoring for mmWave/THz monostatic sensing
// Copyright (C) 2026 The thz-vitals-sim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef THZVITALS_H
#define THZVITALS_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(THZVITALS_BUILD)
#define TV_API __declspec(dllexport)
#else
#define TV_API __declspec(dllimport)
#endif
#else
#define TV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C"
{
#endif

    // Status codes; every function returning tv_status leaves a message in tv_last_error() on failure
    typedef enum
    {
        TV_OK = 0,
        TV_ERR_INVALID_ARGUMENT = 1,
        TV_ERR_ZERO_VECTOR = 2,
        TV_ERR_UNSUPPORTED_POLARIZATION = 3,
        TV_ERR_EMPTY_CHANNEL = 4,
        TV_ERR_INDEX_MISMATCH = 5,
        TV_ERR_SAMPLING_VIOLATION = 6,
        TV_ERR_TOO_FEW_NODES = 7,
        TV_ERR_DEGENERATE_GEOMETRY = 8,
        TV_ERR_INSUFFICIENT_DATA = 9,
        TV_ERR_PARSE = 10,
        TV_ERR_IO = 11,
        TV_ERR_INTERNAL = 99
    } tv_status;

    typedef struct tv_config tv_config;         // experiment configuration
    typedef struct tv_cir_series tv_cir_series; // channel snapshots of one node
    typedef struct tv_trajectory tv_trajectory; // tracked motion

    typedef struct
    {
        int node_id;
        double d_hat_m;
        double phi_rad;
        double theta_rad;
    } tv_node_measurement;

    typedef struct
    {
        double motion[3]; // m
        double magnitude; // m
        double residual_norm;
    } tv_reconstruction;

    TV_API const char *tv_version(void);

    // Message of the last failure on the calling thread; empty when none
    TV_API const char *tv_last_error(void);
    TV_API const char *tv_status_name(tv_status status);

    // Frees strings returned through char** out parameters
    TV_API void tv_string_free(char *s);

    TV_API tv_status tv_config_create_default(tv_config **out);
    TV_API tv_status tv_config_load(const char *path, tv_config **out);
    // Same keys as the configuration file, e.g. ("radio", "carrier_hz", "100e9")
    TV_API tv_status tv_config_set(tv_config *cfg, const char *section, const char *key, const char *value);
    TV_API void tv_config_destroy(tv_config *cfg);

    // Snapshots of the configured scene along the configured trajectory at rotation gamma_rad
    TV_API tv_status tv_simulate(const tv_config *cfg, double gamma_rad, tv_cir_series **out);
    TV_API tv_status tv_cir_series_load_csv(const char *path, tv_cir_series **out);
    TV_API tv_status tv_cir_series_write_csv(const tv_cir_series *series, const char *path);
    TV_API size_t tv_cir_series_size(const tv_cir_series *series);
    TV_API void tv_cir_series_destroy(tv_cir_series *series);

    // Phase-difference tracking with the grid of cfg (cfg may be NULL for the default grid)
    TV_API tv_status tv_track(const tv_config *cfg, const tv_cir_series *series, tv_trajectory **out);
    TV_API size_t tv_trajectory_steps(const tv_trajectory *traj);
    // step_m and cumulative_m may be NULL; each receives tv_trajectory_steps() values
    TV_API tv_status tv_trajectory_get(const tv_trajectory *traj, double *step_m, double *cumulative_m);
    TV_API tv_status tv_trajectory_write_csv(const tv_trajectory *traj, const char *path);
    TV_API void tv_trajectory_destroy(tv_trajectory *traj);

    TV_API tv_status tv_reconstruct(const tv_node_measurement *nodes, size_t count, tv_reconstruction *out);
    // Measurements CSV in, JSON result out (free with tv_string_free)
    TV_API tv_status tv_reconstruct_csv(const char *path, char **json_out);

    // Runs a named recipe; the JSON report is returned and also written to the output directory if set
    TV_API tv_status tv_run_experiment(const tv_config *cfg, const char *recipe, char **json_out);

    TV_API tv_status tv_unit_vector(double phi_rad, double theta_rad, double out[3]);
    TV_API tv_status tv_estimate_step(double delta_rad, double freq_hz, double *out_m);
    // H(f_k) for paths (delay_s[p], gain_re[p] + j gain_im[p]); out_re/out_im hold n_freq values
    TV_API tv_status tv_nudft(const double *delay_s, const double *gain_re, const double *gain_im, size_t n_paths,
                              const double *freq_hz, size_t n_freq, double *out_re, double *out_im);
    TV_API tv_status tv_unwrap(const double *phases, size_t n, double *out);

#ifdef __cplusplus
}
#endif

#endif
