// Copyright 2026 The MUXQ Toolkit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the MUXQ quantization toolkit.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Functions return a muxq_status; on failure a
 * human-readable message is available from muxq_last_error() on the calling
 * thread until the next failing call on that thread. Output handles are only
 * written on success.
 */
#ifndef MUXQ_MUXQ_H_
#define MUXQ_MUXQ_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MUXQ_BUILDING_LIBRARY)
#    define MUXQ_API __declspec(dllexport)
#  else
#    define MUXQ_API __declspec(dllimport)
#  endif
#else
#  define MUXQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum muxq_status {
  MUXQ_OK = 0,
  MUXQ_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad enum value */
  MUXQ_ERR_CONFIG = 2,
  MUXQ_ERR_SHAPE = 3,
  MUXQ_ERR_IO = 4,
  MUXQ_ERR_BAD_MAGIC = 5,
  MUXQ_ERR_VERSION = 6,
  MUXQ_ERR_TRUNCATED = 7,
  MUXQ_ERR_NON_FINITE = 8,
  MUXQ_ERR_BAD_HEADER = 9,
  MUXQ_ERR_BUFFER_TOO_SMALL = 10,
  MUXQ_ERR_INTERNAL = 11
} muxq_status;

typedef enum muxq_layout {
  MUXQ_LAYOUT_ACTIVATION = 0, /* rows = tokens, cols = channels */
  MUXQ_LAYOUT_WEIGHT = 1      /* rows = in_features, cols = out_features */
} muxq_layout;

typedef enum muxq_granularity {
  MUXQ_GRAN_PER_TENSOR = 0,
  MUXQ_GRAN_PER_TOKEN = 1,  /* activation rows */
  MUXQ_GRAN_PER_CHANNEL = 2 /* weight columns */
} muxq_granularity;

typedef enum muxq_method {
  MUXQ_METHOD_FP = 0,
  MUXQ_METHOD_NAIVE = 1,
  MUXQ_METHOD_MUXQ = 2,
  MUXQ_METHOD_MIXED = 3
} muxq_method;

typedef enum muxq_mode { MUXQ_MODE_FAKE = 0, MUXQ_MODE_INT = 1 } muxq_mode;

/* Bit width meaning "leave this operand in full precision". */
#define MUXQ_BITS_FULL 0

typedef struct muxq_method_config {
  muxq_method method;
  int act_bits; /* 2..8 or MUXQ_BITS_FULL */
  int w_bits;   /* 2..8 or MUXQ_BITS_FULL */
  muxq_granularity act_granularity;
  muxq_granularity w_granularity;
  double theta;
  int exp_factor;
  muxq_mode mode;
} muxq_method_config;

typedef struct muxq_error_stats {
  double rel_frobenius;
  double max_abs_err;
  double sqnr_db; /* +inf when the error is zero */
} muxq_error_stats;

typedef struct muxq_logit_stats {
  double mean_kl;
  double top1_agreement;
} muxq_logit_stats;

typedef struct muxq_synthetic_spec {
  size_t rows;
  size_t cols;
  double base_std;
  const size_t* outlier_channels;
  size_t n_outliers;
  double outlier_gain;
  uint64_t seed;
  muxq_layout layout;
} muxq_synthetic_spec;

typedef struct muxq_toy_config {
  size_t n_layers;
  size_t d_model;
  size_t n_heads;
  size_t d_ff;
  size_t vocab;
  size_t max_seq;
  uint64_t seed;
  const size_t* outlier_channels;
  size_t n_outliers;
  double outlier_gain;
} muxq_toy_config;

/* Projection targets, combinable as a bit mask. */
#define MUXQ_TARGET_ATTN_IN 1u
#define MUXQ_TARGET_ATTN_OUT 2u
#define MUXQ_TARGET_MLP_IN 4u
#define MUXQ_TARGET_MLP_OUT 8u
#define MUXQ_TARGET_ALL 15u

typedef struct muxq_matrix muxq_matrix;
typedef struct muxq_decomposition muxq_decomposition;
typedef struct muxq_toy_model muxq_toy_model;

MUXQ_API const char* muxq_version(void);
MUXQ_API const char* muxq_last_error(void);
MUXQ_API const char* muxq_status_string(muxq_status status);

/* Caps worker threads for GEMM kernels; n <= 0 restores the default
 * (MUXQ_THREADS or the hardware concurrency). */
MUXQ_API void muxq_set_max_threads(int n);
MUXQ_API int muxq_max_threads(void);

/* Defaults: naive, 8/8 bits, per-tensor, theta 6, exp factor 2, fake mode. */
MUXQ_API void muxq_method_config_init(muxq_method_config* cfg);
/* Defaults: 2 layers, d_model 64, 4 heads, d_ff 256, vocab 256, max_seq 128,
 * seed 0, no outliers, gain 20. */
MUXQ_API void muxq_toy_config_init(muxq_toy_config* cfg);

/* ---- matrices ---------------------------------------------------------- */

/* Copies rows*cols floats from data (may be NULL for an all-zero matrix). */
MUXQ_API muxq_status muxq_matrix_create(size_t rows, size_t cols,
                                        muxq_layout layout, const float* data,
                                        muxq_matrix** out);
MUXQ_API void muxq_matrix_free(muxq_matrix* m);
MUXQ_API size_t muxq_matrix_rows(const muxq_matrix* m);
MUXQ_API size_t muxq_matrix_cols(const muxq_matrix* m);
MUXQ_API muxq_layout muxq_matrix_layout(const muxq_matrix* m);
/* Borrowed pointer to rows*cols row-major floats; valid until freed. */
MUXQ_API const float* muxq_matrix_data(const muxq_matrix* m);

MUXQ_API muxq_status muxq_matrix_read(const char* path, muxq_matrix** out);
MUXQ_API muxq_status muxq_matrix_write(const muxq_matrix* m, const char* path);

MUXQ_API muxq_status muxq_generate_synthetic(const muxq_synthetic_spec* spec,
                                             muxq_matrix** out);

/* ---- quantization ------------------------------------------------------ */

MUXQ_API muxq_status muxq_fake_quantize(const muxq_matrix* m, int bits,
                                        muxq_granularity g, muxq_matrix** out);

/* Quantized codes and scales. `q` needs rows*cols entries; `scales` needs 1,
 * rows or cols entries per granularity and *n_scales receives the count. */
MUXQ_API muxq_status muxq_quantize(const muxq_matrix* m, int bits,
                                   muxq_granularity g, int32_t* q,
                                   float* scales, size_t scales_capacity,
                                   size_t* n_scales);

/* x (activation) times w (weight) under cfg; MUXQ_METHOD_FP is the exact
 * full-precision product. */
MUXQ_API muxq_status muxq_run_method(const muxq_matrix* x, const muxq_matrix* w,
                                     const muxq_method_config* cfg,
                                     muxq_matrix** out);

/* ---- outliers and decomposition ---------------------------------------- */

/* Writes up to `capacity` indices; *count always receives the full count.
 * Returns MUXQ_ERR_BUFFER_TOO_SMALL when capacity < count. */
MUXQ_API muxq_status muxq_detect_outliers(const muxq_matrix* x, double theta,
                                          size_t* indices, size_t capacity,
                                          size_t* count);

MUXQ_API muxq_status muxq_decompose(const muxq_matrix* x,
                                    const size_t* outliers, size_t n_outliers,
                                    int exp_factor, muxq_decomposition** out);
MUXQ_API void muxq_decomposition_free(muxq_decomposition* d);
/* Borrowed handles owned by the decomposition. */
MUXQ_API const muxq_matrix* muxq_decomposition_body(const muxq_decomposition* d);
MUXQ_API const muxq_matrix* muxq_decomposition_aux(const muxq_decomposition* d);
MUXQ_API muxq_status muxq_reconstruct(const muxq_decomposition* d,
                                      muxq_matrix** out);

/* ---- metrics ----------------------------------------------------------- */

MUXQ_API muxq_status muxq_error_stats_compute(const muxq_matrix* reference,
                                              const muxq_matrix* candidate,
                                              muxq_error_stats* out);
MUXQ_API muxq_status muxq_logit_stats_compute(const muxq_matrix* reference,
                                              const muxq_matrix* candidate,
                                              muxq_logit_stats* out);
/* `out` needs cols entries. */
MUXQ_API muxq_status muxq_channel_max_profile(const muxq_matrix* x, float* out,
                                              size_t capacity);

/* "channel,max_abs" CSV of the channel profile. Writes at most `capacity`
 * bytes (no terminator); *length always receives the full size. Returns
 * MUXQ_ERR_BUFFER_TOO_SMALL when capacity < *length. */
MUXQ_API muxq_status muxq_profile_csv(const muxq_matrix* x, char* buf,
                                      size_t capacity, size_t* length);

/* ---- toy model --------------------------------------------------------- */

MUXQ_API muxq_status muxq_toy_build(const muxq_toy_config* cfg,
                                    muxq_toy_model** out);
MUXQ_API void muxq_toy_free(muxq_toy_model* model);

/* Logits (n_tokens x vocab). cfg may be NULL for the full-precision forward. */
MUXQ_API muxq_status muxq_toy_forward(const muxq_toy_model* model,
                                      const int32_t* tokens, size_t n_tokens,
                                      const muxq_method_config* cfg,
                                      unsigned targets, muxq_matrix** out);

/* Input of one projection (a single MUXQ_TARGET_* bit) in `layer`. */
MUXQ_API muxq_status muxq_toy_capture(const muxq_toy_model* model,
                                      const int32_t* tokens, size_t n_tokens,
                                      size_t layer, unsigned target,
                                      muxq_matrix** out);

/* Compares the quantized forward against full precision over `corpus`
 * (bytes as tokens, split into max_seq windows). Either output may be NULL. */
MUXQ_API muxq_status muxq_toy_evaluate(const muxq_toy_model* model,
                                       const uint8_t* corpus, size_t len,
                                       const muxq_method_config* cfg,
                                       unsigned targets,
                                       muxq_error_stats* logit_error,
                                       muxq_logit_stats* fidelity);

/* Bundled ASCII evaluation corpus; static storage. */
MUXQ_API const uint8_t* muxq_bundled_corpus(size_t* len);

#ifdef __cplusplus
}
#endif

#endif /* MUXQ_MUXQ_H_ */
