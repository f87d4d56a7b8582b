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

#include "muxq/muxq.h"

#include <exception>
#include <new>
#include <string>
#include <utility>

#include "muxq/decompose.hpp"
#include "muxq/dump.hpp"
#include "muxq/error.hpp"
#include "muxq/method.hpp"
#include "muxq/metrics.hpp"
#include "muxq/outlier.hpp"
#include "muxq/parallel.hpp"
#include "muxq/quant.hpp"
#include "muxq/synthetic.hpp"
#include "muxq/toy_model.hpp"
#include "muxq/version.hpp"

struct muxq_matrix {
  muxq::DenseMatrix m;
};

struct muxq_decomposition {
  muxq::MuxqDecomposition d;
  muxq_matrix body;
  muxq_matrix aux;
};

struct muxq_toy_model {
  muxq::ToyModel model;
};

namespace {

thread_local std::string g_last_error;

muxq_status SetError(muxq_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

muxq_status FromCode(muxq::ErrorCode code) {
  switch (code) {
    case muxq::ErrorCode::kConfig:
      return MUXQ_ERR_CONFIG;
    case muxq::ErrorCode::kShape:
      return MUXQ_ERR_SHAPE;
    case muxq::ErrorCode::kIo:
      return MUXQ_ERR_IO;
    case muxq::ErrorCode::kBadMagic:
      return MUXQ_ERR_BAD_MAGIC;
    case muxq::ErrorCode::kVersionMismatch:
      return MUXQ_ERR_VERSION;
    case muxq::ErrorCode::kTruncated:
      return MUXQ_ERR_TRUNCATED;
    case muxq::ErrorCode::kNonFinite:
      return MUXQ_ERR_NON_FINITE;
    case muxq::ErrorCode::kBadHeader:
      return MUXQ_ERR_BAD_HEADER;
  }
  return MUXQ_ERR_INTERNAL;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
muxq_status Guard(Fn&& fn) {
  try {
    return fn();
  } catch (const muxq::Error& e) {
    return SetError(FromCode(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return SetError(MUXQ_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return SetError(MUXQ_ERR_INTERNAL, e.what());
  } catch (...) {
    return SetError(MUXQ_ERR_INTERNAL, "unknown exception");
  }
}

muxq_status NullArg(const char* name) {
  return SetError(MUXQ_ERR_INVALID_ARGUMENT,
                  std::string("null argument: ") + name);
}

bool ToLayout(muxq_layout in, muxq::Layout* out) {
  switch (in) {
    case MUXQ_LAYOUT_ACTIVATION:
      *out = muxq::Layout::kActivation;
      return true;
    case MUXQ_LAYOUT_WEIGHT:
      *out = muxq::Layout::kWeight;
      return true;
  }
  return false;
}

bool ToGranularity(muxq_granularity in, muxq::Granularity* out) {
  switch (in) {
    case MUXQ_GRAN_PER_TENSOR:
      *out = muxq::Granularity::kPerTensor;
      return true;
    case MUXQ_GRAN_PER_TOKEN:
      *out = muxq::Granularity::kPerToken;
      return true;
    case MUXQ_GRAN_PER_CHANNEL:
      *out = muxq::Granularity::kPerChannel;
      return true;
  }
  return false;
}

muxq_status ToMethodConfig(const muxq_method_config& in,
                           muxq::MethodConfig* out) {
  switch (in.method) {
    case MUXQ_METHOD_FP:
      out->method = muxq::Method::kFp;
      break;
    case MUXQ_METHOD_NAIVE:
      out->method = muxq::Method::kNaive;
      break;
    case MUXQ_METHOD_MUXQ:
      out->method = muxq::Method::kMuxq;
      break;
    case MUXQ_METHOD_MIXED:
      out->method = muxq::Method::kMixedPrecision;
      break;
    default:
      return SetError(MUXQ_ERR_INVALID_ARGUMENT, "unknown method");
  }
  if (!ToGranularity(in.act_granularity, &out->act_granularity) ||
      !ToGranularity(in.w_granularity, &out->w_granularity)) {
    return SetError(MUXQ_ERR_INVALID_ARGUMENT, "unknown granularity");
  }
  switch (in.mode) {
    case MUXQ_MODE_FAKE:
      out->mode = muxq::ComputeMode::kFake;
      break;
    case MUXQ_MODE_INT:
      out->mode = muxq::ComputeMode::kInt;
      break;
    default:
      return SetError(MUXQ_ERR_INVALID_ARGUMENT, "unknown compute mode");
  }
  out->act_bits = in.act_bits == MUXQ_BITS_FULL
                      ? std::nullopt
                      : std::optional<int>(in.act_bits);
  out->w_bits = in.w_bits == MUXQ_BITS_FULL ? std::nullopt
                                            : std::optional<int>(in.w_bits);
  out->theta = in.theta;
  out->exp_factor = in.exp_factor;
  muxq::ValidateMethodConfig(*out);
  return MUXQ_OK;
}

muxq_matrix* Wrap(muxq::DenseMatrix m) {
  return new muxq_matrix{std::move(m)};
}

void FillStats(const muxq::ErrorStats& s, muxq_error_stats* out) {
  out->rel_frobenius = s.rel_frobenius;
  out->max_abs_err = s.max_abs_err;
  out->sqnr_db = s.sqnr_db;
}

}  // namespace

extern "C" {

const char* muxq_version(void) { return muxq::kVersion; }

const char* muxq_last_error(void) { return g_last_error.c_str(); }

const char* muxq_status_string(muxq_status status) {
  switch (status) {
    case MUXQ_OK:
      return "ok";
    case MUXQ_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case MUXQ_ERR_CONFIG:
      return "configuration error";
    case MUXQ_ERR_SHAPE:
      return "shape mismatch";
    case MUXQ_ERR_IO:
      return "I/O error";
    case MUXQ_ERR_BAD_MAGIC:
      return "bad magic";
    case MUXQ_ERR_VERSION:
      return "version mismatch";
    case MUXQ_ERR_TRUNCATED:
      return "truncated payload";
    case MUXQ_ERR_NON_FINITE:
      return "non-finite value";
    case MUXQ_ERR_BAD_HEADER:
      return "bad header";
    case MUXQ_ERR_BUFFER_TOO_SMALL:
      return "buffer too small";
    case MUXQ_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void muxq_set_max_threads(int n) { muxq::SetMaxThreads(n); }

int muxq_max_threads(void) { return muxq::MaxThreads(); }

void muxq_method_config_init(muxq_method_config* cfg) {
  if (!cfg) return;
  cfg->method = MUXQ_METHOD_NAIVE;
  cfg->act_bits = 8;
  cfg->w_bits = 8;
  cfg->act_granularity = MUXQ_GRAN_PER_TENSOR;
  cfg->w_granularity = MUXQ_GRAN_PER_TENSOR;
  cfg->theta = muxq::kDefaultTheta;
  cfg->exp_factor = muxq::kDefaultExpFactor;
  cfg->mode = MUXQ_MODE_FAKE;
}

void muxq_toy_config_init(muxq_toy_config* cfg) {
  if (!cfg) return;
  const muxq::ToyConfig d;
  cfg->n_layers = d.n_layers;
  cfg->d_model = d.d_model;
  cfg->n_heads = d.n_heads;
  cfg->d_ff = d.d_ff;
  cfg->vocab = d.vocab;
  cfg->max_seq = d.max_seq;
  cfg->seed = d.seed;
  cfg->outlier_channels = nullptr;
  cfg->n_outliers = 0;
  cfg->outlier_gain = d.outlier_gain;
}

muxq_status muxq_matrix_create(size_t rows, size_t cols, muxq_layout layout,
                               const float* data, muxq_matrix** out) {
  if (!out) return NullArg("out");
  return Guard([&] {
    muxq::Layout l;
    if (!ToLayout(layout, &l)) {
      return SetError(MUXQ_ERR_INVALID_ARGUMENT, "unknown layout");
    }
    std::vector<float> values(rows * cols, 0.0f);
    if (data) values.assign(data, data + rows * cols);
    *out = Wrap(muxq::DenseMatrix(rows, cols, std::move(values), l));
    return MUXQ_OK;
  });
}

void muxq_matrix_free(muxq_matrix* m) { delete m; }

size_t muxq_matrix_rows(const muxq_matrix* m) { return m ? m->m.rows() : 0; }

size_t muxq_matrix_cols(const muxq_matrix* m) { return m ? m->m.cols() : 0; }

muxq_layout muxq_matrix_layout(const muxq_matrix* m) {
  return m && m->m.layout() == muxq::Layout::kWeight ? MUXQ_LAYOUT_WEIGHT
                                                     : MUXQ_LAYOUT_ACTIVATION;
}

const float* muxq_matrix_data(const muxq_matrix* m) {
  return m ? m->m.values().data() : nullptr;
}

muxq_status muxq_matrix_read(const char* path, muxq_matrix** out) {
  if (!path) return NullArg("path");
  if (!out) return NullArg("out");
  return Guard([&] {
    *out = Wrap(muxq::ReadDump(path));
    return MUXQ_OK;
  });
}

muxq_status muxq_matrix_write(const muxq_matrix* m, const char* path) {
  if (!m) return NullArg("m");
  if (!path) return NullArg("path");
  return Guard([&] {
    muxq::WriteDump(m->m, path);
    return MUXQ_OK;
  });
}

muxq_status muxq_generate_synthetic(const muxq_synthetic_spec* spec,
                                    muxq_matrix** out) {
  if (!spec) return NullArg("spec");
  if (!out) return NullArg("out");
  if (spec->n_outliers > 0 && !spec->outlier_channels) {
    return NullArg("outlier_channels");
  }
  return Guard([&] {
    muxq::SyntheticSpec s;
    s.rows = spec->rows;
    s.cols = spec->cols;
    s.base_std = spec->base_std;
    s.outlier_channels.assign(spec->outlier_channels,
                              spec->outlier_channels + spec->n_outliers);
    s.outlier_gain = spec->outlier_gain;
    s.seed = spec->seed;
    if (!ToLayout(spec->layout, &s.layout)) {
      return SetError(MUXQ_ERR_INVALID_ARGUMENT, "unknown layout");
    }
    *out = Wrap(muxq::GenerateSynthetic(s));
    return MUXQ_OK;
  });
}

muxq_status muxq_fake_quantize(const muxq_matrix* m, int bits,
                               muxq_granularity g, muxq_matrix** out) {
  if (!m) return NullArg("m");
  if (!out) return NullArg("out");
  return Guard([&] {
    muxq::Granularity gran;
    if (!ToGranularity(g, &gran)) {
      return SetError(MUXQ_ERR_INVALID_ARGUMENT, "unknown granularity");
    }
    *out = Wrap(muxq::FakeQuantize(m->m, bits, gran));
    return MUXQ_OK;
  });
}

muxq_status muxq_quantize(const muxq_matrix* m, int bits, muxq_granularity g,
                          int32_t* q, float* scales, size_t scales_capacity,
                          size_t* n_scales) {
  if (!m) return NullArg("m");
  if (!q) return NullArg("q");
  if (!scales) return NullArg("scales");
  return Guard([&] {
    muxq::Granularity gran;
    if (!ToGranularity(g, &gran)) {
      return SetError(MUXQ_ERR_INVALID_ARGUMENT, "unknown granularity");
    }
    const muxq::QuantizedTensor t = muxq::QuantizeAbsMax(m->m, bits, gran);
    if (n_scales) *n_scales = t.scales.size();
    if (scales_capacity < t.scales.size()) {
      return SetError(MUXQ_ERR_BUFFER_TOO_SMALL, "scale buffer too small");
    }
    std::copy(t.q.begin(), t.q.end(), q);
    std::copy(t.scales.begin(), t.scales.end(), scales);
    return MUXQ_OK;
  });
}

muxq_status muxq_run_method(const muxq_matrix* x, const muxq_matrix* w,
                            const muxq_method_config* cfg, muxq_matrix** out) {
  if (!x) return NullArg("x");
  if (!w) return NullArg("w");
  if (!cfg) return NullArg("cfg");
  if (!out) return NullArg("out");
  return Guard([&] {
    muxq::MethodConfig c;
    if (const muxq_status s = ToMethodConfig(*cfg, &c); s != MUXQ_OK) return s;
    *out = Wrap(muxq::RunMethod(x->m, w->m, c));
    return MUXQ_OK;
  });
}

muxq_status muxq_detect_outliers(const muxq_matrix* x, double theta,
                                 size_t* indices, size_t capacity,
                                 size_t* count) {
  if (!x) return NullArg("x");
  if (!count) return NullArg("count");
  if (capacity > 0 && !indices) return NullArg("indices");
  return Guard([&] {
    const muxq::OutlierSet set = muxq::DetectOutlierChannels(x->m, theta);
    *count = set.size();
    if (capacity < set.size()) {
      return SetError(MUXQ_ERR_BUFFER_TOO_SMALL,
                      "outlier buffer holds " + std::to_string(capacity) +
                          " of " + std::to_string(set.size()) + " indices");
    }
    std::copy(set.indices.begin(), set.indices.end(), indices);
    return MUXQ_OK;
  });
}

muxq_status muxq_decompose(const muxq_matrix* x, const size_t* outliers,
                           size_t n_outliers, int exp_factor,
                           muxq_decomposition** out) {
  if (!x) return NullArg("x");
  if (!out) return NullArg("out");
  if (n_outliers > 0 && !outliers) return NullArg("outliers");
  return Guard([&] {
    muxq::OutlierSet set;
    set.indices.assign(outliers, outliers + n_outliers);
    auto* d = new muxq_decomposition{
        muxq::Decompose(x->m, set, exp_factor), {}, {}};
    d->body.m = d->d.body;
    d->aux.m = d->d.aux;
    *out = d;
    return MUXQ_OK;
  });
}

void muxq_decomposition_free(muxq_decomposition* d) { delete d; }

const muxq_matrix* muxq_decomposition_body(const muxq_decomposition* d) {
  return d ? &d->body : nullptr;
}

const muxq_matrix* muxq_decomposition_aux(const muxq_decomposition* d) {
  return d ? &d->aux : nullptr;
}

muxq_status muxq_reconstruct(const muxq_decomposition* d, muxq_matrix** out) {
  if (!d) return NullArg("d");
  if (!out) return NullArg("out");
  return Guard([&] {
    *out = Wrap(muxq::Reconstruct(d->d));
    return MUXQ_OK;
  });
}

muxq_status muxq_error_stats_compute(const muxq_matrix* reference,
                                     const muxq_matrix* candidate,
                                     muxq_error_stats* out) {
  if (!reference) return NullArg("reference");
  if (!candidate) return NullArg("candidate");
  if (!out) return NullArg("out");
  return Guard([&] {
    FillStats(muxq::ComputeErrorStats(reference->m, candidate->m), out);
    return MUXQ_OK;
  });
}

muxq_status muxq_logit_stats_compute(const muxq_matrix* reference,
                                     const muxq_matrix* candidate,
                                     muxq_logit_stats* out) {
  if (!reference) return NullArg("reference");
  if (!candidate) return NullArg("candidate");
  if (!out) return NullArg("out");
  return Guard([&] {
    const muxq::LogitStats s = muxq::CompareLogits(reference->m, candidate->m);
    out->mean_kl = s.mean_kl;
    out->top1_agreement = s.top1_agreement;
    return MUXQ_OK;
  });
}

muxq_status muxq_channel_max_profile(const muxq_matrix* x, float* out,
                                     size_t capacity) {
  if (!x) return NullArg("x");
  if (!out && x->m.cols() > 0) return NullArg("out");
  return Guard([&] {
    if (capacity < x->m.cols()) {
      return SetError(MUXQ_ERR_BUFFER_TOO_SMALL, "profile buffer too small");
    }
    const auto profile = muxq::ChannelMaxProfile(x->m);
    std::copy(profile.begin(), profile.end(), out);
    return MUXQ_OK;
  });
}

muxq_status muxq_profile_csv(const muxq_matrix* x, char* buf,
                             size_t capacity, size_t* length) {
  if (!x) return NullArg("x");
  if (!length) return NullArg("length");
  if (!buf && capacity > 0) return NullArg("buf");
  return Guard([&] {
    const std::string csv = muxq::ProfileCsv(muxq::ChannelMaxProfile(x->m));
    *length = csv.size();
    if (capacity < csv.size()) {
      return SetError(MUXQ_ERR_BUFFER_TOO_SMALL, "CSV buffer too small");
    }
    std::copy(csv.begin(), csv.end(), buf);
    return MUXQ_OK;
  });
}

muxq_status muxq_toy_build(const muxq_toy_config* cfg, muxq_toy_model** out) {
  if (!cfg) return NullArg("cfg");
  if (!out) return NullArg("out");
  if (cfg->n_outliers > 0 && !cfg->outlier_channels) {
    return NullArg("outlier_channels");
  }
  return Guard([&] {
    muxq::ToyConfig c;
    c.n_layers = cfg->n_layers;
    c.d_model = cfg->d_model;
    c.n_heads = cfg->n_heads;
    c.d_ff = cfg->d_ff;
    c.vocab = cfg->vocab;
    c.max_seq = cfg->max_seq;
    c.seed = cfg->seed;
    c.outlier_channels.assign(cfg->outlier_channels,
                              cfg->outlier_channels + cfg->n_outliers);
    c.outlier_gain = cfg->outlier_gain;
    *out = new muxq_toy_model{muxq::ToyModel::Build(c)};
    return MUXQ_OK;
  });
}

void muxq_toy_free(muxq_toy_model* model) { delete model; }

muxq_status muxq_toy_forward(const muxq_toy_model* model,
                             const int32_t* tokens, size_t n_tokens,
                             const muxq_method_config* cfg, unsigned targets,
                             muxq_matrix** out) {
  if (!model) return NullArg("model");
  if (!tokens && n_tokens > 0) return NullArg("tokens");
  if (!out) return NullArg("out");
  return Guard([&] {
    const std::vector<int> toks(tokens, tokens + n_tokens);
    if (!cfg) {
      *out = Wrap(model->model.Forward(toks));
      return MUXQ_OK;
    }
    muxq::MethodConfig c;
    if (const muxq_status s = ToMethodConfig(*cfg, &c); s != MUXQ_OK) return s;
    *out = Wrap(model->model.ForwardQuantized(toks, c,
                                              muxq::QuantTargetSet{targets}));
    return MUXQ_OK;
  });
}

muxq_status muxq_toy_capture(const muxq_toy_model* model,
                             const int32_t* tokens, size_t n_tokens,
                             size_t layer, unsigned target, muxq_matrix** out) {
  if (!model) return NullArg("model");
  if (!tokens && n_tokens > 0) return NullArg("tokens");
  if (!out) return NullArg("out");
  return Guard([&] {
    const std::vector<int> toks(tokens, tokens + n_tokens);
    *out = Wrap(model->model.CaptureActivations(
        toks, layer, static_cast<muxq::Target>(target)));
    return MUXQ_OK;
  });
}

muxq_status muxq_toy_evaluate(const muxq_toy_model* model,
                              const uint8_t* corpus, size_t len,
                              const muxq_method_config* cfg, unsigned targets,
                              muxq_error_stats* logit_error,
                              muxq_logit_stats* fidelity) {
  if (!model) return NullArg("model");
  if (!corpus && len > 0) return NullArg("corpus");
  if (!cfg) return NullArg("cfg");
  return Guard([&] {
    muxq::MethodConfig c;
    if (const muxq_status s = ToMethodConfig(*cfg, &c); s != MUXQ_OK) return s;
    const muxq::CorpusEval eval = muxq::EvaluateOnCorpus(
        model->model, {corpus, len}, c, muxq::QuantTargetSet{targets});
    if (logit_error) FillStats(eval.logit_error, logit_error);
    if (fidelity) {
      fidelity->mean_kl = eval.fidelity.mean_kl;
      fidelity->top1_agreement = eval.fidelity.top1_agreement;
    }
    return MUXQ_OK;
  });
}

const uint8_t* muxq_bundled_corpus(size_t* len) {
  const std::string_view text = muxq::BundledCorpus();
  if (len) *len = text.size();
  return reinterpret_cast<const uint8_t*>(text.data());
}

}  // extern "C"
