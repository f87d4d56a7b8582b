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

#include "muxq/toy_model.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "muxq/error.hpp"
#include "muxq/gemm.hpp"
#include "muxq/synthetic.hpp"

namespace muxq {

const char* TargetName(Target t) {
  switch (t) {
    case Target::kAttnIn:
      return "attn_in";
    case Target::kAttnOut:
      return "attn_out";
    case Target::kMlpIn:
      return "mlp_in";
    case Target::kMlpOut:
      return "mlp_out";
  }
  return "?";
}

void ValidateToyConfig(const ToyConfig& cfg) {
  if (cfg.n_layers == 0 || cfg.d_model == 0 || cfg.n_heads == 0 ||
      cfg.d_ff == 0 || cfg.vocab == 0 || cfg.max_seq == 0) {
    Fail(ErrorCode::kConfig, "toy model dimensions must be positive");
  }
  if (cfg.d_model % cfg.n_heads != 0) {
    Fail(ErrorCode::kConfig, "d_model must be divisible by n_heads");
  }
  for (std::size_t c : cfg.outlier_channels) {
    if (c >= cfg.d_model) {
      Fail(ErrorCode::kConfig, "outlier channel " + std::to_string(c) +
                                   " out of range for d_model " +
                                   std::to_string(cfg.d_model));
    }
  }
  if (!(cfg.outlier_gain >= 1.0) || !std::isfinite(cfg.outlier_gain)) {
    Fail(ErrorCode::kConfig, "outlier_gain must be >= 1");
  }
}

namespace {

// Stream ids for CounterNormal; per-layer parameters use
// kLayerBase + kLayerStride * layer + offset.
enum : std::uint64_t {
  kTokEmb = 1,
  kPosEmb,
  kLnfGain,
  kLnfBias,
  kLmHead,
  kLayerBase = 100,
  kLayerStride = 16,
};
enum : std::uint64_t {
  kLn1Gain,
  kLn1Bias,
  kLn2Gain,
  kLn2Bias,
  kWqkv,
  kBqkv,
  kWo,
  kBo,
  kWfc,
  kBfc,
  kWproj,
  kBproj,
};

std::vector<float> NormalVector(std::uint64_t seed, std::uint64_t stream,
                                std::size_t n, double mean, double stddev) {
  const CounterNormal rng(seed, stream);
  std::vector<float> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = static_cast<float>(mean + stddev * rng.Normal(i));
  }
  return v;
}

DenseMatrix NormalMatrix(std::uint64_t seed, std::uint64_t stream,
                         std::size_t rows, std::size_t cols, double stddev,
                         Layout layout) {
  return DenseMatrix(rows, cols,
                     NormalVector(seed, stream, rows * cols, 0.0, stddev),
                     layout);
}

DenseMatrix ScaleRows(const DenseMatrix& m,
                      const std::vector<std::size_t>& rows, float divisor) {
  std::vector<float> data(m.values().begin(), m.values().end());
  for (std::size_t r : rows) {
    for (std::size_t c = 0; c < m.cols(); ++c) data[r * m.cols() + c] /= divisor;
  }
  return DenseMatrix(m.rows(), m.cols(), std::move(data), m.layout());
}

constexpr double kLnEps = 1e-5;

DenseMatrix LayerNorm(const DenseMatrix& x, const std::vector<float>& gain,
                      const std::vector<float>& bias) {
  const std::size_t d = x.cols();
  std::vector<float> out(x.size());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto row = x.row(r);
    double mean = 0.0;
    for (float v : row) mean += v;
    mean /= static_cast<double>(d);
    double var = 0.0;
    for (float v : row) var += (v - mean) * (v - mean);
    var /= static_cast<double>(d);
    const double inv = 1.0 / std::sqrt(var + kLnEps);
    for (std::size_t c = 0; c < d; ++c) {
      const float norm = static_cast<float>((row[c] - mean) * inv);
      out[r * d + c] = norm * gain[c] + bias[c];
    }
  }
  return DenseMatrix(x.rows(), d, std::move(out), Layout::kActivation);
}

// tanh approximation: 0.5 x (1 + tanh(sqrt(2/pi) (x + 0.044715 x^3)))
float Gelu(float x) {
  constexpr float kSqrt2OverPi = 0.7978845608028654f;
  constexpr float kCubic = 0.044715f;
  return 0.5f * x * (1.0f + std::tanh(kSqrt2OverPi * (x + kCubic * x * x * x)));
}

DenseMatrix AddBias(const DenseMatrix& y, const std::vector<float>& bias) {
  std::vector<float> out(y.values().begin(), y.values().end());
  for (std::size_t r = 0; r < y.rows(); ++r) {
    for (std::size_t c = 0; c < y.cols(); ++c) out[r * y.cols() + c] += bias[c];
  }
  return DenseMatrix(y.rows(), y.cols(), std::move(out), Layout::kActivation);
}

DenseMatrix Add(const DenseMatrix& a, const DenseMatrix& b) {
  std::vector<float> out(a.values().begin(), a.values().end());
  const auto bv = b.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += bv[i];
  return DenseMatrix(a.rows(), a.cols(), std::move(out), Layout::kActivation);
}

// Causal multi-head attention over a fused qkv matrix (T x 3d).
DenseMatrix CausalAttention(const DenseMatrix& qkv, std::size_t d_model,
                            std::size_t n_heads) {
  const std::size_t t_len = qkv.rows();
  const std::size_t dh = d_model / n_heads;
  const float inv_sqrt = 1.0f / std::sqrt(static_cast<float>(dh));
  std::vector<float> out(t_len * d_model, 0.0f);
  std::vector<float> probs(t_len);
  for (std::size_t h = 0; h < n_heads; ++h) {
    const std::size_t q_off = h * dh;
    const std::size_t k_off = d_model + h * dh;
    const std::size_t v_off = 2 * d_model + h * dh;
    for (std::size_t i = 0; i < t_len; ++i) {
      float max_s = -INFINITY;
      for (std::size_t j = 0; j <= i; ++j) {
        float dot = 0.0f;
        for (std::size_t e = 0; e < dh; ++e) {
          dot += qkv.at(i, q_off + e) * qkv.at(j, k_off + e);
        }
        probs[j] = dot * inv_sqrt;
        max_s = std::max(max_s, probs[j]);
      }
      float sum = 0.0f;
      for (std::size_t j = 0; j <= i; ++j) {
        probs[j] = std::exp(probs[j] - max_s);
        sum += probs[j];
      }
      for (std::size_t j = 0; j <= i; ++j) {
        const float p = probs[j] / sum;
        for (std::size_t e = 0; e < dh; ++e) {
          out[i * d_model + h * dh + e] += p * qkv.at(j, v_off + e);
        }
      }
    }
  }
  return DenseMatrix(t_len, d_model, std::move(out), Layout::kActivation);
}

}  // namespace

struct ToyModel::Hooks {
  std::function<DenseMatrix(Target, const DenseMatrix&, const DenseMatrix&)>
      project;
  std::function<void(std::size_t, Target, const DenseMatrix&)> observe;
};

ToyModel ToyModel::Build(const ToyConfig& cfg) {
  ValidateToyConfig(cfg);
  ToyModel m;
  m.cfg_ = cfg;
  const std::uint64_t seed = cfg.seed;
  const std::size_t d = cfg.d_model, ff = cfg.d_ff;
  const double residual_scale = 1.0 / std::sqrt(2.0 * cfg.n_layers);
  const float gain = static_cast<float>(cfg.outlier_gain);

  m.tok_emb_ = NormalMatrix(seed, kTokEmb, cfg.vocab, d, 1.0, Layout::kWeight);
  m.pos_emb_ = NormalMatrix(seed, kPosEmb, cfg.max_seq, d, 0.5, Layout::kWeight);

  for (std::size_t l = 0; l < cfg.n_layers; ++l) {
    const std::uint64_t base = kLayerBase + kLayerStride * l;
    Layer layer;
    layer.ln1_gain = NormalVector(seed, base + kLn1Gain, d, 1.0, 0.1);
    layer.ln1_bias = NormalVector(seed, base + kLn1Bias, d, 0.0, 0.05);
    layer.ln2_gain = NormalVector(seed, base + kLn2Gain, d, 1.0, 0.1);
    layer.ln2_bias = NormalVector(seed, base + kLn2Bias, d, 0.0, 0.05);
    for (std::size_t c : cfg.outlier_channels) {
      layer.ln1_gain[c] *= gain;
      layer.ln2_gain[c] *= gain;
    }
    layer.w_qkv = ScaleRows(NormalMatrix(seed, base + kWqkv, d, 3 * d,
                                         1.0 / std::sqrt(double(d)),
                                         Layout::kWeight),
                            cfg.outlier_channels, gain);
    layer.b_qkv = NormalVector(seed, base + kBqkv, 3 * d, 0.0, 0.02);
    layer.w_attn_out =
        NormalMatrix(seed, base + kWo, d, d,
                     residual_scale / std::sqrt(double(d)), Layout::kWeight);
    layer.b_attn_out = NormalVector(seed, base + kBo, d, 0.0, 0.02);
    layer.w_fc = ScaleRows(NormalMatrix(seed, base + kWfc, d, ff,
                                        1.0 / std::sqrt(double(d)),
                                        Layout::kWeight),
                           cfg.outlier_channels, gain);
    layer.b_fc = NormalVector(seed, base + kBfc, ff, 0.0, 0.02);
    layer.w_mlp_out =
        NormalMatrix(seed, base + kWproj, ff, d,
                     residual_scale / std::sqrt(double(ff)), Layout::kWeight);
    layer.b_mlp_out = NormalVector(seed, base + kBproj, d, 0.0, 0.02);
    m.layers_.push_back(std::move(layer));
  }

  m.lnf_gain_ = NormalVector(seed, kLnfGain, d, 1.0, 0.1);
  m.lnf_bias_ = NormalVector(seed, kLnfBias, d, 0.0, 0.05);
  m.w_lm_ = NormalMatrix(seed, kLmHead, d, cfg.vocab,
                         2.0 / std::sqrt(double(d)), Layout::kWeight);
  return m;
}

DenseMatrix ToyModel::Run(std::span<const int> tokens,
                          const Hooks& hooks) const {
  const std::size_t t_len = tokens.size();
  const std::size_t d = cfg_.d_model;
  if (t_len == 0) Fail(ErrorCode::kConfig, "empty token sequence");
  if (t_len > cfg_.max_seq) {
    Fail(ErrorCode::kConfig, "sequence length " + std::to_string(t_len) +
                                 " exceeds max_seq " +
                                 std::to_string(cfg_.max_seq));
  }
  std::vector<float> h0(t_len * d);
  for (std::size_t t = 0; t < t_len; ++t) {
    const int tok = tokens[t];
    if (tok < 0 || static_cast<std::size_t>(tok) >= cfg_.vocab) {
      Fail(ErrorCode::kConfig, "token " + std::to_string(tok) +
                                   " out of range for vocab " +
                                   std::to_string(cfg_.vocab));
    }
    for (std::size_t c = 0; c < d; ++c) {
      h0[t * d + c] = tok_emb_.at(tok, c) + pos_emb_.at(t, c);
    }
  }
  DenseMatrix x(t_len, d, std::move(h0), Layout::kActivation);

  auto project = [&](std::size_t l, Target target, const DenseMatrix& in,
                     const DenseMatrix& w, const std::vector<float>& b) {
    if (hooks.observe) hooks.observe(l, target, in);
    return AddBias(hooks.project(target, in, w), b);
  };

  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    const DenseMatrix a = LayerNorm(x, layer.ln1_gain, layer.ln1_bias);
    const DenseMatrix qkv =
        project(l, Target::kAttnIn, a, layer.w_qkv, layer.b_qkv);
    const DenseMatrix attn = CausalAttention(qkv, d, cfg_.n_heads);
    x = Add(x, project(l, Target::kAttnOut, attn, layer.w_attn_out,
                       layer.b_attn_out));

    const DenseMatrix m = LayerNorm(x, layer.ln2_gain, layer.ln2_bias);
    const DenseMatrix up = project(l, Target::kMlpIn, m, layer.w_fc, layer.b_fc);
    std::vector<float> act(up.values().begin(), up.values().end());
    for (float& v : act) v = Gelu(v);
    const DenseMatrix hidden(up.rows(), up.cols(), std::move(act),
                             Layout::kActivation);
    x = Add(x, project(l, Target::kMlpOut, hidden, layer.w_mlp_out,
                       layer.b_mlp_out));
  }
  return Gemm(LayerNorm(x, lnf_gain_, lnf_bias_), w_lm_);
}

DenseMatrix ToyModel::Forward(std::span<const int> tokens) const {
  Hooks hooks;
  hooks.project = [](Target, const DenseMatrix& in, const DenseMatrix& w) {
    return Gemm(in, w);
  };
  return Run(tokens, hooks);
}

DenseMatrix ToyModel::ForwardQuantized(std::span<const int> tokens,
                                       const MethodConfig& cfg,
                                       QuantTargetSet targets) const {
  ValidateMethodConfig(cfg);
  if (cfg.method != Method::kFp && !targets.any()) {
    Fail(ErrorCode::kConfig, "no quantization targets selected");
  }
  Hooks hooks;
  hooks.project = [&](Target t, const DenseMatrix& in, const DenseMatrix& w) {
    return targets.Has(t) ? RunMethod(in, w, cfg) : Gemm(in, w);
  };
  return Run(tokens, hooks);
}

DenseMatrix ToyModel::CaptureActivations(std::span<const int> tokens,
                                         std::size_t layer,
                                         Target target) const {
  if (layer >= layers_.size()) {
    Fail(ErrorCode::kConfig, "layer " + std::to_string(layer) +
                                 " out of range for " +
                                 std::to_string(layers_.size()) + " layers");
  }
  switch (target) {
    case Target::kAttnIn:
    case Target::kAttnOut:
    case Target::kMlpIn:
    case Target::kMlpOut:
      break;
    default:
      Fail(ErrorCode::kConfig, "capture needs exactly one target");
  }
  DenseMatrix captured;
  Hooks hooks;
  hooks.project = [](Target, const DenseMatrix& in, const DenseMatrix& w) {
    return Gemm(in, w);
  };
  hooks.observe = [&](std::size_t l, Target t, const DenseMatrix& in) {
    if (l == layer && t == target) captured = in;
  };
  Run(tokens, hooks);
  return captured;
}

CorpusEval EvaluateOnCorpus(const ToyModel& model,
                            std::span<const std::uint8_t> corpus,
                            const MethodConfig& cfg, QuantTargetSet targets) {
  if (corpus.empty()) Fail(ErrorCode::kConfig, "empty corpus");
  const std::size_t window = model.config().max_seq;
  const std::size_t vocab = model.config().vocab;
  std::vector<float> ref_all, cand_all;
  CorpusEval eval;
  std::vector<int> tokens;
  for (std::size_t start = 0; start < corpus.size(); start += window) {
    const std::size_t end = std::min(corpus.size(), start + window);
    tokens.assign(corpus.begin() + start, corpus.begin() + end);
    const DenseMatrix ref = model.Forward(tokens);
    const DenseMatrix cand = model.ForwardQuantized(tokens, cfg, targets);
    ref_all.insert(ref_all.end(), ref.values().begin(), ref.values().end());
    cand_all.insert(cand_all.end(), cand.values().begin(), cand.values().end());
    ++eval.windows;
    eval.positions += tokens.size();
  }
  const DenseMatrix ref(eval.positions, vocab, std::move(ref_all));
  const DenseMatrix cand(eval.positions, vocab, std::move(cand_all));
  eval.logit_error = ComputeErrorStats(ref, cand);
  eval.fidelity = CompareLogits(ref, cand);
  return eval;
}

}  // namespace muxq
