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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "muxq/method.hpp"
#include "muxq/metrics.hpp"
#include "muxq/tensor.hpp"

namespace muxq {

struct ToyConfig {
  std::size_t n_layers = 2;
  std::size_t d_model = 64;
  std::size_t n_heads = 4;
  std::size_t d_ff = 256;
  std::size_t vocab = 256;  // byte-level
  std::size_t max_seq = 128;
  std::uint64_t seed = 0;
  std::vector<std::size_t> outlier_channels;
  double outlier_gain = 20.0;
};

void ValidateToyConfig(const ToyConfig& cfg);

// The four projection kinds that can be routed through a quantized GEMM.
enum class Target : unsigned {
  kAttnIn = 1u << 0,   // fused qkv projection
  kAttnOut = 1u << 1,  // attention output projection
  kMlpIn = 1u << 2,    // MLP up projection
  kMlpOut = 1u << 3,   // MLP down projection
};

const char* TargetName(Target t);

struct QuantTargetSet {
  unsigned mask = 0;

  static QuantTargetSet All() { return {0xFu}; }
  bool Has(Target t) const noexcept {
    return (mask & static_cast<unsigned>(t)) != 0;
  }
  bool any() const noexcept { return (mask & 0xFu) != 0; }
};

// Forward-only pre-LN decoder with learned absolute positions, tanh-GELU MLP
// and causal softmax attention. Every weight is drawn from CounterNormal, so
// a config fully determines the model.
//
// Outliers are planted by multiplying the LayerNorm gains feeding the qkv and
// MLP up projections at `outlier_channels` by `outlier_gain`. The weight rows
// consuming those channels are divided by the same gain, which keeps the
// full-precision function (nearly) independent of the gain while the
// projection inputs carry channel-concentrated outliers.
class ToyModel {
 public:
  static ToyModel Build(const ToyConfig& cfg);

  const ToyConfig& config() const noexcept { return cfg_; }

  // Full-precision logits, tokens.size() x vocab.
  DenseMatrix Forward(std::span<const int> tokens) const;

  // Targets in `targets` go through RunMethod(cfg); the rest stay in full
  // precision. method == kFp reproduces Forward bit for bit.
  DenseMatrix ForwardQuantized(std::span<const int> tokens,
                               const MethodConfig& cfg,
                               QuantTargetSet targets) const;

  // Input of projection `target` in `layer` during the full-precision
  // forward, tokens.size() x in_features.
  DenseMatrix CaptureActivations(std::span<const int> tokens,
                                 std::size_t layer, Target target) const;

 private:
  struct Layer {
    std::vector<float> ln1_gain, ln1_bias, ln2_gain, ln2_bias;
    DenseMatrix w_qkv, w_attn_out, w_fc, w_mlp_out;
    std::vector<float> b_qkv, b_attn_out, b_fc, b_mlp_out;
  };

  struct Hooks;
  DenseMatrix Run(std::span<const int> tokens, const Hooks& hooks) const;

  ToyConfig cfg_;
  DenseMatrix tok_emb_;  // vocab x d_model
  DenseMatrix pos_emb_;  // max_seq x d_model
  std::vector<Layer> layers_;
  std::vector<float> lnf_gain_, lnf_bias_;
  DenseMatrix w_lm_;  // d_model x vocab
};

// Fidelity of a quantized configuration against the full-precision model.
struct CorpusEval {
  ErrorStats logit_error;
  LogitStats fidelity;
  std::size_t windows = 0;
  std::size_t positions = 0;
};

// Splits `corpus` into consecutive windows of at most max_seq bytes and
// compares ForwardQuantized against Forward on each, pooling every position.
CorpusEval EvaluateOnCorpus(const ToyModel& model,
                            std::span<const std::uint8_t> corpus,
                            const MethodConfig& cfg, QuantTargetSet targets);

// 4 KiB ASCII evaluation text compiled into the library.
std::string_view BundledCorpus();

}  // namespace muxq
