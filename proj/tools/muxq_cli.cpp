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

// Command-line front end for the MUXQ toolkit. Talks to the library only
// through the C API in muxq/muxq.h.
//
// Exit codes: 0 success, 2 configuration error, 3 I/O or parse error,
// 1 internal error. Reports go to stdout, diagnostics to stderr.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "muxq/muxq.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

// Carries an exit code up to main.
class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

int ExitCodeFor(muxq_status s) {
  switch (s) {
    case MUXQ_OK:
      return kExitOk;
    case MUXQ_ERR_INVALID_ARGUMENT:
    case MUXQ_ERR_CONFIG:
    case MUXQ_ERR_SHAPE:
    case MUXQ_ERR_BUFFER_TOO_SMALL:
      return kExitConfig;
    case MUXQ_ERR_IO:
    case MUXQ_ERR_BAD_MAGIC:
    case MUXQ_ERR_VERSION:
    case MUXQ_ERR_TRUNCATED:
    case MUXQ_ERR_NON_FINITE:
    case MUXQ_ERR_BAD_HEADER:
      return kExitIo;
    case MUXQ_ERR_INTERNAL:
      break;
  }
  return kExitInternal;
}

void Check(muxq_status s, const std::string& context) {
  if (s == MUXQ_OK) return;
  throw CliError(ExitCodeFor(s), context + ": " + muxq_status_string(s) +
                                     " (" + muxq_last_error() + ")");
}

[[noreturn]] void ConfigError(const std::string& what) {
  throw CliError(kExitConfig, what);
}

struct MatrixDeleter {
  void operator()(muxq_matrix* m) const { muxq_matrix_free(m); }
};
struct DecompositionDeleter {
  void operator()(muxq_decomposition* d) const { muxq_decomposition_free(d); }
};
struct ToyDeleter {
  void operator()(muxq_toy_model* m) const { muxq_toy_free(m); }
};
using Matrix = std::unique_ptr<muxq_matrix, MatrixDeleter>;
using Decomposition = std::unique_ptr<muxq_decomposition, DecompositionDeleter>;
using ToyModel = std::unique_ptr<muxq_toy_model, ToyDeleter>;

Matrix ReadMatrix(const std::string& path) {
  muxq_matrix* m = nullptr;
  Check(muxq_matrix_read(path.c_str(), &m), "reading " + path);
  return Matrix(m);
}

Matrix RunMethod(const muxq_matrix* x, const muxq_matrix* w,
                 const muxq_method_config& cfg) {
  muxq_matrix* out = nullptr;
  Check(muxq_run_method(x, w, &cfg, &out), "GEMM");
  return Matrix(out);
}

// ---- flag parsing helpers -------------------------------------------------

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::size_t> ParseIndexList(const std::string& s,
                                        const std::string& flag) {
  std::vector<std::size_t> out;
  for (const auto& item : SplitList(s)) {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(item, &pos);
      if (pos != item.size() || item[0] == '-') throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      ConfigError(flag + ": not a channel index: '" + item + "'");
    }
  }
  return out;
}

// "inf", "fp" or "full" select MUXQ_BITS_FULL.
int ParseBits(const std::string& s, const std::string& flag) {
  if (s == "inf" || s == "fp" || s == "full") return MUXQ_BITS_FULL;
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  ConfigError(flag + ": expected a bit width or 'inf', got '" + s + "'");
}

muxq_method ParseMethod(const std::string& s) {
  if (s == "fp") return MUXQ_METHOD_FP;
  if (s == "naive") return MUXQ_METHOD_NAIVE;
  if (s == "muxq") return MUXQ_METHOD_MUXQ;
  if (s == "mixed") return MUXQ_METHOD_MIXED;
  ConfigError("unknown method '" + s + "' (fp, naive, muxq, mixed)");
}

const char* MethodName(muxq_method m) {
  switch (m) {
    case MUXQ_METHOD_FP:
      return "fp";
    case MUXQ_METHOD_NAIVE:
      return "naive";
    case MUXQ_METHOD_MUXQ:
      return "muxq";
    case MUXQ_METHOD_MIXED:
      return "mixed";
  }
  return "?";
}

const char* GranName(muxq_granularity g) {
  switch (g) {
    case MUXQ_GRAN_PER_TENSOR:
      return "tensor";
    case MUXQ_GRAN_PER_TOKEN:
      return "token";
    case MUXQ_GRAN_PER_CHANNEL:
      return "channel";
  }
  return "?";
}

// "tensor" -> per-tensor on both operands; "vector" -> per-token activations
// with per-channel weights.
void ApplyGranPair(const std::string& s, muxq_method_config* cfg) {
  if (s == "tensor") {
    cfg->act_granularity = MUXQ_GRAN_PER_TENSOR;
    cfg->w_granularity = MUXQ_GRAN_PER_TENSOR;
  } else if (s == "vector") {
    cfg->act_granularity = MUXQ_GRAN_PER_TOKEN;
    cfg->w_granularity = MUXQ_GRAN_PER_CHANNEL;
  } else {
    ConfigError("unknown granularity '" + s + "' (tensor, vector)");
  }
}

unsigned ParseTargets(const std::string& s) {
  unsigned mask = 0;
  for (const auto& t : SplitList(s)) {
    if (t == "attn_in") {
      mask |= MUXQ_TARGET_ATTN_IN;
    } else if (t == "attn_out") {
      mask |= MUXQ_TARGET_ATTN_OUT;
    } else if (t == "mlp_in") {
      mask |= MUXQ_TARGET_MLP_IN;
    } else if (t == "mlp_out") {
      mask |= MUXQ_TARGET_MLP_OUT;
    } else if (t == "all") {
      mask |= MUXQ_TARGET_ALL;
    } else {
      ConfigError("unknown target '" + t +
                  "' (attn_in, attn_out, mlp_in, mlp_out, all)");
    }
  }
  return mask;
}

// ---- JSON helpers -----------------------------------------------------------

// Non-finite numbers become the strings "inf", "-inf" or "nan".
json Num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json Bits(int bits) {
  return bits == MUXQ_BITS_FULL ? json("inf") : json(bits);
}

json ConfigJson(const muxq_method_config& cfg) {
  json j;
  j["method"] = MethodName(cfg.method);
  j["act_bits"] = Bits(cfg.act_bits);
  j["w_bits"] = Bits(cfg.w_bits);
  j["act_granularity"] = GranName(cfg.act_granularity);
  j["w_granularity"] = GranName(cfg.w_granularity);
  j["theta"] = Num(cfg.theta);
  j["exp_factor"] = cfg.exp_factor;
  j["mode"] = cfg.mode == MUXQ_MODE_INT ? "int" : "fake";
  return j;
}

json StatsJson(const muxq_error_stats& s) {
  json j;
  j["rel_frobenius"] = Num(s.rel_frobenius);
  j["max_abs_err"] = Num(s.max_abs_err);
  j["sqnr_db"] = Num(s.sqnr_db);
  return j;
}

json ShapeJson(const muxq_matrix* m) {
  return json::array({muxq_matrix_rows(m), muxq_matrix_cols(m)});
}

double MillisSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

void Emit(const json& j, bool pretty) {
  std::cout << (pretty ? j.dump(2) : j.dump()) << '\n';
}

// Flags shared by eval and sweep.
struct QuantFlags {
  std::string act_bits = "8";
  std::string w_bits = "8";
  double theta = 6.0;
  int exp_factor = 2;
  std::string mode = "fake";
};

void AddQuantFlags(CLI::App* cmd, QuantFlags* f, bool with_act_bits) {
  if (with_act_bits) {
    cmd->add_option("--act-bits", f->act_bits,
                    "Activation bits (2-8) or 'inf'")
        ->capture_default_str();
  }
  cmd->add_option("--w-bits", f->w_bits, "Weight bits (2-8) or 'inf'")
      ->capture_default_str();
  cmd->add_option("--theta", f->theta, "Outlier threshold")
      ->capture_default_str();
  cmd->add_option("--exp-factor", f->exp_factor, "MUXQ exponent shift")
      ->capture_default_str();
  cmd->add_option("--mode", f->mode, "fake or int")->capture_default_str();
}

void ApplyQuantFlags(const QuantFlags& f, muxq_method_config* cfg) {
  cfg->act_bits = ParseBits(f.act_bits, "--act-bits");
  cfg->w_bits = ParseBits(f.w_bits, "--w-bits");
  cfg->theta = f.theta;
  cfg->exp_factor = f.exp_factor;
  if (f.mode == "fake") {
    cfg->mode = MUXQ_MODE_FAKE;
  } else if (f.mode == "int") {
    cfg->mode = MUXQ_MODE_INT;
  } else {
    ConfigError("unknown mode '" + f.mode + "' (fake, int)");
  }
}

// One EvalReport for x*w under cfg against the full-precision product.
json EvaluateCell(const muxq_matrix* x, const muxq_matrix* w,
                  const Matrix& reference, const muxq_method_config& cfg,
                  const std::string& acts_path,
                  const std::string& weights_path) {
  const auto start = std::chrono::steady_clock::now();
  const Matrix out = RunMethod(x, w, cfg);
  muxq_error_stats stats{};
  Check(muxq_error_stats_compute(reference.get(), out.get(), &stats),
        "error stats");
  json report;
  report["tool_version"] = muxq_version();
  json config = ConfigJson(cfg);
  config["acts"] = acts_path;
  config["weights"] = weights_path;
  config["acts_shape"] = ShapeJson(x);
  config["weights_shape"] = ShapeJson(w);
  report["config"] = std::move(config);
  report["error_stats"] = StatsJson(stats);
  report["wall_time_ms"] = MillisSince(start);
  return report;
}

Matrix Reference(const muxq_matrix* x, const muxq_matrix* w) {
  muxq_method_config fp;
  muxq_method_config_init(&fp);
  fp.method = MUXQ_METHOD_FP;
  return RunMethod(x, w, fp);
}

// ---- subcommands ------------------------------------------------------------

struct GenFlags {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string outliers;
  double gain = 1.0;
  double base_std = 1.0;
  std::uint64_t seed = 0;
  std::string layout = "activation";
  std::string out;
};

int RunGen(const GenFlags& f) {
  const auto outliers = ParseIndexList(f.outliers, "--outliers");
  muxq_synthetic_spec spec{};
  spec.rows = f.rows;
  spec.cols = f.cols;
  spec.base_std = f.base_std;
  spec.outlier_channels = outliers.data();
  spec.n_outliers = outliers.size();
  spec.outlier_gain = f.gain;
  spec.seed = f.seed;
  if (f.layout == "activation") {
    spec.layout = MUXQ_LAYOUT_ACTIVATION;
  } else if (f.layout == "weight") {
    spec.layout = MUXQ_LAYOUT_WEIGHT;
  } else {
    ConfigError("unknown layout '" + f.layout + "' (activation, weight)");
  }
  muxq_matrix* m = nullptr;
  Check(muxq_generate_synthetic(&spec, &m), "generating matrix");
  const Matrix owned(m);
  Check(muxq_matrix_write(owned.get(), f.out.c_str()), "writing " + f.out);
  return kExitOk;
}

struct EvalFlags {
  std::string acts;
  std::string weights;
  std::string method = "muxq";
  std::string act_gran = "tensor";
  std::string w_gran = "tensor";
  QuantFlags quant;
  bool pretty = false;
};

int RunEval(const EvalFlags& f) {
  muxq_method_config cfg;
  muxq_method_config_init(&cfg);
  cfg.method = ParseMethod(f.method);
  ApplyQuantFlags(f.quant, &cfg);
  if (f.act_gran == "tensor") {
    cfg.act_granularity = MUXQ_GRAN_PER_TENSOR;
  } else if (f.act_gran == "token") {
    cfg.act_granularity = MUXQ_GRAN_PER_TOKEN;
  } else {
    ConfigError("unknown --act-gran '" + f.act_gran + "' (tensor, token)");
  }
  if (f.w_gran == "tensor") {
    cfg.w_granularity = MUXQ_GRAN_PER_TENSOR;
  } else if (f.w_gran == "channel") {
    cfg.w_granularity = MUXQ_GRAN_PER_CHANNEL;
  } else {
    ConfigError("unknown --w-gran '" + f.w_gran + "' (tensor, channel)");
  }
  const Matrix x = ReadMatrix(f.acts);
  const Matrix w = ReadMatrix(f.weights);
  const Matrix reference = Reference(x.get(), w.get());
  Emit(EvaluateCell(x.get(), w.get(), reference, cfg, f.acts, f.weights),
       f.pretty);
  return kExitOk;
}

struct SweepFlags {
  std::string acts;
  std::string weights;
  std::string methods = "naive,muxq,mixed";
  std::string act_bits_list = "4,5,6,7,8";
  std::string grans = "tensor";
  QuantFlags quant;
  bool pretty = false;
};

int RunSweep(const SweepFlags& f) {
  muxq_method_config base;
  muxq_method_config_init(&base);
  ApplyQuantFlags(f.quant, &base);

  std::vector<muxq_method> methods;
  for (const auto& m : SplitList(f.methods)) methods.push_back(ParseMethod(m));
  std::vector<int> bits;
  for (const auto& b : SplitList(f.act_bits_list)) {
    bits.push_back(ParseBits(b, "--act-bits-list"));
  }
  const std::vector<std::string> grans = SplitList(f.grans);
  if (methods.empty() || bits.empty() || grans.empty()) {
    ConfigError("sweep needs at least one method, bit width and granularity");
  }
  // Validate every cell before doing any work.
  for (const auto& g : grans) ApplyGranPair(g, &base);

  const Matrix x = ReadMatrix(f.acts);
  const Matrix w = ReadMatrix(f.weights);
  const Matrix reference = Reference(x.get(), w.get());
  json reports = json::array();
  for (muxq_method method : methods) {
    for (const auto& g : grans) {
      for (int b : bits) {
        muxq_method_config cfg = base;
        cfg.method = method;
        cfg.act_bits = b;
        ApplyGranPair(g, &cfg);
        reports.push_back(
            EvaluateCell(x.get(), w.get(), reference, cfg, f.acts, f.weights));
      }
    }
  }
  Emit(reports, f.pretty);
  return kExitOk;
}

struct ToyFlags {
  std::uint64_t seed = 0;
  std::string outlier_channels = "3,17";
  double gain = 20.0;
  std::string method = "muxq";
  std::string gran = "tensor";
  std::string targets = "attn_in,attn_out,mlp_in,mlp_out";
  std::string corpus;
  std::string capture_out;
  std::string capture_target = "attn_in";
  std::size_t capture_layer = 0;
  QuantFlags quant;
  bool pretty = false;
};

std::vector<std::uint8_t> LoadCorpus(const std::string& path) {
  if (path.empty()) {
    std::size_t len = 0;
    const std::uint8_t* data = muxq_bundled_corpus(&len);
    return {data, data + len};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kExitIo, "cannot open corpus " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int RunToy(const ToyFlags& f) {
  muxq_method_config cfg;
  muxq_method_config_init(&cfg);
  cfg.method = ParseMethod(f.method);
  ApplyQuantFlags(f.quant, &cfg);
  ApplyGranPair(f.gran, &cfg);
  const unsigned targets = ParseTargets(f.targets);
  const auto outliers = ParseIndexList(f.outlier_channels, "--outlier-channels");

  muxq_toy_config tc;
  muxq_toy_config_init(&tc);
  tc.seed = f.seed;
  tc.outlier_channels = outliers.data();
  tc.n_outliers = outliers.size();
  tc.outlier_gain = f.gain;
  muxq_toy_model* raw = nullptr;
  Check(muxq_toy_build(&tc, &raw), "building toy model");
  const ToyModel model(raw);

  const std::vector<std::uint8_t> corpus = LoadCorpus(f.corpus);
  const auto start = std::chrono::steady_clock::now();
  muxq_error_stats logit_error{};
  muxq_logit_stats fidelity{};
  Check(muxq_toy_evaluate(model.get(), corpus.data(), corpus.size(), &cfg,
                          targets, &logit_error, &fidelity),
        "toy evaluation");

  if (!f.capture_out.empty()) {
    const unsigned target = ParseTargets(f.capture_target);
    const std::size_t n = std::min(corpus.size(), tc.max_seq);
    const std::vector<std::int32_t> tokens(corpus.begin(), corpus.begin() + n);
    muxq_matrix* captured = nullptr;
    Check(muxq_toy_capture(model.get(), tokens.data(), tokens.size(),
                           f.capture_layer, target, &captured),
          "capturing activations");
    const Matrix owned(captured);
    Check(muxq_matrix_write(owned.get(), f.capture_out.c_str()),
          "writing " + f.capture_out);
  }

  json report;
  report["tool_version"] = muxq_version();
  json config = ConfigJson(cfg);
  config["seed"] = f.seed;
  config["outlier_channels"] = outliers;
  config["outlier_gain"] = Num(f.gain);
  json target_names = json::array();
  for (const auto& [bit, name] :
       {std::pair{MUXQ_TARGET_ATTN_IN, "attn_in"},
        std::pair{MUXQ_TARGET_ATTN_OUT, "attn_out"},
        std::pair{MUXQ_TARGET_MLP_IN, "mlp_in"},
        std::pair{MUXQ_TARGET_MLP_OUT, "mlp_out"}}) {
    if (targets & bit) target_names.push_back(name);
  }
  config["targets"] = std::move(target_names);
  config["corpus"] = f.corpus.empty() ? "bundled" : f.corpus;
  config["corpus_bytes"] = corpus.size();
  report["config"] = std::move(config);
  json stats = StatsJson(logit_error);
  stats["mean_kl"] = Num(fidelity.mean_kl);
  stats["top1_agreement"] = Num(fidelity.top1_agreement);
  report["error_stats"] = std::move(stats);
  report["wall_time_ms"] = MillisSince(start);
  Emit(report, f.pretty);
  return kExitOk;
}

struct ProfileFlags {
  std::string acts;
  bool after_muxq = false;
  double theta = 6.0;
  int exp_factor = 2;
};

int RunProfile(const ProfileFlags& f) {
  const Matrix x = ReadMatrix(f.acts);
  const muxq_matrix* target = x.get();
  Decomposition decomposition;
  if (f.after_muxq) {
    std::size_t count = 0;
    muxq_status s = muxq_detect_outliers(x.get(), f.theta, nullptr, 0, &count);
    if (s != MUXQ_ERR_BUFFER_TOO_SMALL) Check(s, "outlier detection");
    std::vector<std::size_t> indices(count);
    Check(muxq_detect_outliers(x.get(), f.theta, indices.data(),
                               indices.size(), &count),
          "outlier detection");
    muxq_decomposition* d = nullptr;
    Check(muxq_decompose(x.get(), indices.data(), indices.size(), f.exp_factor,
                         &d),
          "decomposition");
    decomposition.reset(d);
    target = muxq_decomposition_body(d);
  }
  std::size_t length = 0;
  muxq_status s = muxq_profile_csv(target, nullptr, 0, &length);
  if (s != MUXQ_ERR_BUFFER_TOO_SMALL) Check(s, "profile");
  std::string csv(length, '\0');
  Check(muxq_profile_csv(target, csv.data(), csv.size(), &length), "profile");
  std::cout << csv;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MUXQ activation-outlier quantization toolkit"};
  app.set_version_flag("--version", std::string(muxq_version()));
  app.require_subcommand(1);

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a synthetic MUXT matrix");
  gen_cmd->add_option("--rows", gen.rows, "Rows")->required();
  gen_cmd->add_option("--cols", gen.cols, "Columns")->required();
  gen_cmd->add_option("--outliers", gen.outliers,
                      "Comma-separated planted outlier channels");
  gen_cmd->add_option("--gain", gen.gain, "Outlier gain")->capture_default_str();
  gen_cmd->add_option("--base-std", gen.base_std, "Std-dev of normal values")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "PRNG seed")->capture_default_str();
  gen_cmd->add_option("--layout", gen.layout, "activation or weight")
      ->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output MUXT file")->required();

  EvalFlags eval;
  auto* eval_cmd =
      app.add_subcommand("eval", "Evaluate one method against full precision");
  eval_cmd->add_option("--acts", eval.acts, "Activation MUXT file")->required();
  eval_cmd->add_option("--weights", eval.weights, "Weight MUXT file")
      ->required();
  eval_cmd->add_option("--method", eval.method, "fp, naive, muxq or mixed")
      ->capture_default_str();
  eval_cmd->add_option("--act-gran", eval.act_gran, "tensor or token")
      ->capture_default_str();
  eval_cmd->add_option("--w-gran", eval.w_gran, "tensor or channel")
      ->capture_default_str();
  AddQuantFlags(eval_cmd, &eval.quant, true);
  eval_cmd->add_flag("--pretty", eval.pretty, "Indent JSON output");

  SweepFlags sweep;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Evaluate methods x granularities x activation bits");
  sweep_cmd->add_option("--acts", sweep.acts, "Activation MUXT file")
      ->required();
  sweep_cmd->add_option("--weights", sweep.weights, "Weight MUXT file")
      ->required();
  sweep_cmd->add_option("--methods", sweep.methods, "Comma-separated methods")
      ->capture_default_str();
  sweep_cmd->add_option("--act-bits-list", sweep.act_bits_list,
                        "Comma-separated activation bit widths")
      ->capture_default_str();
  sweep_cmd->add_option("--grans", sweep.grans,
                        "Comma-separated granularities (tensor, vector)")
      ->capture_default_str();
  AddQuantFlags(sweep_cmd, &sweep.quant, false);
  sweep_cmd->add_flag("--pretty", sweep.pretty, "Indent JSON output");

  ToyFlags toy;
  auto* toy_cmd = app.add_subcommand(
      "toy", "Evaluate a method on the toy decoder over the bundled corpus");
  toy_cmd->add_option("--seed", toy.seed, "Model seed")->capture_default_str();
  toy_cmd->add_option("--outlier-channels", toy.outlier_channels,
                      "Comma-separated planted channels")
      ->capture_default_str();
  toy_cmd->add_option("--gain", toy.gain, "Planted LayerNorm gain")
      ->capture_default_str();
  toy_cmd->add_option("--method", toy.method, "fp, naive, muxq or mixed")
      ->capture_default_str();
  toy_cmd->add_option("--gran", toy.gran, "tensor or vector")
      ->capture_default_str();
  toy_cmd->add_option("--targets", toy.targets,
                      "Comma-separated projections to quantize")
      ->capture_default_str();
  toy_cmd->add_option("--corpus", toy.corpus,
                      "Evaluation text (default: bundled corpus)");
  toy_cmd->add_option("--capture-out", toy.capture_out,
                      "Also dump one projection input of the first window");
  toy_cmd->add_option("--capture-target", toy.capture_target,
                      "Projection to capture")
      ->capture_default_str();
  toy_cmd->add_option("--capture-layer", toy.capture_layer, "Layer to capture")
      ->capture_default_str();
  AddQuantFlags(toy_cmd, &toy.quant, true);
  toy_cmd->add_flag("--pretty", toy.pretty, "Indent JSON output");

  ProfileFlags profile;
  auto* profile_cmd =
      app.add_subcommand("profile", "Per-channel max |x| as CSV");
  profile_cmd->add_option("--acts", profile.acts, "Activation MUXT file")
      ->required();
  profile_cmd->add_flag("--after-muxq", profile.after_muxq,
                        "Profile the MUXQ body instead of the input");
  profile_cmd->add_option("--theta", profile.theta, "Outlier threshold")
      ->capture_default_str();
  profile_cmd->add_option("--exp-factor", profile.exp_factor,
                          "MUXQ exponent shift")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*gen_cmd) return RunGen(gen);
    if (*eval_cmd) return RunEval(eval);
    if (*sweep_cmd) return RunSweep(sweep);
    if (*toy_cmd) return RunToy(toy);
    if (*profile_cmd) return RunProfile(profile);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitConfig;
}
