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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed constants below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "muxq/decompose.hpp"
#include "muxq/gemm.hpp"
#include "muxq/method.hpp"
#include "muxq/metrics.hpp"
#include "muxq/quant.hpp"
#include "muxq/synthetic.hpp"
#include "muxq/toy_model.hpp"
#include "oracle/reference.hpp"

namespace muxq {
namespace {

constexpr int kReconCases = 1000;
constexpr double kReconSeconds = 10.0;
constexpr std::int64_t kReconMaxUlp = 2;

constexpr int kBoundGroups = 10000;
constexpr std::size_t kBoundGroupSize = 64;
constexpr double kBoundSeconds = 10.0;

constexpr int kDegenCases = 100;
constexpr double kDegenSeconds = 10.0;

constexpr int kReliefSeeds = 20;
constexpr int kReliefMinWins = 19;
constexpr std::size_t kSuiteRows = 512, kSuiteCols = 768, kSuiteOut = 768;
constexpr std::size_t kSuitePlanted = 6;
constexpr double kSuiteGain = 30.0;
constexpr double kReliefSeconds = 60.0;

constexpr double kTrendSeconds = 300.0;

constexpr double kWeightBitsMaxRelGap = 0.15;
constexpr int kWeightBitsMinWins = 15;

constexpr int kIntCases = 100;
constexpr std::size_t kIntMaxDim = 128;
constexpr double kIntRelTol = 1e-4;
constexpr double kIntSeconds = 30.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;
std::FILE* report_copy = nullptr;

void Report(const char* name, const std::function<Outcome()>& body,
            double budget_s) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  const bool in_time = secs < budget_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  for (std::FILE* f : {stdout, report_copy}) {
    if (!f) continue;
    std::fprintf(f, "%s %s: %s; %.2f s (budget %.0f s)%s\n",
                 pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs, budget_s,
                 in_time ? "" : " over budget");
    std::fflush(f);
  }
}

std::string Fmt(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

Outcome Reconstruction() {
  std::mt19937_64 rng(20260101);
  int bad_exact = 0, bad_wide = 0, bad_ulp = 0;
  std::int64_t worst_ulp = 0;
  for (int i = 0; i < kReconCases; ++i) {
    const std::size_t rows = 1 + rng() % 64, cols = 1 + rng() % 128;
    const auto planted = oracle::RandomSubset(rng, cols, rng() % 9);
    const double gain = 5.0 + static_cast<double>(rng() % 60);
    const DenseMatrix x =
        oracle::RandomWithOutliers(rng, rows, cols, planted, gain);
    const int e = i % 4;
    const MuxqDecomposition d = Decompose(x, {planted, 6.0}, e);
    const DenseMatrix rec = Reconstruct(d);
    if (e <= 1) {
      bad_exact += !rec.BitEqual(x);
      continue;
    }
    const double mult = std::ldexp(1.0, e) - 1.0;
    for (std::size_t j = 0; j < planted.size(); ++j) {
      for (std::size_t r = 0; r < rows; ++r) {
        const double wide = static_cast<double>(d.body.at(r, planted[j])) +
                            mult * static_cast<double>(d.aux.at(r, j));
        bad_wide += wide != static_cast<double>(x.at(r, planted[j]));
      }
    }
    for (std::size_t k = 0; k < x.size(); ++k) {
      const std::int64_t u =
          oracle::UlpDistance(rec.values()[k], x.values()[k]);
      worst_ulp = std::max(worst_ulp, u);
      bad_ulp += u > kReconMaxUlp;
    }
  }
  return {bad_exact == 0 && bad_wide == 0 && bad_ulp == 0,
          Fmt("%d matrices, e<=1 mismatches %d, 64-bit mismatches %d, "
              "elements over %lld ulp %d (worst %lld ulp)",
              kReconCases, bad_exact, bad_wide,
              static_cast<long long>(kReconMaxUlp), bad_ulp,
              static_cast<long long>(worst_ulp))};
}

Outcome ErrorBound() {
  std::mt19937_64 rng(20260102);
  std::uniform_real_distribution<double> log_std(-4.0, 4.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  long long checked = 0, violations = 0;
  for (int g = 0; g < kBoundGroups; ++g) {
    const int bits = 4 + g % 5;
    const double stddev = std::pow(10.0, log_std(rng));
    std::vector<float> v(kBoundGroupSize);
    for (float& f : v) f = static_cast<float>(stddev * normal(rng));
    if (g % 7 == 0) v[rng() % v.size()] *= 40.0f;  // outlier-heavy groups
    const DenseMatrix x(1, v.size(), v);
    const QuantizedTensor t = QuantizeAbsMax(x, bits, Granularity::kPerTensor);
    const DenseMatrix fq = FakeQuantize(x, bits, Granularity::kPerTensor);
    const double s = t.scales[0];
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (std::abs(t.q[i]) == MaxLevel(bits) &&
          std::fabs(v[i]) > MaxLevel(bits) * s) {
        continue;  // clamped
      }
      ++checked;
      violations += std::fabs(static_cast<double>(v[i]) - fq.at(0, i)) > s / 2;
    }
  }
  return {violations == 0,
          Fmt("%d groups of %zu, bits 4-8, %lld elements checked, "
              "|x - fq(x)| > s/2 in %lld",
              kBoundGroups, kBoundGroupSize, checked, violations)};
}

MethodConfig RandomConfig(std::mt19937_64& rng, Method m) {
  MethodConfig cfg;
  cfg.method = m;
  cfg.act_bits = 4 + static_cast<int>(rng() % 5);
  cfg.w_bits = 4 + static_cast<int>(rng() % 5);
  cfg.act_granularity =
      rng() % 2 ? Granularity::kPerToken : Granularity::kPerTensor;
  cfg.w_granularity =
      rng() % 2 ? Granularity::kPerChannel : Granularity::kPerTensor;
  cfg.mode = rng() % 2 ? ComputeMode::kInt : ComputeMode::kFake;
  cfg.exp_factor = 1 + static_cast<int>(rng() % 3);
  return cfg;
}

Outcome Degeneracy() {
  std::mt19937_64 rng(20260103);
  int bad_theta = 0, bad_e0 = 0, bad_mixed = 0;
  for (int i = 0; i < kDegenCases; ++i) {
    const std::size_t m = 1 + rng() % 48, k = 1 + rng() % 96,
                      n = 1 + rng() % 48;
    const auto planted = oracle::RandomSubset(rng, k, rng() % 5);
    const DenseMatrix x = oracle::RandomWithOutliers(rng, m, k, planted, 25.0);
    const DenseMatrix w = oracle::RandomMatrix(rng, k, n, Layout::kWeight, 0.1);
    MethodConfig naive = RandomConfig(rng, Method::kNaive);
    const DenseMatrix ref = NaiveGemm(x, w, naive);

    MethodConfig huge = naive;
    huge.method = Method::kMuxq;
    huge.theta = 1e30;
    MethodConfig e0 = naive;
    e0.method = Method::kMuxq;
    e0.exp_factor = 0;
    MethodConfig mixed = naive;
    mixed.method = Method::kMixedPrecision;
    mixed.theta = 1e30;
    bad_theta += !MuxqGemm(x, w, huge).BitEqual(ref);
    bad_e0 += !MuxqGemm(x, w, e0).BitEqual(ref);
    bad_mixed += !MixedPrecisionGemm(x, w, mixed).BitEqual(ref);
  }
  return {bad_theta + bad_e0 + bad_mixed == 0,
          Fmt("%d cases, mismatches: muxq(theta=1e30) %d, muxq(e=0) %d, "
              "mixed(theta=1e30) %d",
              kDegenCases, bad_theta, bad_e0, bad_mixed)};
}

struct SuiteCase {
  DenseMatrix x;
  DenseMatrix w;
  DenseMatrix reference;
};

SuiteCase MakeSuiteCase(int seed) {
  std::mt19937_64 pick(static_cast<std::uint64_t>(seed));
  SyntheticSpec acts;
  acts.rows = kSuiteRows;
  acts.cols = kSuiteCols;
  acts.outlier_channels = oracle::RandomSubset(pick, kSuiteCols, kSuitePlanted);
  acts.outlier_gain = kSuiteGain;
  acts.seed = 1000 + static_cast<std::uint64_t>(seed);
  SyntheticSpec weights;
  weights.rows = kSuiteCols;
  weights.cols = kSuiteOut;
  weights.base_std = 1.0 / std::sqrt(static_cast<double>(kSuiteCols));
  weights.seed = 2000 + static_cast<std::uint64_t>(seed);
  weights.layout = Layout::kWeight;
  SuiteCase c{GenerateSynthetic(acts), GenerateSynthetic(weights), {}};
  c.reference = Gemm(c.x, c.w);
  return c;
}

double SuiteError(const SuiteCase& c, const MethodConfig& cfg) {
  return ComputeErrorStats(c.reference, RunMethod(c.x, c.w, cfg)).rel_frobenius;
}

Outcome OutlierRelief() {
  int wins = 0;
  double ratio_sum = 0.0, naive_sum = 0.0, muxq_sum = 0.0;
  for (int seed = 0; seed < kReliefSeeds; ++seed) {
    const SuiteCase c = MakeSuiteCase(seed);
    MethodConfig cfg;  // per-tensor INT8 fake quantization, theta 6, e 2
    cfg.method = Method::kNaive;
    const double naive = SuiteError(c, cfg);
    cfg.method = Method::kMuxq;
    const double muxq = SuiteError(c, cfg);
    wins += muxq < naive;
    ratio_sum += muxq / naive;
    naive_sum += naive;
    muxq_sum += muxq;
  }
  return {wins >= kReliefMinWins,
          Fmt("muxq < naive in %d/%d seeds (need >= %d); mean rel_frobenius "
              "naive %.5f muxq %.5f, mean muxq/naive %.4f",
              wins, kReliefSeeds, kReliefMinWins, naive_sum / kReliefSeeds,
              muxq_sum / kReliefSeeds, ratio_sum / kReliefSeeds)};
}

Outcome BitWidthTrend() {
  ToyConfig tc;
  tc.seed = 0;
  tc.outlier_channels = {3, 17};
  tc.outlier_gain = 20.0;
  const ToyModel model = ToyModel::Build(tc);
  const std::string_view text = BundledCorpus();
  const std::span<const std::uint8_t> corpus(
      reinterpret_cast<const std::uint8_t*>(text.data()), text.size());
  std::vector<double> gaps;
  std::string detail;
  for (int bits : {6, 7, 8}) {
    MethodConfig cfg;
    cfg.act_bits = bits;
    cfg.w_bits = 8;
    cfg.method = Method::kNaive;
    const double naive =
        EvaluateOnCorpus(model, corpus, cfg, QuantTargetSet::All())
            .fidelity.mean_kl;
    cfg.method = Method::kMuxq;
    const double muxq =
        EvaluateOnCorpus(model, corpus, cfg, QuantTargetSet::All())
            .fidelity.mean_kl;
    gaps.push_back(naive - muxq);
    detail += Fmt("%sA%d: KL naive %.5f muxq %.5f gap %.5f",
                  detail.empty() ? "" : ", ", bits, naive, muxq, naive - muxq);
  }
  const bool positive =
      std::all_of(gaps.begin(), gaps.end(), [](double g) { return g > 0.0; });
  const bool largest_at_6 = gaps[0] > gaps[1] && gaps[0] > gaps[2];
  return {positive && largest_at_6, detail};
}

Outcome WeightBits() {
  bool pass = true;
  std::string detail = "per-token activations, per-channel weights, A8";
  for (int w_bits : {4, 5}) {
    int wins = 0;
    double naive_sum = 0.0, muxq_sum = 0.0;
    for (int seed = 0; seed < kReliefSeeds; ++seed) {
      const SuiteCase c = MakeSuiteCase(seed);
      MethodConfig cfg;
      cfg.act_bits = 8;
      cfg.w_bits = w_bits;
      cfg.act_granularity = Granularity::kPerToken;
      cfg.w_granularity = Granularity::kPerChannel;
      cfg.method = Method::kNaive;
      const double naive = SuiteError(c, cfg);
      cfg.method = Method::kMuxq;
      const double muxq = SuiteError(c, cfg);
      wins += muxq <= naive;
      naive_sum += naive;
      muxq_sum += muxq;
    }
    const double gap = std::fabs(naive_sum - muxq_sum) / naive_sum;
    pass = pass && gap < kWeightBitsMaxRelGap && wins >= kWeightBitsMinWins;
    detail += Fmt("; W%d: mean naive %.5f muxq %.5f, |gap|/naive %.4f "
                  "(< %.2f), muxq <= naive in %d/%d (need >= %d)",
                  w_bits, naive_sum / kReliefSeeds, muxq_sum / kReliefSeeds,
                  gap, kWeightBitsMaxRelGap, wins, kReliefSeeds,
                  kWeightBitsMinWins);
  }
  return {pass, detail};
}

Outcome IntPath() {
  std::mt19937_64 rng(20260104);
  double worst = 0.0;
  int bad = 0;
  for (int i = 0; i < kIntCases; ++i) {
    const std::size_t m = 1 + rng() % kIntMaxDim, k = 1 + rng() % kIntMaxDim,
                      n = 1 + rng() % kIntMaxDim;
    const auto planted = oracle::RandomSubset(rng, k, rng() % 4);
    const DenseMatrix x = oracle::RandomWithOutliers(rng, m, k, planted, 20.0);
    const DenseMatrix w = oracle::RandomMatrix(rng, k, n, Layout::kWeight, 0.1);
    const int bits = 4 + static_cast<int>(rng() % 5);
    const auto ag = rng() % 2 ? Granularity::kPerToken : Granularity::kPerTensor;
    const auto wg =
        rng() % 2 ? Granularity::kPerChannel : Granularity::kPerTensor;
    const QuantizedTensor qa = QuantizeAbsMax(x, bits, ag);
    const QuantizedTensor qw = QuantizeAbsMax(w, bits, wg);
    const double rel =
        oracle::RelFrobenius(oracle::Gemm(oracle::DequantizeExact(qa),
                                          oracle::DequantizeExact(qw)),
                             IntGemm(qa, qw));
    worst = std::max(worst, rel);
    bad += !(rel <= kIntRelTol);
  }
  return {bad == 0, Fmt("%d cases up to %zu^3, worst rel_frobenius %.3g "
                        "(tol %.0e), failures %d",
                        kIntCases, kIntMaxDim, worst, kIntRelTol, bad)};
}

}  // namespace
}  // namespace muxq

// Optional argument: a file that also receives the report lines.
int main(int argc, char** argv) {
  using namespace muxq;
  if (argc > 1) report_copy = std::fopen(argv[1], "w");
  Report("reconstruction-exactness", Reconstruction, kReconSeconds);
  Report("quantizer-error-bound", ErrorBound, kBoundSeconds);
  Report("degeneracy-equivalences", Degeneracy, kDegenSeconds);
  Report("outlier-relief-ordering", OutlierRelief, kReliefSeconds);
  Report("toy-bit-width-trend", BitWidthTrend, kTrendSeconds);
  Report("weight-bits-insensitivity", WeightBits, kReliefSeconds * 2);
  Report("integer-path-correctness", IntPath, kIntSeconds);
  for (std::FILE* f : {stdout, report_copy}) {
    if (f) std::fprintf(f, "%s: %d failing criteria\n",
                        failures ? "FAIL" : "PASS", failures);
  }
  if (report_copy) std::fclose(report_copy);
  return failures ? 1 : 0;
}
