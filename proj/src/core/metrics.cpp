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

#include "muxq/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "muxq/error.hpp"

namespace muxq {

ErrorStats ComputeErrorStats(const DenseMatrix& reference,
                             const DenseMatrix& candidate) {
  if (reference.rows() != candidate.rows() ||
      reference.cols() != candidate.cols()) {
    Fail(ErrorCode::kShape, "error stats need equally shaped matrices");
  }
  const auto ref = reference.values();
  const auto cand = candidate.values();
  double signal = 0.0, noise = 0.0, max_abs = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double r = ref[i];
    const double d = r - static_cast<double>(cand[i]);
    signal += r * r;
    noise += d * d;
    max_abs = std::max(max_abs, std::fabs(d));
  }
  ErrorStats s;
  s.max_abs_err = max_abs;
  if (noise == 0.0) {
    s.rel_frobenius = 0.0;
    s.sqnr_db = std::numeric_limits<double>::infinity();
  } else {
    s.rel_frobenius = signal == 0.0 ? std::numeric_limits<double>::infinity()
                                    : std::sqrt(noise) / std::sqrt(signal);
    s.sqnr_db = signal == 0.0 ? -std::numeric_limits<double>::infinity()
                              : 10.0 * std::log10(signal / noise);
  }
  return s;
}

namespace {

// log-softmax of one row, in double with max subtraction.
void LogSoftmax(std::span<const float> logits, std::vector<double>& out) {
  out.resize(logits.size());
  double max_v = -std::numeric_limits<double>::infinity();
  for (float v : logits) max_v = std::max(max_v, static_cast<double>(v));
  double sum = 0.0;
  for (float v : logits) sum += std::exp(static_cast<double>(v) - max_v);
  const double log_z = max_v + std::log(sum);
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = static_cast<double>(logits[i]) - log_z;
  }
}

std::size_t ArgMax(std::span<const float> v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) -
                                  v.begin());
}

}  // namespace

LogitStats CompareLogits(const DenseMatrix& reference,
                         const DenseMatrix& candidate) {
  if (reference.rows() != candidate.rows() ||
      reference.cols() != candidate.cols()) {
    Fail(ErrorCode::kShape, "logit comparison needs equally shaped matrices");
  }
  LogitStats s;
  if (reference.rows() == 0 || reference.cols() == 0) return s;
  std::vector<double> lp, lq;
  double kl_sum = 0.0;
  std::size_t agree = 0;
  for (std::size_t r = 0; r < reference.rows(); ++r) {
    LogSoftmax(reference.row(r), lp);
    LogSoftmax(candidate.row(r), lq);
    double kl = 0.0;
    for (std::size_t i = 0; i < lp.size(); ++i) {
      kl += std::exp(lp[i]) * (lp[i] - lq[i]);
    }
    kl_sum += std::max(kl, 0.0);
    if (ArgMax(reference.row(r)) == ArgMax(candidate.row(r))) ++agree;
  }
  const double n = static_cast<double>(reference.rows());
  s.mean_kl = kl_sum / n;
  s.top1_agreement = static_cast<double>(agree) / n;
  return s;
}

std::vector<float> ChannelMaxProfile(const DenseMatrix& x) {
  std::vector<float> profile(x.cols(), 0.0f);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto row = x.row(r);
    for (std::size_t c = 0; c < x.cols(); ++c) {
      profile[c] = std::max(profile[c], std::fabs(row[c]));
    }
  }
  return profile;
}

std::string ProfileCsv(std::span<const float> profile) {
  std::string out = "channel,max_abs\n";
  char buf[64];
  for (std::size_t c = 0; c < profile.size(); ++c) {
    out += std::to_string(c);
    out += ',';
    const auto res = std::to_chars(buf, buf + sizeof(buf), profile[c]);
    out.append(buf, res.ptr);
    out += '\n';
  }
  return out;
}

}  // namespace muxq
