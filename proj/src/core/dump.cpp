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

#include "muxq/dump.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "muxq/error.hpp"

static_assert(std::endian::native == std::endian::little,
              "MUXT encoding assumes a little-endian host");

namespace muxq {
namespace {

template <typename T>
void Put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
T Get(const std::string& in, std::size_t offset) {
  T v;
  std::memcpy(&v, in.data() + offset, sizeof(T));
  return v;
}

}  // namespace

std::string EncodeDump(const DenseMatrix& m) {
  std::string out;
  out.reserve(kDumpHeaderSize + m.size() * sizeof(float));
  out.append(kDumpMagic, 4);
  Put<std::uint32_t>(out, kDumpVersion);
  Put<std::uint8_t>(out, 0);  // f32
  Put<std::uint8_t>(out, static_cast<std::uint8_t>(m.layout()));
  Put<std::uint16_t>(out, 0);
  Put<std::uint64_t>(out, m.rows());
  Put<std::uint64_t>(out, m.cols());
  const auto values = m.values();
  out.append(reinterpret_cast<const char*>(values.data()),
             values.size() * sizeof(float));
  return out;
}

DenseMatrix DecodeDump(const std::string& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kDumpMagic, 4) != 0) {
    Fail(ErrorCode::kBadMagic, "not a MUXT file (bad magic)");
  }
  if (bytes.size() < kDumpHeaderSize) {
    Fail(ErrorCode::kTruncated, "MUXT header truncated");
  }
  const auto version = Get<std::uint32_t>(bytes, 4);
  if (version != kDumpVersion) {
    Fail(ErrorCode::kVersionMismatch,
         "unsupported MUXT version " + std::to_string(version));
  }
  const auto dtype = Get<std::uint8_t>(bytes, 8);
  const auto layout = Get<std::uint8_t>(bytes, 9);
  const auto reserved = Get<std::uint16_t>(bytes, 10);
  if (dtype != 0) {
    Fail(ErrorCode::kBadHeader, "unsupported dtype " + std::to_string(dtype));
  }
  if (layout > 1) {
    Fail(ErrorCode::kBadHeader, "unknown layout " + std::to_string(layout));
  }
  if (reserved != 0) {
    Fail(ErrorCode::kBadHeader, "reserved header field is nonzero");
  }
  const auto rows = Get<std::uint64_t>(bytes, 12);
  const auto cols = Get<std::uint64_t>(bytes, 20);
  const std::uint64_t max_elems =
      std::numeric_limits<std::uint64_t>::max() / sizeof(float);
  if (cols != 0 && rows > max_elems / cols) {
    Fail(ErrorCode::kTruncated, "MUXT dimensions overflow");
  }
  const std::uint64_t count = rows * cols;
  const std::uint64_t payload = bytes.size() - kDumpHeaderSize;
  if (payload < count * sizeof(float)) {
    Fail(ErrorCode::kTruncated, "MUXT payload truncated: expected " +
                                    std::to_string(count * sizeof(float)) +
                                    " bytes, found " + std::to_string(payload));
  }
  if (payload > count * sizeof(float)) {
    Fail(ErrorCode::kBadHeader, "trailing bytes after MUXT payload");
  }
  std::vector<float> data(count);
  std::memcpy(data.data(), bytes.data() + kDumpHeaderSize,
              count * sizeof(float));
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!std::isfinite(data[i])) {
      Fail(ErrorCode::kNonFinite,
           "non-finite value in MUXT payload at index " + std::to_string(i));
    }
  }
  return DenseMatrix(rows, cols, std::move(data), static_cast<Layout>(layout));
}

void WriteDump(const DenseMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  const std::string bytes = EncodeDump(m);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) Fail(ErrorCode::kIo, "write failed: " + path.string());
}

DenseMatrix ReadDump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) Fail(ErrorCode::kIo, "read failed: " + path.string());
  return DecodeDump(ss.str());
}

}  // namespace muxq
