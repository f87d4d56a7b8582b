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

#include <filesystem>
#include <string>

#include "muxq/tensor.hpp"

namespace muxq {

// MUXT binary dump, little-endian:
//   "MUXT" | version u32 = 1 | dtype u8 = 0 (f32) | layout u8 | reserved u16
//   | rows u64 | cols u64 | rows*cols f32 row-major
inline constexpr char kDumpMagic[4] = {'M', 'U', 'X', 'T'};
inline constexpr unsigned kDumpVersion = 1;
inline constexpr std::size_t kDumpHeaderSize = 28;

std::string EncodeDump(const DenseMatrix& m);
// Parse errors: kBadMagic, kVersionMismatch, kTruncated, kNonFinite, and
// kBadHeader for an unknown dtype/layout byte or nonzero reserved field.
DenseMatrix DecodeDump(const std::string& bytes);

void WriteDump(const DenseMatrix& m, const std::filesystem::path& path);
DenseMatrix ReadDump(const std::filesystem::path& path);

}  // namespace muxq
