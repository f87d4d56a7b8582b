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

#include "muxq/error.hpp"

namespace muxq {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
      return "configuration error";
    case ErrorCode::kShape:
      return "shape mismatch";
    case ErrorCode::kIo:
      return "I/O error";
    case ErrorCode::kBadMagic:
      return "bad magic";
    case ErrorCode::kVersionMismatch:
      return "version mismatch";
    case ErrorCode::kTruncated:
      return "truncated payload";
    case ErrorCode::kNonFinite:
      return "non-finite value";
    case ErrorCode::kBadHeader:
      return "bad header";
  }
  return "unknown error";
}

void Fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace muxq
