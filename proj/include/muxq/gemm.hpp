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

#include "muxq/tensor.hpp"

namespace muxq {

// Full-precision GEMM: out(i, j) = float(sum_k double(a(i, k)) * double(b(k, j)))
// with the sum taken in ascending k. The result is activation-layout.
// Throws kShape if a.cols() != b.rows().
DenseMatrix Gemm(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace muxq
