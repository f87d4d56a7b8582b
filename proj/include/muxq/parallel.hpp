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
#include <functional>

namespace muxq {

// Upper bound on worker threads used by the GEMM kernels. Initialized from
// MUXQ_THREADS when set, otherwise std::thread::hardware_concurrency().
int MaxThreads();
// n <= 0 restores the environment/default value.
void SetMaxThreads(int n);

// Calls fn(begin, end) over disjoint row ranges covering [0, rows). Each row
// is handled by exactly one call, so per-row results never depend on the
// thread count.
void ParallelRows(std::size_t rows, std::size_t work_per_row,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace muxq
