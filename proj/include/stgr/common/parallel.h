// Copyright 2026 The Spacetime-GR Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STGR_COMMON_PARALLEL_H_
#define STGR_COMMON_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace stgr {

// Worker cap: SPACETIME_GR_THREADS if set and positive, else hardware
// concurrency (at least 1).
int WorkerCount();

// Runs fn(i) for i in [0, n) on up to WorkerCount() threads. Each index runs
// exactly once; callers own any per-index output slot, so results do not
// depend on scheduling. The first exception thrown is rethrown.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace stgr

#endif  // STGR_COMMON_PARALLEL_H_
