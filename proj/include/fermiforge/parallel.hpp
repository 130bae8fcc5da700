// Copyright 2026 The fermiforge Authors
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

#ifndef FERMIFORGE_PARALLEL_HPP_
#define FERMIFORGE_PARALLEL_HPP_

#include <cstdint>
#include <functional>

namespace fermiforge {

/// Worker count: FERMIFORGE_THREADS if set and positive, else the hardware count.
int thread_count();

/// Splits [0, n) into contiguous chunks and runs fn(begin, end) on each.
/// Runs inline when n < min_chunk or only one thread is available.
void parallel_for(int64_t n, const std::function<void(int64_t, int64_t)>& fn, int64_t min_chunk = 1 << 14);

/// Runs fn(i) for i in [0, n) on independent work items.
void parallel_tasks(int n, const std::function<void(int)>& fn);

}  // namespace fermiforge

#endif  // FERMIFORGE_PARALLEL_HPP_
