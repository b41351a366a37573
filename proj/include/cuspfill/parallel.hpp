// Copyright 2026 The cuspfill Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CUSPFILL_PARALLEL_HPP_
#define CUSPFILL_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace cuspfill {

/// Calls fn(i) for i in [0, n) on up to `threads` threads (0 = hardware
/// concurrency).  Callers write results into per-index slots so the output
/// does not depend on scheduling.  The first exception thrown is rethrown
/// after all workers stop.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace cuspfill

#endif  // CUSPFILL_PARALLEL_HPP_
