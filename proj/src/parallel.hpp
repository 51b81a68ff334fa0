/* Copyright 2026 The qwell Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#pragma once

#include <cstddef>
#include <functional>

namespace qwell {

/// Points per work unit for batched evaluation. Fixed so that the grouping of
/// floating-point reductions never depends on the thread count.
inline constexpr std::size_t kChunkSize = 32;

/// Worker threads to use. Reads QWELL_THREADS once (0 or 1 means serial);
/// defaults to the hardware concurrency.
std::size_t thread_limit();

/// Overrides QWELL_THREADS for the current process; 0 restores the default.
void set_thread_limit(std::size_t threads);

/// Calls fn(chunk) for chunk in [0, n_chunks). Chunks may run concurrently;
/// callers write results into per-chunk slots and reduce them in order.
void for_each_chunk(std::size_t n_chunks,
                    const std::function<void(std::size_t)>& fn);

}  // namespace qwell
