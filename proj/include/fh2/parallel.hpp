// Copyright 2026 The fh2lab developers
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

#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace fh2 {

/// Worker count: explicit request wins, then FH2LAB_THREADS, then hardware.
int resolve_threads(int requested);

/// Runs fn(chunk_index) for every chunk in [0, chunk_count) across workers.
/// Each chunk must derive its state from the index alone, so results are
/// identical for any worker count.
void for_each_chunk(std::int64_t chunk_count, int threads,
                    const std::function<void(std::int64_t)>& fn);

}  // namespace fh2
