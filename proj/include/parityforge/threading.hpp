/*
 * Copyright 2026 The ParityForge Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstddef>
#include <functional>

namespace parityforge {

// Worker cap: machine parallelism, optionally limited by the
// PARITY_FORGE_THREADS environment variable (read once).
int worker_count();

// Runs fn(0..n-1) across workers and joins. Tasks must be independent; the
// first exception thrown by any task is rethrown after the join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace parityforge
