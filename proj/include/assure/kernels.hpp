/* Copyright 2026 The Assure Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Exhaustive subset kernels behind the exact policy analysis. Each kernel has
// an OpenMP version (used by the public API) and a serial reference that the
// tests and the benchmark compare it against. Results are sorted by
// (popcount, numeric mask) so both versions agree byte for byte.

#include <cstdint>
#include <vector>

#include "assure/policy.hpp"

namespace assure::kernels {

namespace serial {

std::vector<std::uint32_t> minimal_satisfying_masks(const CompiledPolicy& policy);
std::vector<std::uint32_t> minimal_blocking_masks(const CompiledPolicy& policy);
/// Size of the smallest satisfying set; width()+1 if none exists.
int min_satisfying_size(const CompiledPolicy& policy);
/// Size of the smallest set whose removal leaves the policy unsatisfiable.
int min_blocking_size(const CompiledPolicy& policy);

}  // namespace serial

namespace omp {

std::vector<std::uint32_t> minimal_satisfying_masks(const CompiledPolicy& policy);
std::vector<std::uint32_t> minimal_blocking_masks(const CompiledPolicy& policy);
int min_satisfying_size(const CompiledPolicy& policy);
int min_blocking_size(const CompiledPolicy& policy);

}  // namespace omp

void canonical_sort(std::vector<std::uint32_t>& masks);

}  // namespace assure::kernels
