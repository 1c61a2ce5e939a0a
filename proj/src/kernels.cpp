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

#include "assure/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>

namespace assure::kernels {

void canonical_sort(std::vector<std::uint32_t>& masks) {
  std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
}

namespace {

// Satisfaction is monotone, so a satisfying set is minimal iff dropping any
// single member breaks it.
bool is_minimal_satisfying(const CompiledPolicy& policy, std::uint32_t mask) {
  if (!policy.eval(mask)) return false;
  for (std::uint32_t rest = mask; rest; rest &= rest - 1) {
    if (policy.eval(mask & ~(rest & -rest))) return false;
  }
  return true;
}

bool blocks(const CompiledPolicy& policy, std::uint32_t removed) {
  return !policy.eval(policy.full_mask() & ~removed);
}

bool is_minimal_blocking(const CompiledPolicy& policy, std::uint32_t mask) {
  if (!blocks(policy, mask)) return false;
  for (std::uint32_t rest = mask; rest; rest &= rest - 1) {
    if (blocks(policy, mask & ~(rest & -rest))) return false;
  }
  return true;
}

std::uint64_t subset_count(const CompiledPolicy& policy) { return std::uint64_t{1} << policy.width(); }

}  // namespace

namespace serial {

std::vector<std::uint32_t> minimal_satisfying_masks(const CompiledPolicy& policy) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t m = 0; m < subset_count(policy); ++m) {
    if (is_minimal_satisfying(policy, static_cast<std::uint32_t>(m))) out.push_back(static_cast<std::uint32_t>(m));
  }
  canonical_sort(out);
  return out;
}

std::vector<std::uint32_t> minimal_blocking_masks(const CompiledPolicy& policy) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t m = 0; m < subset_count(policy); ++m) {
    if (is_minimal_blocking(policy, static_cast<std::uint32_t>(m))) out.push_back(static_cast<std::uint32_t>(m));
  }
  canonical_sort(out);
  return out;
}

int min_satisfying_size(const CompiledPolicy& policy) {
  int best = static_cast<int>(policy.width()) + 1;
  for (std::uint64_t m = 0; m < subset_count(policy); ++m) {
    const auto mask = static_cast<std::uint32_t>(m);
    if (std::popcount(mask) < best && policy.eval(mask)) best = std::popcount(mask);
  }
  return best;
}

int min_blocking_size(const CompiledPolicy& policy) {
  int best = static_cast<int>(policy.width()) + 1;
  for (std::uint64_t m = 0; m < subset_count(policy); ++m) {
    const auto mask = static_cast<std::uint32_t>(m);
    if (std::popcount(mask) < best && blocks(policy, mask)) best = std::popcount(mask);
  }
  return best;
}

}  // namespace serial

namespace omp {

namespace {

template <typename Pred>
std::vector<std::uint32_t> collect_masks(const CompiledPolicy& policy, Pred pred) {
  const auto total = static_cast<std::int64_t>(subset_count(policy));
  std::vector<std::vector<std::uint32_t>> per_thread(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    auto& local = per_thread[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::int64_t m = 0; m < total; ++m) {
      if (pred(static_cast<std::uint32_t>(m))) local.push_back(static_cast<std::uint32_t>(m));
    }
  }
  std::vector<std::uint32_t> out;
  for (auto& part : per_thread) out.insert(out.end(), part.begin(), part.end());
  canonical_sort(out);
  return out;
}

template <typename Pred>
int min_size(const CompiledPolicy& policy, Pred pred) {
  const auto total = static_cast<std::int64_t>(subset_count(policy));
  int best = static_cast<int>(policy.width()) + 1;
#pragma omp parallel for schedule(static) reduction(min : best)
  for (std::int64_t m = 0; m < total; ++m) {
    const auto mask = static_cast<std::uint32_t>(m);
    if (std::popcount(mask) < best && pred(mask)) best = std::popcount(mask);
  }
  return best;
}

}  // namespace

std::vector<std::uint32_t> minimal_satisfying_masks(const CompiledPolicy& policy) {
  return collect_masks(policy, [&](std::uint32_t m) { return is_minimal_satisfying(policy, m); });
}

std::vector<std::uint32_t> minimal_blocking_masks(const CompiledPolicy& policy) {
  return collect_masks(policy, [&](std::uint32_t m) { return is_minimal_blocking(policy, m); });
}

int min_satisfying_size(const CompiledPolicy& policy) {
  return min_size(policy, [&](std::uint32_t m) { return policy.eval(m); });
}

int min_blocking_size(const CompiledPolicy& policy) {
  return min_size(policy, [&](std::uint32_t m) { return blocks(policy, m); });
}

}  // namespace omp
}  // namespace assure::kernels
