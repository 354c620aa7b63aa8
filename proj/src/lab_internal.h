// Copyright 2026 The lgtdual Authors
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

#ifndef LGTDUAL_LAB_INTERNAL_H
#define LGTDUAL_LAB_INTERNAL_H

#include <cstdint>
#include <random>

#include "lgtdual/lab.h"

namespace lgtdual {

/// Generator for one (seed, stream) pair; streams never share state.
std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b = 0);
std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b = 0);

/// Relative l2 distance; 0 when both vanish.
double relative_distance(const StateVector &a, const StateVector &b, bool aligned);
/// max over generators of ||(g - 1) psi|| / ||psi||.
double gauss_residual(const StateVector &psi, const std::vector<WeylString> &generators);

}  // namespace lgtdual

#endif
