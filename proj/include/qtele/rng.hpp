// Copyright 2026 The qudit-teleport Authors
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

#include <cstdint>
#include <random>

namespace qtele {

/// Seeded pseudo-random stream. A master seed plus a trial index always
/// yields the same stream, so per-trial work can run on any thread.
class RngStream {
   public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_index = 0);

    /// Independent child stream for trial `index`.
    RngStream spawn(std::uint64_t index) const;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    /// Standard normal deviate.
    double normal();

    std::uint64_t seed() const noexcept {
        return seed_;
    }
    std::uint64_t stream_index() const noexcept {
        return stream_index_;
    }

   private:
    std::uint64_t seed_;
    std::uint64_t stream_index_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> gauss_{0.0, 1.0};
};

}  // namespace qtele
