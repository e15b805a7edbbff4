// Copyright 2026 The qswitch Authors
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

#include <cstdint>
#include <random>

#include "qswitch/linalg.hpp"

namespace qswitch {

// Every sampler takes the engine explicitly; nothing here is ambient.
using Rng = std::mt19937_64;

/// Engine for worker `stream` of a run seeded with `seed`.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
/// R's diagonal folded back into Q.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);

/// Uniform point on the unit sphere.
BlochVector random_bloch(Rng& rng);

/// Haar-random pure state.
StateVector random_state(std::size_t num_qubits, Rng& rng);

/// Random mixed state: normalized G G† for a complex Ginibre G.
DensityMatrix random_density(std::size_t dim, Rng& rng);

double uniform_real(Rng& rng, double lo, double hi);

}  // namespace qswitch
