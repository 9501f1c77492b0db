// Copyright 2026 The fibjones Authors
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

#ifndef FIBJONES_ORACLE_HPP
#define FIBJONES_ORACLE_HPP

#include <complex>
#include <vector>

#include "fibjones/braid.hpp"

namespace fibjones {

/// Temperley-Lieb diagram on n strands. Endpoints 0..n-1 are the top row
/// and n..2n-1 the bottom row; pairing[k] is the partner of endpoint k.
struct PlanarMatching {
  int n = 0;
  std::vector<int> pairing;
  int loops_absorbed = 0;

  bool operator==(const PlanarMatching &) const = default;
};

PlanarMatching tl_identity(int n);
/// The cup-cap diagram E_i joining strands i and i+1 (1-based).
PlanarMatching tl_generator(int n, int i);

/// x stacked above y: x's bottom row is glued to y's top row.
PlanarMatching tl_compose(const PlanarMatching &x, const PlanarMatching &y);

/// D^{loops_absorbed} D^{L-n} where L counts loops in the trace closure.
std::complex<double> markov_trace_diagram(const PlanarMatching &x);

inline constexpr int kOracleMaxCrossings = 20;

/// Sum over all 2^m crossing resolutions. Throws SizeCapError above
/// kOracleMaxCrossings.
std::complex<double> oracle_trace(const BraidWord &b);

/// (-A)^{3w} D^{n-1} oracle_trace(b).
std::complex<double> oracle_jones(const BraidWord &b);

}  // namespace fibjones

#endif  // FIBJONES_ORACLE_HPP
