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

#ifndef FIBJONES_DQC1_HPP
#define FIBJONES_DQC1_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fibjones/errors.hpp"

namespace fibjones {

using Amplitude = std::complex<double>;

/// Sparse state vector: (basis index, amplitude) pairs sorted by index.
using SparseColumn = std::vector<std::pair<std::uint64_t, Amplitude>>;

/// A unitary on `qubits` qubits supplied column by column. Qubit k is bit k
/// of the basis index.
class UnitaryOracle {
 public:
  using ColumnFn = std::function<SparseColumn(std::uint64_t)>;
  using DiagonalFn = std::function<Amplitude(std::uint64_t)>;

  UnitaryOracle(int qubits, ColumnFn column, DiagonalFn diagonal = {});

  static UnitaryOracle from_matrix(const Eigen::MatrixXcd &m);
  static UnitaryOracle identity(int qubits);

  int qubits() const { return qubits_; }
  std::uint64_t dimension() const { return std::uint64_t{1} << qubits_; }

  /// U|x>.
  SparseColumn column(std::uint64_t x) const;
  /// <x|U|x>.
  Amplitude diagonal(std::uint64_t x) const;

  /// Materialises U. Throws SizeCapError above kMaxDenseQubits.
  Eigen::MatrixXcd dense() const;

  static constexpr int kMaxDenseQubits = 11;

 private:
  int qubits_;
  ColumnFn column_;
  DiagonalFn diagonal_;
};

/// Sum of all diagonal elements; one column evaluation per basis state.
Amplitude exact_trace(const UnitaryOracle &u);

/// Largest |<U x|U y> - delta_xy| over `pairs` random column pairs.
double column_orthonormality_defect(const UnitaryOracle &u, int pairs, std::uint64_t seed);

enum class TracePart { Real, Imag };

/// Probability of reading 0 on the control of the interference circuit with
/// input |x>. The imaginary part uses the (|0> - i|1>)/sqrt2 control.
double hadamard_test_probability(const UnitaryOracle &u, std::uint64_t x, TracePart part);

/// Smallest N with 2 exp(-2 N (epsilon/2)^2) <= 1 - confidence.
std::int64_t samples_required(double epsilon, double confidence);

struct Dqc1Estimate {
  Amplitude estimate;
  /// Shots per part; the real and imaginary parts each use this many.
  std::int64_t samples = 0;
  double epsilon = 0.0;
  double confidence = 0.0;
  std::uint64_t seed = 0;
};

/// Per-part shot count that makes |estimate - Tr U / 2^b| <= epsilon hold
/// for the complex estimate with probability >= confidence.
std::int64_t samples_per_part(double epsilon, double confidence);

/// Complex accuracy implied by `samples` shots per part.
double epsilon_for_samples(std::int64_t samples, double confidence);

/// Samples a uniform basis state per shot and a Bernoulli outcome with the
/// interference probability. Results depend only on the arguments, not on
/// the number of worker threads. When `samples` is given it overrides the
/// shot count and `epsilon` is recomputed from it.
Dqc1Estimate estimate_normalized_trace(const UnitaryOracle &u, double epsilon, double confidence,
                                       std::uint64_t seed,
                                       std::optional<std::int64_t> samples = std::nullopt);

/// Appends one extra qubit per ancilla and XORs each ancilla into its extra
/// before applying `u`. Tr of the result equals 2^m Tr[P u] where P projects
/// the listed ancillas onto |0>.
UnitaryOracle clean_ancilla_wrap(const UnitaryOracle &u, const std::vector<int> &ancillas);

/// C2 u C1 u^dagger with two extra qubits per projected qubit, where each C
/// XORs the projected qubit into one of its extras. Tr of the result equals
/// 4^k Tr[P u P u^dagger], k = projected.size(). Built densely.
UnitaryOracle projector_sandwich(const UnitaryOracle &u, const std::vector<int> &projected);

/// Single-qubit X on `target`.
UnitaryOracle bit_flip(int qubits, int target);
/// e^{i theta} times the identity.
UnitaryOracle global_phase(int qubits, double theta);

/// Deterministic seed mixing shared by the samplers.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace fibjones

#endif  // FIBJONES_DQC1_HPP
