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

#ifndef FIBJONES_COMPILER_HPP
#define FIBJONES_COMPILER_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fibjones/braid.hpp"
#include "fibjones/dqc1.hpp"
#include "fibjones/jones.hpp"

namespace fibjones {

// ---------------------------------------------------------------------------
// Reversible classical maps. Each acts on a `width`-bit register plus one
// flag qubit and is a bijection of all 2^(width+1) basis states.

struct FlaggedRegister {
  std::uint64_t value = 0;
  bool flag = false;
  bool operator==(const FlaggedRegister &) const = default;
};

/// flag ^= (value >= threshold).
FlaggedRegister compare_flip(FlaggedRegister s, int width, std::uint64_t threshold);
/// value += k mod 2^width when flag is set.
FlaggedRegister controlled_add(FlaggedRegister s, int width, std::uint64_t k);
/// value -= k mod 2^width when flag is set.
FlaggedRegister controlled_sub(FlaggedRegister s, int width, std::uint64_t k);
/// compare_flip against f_{len+1}, then controlled_sub of f_{len+1}. With a
/// clear flag and a coding value this reads off the leftmost symbol.
FlaggedRegister leftmost_extract_map(FlaggedRegister s, int width, int len);
FlaggedRegister leftmost_extract_unmap(FlaggedRegister s, int width, int len);

/// Leftmost symbol of the length-`len` string with value z, and the value of
/// the remaining len-1 symbols. Requires z < f_{len+2}.
std::pair<bool, std::uint64_t> leftmost_extract(int len, std::uint64_t z);

/// A string of n symbols cut after position `split`. The left piece is
/// encoded reversed so that the symbol next to the cut has the largest weight.
struct SplitState {
  int n = 0;
  int split = 0;
  std::uint64_t left_z = 0;
  std::uint64_t right_z = 0;
  bool operator==(const SplitState &) const = default;
};

enum class ShiftDirection { Right, Left };

SplitState split_state(const SymbolString &s, int split);
SymbolString join(const SplitState &s);

/// Moves the cut one symbol. Right: the leftmost symbol of the right piece
/// joins the left piece. Left is the exact inverse.
SplitState split_shift(const SplitState &s, ShiftDirection direction);

/// Registers touched by the reversible shift: left, right and one scratch bit.
struct SplitRegisters {
  std::uint64_t left = 0;
  std::uint64_t right = 0;
  bool scratch = false;
  bool operator==(const SplitRegisters &) const = default;
};

/// Gate-level form of split_shift for a cut at `split` in an n-symbol string;
/// a bijection of all 2^(2 width + 1) register states.
SplitRegisters split_shift_map(SplitRegisters r, int width, int n, int split,
                               ShiftDirection direction);

// ---------------------------------------------------------------------------
// Circuits.

/// A gate on a list of qubits (local bit k is qubits[k]). Either a basis
/// permutation table or a small dense unitary.
struct Gate {
  std::string label;
  std::vector<int> qubits;
  std::vector<std::uint32_t> permutation;
  Eigen::MatrixXcd unitary;

  bool is_permutation() const { return !permutation.empty(); }
};

Gate permutation_gate(std::string label, std::vector<int> qubits, std::vector<std::uint32_t> table);
Gate unitary_gate(std::string label, std::vector<int> qubits, Eigen::MatrixXcd u);
Gate adjoint(const Gate &g);

/// Gates in time order on `qubits` qubits, simulated one column at a time.
class Circuit {
 public:
  explicit Circuit(int qubits) : qubits_(qubits) {}

  void append(Gate g);
  void append(const Circuit &other);
  int qubits() const { return qubits_; }
  const std::vector<Gate> &gates() const { return gates_; }

  SparseColumn apply(const SparseColumn &state) const;
  UnitaryOracle oracle() const;

 private:
  using LocalColumn = std::vector<std::pair<std::uint32_t, Amplitude>>;

  int qubits_;
  std::vector<Gate> gates_;
  // Nonzero entries of each column of the dense gates (empty for tables).
  std::vector<std::vector<LocalColumn>> sparse_;
};

/// Qubit assignment of a compiled circuit.
struct RegisterLayout {
  int symbols = 0;       // L = n + 1
  int data = 0;          // b = ceil(log2 f_{L+2}); qubits [0, b)
  int ancilla = 0;       // three symbol ancillas at [ancilla, ancilla + 3)
  int tag = 0;
  int weight = 0;
  int extra = 0;         // three wrap qubits for the symbol ancillas
  int total = 0;
};

RegisterLayout register_layout(int n);
/// Smallest b with 2^b >= f_{len+2}.
int data_qubits_for(int len);

/// Three-symbol extraction for sigma_i on (data, ancillas). Maps a coding
/// value with clear ancillas to (packed remainder, symbols i..i+2) and the
/// rest of the space by order-preserving complement matching.
std::vector<std::uint32_t> extraction_table(int n, int i);
/// Last-symbol extraction used by the weighting step.
std::vector<std::uint32_t> last_symbol_table(int n);

/// The local crossing rule on three symbol qubits (bit 2 = leftmost symbol),
/// identity on triples with adjacent stars.
Eigen::Matrix<std::complex<double>, 8, 8> local_crossing_unitary();

/// sigma_i (or its inverse) on data + symbol ancillas.
Circuit crossing_circuit_gates(int n, int i, bool inverse_crossing = false);
UnitaryOracle crossing_circuit(int n, int i);

inline constexpr int kCompileMaxStrands = 8;

struct CompiledCircuit {
  BraidWord braid;
  RegisterLayout layout;
  int data_qubits = 0;
  int ancilla_qubits = 0;
  std::shared_ptr<const Circuit> circuit;
  UnitaryOracle op;
  /// kappa * Tr(op) equals the weighted trace.
  std::complex<double> normalization;
};

CompiledCircuit compile(const BraidWord &b);

struct JonesDqc1Result {
  JonesResult<double> result;
  Dqc1Estimate estimate;
  double radius = 0.0;
  std::complex<double> kappa;
};

/// Jones value from a sampled trace of the compiled circuit. The additive
/// error is at most `radius` with the requested confidence.
JonesDqc1Result estimate_jones_dqc1(const BraidWord &b, double epsilon, double confidence,
                                    std::uint64_t seed,
                                    std::optional<std::int64_t> samples = std::nullopt);

}  // namespace fibjones

#endif  // FIBJONES_COMPILER_HPP
