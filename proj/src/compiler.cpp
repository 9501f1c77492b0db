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

#include "fibjones/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace fibjones {

namespace {

std::uint64_t mask_of(int width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

// Width used when SplitState values are pushed through the gate-level maps.
constexpr int kValueWidth = 62;

}  // namespace

FlaggedRegister compare_flip(FlaggedRegister s, int width, std::uint64_t threshold) {
  s.value &= mask_of(width);
  if (s.value >= threshold) s.flag = !s.flag;
  return s;
}

FlaggedRegister controlled_add(FlaggedRegister s, int width, std::uint64_t k) {
  if (s.flag) s.value = (s.value + k) & mask_of(width);
  return s;
}

FlaggedRegister controlled_sub(FlaggedRegister s, int width, std::uint64_t k) {
  if (s.flag) s.value = (s.value - k) & mask_of(width);
  return s;
}

FlaggedRegister leftmost_extract_map(FlaggedRegister s, int width, int len) {
  const std::uint64_t t = fibonacci(len + 1);
  return controlled_sub(compare_flip(s, width, t), width, t);
}

FlaggedRegister leftmost_extract_unmap(FlaggedRegister s, int width, int len) {
  const std::uint64_t t = fibonacci(len + 1);
  return compare_flip(controlled_add(s, width, t), width, t);
}

std::pair<bool, std::uint64_t> leftmost_extract(int len, std::uint64_t z) {
  if (len < 1) throw std::out_of_range("leftmost_extract: empty string");
  if (z >= fibonacci(len + 2)) throw std::out_of_range("leftmost_extract: value out of range");
  FlaggedRegister r = leftmost_extract_map({z, false}, kValueWidth, len);
  return {r.flag, r.value};
}

SplitRegisters split_shift_map(SplitRegisters r, int width, int n, int split,
                               ShiftDirection direction) {
  if (direction == ShiftDirection::Right) {
    if (split < 0 || split >= n) throw std::out_of_range("split_shift: cut already at the end");
    const std::uint64_t w = fibonacci(split + 2);
    FlaggedRegister right = leftmost_extract_map({r.right, r.scratch}, width, n - split);
    FlaggedRegister left = controlled_add({r.left, right.flag}, width, w);
    left = compare_flip(left, width, w);
    return {left.value, right.value, left.flag};
  }
  if (split <= 0 || split > n) throw std::out_of_range("split_shift: cut already at the start");
  const int k = split - 1;
  const std::uint64_t w = fibonacci(k + 2);
  FlaggedRegister left = compare_flip({r.left, r.scratch}, width, w);
  left = controlled_sub(left, width, w);
  FlaggedRegister right = leftmost_extract_unmap({r.right, left.flag}, width, n - k);
  return {left.value, right.value, right.flag};
}

SplitState split_state(const SymbolString &s, int split) {
  if (split < 0 || split > s.length) throw std::out_of_range("split position out of range");
  SplitState out{s.length, split, 0, 0};
  SymbolString left{0, split};
  for (int k = 1; k <= split; ++k) {
    // Position k of the left piece lands at bit k-1 of the reversed string.
    if (s.star_at(k)) left.bits |= std::uint64_t{1} << (k - 1);
  }
  out.left_z = zeckendorf_encode(left);
  const int rlen = s.length - split;
  out.right_z = zeckendorf_encode({s.bits & mask_of(rlen), rlen});
  return out;
}

SymbolString join(const SplitState &s) {
  SymbolString out{0, s.n};
  const int rlen = s.n - s.split;
  if (s.split > 0) {
    SymbolString left = zeckendorf_decode(s.split, s.left_z);
    for (int k = 1; k <= s.split; ++k) {
      if ((left.bits >> (k - 1)) & 1u) out.bits |= std::uint64_t{1} << (s.n - k);
    }
  } else if (s.left_z != 0) {
    throw std::out_of_range("join: nonzero left value with no left piece");
  }
  if (rlen > 0) {
    out.bits |= zeckendorf_decode(rlen, s.right_z).bits;
  } else if (s.right_z != 0) {
    throw std::out_of_range("join: nonzero right value with no right piece");
  }
  return out;
}

SplitState split_shift(const SplitState &s, ShiftDirection direction) {
  SplitRegisters r = split_shift_map({s.left_z, s.right_z, false}, kValueWidth, s.n, s.split,
                                     direction);
  if (r.scratch) throw std::invalid_argument("split_shift: not a coding state");
  const int split = direction == ShiftDirection::Right ? s.split + 1 : s.split - 1;
  return {s.n, split, r.left, r.right};
}

// ---------------------------------------------------------------------------

Gate permutation_gate(std::string label, std::vector<int> qubits, std::vector<std::uint32_t> table) {
  if (table.size() != (std::size_t{1} << qubits.size())) {
    throw std::invalid_argument("permutation table size does not match qubit count");
  }
  std::vector<bool> seen(table.size(), false);
  for (auto v : table) {
    if (v >= table.size() || seen[v]) throw std::invalid_argument("table is not a permutation");
    seen[v] = true;
  }
  Gate g;
  g.label = std::move(label);
  g.qubits = std::move(qubits);
  g.permutation = std::move(table);
  return g;
}

Gate unitary_gate(std::string label, std::vector<int> qubits, Eigen::MatrixXcd u) {
  const auto dim = Eigen::Index{1} << qubits.size();
  if (u.rows() != dim || u.cols() != dim) throw std::invalid_argument("unitary size mismatch");
  if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(dim, dim)).norm() > 1e-12) {
    throw std::invalid_argument("gate matrix is not unitary");
  }
  Gate g;
  g.label = std::move(label);
  g.qubits = std::move(qubits);
  g.unitary = std::move(u);
  return g;
}

Gate adjoint(const Gate &g) {
  Gate out = g;
  out.label = g.label + "^-1";
  if (g.is_permutation()) {
    for (std::size_t k = 0; k < g.permutation.size(); ++k) {
      out.permutation[g.permutation[k]] = static_cast<std::uint32_t>(k);
    }
  } else {
    out.unitary = g.unitary.adjoint();
  }
  return out;
}

void Circuit::append(Gate g) {
  for (int q : g.qubits) {
    if (q < 0 || q >= qubits_) throw std::out_of_range("gate qubit out of range");
  }
  std::vector<LocalColumn> cols;
  if (!g.is_permutation()) {
    cols.resize(static_cast<std::size_t>(g.unitary.cols()));
    for (Eigen::Index c = 0; c < g.unitary.cols(); ++c) {
      for (Eigen::Index r = 0; r < g.unitary.rows(); ++r) {
        if (g.unitary(r, c) != Amplitude{}) {
          cols[c].emplace_back(static_cast<std::uint32_t>(r), g.unitary(r, c));
        }
      }
    }
  }
  gates_.push_back(std::move(g));
  sparse_.push_back(std::move(cols));
}

void Circuit::append(const Circuit &other) {
  if (other.qubits_ > qubits_) throw std::invalid_argument("appended circuit is wider");
  for (const auto &g : other.gates_) append(g);
}

namespace {

std::uint32_t gather(std::uint64_t idx, const std::vector<int> &qubits) {
  std::uint32_t local = 0;
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    local |= static_cast<std::uint32_t>((idx >> qubits[k]) & 1u) << k;
  }
  return local;
}

std::uint64_t scatter(std::uint64_t idx, const std::vector<int> &qubits, std::uint32_t local) {
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    const std::uint64_t bit = std::uint64_t{1} << qubits[k];
    idx = ((local >> k) & 1u) ? (idx | bit) : (idx & ~bit);
  }
  return idx;
}

void sort_and_merge(SparseColumn &v) {
  std::sort(v.begin(), v.end(),
            [](const auto &x, const auto &y) { return x.first < y.first; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < v.size(); ++r) {
    if (w > 0 && v[w - 1].first == v[r].first) {
      v[w - 1].second += v[r].second;
    } else {
      v[w++] = v[r];
    }
  }
  v.resize(w);
}

}  // namespace

SparseColumn Circuit::apply(const SparseColumn &state) const {
  SparseColumn cur = state;
  SparseColumn next;
  for (std::size_t gi = 0; gi < gates_.size(); ++gi) {
    const Gate &g = gates_[gi];
    next.clear();
    if (g.is_permutation()) {
      for (const auto &[idx, amp] : cur) {
        next.emplace_back(scatter(idx, g.qubits, g.permutation[gather(idx, g.qubits)]), amp);
      }
    } else {
      const auto &cols = sparse_[gi];
      for (const auto &[idx, amp] : cur) {
        for (const auto &[row, coeff] : cols[gather(idx, g.qubits)]) {
          next.emplace_back(scatter(idx, g.qubits, row), coeff * amp);
        }
      }
    }
    sort_and_merge(next);
    cur.swap(next);
  }
  return cur;
}

UnitaryOracle Circuit::oracle() const {
  auto self = std::make_shared<const Circuit>(*this);
  return UnitaryOracle(qubits_, [self](std::uint64_t x) {
    return self->apply(SparseColumn{{x, Amplitude{1.0}}});
  });
}

// ---------------------------------------------------------------------------

int data_qubits_for(int len) {
  const std::uint64_t count = fibonacci(len + 2);
  int b = 0;
  while ((std::uint64_t{1} << b) < count) ++b;
  return b;
}

RegisterLayout register_layout(int n) {
  RegisterLayout l;
  l.symbols = n + 1;
  l.data = data_qubits_for(l.symbols);
  l.ancilla = l.data;
  l.tag = l.ancilla + 3;
  l.weight = l.tag + 1;
  l.extra = l.weight + 1;
  l.total = l.extra + 3;
  return l;
}

namespace {

// Extends an injective map on `domain` to a permutation of [0, size):
// leftover inputs are sent in increasing order to leftover outputs.
std::vector<std::uint32_t> complete_permutation(
    std::size_t size, const std::vector<std::pair<std::uint32_t, std::uint32_t>> &pairs) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> table(size, kUnset);
  std::vector<bool> hit(size, false);
  for (const auto &[in, out] : pairs) {
    if (table[in] != kUnset || hit[out]) throw std::logic_error("extraction map is not injective");
    table[in] = out;
    hit[out] = true;
  }
  std::size_t free_out = 0;
  for (std::size_t in = 0; in < size; ++in) {
    if (table[in] != kUnset) continue;
    while (hit[free_out]) ++free_out;
    table[in] = static_cast<std::uint32_t>(free_out++);
  }
  return table;
}

SplitState shift_to(SplitState s, int split) {
  while (s.split < split) s = split_shift(s, ShiftDirection::Right);
  return s;
}

}  // namespace

std::vector<std::uint32_t> extraction_table(int n, int i) {
  if (i < 1 || i > n - 1) throw std::out_of_range("crossing index out of range");
  const int len = n + 1;
  const int b = data_qubits_for(len);
  const int rest = len - i - 2;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint64_t z = 0; z < fibonacci(len + 2); ++z) {
    SplitState s = shift_to({len, 0, 0, z}, i - 1);
    std::uint64_t r = s.right_z;
    std::uint32_t triple = 0;
    for (int k = 0; k < 3; ++k) {
      auto [star, rem] = leftmost_extract(len - (i - 1) - k, r);
      triple = (triple << 1) | (star ? 1u : 0u);
      r = rem;
    }
    const std::uint64_t packed = r + fibonacci(rest + 2) * s.left_z;
    pairs.emplace_back(static_cast<std::uint32_t>(z),
                       static_cast<std::uint32_t>(packed | (std::uint64_t{triple} << b)));
  }
  return complete_permutation(std::size_t{1} << (b + 3), pairs);
}

std::vector<std::uint32_t> last_symbol_table(int n) {
  const int len = n + 1;
  const int b = data_qubits_for(len);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint64_t z = 0; z < fibonacci(len + 2); ++z) {
    SplitState s = shift_to({len, 0, 0, z}, len - 1);
    pairs.emplace_back(static_cast<std::uint32_t>(z),
                       static_cast<std::uint32_t>(s.left_z | (s.right_z << b)));
  }
  return complete_permutation(std::size_t{1} << (b + 3), pairs);
}

Eigen::Matrix<std::complex<double>, 8, 8> local_crossing_unitary() {
  const auto &k = FibConstants<double>::get();
  Eigen::Matrix<std::complex<double>, 8, 8> u = Eigen::Matrix<std::complex<double>, 8, 8>::Identity();
  // Triple index: bit 2 = symbol i, bit 1 = symbol i+1, bit 0 = symbol i+2.
  constexpr int ppp = 0b000, ppS = 0b001, pSp = 0b010, Spp = 0b100, SpS = 0b101;
  u(Spp, Spp) = k.a;
  u(ppS, ppS) = k.a;
  u(SpS, SpS) = k.b;
  u(pSp, pSp) = k.c;
  u(ppp, pSp) = k.d;
  u(pSp, ppp) = k.d;
  u(ppp, ppp) = k.e;
  return u;
}

Circuit crossing_circuit_gates(int n, int i, bool inverse_crossing) {
  const RegisterLayout l = register_layout(n);
  std::vector<int> reg(static_cast<std::size_t>(l.data + 3));
  for (int q = 0; q < l.data + 3; ++q) reg[q] = q;
  std::vector<int> anc{l.ancilla, l.ancilla + 1, l.ancilla + 2};
  Gate extract = permutation_gate("extract_" + std::to_string(i), reg, extraction_table(n, i));
  Eigen::MatrixXcd loc = local_crossing_unitary();
  if (inverse_crossing) loc = loc.adjoint().eval();
  Circuit c(l.data + 3);
  c.append(extract);
  c.append(unitary_gate(inverse_crossing ? "rule^-1" : "rule", anc, loc));
  c.append(adjoint(extract));
  return c;
}

UnitaryOracle crossing_circuit(int n, int i) { return crossing_circuit_gates(n, i).oracle(); }

CompiledCircuit compile(const BraidWord &b) {
  validate(b);
  const int n = b.strands;
  if (n > kCompileMaxStrands) {
    throw SizeCapError("compile: at most " + std::to_string(kCompileMaxStrands) + " strands");
  }
  const RegisterLayout l = register_layout(n);
  auto circuit = std::make_shared<Circuit>(l.total);

  // Wrap CNOTs: symbol ancilla k XORed into extra k.
  {
    std::vector<int> qs{l.ancilla, l.ancilla + 1, l.ancilla + 2, l.extra, l.extra + 1, l.extra + 2};
    std::vector<std::uint32_t> t(64);
    for (std::uint32_t x = 0; x < 64; ++x) t[x] = x ^ ((x & 7u) << 3);
    circuit->append(permutation_gate("wrap", qs, t));
  }
  // Tag every value outside the window of strings starting with *.
  {
    std::vector<int> qs;
    for (int q = 0; q < l.data; ++q) qs.push_back(q);
    qs.push_back(l.tag);
    const std::uint64_t lo = fibonacci(l.symbols + 1);
    const std::uint64_t hi = fibonacci(l.symbols + 2);
    std::vector<std::uint32_t> t(std::size_t{1} << (l.data + 1));
    for (std::uint32_t x = 0; x < t.size(); ++x) {
      const std::uint32_t z = x & ((1u << l.data) - 1);
      const bool outside = z < lo || z >= hi;
      t[x] = outside ? x ^ (1u << l.data) : x;
    }
    circuit->append(permutation_gate("tag", qs, t));
  }
  // rho(g_1) ... rho(g_m): the last letter acts first.
  for (auto it = b.word.rbegin(); it != b.word.rend(); ++it) {
    circuit->append(crossing_circuit_gates(n, std::abs(*it), *it < 0));
  }
  // Weight 1/phi on strings ending in *, read from the last symbol.
  {
    std::vector<int> reg;
    for (int q = 0; q < l.data + 3; ++q) reg.push_back(q);
    Gate last = permutation_gate("last_symbol", reg, last_symbol_table(n));
    const auto &k = FibConstants<double>::get();
    const double cos_half = 1.0 / k.phi;
    const double sin_half = std::sqrt(1.0 - cos_half * cos_half);
    // Local index: bit 0 = last symbol, bit 1 = weight qubit.
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(4, 4);
    r(0b01, 0b01) = cos_half;
    r(0b11, 0b01) = sin_half;
    r(0b01, 0b11) = -sin_half;
    r(0b11, 0b11) = cos_half;
    circuit->append(last);
    circuit->append(unitary_gate("weight", {l.ancilla, l.weight}, r));
    circuit->append(adjoint(last));
  }

  const auto &k = FibConstants<double>::get();
  const double norm = k.phi * static_cast<double>(fibonacci(n)) + static_cast<double>(fibonacci(n - 1));
  CompiledCircuit out{b, l, l.data, l.total - l.data, circuit, circuit->oracle(),
                      std::complex<double>(k.phi / (32.0 * norm), 0.0)};
  return out;
}

JonesDqc1Result estimate_jones_dqc1(const BraidWord &b, double epsilon, double confidence,
                                    std::uint64_t seed, std::optional<std::int64_t> samples) {
  CompiledCircuit cc = compile(b);
  JonesDqc1Result r;
  r.kappa = cc.normalization;
  r.estimate = estimate_normalized_trace(cc.op, epsilon, confidence, seed, samples);
  const double dim = std::ldexp(1.0, cc.layout.total);
  const auto &k = FibConstants<double>::get();
  r.result.braid = b;
  r.result.writhe = writhe(b);
  r.result.weighted_trace = cc.normalization * dim * r.estimate.estimate;
  r.result.value = jones_prefactor<double>(b.strands, r.result.writhe) * r.result.weighted_trace;
  r.radius = std::abs(cc.normalization) * dim * std::pow(k.D, b.strands - 1) * r.estimate.epsilon;
  return r;
}

}  // namespace fibjones
