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

#include "fibjones/dqc1.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

namespace fibjones {

UnitaryOracle::UnitaryOracle(int qubits, ColumnFn column, DiagonalFn diagonal)
    : qubits_(qubits), column_(std::move(column)), diagonal_(std::move(diagonal)) {
  if (qubits < 0 || qubits > 62) throw std::invalid_argument("qubit count out of range");
  if (!column_) throw std::invalid_argument("unitary oracle needs a column function");
}

SparseColumn UnitaryOracle::column(std::uint64_t x) const {
  if (x >= dimension()) throw std::out_of_range("basis index out of range");
  return column_(x);
}

Amplitude UnitaryOracle::diagonal(std::uint64_t x) const {
  if (x >= dimension()) throw std::out_of_range("basis index out of range");
  if (diagonal_) return diagonal_(x);
  SparseColumn c = column_(x);
  auto it = std::lower_bound(c.begin(), c.end(), x,
                             [](const auto &e, std::uint64_t v) { return e.first < v; });
  return (it != c.end() && it->first == x) ? it->second : Amplitude{};
}

Eigen::MatrixXcd UnitaryOracle::dense() const {
  if (qubits_ > kMaxDenseQubits) {
    throw SizeCapError("dense materialisation limited to " + std::to_string(kMaxDenseQubits) +
                       " qubits");
  }
  const auto dim = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    for (const auto &[row, amp] : column_(static_cast<std::uint64_t>(x))) {
      m(static_cast<Eigen::Index>(row), x) += amp;
    }
  }
  return m;
}

UnitaryOracle UnitaryOracle::from_matrix(const Eigen::MatrixXcd &m) {
  if (m.rows() != m.cols() || m.rows() == 0 || (m.rows() & (m.rows() - 1)) != 0) {
    throw std::invalid_argument("matrix must be square with power-of-two dimension");
  }
  int q = 0;
  while ((Eigen::Index{1} << q) < m.rows()) ++q;
  auto shared = std::make_shared<const Eigen::MatrixXcd>(m);
  return UnitaryOracle(
      q,
      [shared](std::uint64_t x) {
        SparseColumn c;
        const auto col = static_cast<Eigen::Index>(x);
        for (Eigen::Index r = 0; r < shared->rows(); ++r) {
          if ((*shared)(r, col) != Amplitude{}) {
            c.emplace_back(static_cast<std::uint64_t>(r), (*shared)(r, col));
          }
        }
        return c;
      },
      [shared](std::uint64_t x) {
        const auto k = static_cast<Eigen::Index>(x);
        return (*shared)(k, k);
      });
}

UnitaryOracle UnitaryOracle::identity(int qubits) {
  return UnitaryOracle(
      qubits, [](std::uint64_t x) { return SparseColumn{{x, Amplitude{1.0}}}; },
      [](std::uint64_t) { return Amplitude{1.0}; });
}

UnitaryOracle bit_flip(int qubits, int target) {
  if (target < 0 || target >= qubits) throw std::out_of_range("target qubit out of range");
  const std::uint64_t mask = std::uint64_t{1} << target;
  return UnitaryOracle(
      qubits, [mask](std::uint64_t x) { return SparseColumn{{x ^ mask, Amplitude{1.0}}}; },
      [](std::uint64_t) { return Amplitude{}; });
}

UnitaryOracle global_phase(int qubits, double theta) {
  const Amplitude p = std::polar(1.0, theta);
  return UnitaryOracle(
      qubits, [p](std::uint64_t x) { return SparseColumn{{x, p}}; },
      [p](std::uint64_t) { return p; });
}

Amplitude exact_trace(const UnitaryOracle &u) {
  Amplitude t{};
  for (std::uint64_t x = 0; x < u.dimension(); ++x) t += u.diagonal(x);
  return t;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

Amplitude sparse_inner(const SparseColumn &a, const SparseColumn &b) {
  Amplitude s{};
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      s += std::conj(i->second) * j->second;
      ++i;
      ++j;
    }
  }
  return s;
}

std::uint64_t uniform_index(std::mt19937_64 &rng, int qubits) {
  return qubits == 0 ? 0 : rng() >> (64 - qubits);
}

double uniform_unit(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void check_epsilon_confidence(double epsilon, double confidence) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must be in (0, 1]");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("confidence must be in (0, 1)");
  }
}

constexpr std::int64_t kBatch = 4096;

}  // namespace

double column_orthonormality_defect(const UnitaryOracle &u, int pairs, std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed));
  double worst = 0.0;
  for (int k = 0; k < pairs; ++k) {
    std::uint64_t x = uniform_index(rng, u.qubits());
    std::uint64_t y = uniform_index(rng, u.qubits());
    Amplitude ip = sparse_inner(u.column(x), u.column(y));
    worst = std::max(worst, std::abs(ip - Amplitude{x == y ? 1.0 : 0.0}));
  }
  return worst;
}

double hadamard_test_probability(const UnitaryOracle &u, std::uint64_t x, TracePart part) {
  Amplitude d = u.diagonal(x);
  double overlap = part == TracePart::Real ? d.real() : d.imag();
  return std::clamp((1.0 + overlap) / 2.0, 0.0, 1.0);
}

std::int64_t samples_required(double epsilon, double confidence) {
  check_epsilon_confidence(epsilon, confidence);
  const double e = epsilon / 2.0;
  const double n = std::log(2.0 / (1.0 - confidence)) / (2.0 * e * e);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(n)));
}

std::int64_t samples_per_part(double epsilon, double confidence) {
  check_epsilon_confidence(epsilon, confidence);
  return samples_required(epsilon / std::sqrt(2.0), (1.0 + confidence) / 2.0);
}

double epsilon_for_samples(std::int64_t samples, double confidence) {
  if (samples < 1) throw std::invalid_argument("sample count must be positive");
  check_epsilon_confidence(0.5, confidence);
  const double c = (1.0 + confidence) / 2.0;
  const double per_part = 2.0 * std::sqrt(std::log(2.0 / (1.0 - c)) / (2.0 * static_cast<double>(samples)));
  return std::sqrt(2.0) * per_part;
}

Dqc1Estimate estimate_normalized_trace(const UnitaryOracle &u, double epsilon, double confidence,
                                       std::uint64_t seed, std::optional<std::int64_t> samples) {
  Dqc1Estimate out;
  out.confidence = confidence;
  out.seed = seed;
  if (samples) {
    out.samples = *samples;
    out.epsilon = epsilon_for_samples(*samples, confidence);
  } else {
    out.samples = samples_per_part(epsilon, confidence);
    out.epsilon = epsilon;
  }
  const std::int64_t batches = (out.samples + kBatch - 1) / kBatch;
  // counts[part * batches + k] = number of zero outcomes in batch k.
  std::vector<std::int64_t> counts(static_cast<std::size_t>(2 * batches), 0);
  auto run_batch = [&](std::int64_t job) {
    const int part = static_cast<int>(job / batches);
    const std::int64_t k = job % batches;
    std::mt19937_64 rng(splitmix64(splitmix64(splitmix64(seed) + static_cast<std::uint64_t>(part)) +
                                   static_cast<std::uint64_t>(k)));
    const std::int64_t shots = std::min(kBatch, out.samples - k * kBatch);
    const TracePart tp = part == 0 ? TracePart::Real : TracePart::Imag;
    std::int64_t zeros = 0;
    for (std::int64_t s = 0; s < shots; ++s) {
      std::uint64_t x = uniform_index(rng, u.qubits());
      double p0 = hadamard_test_probability(u, x, tp);
      if (uniform_unit(rng) < p0) ++zeros;
    }
    counts[static_cast<std::size_t>(job)] = zeros;
  };
  const std::int64_t jobs = 2 * batches;
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = static_cast<std::int64_t>(std::min<std::int64_t>(hw, jobs));
  if (workers <= 1) {
    for (std::int64_t j = 0; j < jobs; ++j) run_batch(j);
  } else {
    std::vector<std::thread> pool;
    for (std::int64_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::int64_t j = w; j < jobs; j += workers) run_batch(j);
      });
    }
    for (auto &t : pool) t.join();
  }
  std::int64_t zeros[2] = {0, 0};
  for (std::int64_t j = 0; j < jobs; ++j) zeros[j / batches] += counts[static_cast<std::size_t>(j)];
  const double n = static_cast<double>(out.samples);
  out.estimate = Amplitude(2.0 * static_cast<double>(zeros[0]) / n - 1.0,
                           2.0 * static_cast<double>(zeros[1]) / n - 1.0);
  return out;
}

namespace {

void check_qubit_set(const std::vector<int> &set, int qubits) {
  std::set<int> seen;
  for (int q : set) {
    if (q < 0 || q >= qubits) throw std::out_of_range("qubit index out of range");
    if (!seen.insert(q).second) throw std::invalid_argument("qubit index listed twice");
  }
}

}  // namespace

UnitaryOracle clean_ancilla_wrap(const UnitaryOracle &u, const std::vector<int> &ancillas) {
  const int b = u.qubits();
  check_qubit_set(ancillas, b);
  const int m = static_cast<int>(ancillas.size());
  const std::uint64_t low_mask = (std::uint64_t{1} << b) - 1;
  auto gather = [ancillas](std::uint64_t low) {
    std::uint64_t g = 0;
    for (std::size_t k = 0; k < ancillas.size(); ++k) g |= ((low >> ancillas[k]) & 1u) << k;
    return g;
  };
  return UnitaryOracle(
      b + m,
      [u, b, low_mask, gather](std::uint64_t x) {
        const std::uint64_t low = x & low_mask;
        const std::uint64_t extras = (x >> b) ^ gather(low);
        SparseColumn c = u.column(low);
        for (auto &e : c) e.first |= extras << b;
        return c;
      },
      [u, low_mask, gather](std::uint64_t x) {
        const std::uint64_t low = x & low_mask;
        return gather(low) != 0 ? Amplitude{} : u.diagonal(low);
      });
}

UnitaryOracle projector_sandwich(const UnitaryOracle &u, const std::vector<int> &projected) {
  const int b = u.qubits();
  check_qubit_set(projected, b);
  const int k = static_cast<int>(projected.size());
  const int q = b + 2 * k;
  if (q > UnitaryOracle::kMaxDenseQubits) throw SizeCapError("projector sandwich too large");
  const Eigen::MatrixXcd inner = u.dense();
  const auto dim = Eigen::Index{1} << q;
  const auto low_dim = Eigen::Index{1} << b;
  // U tensor identity on the extras.
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index e = 0; e < (Eigen::Index{1} << (2 * k)); ++e) {
    big.block(e * low_dim, e * low_dim, low_dim, low_dim) = inner;
  }
  auto flips = [&](int which) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
      auto y = static_cast<std::uint64_t>(x);
      for (int j = 0; j < k; ++j) {
        if ((y >> projected[j]) & 1u) y ^= std::uint64_t{1} << (b + 2 * j + which);
      }
      p(static_cast<Eigen::Index>(y), x) = 1.0;
    }
    return p;
  };
  Eigen::MatrixXcd result = flips(1) * big * flips(0) * big.adjoint();
  return UnitaryOracle::from_matrix(result);
}

}  // namespace fibjones
