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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fibjones/compiler.hpp"
#include "fibjones/reduction.hpp"

namespace fibjones {
namespace {

using cd = std::complex<double>;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

// Projector onto |0> of one qubit, identity elsewhere (qubit k = bit k).
Eigen::MatrixXcd projector(int qubits, const std::vector<int> &zeroed) {
  const int dim = 1 << qubits;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
  for (int x = 0; x < dim; ++x) {
    bool keep = true;
    for (int q : zeroed) keep = keep && !((x >> q) & 1);
    if (keep) p(x, x) = 1.0;
  }
  return p;
}

TEST(HadamardTest, Examples) {
  const auto id = UnitaryOracle::identity(3);
  for (std::uint64_t x = 0; x < 8; ++x) EXPECT_DOUBLE_EQ(hadamard_test_probability(id, x, TracePart::Real), 1.0);
  const auto flip = bit_flip(3, 0);
  for (std::uint64_t x = 0; x < 8; ++x) EXPECT_DOUBLE_EQ(hadamard_test_probability(flip, x, TracePart::Real), 0.5);
  const double theta = 0.7;
  const auto ph = global_phase(2, theta);
  EXPECT_NEAR(hadamard_test_probability(ph, 1, TracePart::Real), (1 + std::cos(theta)) / 2, 1e-15);
  EXPECT_NEAR(hadamard_test_probability(ph, 1, TracePart::Imag), (1 + std::sin(theta)) / 2, 1e-15);
  EXPECT_THROW(hadamard_test_probability(ph, 4, TracePart::Real), std::out_of_range);
}

// Independent simulation of the interference circuit on control + register.
TEST(HadamardTest, MatchesCircuitSimulation) {
  const Eigen::MatrixXcd u = random_unitary(4, 21);
  const auto oracle = UnitaryOracle::from_matrix(u);
  const cd i(0, 1);
  for (TracePart part : {TracePart::Real, TracePart::Imag}) {
    for (int x = 0; x < 4; ++x) {
      // Control qubit prepared in (|0> + |1>)/sqrt2 or (|0> - i|1>)/sqrt2.
      const cd c1 = part == TracePart::Real ? cd(1) : -i;
      Eigen::VectorXcd reg = Eigen::VectorXcd::Zero(4);
      reg(x) = 1.0;
      const Eigen::VectorXcd branch0 = reg / std::sqrt(2.0);
      const Eigen::VectorXcd branch1 = c1 * (u * reg) / std::sqrt(2.0);
      // Hadamard on the control, then project onto |0>.
      const Eigen::VectorXcd zero = (branch0 + branch1) / std::sqrt(2.0);
      EXPECT_NEAR(zero.squaredNorm(), hadamard_test_probability(oracle, x, part), 1e-14);
    }
  }
}

TEST(SamplesRequired, Examples) {
  EXPECT_EQ(samples_required(0.1, 0.95), 738);
  EXPECT_EQ(samples_required(0.1, 0.95), static_cast<std::int64_t>(std::ceil(std::log(40.0) / (2 * 0.0025))));
  EXPECT_GE(samples_required(1.0, 0.5), 1);
  for (double eps : {0.2, 0.1, 0.05}) {
    const double ratio = double(samples_required(eps / 2, 0.9)) / double(samples_required(eps, 0.9));
    EXPECT_NEAR(ratio, 4.0, 0.01);
  }
  EXPECT_THROW(samples_required(0.0, 0.9), std::invalid_argument);
  EXPECT_THROW(samples_required(0.1, 1.0), std::invalid_argument);
}

TEST(SamplesPerPart, CoversTheComplexError) {
  const std::int64_t n = samples_per_part(0.05, 0.95);
  EXPECT_EQ(n, samples_required(0.05 / std::sqrt(2.0), 0.975));
  EXPECT_LE(epsilon_for_samples(n, 0.95), 0.05 + 1e-12);
}

TEST(EstimateNormalizedTrace, TrivialOperators) {
  const auto id = estimate_normalized_trace(UnitaryOracle::identity(3), 0.05, 0.95, 1);
  EXPECT_LE(std::abs(id.estimate - 1.0), 0.05);
  EXPECT_GE(id.samples, samples_required(0.05, 0.95));
  const auto flip = estimate_normalized_trace(bit_flip(3, 0), 0.05, 0.95, 2);
  EXPECT_LE(std::abs(flip.estimate), 0.05);
}

TEST(EstimateNormalizedTrace, DeterministicGivenSeed) {
  const auto u = UnitaryOracle::from_matrix(random_unitary(8, 3));
  const auto a = estimate_normalized_trace(u, 0.05, 0.95, 9);
  const auto b = estimate_normalized_trace(u, 0.05, 0.95, 9);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_NE(a.estimate, estimate_normalized_trace(u, 0.05, 0.95, 10).estimate);
}

TEST(EstimateNormalizedTrace, SampleOverride) {
  const auto u = UnitaryOracle::identity(2);
  const auto e = estimate_normalized_trace(u, 0.05, 0.95, 0, 100);
  EXPECT_EQ(e.samples, 100);
  EXPECT_NEAR(e.epsilon, epsilon_for_samples(100, 0.95), 1e-15);
}

TEST(EstimateNormalizedTrace, UnbiasedAcrossSeeds) {
  const Eigen::MatrixXcd m = random_unitary(8, 4);
  const auto u = UnitaryOracle::from_matrix(m);
  const cd truth = m.trace() / 8.0;
  const int runs = 50;
  const std::int64_t shots = 2000;
  cd mean = 0;
  for (int s = 0; s < runs; ++s) mean += estimate_normalized_trace(u, 0.1, 0.9, 100 + s, shots).estimate;
  mean /= double(runs);
  // Each part is 2 p - 1 with variance at most 1 per shot.
  const double sigma = 1.0 / std::sqrt(double(runs * shots));
  EXPECT_LE(std::abs(mean.real() - truth.real()), 3 * sigma);
  EXPECT_LE(std::abs(mean.imag() - truth.imag()), 3 * sigma);
}

TEST(EstimateNormalizedTrace, HoeffdingFailureRate) {
  const Eigen::MatrixXcd m = random_unitary(4, 5);
  const auto u = UnitaryOracle::from_matrix(m);
  const cd truth = m.trace() / 4.0;
  int failures = 0;
  for (int s = 0; s < 200; ++s) {
    const auto e = estimate_normalized_trace(u, 0.1, 0.9, 1000 + s);
    if (std::abs(e.estimate - truth) > e.epsilon) ++failures;
  }
  // Mean at most 20; allow three binomial standard deviations.
  EXPECT_LE(failures, 20 + 13);
}

TEST(EstimateNormalizedTrace, CompiledCircuit) {
  const auto cc = compile({3, {1, 2}});
  const cd truth = exact_trace(cc.op) / std::ldexp(1.0, cc.op.qubits());
  const auto e = estimate_normalized_trace(cc.op, 0.05, 0.95, 3);
  EXPECT_LE(std::abs(e.estimate - truth), 0.05);
}

TEST(UnitaryOracle, ColumnsAreOrthonormal) {
  const auto u = UnitaryOracle::from_matrix(random_unitary(16, 6));
  EXPECT_LE(column_orthonormality_defect(u, 50, 1), 1e-10);
  EXPECT_THROW(u.column(16), std::out_of_range);
}

TEST(CleanAncillaWrap, ProjectedTraceIdentity) {
  // Tr[wrap(U)] = 2^m Tr[P U] for random U on 2-3 qubits.
  for (int q = 2; q <= 3; ++q) {
    const Eigen::MatrixXcd u = random_unitary(1 << q, 30 + q);
    for (const std::vector<int> &anc : {std::vector<int>{0}, std::vector<int>{q - 1}, std::vector<int>{0, 1}}) {
      const auto w = clean_ancilla_wrap(UnitaryOracle::from_matrix(u), anc);
      EXPECT_EQ(w.qubits(), q + static_cast<int>(anc.size()));
      const cd lhs = w.dense().trace();
      const cd rhs = std::ldexp(1.0, static_cast<int>(anc.size())) * (projector(q, anc) * u).trace();
      EXPECT_LE(std::abs(lhs - rhs), 1e-10);
      EXPECT_LE(std::abs(exact_trace(w) - lhs), 1e-10);
    }
  }
}

TEST(CleanAncillaWrap, ComposesOneAncillaAtATime) {
  // V on the data qubit, identity on three ancillas; every wrap doubles
  // the data trace carried by the clean ancillas.
  const Eigen::MatrixXcd v = random_unitary(2, 8);
  const int ancillas = 3;
  Eigen::MatrixXcd u = v;
  for (int k = 0; k < ancillas; ++k) u = kron(Eigen::MatrixXcd::Identity(2, 2), u);
  UnitaryOracle op = UnitaryOracle::from_matrix(u);
  for (int k = 1; k <= ancillas; ++k) {
    op = clean_ancilla_wrap(op, {k});
    const cd expected = std::ldexp(1.0, k) * std::ldexp(1.0, ancillas - k) * v.trace();
    EXPECT_LE(std::abs(op.dense().trace() - expected), 1e-10);
  }
  EXPECT_LE(std::abs(op.dense().trace() - 8.0 * v.trace()), 1e-10);
}

TEST(ProjectorSandwich, Examples) {
  const auto id = projector_sandwich(UnitaryOracle::identity(2), {0});
  EXPECT_EQ(id.qubits(), 4);
  EXPECT_LE(std::abs(id.dense().trace() - 8.0), 1e-12);
  const auto flip = projector_sandwich(bit_flip(2, 0), {0});
  EXPECT_LE(std::abs(flip.dense().trace()), 1e-12);
  EXPECT_THROW(projector_sandwich(UnitaryOracle::identity(2), {0, 0}), std::invalid_argument);
}

TEST(ProjectorSandwich, QuarterIdentity) {
  // (1/4) Tr[U'] = Tr[P U P U^dagger] for one projected qubit.
  for (int q = 2; q <= 3; ++q) {
    for (int seed = 0; seed < 5; ++seed) {
      const Eigen::MatrixXcd u = random_unitary(1 << q, 40 + seed);
      const Eigen::MatrixXcd p = projector(q, {0});
      const cd lhs = projector_sandwich(UnitaryOracle::from_matrix(u), {0}).dense().trace() / 4.0;
      EXPECT_LE(std::abs(lhs - (p * u * p * u.adjoint()).trace()), 1e-10);
      const Eigen::MatrixXcd p2 = projector(q, {0, 1});
      const cd lhs2 = projector_sandwich(UnitaryOracle::from_matrix(u), {0, 1}).dense().trace() / 16.0;
      EXPECT_LE(std::abs(lhs2 - (p2 * u * p2 * u.adjoint()).trace()), 1e-10);
    }
  }
}

}  // namespace
}  // namespace fibjones
