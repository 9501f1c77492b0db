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

#ifndef FIBJONES_REDUCTION_HPP
#define FIBJONES_REDUCTION_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fibjones/fibrep.hpp"

namespace fibjones {

// ---------------------------------------------------------------------------
// Superblock code: blocks of three symbols, ppp -> 0 and p*p -> 1, with a
// superblock decoding to its first codeword block.

enum class SuperblockValue { Zero, One, Noncoding };

/// Symbols [start, start + length) of `s`, 1-based start.
SymbolString substring(const SymbolString &s, int start, int length);

SuperblockValue superblock_decode(const SymbolString &segment, int blocks_per_superblock);

struct PreimageCensus {
  int blocks_per_superblock = 0;
  int superblocks = 0;
  /// Keyed by the decoded bitstring, most significant superblock first.
  std::map<std::string, std::uint64_t> preimages;
  std::uint64_t noncoding = 0;
  std::uint64_t total = 0;
};

inline constexpr int kCensusMaxSymbols = 21;

PreimageCensus preimage_census(int blocks_per_superblock, int superblocks);

/// Swaps the smallest segments around the centres of two neighbouring
/// superblocks whose borders are p in both. Identity when no such segment
/// fits inside the superblocks.
SymbolString inchworm_swap(const SymbolString &s, int current, int target,
                           int blocks_per_superblock);

/// 1-based position of the centre of superblock `index` (0-based).
int superblock_center(int index, int blocks_per_superblock);

// ---------------------------------------------------------------------------
// SU(2) -> SO(3) diagnostics.

struct RotationDescriptor {
  Eigen::Vector3d axis;
  double angle = 0.0;  // [0, 2 pi)
};

/// Reads u = cos(t/2) + i sin(t/2) (x X + y Y + z Z).
RotationDescriptor su2_to_so3(const Eigen::Matrix2cd &u);

/// Same rotation described with the axis on the side of `reference`.
RotationDescriptor oriented(const RotationDescriptor &r, const Eigen::Vector3d &reference);

/// Conjugation action of a U(2) matrix on the Pauli vector; blind to
/// global phase.
Eigen::Matrix3d so3_image(const Eigen::Matrix2cd &u);

/// diag(b, a) and [[c, d], [d, e]] divided by a square root of their
/// determinants.
Eigen::Matrix2cd normalized_generator_a();
Eigen::Matrix2cd normalized_generator_b();

struct DensityReport {
  RotationDescriptor generator_a;
  RotationDescriptor generator_b;
  double axis_separation = 0.0;
  RotationDescriptor product;  // A'^5 B'^5, axis oriented along n_A x n_B
  double two_theta12 = 0.0;
  double conjugated_axis_separation = 0.0;  // 2 (2 theta12 - pi)
  double margin_k5 = 0.0;   // min |2 theta12 - 2 pi j / k|, k <= 5
  double margin_k30 = 0.0;  // same for k <= 30
};

DensityReport density_report();

/// min over 1 <= k <= max_k and integer j of |angle - 2 pi j / k|.
double root_of_unity_margin(double angle, int max_k);

// ---------------------------------------------------------------------------
// Unitary decompositions.

template <typename Scalar>
struct TwoLevelFactor {
  int i = 0;
  int j = 0;
  Eigen::Matrix<Scalar, 2, 2> block;  // acts on rows/cols (i, j)
};

/// The m x m matrix of a two-level factor.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> embed(const TwoLevelFactor<Scalar> &f,
                                                            Eigen::Index m) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat out = Mat::Identity(m, m);
  out(f.i, f.i) = f.block(0, 0);
  out(f.i, f.j) = f.block(0, 1);
  out(f.j, f.i) = f.block(1, 0);
  out(f.j, f.j) = f.block(1, 1);
  return out;
}

template <typename Derived>
void require_unitary(const Eigen::MatrixBase<Derived> &u, double tol, const char *what) {
  using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (u.rows() != u.cols()) throw std::invalid_argument(std::string(what) + ": matrix not square");
  const Mat defect = u.adjoint() * u - Mat::Identity(u.rows(), u.cols());
  if (defect.norm() > tol) throw std::invalid_argument(std::string(what) + ": matrix not unitary");
}

namespace detail {

// Left-multiplies rows (i, j) of v by the elimination block that zeroes
// v(j, k); returns false when there is nothing to eliminate.
template <typename Scalar, typename Mat>
bool eliminate(Mat &v, Eigen::Index i, Eigen::Index j, Eigen::Index k,
               Eigen::Matrix<Scalar, 2, 2> &block, double tiny) {
  using std::abs;
  using std::conj;
  using std::sqrt;
  const Scalar a = v(i, k);
  const Scalar b = v(j, k);
  if (abs(b) <= tiny) return false;
  const auto norm = sqrt(std::norm(a) + std::norm(b));
  block << conj(a), conj(b), b, -a;
  block /= norm;
  Eigen::Matrix<Scalar, 2, Eigen::Dynamic> rows(2, v.cols());
  rows.row(0) = v.row(i);
  rows.row(1) = v.row(j);
  rows = (block * rows).eval();
  v.row(i) = rows.row(0);
  v.row(j) = rows.row(1);
  v(j, k) = Scalar(0);
  return true;
}

}  // namespace detail

/// Factors G_1 ... G_N, each on two basis states, with G_1 G_2 ... G_N = u.
/// The identity gives an empty list and a two-level unitary a single factor.
template <typename Derived>
std::vector<TwoLevelFactor<typename Derived::Scalar>> two_level_decompose(
    const Eigen::MatrixBase<Derived> &u, double tiny = 1e-14) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  require_unitary(u, 1e-10, "two_level_decompose");
  const Eigen::Index m = u.rows();
  Mat v = u;
  // Row operations L_1, L_2, ... with L_N ... L_1 u = I.
  std::vector<TwoLevelFactor<Scalar>> ops;
  std::vector<int> last_partner(static_cast<std::size_t>(m), -1);
  auto push = [&](TwoLevelFactor<Scalar> f) {
    if (!ops.empty() && ops.back().i == f.i && ops.back().j == f.j) {
      ops.back().block = (f.block * ops.back().block).eval();
    } else {
      ops.push_back(f);
    }
    last_partner[f.i] = f.j;
    last_partner[f.j] = f.i;
  };
  for (Eigen::Index k = 0; k + 1 < m; ++k) {
    for (Eigen::Index j = k + 1; j < m; ++j) {
      TwoLevelFactor<Scalar> f{static_cast<int>(k), static_cast<int>(j), {}};
      if (detail::eliminate<Scalar>(v, k, j, k, f.block, tiny)) push(f);
    }
  }
  // v is now diagonal; clear the remaining phases.
  for (Eigen::Index p = 0; p < m; ++p) {
    const Scalar phase = v(p, p);
    if (std::abs(phase - Scalar(1)) <= tiny) continue;
    if (m < 2) throw std::invalid_argument("two_level_decompose: 1x1 input with a phase");
    int q = last_partner[p];
    if (q < 0) q = static_cast<int>(p + 1 < m ? p + 1 : p - 1);
    const int lo = static_cast<int>(std::min<Eigen::Index>(p, q));
    const int hi = static_cast<int>(std::max<Eigen::Index>(p, q));
    TwoLevelFactor<Scalar> f{lo, hi, Eigen::Matrix<Scalar, 2, 2>::Identity()};
    const Scalar fix = std::conj(phase) / std::abs(phase);
    if (lo == p) {
      f.block(0, 0) = fix;
    } else {
      f.block(1, 1) = fix;
    }
    v(p, p) *= fix;
    push(f);
  }
  for (auto &f : ops) f.block = f.block.adjoint().eval();
  return ops;
}

template <typename Scalar>
struct BlockFactor {
  std::vector<int> support;  // basis states the factor may move
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> matrix;
};

/// Seven factors G_1 ... G_7 with G_1 ... G_7 = u, each the identity outside
/// m/2 basis states. Requires 4 | m.
template <typename Derived>
std::vector<BlockFactor<typename Derived::Scalar>> seven_block_decompose(
    const Eigen::MatrixBase<Derived> &u, double tiny = 1e-14) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index m = u.rows();
  if (m == 0 || m % 4 != 0) throw std::invalid_argument("seven_block_decompose: 4 must divide m");
  require_unitary(u, 1e-10, "seven_block_decompose");
  const Eigen::Index q = m / 4;
  Mat v = u;
  std::vector<BlockFactor<Scalar>> steps;  // L_1 .. L_7 as applied

  auto rows_of = [q](std::initializer_list<int> quarters) {
    std::vector<int> r;
    for (int b : quarters) {
      for (Eigen::Index k = 0; k < q; ++k) r.push_back(static_cast<int>(b * q + k));
    }
    return r;
  };
  // Eliminates entries (j, k) for the listed (pivot, target) pairs in order,
  // accumulating the row operations into one factor.
  auto eliminate_step = [&](std::vector<int> support,
                            const std::vector<std::array<Eigen::Index, 3>> &plan) {
    Mat acc = Mat::Identity(m, m);
    for (const auto &[i, j, k] : plan) {
      Eigen::Matrix<Scalar, 2, 2> block;
      if (!detail::eliminate<Scalar>(v, i, j, k, block, tiny)) continue;
      TwoLevelFactor<Scalar> f{static_cast<int>(i), static_cast<int>(j), block};
      acc = (embed(f, m) * acc).eval();
    }
    steps.push_back({std::move(support), std::move(acc)});
  };

  // Step 1: upper triangularise the upper-left quadrant within the top half.
  {
    std::vector<std::array<Eigen::Index, 3>> plan;
    for (Eigen::Index k = 0; k < 2 * q; ++k) {
      for (Eigen::Index j = k + 1; j < 2 * q; ++j) plan.push_back({k, j, k});
    }
    eliminate_step(rows_of({0, 1}), plan);
  }
  // Steps 2 and 3: clear quarters 3 and 4 of the first column block against
  // the pivots of quarter 1.
  for (int target : {2, 3}) {
    std::vector<std::array<Eigen::Index, 3>> plan;
    for (Eigen::Index k = 0; k < q; ++k) {
      for (Eigen::Index j = target * q; j < (target + 1) * q; ++j) plan.push_back({k, j, k});
    }
    eliminate_step(rows_of({0, target}), plan);
  }
  // Steps 4 and 5: the same for the second column block, pivots in quarter 2.
  for (int target : {2, 3}) {
    std::vector<std::array<Eigen::Index, 3>> plan;
    for (Eigen::Index k = q; k < 2 * q; ++k) {
      if (target == 2) {
        for (Eigen::Index j = k + 1; j < 2 * q; ++j) plan.push_back({k, j, k});
      }
      for (Eigen::Index j = target * q; j < (target + 1) * q; ++j) plan.push_back({k, j, k});
    }
    eliminate_step(rows_of({1, target}), plan);
  }
  // Steps 6 and 7: undo the two diagonal quadrants.
  for (int half : {0, 1}) {
    Mat acc = Mat::Identity(m, m);
    const Eigen::Index s = half * 2 * q;
    acc.block(s, s, 2 * q, 2 * q) = v.block(s, s, 2 * q, 2 * q).adjoint();
    v = (acc * v).eval();
    steps.push_back({half == 0 ? rows_of({0, 1}) : rows_of({2, 3}), std::move(acc)});
  }
  // L_7 ... L_1 u = I, so u = L_1^dagger ... L_7^dagger.
  for (auto &s : steps) s.matrix = s.matrix.adjoint().eval();
  return steps;
}

// ---------------------------------------------------------------------------
// Block constructions on strings of n+1 symbols that start with *, grouped
// by their last three symbols.

struct BlockBasis {
  int n = 0;
  /// Groups in order: *p*, pp*, *pp, ppp, p*p. Within a group, strings are
  /// ordered by prefix so that *p* pairs with *pp, pp* with ppp, and ppp
  /// with p*p.
  std::vector<std::vector<SymbolString>> groups;
  std::vector<SymbolString> order;  // concatenation of the groups
  int offset(int group) const;
  int size(int group) const { return static_cast<int>(groups[group].size()); }
  int dim() const { return static_cast<int>(order.size()); }
  /// Dimensions of the A block (*p*, pp*), C block (*pp, ppp) and B block.
  int a_dim() const { return size(0) + size(1); }
  int c_dim() const { return size(2) + size(3); }
  int b_dim() const { return size(4); }
};

BlockBasis block_basis(int n);

struct BlockConstructions {
  BlockBasis basis;
  Eigen::MatrixXcd m_last;   // sigma_{n-1} in the block basis
  double alpha_prime = 0.0;  // conjugation angle making the two Euler axes orthogonal
  Eigen::Vector3d euler;     // Euler angles (u, v, u)
  std::complex<double> phi1, phi2;
  Eigen::MatrixXcd m_swap;
  Eigen::MatrixXcd m_unphase;
  Eigen::MatrixXcd m_clean;
  Eigen::MatrixXcd m_gen;
};

/// A on the A block and again on the C block, B on the B block.
Eigen::MatrixXcd generic_block(const BlockBasis &basis, const Eigen::MatrixXcd &a,
                               const Eigen::MatrixXcd &b);
Eigen::MatrixXcd diag_block(const BlockBasis &basis, double alpha);

/// diag(I, C, I) from swaps, diagonal blocks and generic blocks.
Eigen::MatrixXcd c_block(const BlockBasis &basis, const Eigen::MatrixXcd &m_swap,
                         const Eigen::MatrixXcd &c);
/// A on the A block, C on the C block, B on the B block.
Eigen::MatrixXcd acb_block(const BlockBasis &basis, const Eigen::MatrixXcd &m_swap,
                           const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &c,
                           const Eigen::MatrixXcd &b);

/// Builds the swap, unphase, clean swap and diag(V, W) with V on the A block
/// (dimension f_{n-1}) and W on the C and B blocks (dimension f_n). n >= 4.
BlockConstructions block_constructions(int n, const Eigen::MatrixXcd &v, const Eigen::MatrixXcd &w);

/// Haar-random unitary from a seeded generator (QR of a Gaussian matrix).
Eigen::MatrixXcd random_unitary(int m, std::uint64_t seed);

}  // namespace fibjones

#endif  // FIBJONES_REDUCTION_HPP
