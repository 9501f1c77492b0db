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

#ifndef FIBJONES_FIBREP_HPP
#define FIBJONES_FIBREP_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fibjones/braid.hpp"

namespace fibjones {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

/// Fibonacci number f_k with f_0 = 0, f_1 = f_2 = 1. Valid for 0 <= k <= 93.
std::uint64_t fibonacci(int k);

/// A string over {p, *}. Bit j (counted from the right end) is set when the
/// symbol is *, so the leftmost symbol is bit length-1.
struct SymbolString {
  std::uint64_t bits = 0;
  int length = 0;

  /// Symbol at 1-based position k counted from the left.
  bool star_at(int k) const { return (bits >> (length - k)) & 1u; }
  bool first_is_star() const { return star_at(1); }
  bool last_is_star() const { return bits & 1u; }
  bool legal() const { return length >= 1 && (bits & (bits >> 1)) == 0; }

  bool operator==(const SymbolString &) const = default;
};

/// Parses a string over 'p' and '*' (the UTF-8 asterisk operator is also accepted).
SymbolString symbols_from_text(std::string_view text);
/// ASCII rendering with '*' for the star symbol.
std::string to_text(const SymbolString &s);

/// Zeckendorf value: sum over positions of f_{j+2} for each * at bit j.
std::uint64_t zeckendorf_encode(const SymbolString &s);
/// Inverse of zeckendorf_encode on strings of length `len`; requires z < f_{len+2}.
SymbolString zeckendorf_decode(int len, std::uint64_t z);

/// Boundary sector named by (first symbol, last symbol). `All` is the whole
/// space of legal strings of the given length.
enum class Sector { StarStar, StarP, PStar, PP, All };

std::string_view sector_name(Sector s);
Sector sector_from_name(std::string_view name);
Sector sector_of(const SymbolString &s);

/// Legal strings of length n+1 in one sector, in ascending Zeckendorf order.
struct SectorBasis {
  int n_strands = 0;
  Sector sector = Sector::All;
  std::vector<SymbolString> basis;

  int dim() const { return static_cast<int>(basis.size()); }
  /// Position of `s` in the basis, or -1.
  int index_of(const SymbolString &s) const;
};

SectorBasis enumerate_sector(int n, Sector sector);
/// Closed form: f_{n-1}, f_n, f_n, f_{n+1}, or f_{n+3} for All.
std::uint64_t sector_dimension(int n, Sector sector);

template <typename Real>
struct FibConstants {
  std::complex<Real> A, a, b, c, d, e, delta;
  Real tau, phi, D;

  static const FibConstants &get();
};

/// One output term of a local crossing rule.
template <typename Real>
struct CrossingTerm {
  SymbolString out;
  std::complex<Real> coeff;
};

/// Action of sigma_i on one basis string: at most two terms.
template <typename Real>
std::vector<CrossingTerm<Real>> crossing_action(const SymbolString &s, int i);

template <typename Real>
struct SectorOperator {
  SectorBasis basis;
  CMatrix<Real> matrix;
};

/// Matrix of sigma_i (entry [out, in]) on the sector basis for n strands.
template <typename Real>
SectorOperator<Real> crossing_operator(int n, int i, Sector sector);

/// rho(g_1) rho(g_2) ... for the word; inverse generators use the adjoint.
template <typename Real>
SectorOperator<Real> represent(const BraidWord &b, Sector sector);

/// Same product on a precomputed basis. Crossings are applied through the
/// two-term rule when the dimension is above `kSparseThreshold`. The basis
/// must be ascending and closed under the word; otherwise this throws.
template <typename Real>
CMatrix<Real> represent_on(const BraidWord &b, const SectorBasis &basis);

inline constexpr int kSparseThreshold = 256;

/// Rung sequence of a walk on a four-rung ladder (rungs 1..4, start at 1)
/// and the string it reads under the labels *, p, p, *.
struct LadderPath {
  std::vector<int> rungs;
  SymbolString symbols;
};

/// All n-step walks; the map to strings is a bijection onto the
/// length-(n+1) legal strings that start with *.
std::vector<LadderPath> path_bijection(int n);

extern template struct FibConstants<double>;
extern template struct FibConstants<long double>;
extern template std::vector<CrossingTerm<double>> crossing_action<double>(const SymbolString &, int);
extern template SectorOperator<double> crossing_operator<double>(int, int, Sector);
extern template SectorOperator<double> represent<double>(const BraidWord &, Sector);
extern template CMatrix<double> represent_on<double>(const BraidWord &, const SectorBasis &);
extern template std::vector<CrossingTerm<long double>> crossing_action<long double>(const SymbolString &, int);
extern template SectorOperator<long double> crossing_operator<long double>(int, int, Sector);
extern template SectorOperator<long double> represent<long double>(const BraidWord &, Sector);
extern template CMatrix<long double> represent_on<long double>(const BraidWord &, const SectorBasis &);

}  // namespace fibjones

#endif  // FIBJONES_FIBREP_HPP
