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

#include "fibjones/fibrep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fibjones {

std::uint64_t fibonacci(int k) {
  static const std::array<std::uint64_t, 94> table = [] {
    std::array<std::uint64_t, 94> f{};
    f[1] = 1;
    for (std::size_t i = 2; i < f.size(); ++i) f[i] = f[i - 1] + f[i - 2];
    return f;
  }();
  if (k < 0 || k >= static_cast<int>(table.size())) {
    throw std::out_of_range("fibonacci index out of range");
  }
  return table[static_cast<std::size_t>(k)];
}

SymbolString symbols_from_text(std::string_view text) {
  static constexpr std::string_view kStarUtf8 = "∗";
  SymbolString s;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char ch = text[pos];
    if (ch == ' ') {
      ++pos;
      continue;
    }
    bool star;
    if (ch == 'p') {
      star = false;
      ++pos;
    } else if (ch == '*') {
      star = true;
      ++pos;
    } else if (text.compare(pos, kStarUtf8.size(), kStarUtf8) == 0) {
      star = true;
      pos += kStarUtf8.size();
    } else {
      throw std::invalid_argument("invalid symbol in '" + std::string(text) + "'");
    }
    if (s.length >= 63) throw std::invalid_argument("symbol string too long");
    s.bits = (s.bits << 1) | (star ? 1u : 0u);
    ++s.length;
  }
  if (s.length == 0) throw std::invalid_argument("empty symbol string");
  return s;
}

std::string to_text(const SymbolString &s) {
  std::string out;
  out.reserve(static_cast<std::size_t>(s.length));
  for (int k = 1; k <= s.length; ++k) out.push_back(s.star_at(k) ? '*' : 'p');
  return out;
}

std::uint64_t zeckendorf_encode(const SymbolString &s) {
  std::uint64_t z = 0;
  for (int j = 0; j < s.length; ++j) {
    if ((s.bits >> j) & 1u) z += fibonacci(j + 2);
  }
  return z;
}

SymbolString zeckendorf_decode(int len, std::uint64_t z) {
  if (len < 1 || len > 63) throw std::out_of_range("symbol string length out of range");
  if (z >= fibonacci(len + 2)) throw std::out_of_range("Zeckendorf value out of range");
  SymbolString s{0, len};
  for (int j = len - 1; j >= 0; --j) {
    std::uint64_t w = fibonacci(j + 2);
    if (z >= w) {
      s.bits |= std::uint64_t{1} << j;
      z -= w;
    }
  }
  return s;
}

std::string_view sector_name(Sector s) {
  switch (s) {
    case Sector::StarStar: return "**";
    case Sector::StarP: return "*p";
    case Sector::PStar: return "p*";
    case Sector::PP: return "pp";
    case Sector::All: return "all";
  }
  return "?";
}

Sector sector_from_name(std::string_view name) {
  for (Sector s : {Sector::StarStar, Sector::StarP, Sector::PStar, Sector::PP, Sector::All}) {
    if (name == sector_name(s)) return s;
  }
  throw std::invalid_argument("unknown sector '" + std::string(name) + "'");
}

Sector sector_of(const SymbolString &s) {
  bool first = s.first_is_star();
  bool last = s.last_is_star();
  if (first) return last ? Sector::StarStar : Sector::StarP;
  return last ? Sector::PStar : Sector::PP;
}

int SectorBasis::index_of(const SymbolString &s) const {
  std::uint64_t z = zeckendorf_encode(s);
  auto it = std::lower_bound(basis.begin(), basis.end(), z,
                             [](const SymbolString &x, std::uint64_t v) {
                               return zeckendorf_encode(x) < v;
                             });
  if (it == basis.end() || !(*it == s)) return -1;
  return static_cast<int>(it - basis.begin());
}

SectorBasis enumerate_sector(int n, Sector sector) {
  if (n < 1) throw std::invalid_argument("strand count must be >= 1");
  SectorBasis out{n, sector, {}};
  const int len = n + 1;
  const std::uint64_t total = fibonacci(len + 2);
  for (std::uint64_t z = 0; z < total; ++z) {
    SymbolString s = zeckendorf_decode(len, z);
    if (sector == Sector::All || sector_of(s) == sector) out.basis.push_back(s);
  }
  return out;
}

std::uint64_t sector_dimension(int n, Sector sector) {
  switch (sector) {
    case Sector::StarStar: return fibonacci(n - 1);
    case Sector::StarP:
    case Sector::PStar: return fibonacci(n);
    case Sector::PP: return fibonacci(n + 1);
    case Sector::All: return fibonacci(n + 3);
  }
  return 0;
}

template <typename Real>
const FibConstants<Real> &FibConstants<Real>::get() {
  static const FibConstants k = [] {
    using C = std::complex<Real>;
    const Real pi = std::numbers::pi_v<Real>;
    const Real sqrt5 = std::sqrt(Real(5));
    FibConstants f;
    f.A = std::polar(Real(1), -3 * pi / 5);
    f.tau = 2 / (1 + sqrt5);
    f.phi = (1 + sqrt5) / 2;
    const C A4 = std::pow(f.A, 4);
    const C A8 = std::pow(f.A, 8);
    const Real t32 = std::pow(f.tau, Real(1.5));
    f.a = -A4;
    f.b = A8;
    f.c = A8 * f.tau * f.tau - A4 * f.tau;
    f.d = A8 * t32 + A4 * t32;
    f.e = A8 * f.tau - A4 * f.tau * f.tau;
    f.delta = f.A - C(1);
    f.D = f.phi;
    return f;
  }();
  return k;
}

template <typename Real>
std::vector<CrossingTerm<Real>> crossing_action(const SymbolString &s, int i) {
  const int n = s.length - 1;
  if (i < 1 || i > n - 1) throw std::out_of_range("crossing index out of range");
  const auto &k = FibConstants<Real>::get();
  const bool left = s.star_at(i);
  const bool mid = s.star_at(i + 1);
  const bool right = s.star_at(i + 2);
  const std::uint64_t mid_bit = std::uint64_t{1} << (s.length - (i + 1));
  SymbolString flipped{s.bits ^ mid_bit, s.length};
  if (mid) {
    // p*p is the only legal neighbourhood of a middle *.
    return {{s, k.c}, {flipped, k.d}};
  }
  if (left && right) return {{s, k.b}};
  if (left || right) return {{s, k.a}};
  return {{flipped, k.d}, {s, k.e}};
}

template <typename Real>
SectorOperator<Real> crossing_operator(int n, int i, Sector sector) {
  if (i < 1 || i > n - 1) throw std::out_of_range("crossing index out of range");
  SectorOperator<Real> op{enumerate_sector(n, sector), {}};
  const int dim = op.basis.dim();
  op.matrix = CMatrix<Real>::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    for (const auto &t : crossing_action<Real>(op.basis.basis[col], i)) {
      op.matrix(op.basis.index_of(t.out), col) += t.coeff;
    }
  }
  return op;
}

namespace {

// For each basis column, the (row, coefficient) terms of sigma_i.
template <typename Real>
struct SparseCrossing {
  std::vector<std::array<int, 2>> rows;
  std::vector<std::array<std::complex<Real>, 2>> coeffs;
  std::vector<int> count;
};

template <typename Real>
SparseCrossing<Real> sparse_crossing(const SectorBasis &basis, int i) {
  const int dim = basis.dim();
  SparseCrossing<Real> sc;
  sc.rows.resize(dim);
  sc.coeffs.resize(dim);
  sc.count.resize(dim);
  for (int col = 0; col < dim; ++col) {
    auto terms = crossing_action<Real>(basis.basis[col], i);
    sc.count[col] = static_cast<int>(terms.size());
    for (std::size_t t = 0; t < terms.size(); ++t) {
      sc.rows[col][t] = basis.index_of(terms[t].out);
      if (sc.rows[col][t] < 0) throw std::invalid_argument("basis is not closed under the crossing");
      sc.coeffs[col][t] = terms[t].coeff;
    }
  }
  return sc;
}

}  // namespace

template <typename Real>
CMatrix<Real> represent_on(const BraidWord &b, const SectorBasis &basis) {
  validate(b);
  if (b.strands != basis.n_strands) throw std::invalid_argument("basis/braid strand mismatch");
  for (std::size_t k = 1; k < basis.basis.size(); ++k) {
    if (zeckendorf_encode(basis.basis[k - 1]) >= zeckendorf_encode(basis.basis[k])) {
      throw std::invalid_argument("basis must be in ascending Zeckendorf order");
    }
  }
  const int dim = basis.dim();
  CMatrix<Real> m = CMatrix<Real>::Identity(dim, dim);
  if (dim == 0) return m;
  const int n = b.strands;
  if (dim <= kSparseThreshold) {
    std::vector<CMatrix<Real>> gens(static_cast<std::size_t>(std::max(n - 1, 0)));
    for (int g : b.word) {
      const int i = std::abs(g);
      CMatrix<Real> &c = gens[i - 1];
      if (c.size() == 0) {
        c = CMatrix<Real>::Zero(dim, dim);
        for (int col = 0; col < dim; ++col) {
          for (const auto &t : crossing_action<Real>(basis.basis[col], i)) {
            const int row = basis.index_of(t.out);
            if (row < 0) throw std::invalid_argument("basis is not closed under the crossing");
            c(row, col) += t.coeff;
          }
        }
      }
      if (g > 0) {
        m = m * c;
      } else {
        m = m * c.adjoint();
      }
    }
    return m;
  }
  // The local 2x2 blocks are symmetric, so the adjoint of sigma_i has the same
  // sparsity with conjugated coefficients.
  std::vector<SparseCrossing<Real>> gens(static_cast<std::size_t>(n - 1));
  std::vector<bool> built(static_cast<std::size_t>(n - 1), false);
  CMatrix<Real> next(dim, dim);
  for (int g : b.word) {
    const int i = std::abs(g);
    if (!built[i - 1]) {
      gens[i - 1] = sparse_crossing<Real>(basis, i);
      built[i - 1] = true;
    }
    const auto &sc = gens[i - 1];
    next.setZero();
    for (int col = 0; col < dim; ++col) {
      // Column col of the sparse factor written into m * factor.
      for (int t = 0; t < sc.count[col]; ++t) {
        std::complex<Real> w = g > 0 ? sc.coeffs[col][t] : std::conj(sc.coeffs[col][t]);
        next.col(col) += w * m.col(sc.rows[col][t]);
      }
    }
    m.swap(next);
  }
  return m;
}

template <typename Real>
SectorOperator<Real> represent(const BraidWord &b, Sector sector) {
  SectorOperator<Real> op{enumerate_sector(b.strands, sector), {}};
  op.matrix = represent_on<Real>(b, op.basis);
  return op;
}

std::vector<LadderPath> path_bijection(int n) {
  if (n < 1) throw std::invalid_argument("path length must be >= 1");
  std::vector<LadderPath> out;
  std::vector<int> rungs{1};
  auto label_star = [](int r) { return r == 1 || r == 4; };
  auto recurse = [&](auto &&self) -> void {
    if (static_cast<int>(rungs.size()) == n + 1) {
      SymbolString s{0, n + 1};
      for (int r : rungs) s.bits = (s.bits << 1) | (label_star(r) ? 1u : 0u);
      out.push_back({rungs, s});
      return;
    }
    const int r = rungs.back();
    for (int next : {r - 1, r + 1}) {
      if (next < 1 || next > 4) continue;
      rungs.push_back(next);
      self(self);
      rungs.pop_back();
    }
  };
  recurse(recurse);
  return out;
}

template struct FibConstants<double>;
template struct FibConstants<long double>;
template std::vector<CrossingTerm<double>> crossing_action<double>(const SymbolString &, int);
template SectorOperator<double> crossing_operator<double>(int, int, Sector);
template SectorOperator<double> represent<double>(const BraidWord &, Sector);
template CMatrix<double> represent_on<double>(const BraidWord &, const SectorBasis &);
template std::vector<CrossingTerm<long double>> crossing_action<long double>(const SymbolString &, int);
template SectorOperator<long double> crossing_operator<long double>(int, int, Sector);
template SectorOperator<long double> represent<long double>(const BraidWord &, Sector);
template CMatrix<long double> represent_on<long double>(const BraidWord &, const SectorBasis &);

}  // namespace fibjones
