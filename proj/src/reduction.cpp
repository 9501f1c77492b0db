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

#include "fibjones/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <unordered_map>

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>
#include <Eigen/QR>

#include "fibjones/errors.hpp"

namespace fibjones {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_codeword(const SymbolString &block, bool one) {
  // ppp -> 0, p*p -> 1.
  return block.length == 3 && block.bits == (one ? 0b010u : 0b000u);
}

}  // namespace

// ---------------------------------------------------------------------------

SymbolString substring(const SymbolString &s, int start, int length) {
  if (start < 1 || length < 0 || start + length - 1 > s.length) {
    throw std::out_of_range("substring: range outside the string");
  }
  const int drop = s.length - (start + length - 1);
  const std::uint64_t mask = length == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << length) - 1);
  return {(s.bits >> drop) & mask, length};
}

SuperblockValue superblock_decode(const SymbolString &segment, int blocks_per_superblock) {
  if (blocks_per_superblock < 1) throw std::invalid_argument("superblock_decode: c' must be >= 1");
  if (segment.length != 3 * blocks_per_superblock) {
    throw std::invalid_argument("superblock_decode: segment length must be 3 c'");
  }
  for (int k = 0; k < blocks_per_superblock; ++k) {
    const SymbolString block = substring(segment, 3 * k + 1, 3);
    if (is_codeword(block, false)) return SuperblockValue::Zero;
    if (is_codeword(block, true)) return SuperblockValue::One;
  }
  return SuperblockValue::Noncoding;
}

PreimageCensus preimage_census(int blocks_per_superblock, int superblocks) {
  if (blocks_per_superblock < 1 || superblocks < 1) {
    throw std::invalid_argument("preimage_census: c' and k must be >= 1");
  }
  const int len = 3 * blocks_per_superblock * superblocks;
  if (len > kCensusMaxSymbols) throw SizeCapError("preimage_census: more than 21 symbols");
  PreimageCensus out;
  out.blocks_per_superblock = blocks_per_superblock;
  out.superblocks = superblocks;
  const int width = 3 * blocks_per_superblock;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
    const SymbolString s{bits, len};
    if (!s.legal()) continue;
    ++out.total;
    std::string code;
    bool coding = true;
    for (int j = 0; j < superblocks && coding; ++j) {
      switch (superblock_decode(substring(s, j * width + 1, width), blocks_per_superblock)) {
        case SuperblockValue::Zero: code.push_back('0'); break;
        case SuperblockValue::One: code.push_back('1'); break;
        case SuperblockValue::Noncoding: coding = false; break;
      }
    }
    if (coding) {
      ++out.preimages[code];
    } else {
      ++out.noncoding;
    }
  }
  return out;
}

int superblock_center(int index, int blocks_per_superblock) {
  const int width = 3 * blocks_per_superblock;
  return width * index + width / 2 + 1;
}

SymbolString inchworm_swap(const SymbolString &s, int current, int target,
                           int blocks_per_superblock) {
  if (blocks_per_superblock < 1) throw std::invalid_argument("inchworm_swap: c' must be >= 1");
  if (current < 0 || target < 0 || std::abs(current - target) != 1) {
    throw std::invalid_argument("inchworm_swap: target must be a neighbouring superblock");
  }
  const int width = 3 * blocks_per_superblock;
  if (width * (std::max(current, target) + 1) > s.length) {
    throw std::invalid_argument("inchworm_swap: superblock outside the string");
  }
  if (!s.legal()) throw std::invalid_argument("inchworm_swap: illegal string");
  const int lo = std::min(current, target);
  const int start_lo = width * lo + 1;
  const int start_hi = start_lo + width;
  const int mid = width / 2;  // offset of the centre from the superblock start
  auto p_in_both = [&](int offset) {
    return !s.star_at(start_lo + offset) && !s.star_at(start_hi + offset);
  };
  int left = -1;
  for (int off = mid - 1; off >= 0; --off) {
    if (p_in_both(off)) {
      left = off;
      break;
    }
  }
  int right = -1;
  for (int off = mid + 1; off < width; ++off) {
    if (p_in_both(off)) {
      right = off;
      break;
    }
  }
  if (left < 0 || right < 0) return s;
  SymbolString out = s;
  for (int off = left + 1; off < right; ++off) {
    const int x = start_lo + off;
    const int y = start_hi + off;
    const std::uint64_t bx = std::uint64_t{1} << (s.length - x);
    const std::uint64_t by = std::uint64_t{1} << (s.length - y);
    const bool sx = s.star_at(x);
    const bool sy = s.star_at(y);
    out.bits = (out.bits & ~(bx | by)) | (sy ? bx : 0) | (sx ? by : 0);
  }
  return out;
}

// ---------------------------------------------------------------------------

RotationDescriptor su2_to_so3(const Eigen::Matrix2cd &u) {
  if ((u.adjoint() * u - Eigen::Matrix2cd::Identity()).norm() > 1e-10) {
    throw std::invalid_argument("su2_to_so3: matrix not unitary");
  }
  if (std::abs(u.determinant() - cd(1.0)) > 1e-10) {
    throw std::invalid_argument("su2_to_so3: determinant is not 1");
  }
  const double c = 0.5 * (u(0, 0) + u(1, 1)).real();
  const Eigen::Vector3d v(0.5 * (u(0, 1) + u(1, 0)).imag(), 0.5 * (u(0, 1) - u(1, 0)).real(),
                          0.5 * (u(0, 0) - u(1, 1)).imag());
  const double s = v.norm();
  RotationDescriptor r;
  if (s < 1e-15) {
    r.axis = Eigen::Vector3d::UnitZ();
    r.angle = 0.0;
    return r;
  }
  r.axis = v / s;
  r.angle = 2.0 * std::atan2(s, c);
  if (r.angle >= kTwoPi) r.angle -= kTwoPi;
  return r;
}

RotationDescriptor oriented(const RotationDescriptor &r, const Eigen::Vector3d &reference) {
  if (r.axis.dot(reference) >= 0.0) return r;
  RotationDescriptor out{-r.axis, kTwoPi - r.angle};
  if (out.angle >= kTwoPi) out.angle -= kTwoPi;
  return out;
}

Eigen::Matrix3d so3_image(const Eigen::Matrix2cd &u) {
  std::array<Eigen::Matrix2cd, 3> pauli;
  pauli[0] << 0, 1, 1, 0;
  pauli[1] << 0, cd(0, -1), cd(0, 1), 0;
  pauli[2] << 1, 0, 0, -1;
  Eigen::Matrix3d r;
  const Eigen::Matrix2cd ud = u.adjoint() / std::abs(u.determinant());
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) r(j, k) = 0.5 * (pauli[j] * u * pauli[k] * ud).trace().real();
  }
  return r;
}

Eigen::Matrix2cd normalized_generator_a() {
  const auto &k = FibConstants<double>::get();
  Eigen::Matrix2cd m;
  m << k.b, 0, 0, k.a;
  return m / std::sqrt(k.a * k.b);
}

Eigen::Matrix2cd normalized_generator_b() {
  const auto &k = FibConstants<double>::get();
  Eigen::Matrix2cd m;
  m << k.c, k.d, k.d, k.e;
  return m / std::sqrt(k.c * k.e - k.d * k.d);
}

double root_of_unity_margin(double angle, int max_k) {
  double best = kTwoPi;
  for (int k = 1; k <= max_k; ++k) {
    const double step = kTwoPi / k;
    const double j = std::round(angle / step);
    best = std::min(best, std::abs(angle - j * step));
  }
  return best;
}

DensityReport density_report() {
  DensityReport r;
  const Eigen::Matrix2cd a = normalized_generator_a();
  const Eigen::Matrix2cd b = normalized_generator_b();
  r.generator_a = su2_to_so3(a);
  r.generator_b = su2_to_so3(b);
  r.axis_separation = std::acos(std::clamp(r.generator_a.axis.dot(r.generator_b.axis), -1.0, 1.0));
  Eigen::Matrix2cd prod = Eigen::Matrix2cd::Identity();
  for (int k = 0; k < 5; ++k) prod = prod * a;
  for (int k = 0; k < 5; ++k) prod = prod * b;
  r.product = oriented(su2_to_so3(prod), r.generator_a.axis.cross(r.generator_b.axis));
  r.two_theta12 = 2.0 * r.axis_separation;
  r.conjugated_axis_separation = 2.0 * (r.two_theta12 - kPi);
  r.margin_k5 = root_of_unity_margin(r.product.angle, 5);
  r.margin_k30 = root_of_unity_margin(r.product.angle, 30);
  return r;
}

// ---------------------------------------------------------------------------

int BlockBasis::offset(int group) const {
  int off = 0;
  for (int g = 0; g < group; ++g) off += size(g);
  return off;
}

BlockBasis block_basis(int n) {
  if (n < 4) throw std::invalid_argument("block_basis: needs n >= 4");
  if (n > 40) throw SizeCapError("block_basis: n too large");
  BlockBasis out;
  out.n = n;
  out.groups.resize(5);
  // Last three symbols as bits (leftmost first): *p* = 101, pp* = 001,
  // *pp = 100, ppp = 000, p*p = 010.
  const std::array<std::uint64_t, 5> tails = {0b101, 0b001, 0b100, 0b000, 0b010};
  const int prefix_len = n - 2;
  for (std::uint64_t z = 0; z < fibonacci(prefix_len + 2); ++z) {
    const SymbolString prefix = zeckendorf_decode(prefix_len, z);
    if (!prefix.first_is_star()) continue;
    for (int g = 0; g < 5; ++g) {
      const SymbolString s{(prefix.bits << 3) | tails[g], n + 1};
      if (s.legal()) out.groups[g].push_back(s);
    }
  }
  for (const auto &g : out.groups) out.order.insert(out.order.end(), g.begin(), g.end());
  return out;
}

namespace {

Eigen::MatrixXcd crossing_in_block_basis(const BlockBasis &basis, int i) {
  std::unordered_map<std::uint64_t, int> index;
  for (int k = 0; k < basis.dim(); ++k) index[basis.order[k].bits] = k;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  for (int col = 0; col < basis.dim(); ++col) {
    for (const auto &t : crossing_action<double>(basis.order[col], i)) {
      m(index.at(t.out.bits), col) += t.coeff;
    }
  }
  return m;
}

void require_dims(const Eigen::MatrixXcd &m, int dim, const char *what) {
  if (m.rows() != dim || m.cols() != dim) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

Eigen::Matrix2cd diag2(double alpha) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::polar(1.0, alpha / 2);
  m(1, 1) = std::polar(1.0, -alpha / 2);
  return m;
}

// Unit axis u with phi(m(t)) a rotation by +t about u.
Eigen::Vector3d positive_axis(const Eigen::Matrix2cd &m_half) {
  const Eigen::AngleAxisd aa(so3_image(m_half));
  return aa.axis();
}

}  // namespace

Eigen::MatrixXcd generic_block(const BlockBasis &basis, const Eigen::MatrixXcd &a,
                               const Eigen::MatrixXcd &b) {
  require_dims(a, basis.a_dim(), "generic_block");
  require_dims(b, basis.b_dim(), "generic_block");
  const int na = basis.a_dim();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  m.block(0, 0, na, na) = a;
  m.block(na, na, na, na) = a;
  m.block(2 * na, 2 * na, basis.b_dim(), basis.b_dim()) = b;
  return m;
}

Eigen::MatrixXcd diag_block(const BlockBasis &basis, double alpha) {
  const int na = basis.a_dim();
  const int nb = basis.b_dim();
  return generic_block(basis, Eigen::MatrixXcd::Identity(na, na) * std::polar(1.0, alpha / 2),
                       Eigen::MatrixXcd::Identity(nb, nb) * std::polar(1.0, -alpha / 2));
}

Eigen::MatrixXcd c_block(const BlockBasis &basis, const Eigen::MatrixXcd &m_swap,
                         const Eigen::MatrixXcd &c) {
  const int nc = basis.c_dim();
  const int nb = basis.b_dim();
  const int gap = nc - nb;  // size of the *pp group
  require_dims(c, nc, "c_block");
  require_unitary(c, 1e-9, "c_block");
  const Eigen::ComplexSchur<Eigen::MatrixXcd> schur(c);
  const Eigen::MatrixXcd &z = schur.matrixU();
  Eigen::VectorXcd delta = schur.matrixT().diagonal();
  for (Eigen::Index k = 0; k < delta.size(); ++k) delta(k) /= std::abs(delta(k));

  // delta = (D1 + I_gap)(I_gap + D2) on the C block.
  Eigen::MatrixXcd d1 = Eigen::MatrixXcd::Identity(nb, nb);
  Eigen::MatrixXcd d2 = Eigen::MatrixXcd::Identity(nb, nb);
  for (int k = 0; k < nb; ++k) {
    d1(k, k) = delta(k);
    if (gap + k >= nb) d2(k, k) = delta(gap + k);
  }
  // Moves the bottom nb states of the C block to its top.
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(nc, nc);
  for (int k = 0; k < nb; ++k) p(k, gap + k) = 1.0;
  for (int k = 0; k < gap; ++k) p(nb + k, k) = 1.0;

  const Eigen::MatrixXcd id_c = Eigen::MatrixXcd::Identity(nc, nc);
  const Eigen::MatrixXcd id_b = Eigen::MatrixXcd::Identity(nb, nb);
  const Eigen::MatrixXcd m_p = generic_block(basis, p, id_b);
  const Eigen::MatrixXcd m_1 =
      m_p * m_swap * generic_block(basis, id_c, d1) * m_swap.adjoint() * m_p.adjoint();
  const Eigen::MatrixXcd m_2 = m_swap * generic_block(basis, id_c, d2) * m_swap.adjoint();
  const Eigen::MatrixXcd m_u = generic_block(basis, z, id_b);
  return m_u * m_1 * m_2 * m_u.adjoint();
}

Eigen::MatrixXcd acb_block(const BlockBasis &basis, const Eigen::MatrixXcd &m_swap,
                           const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &c,
                           const Eigen::MatrixXcd &b) {
  return c_block(basis, m_swap, c * a.adjoint()) * generic_block(basis, a, b);
}

BlockConstructions block_constructions(int n, const Eigen::MatrixXcd &v,
                                       const Eigen::MatrixXcd &w) {
  BlockConstructions out;
  out.basis = block_basis(n);
  const BlockBasis &basis = out.basis;
  const int na = basis.a_dim();
  const int nc = basis.c_dim();
  const int nb = basis.b_dim();
  const int gap = basis.size(2);
  require_dims(v, na, "block_constructions");
  require_dims(w, nc + nb, "block_constructions");
  require_unitary(v, 1e-9, "block_constructions");
  require_unitary(w, 1e-9, "block_constructions");

  out.m_last = crossing_in_block_basis(basis, n - 1);

  // The Euler construction on one (ppp, p*p) pair.
  const int i4 = basis.offset(3);
  const int i5 = basis.offset(4);
  Eigen::Matrix2cd bn;
  bn << out.m_last(i4, i4), out.m_last(i4, i5), out.m_last(i5, i4), out.m_last(i5, i5);
  auto pow5 = [](const Eigen::Matrix2cd &m) {
    Eigen::Matrix2cd r = Eigen::Matrix2cd::Identity();
    for (int k = 0; k < 5; ++k) r = r * m;
    return r;
  };
  const Eigen::Matrix2cd bn5 = pow5(bn);
  const Eigen::Matrix2cd r_pi = bn5 * diag2(kPi) * bn5;
  auto q2 = [&](double t) -> Eigen::Matrix2cd { return r_pi * diag2(t) * r_pi; };
  auto q2p = [&](double t, double ap) -> Eigen::Matrix2cd {
    return diag2(ap) * q2(t) * diag2(-ap);
  };
  const Eigen::Vector3d axis_v = positive_axis(q2(0.5));
  auto separation_cos = [&](double ap) { return positive_axis(q2p(0.5, ap)).dot(axis_v); };
  double lo = 0.0;
  double hi = kPi;
  if (separation_cos(lo) * separation_cos(hi) > 0.0) {
    throw std::runtime_error("block_constructions: no orthogonal axis pair");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((separation_cos(mid) > 0.0) == (separation_cos(lo) > 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.alpha_prime = 0.5 * (lo + hi);
  const Eigen::Vector3d axis_u = positive_axis(q2p(0.5, out.alpha_prime));
  // Frame with u as z and v as y; target is the swap of the pair.
  Eigen::Matrix3d frame;
  frame.col(0) = axis_v.cross(axis_u).normalized();
  frame.col(1) = axis_v;
  frame.col(2) = axis_u;
  Eigen::Matrix2cd x;
  x << 0, 1, 1, 0;
  const Eigen::Matrix3d target = so3_image(x);
  const Eigen::Matrix3d local = frame.transpose() * target * frame;
  out.euler = local.eulerAngles(2, 1, 2);

  // The same product on the full space: Q'(e0) Q(e1) Q'(e2).
  const Eigen::MatrixXcd &mn = out.m_last;
  Eigen::MatrixXcd mn5 = Eigen::MatrixXcd::Identity(basis.dim(), basis.dim());
  for (int k = 0; k < 5; ++k) mn5 = mn5 * mn;
  const Eigen::MatrixXcd big_r_pi = mn5 * diag_block(basis, kPi) * mn5;
  auto big_q = [&](double t) -> Eigen::MatrixXcd {
    return big_r_pi * diag_block(basis, t) * big_r_pi;
  };
  auto big_qp = [&](double t) -> Eigen::MatrixXcd {
    return diag_block(basis, out.alpha_prime) * big_q(t) * diag_block(basis, -out.alpha_prime);
  };
  const Eigen::MatrixXcd prod = big_qp(out.euler(0)) * big_q(out.euler(1)) * big_qp(out.euler(2));
  const cd lambda = prod(i4, i5);
  out.m_swap = prod / lambda;
  out.phi1 = out.m_swap(basis.offset(0), basis.offset(0));
  out.phi2 = out.m_swap(basis.offset(1), basis.offset(1));

  // Unphase and clean swap.
  {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(na, na);
    for (int k = 0; k < basis.size(0); ++k) a(k, k) = std::conj(out.phi1);
    for (int k = basis.size(0); k < na; ++k) a(k, k) = std::conj(out.phi2);
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Identity(nc, nc);
    for (int k = 0; k < gap; ++k) c(k, k) = std::conj(out.phi2);
    out.m_unphase = acb_block(basis, out.m_swap, a, c, Eigen::MatrixXcd::Identity(nb, nb));
    out.m_clean = out.m_unphase * out.m_swap;
  }

  // diag(V, W): W as two-level factors, each moved into the C or B block.
  const Eigen::MatrixXcd id_a = Eigen::MatrixXcd::Identity(na, na);
  const Eigen::MatrixXcd id_c = Eigen::MatrixXcd::Identity(nc, nc);
  const Eigen::MatrixXcd id_b = Eigen::MatrixXcd::Identity(nb, nb);
  auto in_c = [&](int i, int j, const Eigen::Matrix2cd &g) {
    const TwoLevelFactor<cd> f{i, j, g};
    return acb_block(basis, out.m_swap, id_a, embed(f, nc), id_b);
  };
  auto in_b = [&](int i, int j, const Eigen::Matrix2cd &g) {
    const TwoLevelFactor<cd> f{i, j, g};
    return acb_block(basis, out.m_swap, id_a, id_c, embed(f, nb));
  };
  // A C-block state below the *pp group and a B-block state.
  auto across = [&](int i, int j, const Eigen::Matrix2cd &g) -> Eigen::MatrixXcd {
    const int partner = gap + (j - nc);
    if (i < gap) return out.m_clean * in_c(i, partner, g) * out.m_clean;
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(nc, nc);
    for (int k = 0; k < nc; ++k) t(k, k) = 1.0;
    t(0, 0) = t(i, i) = 0.0;
    t(0, i) = t(i, 0) = 1.0;
    const Eigen::MatrixXcd mt = acb_block(basis, out.m_swap, id_a, t, id_b);
    return mt * out.m_clean * in_c(0, partner, g) * out.m_clean * mt;
  };
  Eigen::MatrixXcd m = acb_block(basis, out.m_swap, v, id_c, id_b);
  for (const auto &f : two_level_decompose(w)) {
    if (f.j < nc) {
      m = m * in_c(f.i, f.j, f.block);
    } else if (f.i >= nc) {
      m = m * in_b(f.i - nc, f.j - nc, f.block);
    } else {
      m = m * across(f.i, f.j, f.block);
    }
  }
  out.m_gen = m;
  return out;
}

Eigen::MatrixXcd random_unitary(int m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("random_unitary: dimension must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(m, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) g(i, j) = cd(gauss(rng), gauss(rng));
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < m; ++k) {
    const cd d = r(k, k);
    if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

}  // namespace fibjones
