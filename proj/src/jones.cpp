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

#include "fibjones/jones.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace fibjones {

template <typename Real>
std::complex<Real> weighted_trace_from(int n, const CMatrix<Real> &rho_star_p,
                                       const CMatrix<Real> &rho_star_star) {
  const auto &k = FibConstants<Real>::get();
  const Real norm = k.phi * static_cast<Real>(fibonacci(n)) + static_cast<Real>(fibonacci(n - 1));
  return (k.phi * rho_star_p.trace() + rho_star_star.trace()) / norm;
}

template <typename Real>
std::complex<Real> weighted_trace(const BraidWord &b) {
  const int n = b.strands;
  CMatrix<Real> sp = represent_on<Real>(b, enumerate_sector(n, Sector::StarP));
  CMatrix<Real> ss = represent_on<Real>(b, enumerate_sector(n, Sector::StarStar));
  return weighted_trace_from<Real>(n, sp, ss);
}

template <typename Real>
std::complex<Real> jones_prefactor(int strands, int writhe) {
  const auto &k = FibConstants<Real>::get();
  return std::pow(-k.A, 3 * writhe) * std::pow(k.D, Real(strands - 1));
}

template <typename Real>
JonesResult<Real> jones_value(const BraidWord &b) {
  JonesResult<Real> r;
  r.braid = b;
  r.writhe = writhe(b);
  r.weighted_trace = weighted_trace<Real>(b);
  r.value = jones_prefactor<Real>(b.strands, r.writhe) * r.weighted_trace;
  return r;
}

template <typename Real>
CMatrix<Real> tl_generator_image(int n, int i, Sector sector) {
  const auto &k = FibConstants<Real>::get();
  CMatrix<Real> rho = crossing_operator<Real>(n, i, sector).matrix;
  const auto dim = rho.rows();
  return rho / k.A - CMatrix<Real>::Identity(dim, dim) / (k.A * k.A);
}

template <typename Real>
Real markov_contraction_check(const BraidWord &b) {
  validate(b);
  const int n = b.strands;
  if (n < 2) throw std::invalid_argument("contraction check needs at least two strands");
  for (int g : b.word) {
    if (std::abs(g) > n - 2) {
      throw std::invalid_argument("contraction check: word must avoid sigma_{n-1}");
    }
  }
  const auto &k = FibConstants<Real>::get();
  BraidWord with_cap = b;
  with_cap.word.push_back(n - 1);
  BraidWord smaller{n - 1, b.word};
  std::complex<Real> lhs = weighted_trace<Real>(with_cap);
  std::complex<Real> rhs = weighted_trace<Real>(smaller) / k.delta;
  return std::abs(lhs - rhs);
}

template std::complex<double> weighted_trace<double>(const BraidWord &);
template std::complex<double> weighted_trace_from<double>(int, const CMatrix<double> &,
                                                          const CMatrix<double> &);
template std::complex<double> jones_prefactor<double>(int, int);
template JonesResult<double> jones_value<double>(const BraidWord &);
template CMatrix<double> tl_generator_image<double>(int, int, Sector);
template double markov_contraction_check<double>(const BraidWord &);
template std::complex<long double> weighted_trace<long double>(const BraidWord &);
template std::complex<long double> weighted_trace_from<long double>(
    int, const CMatrix<long double> &, const CMatrix<long double> &);
template std::complex<long double> jones_prefactor<long double>(int, int);
template JonesResult<long double> jones_value<long double>(const BraidWord &);

}  // namespace fibjones
