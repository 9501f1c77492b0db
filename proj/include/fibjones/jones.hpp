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

#ifndef FIBJONES_JONES_HPP
#define FIBJONES_JONES_HPP

#include <complex>

#include "fibjones/braid.hpp"
#include "fibjones/fibrep.hpp"

namespace fibjones {

template <typename Real = double>
struct JonesResult {
  BraidWord braid;
  std::complex<Real> weighted_trace;
  int writhe = 0;
  std::complex<Real> value;
};

/// Normalised trace over strings starting with *, weight phi on strings
/// ending in p and 1 on strings ending in *.
template <typename Real = double>
std::complex<Real> weighted_trace(const BraidWord &b);

/// Weighted trace from already-computed sector matrices.
template <typename Real = double>
std::complex<Real> weighted_trace_from(int n, const CMatrix<Real> &rho_star_p,
                                       const CMatrix<Real> &rho_star_star);

/// (-A)^{3w} D^{n-1}, the factor turning the weighted trace into V(t).
template <typename Real = double>
std::complex<Real> jones_prefactor(int strands, int writhe);

/// V of the trace closure at t = A^{-4} = e^{2 pi i / 5}.
template <typename Real = double>
JonesResult<Real> jones_value(const BraidWord &b);

/// E_i = A^{-1} rho(sigma_i) - A^{-2} on one sector.
template <typename Real = double>
CMatrix<Real> tl_generator_image(int n, int i, Sector sector);

/// |tr(rho(b) rho(sigma_{n-1})) - tr(rho(b')) / delta| with b' the same word
/// on n-1 strands. The word may only use sigma_1 .. sigma_{n-2}.
template <typename Real = double>
Real markov_contraction_check(const BraidWord &b);

extern template std::complex<double> weighted_trace<double>(const BraidWord &);
extern template std::complex<double> weighted_trace_from<double>(int, const CMatrix<double> &,
                                                                 const CMatrix<double> &);
extern template std::complex<double> jones_prefactor<double>(int, int);
extern template JonesResult<double> jones_value<double>(const BraidWord &);
extern template CMatrix<double> tl_generator_image<double>(int, int, Sector);
extern template double markov_contraction_check<double>(const BraidWord &);
extern template std::complex<long double> weighted_trace<long double>(const BraidWord &);
extern template JonesResult<long double> jones_value<long double>(const BraidWord &);

}  // namespace fibjones

#endif  // FIBJONES_JONES_HPP
