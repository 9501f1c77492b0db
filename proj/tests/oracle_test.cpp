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

#include "fibjones/oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fibjones/errors.hpp"
#include "fibjones/jones.hpp"

namespace fibjones {
namespace {

using cd = std::complex<double>;

const cd kA = std::polar(1.0, -3.0 * std::numbers::pi / 5.0);
const double kD = (1.0 + std::sqrt(5.0)) / 2.0;

// Endpoints placed on a circle: top 0..n-1 left to right, bottom 2n-1..n.
// A matching is planar when no two chords interleave.
bool planar(const PlanarMatching &m) {
  const int n = m.n;
  auto pos = [n](int e) { return e < n ? e : 3 * n - 1 - e; };
  for (int x = 0; x < 2 * n; ++x) {
    for (int y = 0; y < 2 * n; ++y) {
      const int a = pos(x), b = pos(m.pairing[x]), c = pos(y), d = pos(m.pairing[y]);
      const int lo = std::min(a, b), hi = std::max(a, b);
      const bool c_in = lo < c && c < hi;
      const bool d_in = lo < d && d < hi;
      if (c != lo && c != hi && d != lo && d != hi && c_in != d_in) return false;
    }
  }
  return true;
}

TEST(TlCompose, SquareAbsorbsOneLoop) {
  const auto e1 = tl_generator(2, 1);
  const auto sq = tl_compose(e1, e1);
  EXPECT_EQ(sq.pairing, e1.pairing);
  EXPECT_EQ(sq.loops_absorbed, 1);
}

TEST(TlCompose, AdjacentProductReturnsGenerator) {
  const auto e1 = tl_generator(3, 1);
  const auto e2 = tl_generator(3, 2);
  const auto p = tl_compose(tl_compose(e1, e2), e1);
  EXPECT_EQ(p.pairing, e1.pairing);
  EXPECT_EQ(p.loops_absorbed, 0);
}

TEST(TlCompose, IdentityIsNeutral) {
  const auto id = tl_identity(4);
  EXPECT_EQ(tl_compose(id, id), id);
  const auto e2 = tl_generator(4, 2);
  EXPECT_EQ(tl_compose(id, e2), e2);
  EXPECT_EQ(tl_compose(e2, id), e2);
}

TEST(TlCompose, RandomProductsStayPlanar) {
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 7; ++n) {
    std::uniform_int_distribution<int> gen(1, n - 1);
    for (int trial = 0; trial < 20; ++trial) {
      PlanarMatching m = tl_identity(n);
      for (int k = 0; k < 8; ++k) {
        m = tl_compose(m, tl_generator(n, gen(rng)));
        ASSERT_TRUE(planar(m));
      }
    }
  }
}

TEST(MarkovTraceDiagram, Examples) {
  EXPECT_LE(std::abs(markov_trace_diagram(tl_identity(2)) - 1.0), 1e-15);
  EXPECT_LE(std::abs(markov_trace_diagram(tl_generator(2, 1)) - 1.0 / kD), 1e-15);
  const auto e13 = tl_compose(tl_generator(4, 1), tl_generator(4, 3));
  EXPECT_LE(std::abs(markov_trace_diagram(e13) - std::pow(kD, -2)), 1e-15);
  for (int n = 1; n <= 10; ++n) EXPECT_LE(std::abs(markov_trace_diagram(tl_identity(n)) - 1.0), 1e-15);
}

TEST(OracleTrace, Examples) {
  EXPECT_LE(std::abs(oracle_trace({1, {}}) - 1.0), 1e-15);
  EXPECT_LE(std::abs(oracle_trace({2, {1}}) - (1.0 / kA + kA / kD)), 1e-14);
  EXPECT_LE(std::abs(oracle_trace({2, {1, 1, 1}}) - weighted_trace<double>({2, {1, 1, 1}})), 1e-9);
}

TEST(OracleTrace, InverseIsConjugate) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 4;
    std::uniform_int_distribution<int> gen(-(n - 1), n - 1);
    BraidWord b{n, {}};
    while (b.word.size() < 6) {
      const int g = gen(rng);
      if (g != 0) b.word.push_back(g);
    }
    EXPECT_LE(std::abs(oracle_trace(inverse(b)) - std::conj(oracle_trace(b))), 1e-9);
  }
}

TEST(OracleTrace, SizeCap) {
  BraidWord b{2, std::vector<int>(kOracleMaxCrossings + 1, 1)};
  EXPECT_THROW(oracle_trace(b), SizeCapError);
}

TEST(OracleJones, Examples) {
  EXPECT_LE(std::abs(oracle_jones({1, {}}) - 1.0), 1e-15);
  EXPECT_LE(std::abs(oracle_jones({2, {1}}) - 1.0), 1e-12);
  EXPECT_LE(std::abs(oracle_jones({2, {1, 1, 1}}) - jones_value<double>({2, {1, 1, 1}}).value), 1e-9);
}

void all_words(int n, int len, std::vector<int> &cur, std::vector<BraidWord> &out) {
  if (static_cast<int>(cur.size()) == len) {
    out.push_back({n, cur});
    return;
  }
  for (int g = -(n - 1); g <= n - 1; ++g) {
    if (g == 0) continue;
    cur.push_back(g);
    all_words(n, len, cur, out);
    cur.pop_back();
  }
}

TEST(OracleJones, AgreesWithRepresentationOnShortWords) {
  for (int n = 2; n <= 4; ++n) {
    for (int len = 0; len <= 3; ++len) {
      std::vector<BraidWord> words;
      std::vector<int> cur;
      all_words(n, len, cur, words);
      for (const auto &b : words) {
        ASSERT_LE(std::abs(oracle_jones(b) - jones_value<double>(b).value), 1e-9) << format_braid(b);
      }
    }
  }
}

}  // namespace
}  // namespace fibjones
