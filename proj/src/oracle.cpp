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
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace fibjones {

namespace {

// The oracle keeps its own copy of the constants so it shares no code with
// the representation it is checking.
const std::complex<double> kA = std::polar(1.0, -3.0 * std::numbers::pi / 5.0);
const double kD = (-(kA * kA) - 1.0 / (kA * kA)).real();

class UnionFind {
 public:
  explicit UnionFind(int size) : parent_(static_cast<std::size_t>(size)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int x, int y) { parent_[find(x)] = find(y); }

 private:
  std::vector<int> parent_;
};

}  // namespace

PlanarMatching tl_identity(int n) {
  PlanarMatching m{n, std::vector<int>(static_cast<std::size_t>(2 * n)), 0};
  for (int k = 0; k < n; ++k) {
    m.pairing[k] = n + k;
    m.pairing[n + k] = k;
  }
  return m;
}

PlanarMatching tl_generator(int n, int i) {
  if (i < 1 || i > n - 1) throw std::out_of_range("TL generator index out of range");
  PlanarMatching m = tl_identity(n);
  const int l = i - 1;
  const int r = i;
  m.pairing[l] = r;
  m.pairing[r] = l;
  m.pairing[n + l] = n + r;
  m.pairing[n + r] = n + l;
  return m;
}

PlanarMatching tl_compose(const PlanarMatching &x, const PlanarMatching &y) {
  if (x.n != y.n) throw std::invalid_argument("TL compose: strand mismatch");
  const int n = x.n;
  // Nodes: x top [0,n), x bottom [n,2n), y top [2n,3n), y bottom [3n,4n).
  UnionFind uf(4 * n);
  for (int k = 0; k < 2 * n; ++k) {
    uf.unite(k, x.pairing[k]);
    uf.unite(2 * n + k, 2 * n + y.pairing[k]);
  }
  for (int k = 0; k < n; ++k) uf.unite(n + k, 2 * n + k);

  PlanarMatching out{n, std::vector<int>(static_cast<std::size_t>(2 * n), -1),
                     x.loops_absorbed + y.loops_absorbed};
  // Outer endpoint of the result for a node, or -1 if internal.
  auto outer = [n](int node) {
    if (node < n) return node;
    if (node >= 3 * n) return node - 2 * n;
    return -1;
  };
  std::vector<int> first(static_cast<std::size_t>(4 * n), -1);
  std::vector<bool> has_outer(static_cast<std::size_t>(4 * n), false);
  for (int node = 0; node < 4 * n; ++node) {
    int o = outer(node);
    if (o < 0) continue;
    int root = uf.find(node);
    has_outer[root] = true;
    if (first[root] < 0) {
      first[root] = o;
    } else {
      out.pairing[o] = first[root];
      out.pairing[first[root]] = o;
    }
  }
  for (int node = 0; node < 4 * n; ++node) {
    if (uf.find(node) == node && !has_outer[node]) ++out.loops_absorbed;
  }
  return out;
}

std::complex<double> markov_trace_diagram(const PlanarMatching &x) {
  const int n = x.n;
  UnionFind uf(2 * n);
  for (int k = 0; k < 2 * n; ++k) uf.unite(k, x.pairing[k]);
  for (int k = 0; k < n; ++k) uf.unite(k, n + k);
  int loops = 0;
  for (int k = 0; k < 2 * n; ++k) {
    if (uf.find(k) == k) ++loops;
  }
  return std::pow(kD, x.loops_absorbed) * std::pow(kD, loops - n);
}

namespace {

std::complex<double> resolve(const BraidWord &b, std::size_t pos, const PlanarMatching &prefix) {
  if (pos == b.word.size()) return markov_trace_diagram(prefix);
  const int g = b.word[pos];
  const std::complex<double> w_cup = g > 0 ? kA : 1.0 / kA;
  const std::complex<double> w_id = g > 0 ? 1.0 / kA : kA;
  std::complex<double> keep = resolve(b, pos + 1, prefix);
  std::complex<double> cup =
      resolve(b, pos + 1, tl_compose(prefix, tl_generator(b.strands, std::abs(g))));
  return w_id * keep + w_cup * cup;
}

}  // namespace

std::complex<double> oracle_trace(const BraidWord &b) {
  validate(b);
  if (b.word.size() > static_cast<std::size_t>(kOracleMaxCrossings)) {
    throw SizeCapError("oracle: at most " + std::to_string(kOracleMaxCrossings) +
                       " crossings");
  }
  return resolve(b, 0, tl_identity(b.strands));
}

std::complex<double> oracle_jones(const BraidWord &b) {
  const int w = writhe(b);
  return std::pow(-kA, 3 * w) * std::pow(kD, b.strands - 1) * oracle_trace(b);
}

}  // namespace fibjones
