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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fibjones/compiler.hpp"
#include "fibjones/dqc1.hpp"
#include "fibjones/jones.hpp"
#include "fibjones/oracle.hpp"
#include "fibjones/reduction.hpp"

namespace {

using namespace fibjones;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

BraidWord random_braid(std::mt19937_64 &rng, int n, int len) {
  std::uniform_int_distribution<int> gen(1, n - 1);
  std::bernoulli_distribution neg(0.5);
  BraidWord b{n, {}};
  for (int k = 0; k < len; ++k) b.word.push_back(neg(rng) ? -gen(rng) : gen(rng));
  return b;
}

void all_words(int n, int len, std::vector<int> &cur, const std::function<void(const BraidWord &)> &f) {
  if (static_cast<int>(cur.size()) == len) {
    f({n, cur});
    return;
  }
  for (int g = -(n - 1); g <= n - 1; ++g) {
    if (g == 0) continue;
    cur.push_back(g);
    all_words(n, len, cur, f);
    cur.pop_back();
  }
}

Outcome oracle_equivalence() {
  Timer t;
  double worst = 0.0;
  int count = 0;
  auto check = [&](const BraidWord &b) {
    worst = std::max(worst, std::abs(jones_value<double>(b).value - oracle_jones(b)));
    ++count;
  };
  for (int n = 1; n <= 4; ++n) {
    for (int len = 0; len <= (n == 1 ? 0 : 4); ++len) {
      std::vector<int> cur;
      all_words(n, len, cur, check);
    }
  }
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> strands(2, 6), length(0, 8);
  for (int k = 0; k < 200; ++k) check(random_braid(rng, strands(rng), length(rng)));
  const double secs = t.seconds();
  return {worst <= 1e-9 && secs <= 60.0,
          std::to_string(count) + " braids, max err " + fmt(worst) + ", " + fmt(secs) + " s"};
}

Outcome markov_invariance() {
  std::mt19937_64 rng(1002);
  std::uniform_int_distribution<int> strands(2, 5), length(0, 8);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const BraidWord b = random_braid(rng, strands(rng), length(rng));
    const cd v = jones_value<double>(b).value;
    for (int g = 1; g < b.strands; ++g) {
      worst = std::max(worst, std::abs(jones_value<double>(conjugate(b, g)).value - v));
      worst = std::max(worst, std::abs(jones_value<double>(conjugate(b, -g)).value - v));
    }
    for (int sign : {1, -1}) worst = std::max(worst, std::abs(jones_value<double>(stabilize(b, sign)).value - v));
  }
  return {worst <= 1e-9, "max err " + fmt(worst)};
}

Outcome representation_suite() {
  Timer t;
  double rel = 0.0;
  double contraction = 0.0;
  const double D = FibConstants<double>::get().D;
  const Sector sectors[] = {Sector::StarStar, Sector::StarP, Sector::PStar, Sector::PP, Sector::All};
  for (int n = 2; n <= 8; ++n) {
    for (Sector s : sectors) {
      if (sector_dimension(n, s) == 0) continue;
      std::vector<CMatrix<double>> g, e;
      for (int i = 1; i < n; ++i) {
        g.push_back(crossing_operator<double>(n, i, s).matrix);
        e.push_back(tl_generator_image<double>(n, i, s));
      }
      const auto id = CMatrix<double>::Identity(g[0].rows(), g[0].cols());
      for (std::size_t i = 0; i < g.size(); ++i) {
        rel = std::max(rel, (g[i].adjoint() * g[i] - id).norm());
        rel = std::max(rel, (e[i] * e[i] - D * e[i]).norm());
        if (i + 1 < g.size()) {
          rel = std::max(rel, (g[i] * g[i + 1] * g[i] - g[i + 1] * g[i] * g[i + 1]).norm());
          rel = std::max(rel, (e[i] * e[i + 1] * e[i] - e[i]).norm());
          rel = std::max(rel, (e[i + 1] * e[i] * e[i + 1] - e[i + 1]).norm());
        }
        for (std::size_t j = i + 2; j < g.size(); ++j) {
          rel = std::max(rel, (g[i] * g[j] - g[j] * g[i]).norm());
          rel = std::max(rel, (e[i] * e[j] - e[j] * e[i]).norm());
        }
      }
    }
  }
  const auto &k = FibConstants<double>::get();
  const cd ia = 1.0 / k.A, ia2 = ia * ia;
  for (cd x : {k.a, k.b}) {
    const cd y = ia * x - ia2;
    rel = std::max(rel, std::abs(y * y - D * y));
  }
  Eigen::Matrix2cd m;
  m << k.c, k.d, k.d, k.e;
  const Eigen::Matrix2cd y = ia * m - ia2 * Eigen::Matrix2cd::Identity();
  rel = std::max(rel, (y * y - D * y).norm());

  std::mt19937_64 rng(1003);
  for (int n = 3; n <= 8; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const BraidWord sub = random_braid(rng, n - 1, 6);
      contraction = std::max(contraction, markov_contraction_check<double>({n, sub.word}));
    }
  }
  const double secs = t.seconds();
  return {rel <= 1e-12 && contraction <= 1e-9 && secs <= 30.0,
          "relations " + fmt(rel) + ", contraction " + fmt(contraction) + ", " + fmt(secs) + " s"};
}

Outcome constants() {
  const cd A = std::polar(1.0, -3.0 * kPi / 5.0);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const auto &k = FibConstants<double>::get();
  double worst = std::abs(k.A - A);
  worst = std::max(worst, std::abs(phi * k.e + k.a - (k.b + phi * k.a)));
  // delta from the Markov property: tr(sigma_1) on two strands is 1 / delta.
  const cd delta = 1.0 / weighted_trace<double>({2, {1}});
  worst = std::max(worst, std::abs(delta - (A - 1.0)));
  worst = std::max(worst, std::abs(k.delta - (A - 1.0)));
  worst = std::max(worst, std::abs(k.D - phi));
  worst = std::max(worst, std::abs(-A * A - 1.0 / (A * A) - phi));
  return {worst <= 1e-12, "max err " + fmt(worst)};
}

Outcome zeckendorf() {
  bool ok = true;
  for (int len = 1; len <= 20 && ok; ++len) {
    std::uint64_t legal = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
      const SymbolString s{bits, len};
      if (!s.legal()) continue;
      ++legal;
      const std::uint64_t z = zeckendorf_encode(s);
      ok = ok && z < fibonacci(len + 2) && zeckendorf_decode(len, z) == s;
    }
    ok = ok && legal == fibonacci(len + 2);
  }
  // Sector sizes: first and last symbols fixed on n+1 symbols.
  for (int n = 1; n <= 16; ++n) {
    ok = ok && sector_dimension(n, Sector::StarStar) == fibonacci(n - 1);
    ok = ok && sector_dimension(n, Sector::StarP) == fibonacci(n);
    ok = ok && sector_dimension(n, Sector::PStar) == fibonacci(n);
    ok = ok && sector_dimension(n, Sector::PP) == fibonacci(n + 1);
    ok = ok && static_cast<std::uint64_t>(enumerate_sector(n, Sector::All).dim()) == fibonacci(n + 3);
  }
  double worst_fill = 1.0;
  for (int n = 1; n <= 32; ++n) {
    const int b = data_qubits_for(n);
    const double fill = double(fibonacci(n + 2)) / std::ldexp(1.0, b);
    ok = ok && fill <= 1.0;
    worst_fill = std::min(worst_fill, fill);
  }
  ok = ok && worst_fill > 0.5;
  return {ok, "lengths <= 20 bijective, min fill " + fmt(worst_fill)};
}

bool is_permutation(const std::vector<std::uint64_t> &image) {
  std::vector<bool> hit(image.size(), false);
  for (std::uint64_t y : image) {
    if (y >= image.size() || hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

Outcome compiler_correctness() {
  std::mt19937_64 rng(1006);
  std::uniform_int_distribution<int> strands(2, 5), length(0, 6);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const BraidWord b = random_braid(rng, strands(rng), length(rng));
    const CompiledCircuit cc = compile(b);
    worst = std::max(worst, std::abs(cc.normalization * exact_trace(cc.op) - weighted_trace<double>(b)));
  }
  bool perms = true;
  int maps = 0;
  for (int w = 1; w <= 11; ++w) {
    const std::uint64_t mask = (std::uint64_t{1} << w) - 1;
    const std::size_t size = std::size_t{1} << (w + 1);
    auto image = [&](auto f) {
      std::vector<std::uint64_t> out(size);
      for (std::uint64_t x = 0; x < size; ++x) {
        const FlaggedRegister r = f(FlaggedRegister{x & mask, bool(x >> w)});
        out[x] = r.value | (std::uint64_t(r.flag) << w);
      }
      ++maps;
      return is_permutation(out);
    };
    for (std::uint64_t k : {std::uint64_t{1}, mask / 3 + 1, mask}) {
      perms = perms && image([&](FlaggedRegister r) { return compare_flip(r, w, k); });
      perms = perms && image([&](FlaggedRegister r) { return controlled_add(r, w, k); });
      perms = perms && image([&](FlaggedRegister r) { return controlled_sub(r, w, k); });
    }
    for (int len = 1; fibonacci(len + 2) <= (std::uint64_t{1} << w); ++len) {
      perms = perms && image([&](FlaggedRegister r) { return leftmost_extract_map(r, w, len); });
    }
  }
  for (int w = 2; w <= 5; ++w) {
    const std::uint64_t mask = (std::uint64_t{1} << w) - 1;
    for (int n = 1; fibonacci(n + 2) <= (std::uint64_t{1} << w); ++n) {
      for (int split = 0; split < n; ++split) {
        std::vector<std::uint64_t> out(std::size_t{1} << (2 * w + 1));
        for (std::uint64_t x = 0; x < out.size(); ++x) {
          const SplitRegisters o = split_shift_map({x & mask, (x >> w) & mask, bool(x >> (2 * w))}, w, n, split,
                                                   ShiftDirection::Right);
          out[x] = o.left | (o.right << w) | (std::uint64_t(o.scratch) << (2 * w));
        }
        perms = perms && is_permutation(out);
        ++maps;
      }
    }
  }
  for (int n = 2; register_layout(n).data + 3 <= 12; ++n) {
    for (int i = 1; i < n; ++i) {
      const auto t = extraction_table(n, i);
      perms = perms && is_permutation({t.begin(), t.end()});
      ++maps;
    }
    if (n <= kCompileMaxStrands) {
      const auto t = last_symbol_table(n);
      perms = perms && is_permutation({t.begin(), t.end()});
      ++maps;
    }
  }
  return {worst <= 1e-9 && perms,
          "50 braids, max err " + fmt(worst) + ", " + std::to_string(maps) + " maps " +
              (perms ? "bijective" : "NOT bijective")};
}

Outcome dqc1_estimation() {
  bool ok = true;
  std::string detail;
  double slowest = 0.0;
  for (const BraidWord &b : {BraidWord{3, {1, 2, -1}}, BraidWord{2, {1, 1, 1}}}) {
    const cd exact = jones_value<double>(b).value;
    int hits = 0;
    double radius = 0.0;
    double total_err = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Timer t;
      const JonesDqc1Result r = estimate_jones_dqc1(b, 0.05, 0.95, seed);
      slowest = std::max(slowest, t.seconds());
      radius = r.radius;
      const double err = std::abs(r.result.value - exact);
      total_err += err;
      if (err <= r.radius) ++hits;
    }
    ok = ok && hits >= 95;
    detail += format_braid(b) + " " + std::to_string(hits) + "/100 (radius " + fmt(radius) + ", mean err " +
              fmt(total_err / 100) + "); ";
  }
  ok = ok && slowest <= 60.0;
  return {ok, detail + "slowest run " + fmt(slowest) + " s"};
}

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

Outcome ancilla_identities() {
  double worst = 0.0;
  for (int q = 2; q <= 3; ++q) {
    for (int seed = 0; seed < 10; ++seed) {
      const Eigen::MatrixXcd u = random_unitary(1 << q, 500 + 10 * q + seed);
      const auto op = UnitaryOracle::from_matrix(u);
      for (int target = 0; target < q; ++target) {
        // (1/4) Tr[U'] = Tr[P U P U^dagger].
        const Eigen::MatrixXcd p = projector(q, {target});
        const cd quarter = projector_sandwich(op, {target}).dense().trace() / 4.0;
        worst = std::max(worst, std::abs(quarter - (p * u * p * u.adjoint()).trace()));
      }
      std::vector<int> ancillas;
      for (int m = 1; m <= q - 1; ++m) {
        ancillas.push_back(m - 1);
        // Tr[U_a] = 2^m Tr[P_a U]: each extra qubit doubles the clean part.
        const cd wrapped = clean_ancilla_wrap(op, ancillas).dense().trace();
        worst = std::max(worst, std::abs(wrapped - std::ldexp(1.0, m) * (projector(q, ancillas) * u).trace()));
      }
    }
  }
  return {worst <= 1e-10, "max err " + fmt(worst)};
}

Outcome decompositions() {
  double two = 0.0, seven = 0.0;
  bool support = true;
  for (int m : {8, 12}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Eigen::MatrixXcd u = random_unitary(m, 900 + 10 * m + seed);
      Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(m, m);
      for (const auto &f : two_level_decompose(u)) p = p * embed(f, m);
      two = std::max(two, (p - u).norm());
      p = Eigen::MatrixXcd::Identity(m, m);
      for (const auto &f : seven_block_decompose(u)) {
        support = support && static_cast<int>(f.support.size()) <= m / 2;
        // Outside its support every factor must act as the identity.
        std::vector<bool> in(m, false);
        for (int s : f.support) in[s] = true;
        for (int r = 0; r < m; ++r) {
          for (int c = 0; c < m; ++c) {
            if (in[r] && in[c]) continue;
            support = support && std::abs(f.matrix(r, c) - (r == c ? 1.0 : 0.0)) <= 1e-12;
          }
        }
        p = p * f.matrix;
      }
      seven = std::max(seven, (p - u).norm());
    }
  }
  double clean = 0.0, gen = 0.0;
  for (int n = 4; n <= 7; ++n) {
    const BlockBasis basis = block_basis(n);
    const int na = basis.a_dim(), nw = basis.c_dim() + basis.b_dim(), d = basis.dim();
    const Eigen::MatrixXcd v = random_unitary(na, 700 + n), w = random_unitary(nw, 800 + n);
    const BlockConstructions bc = block_constructions(n, v, w);
    Eigen::MatrixXcd pattern = Eigen::MatrixXcd::Identity(d, d);
    const int i4 = basis.offset(3), i5 = basis.offset(4);
    for (int k = 0; k < basis.size(4); ++k) {
      pattern(i4 + k, i4 + k) = pattern(i5 + k, i5 + k) = 0.0;
      pattern(i4 + k, i5 + k) = pattern(i5 + k, i4 + k) = 1.0;
    }
    clean = std::max(clean, (bc.m_clean - pattern).cwiseAbs().maxCoeff());
    Eigen::MatrixXcd target = Eigen::MatrixXcd::Zero(d, d);
    target.block(0, 0, na, na) = v;
    target.block(na, na, nw, nw) = w;
    gen = std::max(gen, (bc.m_gen - target).cwiseAbs().maxCoeff());
  }
  const bool ok = two <= 1e-8 && seven <= 1e-8 && support && clean <= 1e-8 && gen <= 1e-8;
  return {ok, "two-level " + fmt(two) + ", seven " + fmt(seven) + ", supports " + (support ? "ok" : "BAD") +
                  ", clean " + fmt(clean) + ", gen " + fmt(gen)};
}

double margin(double angle, int max_k) {
  double best = 1e300;
  for (int k = 1; k <= max_k; ++k) {
    for (int j = 0; j <= k; ++j) best = std::min(best, std::abs(angle - 2.0 * kPi * j / k));
  }
  return best;
}

Outcome density() {
  const DensityReport r = density_report();
  // Independent product angle from the raw constants.
  const auto &k = FibConstants<double>::get();
  Eigen::Matrix2cd a, b;
  a << k.b, 0, 0, k.a;
  b << k.c, k.d, k.d, k.e;
  a /= std::sqrt(a.determinant());
  b /= std::sqrt(b.determinant());
  Eigen::Matrix2cd a5 = Eigen::Matrix2cd::Identity(), b5 = Eigen::Matrix2cd::Identity();
  for (int i = 0; i < 5; ++i) {
    a5 *= a;
    b5 *= b;
  }
  const double product = 2.0 * std::acos(std::min(1.0, std::abs((a5 * b5).trace().real()) / 2.0));
  const double m30 = margin(product, 30);
  const double expected_sep = std::acos(2.0 - std::sqrt(5.0));
  const double err = std::max({std::abs(r.generator_a.angle - 7 * kPi / 5), std::abs(r.generator_b.angle - 7 * kPi / 5),
                               std::abs(r.axis_separation - expected_sep)});
  const bool ok = err <= 1e-9 && m30 > 1e-3 && std::abs(margin(r.two_theta12, 30) - m30) <= 1e-9;
  return {ok, "angle/axis err " + fmt(err) + ", separation " + std::to_string(r.axis_separation) +
                  ", 2theta12 margin(k<=30) " + fmt(m30)};
}

Outcome reduction_combinatorics() {
  bool ok = true;
  std::string detail;
  for (int c = 1; c <= 2; ++c) {
    const PreimageCensus census = preimage_census(c, 1);
    const std::uint64_t zero = census.preimages.count("0") ? census.preimages.at("0") : 0;
    const std::uint64_t one = census.preimages.count("1") ? census.preimages.at("1") : 0;
    // Brute-force count over all legal strings of one superblock.
    std::uint64_t bz = 0, bo = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (3 * c)); ++bits) {
      const SymbolString s{bits, 3 * c};
      if (!s.legal()) continue;
      const SuperblockValue v = superblock_decode(s, c);
      bz += v == SuperblockValue::Zero;
      bo += v == SuperblockValue::One;
    }
    ok = ok && zero == one && zero == bz && one == bo && zero > 0;
    detail += "c'=" + std::to_string(c) + " " + std::to_string(zero) + "/" + std::to_string(one) + "; ";
  }
  for (int c = 1; c <= 3; ++c) {
    std::set<std::uint64_t> images;
    std::uint64_t legal = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (6 * c)); ++bits) {
      const SymbolString s{bits, 6 * c};
      if (!s.legal()) continue;
      ++legal;
      const SymbolString t = inchworm_swap(s, 0, 1, c);
      ok = ok && t.legal() && inchworm_swap(t, 0, 1, c) == s;
      images.insert(t.bits);
    }
    ok = ok && images.size() == legal;
  }
  return {ok, detail + "inchworm involutive on 2 superblocks, c' <= 3"};
}

std::string capture(const std::string &args) {
  const std::string cmd = std::string("\"") + FIBJONES_CLI_PATH + "\" " + args + " 2>/dev/null";
  std::string out;
  FILE *p = popen(cmd.c_str(), "r");
  if (p == nullptr) return out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  pclose(p);
  return out;
}

Outcome determinism() {
  const std::vector<std::string> cmds = {
      "jones \"B3: 1 2 -1\"",
      "jones \"B3: 1 2 -1\" --method oracle",
      "jones \"B3: 1 2 -1\" --method dqc1 --seed 17",
      "jones \"B2: 1 1 1\" --method dqc1 --seed 3 --epsilon 0.1 --confidence 0.9",
      "rep \"B4: 1 -3 2\" --sector all",
      "check --suite markov --max-n 5",
      "density",
      "decompose --mode two-level --dim 12 --seed 9",
      "decompose --mode seven --dim 12 --seed 9",
      "inchworm --demo --blocks 2 --superblocks 3",
      "encode --length 10 --value 77"};
  int identical = 0;
  for (const std::string &c : cmds) {
    const std::string a = capture(c);
    if (!a.empty() && a == capture(c)) ++identical;
  }
  return {identical == static_cast<int>(cmds.size()),
          std::to_string(identical) + "/" + std::to_string(cmds.size()) + " commands byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"Markov invariance", markov_invariance},
      {"representation suite", representation_suite},
      {"constants", constants},
      {"Zeckendorf encoding", zeckendorf},
      {"compiler correctness", compiler_correctness},
      {"DQC1 estimation", dqc1_estimation},
      {"Hadamard and ancilla identities", ancilla_identities},
      {"decompositions", decompositions},
      {"density diagnostics", density},
      {"reduction combinatorics", reduction_combinatorics},
      {"CLI determinism", determinism}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
