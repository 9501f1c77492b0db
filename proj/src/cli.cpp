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

#include "fibjones/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fibjones/braid.hpp"
#include "fibjones/compiler.hpp"
#include "fibjones/errors.hpp"
#include "fibjones/fibrep.hpp"
#include "fibjones/jones.hpp"
#include "fibjones/oracle.hpp"
#include "fibjones/reduction.hpp"

namespace fibjones::cli {

namespace {

using json = nlohmann::ordered_json;
using cd = std::complex<double>;

json pair(cd z) { return json::array({z.real(), z.imag()}); }

json vec3(const Eigen::Vector3d &v) { return json::array({v.x(), v.y(), v.z()}); }

json rotation(const RotationDescriptor &r) { return {{"axis", vec3(r.axis)}, {"angle", r.angle}}; }

BraidWord read_braid(const std::string &input) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(input, ec)) {
    std::ifstream in(input);
    if (!in) throw std::invalid_argument("cannot read " + input);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_braid(ss.str());
  }
  return parse_braid(input);
}

// "key: value" lines built from the same record, so both formats carry
// identical numbers.
void emit_text(const json &j, const std::string &prefix, std::ostream &out) {
  if (j.is_object()) {
    for (const auto &[k, v] : j.items()) {
      const std::string key = prefix.empty() ? k : prefix + "." + k;
      if (v.is_object() || (v.is_array() && !v.empty() && v.front().is_object())) {
        emit_text(v, key, out);
      } else {
        out << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) emit_text(j[k], prefix + "[" + std::to_string(k) + "]", out);
  } else {
    out << prefix << ": " << j.dump() << "\n";
  }
}

void emit(const json &j, const std::string &format, std::ostream &out) {
  if (format == "text") {
    emit_text(j, "", out);
  } else {
    out << j.dump(2) << "\n";
  }
}

// ---------------------------------------------------------------------------
// Check suites. Each row is one residual against its tolerance.

struct CheckRow {
  int n;
  std::string check;
  double residual;
  double tolerance;
};

double max_norm(const Eigen::MatrixXcd &m) { return m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXcd rho(int n, std::vector<int> word, Sector s) {
  return represent<double>(BraidWord{n, std::move(word)}, s).matrix;
}

constexpr std::array<Sector, 4> kSectors = {Sector::StarStar, Sector::StarP, Sector::PStar, Sector::PP};

std::vector<CheckRow> suite_relations(int max_n) {
  std::vector<CheckRow> rows;
  for (int n = 2; n <= max_n; ++n) {
    double unit = 0, ybe = 0, far = 0;
    for (Sector s : kSectors) {
      if (sector_dimension(n, s) == 0) continue;
      for (int i = 1; i < n; ++i) {
        const Eigen::MatrixXcd g = rho(n, {i}, s);
        unit = std::max(unit, max_norm(g.adjoint() * g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())));
        if (i + 1 < n) {
          ybe = std::max(ybe, max_norm(rho(n, {i, i + 1, i}, s) - rho(n, {i + 1, i, i + 1}, s)));
        }
        for (int j = i + 2; j < n; ++j) {
          far = std::max(far, max_norm(rho(n, {i, j}, s) - rho(n, {j, i}, s)));
        }
      }
    }
    rows.push_back({n, "unitarity", unit, 1e-12});
    rows.push_back({n, "yang_baxter", ybe, 1e-12});
    rows.push_back({n, "far_commutation", far, 1e-12});
  }
  return rows;
}

std::vector<CheckRow> suite_tl(int max_n) {
  const double d = FibConstants<double>::get().D;
  std::vector<CheckRow> rows;
  for (int n = 2; n <= max_n; ++n) {
    double r1 = 0, r2 = 0, r3 = 0;
    for (Sector s : {Sector::StarStar, Sector::StarP}) {
      if (sector_dimension(n, s) == 0) continue;
      std::vector<Eigen::MatrixXcd> e;
      for (int i = 1; i < n; ++i) e.push_back(tl_generator_image<double>(n, i, s));
      for (std::size_t i = 0; i < e.size(); ++i) {
        r1 = std::max(r1, max_norm(e[i] * e[i] - d * e[i]));
        if (i + 1 < e.size()) {
          r2 = std::max(r2, max_norm(e[i] * e[i + 1] * e[i] - e[i]));
          r2 = std::max(r2, max_norm(e[i + 1] * e[i] * e[i + 1] - e[i + 1]));
        }
        for (std::size_t j = i + 2; j < e.size(); ++j) {
          r3 = std::max(r3, max_norm(e[i] * e[j] - e[j] * e[i]));
        }
      }
    }
    rows.push_back({n, "square", r1, 1e-12});
    rows.push_back({n, "adjacent", r2, 1e-12});
    rows.push_back({n, "far_commutation", r3, 1e-12});
  }
  return rows;
}

std::vector<CheckRow> suite_markov(int max_n) {
  std::vector<CheckRow> rows;
  for (int n = 2; n <= max_n; ++n) {
    // A fixed word on the first n-1 strands.
    std::vector<int> word;
    for (int i = 1; i + 1 < n; ++i) word.push_back(i % 2 ? i : -i);
    const BraidWord b{n, word};
    rows.push_back({n, "contraction", markov_contraction_check<double>(b), 1e-9});
    if (n < max_n || n == 2) {
      const cd v = jones_value<double>(b).value;
      double res = std::abs(jones_value<double>(stabilize(b, 1)).value - v);
      res = std::max(res, std::abs(jones_value<double>(stabilize(b, -1)).value - v));
      for (int g = 1; g < n; ++g) {
        res = std::max(res, std::abs(jones_value<double>(conjugate(b, g)).value - v));
      }
      rows.push_back({n, "moves", res, 1e-9});
    }
  }
  return rows;
}

void words_of_length(int n, int len, std::vector<int> &cur, std::vector<std::vector<int>> &out) {
  if (static_cast<int>(cur.size()) == len) {
    out.push_back(cur);
    return;
  }
  for (int g = -(n - 1); g <= n - 1; ++g) {
    if (g == 0) continue;
    cur.push_back(g);
    words_of_length(n, len, cur, out);
    cur.pop_back();
  }
}

std::vector<CheckRow> suite_oracle(int max_n) {
  std::vector<CheckRow> rows;
  for (int n = 1; n <= std::min(max_n, 5); ++n) {
    double res = 0;
    for (int len = 0; len <= (n == 1 ? 0 : 3); ++len) {
      std::vector<std::vector<int>> words;
      std::vector<int> cur;
      words_of_length(n, len, cur, words);
      for (const auto &w : words) {
        const BraidWord b{n, w};
        res = std::max(res, std::abs(jones_value<double>(b).value - oracle_jones(b)));
      }
    }
    rows.push_back({n, "oracle_agreement", res, 1e-9});
  }
  return rows;
}

std::vector<CheckRow> suite_zeckendorf(int max_n) {
  std::vector<CheckRow> rows;
  for (int n = 1; n <= max_n; ++n) {
    const int len = n + 1;
    double bad = 0;
    for (std::uint64_t z = 0; z < fibonacci(len + 2); ++z) {
      const SymbolString s = zeckendorf_decode(len, z);
      if (!s.legal() || zeckendorf_encode(s) != z) bad += 1;
    }
    rows.push_back({n, "bijection", bad, 0.0});
    double dims = 0;
    for (Sector s : {Sector::StarStar, Sector::StarP, Sector::PStar, Sector::PP, Sector::All}) {
      const auto basis = enumerate_sector(n, s);
      dims += std::abs(static_cast<double>(basis.dim()) - static_cast<double>(sector_dimension(n, s)));
    }
    rows.push_back({n, "sector_dimensions", dims, 0.0});
  }
  return rows;
}

// ---------------------------------------------------------------------------

struct Common {
  std::string format = "json";
};

int cmd_jones(const std::string &input, const std::string &method, double epsilon,
              double confidence, std::uint64_t seed, std::optional<std::int64_t> samples,
              const Common &c, std::ostream &out) {
  const BraidWord b = read_braid(input);
  json j;
  j["braid"] = format_braid(b);
  j["n"] = b.strands;
  j["crossings"] = b.crossings();
  j["writhe"] = writhe(b);
  if (method == "exact") {
    const auto r = jones_value<double>(b);
    j["weighted_trace"] = pair(r.weighted_trace);
    j["value"] = pair(r.value);
  } else if (method == "oracle") {
    const cd t = oracle_trace(b);
    j["weighted_trace"] = pair(t);
    j["value"] = pair(oracle_jones(b));
  } else {
    const auto r = estimate_jones_dqc1(b, epsilon, confidence, seed, samples);
    j["weighted_trace"] = pair(r.result.weighted_trace);
    j["value"] = pair(r.result.value);
    j["estimate"] = pair(r.estimate.estimate);
    j["samples"] = r.estimate.samples;
    j["epsilon"] = r.estimate.epsilon;
    j["confidence"] = r.estimate.confidence;
    j["seed"] = r.estimate.seed;
    j["radius"] = r.radius;
    j["kappa"] = pair(r.kappa);
  }
  j["method"] = method;
  emit(j, c.format, out);
  return kOk;
}

int cmd_rep(const std::string &input, const std::string &sector, const Common &c,
            std::ostream &out) {
  const BraidWord b = read_braid(input);
  const auto op = represent<double>(b, sector_from_name(sector));
  json j;
  j["n"] = b.strands;
  j["sector"] = std::string(sector_name(op.basis.sector));
  json basis = json::array();
  for (const auto &s : op.basis.basis) basis.push_back(to_text(s));
  j["basis"] = basis;
  json rows = json::array();
  for (Eigen::Index r = 0; r < op.matrix.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index k = 0; k < op.matrix.cols(); ++k) row.push_back(pair(op.matrix(r, k)));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  emit(j, c.format, out);
  return kOk;
}

int cmd_check(const std::string &suite, int max_n, const Common &c, std::ostream &out) {
  if (max_n < 1) throw std::invalid_argument("--max-n must be >= 1");
  const int caps = suite == "zeckendorf" ? 20 : 12;
  if (max_n > caps) throw SizeCapError("--max-n above " + std::to_string(caps) + " for suite " + suite);
  std::vector<CheckRow> rows;
  if (suite == "relations") rows = suite_relations(max_n);
  else if (suite == "tl") rows = suite_tl(max_n);
  else if (suite == "markov") rows = suite_markov(max_n);
  else if (suite == "oracle") rows = suite_oracle(max_n);
  else rows = suite_zeckendorf(max_n);
  bool all = true;
  json list = json::array();
  for (const auto &r : rows) {
    const bool pass = r.residual <= r.tolerance;
    all = all && pass;
    list.push_back({{"n", r.n}, {"check", r.check}, {"residual", r.residual},
                    {"tolerance", r.tolerance}, {"pass", pass}});
  }
  json j;
  j["suite"] = suite;
  j["max_n"] = max_n;
  j["rows"] = list;
  j["pass"] = all;
  emit(j, c.format, out);
  return all ? kOk : kCheckFailed;
}

int cmd_density(const Common &c, std::ostream &out) {
  const DensityReport r = density_report();
  json j;
  j["generator_a"] = rotation(r.generator_a);
  j["generator_b"] = rotation(r.generator_b);
  j["axis_separation"] = r.axis_separation;
  j["product"] = rotation(r.product);
  j["two_theta12"] = r.two_theta12;
  j["conjugated_axis_separation"] = r.conjugated_axis_separation;
  j["margin_k5"] = r.margin_k5;
  j["margin_k30"] = r.margin_k30;
  emit(j, c.format, out);
  return kOk;
}

int cmd_decompose(const std::string &mode, int dim, std::uint64_t seed, const Common &c,
                  std::ostream &out) {
  if (dim < 1) throw std::invalid_argument("--dim must be >= 1");
  if (dim > 256) throw SizeCapError("--dim above 256");
  const Eigen::MatrixXcd u = random_unitary(dim, seed);
  Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(dim, dim);
  json factors = json::array();
  int max_support = 0;
  if (mode == "two-level") {
    for (const auto &f : two_level_decompose(u)) {
      prod = prod * embed(f, dim);
      factors.push_back(json::array({f.i, f.j}));
      max_support = 2;
    }
  } else {
    for (const auto &f : seven_block_decompose(u)) {
      prod = prod * f.matrix;
      factors.push_back(f.support);
      max_support = std::max<int>(max_support, static_cast<int>(f.support.size()));
    }
  }
  json j;
  j["mode"] = mode;
  j["dim"] = dim;
  j["seed"] = seed;
  j["factor_count"] = factors.size();
  j["max_support"] = max_support;
  j["reconstruction_error"] = (prod - u).norm();
  j["supports"] = factors;
  emit(j, c.format, out);
  return kOk;
}

int cmd_inchworm(int blocks, int superblocks, const Common &c, std::ostream &out) {
  if (blocks < 1 || superblocks < 2) throw std::invalid_argument("inchworm needs c' >= 1 and >= 2 superblocks");
  const int width = 3 * blocks;
  if (width * superblocks > 63) throw SizeCapError("inchworm demo longer than 63 symbols");
  SymbolString s{0, width * superblocks};
  s.bits |= std::uint64_t{1} << (s.length - superblock_center(0, blocks));
  json steps = json::array();
  steps.push_back({{"superblock", 0}, {"string", to_text(s)}});
  for (int k = 0; k + 1 < superblocks; ++k) {
    s = inchworm_swap(s, k, k + 1, blocks);
    steps.push_back({{"superblock", k + 1}, {"string", to_text(s)}});
  }
  json j;
  j["blocks_per_superblock"] = blocks;
  j["superblocks"] = superblocks;
  j["steps"] = steps;
  emit(j, c.format, out);
  return kOk;
}

int cmd_encode(const std::optional<std::string> &symbols, std::optional<int> length,
               std::optional<std::uint64_t> value, const Common &c, std::ostream &out) {
  SymbolString s;
  if (symbols) {
    s = symbols_from_text(*symbols);
    if (!s.legal()) throw std::invalid_argument("encode: adjacent stars");
  } else if (length && value) {
    if (*length < 1 || *length > 90) throw SizeCapError("encode: length outside 1..90");
    s = zeckendorf_decode(*length, *value);
  } else {
    throw std::invalid_argument("encode: give a symbol string or --length and --value");
  }
  json j;
  j["string"] = to_text(s);
  j["length"] = s.length;
  j["value"] = zeckendorf_encode(s);
  j["sector"] = std::string(sector_name(sector_of(s)));
  emit(j, c.format, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Jones polynomial at the fifth root of unity via the Fibonacci representation",
               "fibjones"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  std::string input;
  std::string method = "exact";
  double epsilon = 0.05;
  double confidence = 0.95;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> samples;
  auto *jones = app.add_subcommand("jones", "Jones value of a braid closure");
  jones->add_option("braid", input, "Inline braid or file")->required();
  jones->add_option("--method", method)->check(CLI::IsMember({"exact", "oracle", "dqc1"}))->capture_default_str();
  jones->add_option("--epsilon", epsilon)->check(CLI::PositiveNumber)->capture_default_str();
  jones->add_option("--confidence", confidence)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  jones->add_option("--seed", seed)->capture_default_str();
  jones->add_option("--samples", samples)->check(CLI::PositiveNumber);

  std::string sector = "*p";
  auto *rep = app.add_subcommand("rep", "Representation matrix of a braid on one sector");
  rep->add_option("braid", input, "Inline braid or file")->required();
  rep->add_option("--sector", sector)->check(CLI::IsMember({"**", "*p", "p*", "pp", "all"}))->capture_default_str();

  std::string suite = "relations";
  int max_n = 6;
  auto *check = app.add_subcommand("check", "Run an invariant suite");
  check->add_option("--suite", suite)
      ->check(CLI::IsMember({"relations", "tl", "markov", "oracle", "zeckendorf"}))
      ->capture_default_str();
  check->add_option("--max-n", max_n)->capture_default_str();

  auto *density = app.add_subcommand("density", "Rotation diagnostics of the normalised generators");

  std::string mode = "two-level";
  int dim = 8;
  auto *decompose = app.add_subcommand("decompose", "Decompose a seeded random unitary");
  decompose->add_option("--mode", mode)->check(CLI::IsMember({"two-level", "seven"}))->capture_default_str();
  decompose->add_option("--dim", dim)->capture_default_str();
  decompose->add_option("--seed", seed)->capture_default_str();

  bool demo = false;
  int blocks = 2;
  int superblocks = 3;
  auto *inchworm = app.add_subcommand("inchworm", "Shuttle a star across superblock centres");
  inchworm->add_flag("--demo", demo, "Run the demonstration")->required();
  inchworm->add_option("--blocks", blocks, "Blocks per superblock")->capture_default_str();
  inchworm->add_option("--superblocks", superblocks)->capture_default_str();

  std::optional<std::string> symbols;
  std::optional<int> length;
  std::optional<std::uint64_t> value;
  auto *encode = app.add_subcommand("encode", "Zeckendorf value of a symbol string, or the reverse");
  encode->add_option("symbols", symbols, "String over p and *");
  encode->add_option("--length", length);
  encode->add_option("--value", value);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*jones) return cmd_jones(input, method, epsilon, confidence, seed, samples, common, out);
    if (*rep) return cmd_rep(input, sector, common, out);
    if (*check) return cmd_check(suite, max_n, common, out);
    if (*density) return cmd_density(common, out);
    if (*decompose) return cmd_decompose(mode, dim, seed, common, out);
    if (*inchworm) return cmd_inchworm(blocks, superblocks, common, out);
    if (*encode) return cmd_encode(symbols, length, value, common, out);
  } catch (const SizeCapError &e) {
    err << "error: " << e.what() << "\n";
    return kSizeCap;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace fibjones::cli
