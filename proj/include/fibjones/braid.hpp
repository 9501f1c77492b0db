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

#ifndef FIBJONES_BRAID_HPP
#define FIBJONES_BRAID_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fibjones/errors.hpp"

namespace fibjones {

/// Raised on malformed braid text. `position()` is a byte offset into the input.
class BraidParseError : public std::invalid_argument {
 public:
  BraidParseError(const std::string &what, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A braid on `strands` strands as an uncollapsed signed generator word.
/// Entry +i is sigma_i and -i is its inverse, with 1 <= i < strands.
struct BraidWord {
  int strands = 1;
  std::vector<int> word;

  std::size_t crossings() const { return word.size(); }
  bool operator==(const BraidWord &) const = default;
};

/// Throws std::invalid_argument if an invariant of `b` is broken.
void validate(const BraidWord &b);

/// Accepts "B<n>: g g g" (with `#` comments) or the two-line file form
/// "strands: n" / "word: g g g".
BraidWord parse_braid(std::string_view text);

/// Canonical form "B<n>: g g g"; parse_braid(format_braid(b)) == b.
std::string format_braid(const BraidWord &b);

int writhe(const BraidWord &b);

/// g^{-1} b g with the word [-g] + word + [g].
BraidWord conjugate(const BraidWord &b, int g);

/// b embedded in B_{n+1} with sigma_n^{sign} appended.
BraidWord stabilize(const BraidWord &b, int sign);

BraidWord compose(const BraidWord &a, const BraidWord &b);
BraidWord inverse(const BraidWord &b);

}  // namespace fibjones

#endif  // FIBJONES_BRAID_HPP
