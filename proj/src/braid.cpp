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

#include "fibjones/braid.hpp"

#include <cctype>
#include <charconv>
#include <climits>
#include <cstdlib>

namespace fibjones {

BraidParseError::BraidParseError(const std::string &what, std::size_t position)
    : std::invalid_argument(what + " at position " + std::to_string(position)),
      position_(position) {}

void validate(const BraidWord &b) {
  if (b.strands < 1) {
    throw std::invalid_argument("braid must have at least one strand");
  }
  for (int g : b.word) {
    if (g == 0 || std::abs(g) >= b.strands) {
      throw std::invalid_argument("generator " + std::to_string(g) +
                                  " out of range for " +
                                  std::to_string(b.strands) + " strands");
    }
  }
}

namespace {

// Cursor over the input with comments blanked to spaces so offsets stay exact.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {
    bool in_comment = false;
    for (char &c : text_) {
      if (c == '\n') {
        in_comment = false;
      } else if (c == '#') {
        in_comment = true;
      }
      if (in_comment) c = ' ';
    }
  }

  void skip_space(bool newlines) {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n' && !newlines) return;
      if (!std::isspace(static_cast<unsigned char>(c))) return;
      ++pos_;
    }
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  std::size_t pos() const { return pos_; }

  bool consume_word(std::string_view w) {
    if (text_.compare(pos_, w.size(), w) == 0) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (peek() != c) {
      throw BraidParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  long read_int() {
    std::size_t start = pos_;
    std::size_t end = pos_;
    if (end < text_.size() && (text_[end] == '-' || text_[end] == '+')) ++end;
    while (end < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[end]))) {
      ++end;
    }
    const char *first = text_.data() + start;
    if (*first == '+') ++first;
    long value = 0;
    auto [ptr, ec] = std::from_chars(first, text_.data() + end, value);
    if (ec != std::errc() || ptr != text_.data() + end || end == start) {
      throw BraidParseError("expected integer", start);
    }
    if (end < text_.size() && text_[end] != ':' &&
        !std::isspace(static_cast<unsigned char>(text_[end]))) {
      throw BraidParseError("unexpected character", end);
    }
    pos_ = end;
    return value;
  }

 private:
  std::string text_;
  std::size_t pos_ = 0;
};

void check_generators(const BraidWord &b, const std::vector<std::size_t> &at) {
  for (std::size_t k = 0; k < b.word.size(); ++k) {
    int g = b.word[k];
    if (g == 0) throw BraidParseError("generator 0 is not allowed", at[k]);
    if (std::abs(g) >= b.strands) {
      throw BraidParseError("generator index " + std::to_string(std::abs(g)) +
                                " >= strands " + std::to_string(b.strands),
                            at[k]);
    }
  }
}

int read_strands(Scanner &s) {
  std::size_t at = s.pos();
  long n = s.read_int();
  if (n < 1 || n > INT_MAX) throw BraidParseError("strand count must be >= 1", at);
  return static_cast<int>(n);
}

void read_word(Scanner &s, BraidWord &b, std::vector<std::size_t> &at) {
  for (;;) {
    s.skip_space(false);
    if (s.at_end() || s.peek() == '\n') return;
    at.push_back(s.pos());
    long g = s.read_int();
    if (g < INT_MIN || g > INT_MAX) throw BraidParseError("generator overflow", at.back());
    b.word.push_back(static_cast<int>(g));
  }
}

}  // namespace

BraidWord parse_braid(std::string_view text) {
  Scanner s(text);
  BraidWord b;
  std::vector<std::size_t> at;
  s.skip_space(true);
  if (s.consume_word("strands")) {
    s.skip_space(false);
    s.expect(':');
    s.skip_space(false);
    b.strands = read_strands(s);
    s.skip_space(true);
    if (!s.consume_word("word")) throw BraidParseError("expected 'word:'", s.pos());
    s.skip_space(false);
    s.expect(':');
    read_word(s, b, at);
  } else if (s.peek() == 'B') {
    s.expect('B');
    b.strands = read_strands(s);
    s.skip_space(false);
    s.expect(':');
    read_word(s, b, at);
  } else {
    throw BraidParseError("expected 'B<n>:' or 'strands:'", s.pos());
  }
  s.skip_space(true);
  if (!s.at_end()) throw BraidParseError("trailing input", s.pos());
  check_generators(b, at);
  return b;
}

std::string format_braid(const BraidWord &b) {
  std::string out = "B" + std::to_string(b.strands) + ":";
  for (int g : b.word) out += " " + std::to_string(g);
  return out;
}

int writhe(const BraidWord &b) {
  int w = 0;
  for (int g : b.word) w += g > 0 ? 1 : -1;
  return w;
}

BraidWord conjugate(const BraidWord &b, int g) {
  if (g == 0 || std::abs(g) >= b.strands) {
    throw std::invalid_argument("conjugating generator out of range");
  }
  BraidWord out{b.strands, {}};
  out.word.reserve(b.word.size() + 2);
  out.word.push_back(-g);
  out.word.insert(out.word.end(), b.word.begin(), b.word.end());
  out.word.push_back(g);
  return out;
}

BraidWord stabilize(const BraidWord &b, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("stabilize sign must be +1 or -1");
  BraidWord out{b.strands + 1, b.word};
  out.word.push_back(sign * b.strands);
  return out;
}

BraidWord compose(const BraidWord &a, const BraidWord &b) {
  if (a.strands != b.strands) throw std::invalid_argument("strand-count mismatch in compose");
  BraidWord out{a.strands, a.word};
  out.word.insert(out.word.end(), b.word.begin(), b.word.end());
  return out;
}

BraidWord inverse(const BraidWord &b) {
  BraidWord out{b.strands, {}};
  out.word.assign(b.word.rbegin(), b.word.rend());
  for (int &g : out.word) g = -g;
  return out;
}

}  // namespace fibjones
