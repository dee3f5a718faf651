#pragma once

// Sign strings σ0...σn over {+,-} and the index sets Λ_n they form.
// A string of length n+1 indexes a level-n space; ordering is lexicographic
// with + < -.  Each string has a heap node index (root 1, the two children
// of node k being 2k and 2k+1) used by the expansion-tree bookkeeping.

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fractopo/errors.hpp"

namespace fractopo {

inline constexpr int kMaxLambdaLevel = 20;

class SignString {
 public:
  SignString() = default;

  static SignString parse(std::string_view text) {
    if (text.empty()) throw input_error("sign string must be nonempty");
    for (char c : text) {
      if (c != '+' && c != '-') {
        throw input_error("sign string may contain only '+' and '-', got \"" +
                          std::string(text) + "\"");
      }
    }
    return SignString(std::string(text));
  }

  const std::string& text() const { return signs_; }
  bool empty() const { return signs_.empty(); }
  int length() const { return static_cast<int>(signs_.size()); }
  int level() const { return length() - 1; }
  char sign_at(int i) const { return signs_[static_cast<std::size_t>(i)]; }
  char last_sign() const { return signs_.back(); }

  SignString parent() const {
    if (length() < 2) {
      throw domain_error("level-0 sign string \"" + signs_ +
                         "\" has no parent");
    }
    return SignString(signs_.substr(0, signs_.size() - 1));
  }

  std::pair<SignString, SignString> children() const {
    return {SignString(signs_ + '+'), SignString(signs_ + '-')};
  }

  bool is_prefix_of(const SignString& other) const {
    return other.signs_.size() >= signs_.size() &&
           other.signs_.compare(0, signs_.size(), signs_) == 0;
  }

  // Heap index: root (empty string) is 1; appending '+' doubles, '-' doubles
  // plus one.  Level-n strings occupy [2^{n+1}, 2^{n+2}-1].
  std::uint64_t heap_node() const {
    std::uint64_t node = 1;
    for (char c : signs_) node = 2 * node + (c == '-' ? 1 : 0);
    return node;
  }

  // Label of heap node k: its binary expansion with the leading 1 removed,
  // digit 0 -> '+', 1 -> '-'.  Node 1 is the root (empty label).
  static SignString from_heap_node(std::uint64_t k) {
    if (k == 0) throw input_error("heap nodes are numbered from 1");
    std::string s;
    while (k > 1) {
      s.push_back((k & 1) ? '-' : '+');
      k >>= 1;
    }
    std::reverse(s.begin(), s.end());
    return SignString(std::move(s));
  }

  // Lexicographic with + < -.
  friend bool operator<(const SignString& a, const SignString& b) {
    const std::size_t n = std::min(a.signs_.size(), b.signs_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (a.signs_[i] != b.signs_[i]) return a.signs_[i] == '+';
    }
    return a.signs_.size() < b.signs_.size();
  }
  friend bool operator==(const SignString& a, const SignString& b) = default;

 private:
  explicit SignString(std::string s) : signs_(std::move(s)) {}

  std::string signs_;
};

// Λ_n: all sign strings of length n+1 in lexicographic order; 2^{n+1} of them.
inline std::vector<SignString> lambda(int n) {
  if (n < 0) throw input_error("lambda level must be nonnegative");
  if (n > kMaxLambdaLevel) {
    throw capacity_error("lambda level capped at " +
                         std::to_string(kMaxLambdaLevel));
  }
  const std::uint64_t count = std::uint64_t{1} << (n + 1);
  std::vector<SignString> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    // i's bits, most significant first, with 0 -> '+': exactly lex order.
    out.push_back(SignString::from_heap_node(count + i));
  }
  return out;
}

inline SignString parent(const SignString& j) { return j.parent(); }

inline std::pair<SignString, SignString> children(const SignString& j) {
  return j.children();
}

}  // namespace fractopo
