#pragma once

// Combinatorics of the expanding chart diagram: at step n there are 2^n
// entries, one per heap node k in [2^n, 2^{n+1}-1].  Entry k sources the
// label of node k (a level-(n-1) sign string, or the root for n = 0) and
// reaches the labels of nodes 2k and 2k+1 through the maps phi_k and
// T_k∘phi_k.  Chart tuples collect the composed maps reaching every level-n
// label, prefixed by the shared domain symbol.

#include <cstdint>
#include <string>
#include <vector>

#include "fractopo/errors.hpp"
#include "fractopo/sign_string.hpp"

namespace fractopo {

inline constexpr int kMaxStep = 20;
inline constexpr int kMaxChartStep = 10;

struct StepEntry {
  std::uint64_t k = 0;
  SignString source;  // empty = root
  SignString plus_child;
  SignString minus_child;
};

struct StepDiagram {
  int n = 0;
  std::vector<StepEntry> entries;
};

inline StepDiagram enumerate_step(int n) {
  if (n < 0 || n > kMaxStep) {
    throw capacity_error("step index must be in 0.." + std::to_string(kMaxStep));
  }
  StepDiagram d;
  d.n = n;
  const std::uint64_t lo = std::uint64_t{1} << n;
  const std::uint64_t hi = (std::uint64_t{1} << (n + 1)) - 1;
  d.entries.reserve(hi - lo + 1);
  for (std::uint64_t k = lo; k <= hi; ++k) {
    StepEntry e;
    e.k = k;
    e.source = SignString::from_heap_node(k);
    e.plus_child = SignString::from_heap_node(2 * k);
    e.minus_child = SignString::from_heap_node(2 * k + 1);
    d.entries.push_back(std::move(e));
  }
  return d;
}

// Number of components of a local chart at step n: one shared domain plus one
// composed map per level-n label, i.e. 2^{n+1} + 1.
inline std::uint64_t chart_tuple_size(int n) {
  if (n < 0) throw input_error("step index must be nonnegative");
  if (n >= 63) throw capacity_error("chart tuple size overflows");
  return (std::uint64_t{1} << (n + 1)) + 1;
}

namespace detail {

// Composed map reaching the given label: climb from the root, at each step
// prepending phi_k (toward a '+' child) or T_k∘phi_k (toward a '-' child),
// where k is the heap node of the current prefix.
inline std::string reach_map(const SignString& label) {
  std::string out;
  std::uint64_t node = 1;
  for (int i = 0; i < label.length(); ++i) {
    std::string step = "φ" + std::to_string(node);
    if (label.sign_at(i) == '-') step = "T" + std::to_string(node) + "∘" + step;
    out = out.empty() ? step : step + "∘" + out;
    node = 2 * node + (label.sign_at(i) == '-' ? 1 : 0);
  }
  return out;
}

}  // namespace detail

// Chart tuple at step n: ("Ω", maps reaching each label of Λ_n in order).
inline std::vector<std::string> chart_tuple_labels(int n) {
  if (n < 0 || n > kMaxChartStep) {
    throw capacity_error("chart tuple labels capped at step " +
                         std::to_string(kMaxChartStep));
  }
  std::vector<std::string> out;
  out.reserve(chart_tuple_size(n));
  out.emplace_back("Ω");
  for (const SignString& j : lambda(n)) out.push_back(detail::reach_map(j));
  return out;
}

}  // namespace fractopo
