#pragma once

// Exact finite topologies on small integer universes.
//
// A topology on {0..n-1} is kept as a canonically ordered list of bitmask
// subsets (order: by cardinality, then lexicographically on the sorted
// element list).  Canonical form makes equality a plain vector comparison.
// Universes are capped at 24 points so every subset fits a machine word;
// homeomorphism search is capped at 8 points.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fractopo/errors.hpp"

namespace fractopo {

inline constexpr int kMaxUniverse = 24;
inline constexpr int kMaxHomeomorphismUniverse = 8;

using SubsetMask = std::uint32_t;

// Canonical subset order: smaller sets first; ties broken lexicographically
// on the ascending element list.  For masks a != b of equal size the earlier
// set is the one containing the smallest element where they differ.
inline bool subset_less(SubsetMask a, SubsetMask b) {
  const int ca = std::popcount(a);
  const int cb = std::popcount(b);
  if (ca != cb) return ca < cb;
  if (a == b) return false;
  const SubsetMask diff = a ^ b;
  return (a & (diff & (~diff + 1u))) != 0;
}

inline std::string subset_to_string(SubsetMask s) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (int i = 0; i < kMaxUniverse; ++i) {
    if (s & (SubsetMask{1} << i)) {
      if (!first) out << ',';
      out << i;
      first = false;
    }
  }
  out << '}';
  return out.str();
}

// A set system over {0..universe_size-1}: a candidate topology.  Construction
// canonicalizes and range-checks; it does not verify the topology axioms
// (see is_topology).
class FiniteTopology {
 public:
  static FiniteTopology make(int universe_size, std::vector<SubsetMask> opens) {
    if (universe_size < 1 || universe_size > kMaxUniverse) {
      throw input_error("universe size must be in 1.." +
                        std::to_string(kMaxUniverse) + ", got " +
                        std::to_string(universe_size));
    }
    const SubsetMask universe = full_mask(universe_size);
    for (SubsetMask s : opens) {
      if ((s & ~universe) != 0) {
        throw input_error("subset " + subset_to_string(s) +
                          " has elements outside universe of size " +
                          std::to_string(universe_size));
      }
    }
    std::sort(opens.begin(), opens.end(), subset_less);
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
    return FiniteTopology(universe_size, std::move(opens));
  }

  static FiniteTopology from_sets(int universe_size,
                                  const std::vector<std::vector<int>>& sets) {
    std::vector<SubsetMask> opens;
    opens.reserve(sets.size());
    for (const auto& set : sets) {
      SubsetMask m = 0;
      for (int e : set) {
        if (e < 0 || e >= kMaxUniverse) {
          throw input_error("point index " + std::to_string(e) +
                            " out of range");
        }
        m |= SubsetMask{1} << e;
      }
      opens.push_back(m);
    }
    return make(universe_size, std::move(opens));
  }

  static FiniteTopology indiscrete(int universe_size) {
    return make(universe_size, {0, full_mask(universe_size)});
  }

  static FiniteTopology discrete(int universe_size) {
    if (universe_size > 16) {
      throw capacity_error("discrete topology on " +
                           std::to_string(universe_size) +
                           " points is too large to enumerate");
    }
    const SubsetMask universe = full_mask(universe_size);
    std::vector<SubsetMask> opens(static_cast<std::size_t>(universe) + 1);
    std::iota(opens.begin(), opens.end(), SubsetMask{0});
    return make(universe_size, std::move(opens));
  }

  // {∅, {0}, {0,1}} on two points.
  static FiniteTopology sierpinski() { return make(2, {0b00, 0b01, 0b11}); }

  int universe_size() const { return universe_size_; }
  SubsetMask universe_mask() const { return full_mask(universe_size_); }
  const std::vector<SubsetMask>& opens() const { return opens_; }
  int open_count() const { return static_cast<int>(opens_.size()); }

  bool contains(SubsetMask s) const {
    return std::binary_search(opens_.begin(), opens_.end(), s, subset_less);
  }

  bool operator==(const FiniteTopology& other) const = default;

  static SubsetMask full_mask(int universe_size) {
    return universe_size >= 32 ? ~SubsetMask{0}
                               : (SubsetMask{1} << universe_size) - 1;
  }

 private:
  FiniteTopology(int universe_size, std::vector<SubsetMask> opens)
      : universe_size_(universe_size), opens_(std::move(opens)) {}

  int universe_size_;
  std::vector<SubsetMask> opens_;
};

enum class TopologyAxiom {
  none,
  contains_empty,
  contains_universe,
  intersection_closed,
  union_closed,
};

inline const char* axiom_name(TopologyAxiom a) {
  switch (a) {
    case TopologyAxiom::none: return "none";
    case TopologyAxiom::contains_empty: return "contains-empty";
    case TopologyAxiom::contains_universe: return "contains-universe";
    case TopologyAxiom::intersection_closed: return "intersection-closed";
    case TopologyAxiom::union_closed: return "union-closed";
  }
  return "?";
}

struct TopologyCheck {
  bool valid = true;
  TopologyAxiom failed_axiom = TopologyAxiom::none;
  // For closure failures, the offending pair and its missing combination.
  SubsetMask witness_a = 0;
  SubsetMask witness_b = 0;
  SubsetMask missing = 0;

  std::string describe() const {
    if (valid) return "valid topology";
    std::ostringstream out;
    out << "violates " << axiom_name(failed_axiom);
    if (failed_axiom == TopologyAxiom::intersection_closed ||
        failed_axiom == TopologyAxiom::union_closed) {
      out << ": " << subset_to_string(witness_a) << " and "
          << subset_to_string(witness_b) << " give "
          << subset_to_string(missing) << " which is not open";
    }
    return out.str();
  }
};

// Verifies the three axioms on a candidate set system.  Closure under
// arbitrary unions reduces to pairwise closure for finite collections.
inline TopologyCheck is_topology(const FiniteTopology& t) {
  TopologyCheck r;
  if (!t.contains(0)) {
    r.valid = false;
    r.failed_axiom = TopologyAxiom::contains_empty;
    return r;
  }
  if (!t.contains(t.universe_mask())) {
    r.valid = false;
    r.failed_axiom = TopologyAxiom::contains_universe;
    return r;
  }
  const auto& opens = t.opens();
  for (std::size_t i = 0; i < opens.size(); ++i) {
    for (std::size_t j = i + 1; j < opens.size(); ++j) {
      const SubsetMask inter = opens[i] & opens[j];
      if (!t.contains(inter)) {
        r.valid = false;
        r.failed_axiom = TopologyAxiom::intersection_closed;
        r.witness_a = opens[i];
        r.witness_b = opens[j];
        r.missing = inter;
        return r;
      }
      const SubsetMask uni = opens[i] | opens[j];
      if (!t.contains(uni)) {
        r.valid = false;
        r.failed_axiom = TopologyAxiom::union_closed;
        r.witness_a = opens[i];
        r.witness_b = opens[j];
        r.missing = uni;
        return r;
      }
    }
  }
  return r;
}

inline TopologyCheck is_topology(int universe_size,
                                 std::vector<SubsetMask> opens) {
  return is_topology(FiniteTopology::make(universe_size, std::move(opens)));
}

// Subspace (induced) topology {O ∩ S : O ∈ T}, re-indexed to the points of S
// in ascending order.
inline FiniteTopology subspace_topology(const FiniteTopology& t, SubsetMask s) {
  if ((s & ~t.universe_mask()) != 0) {
    throw input_error("subspace " + subset_to_string(s) +
                      " is not contained in the universe");
  }
  if (s == 0) {
    throw input_error("subspace topology on the empty set is not defined");
  }
  // Position of each retained point within S.
  std::array<int, kMaxUniverse> position{};
  int new_size = 0;
  for (int i = 0; i < t.universe_size(); ++i) {
    if (s & (SubsetMask{1} << i)) position[static_cast<std::size_t>(i)] = new_size++;
  }
  std::vector<SubsetMask> traces;
  traces.reserve(t.opens().size());
  for (SubsetMask open : t.opens()) {
    SubsetMask trace = open & s;
    SubsetMask re = 0;
    while (trace) {
      const int bit = std::countr_zero(trace);
      re |= SubsetMask{1} << position[static_cast<std::size_t>(bit)];
      trace &= trace - 1;
    }
    traces.push_back(re);
  }
  return FiniteTopology::make(new_size, std::move(traces));
}

// True iff every open of t1 is an open of t2 (t1 ⊆ t2 as set systems on the
// same carrier).
inline bool is_coarser(const FiniteTopology& t1, const FiniteTopology& t2) {
  if (t1.universe_size() != t2.universe_size()) {
    throw input_error("coarseness comparison requires matching universes");
  }
  return std::all_of(t1.opens().begin(), t1.opens().end(),
                     [&](SubsetMask o) { return t2.contains(o); });
}

namespace detail {

// Multiset of per-point membership degrees (number of opens containing each
// point), sorted; a homeomorphism invariant used for pruning.
inline std::vector<int> degree_profile(const FiniteTopology& t) {
  std::vector<int> deg(static_cast<std::size_t>(t.universe_size()), 0);
  for (SubsetMask open : t.opens()) {
    SubsetMask m = open;
    while (m) {
      deg[static_cast<std::size_t>(std::countr_zero(m))]++;
      m &= m - 1;
    }
  }
  return deg;
}

inline SubsetMask apply_permutation(SubsetMask s, const std::vector<int>& perm) {
  SubsetMask out = 0;
  while (s) {
    const int bit = std::countr_zero(s);
    out |= SubsetMask{1} << perm[static_cast<std::size_t>(bit)];
    s &= s - 1;
  }
  return out;
}

}  // namespace detail

// Brute-force homeomorphism test: returns a point bijection p (point i of t1
// maps to p[i] of t2) carrying opens onto opens bijectively, if one exists.
// Search space is pruned by open count and per-point degree compatibility.
inline std::optional<std::vector<int>> are_homeomorphic(
    const FiniteTopology& t1, const FiniteTopology& t2) {
  if (t1.universe_size() > kMaxHomeomorphismUniverse ||
      t2.universe_size() > kMaxHomeomorphismUniverse) {
    throw capacity_error("homeomorphism search is limited to " +
                         std::to_string(kMaxHomeomorphismUniverse) +
                         " points");
  }
  if (t1.universe_size() != t2.universe_size()) return std::nullopt;
  if (t1.open_count() != t2.open_count()) return std::nullopt;

  const std::vector<int> deg1 = detail::degree_profile(t1);
  const std::vector<int> deg2 = detail::degree_profile(t2);
  {
    std::vector<int> a = deg1, b = deg2;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  const int n = t1.universe_size();
  std::vector<int> perm(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);

  auto opens_match = [&]() {
    for (SubsetMask open : t1.opens()) {
      if (!t2.contains(detail::apply_permutation(open, perm))) return false;
    }
    return true;  // injective map of equal-sized systems is onto
  };

  auto search = [&](auto&& self, int point) -> bool {
    if (point == n) return opens_match();
    for (int image = 0; image < n; ++image) {
      if (used[static_cast<std::size_t>(image)]) continue;
      if (deg1[static_cast<std::size_t>(point)] !=
          deg2[static_cast<std::size_t>(image)]) continue;
      perm[static_cast<std::size_t>(point)] = image;
      used[static_cast<std::size_t>(image)] = true;
      if (self(self, point + 1)) return true;
      used[static_cast<std::size_t>(image)] = false;
      perm[static_cast<std::size_t>(point)] = -1;
    }
    return false;
  };

  if (search(search, 0)) return perm;
  return std::nullopt;
}

}  // namespace fractopo
