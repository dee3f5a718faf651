#pragma once

// Reference family fixtures.  The doubling fixture starts from Sierpiński
// spaces at level 0 and, for each child key, adds one fresh point whose
// opens double the parent's: T_child = T_parent ∪ {O ∪ {new} : O ∈ T_parent}.
// Point names encode ancestry (the heap nodes of the key's prefixes plus a
// shared origin 0), so that exactly one same-level carrier sits inside each
// child carrier — parent chains are unique by name inclusion, and sibling
// carriers overlap exactly in their parent's points.
//
// Each targeted mutation breaks exactly one of the five family properties.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fractopo/errors.hpp"
#include "fractopo/fractal_family.hpp"
#include "fractopo/sign_string.hpp"

namespace fractopo {

namespace detail {

inline std::vector<int> fixture_carrier(const SignString& key) {
  std::vector<int> carrier{0};
  std::uint64_t node = 1;
  for (int i = 0; i < key.length(); ++i) {
    node = 2 * node + (key.sign_at(i) == '-' ? 1 : 0);
    carrier.push_back(static_cast<int>(node));
  }
  return carrier;  // ascending: prefixes have strictly growing heap nodes
}

// Sierpiński doubled (level) times: on level n the carrier has n+2 points
// (local indices), opens = previous opens plus their copies extended by the
// newest point.
inline FiniteTopology fixture_topology(int level) {
  std::vector<SubsetMask> opens{0b00, 0b01, 0b11};
  for (int n = 1; n <= level; ++n) {
    const SubsetMask fresh = SubsetMask{1} << (n + 1);
    const std::size_t count = opens.size();
    for (std::size_t i = 0; i < count; ++i) opens.push_back(opens[i] | fresh);
  }
  return FiniteTopology::make(level + 2, std::move(opens));
}

inline ParentLink fixture_link(const SignString& child) {
  ParentLink link;
  link.parent = child.parent();
  for (int name : fixture_carrier(link.parent)) {
    link.embedding.emplace_back(name, name);
  }
  return link;
}

}  // namespace detail

// Doubling fixture with levels 0..max_level (2^{n+1} keys per level).
inline FractalFamilySpec make_doubling_fixture(int max_level) {
  if (max_level < 0 || max_level > kMaxFamilyLevels) {
    throw input_error("fixture levels must be in 0.." +
                      std::to_string(kMaxFamilyLevels));
  }
  std::vector<std::map<SignString, FamilyNode>> levels(
      static_cast<std::size_t>(max_level) + 1);
  std::map<SignString, ParentLink> links;
  for (int n = 0; n <= max_level; ++n) {
    for (const SignString& key : lambda(n)) {
      levels[static_cast<std::size_t>(n)][key] =
          FamilyNode{detail::fixture_carrier(key), detail::fixture_topology(n)};
      if (n > 0) links[key] = detail::fixture_link(key);
    }
  }
  return FractalFamilySpec::make(std::move(levels), std::move(links));
}

enum class FamilyFault {
  shrink_top_level,      // breaks i: drop the '-' sibling of every top key
  break_closure,         // breaks ii: remove one open from every top topology
  swap_one_topology,     // breaks iii: one top key gets a non-equivalent one
  orphan_one_key,        // breaks iv: delete one parent link
  starve_one_parent,     // breaks v: repoint both children of one key
};

inline const char* fault_name(FamilyFault f) {
  switch (f) {
    case FamilyFault::shrink_top_level: return "shrink-top-level";
    case FamilyFault::break_closure: return "break-closure";
    case FamilyFault::swap_one_topology: return "swap-one-topology";
    case FamilyFault::orphan_one_key: return "orphan-one-key";
    case FamilyFault::starve_one_parent: return "starve-one-parent";
  }
  return "?";
}

// Applies one single-fault mutation to a doubling fixture.  Requires at
// least two levels.
inline FractalFamilySpec mutate_fixture(int max_level, FamilyFault fault) {
  if (max_level < 1) throw input_error("mutations need at least two levels");
  const int top = max_level;

  std::vector<std::map<SignString, FamilyNode>> levels(
      static_cast<std::size_t>(max_level) + 1);
  std::map<SignString, ParentLink> links;
  for (int n = 0; n <= max_level; ++n) {
    for (const SignString& key : lambda(n)) {
      levels[static_cast<std::size_t>(n)][key] =
          FamilyNode{detail::fixture_carrier(key), detail::fixture_topology(n)};
      if (n > 0) links[key] = detail::fixture_link(key);
    }
  }

  auto& top_level = levels[static_cast<std::size_t>(top)];

  switch (fault) {
    case FamilyFault::shrink_top_level: {
      // Keep only the '+'-ending top keys: counts stop growing, every
      // remaining key keeps its parent, every parent keeps one child.
      for (auto it = top_level.begin(); it != top_level.end();) {
        if (it->first.last_sign() == '-') {
          links.erase(it->first);
          it = top_level.erase(it);
        } else {
          ++it;
        }
      }
      break;
    }
    case FamilyFault::break_closure: {
      // Remove {local 0, newest point} from every top topology: the union of
      // {0} and {newest} goes missing while every trace survives (each
      // removed open shares its trace with {0}).
      for (auto& [key, node] : top_level) {
        const SubsetMask removed =
            0b01 | (SubsetMask{1} << (node.topology.universe_size() - 1));
        std::vector<SubsetMask> opens;
        for (SubsetMask open : node.topology.opens()) {
          if (open != removed) opens.push_back(open);
        }
        node.topology =
            FiniteTopology::make(node.topology.universe_size(), std::move(opens));
      }
      break;
    }
    case FamilyFault::swap_one_topology: {
      // First top key gets parent-opens plus the full set: still a valid
      // topology with the same trace, but a different open count.
      auto& node = top_level.begin()->second;
      const FiniteTopology parent_shape = detail::fixture_topology(top - 1);
      std::vector<SubsetMask> opens(parent_shape.opens());
      opens.push_back(node.topology.universe_mask());
      node.topology =
          FiniteTopology::make(node.topology.universe_size(), std::move(opens));
      break;
    }
    case FamilyFault::orphan_one_key: {
      links.erase(std::prev(top_level.end())->first);  // last top key
      break;
    }
    case FamilyFault::starve_one_parent: {
      // Repoint both children of the last level-(top-1) key to its
      // lexicographic predecessor; carriers force an explicit embedding.
      const auto& parents = levels[static_cast<std::size_t>(top - 1)];
      const SignString starved = std::prev(parents.end())->first;
      const SignString foster = std::prev(std::prev(parents.end()))->first;
      const auto foster_carrier = detail::fixture_carrier(foster);
      for (auto& [child, link] : links) {
        if (!(link.parent == starved)) continue;
        link.parent = foster;
        const auto child_carrier = detail::fixture_carrier(child);
        link.embedding.clear();
        // Ascending name order pairs the shared origin and the ancestry
        // points positionally.
        for (std::size_t i = 0; i < foster_carrier.size(); ++i) {
          link.embedding.emplace_back(foster_carrier[i], child_carrier[i]);
        }
      }
      break;
    }
  }
  return FractalFamilySpec::make(std::move(levels), std::move(links));
}

}  // namespace fractopo
