#pragma once

// Model checker for fractal families of topological spaces: a level-indexed
// family of finite spaces keyed by sign strings, with declared parent links
// and carrier embeddings.  The five defining properties are checked
// exhaustively; chains, induced-topology formulas and the weakest topology
// are derived from the property witnesses.
//
// Conventions:
//   - inclusion chains use non-strict ⊆ throughout;
//   - open-set comparisons across levels happen in the child's carrier
//     coordinates, transporting parent opens through the declared embedding;
//   - sign order is + < - everywhere.

#include <algorithm>
#include <array>
#include <bit>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fractopo/errors.hpp"
#include "fractopo/finite_topology.hpp"
#include "fractopo/sign_string.hpp"

namespace fractopo {

inline constexpr int kMaxFamilyLevels = 6;

// One space of the family: a carrier of named points (ascending, names are
// arbitrary small nonnegative integers) and a topology over the carrier's
// local indices (position in the carrier list).
struct FamilyNode {
  std::vector<int> carrier;
  FiniteTopology topology = FiniteTopology::indiscrete(1);
};

// Declared parent of a key one level up, with an injective point map from
// parent carrier names to child carrier names.
struct ParentLink {
  SignString parent;
  std::vector<std::pair<int, int>> embedding;  // parent name -> child name
};

class FractalFamilySpec {
 public:
  static FractalFamilySpec make(
      std::vector<std::map<SignString, FamilyNode>> levels,
      std::map<SignString, ParentLink> links) {
    FractalFamilySpec spec;
    spec.levels_ = std::move(levels);
    spec.links_ = std::move(links);
    spec.validate();
    return spec;
  }

  int max_level() const { return static_cast<int>(levels_.size()) - 1; }
  const std::map<SignString, FamilyNode>& level(int n) const {
    if (n < 0 || n > max_level()) {
      throw input_error("level " + std::to_string(n) + " out of range");
    }
    return levels_[static_cast<std::size_t>(n)];
  }
  const std::map<SignString, ParentLink>& links() const { return links_; }

  const FamilyNode& node(const SignString& key) const {
    const auto& lvl = level(key.level());
    const auto it = lvl.find(key);
    if (it == lvl.end()) {
      throw input_error("key " + key.text() + " not present in the family");
    }
    return it->second;
  }

  const ParentLink* link_of(const SignString& child) const {
    const auto it = links_.find(child);
    return it == links_.end() ? nullptr : &it->second;
  }

  // Children that declare `key` as parent, in lexicographic order.
  std::vector<SignString> declared_children(const SignString& key) const {
    std::vector<SignString> out;
    for (const auto& [child, link] : links_) {
      if (link.parent == key) out.push_back(child);
    }
    return out;
  }

 private:
  void validate() const {
    if (levels_.empty()) throw input_error("family needs at least level 0");
    if (max_level() > kMaxFamilyLevels) {
      throw capacity_error("family levels capped at " +
                           std::to_string(kMaxFamilyLevels));
    }
    for (int n = 0; n <= max_level(); ++n) {
      const auto& lvl = levels_[static_cast<std::size_t>(n)];
      if (lvl.empty()) {
        throw input_error("level " + std::to_string(n) + " has no keys");
      }
      if (lvl.size() > (std::size_t{1} << (n + 1))) {
        throw input_error("level " + std::to_string(n) + " has more than 2^" +
                          std::to_string(n + 1) + " keys");
      }
      for (const auto& [key, node] : lvl) {
        if (key.level() != n) {
          throw input_error("key " + key.text() + " is filed at level " +
                            std::to_string(n));
        }
        if (node.carrier.empty()) {
          throw input_error("key " + key.text() + " has an empty carrier");
        }
        if (!std::is_sorted(node.carrier.begin(), node.carrier.end()) ||
            std::adjacent_find(node.carrier.begin(), node.carrier.end()) !=
                node.carrier.end()) {
          throw input_error("carrier of " + key.text() +
                            " must list distinct ascending point names");
        }
        if (node.topology.universe_size() !=
            static_cast<int>(node.carrier.size())) {
          throw input_error("topology of " + key.text() +
                            " does not match its carrier size");
        }
      }
    }
    for (const auto& [child, link] : links_) {
      if (child.level() < 1 || child.level() > max_level()) {
        throw input_error("link child " + child.text() +
                          " is not a positive-level key");
      }
      if (link.parent.level() != child.level() - 1) {
        throw input_error("link " + child.text() + " -> " +
                          link.parent.text() + " does not cross one level");
      }
      const FamilyNode& c = node(child);
      const FamilyNode& p = node(link.parent);
      if (link.embedding.size() != p.carrier.size()) {
        throw input_error("embedding of " + child.text() +
                          " must cover the parent carrier");
      }
      std::vector<int> sources, targets;
      for (const auto& [from, to] : link.embedding) {
        sources.push_back(from);
        targets.push_back(to);
        if (!std::binary_search(p.carrier.begin(), p.carrier.end(), from)) {
          throw input_error("embedding of " + child.text() +
                            " maps unknown parent point " +
                            std::to_string(from));
        }
        if (!std::binary_search(c.carrier.begin(), c.carrier.end(), to)) {
          throw input_error("embedding of " + child.text() +
                            " lands outside the child carrier at " +
                            std::to_string(to));
        }
      }
      std::sort(sources.begin(), sources.end());
      std::sort(targets.begin(), targets.end());
      if (std::adjacent_find(sources.begin(), sources.end()) != sources.end() ||
          std::adjacent_find(targets.begin(), targets.end()) != targets.end()) {
        throw input_error("embedding of " + child.text() +
                          " is not an injective point map");
      }
    }
  }

  std::vector<std::map<SignString, FamilyNode>> levels_;
  std::map<SignString, ParentLink> links_;
};

namespace detail {

inline int local_index(const std::vector<int>& carrier, int name) {
  const auto it = std::lower_bound(carrier.begin(), carrier.end(), name);
  if (it == carrier.end() || *it != name) {
    throw input_error("point name " + std::to_string(name) +
                      " not in carrier");
  }
  return static_cast<int>(it - carrier.begin());
}

// Embedding as a local-index map: entry i is the child local index of the
// parent's local point i.
inline std::vector<int> local_embedding(const FamilyNode& parent,
                                        const FamilyNode& child,
                                        const ParentLink& link) {
  std::vector<int> map(parent.carrier.size(), -1);
  for (const auto& [from, to] : link.embedding) {
    map[static_cast<std::size_t>(local_index(parent.carrier, from))] =
        local_index(child.carrier, to);
  }
  return map;
}

inline SubsetMask transport_mask(SubsetMask parent_mask,
                                 const std::vector<int>& emb) {
  SubsetMask out = 0;
  while (parent_mask) {
    const int bit = std::countr_zero(parent_mask);
    out |= SubsetMask{1} << emb[static_cast<std::size_t>(bit)];
    parent_mask &= parent_mask - 1;
  }
  return out;
}

inline SubsetMask image_mask(const std::vector<int>& emb) {
  SubsetMask out = 0;
  for (int target : emb) out |= SubsetMask{1} << target;
  return out;
}

// Pull a child-coordinate subset of the embedding image back to parent
// coordinates.
inline SubsetMask pullback_mask(SubsetMask child_mask,
                                const std::vector<int>& emb) {
  SubsetMask out = 0;
  for (std::size_t i = 0; i < emb.size(); ++i) {
    if (child_mask & (SubsetMask{1} << emb[i])) out |= SubsetMask{1} << i;
  }
  return out;
}

// {O ∩ image : O ∈ child topology} pulled back to parent coordinates.
inline FiniteTopology induced_on_parent(const FiniteTopology& child_topology,
                                        const std::vector<int>& emb) {
  const SubsetMask image = image_mask(emb);
  std::vector<SubsetMask> traces;
  traces.reserve(child_topology.opens().size());
  for (SubsetMask open : child_topology.opens()) {
    traces.push_back(pullback_mask(open & image, emb));
  }
  return FiniteTopology::make(static_cast<int>(emb.size()), std::move(traces));
}

// Does the subspace identity T_parent = {O ∩ X_parent : O ∈ T_child} hold
// through the declared embedding?
inline bool trace_identity_holds(const FractalFamilySpec& spec,
                                 const SignString& child_key,
                                 const ParentLink& link) {
  const FamilyNode& child = spec.node(child_key);
  const FamilyNode& parent = spec.node(link.parent);
  const auto emb = local_embedding(parent, child, link);
  return induced_on_parent(child.topology, emb) == parent.topology;
}

// Does T_parent, transported into child coordinates, sit inside T_child?
inline bool transported_inclusion_holds(const FractalFamilySpec& spec,
                                        const SignString& child_key,
                                        const ParentLink& link) {
  const FamilyNode& child = spec.node(child_key);
  const FamilyNode& parent = spec.node(link.parent);
  const auto emb = local_embedding(parent, child, link);
  for (SubsetMask open : parent.topology.opens()) {
    if (!child.topology.contains(transport_mask(open, emb))) return false;
  }
  return true;
}

}  // namespace detail

struct PropertyReport {
  // Properties, in order:
  //   0: level key counts strictly increase
  //   1: every space is a topology
  //   2: same-level topologies are pairwise equivalent (homeomorphic)
  //   3: every positive-level key has exactly one declared parent whose
  //      induced subspace topology equals the parent topology
  //   4: every key below the top level has a child into which its topology
  //      includes and which induces it back
  std::array<bool, 5> pass{true, true, true, true, true};
  std::array<std::string, 5> witness{};

  bool all_pass() const {
    return std::all_of(pass.begin(), pass.end(), [](bool b) { return b; });
  }

  std::string describe() const {
    static const char* names[5] = {
        "i (growing index sets)", "ii (spaces are topologies)",
        "iii (same-level equivalence)", "iv (unique inducing parent)",
        "v (topology-increasing child)"};
    std::ostringstream out;
    for (int p = 0; p < 5; ++p) {
      out << "property " << names[p] << ": "
          << (pass[static_cast<std::size_t>(p)] ? "pass" : "FAIL");
      if (!pass[static_cast<std::size_t>(p)]) {
        out << " [" << witness[static_cast<std::size_t>(p)] << "]";
      }
      out << '\n';
    }
    return out.str();
  }
};

inline PropertyReport check_fractal_family(const FractalFamilySpec& spec) {
  PropertyReport r;
  const int top = spec.max_level();

  // i: strictly growing key counts.
  for (int n = 0; n < top; ++n) {
    if (spec.level(n + 1).size() <= spec.level(n).size()) {
      r.pass[0] = false;
      r.witness[0] = "level " + std::to_string(n + 1) + " has " +
                     std::to_string(spec.level(n + 1).size()) +
                     " keys, level " + std::to_string(n) + " has " +
                     std::to_string(spec.level(n).size());
      break;
    }
  }

  // ii: every space satisfies the topology axioms.
  for (int n = 0; n <= top && r.pass[1]; ++n) {
    for (const auto& [key, node] : spec.level(n)) {
      const TopologyCheck check = is_topology(node.topology);
      if (!check.valid) {
        r.pass[1] = false;
        r.witness[1] = key.text() + ": " + check.describe();
        break;
      }
    }
  }

  // iii: same-level topologies pairwise homeomorphic.
  for (int n = 0; n <= top && r.pass[2]; ++n) {
    const auto& lvl = spec.level(n);
    for (auto it = lvl.begin(); it != lvl.end() && r.pass[2]; ++it) {
      for (auto jt = std::next(it); jt != lvl.end(); ++jt) {
        if (!are_homeomorphic(it->second.topology, jt->second.topology)) {
          r.pass[2] = false;
          r.witness[2] = "level " + std::to_string(n) + " keys " +
                         it->first.text() + " and " + jt->first.text() +
                         " are not equivalent";
          break;
        }
      }
    }
  }

  // iv: unique declared parent with the subspace identity.
  for (int n = 1; n <= top && r.pass[3]; ++n) {
    for (const auto& [key, node] : spec.level(n)) {
      const ParentLink* link = spec.link_of(key);
      if (link == nullptr) {
        r.pass[3] = false;
        r.witness[3] = "key " + key.text() + " has no declared parent";
        break;
      }
      if (!detail::trace_identity_holds(spec, key, *link)) {
        r.pass[3] = false;
        r.witness[3] = "subspace identity fails for " + key.text() + " -> " +
                       link->parent.text();
        break;
      }
    }
  }

  // v: every key below the top has a child realizing both the inclusion of
  // topologies and the subspace identity.
  for (int n = 0; n < top && r.pass[4]; ++n) {
    for (const auto& [key, node] : spec.level(n)) {
      bool found = false;
      for (const SignString& child : spec.declared_children(key)) {
        const ParentLink* link = spec.link_of(child);
        if (detail::transported_inclusion_holds(spec, child, *link) &&
            detail::trace_identity_holds(spec, child, *link)) {
          found = true;
          break;
        }
      }
      if (!found) {
        r.pass[4] = false;
        r.witness[4] = "no child of " + key.text() +
                       " both includes and induces its topology";
        break;
      }
    }
  }

  return r;
}

namespace detail {

// Upward witness chain from (level of j0, j0) to the top (or `to_level`):
// at each step pick the lexicographically least child satisfying property v.
inline std::vector<SignString> witness_chain_up(const FractalFamilySpec& spec,
                                                const SignString& from,
                                                int to_level) {
  std::vector<SignString> chain;
  SignString current = from;
  for (int n = from.level(); n < to_level; ++n) {
    std::optional<SignString> next;
    for (const SignString& child : spec.declared_children(current)) {
      const ParentLink* link = spec.link_of(child);
      if (transported_inclusion_holds(spec, child, *link) &&
          trace_identity_holds(spec, child, *link)) {
        next = child;
        break;  // declared_children is lexicographically ordered
      }
    }
    if (!next) {
      throw precondition_error("no property-v child above " + current.text() +
                               " at level " + std::to_string(n + 1));
    }
    chain.push_back(*next);
    current = *next;
  }
  return chain;
}

}  // namespace detail

// Ascending witness chain j1..jN above a level-0 key, with
// T_0 ⊆ T_1 ⊆ ... ⊆ T_N realized through the declared embeddings.
inline std::vector<SignString> chain_topologies(const FractalFamilySpec& spec,
                                                const SignString& j0) {
  if (j0.level() != 0) {
    throw input_error("chain_topologies starts from a level-0 key");
  }
  spec.node(j0);  // existence check
  const PropertyReport report = check_fractal_family(spec);
  if (!report.all_pass()) {
    throw precondition_error("family fails the axioms:\n" + report.describe());
  }
  return detail::witness_chain_up(spec, j0, spec.max_level());
}

// Descending unique parent chain j_{N-1}..j_0 below a key, following the
// declared links.
inline std::vector<SignString> chain_sets(const FractalFamilySpec& spec,
                                          const SignString& jn) {
  spec.node(jn);
  std::vector<SignString> chain;
  SignString current = jn;
  while (current.level() > 0) {
    const ParentLink* link = spec.link_of(current);
    if (link == nullptr) {
      throw input_error("missing parent link at level " +
                        std::to_string(current.level()));
    }
    chain.push_back(link->parent);
    current = link->parent;
  }
  return chain;
}

// Composed local-index embedding along consecutive links from `low` up to
// `high` (both inclusive endpoints of a declared chain).
inline std::vector<int> composed_embedding(const FractalFamilySpec& spec,
                                           const std::vector<SignString>& keys) {
  if (keys.empty()) throw input_error("empty chain");
  std::vector<int> acc(spec.node(keys.front()).carrier.size());
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = static_cast<int>(i);
  for (std::size_t s = 0; s + 1 < keys.size(); ++s) {
    const ParentLink* link = spec.link_of(keys[s + 1]);
    if (link == nullptr || !(link->parent == keys[s])) {
      throw input_error("keys " + keys[s].text() + " -> " + keys[s + 1].text() +
                        " are not linked");
    }
    const auto emb = detail::local_embedding(spec.node(keys[s]),
                                             spec.node(keys[s + 1]), *link);
    for (int& idx : acc) idx = emb[static_cast<std::size_t>(idx)];
  }
  return acc;
}

struct FormulaCheck {
  bool holds = true;
  std::string witness;
};

// Verifies that the level-min(n,i) topology equals the subspace topology
// induced from level max(n,i) through the composed chain embedding:
//   i > n: along the property-v witness chain above each level-n key;
//   i < n: along the unique declared parent chain below each level-n key.
inline FormulaCheck induced_formula_check(const FractalFamilySpec& spec,
                                          int n, int i) {
  if (n < 0 || n > spec.max_level() || i < 0 || i > spec.max_level()) {
    throw input_error("levels out of range");
  }
  FormulaCheck out;
  if (n == i) return out;  // identity restriction

  for (const auto& [key, node] : spec.level(n)) {
    std::vector<SignString> keys;  // ascending from low to high level
    if (i > n) {
      keys.push_back(key);
      try {
        const auto up = detail::witness_chain_up(spec, key, i);
        keys.insert(keys.end(), up.begin(), up.end());
      } catch (const precondition_error& e) {
        // No inducing chain exists; the formula fails with that witness.
        out.holds = false;
        out.witness = e.what();
        return out;
      }
    } else {
      auto down = chain_sets(spec, key);          // levels n-1 .. 0
      std::reverse(down.begin(), down.end());     // 0 .. n-1
      keys.assign(down.begin() + i, down.end());  // i .. n-1
      keys.push_back(key);
    }
    const auto emb = composed_embedding(spec, keys);
    const FiniteTopology induced =
        detail::induced_on_parent(spec.node(keys.back()).topology, emb);
    if (!(induced == spec.node(keys.front()).topology)) {
      out.holds = false;
      out.witness = "induced topology from " + keys.back().text() +
                    " does not reproduce " + keys.front().text();
      return out;
    }
  }
  return out;
}

// All upward chains from `from` whose every step satisfies property v.
inline std::vector<std::vector<SignString>> all_witness_chains(
    const FractalFamilySpec& spec, const SignString& from) {
  std::vector<std::vector<SignString>> out;
  std::vector<SignString> current{from};
  auto walk = [&](auto&& self, const SignString& key) -> void {
    if (key.level() == spec.max_level()) {
      out.push_back(current);
      return;
    }
    for (const SignString& child : spec.declared_children(key)) {
      const ParentLink* link = spec.link_of(child);
      if (detail::transported_inclusion_holds(spec, child, *link) &&
          detail::trace_identity_holds(spec, child, *link)) {
        current.push_back(child);
        self(self, child);
        current.pop_back();
      }
    }
  };
  walk(walk, from);
  return out;
}

// The weakest topology of the family: the lexicographically least level-0 key
// and its topology, verified to be coarser (under composed embeddings) than
// every topology on every property-v chain through it.
inline std::pair<SignString, FiniteTopology> weakest_topology(
    const FractalFamilySpec& spec) {
  const PropertyReport report = check_fractal_family(spec);
  if (!report.all_pass()) {
    throw precondition_error("family fails the axioms:\n" + report.describe());
  }
  const SignString j0 = spec.level(0).begin()->first;
  for (const auto& chain : all_witness_chains(spec, j0)) {
    for (std::size_t len = 2; len <= chain.size(); ++len) {
      const std::vector<SignString> prefix(chain.begin(),
                                           chain.begin() + static_cast<std::ptrdiff_t>(len));
      const auto emb = composed_embedding(spec, prefix);
      const FiniteTopology& high = spec.node(prefix.back()).topology;
      for (SubsetMask open : spec.node(j0).topology.opens()) {
        if (!high.contains(detail::transport_mask(open, emb))) {
          throw precondition_error(
              "weakest-topology invariant fails along chain through " +
              prefix.back().text());
        }
      }
    }
  }
  return {j0, spec.node(j0).topology};
}

}  // namespace fractopo
