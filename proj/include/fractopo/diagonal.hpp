#pragma once

// Diagonal topologies over finite indexed families: a family of finite
// topological spaces indexed by exact decimal labels, whose diagonal opens
// pick one open per label.  Labels are exact decimal strings, never floats,
// so that a distinguished label such as 0 compares reliably.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fractopo/errors.hpp"
#include "fractopo/finite_topology.hpp"

namespace fractopo {

// Exact nonnegative decimal label; total order by numeric value.
class IndexLabel {
 public:
  static IndexLabel parse(std::string_view text) {
    std::string digits;
    int scale = 0;
    bool seen_point = false;
    bool seen_digit = false;
    for (char c : text) {
      if (c == '.') {
        if (seen_point) throw input_error("label \"" + std::string(text) +
                                          "\" has two decimal points");
        seen_point = true;
      } else if (c >= '0' && c <= '9') {
        digits.push_back(c);
        if (seen_point) ++scale;
        seen_digit = true;
      } else {
        throw input_error("label \"" + std::string(text) +
                          "\" is not a nonnegative decimal");
      }
    }
    if (!seen_digit) {
      throw input_error("label \"" + std::string(text) + "\" has no digits");
    }
    // Normalize: strip trailing fractional zeros, then leading zeros.
    while (scale > 0 && !digits.empty() && digits.back() == '0') {
      digits.pop_back();
      --scale;
    }
    std::size_t lead = 0;
    while (lead + 1 < digits.size() - static_cast<std::size_t>(scale) &&
           digits[lead] == '0') {
      ++lead;
    }
    digits.erase(0, lead);
    if (digits.empty()) {
      digits = "0";
      scale = 0;
    }
    if (digits.size() > 18) {
      throw capacity_error("label \"" + std::string(text) +
                           "\" exceeds 18 significant digits");
    }
    IndexLabel label;
    label.mantissa_ = std::stoull(digits);
    label.scale_ = scale;
    if (label.mantissa_ == 0) label.scale_ = 0;
    label.text_ = render(label.mantissa_, label.scale_);
    return label;
  }

  const std::string& text() const { return text_; }
  double approximate() const {
    double v = static_cast<double>(mantissa_);
    for (int i = 0; i < scale_; ++i) v /= 10.0;
    return v;
  }
  bool is_zero() const { return mantissa_ == 0; }

  friend bool operator==(const IndexLabel& a, const IndexLabel& b) {
    return a.mantissa_ == b.mantissa_ && a.scale_ == b.scale_;
  }
  friend bool operator<(const IndexLabel& a, const IndexLabel& b) {
    // Compare a.mantissa/10^a.scale with b.mantissa/10^b.scale exactly.
    unsigned __int128 lhs = a.mantissa_;
    unsigned __int128 rhs = b.mantissa_;
    for (int i = 0; i < b.scale_; ++i) lhs *= 10;
    for (int i = 0; i < a.scale_; ++i) rhs *= 10;
    return lhs < rhs;
  }

 private:
  static std::string render(std::uint64_t mantissa, int scale) {
    std::string digits = std::to_string(mantissa);
    if (scale == 0) return digits;
    if (static_cast<int>(digits.size()) <= scale) {
      digits.insert(0, static_cast<std::size_t>(scale) - digits.size() + 1, '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(scale), 1, '.');
    return digits;
  }

  std::uint64_t mantissa_ = 0;
  int scale_ = 0;
  std::string text_ = "0";
};

// A finite family of finite topological spaces indexed by distinct labels.
// Carriers are treated as pairwise disjoint tagged copies; when all_same is
// set, every carrier must additionally have the same universe size (the
// family is a bundle of tagged copies of one point set).
class IndexedFamily {
 public:
  static IndexedFamily make(std::vector<std::pair<IndexLabel, FiniteTopology>>
                                spaces,
                            bool carriers_all_same = false) {
    if (spaces.empty()) {
      throw input_error("indexed family needs at least one label");
    }
    std::sort(spaces.begin(), spaces.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < spaces.size(); ++i) {
      if (spaces[i - 1].first == spaces[i].first) {
        throw input_error("duplicate label " + spaces[i].first.text());
      }
    }
    if (carriers_all_same) {
      for (const auto& [label, space] : spaces) {
        if (space.universe_size() != spaces.front().second.universe_size()) {
          throw input_error(
              "all-same carriers require one shared universe size");
        }
      }
    }
    IndexedFamily f;
    f.spaces_ = std::move(spaces);
    f.carriers_all_same_ = carriers_all_same;
    return f;
  }

  int size() const { return static_cast<int>(spaces_.size()); }
  const IndexLabel& label(int i) const { return spaces_[static_cast<std::size_t>(i)].first; }
  const FiniteTopology& space(int i) const { return spaces_[static_cast<std::size_t>(i)].second; }
  bool carriers_all_same() const { return carriers_all_same_; }

  std::optional<int> find(const IndexLabel& label) const {
    for (int i = 0; i < size(); ++i) {
      if (this->label(i) == label) return i;
    }
    return std::nullopt;
  }

  std::vector<std::string> label_texts() const {
    std::vector<std::string> out;
    out.reserve(spaces_.size());
    for (const auto& [label, space] : spaces_) out.push_back(label.text());
    return out;
  }

  bool operator==(const IndexedFamily& other) const {
    if (carriers_all_same_ != other.carriers_all_same_) return false;
    if (spaces_.size() != other.spaces_.size()) return false;
    for (std::size_t i = 0; i < spaces_.size(); ++i) {
      if (!(spaces_[i].first == other.spaces_[i].first) ||
          !(spaces_[i].second == other.spaces_[i].second)) {
        return false;
      }
    }
    return true;
  }

 private:
  std::vector<std::pair<IndexLabel, FiniteTopology>> spaces_;
  bool carriers_all_same_ = false;
};

// One open per family label, stored as an index into that label's topology.
struct DiagonalOpen {
  std::vector<int> open_index;  // aligned with family label order

  static DiagonalOpen of(const IndexedFamily& f, std::vector<int> indices) {
    if (static_cast<int>(indices.size()) != f.size()) {
      throw input_error("diagonal open needs exactly one component per label");
    }
    for (int i = 0; i < f.size(); ++i) {
      const int idx = indices[static_cast<std::size_t>(i)];
      if (idx < 0 || idx >= f.space(i).open_count()) {
        throw input_error("component open index out of range at label " +
                          f.label(i).text());
      }
    }
    return DiagonalOpen{std::move(indices)};
  }

  std::vector<SubsetMask> masks(const IndexedFamily& f) const {
    if (static_cast<int>(open_index.size()) != f.size()) {
      throw input_error("diagonal open does not match the family's labels");
    }
    std::vector<SubsetMask> out;
    out.reserve(open_index.size());
    for (int i = 0; i < f.size(); ++i) {
      const int idx = open_index[static_cast<std::size_t>(i)];
      if (idx < 0 || idx >= f.space(i).open_count()) {
        throw input_error("component open index out of range at label " +
                          f.label(i).text());
      }
      out.push_back(f.space(i).opens()[static_cast<std::size_t>(idx)]);
    }
    return out;
  }

  bool operator==(const DiagonalOpen&) const = default;
};

namespace detail {

inline void require_component_count(const IndexedFamily& f,
                                    std::size_t components,
                                    const char* what) {
  if (static_cast<int>(components) != f.size()) {
    throw input_error(std::string(what) +
                      " does not match the family's label count");
  }
}

inline int open_index_of(const FiniteTopology& t, SubsetMask mask,
                         const IndexLabel& label) {
  const auto& opens = t.opens();
  const auto it =
      std::lower_bound(opens.begin(), opens.end(), mask, subset_less);
  if (it == opens.end() || *it != mask) {
    throw input_error("component " + subset_to_string(mask) +
                      " is not open at label " + label.text());
  }
  return static_cast<int>(it - opens.begin());
}

}  // namespace detail

// Componentwise union: (A ∪ B)_ε = A_ε ∪ B_ε.  Requires both components to
// be opens of the family (closure holds when every component is a topology).
inline DiagonalOpen diagonal_union(const IndexedFamily& f,
                                   const DiagonalOpen& a,
                                   const DiagonalOpen& b) {
  detail::require_component_count(f, a.open_index.size(), "first operand");
  detail::require_component_count(f, b.open_index.size(), "second operand");
  const auto ma = a.masks(f);
  const auto mb = b.masks(f);
  std::vector<int> out(static_cast<std::size_t>(f.size()));
  for (int i = 0; i < f.size(); ++i) {
    out[static_cast<std::size_t>(i)] = detail::open_index_of(
        f.space(i), ma[static_cast<std::size_t>(i)] | mb[static_cast<std::size_t>(i)], f.label(i));
  }
  return DiagonalOpen{std::move(out)};
}

// Componentwise intersection: (A ∩ B)_ε = A_ε ∩ B_ε.
inline DiagonalOpen diagonal_intersect(const IndexedFamily& f,
                                       const DiagonalOpen& a,
                                       const DiagonalOpen& b) {
  detail::require_component_count(f, a.open_index.size(), "first operand");
  detail::require_component_count(f, b.open_index.size(), "second operand");
  const auto ma = a.masks(f);
  const auto mb = b.masks(f);
  std::vector<int> out(static_cast<std::size_t>(f.size()));
  for (int i = 0; i < f.size(); ++i) {
    out[static_cast<std::size_t>(i)] = detail::open_index_of(
        f.space(i), ma[static_cast<std::size_t>(i)] & mb[static_cast<std::size_t>(i)], f.label(i));
  }
  return DiagonalOpen{std::move(out)};
}

struct DiagonalCheck {
  bool valid = true;
  bool exhaustive = true;
  std::uint64_t opens_enumerated = 0;  // exhaustive mode
  std::uint64_t pairs_checked = 0;
  std::uint64_t seed = 0;              // sampled mode
  std::string violation;               // empty when valid

  std::string describe() const {
    std::ostringstream out;
    out << (valid ? "valid diagonal topology" : "invalid: " + violation);
    out << (exhaustive ? " (exhaustive, " : " (sampled, ");
    if (exhaustive) {
      out << opens_enumerated << " opens, " << pairs_checked << " pairs)";
    } else {
      out << pairs_checked << " pairs, seed " << seed << ")";
    }
    return out.str();
  }
};

inline constexpr std::uint64_t kDefaultDiagonalCap = 4096;
inline constexpr std::uint64_t kDefaultDiagonalSeed = 20260810;
inline constexpr std::uint64_t kDefaultDiagonalSamples = 2000;

// Verifies the three topology axioms on the diagonal open collection
// {componentwise choices of opens}.  When the product of component open
// counts is at most `cap` the check enumerates every diagonal open and every
// pair; otherwise it samples random pairs with the recorded seed.
inline DiagonalCheck check_diagonal_axioms(
    const IndexedFamily& f, std::uint64_t cap = kDefaultDiagonalCap,
    std::uint64_t seed = kDefaultDiagonalSeed,
    std::uint64_t samples = kDefaultDiagonalSamples) {
  DiagonalCheck r;

  // Empty and full diagonal opens exist iff each component collection
  // contains its empty set / universe.
  for (int i = 0; i < f.size(); ++i) {
    if (!f.space(i).contains(0)) {
      r.valid = false;
      r.violation = "component at label " + f.label(i).text() +
                    " does not contain the empty set";
      return r;
    }
    if (!f.space(i).contains(f.space(i).universe_mask())) {
      r.valid = false;
      r.violation = "component at label " + f.label(i).text() +
                    " does not contain its universe";
      return r;
    }
  }

  std::uint64_t product = 1;
  bool overflow = false;
  for (int i = 0; i < f.size(); ++i) {
    const std::uint64_t m = static_cast<std::uint64_t>(f.space(i).open_count());
    if (product > cap / m + 1) overflow = true;
    product *= m;
    if (overflow || product > cap) break;
  }

  const int n = f.size();
  auto check_pair = [&](const std::vector<SubsetMask>& a,
                        const std::vector<SubsetMask>& b) -> bool {
    for (int i = 0; i < n; ++i) {
      const FiniteTopology& t = f.space(i);
      const SubsetMask inter = a[static_cast<std::size_t>(i)] & b[static_cast<std::size_t>(i)];
      if (!t.contains(inter)) {
        r.valid = false;
        r.violation = "intersection escapes at label " + f.label(i).text() +
                      ": " + subset_to_string(a[static_cast<std::size_t>(i)]) + " ∩ " +
                      subset_to_string(b[static_cast<std::size_t>(i)]) + " = " +
                      subset_to_string(inter) + " is not a component open";
        return false;
      }
      const SubsetMask uni = a[static_cast<std::size_t>(i)] | b[static_cast<std::size_t>(i)];
      if (!t.contains(uni)) {
        r.valid = false;
        r.violation = "union escapes at label " + f.label(i).text() + ": " +
                      subset_to_string(a[static_cast<std::size_t>(i)]) + " ∪ " +
                      subset_to_string(b[static_cast<std::size_t>(i)]) + " = " +
                      subset_to_string(uni) + " is not a component open";
        return false;
      }
    }
    ++r.pairs_checked;
    return true;
  };

  if (!overflow && product <= cap) {
    // Enumerate the full product of component opens.
    std::vector<std::vector<SubsetMask>> all;
    all.reserve(product);
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    for (;;) {
      std::vector<SubsetMask> masks(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        masks[static_cast<std::size_t>(i)] =
            f.space(i).opens()[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      }
      all.push_back(std::move(masks));
      int pos = n - 1;
      while (pos >= 0) {
        if (++idx[static_cast<std::size_t>(pos)] < f.space(pos).open_count()) break;
        idx[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
    r.opens_enumerated = all.size();
    for (std::size_t i = 0; i < all.size() && r.valid; ++i) {
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        if (!check_pair(all[i], all[j])) break;
      }
    }
    return r;
  }

  r.exhaustive = false;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  auto random_open = [&]() {
    std::vector<SubsetMask> masks(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      std::uniform_int_distribution<int> pick(0, f.space(i).open_count() - 1);
      masks[static_cast<std::size_t>(i)] =
          f.space(i).opens()[static_cast<std::size_t>(pick(rng))];
    }
    return masks;
  };
  for (std::uint64_t s = 0; s < samples && r.valid; ++s) {
    check_pair(random_open(), random_open());
  }
  return r;
}

// A selection of one point per label.
struct ObjectSelection {
  std::vector<std::pair<IndexLabel, int>> points;  // label -> point index

  static ObjectSelection of(std::vector<std::pair<IndexLabel, int>> points) {
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return ObjectSelection{std::move(points)};
  }
};

// True iff X picks exactly one in-range point for every family label.
// Labels unknown to the family are an input error.
inline bool is_object(const IndexedFamily& f, const ObjectSelection& x) {
  for (const auto& [label, point] : x.points) {
    if (!f.find(label)) {
      throw input_error("selection uses label " + label.text() +
                        " unknown to the family");
    }
  }
  for (int i = 0; i < f.size(); ++i) {
    int hits = 0;
    int point = -1;
    for (const auto& [label, p] : x.points) {
      if (label == f.label(i)) {
        ++hits;
        point = p;
      }
    }
    if (hits != 1) return false;
    if (point < 0 || point >= f.space(i).universe_size()) return false;
  }
  return true;
}

// True iff omega (given componentwise, one subset per label, not necessarily
// open) contains, for every label, an open neighborhood of the object's point
// inside omega's component.
inline bool is_diagonal_neighborhood(const IndexedFamily& f,
                                     const std::vector<SubsetMask>& omega,
                                     const ObjectSelection& x) {
  detail::require_component_count(f, omega.size(), "neighborhood candidate");
  if (!is_object(f, x)) {
    throw input_error("selection is not an object of the family");
  }
  for (int i = 0; i < f.size(); ++i) {
    int point = -1;
    for (const auto& [label, p] : x.points) {
      if (label == f.label(i)) point = p;
    }
    const SubsetMask point_mask = SubsetMask{1} << point;
    const SubsetMask limit = omega[static_cast<std::size_t>(i)];
    bool found = false;
    for (SubsetMask open : f.space(i).opens()) {
      if ((open & point_mask) != 0 && (open & ~limit) == 0) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

inline bool is_diagonal_neighborhood(const IndexedFamily& f,
                                     const DiagonalOpen& omega,
                                     const ObjectSelection& x) {
  return is_diagonal_neighborhood(f, omega.masks(f), x);
}

// A discretized parametric path: one point per grid label, ordered by label.
// Continuity is not represented; only pointwise equality is exposed.
struct InternalStructurePath {
  std::vector<std::pair<IndexLabel, int>> points;

  static InternalStructurePath of(
      std::vector<std::pair<IndexLabel, int>> points) {
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return InternalStructurePath{std::move(points)};
  }

  ObjectSelection range() const { return ObjectSelection{points}; }

  bool operator==(const InternalStructurePath&) const = default;
};

// A path is an internal structure iff it meets every component space in
// exactly one valid point, i.e. its range is an object.
inline bool is_internal_structure(const IndexedFamily& f,
                                  const InternalStructurePath& path) {
  return is_object(f, path.range());
}

}  // namespace fractopo
