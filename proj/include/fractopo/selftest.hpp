#pragma once

// The verification battery behind `fractopo selftest` and the acceptance
// suite: every combinatorial count is checked exactly, the bundled family
// fixture is model-checked together with its five single-fault mutants, and
// the numerical identities are probed at fixed seeds.
//
// The finite-topology census is cross-checked against an oracle enumerator
// kept deliberately independent of the library path: it works on explicit
// element sets with direct loops, not on bitmask systems.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fractopo/diagonal.hpp"
#include "fractopo/expansion_tree.hpp"
#include "fractopo/finite_topology.hpp"
#include "fractopo/fixtures.hpp"
#include "fractopo/fractal_family.hpp"
#include "fractopo/mean.hpp"
#include "fractopo/sign_string.hpp"

namespace fractopo {
namespace selftest {

inline constexpr std::uint64_t kDefaultSeed = 20260810;

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double elapsed_s = 0.0;
  double budget_s = 0.0;

  bool within_budget() const { return elapsed_s < budget_s; }
  bool ok() const { return passed && within_budget(); }
};

namespace oracle {

// Independent census of topologies on 3 labeled points: explicit element
// sets, direct closure loops.
using Set = std::set<int>;
using System = std::set<Set>;

inline Set set_union(const Set& a, const Set& b) {
  Set out = a;
  out.insert(b.begin(), b.end());
  return out;
}

inline Set set_intersection(const Set& a, const Set& b) {
  Set out;
  for (int e : a) {
    if (b.count(e)) out.insert(e);
  }
  return out;
}

inline bool oracle_is_topology(const System& sys, const Set& universe) {
  if (!sys.count(Set{}) || !sys.count(universe)) return false;
  for (const Set& a : sys) {
    for (const Set& b : sys) {
      if (!sys.count(set_union(a, b))) return false;
      if (!sys.count(set_intersection(a, b))) return false;
    }
  }
  return true;
}

inline System permute_system(const System& sys, const std::vector<int>& perm) {
  System out;
  for (const Set& s : sys) {
    Set image;
    for (int e : s) image.insert(perm[static_cast<std::size_t>(e)]);
    out.insert(image);
  }
  return out;
}

inline bool oracle_equivalent(const System& a, const System& b) {
  std::vector<int> perm{0, 1, 2};
  do {
    if (permute_system(a, perm) == b) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// All 256 subset collections over P({0,1,2}).
inline std::vector<System> all_systems_on_three_points() {
  const std::vector<Set> subsets = {
      Set{},        Set{0},    Set{1},    Set{2},
      Set{0, 1},    Set{0, 2}, Set{1, 2}, Set{0, 1, 2}};
  std::vector<System> out;
  out.reserve(256);
  for (int mask = 0; mask < 256; ++mask) {
    System sys;
    for (int bit = 0; bit < 8; ++bit) {
      if (mask & (1 << bit)) sys.insert(subsets[static_cast<std::size_t>(bit)]);
    }
    out.push_back(std::move(sys));
  }
  return out;
}

inline FiniteTopology to_library(const System& sys) {
  std::vector<std::vector<int>> sets;
  for (const Set& s : sys) sets.emplace_back(s.begin(), s.end());
  return FiniteTopology::from_sets(3, sets);
}

}  // namespace oracle

inline std::string io_format(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

namespace detail {

template <class Fn>
CheckResult timed_check(const std::string& name, double budget_s, Fn&& body) {
  CheckResult r;
  r.name = name;
  r.budget_s = budget_s;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    std::ostringstream detail;
    r.passed = body(detail);
    r.detail = detail.str();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return r;
}

inline std::string signs_of(const std::vector<SignString>& keys) {
  std::string out;
  for (const auto& k : keys) out += k.text() + " ";
  return out;
}

}  // namespace detail

inline CheckResult check_lambda_cardinalities() {
  return detail::timed_check(
      "lambda-cardinalities", 1.0, [](std::ostringstream& detail) {
        const std::vector<std::vector<std::string>> expected = {
            {"+", "-"},
            {"++", "+-", "-+", "--"},
            {"+++", "++-", "+-+", "+--", "-++", "-+-", "--+", "---"},
        };
        for (int n = 0; n <= 3; ++n) {
          const auto l = lambda(n);
          const std::size_t want = std::size_t{1} << (n + 1);
          if (l.size() != want) {
            detail << "lambda(" << n << ") has " << l.size() << " entries";
            return false;
          }
          if (n < 3) {
            for (std::size_t i = 0; i < want; ++i) {
              if (l[i].text() != expected[static_cast<std::size_t>(n)][i]) {
                detail << "lambda(" << n << ")[" << i << "] = " << l[i].text();
                return false;
              }
            }
          }
        }
        detail << "lengths 2,4,8,16 with exact listings";
        return true;
      });
}

inline CheckResult check_expansion_structure() {
  return detail::timed_check(
      "expansion-structure", 1.0, [](std::ostringstream& detail) {
        for (int n = 0; n <= 10; ++n) {
          const StepDiagram d = enumerate_step(n);
          const std::uint64_t lo = std::uint64_t{1} << n;
          if (d.entries.size() != lo) {
            detail << "step " << n << " has " << d.entries.size()
                   << " entries";
            return false;
          }
          const auto labels = lambda(n);
          for (std::size_t i = 0; i < d.entries.size(); ++i) {
            const StepEntry& e = d.entries[i];
            if (e.k != lo + i) {
              detail << "step " << n << " entry " << i << " has k=" << e.k;
              return false;
            }
            if (!(e.plus_child == labels[2 * i]) ||
                !(e.minus_child == labels[2 * i + 1])) {
              detail << "step " << n << " children at k=" << e.k
                     << " do not reproduce lambda(" << n << ")";
              return false;
            }
            if (!(e.source.empty() && n == 0) &&
                !(e.plus_child.parent() == e.source)) {
              detail << "step " << n << " source mismatch at k=" << e.k;
              return false;
            }
          }
        }
        detail << "2^n entries with k in [2^n, 2^{n+1}-1], children = lambda(n), n <= 10";
        return true;
      });
}

inline CheckResult check_chart_tuples() {
  return detail::timed_check(
      "chart-tuples", 1.0, [](std::ostringstream& detail) {
        if (chart_tuple_size(0) != 3 || chart_tuple_size(1) != 5 ||
            chart_tuple_size(2) != 9) {
          detail << "sizes " << chart_tuple_size(0) << ","
                 << chart_tuple_size(1) << "," << chart_tuple_size(2);
          return false;
        }
        const std::vector<std::string> want = {"Ω", "φ2∘φ1", "T2∘φ2∘φ1",
                                               "φ3∘T1∘φ1", "T3∘φ3∘T1∘φ1"};
        const auto got = chart_tuple_labels(1);
        if (got != want) {
          detail << "step-1 tuple is";
          for (const auto& g : got) detail << ' ' << g;
          return false;
        }
        for (int n = 0; n <= 6; ++n) {
          if (chart_tuple_labels(n).size() != chart_tuple_size(n)) {
            detail << "tuple length mismatch at step " << n;
            return false;
          }
        }
        detail << "sizes 3,5,9; step-1 tuple matches the composition pattern";
        return true;
      });
}

inline CheckResult check_family_axioms() {
  return detail::timed_check(
      "fractal-family-axioms", 10.0, [](std::ostringstream& detail) {
        const FractalFamilySpec clean = make_doubling_fixture(2);
        const PropertyReport clean_report = check_fractal_family(clean);
        if (!clean_report.all_pass()) {
          detail << "clean fixture fails: " << clean_report.describe();
          return false;
        }
        const std::array<FamilyFault, 5> faults = {
            FamilyFault::shrink_top_level, FamilyFault::break_closure,
            FamilyFault::swap_one_topology, FamilyFault::orphan_one_key,
            FamilyFault::starve_one_parent};
        for (int f = 0; f < 5; ++f) {
          const PropertyReport r = check_fractal_family(
              mutate_fixture(2, faults[static_cast<std::size_t>(f)]));
          for (int p = 0; p < 5; ++p) {
            const bool want_pass = (p != f);
            if (r.pass[static_cast<std::size_t>(p)] != want_pass) {
              detail << fault_name(faults[static_cast<std::size_t>(f)])
                     << ": property " << (p + 1)
                     << (want_pass ? " fails collaterally" : " not detected");
              return false;
            }
          }
        }
        detail << "3-level fixture passes i-v; 5 single-fault mutants each "
                  "fail exactly their property";
        return true;
      });
}

inline CheckResult check_induced_formulas() {
  return detail::timed_check(
      "induced-formulas", 10.0, [](std::ostringstream& detail) {
        const FractalFamilySpec fx = make_doubling_fixture(2);
        for (int n = 0; n <= 2; ++n) {
          for (int i = 0; i <= 2; ++i) {
            const FormulaCheck fc = induced_formula_check(fx, n, i);
            if (!fc.holds) {
              detail << "(n=" << n << ", i=" << i << "): " << fc.witness;
              return false;
            }
          }
        }
        // Level-to-level subspace identity across every declared link.
        for (const auto& [child, link] : fx.links()) {
          if (!fractopo::detail::trace_identity_holds(fx, child, link)) {
            detail << "subspace identity fails at " << child.text();
            return false;
          }
        }
        detail << "set equalities exact for all n,i <= 2 and every link";
        return true;
      });
}

inline CheckResult check_topology_census() {
  return detail::timed_check(
      "finite-topology-census", 30.0, [](std::ostringstream& detail) {
        const auto systems = oracle::all_systems_on_three_points();
        const oracle::Set universe{0, 1, 2};
        std::vector<oracle::System> oracle_topologies;
        for (const auto& sys : systems) {
          const bool oracle_verdict = oracle::oracle_is_topology(sys, universe);
          const bool library_verdict =
              is_topology(oracle::to_library(sys)).valid;
          if (oracle_verdict != library_verdict) {
            detail << "verdict mismatch on a 3-point system";
            return false;
          }
          if (oracle_verdict) oracle_topologies.push_back(sys);
        }
        if (oracle_topologies.size() != 29) {
          detail << "oracle counts " << oracle_topologies.size()
                 << " labeled topologies";
          return false;
        }
        // Classes by the oracle's permutation search.
        std::vector<int> cls(29, -1);
        int oracle_classes = 0;
        for (std::size_t i = 0; i < 29; ++i) {
          if (cls[i] >= 0) continue;
          cls[i] = oracle_classes++;
          for (std::size_t j = i + 1; j < 29; ++j) {
            if (cls[j] < 0 &&
                oracle::oracle_equivalent(oracle_topologies[i],
                                          oracle_topologies[j])) {
              cls[j] = cls[i];
            }
          }
        }
        // The library's homeomorphism test must agree pairwise.
        int library_classes = 0;
        std::vector<int> lib_cls(29, -1);
        std::vector<FiniteTopology> lib;
        lib.reserve(29);
        for (const auto& sys : oracle_topologies) {
          lib.push_back(oracle::to_library(sys));
        }
        for (std::size_t i = 0; i < 29; ++i) {
          for (std::size_t j = i + 1; j < 29; ++j) {
            const bool lib_eq = are_homeomorphic(lib[i], lib[j]).has_value();
            const bool ora_eq = (cls[i] == cls[j]);
            if (lib_eq != ora_eq) {
              detail << "equivalence mismatch between systems " << i << " and "
                     << j;
              return false;
            }
          }
        }
        for (std::size_t i = 0; i < 29; ++i) {
          if (lib_cls[i] >= 0) continue;
          lib_cls[i] = library_classes++;
          for (std::size_t j = i + 1; j < 29; ++j) {
            if (lib_cls[j] < 0 && are_homeomorphic(lib[i], lib[j])) {
              lib_cls[j] = lib_cls[i];
            }
          }
        }
        if (oracle_classes != 9 || library_classes != 9) {
          detail << "classes: oracle " << oracle_classes << ", library "
                 << library_classes;
          return false;
        }
        detail << "29 labeled topologies on 3 points, 9 homeomorphism "
                  "classes, library agrees with the oracle";
        return true;
      });
}

inline CheckResult check_translation_identity(std::uint64_t seed) {
  return detail::timed_check(
      "translation-identity", 30.0, [seed](std::ostringstream& detail) {
        const Generator w = Generator::weierstrass(0.5, 13);
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        double worst_quad = 0.0, worst_closed = 0.0;
        for (int probe = 0; probe < 100; ++probe) {
          const double delta0 =
              std::exp(std::log(0.01) +
                       (std::log(0.4) - std::log(0.01)) * uni(rng));
          const double x = 0.01 + (0.97 - delta0) * uni(rng);
          worst_quad = std::max(
              worst_quad,
              translation_residual(w, x, delta0, MeanPath::quadrature));
          worst_closed = std::max(
              worst_closed, translation_residual(w, x, delta0, MeanPath::closed));
        }
        detail << "100 probes: quadrature residual <= "
               << io_format(worst_quad) << ", closed <= "
               << io_format(worst_closed);
        return worst_quad <= 1e-9 && worst_closed <= 1e-12;
      });
}

inline CheckResult check_identification_property() {
  return detail::timed_check(
      "identification-property", 60.0, [](std::ostringstream& detail) {
        const Generator w = Generator::weierstrass(0.5, 13);
        const MeanSpec spec =
            MeanSpec::make(w, {Sign::forward, Sign::backward},
                           DeltaVector::from_deltas({0.2, 0.05}));
        std::vector<double> probes;
        for (int i = 0; i < 20; ++i) {
          probes.push_back(0.15 + 0.5 * static_cast<double>(i) / 19.0);
        }
        for (double x : probes) {
          if (identification_residual(spec, x, 0.0, Sign::forward) != 0.0) {
            detail << "residual not exactly 0 at delta=0, x=" << x;
            return false;
          }
        }
        std::vector<double> averages;
        for (int j = 0; j <= 9; ++j) {
          const double delta_next = 1e-2 * std::ldexp(1.0, -j);
          double sum = 0.0;
          for (double x : probes) {
            sum += identification_residual(spec, x, delta_next, Sign::forward);
          }
          averages.push_back(sum / static_cast<double>(probes.size()));
        }
        const double ratio = averages.front() / averages.back();
        detail << "exact zero at delta=0; average residual decays "
               << io_format(ratio) << "x over j=0..9";
        return ratio >= 10.0;
      });
}

inline CheckResult check_closed_vs_quadrature(std::uint64_t seed) {
  return detail::timed_check(
      "closed-vs-quadrature", 120.0, [seed](std::ostringstream& detail) {
        const Generator w = Generator::weierstrass(0.5, 13);
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        double worst = 0.0;
        for (int probe = 0; probe < 100; ++probe) {
          const int levels = 1 + static_cast<int>(uni(rng) * 3.0);
          std::vector<double> deltas;
          std::vector<Sign> signs;
          double delta = std::exp(std::log(0.02) +
                                  (std::log(0.4) - std::log(0.02)) * uni(rng));
          for (int level = 0; level < levels; ++level) {
            deltas.push_back(delta);
            signs.push_back(uni(rng) < 0.5 ? Sign::forward : Sign::backward);
            delta *= 0.1 + 0.5 * uni(rng);
          }
          const MeanSpec spec =
              MeanSpec::make(w, signs, DeltaVector::from_deltas(deltas));
          const Interval hull = spec.reach(0.0);
          const double lo = w.domain().lo - hull.lo + 0.005;
          const double hi = w.domain().hi - hull.hi - 0.005;
          const double x = lo + (hi - lo) * uni(rng);
          const double closed = iterated_mean_closed(spec, x);
          const double quad = iterated_mean_quadrature(spec, x);
          worst = std::max(worst, std::abs(closed - quad));
        }
        detail << "100 random specs up to level 2: worst |closed-quad| = "
               << io_format(worst);
        return worst <= 1e-8;
      });
}

inline CheckResult check_diagonal_topology() {
  return detail::timed_check(
      "diagonal-topology", 1.0, [](std::ostringstream& detail) {
        const IndexedFamily family = IndexedFamily::make(
            {{IndexLabel::parse("0.1"), FiniteTopology::sierpinski()},
             {IndexLabel::parse("0.2"), FiniteTopology::sierpinski()}});
        const DiagonalCheck check = check_diagonal_axioms(family);
        detail << check.describe();
        return check.valid && check.exhaustive && check.opens_enumerated == 9;
      });
}

inline std::vector<CheckResult> run_acceptance(
    std::uint64_t seed = kDefaultSeed) {
  return {
      check_lambda_cardinalities(),
      check_expansion_structure(),
      check_chart_tuples(),
      check_family_axioms(),
      check_induced_formulas(),
      check_topology_census(),
      check_translation_identity(seed),
      check_identification_property(),
      check_closed_vs_quadrature(seed),
      check_diagonal_topology(),
  };
}

}  // namespace selftest
}  // namespace fractopo
