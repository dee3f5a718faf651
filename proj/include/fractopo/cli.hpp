#pragma once

// Command-line surface.  One command per process; run() returns the exit
// code, the human-readable report, and (when --porcelain is given) stable
// key=value lines for scripting.
//
// Exit codes: 0 success, 1 verification failure, 2 input error, 3 capacity
// error.  FRACTOPO_SEED (decimal) overrides the sampling seed.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fractopo/errors.hpp"
#include "fractopo/expansion_tree.hpp"
#include "fractopo/fixtures.hpp"
#include "fractopo/fractal_family.hpp"
#include "fractopo/io.hpp"
#include "fractopo/mean.hpp"
#include "fractopo/selftest.hpp"

namespace fractopo {
namespace cli {

struct CommandResult {
  int exit_code = 0;
  std::string report;
  std::string porcelain;  // filled only when --porcelain was given
};

namespace detail {

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::uint64_t sampling_seed() {
  if (const char* env = std::getenv("FRACTOPO_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw input_error("FRACTOPO_SEED must be a decimal integer");
    }
  }
  return selftest::kDefaultSeed;
}

inline Interval parse_interval(const std::string& text,
                               const std::string& what) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw input_error(what + " must be written lo:hi");
  }
  try {
    const double lo = std::stod(text.substr(0, colon));
    const double hi = std::stod(text.substr(colon + 1));
    if (!(lo < hi)) throw input_error(what + " must satisfy lo < hi");
    return {lo, hi};
  } catch (const input_error&) {
    throw;
  } catch (const std::exception&) {
    throw input_error(what + ": bad number in \"" + text + "\"");
  }
}

// Generator specs: weierstrass:a:b[:K], takagi:w[:K], constant:c,
// tabulated:<csv-path> (rows "t,y"; '#' comments allowed).
inline Generator parse_generator(const std::string& spec,
                                 const Interval& domain) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= spec.size(); ++i) {
    if (i == spec.size() || spec[i] == ':') {
      parts.push_back(spec.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.empty()) throw input_error("empty generator spec");
  const std::string& kind = parts.front();
  auto number = [&](std::size_t i) {
    try {
      return std::stod(parts.at(i));
    } catch (const std::exception&) {
      throw input_error("generator spec \"" + spec + "\": bad parameter");
    }
  };
  auto order = [&](std::size_t i) -> std::optional<int> {
    if (parts.size() <= i) return std::nullopt;
    try {
      return std::stoi(parts.at(i));
    } catch (const std::exception&) {
      throw input_error("generator spec \"" + spec +
                        "\": bad truncation order");
    }
  };
  if (kind == "weierstrass") {
    if (parts.size() < 3 || parts.size() > 4) {
      throw input_error("weierstrass spec is weierstrass:a:b[:K]");
    }
    return Generator::weierstrass(number(1), static_cast<int>(number(2)),
                                  order(3), domain);
  }
  if (kind == "takagi") {
    if (parts.size() < 2 || parts.size() > 3) {
      throw input_error("takagi spec is takagi:w[:K]");
    }
    return Generator::takagi(number(1), order(2), domain);
  }
  if (kind == "constant") {
    if (parts.size() != 2) throw input_error("constant spec is constant:c");
    return Generator::constant(number(1), domain);
  }
  if (kind == "tabulated") {
    if (parts.size() != 2) {
      throw input_error("tabulated spec is tabulated:<csv-path>");
    }
    std::vector<std::pair<double, double>> samples;
    for (const std::string& line : io::content_lines(io::read_file(parts[1]))) {
      const std::size_t comma = line.find(',');
      if (comma == std::string::npos) {
        throw input_error("tabulated row \"" + line + "\" needs t,y");
      }
      try {
        samples.emplace_back(std::stod(line.substr(0, comma)),
                             std::stod(line.substr(comma + 1)));
      } catch (const std::exception&) {
        throw input_error("tabulated row \"" + line + "\" has bad numbers");
      }
    }
    return Generator::tabulated(std::move(samples));
  }
  throw input_error("unknown generator kind \"" + kind + "\"");
}

inline std::vector<double> parse_deltas(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      const std::string item = text.substr(start, i - start);
      try {
        out.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw input_error("bad delta \"" + item + "\"");
      }
      start = i + 1;
    }
  }
  return out;
}

}  // namespace detail

inline CommandResult run(std::vector<std::string> args) {
  CommandResult result;
  std::ostringstream report;
  std::ostringstream porcelain;
  bool want_porcelain = false;
  int verdict = 0;  // 0 ok, 1 verification failure

  CLI::App app{"fractal-topology toolkit: finite model checks for nested "
               "subspace topologies and numerics for iterated mean functions"};
  app.name("fractopo");
  app.add_flag("--porcelain", want_porcelain,
               "append machine-readable key=value lines");
  app.require_subcommand(0, 1);

  std::function<void()> action;

  // ---- topo check ----
  auto* topo = app.add_subcommand("topo", "finite topology operations");
  {
    auto* check = topo->add_subcommand("check", "validate a topology literal");
    auto file = std::make_shared<std::string>();
    check->add_option("file", *file, "file holding one topology literal")
        ->required();
    check->callback([&, file]() {
      action = [&, file]() {
        const FiniteTopology t =
            io::parse_topology_literal(io::read_file(*file));
        const TopologyCheck check = is_topology(t);
        report << "universe size " << t.universe_size() << ", "
               << t.open_count() << " opens: " << check.describe() << '\n';
        porcelain << "valid=" << (check.valid ? "true" : "false") << '\n'
                  << "opens=" << t.open_count() << '\n';
        if (!check.valid) {
          porcelain << "axiom=" << axiom_name(check.failed_axiom) << '\n';
          verdict = 1;
        }
      };
    });

    auto* diag = topo->add_subcommand(
        "diagonal", "check the diagonal-topology axioms on an indexed family");
    auto dfile = std::make_shared<std::string>();
    auto cap = std::make_shared<std::uint64_t>(kDefaultDiagonalCap);
    diag->add_option("file", *dfile, "family fixture file (labels header)")
        ->required();
    diag->add_option("--cap", *cap,
                     "exhaustive-enumeration cap on the open-product size");
    diag->callback([&, dfile, cap]() {
      action = [&, dfile, cap]() {
        const IndexedFamily f = io::parse_family_text(io::read_file(*dfile));
        const DiagonalCheck check =
            check_diagonal_axioms(f, *cap, detail::sampling_seed());
        report << check.describe() << '\n';
        porcelain << "valid=" << (check.valid ? "true" : "false") << '\n'
                  << "exhaustive=" << (check.exhaustive ? "true" : "false")
                  << '\n';
        if (check.exhaustive) {
          porcelain << "opens=" << check.opens_enumerated << '\n';
        } else {
          porcelain << "seed=" << check.seed << '\n';
        }
        if (!check.valid) verdict = 1;
      };
    });
  }

  // ---- family check / chains ----
  auto* family = app.add_subcommand("family", "fractal family operations");
  {
    auto* check = family->add_subcommand(
        "check", "model-check the five fractal-family properties");
    auto file = std::make_shared<std::string>();
    check->add_option("file", *file, "family fixture file")->required();
    check->callback([&, file]() {
      action = [&, file]() {
        const FractalFamilySpec spec =
            io::parse_family_spec_text(io::read_file(*file));
        const PropertyReport r = check_fractal_family(spec);
        report << r.describe();
        static const char* keys[5] = {"property_i", "property_ii",
                                      "property_iii", "property_iv",
                                      "property_v"};
        for (int p = 0; p < 5; ++p) {
          porcelain << keys[p] << '='
                    << (r.pass[static_cast<std::size_t>(p)] ? "pass" : "fail")
                    << '\n';
        }
        if (!r.all_pass()) verdict = 1;
      };
    });

    auto* chains = family->add_subcommand(
        "chains", "extract inclusion chains through a key");
    auto chains_file = std::make_shared<std::string>();
    auto from = std::make_shared<std::string>();
    chains->add_option("file", *chains_file, "family fixture file")
        ->required();
    chains->add_option("--from", *from,
                       "sign-string key (level 0: ascending witness chain; "
                       "deeper keys: descending parent chain)")
        ->required();
    chains->callback([&, chains_file, from]() {
      action = [&, chains_file, from]() {
        const FractalFamilySpec spec =
            io::parse_family_spec_text(io::read_file(*chains_file));
        const SignString key = SignString::parse(*from);
        std::vector<SignString> chain;
        if (key.level() == 0) {
          chain = chain_topologies(spec, key);
          report << "ascending chain from " << key.text() << ':';
        } else {
          chain = chain_sets(spec, key);
          report << "descending chain from " << key.text() << ':';
        }
        porcelain << "from=" << key.text() << '\n' << "chain=";
        for (std::size_t i = 0; i < chain.size(); ++i) {
          report << ' ' << chain[i].text();
          porcelain << (i ? "," : "") << chain[i].text();
        }
        report << '\n';
        porcelain << '\n';
      };
    });
  }

  // shared numeric options
  auto gen_spec = std::make_shared<std::string>();
  auto signs_text = std::make_shared<std::string>();
  auto deltas_text = std::make_shared<std::string>();
  auto domain_text = std::make_shared<std::string>("0:1");
  auto add_generator_options = [&](CLI::App* cmd, bool with_spec_chain) {
    cmd->add_option("--gen", *gen_spec,
                    "generator: weierstrass:a:b[:K], takagi:w[:K], "
                    "constant:c, tabulated:<csv>")
        ->required();
    cmd->add_option("--domain", *domain_text, "generator domain lo:hi");
    if (with_spec_chain) {
      cmd->add_option("--signs", *signs_text, "sign string, e.g. +-")
          ->required();
      cmd->add_option("--deltas", *deltas_text,
                      "comma-separated decreasing widths")
          ->required();
    }
  };
  auto build_spec = [&]() {
    const Interval domain =
        detail::parse_interval(*domain_text, "generator domain");
    return MeanSpec::make(detail::parse_generator(*gen_spec, domain),
                          parse_signs(*signs_text),
                          DeltaVector::from_deltas(
                              detail::parse_deltas(*deltas_text)));
  };

  // ---- mean eval ----
  auto* mean_cmd = app.add_subcommand("mean", "mean-function evaluation");
  {
    auto* eval = mean_cmd->add_subcommand("eval", "evaluate an iterated mean");
    auto x = std::make_shared<double>(0.0);
    auto path = std::make_shared<std::string>("auto");
    add_generator_options(eval, true);
    eval->add_option("--x", *x, "evaluation point")->required();
    eval->add_option("--path", *path, "auto | closed | quad");
    eval->callback([&, x, path]() {
      action = [&, x, path]() {
        const MeanSpec spec = build_spec();
        double value = 0.0;
        std::string used;
        if (*path == "closed") {
          value = iterated_mean_closed(spec, *x);
          used = "closed";
        } else if (*path == "quad") {
          value = iterated_mean_quadrature(spec, *x);
          used = "quadrature";
        } else if (*path == "auto") {
          value = iterated_mean(spec, *x);
          used = spec.generator.has_closed_form() ? "closed" : "quadrature";
        } else {
          throw input_error("--path must be auto, closed or quad");
        }
        report << detail::fmt(value) << '\n';
        porcelain << "value=" << detail::fmt(value) << '\n'
                  << "path=" << used << '\n';
      };
    });
  }

  // ---- graph dump ----
  auto* graph = app.add_subcommand("graph", "graph sampling");
  {
    auto* dump = graph->add_subcommand("dump", "sample a graph to CSV");
    auto interval_text = std::make_shared<std::string>("0:1");
    auto m = std::make_shared<int>(100);
    auto out_path = std::make_shared<std::string>();
    add_generator_options(dump, true);
    dump->add_option("--interval", *interval_text, "sampling interval lo:hi");
    dump->add_option("--m", *m, "sample count (>= 2)");
    dump->add_option("--out", *out_path, "output CSV path (default: stdout)");
    dump->callback([&, interval_text, m, out_path]() {
      action = [&, interval_text, m, out_path]() {
        const MeanSpec spec = build_spec();
        const GraphSample sample = sample_graph(
            spec, detail::parse_interval(*interval_text, "interval"), *m);
        const std::string csv = io::graph_to_csv(sample);
        if (out_path->empty()) {
          report << csv;
        } else {
          io::write_file(*out_path, csv);
          report << "wrote " << sample.points.size() << " points to "
                 << *out_path << '\n';
        }
        if (sample.shrunk) {
          report << "note: interval shrunk to ["
                 << detail::fmt(sample.effective.lo) << ", "
                 << detail::fmt(sample.effective.hi)
                 << "] to stay inside the generator domain\n";
        }
        porcelain << "points=" << sample.points.size() << '\n'
                  << "method=" << sample.method << '\n'
                  << "shrunk=" << (sample.shrunk ? "true" : "false") << '\n';
      };
    });
  }

  // ---- nset dump ----
  auto* nset = app.add_subcommand("nset", "N-set sampling");
  {
    auto* dump = nset->add_subcommand(
        "dump", "sample the three component graphs with tags");
    auto gens = std::make_shared<std::vector<std::string>>();
    auto interval_text = std::make_shared<std::string>("0:1");
    auto m = std::make_shared<int>(100);
    auto out_path = std::make_shared<std::string>();
    dump->add_option("--gen", *gens,
                     "component generator (repeat up to 3 times; a single "
                     "spec is reused for all components)")
        ->required()
        ->expected(1, 3);
    dump->add_option("--domain", *domain_text, "generator domain lo:hi");
    dump->add_option("--signs", *signs_text, "sign string")->required();
    dump->add_option("--deltas", *deltas_text, "comma-separated widths")
        ->required();
    dump->add_option("--interval", *interval_text, "sampling interval lo:hi");
    dump->add_option("--m", *m, "sample count (>= 2)");
    dump->add_option("--out", *out_path, "output CSV path (default: stdout)");
    dump->callback([&, gens, interval_text, m, out_path]() {
      action = [&, gens, interval_text, m, out_path]() {
        if (gens->size() != 1 && gens->size() != 3) {
          throw input_error("nset dump takes one or three --gen specs");
        }
        const Interval domain =
            detail::parse_interval(*domain_text, "generator domain");
        std::array<Generator, 3> generators = {
            detail::parse_generator((*gens)[0], domain),
            detail::parse_generator((*gens)[gens->size() == 3 ? 1 : 0],
                                    domain),
            detail::parse_generator((*gens)[gens->size() == 3 ? 2 : 0],
                                    domain)};
        const NSetSample sample = build_nset(
            generators, parse_signs(*signs_text),
            DeltaVector::from_deltas(detail::parse_deltas(*deltas_text)),
            detail::parse_interval(*interval_text, "interval"), *m);
        const std::string csv = io::nset_to_csv(sample);
        if (out_path->empty()) {
          report << csv;
        } else {
          io::write_file(*out_path, csv);
          report << "wrote " << sample.graphs[0].points.size()
                 << " rows to " << *out_path << '\n';
        }
        porcelain << "rows=" << sample.graphs[0].points.size() << '\n'
                  << "tags=";
        for (std::size_t i = 0; i < sample.tags.size(); ++i) {
          porcelain << (i ? "," : "") << sample.tags[i];
        }
        porcelain << '\n';
      };
    });
  }

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "numerical identity checks");
  {
    auto* pr1 = verify->add_subcommand(
        "pr1", "identification property: appending a zero width is the "
               "identity, and residuals vanish as the width shrinks");
    auto probes = std::make_shared<int>(20);
    auto halvings = std::make_shared<int>(9);
    auto delta_start = std::make_shared<double>(1e-2);
    add_generator_options(pr1, true);
    pr1->add_option("--probes", *probes, "probe points");
    pr1->add_option("--halvings", *halvings, "number of width halvings");
    pr1->add_option("--delta-start", *delta_start, "initial extension width");
    pr1->callback([&, probes, halvings, delta_start]() {
      action = [&, probes, halvings, delta_start]() {
        const MeanSpec spec = build_spec();
        if (*probes < 1 || *halvings < 1) {
          throw input_error("probes and halvings must be positive");
        }
        const Interval hull = spec.reach(0.0);
        const Interval domain = spec.generator.domain();
        const double margin = *delta_start;
        const double lo = domain.lo - hull.lo + margin;
        const double hi = domain.hi - hull.hi - margin;
        if (!(lo < hi)) throw domain_error("no evaluable probe window");
        std::vector<double> xs;
        for (int i = 0; i < *probes; ++i) {
          xs.push_back(*probes == 1
                           ? 0.5 * (lo + hi)
                           : lo + (hi - lo) * static_cast<double>(i) /
                                     static_cast<double>(*probes - 1));
        }
        bool zero_exact = true;
        for (double x : xs) {
          if (identification_residual(spec, x, 0.0, Sign::forward) != 0.0) {
            zero_exact = false;
          }
        }
        report << "residual at width 0: "
               << (zero_exact ? "exactly 0" : "NONZERO") << '\n';
        std::vector<double> averages;
        for (int j = 0; j <= *halvings; ++j) {
          const double delta_next = *delta_start * std::ldexp(1.0, -j);
          double sum = 0.0;
          for (double x : xs) {
            sum += identification_residual(spec, x, delta_next, Sign::forward);
          }
          averages.push_back(sum / static_cast<double>(xs.size()));
          report << "width " << detail::fmt(delta_next)
                 << ": average residual " << detail::fmt(averages.back())
                 << '\n';
        }
        const double ratio = averages.front() / averages.back();
        report << "decay factor over " << *halvings
               << " halvings: " << detail::fmt(ratio) << '\n';
        porcelain << "zero_exact=" << (zero_exact ? "true" : "false") << '\n'
                  << "decay=" << detail::fmt(ratio) << '\n';
        if (!zero_exact || !(ratio >= 10.0)) verdict = 1;
      };
    });

    auto* translation = verify->add_subcommand(
        "translation", "forward graphs translate onto backward graphs");
    auto tprobes = std::make_shared<int>(100);
    add_generator_options(translation, false);
    translation->add_option("--probes", *tprobes, "random probes");
    translation->callback([&, tprobes]() {
      action = [&, tprobes]() {
        const Interval domain =
            detail::parse_interval(*domain_text, "generator domain");
        const Generator g = detail::parse_generator(*gen_spec, domain);
        std::mt19937_64 rng(detail::sampling_seed());
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        const double span = domain.length();
        double worst_quad = 0.0, worst_closed = 0.0;
        for (int probe = 0; probe < *tprobes; ++probe) {
          const double delta0 =
              std::exp(std::log(0.01 * span) +
                       (std::log(0.4 * span) - std::log(0.01 * span)) *
                           uni(rng));
          const double x =
              domain.lo + 0.01 * span +
              (0.97 * span - delta0) * uni(rng);
          worst_quad = std::max(
              worst_quad,
              translation_residual(g, x, delta0, MeanPath::quadrature));
          if (g.has_closed_form()) {
            worst_closed = std::max(
                worst_closed,
                translation_residual(g, x, delta0, MeanPath::closed));
          }
        }
        report << *tprobes << " probes, seed " << detail::sampling_seed()
               << ": quadrature residual <= " << detail::fmt(worst_quad);
        if (g.has_closed_form()) {
          report << ", closed-form residual <= " << detail::fmt(worst_closed);
        }
        report << '\n';
        porcelain << "residual_quadrature=" << detail::fmt(worst_quad) << '\n';
        if (g.has_closed_form()) {
          porcelain << "residual_closed=" << detail::fmt(worst_closed) << '\n';
        }
        if (worst_quad > 1e-9 || worst_closed > 1e-12) verdict = 1;
      };
    });

    auto* formulas = verify->add_subcommand(
        "formulas", "induced-topology set equalities across levels");
    auto file = std::make_shared<std::string>();
    auto n_level = std::make_shared<int>(0);
    auto i_level = std::make_shared<int>(0);
    formulas->add_option("file", *file, "family fixture file")->required();
    formulas->add_option("--n", *n_level, "source level")->required();
    formulas->add_option("--i", *i_level, "inducing level")->required();
    formulas->callback([&, file, n_level, i_level]() {
      action = [&, file, n_level, i_level]() {
        const FractalFamilySpec spec =
            io::parse_family_spec_text(io::read_file(*file));
        const FormulaCheck fc = induced_formula_check(spec, *n_level, *i_level);
        report << "induced formula (n=" << *n_level << ", i=" << *i_level
               << "): " << (fc.holds ? "holds exactly" : "FAILS") << '\n';
        if (!fc.holds) report << fc.witness << '\n';
        porcelain << "holds=" << (fc.holds ? "true" : "false") << '\n';
        if (!fc.holds) verdict = 1;
      };
    });
  }

  // ---- tree print ----
  auto* tree = app.add_subcommand("tree", "expansion diagram");
  {
    auto* print = tree->add_subcommand("print",
                                       "render the expanding diagram");
    auto steps = std::make_shared<int>(0);
    print->add_option("--steps", *steps, "last step to render")->required();
    print->callback([&, steps]() {
      action = [&, steps]() {
        for (int n = 0; n <= *steps; ++n) {
          const StepDiagram d = enumerate_step(n);
          report << "step(" << n << ")  chart "
                 << chart_tuple_size(n) << "-uplet";
          if (n <= kMaxChartStep) {
            report << ": (";
            const auto labels = chart_tuple_labels(n);
            for (std::size_t i = 0; i < labels.size(); ++i) {
              report << (i ? ", " : "") << labels[i];
            }
            report << ')';
          }
          report << '\n';
          for (const StepEntry& e : d.entries) {
            report << "  k=" << e.k << "  "
                   << (e.source.empty() ? "M" : e.source.text())
                   << "  --φ" << e.k << "-->  " << e.plus_child.text()
                   << "    --T" << e.k << "∘φ" << e.k << "-->  "
                   << e.minus_child.text() << '\n';
          }
        }
        porcelain << "steps=" << *steps << '\n'
                  << "entries=" << (std::uint64_t{1} << *steps) << '\n';
      };
    });
  }

  // ---- selftest ----
  {
    auto* self = app.add_subcommand(
        "selftest", "run the full verification battery");
    self->callback([&]() {
      action = [&]() {
        const auto results = selftest::run_acceptance(detail::sampling_seed());
        bool all_ok = true;
        for (const auto& r : results) {
          report << (r.ok() ? "[PASS] " : "[FAIL] ") << r.name << " — "
                 << r.detail << " (" << selftest::io_format(r.elapsed_s)
                 << "s < " << selftest::io_format(r.budget_s) << "s)\n";
          porcelain << "check." << r.name << '='
                    << (r.ok() ? "pass" : "fail") << '\n';
          all_ok = all_ok && r.ok();
        }
        report << (all_ok ? "all checks passed\n" : "checks FAILED\n");
        if (!all_ok) verdict = 1;
      };
    });
  }

  // Let global flags (--porcelain) appear after subcommand tokens.
  const std::function<void(CLI::App*)> enable_fallthrough =
      [&enable_fallthrough](CLI::App* node) {
        for (CLI::App* sub : node->get_subcommands({})) {
          sub->fallthrough();
          enable_fallthrough(sub);
        }
      };
  enable_fallthrough(&app);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    result.exit_code = 0;
    result.report = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = 2;
    result.report = std::string(e.what()) + "\n" + app.help();
    return result;
  }

  if (!action) {
    result.exit_code = 2;
    result.report = app.help();
    return result;
  }

  try {
    action();
    result.exit_code = verdict;
  } catch (const capacity_error& e) {
    result.exit_code = 3;
    result.report = std::string("capacity error: ") + e.what() + '\n';
    return result;
  } catch (const precondition_error& e) {
    result.exit_code = 1;
    result.report = std::string("verification failure: ") + e.what() + '\n';
    return result;
  } catch (const input_error& e) {
    result.exit_code = 2;
    result.report = std::string("input error: ") + e.what() + '\n';
    return result;
  }

  result.report = report.str();
  if (want_porcelain) result.porcelain = porcelain.str();
  return result;
}

}  // namespace cli
}  // namespace fractopo
