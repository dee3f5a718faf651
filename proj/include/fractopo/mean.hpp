#pragma once

// Iterated forward/backward means of a generator.
//
// One averaging level with sign σ and width δ maps f to
//   (σ/δ) ∫_x^{x+σδ} f(t) dt,
// and levels nest outermost-last: a spec (σ0,δ0),...,(σn,δn) applies level 0
// innermost.  δ = 0 at a level means the identity operator (the δ→0 limit of
// the mean).
//
// Two evaluation routes:
//   closed    trig series only: each averaging level multiplies term k by
//             sin(ω_k δ/2)/(ω_k δ/2) and shifts its phase by σδ/2; constants
//             pass through.
//   numeric   per-term nested adaptive Simpson.  Periodic terms are
//             integrated over at most one period (whole periods of the
//             mean-free part integrate to zero, and iterated means of a
//             P-periodic function stay P-periodic with the same average),
//             and terms whose amplitude bound Π min(1, P/δ_j) falls below
//             the tolerance contribute only their mean.  These reductions
//             rely on linearity, periodicity and the triangle inequality
//             only, keeping the route independent of the closed form.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fractopo/errors.hpp"
#include "fractopo/generator.hpp"
#include "fractopo/quadrature.hpp"

namespace fractopo {

inline constexpr double kQuadratureTolerance = 1e-10;

enum class Sign : int { forward = +1, backward = -1 };

inline Sign parse_sign(char c) {
  if (c == '+') return Sign::forward;
  if (c == '-') return Sign::backward;
  throw input_error(std::string("invalid sign '") + c + "'");
}

inline std::vector<Sign> parse_signs(const std::string& text) {
  std::vector<Sign> out;
  out.reserve(text.size());
  for (char c : text) out.push_back(parse_sign(c));
  return out;
}

inline char sign_char(Sign s) { return s == Sign::forward ? '+' : '-'; }

inline double sign_value(Sign s) { return s == Sign::forward ? 1.0 : -1.0; }

// Strictly decreasing widths δ0 > δ1 > ... > δn with δ0 > 0 and δk >= 0,
// each dominated by a strictly decreasing scale chain ε0 > ε1 > ... in (0,1).
class DeltaVector {
 public:
  static DeltaVector make(std::vector<double> deltas,
                          std::vector<double> epsilons) {
    if (deltas.empty()) return DeltaVector{};
    if (deltas.size() != epsilons.size()) {
      throw input_error("delta and epsilon chains must have equal length");
    }
    for (std::size_t k = 0; k < deltas.size(); ++k) {
      if (!(epsilons[k] > 0.0 && epsilons[k] < 1.0)) {
        throw input_error("epsilon values must lie in (0,1)");
      }
      if (k > 0 && !(epsilons[k] < epsilons[k - 1])) {
        throw input_error("epsilon chain must strictly decrease");
      }
      const bool first = (k == 0);
      if (first ? !(deltas[k] > 0.0) : !(deltas[k] >= 0.0)) {
        throw input_error(first ? "delta_0 must be positive"
                                : "delta values must be nonnegative");
      }
      if (!(deltas[k] <= epsilons[k])) {
        throw input_error("delta_" + std::to_string(k) +
                          " exceeds its epsilon");
      }
      if (k > 0 && !(deltas[k] < deltas[k - 1])) {
        throw input_error("delta chain must strictly decrease");
      }
    }
    DeltaVector d;
    d.deltas_ = std::move(deltas);
    d.epsilons_ = std::move(epsilons);
    return d;
  }

  // Builds the default scale chain ε_k = δ_k (or half the predecessor for a
  // trailing zero).
  static DeltaVector from_deltas(std::vector<double> deltas) {
    std::vector<double> epsilons;
    epsilons.reserve(deltas.size());
    for (std::size_t k = 0; k < deltas.size(); ++k) {
      if (deltas[k] > 0.0) {
        epsilons.push_back(deltas[k]);
      } else if (k > 0) {
        epsilons.push_back(deltas[k - 1] / 2.0);
      } else {
        throw input_error("delta_0 must be positive");
      }
    }
    return make(std::move(deltas), std::move(epsilons));
  }

  std::size_t size() const { return deltas_.size(); }
  bool empty() const { return deltas_.empty(); }
  double delta(std::size_t k) const { return deltas_[k]; }
  double epsilon(std::size_t k) const { return epsilons_[k]; }
  const std::vector<double>& deltas() const { return deltas_; }

  DeltaVector extended(double delta_next) const {
    if (empty()) {
      return from_deltas({delta_next});
    }
    if (delta_next > 0.0 && !(delta_next < deltas_.back())) {
      throw input_error("extension delta must undercut the last delta");
    }
    if (delta_next == 0.0 && !(deltas_.back() > 0.0)) {
      throw input_error("zero extension requires a positive last delta");
    }
    std::vector<double> deltas = deltas_;
    deltas.push_back(delta_next);
    return from_deltas(std::move(deltas));
  }

 private:
  std::vector<double> deltas_;
  std::vector<double> epsilons_;
};

// One iterated mean F^{σ0...σn}_{δ0...δn} of a generator.  Empty sign/delta
// chains denote the raw generator (no averaging).
struct MeanSpec {
  Generator generator;
  std::vector<Sign> signs;
  DeltaVector deltas;
  int component = 1;  // 1..3 when addressing one of three generators

  static MeanSpec make(Generator generator, std::vector<Sign> signs,
                       DeltaVector deltas, int component = 1) {
    if (signs.size() != deltas.size()) {
      throw input_error("sign and delta chains must have equal length");
    }
    if (component < 1 || component > 3) {
      throw input_error("component index must be 1, 2 or 3");
    }
    return MeanSpec{std::move(generator), std::move(signs), std::move(deltas),
                    component};
  }

  std::size_t levels() const { return signs.size(); }

  std::string signs_text() const {
    std::string out;
    for (Sign s : signs) out.push_back(sign_char(s));
    return out;
  }

  // Hull of all points the nested integrals can touch when evaluating at x.
  Interval reach(double x) const {
    double lo = 0.0, hi = 0.0;
    for (std::size_t k = 0; k < levels(); ++k) {
      const double step = sign_value(signs[k]) * deltas.delta(k);
      lo += std::min(0.0, step);
      hi += std::max(0.0, step);
    }
    return {x + lo, x + hi};
  }

  void require_evaluable(double x) const {
    if (!generator.domain().contains(reach(x))) {
      throw domain_error("evaluation at " + std::to_string(x) +
                         " escapes the generator domain");
    }
  }
};

namespace detail {

inline double sinc(double u) {
  if (u == 0.0) return 1.0;
  return std::sin(u) / u;
}

// Closed-form iterated mean of a trig series:
//   c0 + Σ_k amp_k Π_j sinc(ω_k δ_j/2) · cos(ω_k (x + Σ_j σ_j δ_j/2)).
inline double closed_form_value(const Generator& g,
                                const std::vector<Sign>& signs,
                                const std::vector<double>& deltas, double x) {
  double shift = 0.0;
  for (std::size_t j = 0; j < deltas.size(); ++j) {
    shift += sign_value(signs[j]) * deltas[j] * 0.5;
  }
  double sum = g.constant_part();
  for (const Generator::TrigTerm& term : g.trig_terms()) {
    double damping = 1.0;
    for (double delta : deltas) damping *= sinc(term.omega * delta * 0.5);
    sum += term.amplitude * damping * std::cos(term.omega * (x + shift));
  }
  return sum;
}

// Nested mean of one zero-mean term through levels [0..level], evaluated at
// x.  `period` > 0 enables the whole-period reduction.  Inner levels run at
// an 8x tighter tolerance so the outer Simpson estimate is not dominated by
// inner evaluation noise.
template <class Term>
double nested_term_mean(const Term& term, double period,
                        const std::vector<Sign>& signs,
                        const std::vector<double>& deltas, int level, double x,
                        double tol, QuadratureStats* stats) {
  if (level < 0) return term(x);
  const double delta = deltas[static_cast<std::size_t>(level)];
  if (delta == 0.0) {
    return nested_term_mean(term, period, signs, deltas, level - 1, x, tol,
                            stats);
  }
  double u = sign_value(signs[static_cast<std::size_t>(level)]) * delta;
  if (period > 0.0 && delta > period) {
    const double whole = std::floor(delta / period);
    u -= (u < 0.0 ? -whole : whole) * period;
  }
  const auto inner = [&](double t) {
    return nested_term_mean(term, period, signs, deltas, level - 1, t,
                            tol * 0.125, stats);
  };
  const double integral =
      adaptive_simpson(inner, x, x + u, tol * delta, stats);
  return sign_value(signs[static_cast<std::size_t>(level)]) / delta * integral;
}

inline double numeric_value(const Generator& g, const std::vector<Sign>& signs,
                            const std::vector<double>& deltas, double x,
                            double tol, QuadratureStats* stats) {
  double sum = g.constant_part();

  // Amplitude bound of each term after all averaging levels; terms whose
  // zero-mean part cannot reach the tolerance contribute just their mean.
  const int terms = g.term_count();
  std::vector<int> active;
  const double skip_tol = tol / (4.0 * (terms + 1));
  for (int k = 0; k < terms; ++k) {
    const TermInfo info = g.term_info(k);
    double bound = info.amplitude;
    if (info.period > 0.0) {
      for (double delta : deltas) {
        if (delta > 0.0) bound *= std::min(1.0, info.period / delta);
      }
    }
    sum += info.mean;
    if (bound >= skip_tol) active.push_back(k);
  }

  for (int k : active) {
    const TermInfo info = g.term_info(k);
    const auto zero_mean = [&](double t) {
      return g.term_value(k, t) - info.mean;
    };
    sum += nested_term_mean(zero_mean, info.period, signs, deltas,
                            static_cast<int>(deltas.size()) - 1, x, tol,
                            stats);
  }
  return sum;
}

}  // namespace detail

inline double eval_generator(const Generator& g, double t) {
  return g.value(t);
}

namespace detail {

// A single mean is not bound by the nested-range rules: any δ > 0 with
// [x, x+σδ] inside the domain is admissible.
inline void require_single_mean(const Generator& g, double x, Sign sign,
                                double delta) {
  if (!(delta > 0.0)) throw input_error("mean width must be positive");
  const double far = x + sign_value(sign) * delta;
  if (!g.domain().contains({std::min(x, far), std::max(x, far)})) {
    throw domain_error("mean interval escapes the generator domain");
  }
}

}  // namespace detail

// Single averaging level (σ/δ) ∫_x^{x+σδ} f.
inline double mean_quadrature(const Generator& g, double x, Sign sign,
                              double delta, double tol = kQuadratureTolerance,
                              QuadratureStats* stats = nullptr) {
  detail::require_single_mean(g, x, sign, delta);
  return detail::numeric_value(g, {sign}, {delta}, x, tol, stats);
}

inline double mean_closed(const Generator& g, double x, Sign sign,
                          double delta) {
  detail::require_single_mean(g, x, sign, delta);
  if (!g.has_closed_form()) {
    throw input_error("generator admits no closed-form mean");
  }
  return detail::closed_form_value(g, {sign}, {delta}, x);
}

inline double mean(const Generator& g, double x, Sign sign, double delta) {
  return g.has_closed_form() ? mean_closed(g, x, sign, delta)
                             : mean_quadrature(g, x, sign, delta);
}

inline double iterated_mean_closed(const MeanSpec& spec, double x) {
  if (!spec.generator.has_closed_form()) {
    throw input_error("generator admits no closed-form mean");
  }
  spec.require_evaluable(x);
  return detail::closed_form_value(spec.generator, spec.signs,
                                   spec.deltas.deltas(), x);
}

inline double iterated_mean_quadrature(const MeanSpec& spec, double x,
                                       double tol = kQuadratureTolerance,
                                       QuadratureStats* stats = nullptr) {
  spec.require_evaluable(x);
  return detail::numeric_value(spec.generator, spec.signs,
                               spec.deltas.deltas(), x, tol, stats);
}

inline double iterated_mean(const MeanSpec& spec, double x) {
  return spec.generator.has_closed_form() ? iterated_mean_closed(spec, x)
                                          : iterated_mean_quadrature(spec, x);
}

struct GraphSample {
  MeanSpec spec;
  std::vector<std::pair<double, double>> points;
  // Quadrature metadata.
  std::string method;
  double tolerance = 0.0;
  std::int64_t evaluations = 0;
  Interval requested{0.0, 1.0};
  Interval effective{0.0, 1.0};
  bool shrunk = false;
};

// m equally spaced samples of the iterated mean (or of the raw generator for
// an empty spec).  The interval is shrunk to the evaluable window when the
// averaging levels would escape the domain; the shrink is recorded.
inline GraphSample sample_graph(const MeanSpec& spec, Interval interval,
                                int m) {
  if (m < 2) throw input_error("graph sampling needs at least two points");
  if (!(interval.lo < interval.hi)) {
    throw input_error("sampling interval must satisfy lo < hi");
  }
  const Interval reach0 = spec.reach(0.0);  // offsets around any x
  const Interval domain = spec.generator.domain();
  Interval usable{domain.lo - reach0.lo, domain.hi - reach0.hi};
  GraphSample sample;
  sample.spec = spec;
  sample.requested = interval;
  sample.effective = {std::max(interval.lo, usable.lo),
                      std::min(interval.hi, usable.hi)};
  sample.shrunk = sample.effective.lo != interval.lo ||
                  sample.effective.hi != interval.hi;
  if (!(sample.effective.lo < sample.effective.hi)) {
    throw domain_error("sampling interval escapes the generator domain");
  }

  const bool closed = spec.generator.has_closed_form();
  sample.method = spec.levels() == 0
                      ? "direct"
                      : (closed ? "closed-form" : "adaptive-simpson");
  sample.tolerance = closed || spec.levels() == 0 ? 0.0 : kQuadratureTolerance;

  QuadratureStats stats;
  sample.points.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double x =
        sample.effective.lo + (sample.effective.hi - sample.effective.lo) *
                                  static_cast<double>(i) /
                                  static_cast<double>(m - 1);
    double y = 0.0;
    if (spec.levels() == 0) {
      y = spec.generator.value(x);
    } else if (closed) {
      y = iterated_mean_closed(spec, x);
    } else {
      y = iterated_mean_quadrature(spec, x, kQuadratureTolerance, &stats);
    }
    if (!std::isfinite(y)) {
      throw domain_error("non-finite sample value at x = " +
                         std::to_string(x));
    }
    sample.points.emplace_back(x, y);
  }
  sample.evaluations = stats.evaluations;
  return sample;
}

struct Point {
  double abscissa = 0.0;
  double ordinate = 0.0;
};

// T_{δ0}: (a, b) -> (a + δ0, b).
inline Point translate(Point p, double delta0) {
  if (!(delta0 > 0.0)) throw input_error("translation width must be positive");
  return {p.abscissa + delta0, p.ordinate};
}

enum class MeanPath { automatic, closed, quadrature };

// |backward mean at x+δ0 − forward mean at x|; zero in exact arithmetic
// because both sides equal (1/δ0)∫_x^{x+δ0} f.
inline double translation_residual(const Generator& g, double x, double delta0,
                                   MeanPath path = MeanPath::automatic,
                                   QuadratureStats* stats = nullptr) {
  if (!(delta0 > 0.0)) throw input_error("translation width must be positive");
  if (!g.domain().contains({x, x + delta0})) {
    throw domain_error("translation interval escapes the generator domain");
  }
  const bool use_closed = path == MeanPath::closed ||
                          (path == MeanPath::automatic && g.has_closed_form());
  if (use_closed) {
    const double forward = mean_closed(g, x, Sign::forward, delta0);
    const double backward =
        mean_closed(g, x + delta0, Sign::backward, delta0);
    return std::abs(backward - forward);
  }
  const double forward =
      mean_quadrature(g, x, Sign::forward, delta0, kQuadratureTolerance, stats);
  const double backward = mean_quadrature(g, x + delta0, Sign::backward,
                                          delta0, kQuadratureTolerance, stats);
  return std::abs(backward - forward);
}

// |iterated mean of the spec extended by (σ_next, δ_next) − iterated mean of
// the spec| at x.  Exactly zero at δ_next = 0, where the extra level is the
// identity operator.
inline double identification_residual(const MeanSpec& spec, double x,
                                      double delta_next, Sign sign_next,
                                      MeanPath path = MeanPath::automatic) {
  std::vector<Sign> signs = spec.signs;
  signs.push_back(sign_next);
  const MeanSpec extended = MeanSpec::make(
      spec.generator, std::move(signs), spec.deltas.extended(delta_next),
      spec.component);
  const bool use_closed =
      path == MeanPath::closed ||
      (path == MeanPath::automatic && spec.generator.has_closed_form());
  if (use_closed) {
    return std::abs(iterated_mean_closed(extended, x) -
                    iterated_mean_closed(spec, x));
  }
  return std::abs(iterated_mean_quadrature(extended, x) -
                  iterated_mean_quadrature(spec, x));
}

struct NSetSample {
  std::array<GraphSample, 3> graphs;
  std::vector<std::string> tags;  // (δ_n, ..., δ_0)
};

// Shortest round-trip decimal form, so a width given as 0.1 tags as "0.1".
inline std::string format_delta_tag(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

// Product sample of the three component graphs sharing signs and deltas,
// tagged by the widths in reverse order (δ_n first).  The sampling window is
// shrunk to the intersection of the three evaluable windows so the grids
// stay aligned.
inline NSetSample build_nset(const std::array<Generator, 3>& generators,
                             const std::vector<Sign>& signs,
                             const DeltaVector& deltas, Interval interval,
                             int m) {
  std::array<MeanSpec, 3> specs;
  Interval window = interval;
  for (int i = 0; i < 3; ++i) {
    specs[static_cast<std::size_t>(i)] = MeanSpec::make(
        generators[static_cast<std::size_t>(i)], signs, deltas, i + 1);
    const Interval reach0 = specs[static_cast<std::size_t>(i)].reach(0.0);
    const Interval domain =
        generators[static_cast<std::size_t>(i)].domain();
    window.lo = std::max(window.lo, domain.lo - reach0.lo);
    window.hi = std::min(window.hi, domain.hi - reach0.hi);
  }
  if (!(window.lo < window.hi)) {
    throw domain_error("sampling interval escapes the generator domains");
  }
  NSetSample out;
  for (int i = 0; i < 3; ++i) {
    out.graphs[static_cast<std::size_t>(i)] =
        sample_graph(specs[static_cast<std::size_t>(i)], window, m);
    out.graphs[static_cast<std::size_t>(i)].requested = interval;
    out.graphs[static_cast<std::size_t>(i)].shrunk =
        window.lo != interval.lo || window.hi != interval.hi;
  }
  for (std::size_t k = deltas.size(); k-- > 0;) {
    out.tags.push_back(format_delta_tag(deltas.delta(k)));
  }
  return out;
}

}  // namespace fractopo
