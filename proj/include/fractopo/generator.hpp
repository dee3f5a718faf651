#pragma once

// Generator functions for the mean-function hierarchy.  Three kinds:
//
//   trig       c0 + Σ_k amp_k · cos(omega_k · t)      (Weierstrass et al.)
//   takagi     Σ_k w^k · s(2^k t), s = distance to the nearest integer
//   tabulated  piecewise-linear interpolation of sample points
//
// Trig series admit an exact per-term closed form under iterated averaging;
// the other kinds are integrated numerically.  For the numerical path every
// kind exposes its terms as (periodic part + mean) so oscillation can be
// integrated over a single period.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fractopo/errors.hpp"

namespace fractopo {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  bool contains(double t) const { return t >= lo && t <= hi; }
  bool contains(const Interval& other) const {
    return other.lo >= lo && other.hi <= hi;
  }
  double length() const { return hi - lo; }
};

inline constexpr double kGeneratorTailBound = 1e-14;

// Truncation order making the dropped geometric tail ratio^{K+1}/(1-ratio)
// fall below the tail bound.
inline int tail_truncation_order(double ratio) {
  double tail = ratio / (1.0 - ratio);
  int k = 0;
  while (tail >= kGeneratorTailBound) {
    tail *= ratio;
    ++k;
    if (k > 4096) throw input_error("tail truncation does not converge");
  }
  return k;
}

// Descriptor of one additive term for the numerical path.
struct TermInfo {
  double period = 0.0;     // 0 = aperiodic
  double mean = 0.0;       // average over one period (periodic terms only)
  double amplitude = 0.0;  // sup-norm bound of (term - mean)
};

class Generator {
 public:
  enum class Kind { trig, takagi, tabulated };

  struct TrigTerm {
    double amplitude = 0.0;
    double omega = 0.0;  // angular frequency, > 0
  };

  // Raw trigonometric series constructor.
  static Generator cosine_series(double constant, std::vector<TrigTerm> terms,
                                 Interval domain) {
    check_domain(domain);
    for (const TrigTerm& term : terms) {
      if (term.omega <= 0.0) {
        throw input_error("cosine term frequency must be positive");
      }
    }
    Generator g;
    g.kind_ = Kind::trig;
    g.domain_ = domain;
    g.constant_ = constant;
    g.trig_terms_ = std::move(terms);
    g.description_ = "cosine-series";
    return g;
  }

  // Σ_{k=0}^{K} a^k cos(b^k π t) with the classical nowhere-differentiability
  // condition ab > 1 + 3π/2 and odd integer b.  K defaults to the tail rule
  // a^{K+1}/(1-a) < 1e-14.
  static Generator weierstrass(double a, int b,
                               std::optional<int> terms = std::nullopt,
                               Interval domain = {0.0, 1.0}) {
    if (!(a > 0.0 && a < 1.0)) {
      throw input_error("weierstrass parameter a must lie in (0,1)");
    }
    if (b < 3 || b % 2 == 0) {
      throw input_error("weierstrass parameter b must be an odd integer >= 3");
    }
    if (!(a * b > 1.0 + 1.5 * std::acos(-1.0))) {
      throw input_error("weierstrass parameters must satisfy ab > 1 + 3π/2");
    }
    const int order = terms.has_value() ? *terms : tail_truncation_order(a);
    if (order < 0) throw input_error("truncation order must be nonnegative");
    const double pi = std::acos(-1.0);
    std::vector<TrigTerm> series;
    series.reserve(static_cast<std::size_t>(order) + 1);
    double amp = 1.0;
    double omega = pi;
    for (int k = 0; k <= order; ++k) {
      series.push_back({amp, omega});
      amp *= a;
      omega *= b;
    }
    Generator g = cosine_series(0.0, std::move(series), domain);
    g.description_ = "weierstrass(a=" + format_param(a) +
                     ",b=" + std::to_string(b) +
                     ",K=" + std::to_string(order) + ")";
    return g;
  }

  // Σ_{k=0}^{K} w^k s(2^k t).
  static Generator takagi(double w, std::optional<int> terms = std::nullopt,
                          Interval domain = {0.0, 1.0}) {
    check_domain(domain);
    if (!(w > 0.0 && w < 1.0)) {
      throw input_error("takagi parameter w must lie in (0,1)");
    }
    const int order = terms.has_value() ? *terms : tail_truncation_order(w);
    if (order < 0) throw input_error("truncation order must be nonnegative");
    Generator g;
    g.kind_ = Kind::takagi;
    g.domain_ = domain;
    g.takagi_w_ = w;
    g.takagi_order_ = order;
    g.description_ =
        "takagi(w=" + format_param(w) + ",K=" + std::to_string(order) + ")";
    return g;
  }

  // Piecewise-linear interpolation of (t, f(t)) samples; the domain is the
  // sample range.
  static Generator tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) {
      throw input_error("tabulated generator needs at least two samples");
    }
    std::sort(samples.begin(), samples.end());
    for (std::size_t i = 1; i < samples.size(); ++i) {
      if (!(samples[i - 1].first < samples[i].first)) {
        throw input_error("tabulated abscissae must be strictly increasing");
      }
    }
    Generator g;
    g.kind_ = Kind::tabulated;
    g.domain_ = {samples.front().first, samples.back().first};
    g.samples_ = std::move(samples);
    g.description_ =
        "tabulated(" + std::to_string(g.samples_.size()) + " samples)";
    return g;
  }

  static Generator constant(double c, Interval domain = {0.0, 1.0}) {
    Generator g = cosine_series(c, {}, domain);
    g.description_ = "constant(" + format_param(c) + ")";
    return g;
  }

  Kind kind() const { return kind_; }
  const Interval& domain() const { return domain_; }
  const std::string& description() const { return description_; }
  bool has_closed_form() const { return kind_ == Kind::trig; }

  double value(double t) const {
    if (!domain_.contains(t)) {
      throw domain_error("evaluation point " + format_param(t) +
                         " outside generator domain");
    }
    return value_unchecked(t);
  }

  double value_unchecked(double t) const {
    switch (kind_) {
      case Kind::trig: {
        double sum = constant_;
        for (const TrigTerm& term : trig_terms_) {
          sum += term.amplitude * std::cos(term.omega * t);
        }
        return sum;
      }
      case Kind::takagi: {
        double sum = 0.0;
        double w = 1.0;
        double scale = 1.0;
        for (int k = 0; k <= takagi_order_; ++k) {
          const double u = scale * t;
          sum += w * std::abs(u - std::nearbyint(u));
          w *= takagi_w_;
          scale *= 2.0;
        }
        return sum;
      }
      case Kind::tabulated: {
        const auto it = std::lower_bound(
            samples_.begin(), samples_.end(), t,
            [](const auto& s, double v) { return s.first < v; });
        if (it == samples_.begin()) return it->second;
        if (it == samples_.end()) return samples_.back().second;
        const auto& [t1, y1] = *std::prev(it);
        const auto& [t2, y2] = *it;
        return y1 + (y2 - y1) * (t - t1) / (t2 - t1);
      }
    }
    return 0.0;
  }

  // Constant component passed through averaging untouched.
  double constant_part() const {
    return kind_ == Kind::trig ? constant_ : 0.0;
  }

  // Additive decomposition for the numerical path; the full generator is
  // constant_part() + Σ term_value(k, ·).
  int term_count() const {
    switch (kind_) {
      case Kind::trig: return static_cast<int>(trig_terms_.size());
      case Kind::takagi: return takagi_order_ + 1;
      case Kind::tabulated: return 1;
    }
    return 0;
  }

  TermInfo term_info(int k) const {
    switch (kind_) {
      case Kind::trig: {
        const TrigTerm& term = trig_terms_[static_cast<std::size_t>(k)];
        const double pi = std::acos(-1.0);
        return {2.0 * pi / term.omega, 0.0, std::abs(term.amplitude)};
      }
      case Kind::takagi: {
        const double w = std::pow(takagi_w_, k);
        // s(2^k t): period 2^-k, average 1/4, |s - 1/4| <= 1/4.
        return {std::ldexp(1.0, -k), 0.25 * w, 0.25 * w};
      }
      case Kind::tabulated: {
        double lo = samples_.front().second, hi = lo;
        for (const auto& [t, y] : samples_) {
          lo = std::min(lo, y);
          hi = std::max(hi, y);
        }
        return {0.0, 0.0, std::max(std::abs(lo), std::abs(hi))};
      }
    }
    return {};
  }

  double term_value(int k, double t) const {
    switch (kind_) {
      case Kind::trig: {
        const TrigTerm& term = trig_terms_[static_cast<std::size_t>(k)];
        return term.amplitude * std::cos(term.omega * t);
      }
      case Kind::takagi: {
        const double u = std::ldexp(t, k);
        return std::pow(takagi_w_, k) * std::abs(u - std::nearbyint(u));
      }
      case Kind::tabulated:
        return value_unchecked(t);
    }
    return 0.0;
  }

  const std::vector<TrigTerm>& trig_terms() const { return trig_terms_; }

 private:
  static void check_domain(const Interval& domain) {
    if (!(domain.lo < domain.hi)) {
      throw input_error("generator domain must satisfy lo < hi");
    }
  }

  static std::string format_param(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
  }

  Kind kind_ = Kind::trig;
  Interval domain_{0.0, 1.0};
  std::string description_ = "constant(0)";
  // trig
  double constant_ = 0.0;
  std::vector<TrigTerm> trig_terms_;
  // takagi
  double takagi_w_ = 0.5;
  int takagi_order_ = 0;
  // tabulated
  std::vector<std::pair<double, double>> samples_;
};

}  // namespace fractopo
