// Numerical tests for generators, single and iterated means, graph
// sampling, translation and identification residuals.
//
// Analytic oracles used throughout:
//   - constants are preserved exactly by every averaging level;
//   - for g(t) = t, one level (σ,δ) maps x to x + σδ/2, so an iterated
//     mean shifts x by Σ σ_j δ_j / 2;
//   - for g(t) = cos(ωt), one level multiplies the amplitude by
//     sin(ωδ/2)/(ωδ/2) and shifts the phase by σδ/2.

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>
#include <set>
#include <string>

#include "fractopo/mean.hpp"
#include "fractopo/sign_string.hpp"

using namespace fractopo;

namespace {

const double kPi = std::acos(-1.0);

Generator linear_generator() {
  return Generator::tabulated({{0.0, 0.0}, {1.0, 1.0}});
}

Generator cosine_pi() {
  return Generator::cosine_series(0.0, {{1.0, kPi}}, {0.0, 1.0});
}

}  // namespace

TEST(Generator, WeierstrassAtZeroIsTheGeometricSum) {
  const Generator w = Generator::weierstrass(0.5, 13);
  const double geometric =
      (1.0 - std::pow(0.5, w.term_count())) / (1.0 - 0.5);
  EXPECT_NEAR(w.value(0.0), geometric, 1e-12);
  EXPECT_NEAR(geometric, 2.0, 1e-13);
}

TEST(Generator, WeierstrassAtOneFlipsSignForOddBase) {
  // cos(b^k π) = -1 for odd b, so the exact value is minus the geometric
  // sum.  In doubles the frequencies above 2^53 carry phase rounding, which
  // bounds the achievable accuracy near 1e-4.
  const Generator w = Generator::weierstrass(0.5, 13);
  const double geometric =
      (1.0 - std::pow(0.5, w.term_count())) / (1.0 - 0.5);
  EXPECT_NEAR(w.value(1.0), -geometric, 5e-4);
  // With the frequencies kept below 2^53 the identity is tight.
  const Generator small = Generator::weierstrass(0.5, 13, 12);
  const double partial = (1.0 - std::pow(0.5, 13)) / 0.5;
  EXPECT_NEAR(small.value(1.0), -partial, 1e-9);
}

TEST(Generator, WeierstrassValidatesParameters) {
  EXPECT_THROW(Generator::weierstrass(0.3, 13), input_error);  // ab < 1+3π/2
  EXPECT_THROW(Generator::weierstrass(0.5, 12), input_error);  // even b
  EXPECT_THROW(Generator::weierstrass(1.1, 13), input_error);
}

TEST(Generator, WeierstrassTailRule) {
  // a^{K+1}/(1-a) < 1e-14 with a = 1/2 first holds at K = 47.
  const Generator w = Generator::weierstrass(0.5, 13);
  EXPECT_EQ(w.term_count(), 48);
  EXPECT_LT(std::pow(0.5, 48) / 0.5, 1e-14);
  EXPECT_GE(std::pow(0.5, 47) / 0.5, 1e-14);
}

TEST(Generator, TakagiValues) {
  const Generator t = Generator::takagi(0.5);
  EXPECT_EQ(t.value(0.0), 0.0);
  // At 1/2 only the k = 0 term survives: s(1/2) = 1/2.
  EXPECT_NEAR(t.value(0.5), 0.5, 1e-15);
}

TEST(Generator, TabulatedInterpolatesLinearly) {
  const Generator g = Generator::tabulated({{0.0, 1.0}, {2.0, 3.0}});
  EXPECT_DOUBLE_EQ(g.value(0.0), 1.0);
  EXPECT_DOUBLE_EQ(g.value(1.0), 2.0);
  EXPECT_DOUBLE_EQ(g.value(2.0), 3.0);
  EXPECT_THROW(g.value(2.5), domain_error);
  EXPECT_THROW(Generator::tabulated({{0.0, 1.0}}), input_error);
  EXPECT_THROW(Generator::tabulated({{0.0, 1.0}, {0.0, 2.0}}), input_error);
}

TEST(Generator, DomainIsEnforced) {
  const Generator w = Generator::weierstrass(0.5, 13);
  EXPECT_THROW(w.value(-0.1), domain_error);
  EXPECT_THROW(w.value(1.1), domain_error);
}

TEST(Quadrature, ExactOnCubicsAndAccurateOnSine) {
  QuadratureStats stats;
  const double cubic =
      adaptive_simpson([](double t) { return t * t * t; }, 0.0, 2.0, 1e-12,
                       &stats);
  EXPECT_NEAR(cubic, 4.0, 1e-12);
  EXPECT_GT(stats.evaluations, 0);
  const double sine = adaptive_simpson([](double t) { return std::sin(t); },
                                       0.0, kPi, 1e-12, nullptr);
  EXPECT_NEAR(sine, 2.0, 1e-10);
  EXPECT_DOUBLE_EQ(
      adaptive_simpson([](double) { return 1.0; }, 1.0, 1.0, 1e-10, nullptr),
      0.0);
  // Reversed limits flip the sign.
  EXPECT_NEAR(adaptive_simpson([](double t) { return t; }, 1.0, 0.0, 1e-12,
                               nullptr),
              -0.5, 1e-12);
}

TEST(Mean, ConstantIsPreservedExactly) {
  const Generator c = Generator::constant(2.5);
  EXPECT_EQ(mean(c, 0.3, Sign::forward, 0.2), 2.5);
  EXPECT_EQ(mean_quadrature(c, 0.3, Sign::backward, 0.2), 2.5);
}

TEST(Mean, LinearGeneratorMovesToTheMidpoint) {
  const Generator lin = linear_generator();
  // (1/δ)∫_0^δ t dt = δ/2.
  EXPECT_NEAR(mean(lin, 0.0, Sign::forward, 0.1), 0.05, 1e-12);
  EXPECT_NEAR(mean(lin, 0.5, Sign::backward, 0.2), 0.4, 1e-12);
}

TEST(Mean, CosineAveragesToSincTimesShiftedCosine) {
  const Generator g = cosine_pi();
  // (1/1)∫_0^1 cos(πt) dt = 0.
  EXPECT_NEAR(mean_closed(g, 0.0, Sign::forward, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(mean_quadrature(g, 0.0, Sign::forward, 1.0), 0.0, 1e-10);
  // General point: sinc(πδ/2)·cos(π(x+δ/2)).
  const double x = 0.25, delta = 0.3;
  const double oracle = std::sin(kPi * delta / 2.0) / (kPi * delta / 2.0) *
                        std::cos(kPi * (x + delta / 2.0));
  EXPECT_NEAR(mean_closed(g, x, Sign::forward, delta), oracle, 1e-14);
  EXPECT_NEAR(mean_quadrature(g, x, Sign::forward, delta), oracle, 1e-10);
}

TEST(Mean, TakagiQuadratureMatchesTheAntiderivativeOracle) {
  // ∫ s(2^k t) dt = 2^-k (S(2^k(x+δ)) - S(2^k x)) with S the piecewise
  // quadratic antiderivative of the triangle wave.
  const auto S = [](double u) {
    const double n = std::floor(u);
    const double f = u - n;
    return n / 4.0 + (f <= 0.5 ? f * f / 2.0 : 0.25 - (1.0 - f) * (1.0 - f) / 2.0);
  };
  const Generator t = Generator::takagi(0.5);
  const double x = 0.21875, delta = 0.3125;
  double oracle = 0.0;
  double w = 1.0, scale = 1.0;
  for (int k = 0; k < t.term_count(); ++k) {
    oracle += w / scale * (S(scale * (x + delta)) - S(scale * x));
    w *= 0.5;
    scale *= 2.0;
  }
  oracle /= delta;
  EXPECT_NEAR(mean_quadrature(t, x, Sign::forward, delta), oracle, 1e-9);
}

TEST(Mean, RejectsBadWidthsAndDomainEscapes) {
  const Generator lin = linear_generator();
  EXPECT_THROW(mean(lin, 0.0, Sign::forward, 0.0), input_error);
  EXPECT_THROW(mean(lin, 0.0, Sign::forward, -0.1), input_error);
  EXPECT_THROW(mean(lin, 0.9, Sign::forward, 0.2), domain_error);
  EXPECT_THROW(mean(lin, 0.05, Sign::backward, 0.1), domain_error);
}

TEST(DeltaVector, EnforcesTheNestedRangeRules) {
  EXPECT_THROW(DeltaVector::from_deltas({0.0}), input_error);
  EXPECT_THROW(DeltaVector::from_deltas({0.1, 0.1}), input_error);
  EXPECT_THROW(DeltaVector::from_deltas({0.1, 0.2}), input_error);
  EXPECT_THROW(DeltaVector::from_deltas({0.1, 0.0, 0.01}), input_error);
  EXPECT_THROW(DeltaVector::make({0.5}, {1.0}), input_error);   // ε not in (0,1)
  EXPECT_THROW(DeltaVector::make({0.5}, {0.4}), input_error);   // δ > ε
  EXPECT_NO_THROW(DeltaVector::from_deltas({0.2, 0.05, 0.0}));  // trailing zero
  const DeltaVector d = DeltaVector::from_deltas({0.2, 0.05});
  EXPECT_THROW(d.extended(0.05), input_error);
  EXPECT_THROW(d.extended(0.1), input_error);
  EXPECT_NO_THROW(d.extended(0.0));
  EXPECT_NO_THROW(d.extended(0.01));
}

TEST(MeanSpec, ValidatesShapeAndReach) {
  const Generator lin = linear_generator();
  EXPECT_THROW(MeanSpec::make(lin, {Sign::forward},
                              DeltaVector::from_deltas({0.1, 0.05})),
               input_error);
  EXPECT_THROW(MeanSpec::make(lin, {Sign::forward},
                              DeltaVector::from_deltas({0.1}), 4),
               input_error);
  const MeanSpec spec =
      MeanSpec::make(lin, {Sign::forward, Sign::backward},
                     DeltaVector::from_deltas({0.2, 0.05}));
  const Interval hull = spec.reach(0.5);
  EXPECT_DOUBLE_EQ(hull.lo, 0.45);
  EXPECT_DOUBLE_EQ(hull.hi, 0.7);
  EXPECT_THROW(iterated_mean(spec, 0.9), domain_error);
}

TEST(IteratedMean, ConstantSurvivesEveryLevel) {
  const Generator c = Generator::constant(-1.25);
  const MeanSpec spec = MeanSpec::make(
      c, {Sign::forward, Sign::backward, Sign::forward},
      DeltaVector::from_deltas({0.2, 0.1, 0.01}));
  EXPECT_EQ(iterated_mean_closed(spec, 0.4), -1.25);
  EXPECT_EQ(iterated_mean_quadrature(spec, 0.4), -1.25);
}

TEST(IteratedMean, LinearGeneratorAccumulatesHalfSteps) {
  const Generator lin = linear_generator();
  const MeanSpec spec =
      MeanSpec::make(lin, {Sign::forward, Sign::backward},
                     DeltaVector::from_deltas({0.1, 0.03}));
  const double oracle = 0.4 + 0.05 - 0.015;
  EXPECT_NEAR(iterated_mean_quadrature(spec, 0.4), oracle, 1e-12);
}

TEST(IteratedMean, TrailingZeroWidthIsTheIdentityOperator) {
  const Generator w = Generator::weierstrass(0.5, 13);
  const MeanSpec base = MeanSpec::make(w, {Sign::forward},
                                       DeltaVector::from_deltas({0.1}));
  const MeanSpec extended =
      MeanSpec::make(w, {Sign::forward, Sign::forward},
                     DeltaVector::from_deltas({0.1, 0.0}));
  const double x = 0.4;
  EXPECT_EQ(iterated_mean_closed(extended, x), iterated_mean_closed(base, x));
  EXPECT_EQ(iterated_mean_quadrature(extended, x),
            iterated_mean_quadrature(base, x));
}

TEST(IteratedMean, ClosedAndQuadraturePathsAgreeOnTheExampleSpec) {
  const Generator w = Generator::weierstrass(0.5, 13);
  const MeanSpec spec =
      MeanSpec::make(w, {Sign::forward, Sign::backward},
                     DeltaVector::from_deltas({0.1, 0.01}));
  const double closed = iterated_mean_closed(spec, 0.3);
  QuadratureStats stats;
  const double quad = iterated_mean_quadrature(spec, 0.3, 1e-10, &stats);
  EXPECT_NEAR(closed, quad, 1e-8);
  EXPECT_TRUE(stats.converged);
  EXPECT_GT(stats.evaluations, 0);
}

TEST(IteratedMean, LinearInTheGenerator) {
  // α·cos(πt) + β·cos(3πt) against the termwise combination.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    const double alpha = uni(rng), beta = uni(rng);
    const Generator combined = Generator::cosine_series(
        0.0, {{alpha, kPi}, {beta, 3.0 * kPi}}, {0.0, 1.0});
    const Generator first = Generator::cosine_series(0.0, {{alpha, kPi}},
                                                     {0.0, 1.0});
    const Generator second = Generator::cosine_series(0.0, {{beta, 3.0 * kPi}},
                                                      {0.0, 1.0});
    const std::vector<Sign> signs{Sign::forward, Sign::backward};
    const DeltaVector deltas = DeltaVector::from_deltas({0.15, 0.04});
    const double x = 0.35;
    const double sum =
        iterated_mean_quadrature(MeanSpec::make(first, signs, deltas), x) +
        iterated_mean_quadrature(MeanSpec::make(second, signs, deltas), x);
    const double joint =
        iterated_mean_quadrature(MeanSpec::make(combined, signs, deltas), x);
    EXPECT_NEAR(joint, sum, 1e-10);
  }
}

TEST(SampleGraph, ConstantEndpoints) {
  const Generator c = Generator::constant(3.0);
  const MeanSpec spec = MeanSpec::make(c, {}, DeltaVector::from_deltas({}));
  const GraphSample g = sample_graph(spec, {0.0, 1.0}, 2);
  ASSERT_EQ(g.points.size(), 2u);
  EXPECT_EQ(g.points[0], (std::pair<double, double>{0.0, 3.0}));
  EXPECT_EQ(g.points[1], (std::pair<double, double>{1.0, 3.0}));
  EXPECT_EQ(g.method, "direct");
}

TEST(SampleGraph, RawSampleMatchesGeneratorPointwise) {
  const Generator w = Generator::weierstrass(0.5, 13);
  const MeanSpec spec = MeanSpec::make(w, {}, DeltaVector::from_deltas({}));
  const GraphSample g = sample_graph(spec, {0.2, 0.8}, 7);
  for (const auto& [x, y] : g.points) {
    EXPECT_EQ(y, w.value(x));
  }
  EXPECT_FALSE(g.shrunk);
}

TEST(SampleGraph, GridIsStrictlyIncreasingAndShrinkIsReported) {
  const Generator w = Generator::weierstrass(0.5, 13);
  const MeanSpec spec =
      MeanSpec::make(w, {Sign::forward, Sign::backward},
                     DeltaVector::from_deltas({0.2, 0.05}));
  const GraphSample g = sample_graph(spec, {0.0, 1.0}, 50);
  EXPECT_TRUE(g.shrunk);
  EXPECT_DOUBLE_EQ(g.effective.lo, 0.05);
  EXPECT_DOUBLE_EQ(g.effective.hi, 0.8);
  for (std::size_t i = 1; i < g.points.size(); ++i) {
    EXPECT_LT(g.points[i - 1].first, g.points[i].first);
  }
  EXPECT_EQ(g.method, "closed-form");
  EXPECT_THROW(sample_graph(spec, {0.0, 1.0}, 1), input_error);
}

TEST(Translate, ShiftsAbscissaOnly) {
  const Point p = translate({0.0, 5.0}, 0.1);
  EXPECT_DOUBLE_EQ(p.abscissa, 0.1);
  EXPECT_DOUBLE_EQ(p.ordinate, 5.0);
  const Point back{p.abscissa - 0.1, p.ordinate};
  EXPECT_DOUBLE_EQ(back.abscissa, 0.0);
  EXPECT_THROW(translate({0.0, 0.0}, 0.0), input_error);
}

TEST(TranslationResidual, ConstantClosedFormIsExactlyZero) {
  const Generator c = Generator::constant(7.0);
  EXPECT_EQ(translation_residual(c, 0.2, 0.3, MeanPath::closed), 0.0);
}

TEST(TranslationResidual, LinearGeneratorViaQuadratureIsTiny) {
  // Simpson integrates linear functions exactly; both sides agree to
  // rounding.
  const Generator lin = linear_generator();
  EXPECT_LE(translation_residual(lin, 0.2, 0.3, MeanPath::quadrature), 1e-12);
}

TEST(TranslationResidual, WeierstrassBothPaths) {
  const Generator w = Generator::weierstrass(0.5, 13);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    const double delta0 = 0.02 + 0.3 * uni(rng);
    const double x = 0.01 + (0.97 - delta0) * uni(rng);
    EXPECT_LE(translation_residual(w, x, delta0, MeanPath::closed), 1e-12);
    EXPECT_LE(translation_residual(w, x, delta0, MeanPath::quadrature), 1e-9);
  }
  EXPECT_THROW(translation_residual(w, 0.9, 0.2), domain_error);
}

TEST(IdentificationResidual, ZeroWidthIsExactlyZero) {
  const Generator w = Generator::weierstrass(0.5, 13);
  const MeanSpec spec =
      MeanSpec::make(w, {Sign::forward, Sign::backward},
                     DeltaVector::from_deltas({0.2, 0.05}));
  EXPECT_EQ(identification_residual(spec, 0.3, 0.0, Sign::forward), 0.0);
  EXPECT_EQ(identification_residual(spec, 0.3, 0.0, Sign::backward), 0.0);
  const MeanSpec lin_spec =
      MeanSpec::make(linear_generator(), {Sign::forward},
                     DeltaVector::from_deltas({0.1}));
  EXPECT_EQ(identification_residual(lin_spec, 0.5, 0.0, Sign::forward), 0.0);
}

TEST(IdentificationResidual, LinearGeneratorMatchesTheTaylorBound) {
  // For g(t) = t the residual is exactly δ/2: the appended level shifts the
  // evaluation point by σδ/2 and the generator has unit slope.
  const MeanSpec spec =
      MeanSpec::make(linear_generator(), {Sign::forward},
                     DeltaVector::from_deltas({0.1}));
  for (double delta : {0.05, 0.02, 0.004}) {
    EXPECT_NEAR(identification_residual(spec, 0.3, delta, Sign::forward),
                delta / 2.0, 1e-11);
    EXPECT_LE(identification_residual(spec, 0.3, delta, Sign::forward),
              delta / 2.0 + 1e-11);  // max|g'|·δ/2 bound
  }
}

TEST(IdentificationResidual, WeierstrassResidualsDecayUnderHalving) {
  // Ten halvings from 1e-2; the residual shrinks roughly linearly in the
  // width, so the last value sits three decades under the first.
  const Generator w = Generator::weierstrass(0.5, 13);
  const MeanSpec spec =
      MeanSpec::make(w, {Sign::forward, Sign::backward},
                     DeltaVector::from_deltas({0.2, 0.05}));
  const double x = 0.15;
  double initial = 0.0;
  double final_value = 0.0;
  double previous = 0.0;
  int decreases = 0;
  for (int j = 0; j <= 10; ++j) {
    const double delta = 1e-2 * std::ldexp(1.0, -j);
    const double r = identification_residual(spec, x, delta, Sign::forward);
    if (j == 0) initial = r;
    if (j == 10) final_value = r;
    if (j > 0 && r < previous) ++decreases;
    previous = r;
  }
  EXPECT_GE(decreases, 9);  // monotone trend
  EXPECT_LE(final_value, 1e-3 * initial);
}

TEST(IdentificationResidual, RejectsOrderingViolations) {
  const Generator w = Generator::weierstrass(0.5, 13);
  const MeanSpec spec = MeanSpec::make(
      w, {Sign::forward}, DeltaVector::from_deltas({0.05}));
  EXPECT_THROW(identification_residual(spec, 0.3, 0.05, Sign::forward),
               input_error);
  EXPECT_THROW(identification_residual(spec, 0.3, 0.2, Sign::forward),
               input_error);
}

TEST(NSet, ThreeConstantComponentsShareFlatGraphs) {
  const std::array<Generator, 3> gens = {Generator::constant(1.0),
                                         Generator::constant(1.0),
                                         Generator::constant(1.0)};
  const NSetSample nset =
      build_nset(gens, {Sign::forward}, DeltaVector::from_deltas({0.1}),
                 {0.0, 0.8}, 5);
  for (const auto& graph : nset.graphs) {
    ASSERT_EQ(graph.points.size(), 5u);
    for (const auto& [x, y] : graph.points) EXPECT_EQ(y, 1.0);
  }
  for (std::size_t row = 0; row < 5; ++row) {
    EXPECT_EQ(nset.graphs[0].points[row].first,
              nset.graphs[1].points[row].first);
    EXPECT_EQ(nset.graphs[1].points[row].first,
              nset.graphs[2].points[row].first);
  }
}

TEST(NSet, TagsReverseTheWidths) {
  const std::array<Generator, 3> gens = {Generator::constant(0.0),
                                         Generator::constant(0.0),
                                         Generator::constant(0.0)};
  const NSetSample nset = build_nset(gens, {Sign::forward, Sign::backward},
                                     DeltaVector::from_deltas({0.1, 0.01}),
                                     {0.0, 0.5}, 3);
  ASSERT_EQ(nset.tags.size(), 2u);
  EXPECT_EQ(nset.tags[0], "0.01");
  EXPECT_EQ(nset.tags[1], "0.1");
}

TEST(NSet, TagCountMatchesLevels) {
  const std::array<Generator, 3> gens = {Generator::constant(0.0),
                                         Generator::constant(0.0),
                                         Generator::constant(0.0)};
  for (std::size_t levels = 1; levels <= 3; ++levels) {
    std::vector<Sign> signs(levels, Sign::forward);
    std::vector<double> deltas;
    double d = 0.1;
    for (std::size_t k = 0; k < levels; ++k) {
      deltas.push_back(d);
      d /= 4.0;
    }
    const NSetSample nset =
        build_nset(gens, signs, DeltaVector::from_deltas(deltas), {0.0, 0.5},
                   2);
    EXPECT_EQ(nset.tags.size(), levels);
  }
}

TEST(GraphCounts, SpecsAtLevelNWithFixedWidthsNumber2ToNPlusOne) {
  const Generator c = Generator::constant(0.0);
  const DeltaVector deltas = DeltaVector::from_deltas({0.1, 0.04, 0.01});
  std::set<std::string> distinct;
  for (const SignString& j : lambda(2)) {
    const MeanSpec spec =
        MeanSpec::make(c, parse_signs(j.text()), deltas);
    distinct.insert(spec.signs_text());
  }
  EXPECT_EQ(distinct.size(), 8u);
}
