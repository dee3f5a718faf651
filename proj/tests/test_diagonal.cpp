// Tests for indexed families, diagonal opens and the diagonal-topology
// axiom checker.

#include <gtest/gtest.h>

#include <random>

#include "fractopo/diagonal.hpp"

using namespace fractopo;

namespace {

IndexedFamily two_sierpinski() {
  return IndexedFamily::make(
      {{IndexLabel::parse("0.1"), FiniteTopology::sierpinski()},
       {IndexLabel::parse("0.2"), FiniteTopology::sierpinski()}});
}

}  // namespace

TEST(IndexLabel, ParsesAndNormalizes) {
  EXPECT_EQ(IndexLabel::parse("0.125").text(), "0.125");
  EXPECT_EQ(IndexLabel::parse("0.10").text(), "0.1");
  EXPECT_EQ(IndexLabel::parse("00").text(), "0");
  EXPECT_EQ(IndexLabel::parse(".5").text(), "0.5");
  EXPECT_TRUE(IndexLabel::parse("0.0").is_zero());
}

TEST(IndexLabel, ExactNumericOrder) {
  EXPECT_TRUE(IndexLabel::parse("0") < IndexLabel::parse("0.05"));
  EXPECT_TRUE(IndexLabel::parse("0.05") < IndexLabel::parse("0.1"));
  EXPECT_TRUE(IndexLabel::parse("0.1") == IndexLabel::parse("0.100"));
  EXPECT_FALSE(IndexLabel::parse("0.2") < IndexLabel::parse("0.2"));
  EXPECT_TRUE(IndexLabel::parse("2") < IndexLabel::parse("10"));
}

TEST(IndexLabel, RejectsMalformedText) {
  EXPECT_THROW(IndexLabel::parse(""), input_error);
  EXPECT_THROW(IndexLabel::parse("1.2.3"), input_error);
  EXPECT_THROW(IndexLabel::parse("-1"), input_error);
  EXPECT_THROW(IndexLabel::parse("1e-3"), input_error);
}

TEST(IndexedFamily, SortsLabelsAndRejectsDuplicates) {
  const IndexedFamily f = IndexedFamily::make(
      {{IndexLabel::parse("0.2"), FiniteTopology::sierpinski()},
       {IndexLabel::parse("0.1"), FiniteTopology::sierpinski()}});
  EXPECT_EQ(f.label(0).text(), "0.1");
  EXPECT_EQ(f.label(1).text(), "0.2");
  EXPECT_THROW(
      IndexedFamily::make(
          {{IndexLabel::parse("0.1"), FiniteTopology::sierpinski()},
           {IndexLabel::parse("0.10"), FiniteTopology::sierpinski()}}),
      input_error);
  EXPECT_THROW(IndexedFamily::make({}), input_error);
}

TEST(IndexedFamily, AllSameCarriersRequireOneUniverse) {
  EXPECT_THROW(
      IndexedFamily::make(
          {{IndexLabel::parse("0.1"), FiniteTopology::sierpinski()},
           {IndexLabel::parse("0.2"), FiniteTopology::indiscrete(3)}},
          /*carriers_all_same=*/true),
      input_error);
}

TEST(DiagonalOps, FullAndEmptyComponentsBehaveAsUnits) {
  const IndexedFamily f = two_sierpinski();
  // Sierpiński opens in canonical order: {}, {0}, {0,1}.
  const DiagonalOpen full = DiagonalOpen::of(f, {2, 2});
  const DiagonalOpen empty = DiagonalOpen::of(f, {0, 0});
  const DiagonalOpen b = DiagonalOpen::of(f, {1, 2});
  EXPECT_EQ(diagonal_union(f, full, b), full);
  EXPECT_EQ(diagonal_intersect(f, full, b), b);
  EXPECT_EQ(diagonal_union(f, empty, b), b);
  EXPECT_EQ(diagonal_intersect(f, empty, b), empty);
}

TEST(DiagonalOps, ComponentwiseIntersectionExample) {
  const IndexedFamily f = two_sierpinski();
  // A = ({0}, {0,1}), B = ({0,1}, ∅): A ∩ B = ({0}, ∅).
  const DiagonalOpen a = DiagonalOpen::of(f, {1, 2});
  const DiagonalOpen b = DiagonalOpen::of(f, {2, 0});
  const DiagonalOpen want = DiagonalOpen::of(f, {1, 0});
  EXPECT_EQ(diagonal_intersect(f, a, b), want);
  EXPECT_EQ(diagonal_union(f, a, b), DiagonalOpen::of(f, {2, 2}));
}

TEST(DiagonalOps, RejectsArityMismatch) {
  const IndexedFamily f = two_sierpinski();
  const DiagonalOpen a = DiagonalOpen::of(f, {0, 0});
  EXPECT_THROW(diagonal_union(f, a, DiagonalOpen{{0}}), input_error);
  EXPECT_THROW(DiagonalOpen::of(f, {0, 7}), input_error);
}

TEST(DiagonalAxioms, SingleLabelAgreesWithIsTopology) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<SubsetMask> pick(0, 7);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<SubsetMask> opens;
    const int count = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < count; ++i) opens.push_back(pick(rng));
    const FiniteTopology t = FiniteTopology::make(3, opens);
    const IndexedFamily f =
        IndexedFamily::make({{IndexLabel::parse("0"), t}});
    EXPECT_EQ(check_diagonal_axioms(f).valid, is_topology(t).valid);
  }
}

TEST(DiagonalAxioms, TwoSierpinskiComponentsEnumerateNineOpens) {
  const DiagonalCheck r = check_diagonal_axioms(two_sierpinski());
  EXPECT_TRUE(r.valid);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_EQ(r.opens_enumerated, 9u);
}

TEST(DiagonalAxioms, ProductCardinalityMatchesComponentCounts) {
  const IndexedFamily f = IndexedFamily::make(
      {{IndexLabel::parse("0.1"), FiniteTopology::sierpinski()},
       {IndexLabel::parse("0.2"), FiniteTopology::discrete(2)}});
  const DiagonalCheck r = check_diagonal_axioms(f);
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.opens_enumerated, 12u);  // 3 * 4
}

TEST(DiagonalAxioms, InheritedViolationIsWitnessed) {
  // Second component misses the union {0,1} of {0} and {1}.
  const FiniteTopology broken =
      FiniteTopology::make(2, {0b00, 0b01, 0b10});
  const IndexedFamily f = IndexedFamily::make(
      {{IndexLabel::parse("0.1"), FiniteTopology::sierpinski()},
       {IndexLabel::parse("0.2"), broken}});
  const DiagonalCheck r = check_diagonal_axioms(f);
  EXPECT_FALSE(r.valid);
  EXPECT_NE(r.violation.find("0.2"), std::string::npos);
}

TEST(DiagonalAxioms, SampledModeRecordsSeed) {
  // Force the product over the cap: discrete(4) x discrete(4) = 256 > 16.
  const IndexedFamily f = IndexedFamily::make(
      {{IndexLabel::parse("0.1"), FiniteTopology::discrete(4)},
       {IndexLabel::parse("0.2"), FiniteTopology::discrete(4)}});
  const DiagonalCheck r = check_diagonal_axioms(f, /*cap=*/16, /*seed=*/99,
                                                /*samples=*/50);
  EXPECT_TRUE(r.valid);
  EXPECT_FALSE(r.exhaustive);
  EXPECT_EQ(r.seed, 99u);
  EXPECT_EQ(r.pairs_checked, 50u);
}

TEST(Objects, OnePointPerLabel) {
  const IndexedFamily f = two_sierpinski();
  EXPECT_TRUE(is_object(f, ObjectSelection::of({{IndexLabel::parse("0.1"), 0},
                                                {IndexLabel::parse("0.2"), 1}})));
  // Missing label.
  EXPECT_FALSE(is_object(f, ObjectSelection::of({{IndexLabel::parse("0.1"), 0}})));
  // Out-of-range point index.
  EXPECT_FALSE(is_object(f, ObjectSelection::of({{IndexLabel::parse("0.1"), 0},
                                                 {IndexLabel::parse("0.2"), 5}})));
  // Unknown label is an input error.
  EXPECT_THROW(is_object(f, ObjectSelection::of({{IndexLabel::parse("0.3"), 0},
                                                 {IndexLabel::parse("0.1"), 0},
                                                 {IndexLabel::parse("0.2"), 0}})),
               input_error);
}

TEST(DiagonalNeighborhood, FullSpaceIsNeighborhoodOfEveryObject) {
  const IndexedFamily f = two_sierpinski();
  const std::vector<SubsetMask> omega = {0b11, 0b11};
  for (int p0 = 0; p0 < 2; ++p0) {
    for (int p1 = 0; p1 < 2; ++p1) {
      EXPECT_TRUE(is_diagonal_neighborhood(
          f, omega,
          ObjectSelection::of({{IndexLabel::parse("0.1"), p0},
                               {IndexLabel::parse("0.2"), p1}})));
    }
  }
}

TEST(DiagonalNeighborhood, EmptyComponentIsNeverANeighborhood) {
  const IndexedFamily f = two_sierpinski();
  const std::vector<SubsetMask> omega = {0b11, 0b00};
  EXPECT_FALSE(is_diagonal_neighborhood(
      f, omega,
      ObjectSelection::of({{IndexLabel::parse("0.1"), 0},
                           {IndexLabel::parse("0.2"), 0}})));
}

TEST(DiagonalNeighborhood, SierpinskiPointNeighborhoods) {
  // In Sierpiński space the only open containing point 1 is {0,1}, so {1}
  // is not a neighborhood of point 1; {0} is a neighborhood of point 0.
  const IndexedFamily f = IndexedFamily::make(
      {{IndexLabel::parse("0.1"), FiniteTopology::sierpinski()}});
  EXPECT_FALSE(is_diagonal_neighborhood(
      f, std::vector<SubsetMask>{0b10},
      ObjectSelection::of({{IndexLabel::parse("0.1"), 1}})));
  EXPECT_TRUE(is_diagonal_neighborhood(
      f, std::vector<SubsetMask>{0b01},
      ObjectSelection::of({{IndexLabel::parse("0.1"), 0}})));
}

TEST(DiagonalNeighborhood, RequiresAnObject) {
  const IndexedFamily f = two_sierpinski();
  EXPECT_THROW(is_diagonal_neighborhood(
                   f, std::vector<SubsetMask>{0b11, 0b11},
                   ObjectSelection::of({{IndexLabel::parse("0.1"), 0}})),
               input_error);
}

TEST(DiagonalClosure, EnumeratedOpensAreClosedUnderBothOps) {
  const IndexedFamily f = two_sierpinski();
  for (int a0 = 0; a0 < 3; ++a0) {
    for (int a1 = 0; a1 < 3; ++a1) {
      for (int b0 = 0; b0 < 3; ++b0) {
        for (int b1 = 0; b1 < 3; ++b1) {
          const DiagonalOpen a = DiagonalOpen::of(f, {a0, a1});
          const DiagonalOpen b = DiagonalOpen::of(f, {b0, b1});
          EXPECT_NO_THROW(diagonal_union(f, a, b));
          EXPECT_NO_THROW(diagonal_intersect(f, a, b));
        }
      }
    }
  }
}

TEST(InternalStructure, RangeIsAnObjectAndEqualityIsPointwise) {
  const IndexedFamily f = two_sierpinski();
  const InternalStructurePath path =
      InternalStructurePath::of({{IndexLabel::parse("0.2"), 1},
                                 {IndexLabel::parse("0.1"), 0}});
  EXPECT_TRUE(is_internal_structure(f, path));
  const InternalStructurePath same =
      InternalStructurePath::of({{IndexLabel::parse("0.1"), 0},
                                 {IndexLabel::parse("0.2"), 1}});
  EXPECT_EQ(path, same);
  const InternalStructurePath other =
      InternalStructurePath::of({{IndexLabel::parse("0.1"), 1},
                                 {IndexLabel::parse("0.2"), 1}});
  EXPECT_FALSE(path == other);
  EXPECT_FALSE(is_internal_structure(
      f, InternalStructurePath::of({{IndexLabel::parse("0.1"), 0}})));
}
