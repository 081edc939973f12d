#include <sigwriter/lyndon.hpp>

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles/iterated_integrals.hpp"

namespace sigwriter {
namespace {

Polyline2d to_polyline(const std::vector<oracle::Pt>& pts) {
  Polyline2d::PointMatrix m(pts.size(), 2);
  for (std::size_t i = 0; i < pts.size(); ++i) m.row(i) << pts[i][0], pts[i][1];
  return Polyline2d(m);
}

// Brute force: a word is Lyndon iff it is strictly smaller than all of its
// proper rotations.
bool is_lyndon(const Word& w) {
  for (std::size_t r = 1; r < w.size(); ++r) {
    Word rot(w.begin() + r, w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + r);
    if (!(w < rot)) return false;
  }
  return true;
}

TEST(LyndonWords, MatchBruteForceEnumeration) {
  const auto words = lyndon_words(6);
  std::set<Word> generated(words.begin(), words.end());
  EXPECT_EQ(generated.size(), words.size());
  std::size_t expected = 0;
  for (int k = 1; k <= 6; ++k) {
    for (int bits = 0; bits < (1 << k); ++bits) {
      Word w;
      for (int j = k - 1; j >= 0; --j) w.push_back(((bits >> j) & 1) + 1);
      if (is_lyndon(w)) {
        ++expected;
        EXPECT_TRUE(generated.count(w));
      }
    }
  }
  EXPECT_EQ(words.size(), expected);
}

TEST(LyndonWords, OrderedByLengthThenLexicographic) {
  const auto words = lyndon_words(4);
  const std::vector<Word> expected = {{1}, {2}, {1, 2}, {1, 1, 2}, {1, 2, 2}, {1, 1, 1, 2}, {1, 1, 2, 2}, {1, 2, 2, 2}};
  EXPECT_EQ(words, expected);
}

TEST(WittDimension, FirstLevels) {
  EXPECT_EQ(witt_dimension(1), 2);
  EXPECT_EQ(witt_dimension(2), 1);
  EXPECT_EQ(witt_dimension(3), 2);
  EXPECT_EQ(witt_dimension(4), 3);
  EXPECT_EQ(witt_dimension(5), 6);
  EXPECT_EQ(logsig_dimension(2), 3);
  EXPECT_EQ(logsig_dimension(3), 5);
  EXPECT_EQ(logsig_dimension(4), 8);
}

TEST(LyndonBasis, LevelDimensionsFollowWitt) {
  const LyndonBasis<double> basis(6);
  for (int k = 1; k <= 6; ++k) EXPECT_EQ(basis.level_dimension(k), witt_dimension(k));
  EXPECT_EQ(basis.dimension(), logsig_dimension(6));
}

TEST(LyndonBasis, LevelTwoBracketIsCommutator) {
  const auto& e = LyndonBasis<double>::cached(2).expansion(2);
  ASSERT_EQ(e.cols(), 1);
  EXPECT_EQ(e(word_index(Word{1, 2}), 0), 1.0);
  EXPECT_EQ(e(word_index(Word{2, 1}), 0), -1.0);
  EXPECT_EQ(e(word_index(Word{1, 1}), 0), 0.0);
  EXPECT_EQ(e(word_index(Word{2, 2}), 0), 0.0);
}

TEST(HallProject, LShapeAtDepthTwo) {
  const Polyline2d p(Polyline2d::PointMatrix{{0, 0}, {1, 0}, {1, 1}});
  const auto v = log_signature(p, 2);
  ASSERT_EQ(v.coeffs.size(), 3);
  EXPECT_NEAR(v.coeffs(0), 1.0, 1e-15);
  EXPECT_NEAR(v.coeffs(1), 1.0, 1e-15);
  EXPECT_NEAR(v.coeffs(2), 0.5, 1e-15);
}

TEST(HallProject, StraightSegmentHasZeroBracket) {
  const Polyline2d p(Polyline2d::PointMatrix{{0, 0}, {2, 1}});
  const auto v = log_signature(p, 2);
  EXPECT_EQ(v.coeffs(2), 0.0);
}

TEST(HallProject, DepthThreeHasFiveCoefficients) {
  const Polyline2d p(Polyline2d::PointMatrix{{0, 0}, {1, 3}, {2, -1}, {4, 0}});
  EXPECT_EQ(log_signature(p, 3).coeffs.size(), 5);
}

TEST(HallProject, ExpandRoundTrip) {
  std::mt19937_64 rng(21);
  for (int depth = 1; depth <= 5; ++depth) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto lie = tensor_log(path_signature(to_polyline(oracle::random_polyline(rng, 7)), depth));
      EXPECT_LE(hall_expand(hall_project(lie)).max_abs_diff(lie), 1e-10);
    }
  }
}

TEST(HallProject, RejectsNonLieElement) {
  TensorSeriesd x(2);
  x.coeff({1, 1}) = 1.0;  // symmetric, not in the Lie algebra
  EXPECT_THROW(hall_project(x), std::domain_error);
}

TEST(HallExpand, RejectsWrongLength) {
  LogSigVector<double> v{Eigen::VectorXd::Zero(4), 3};
  EXPECT_THROW(hall_expand(v), std::invalid_argument);
}

}  // namespace
}  // namespace sigwriter
