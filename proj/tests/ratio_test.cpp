#include "gausstv/ratio.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "gausstv/error.hpp"
#include "support.hpp"

namespace gausstv {
namespace {

using testing::Rng;

AtomicRatio make(std::vector<Atom> atoms) { return AtomicRatio::from_atoms(std::move(atoms)); }

void expect_atoms(const AtomicRatio& r, const std::vector<Atom>& expected) {
  ASSERT_EQ(r.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_NEAR(r.atoms()[i].value, expected[i].value, 1e-15) << "atom " << i;
    EXPECT_NEAR(r.atoms()[i].prob, expected[i].prob, 1e-15) << "atom " << i;
  }
}

TEST(Partition, HalfAndOne) {
  const PartitionSpec s = build_partition(0.5, 1.0);
  EXPECT_EQ(s.m, 2);
  EXPECT_EQ(s.alphabet_size(), 5);
  EXPECT_DOUBLE_EQ(s.breakpoints[0], 1.0);
  EXPECT_DOUBLE_EQ(s.breakpoints[1], 0.5);
  EXPECT_DOUBLE_EQ(s.breakpoints[2], 0.0);
}

TEST(Partition, CountForTenthTenth) {
  // 1 + ceil(ln 10 / ln 1.1) = 1 + ceil(24.16)
  EXPECT_EQ(build_partition(0.1, 0.1).m, 26);
}

TEST(Partition, FirstBreakpointIsOneMinusGamma) {
  for (double g : {0.3, 1e-3, 1e-7}) {
    for (double d : {0.5, 0.01}) {
      EXPECT_DOUBLE_EQ(build_partition(g, d).breakpoints[1], 1.0 - g);
    }
  }
}

TEST(Partition, RejectsParametersOutsideUnitInterval) {
  for (auto [g, d] : {std::pair{0.0, 0.1}, {1.0, 0.1}, {0.1, 0.0}, {0.1, 1.5}, {-1.0, 0.5}}) {
    try {
      build_partition(g, d);
      FAIL() << "accepted " << g << ", " << d;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::OutOfRange);
    }
  }
}

TEST(Partition, BreakpointsStrictlyDecrease) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const PartitionSpec s = build_partition(std::exp(testing::uniform(rng, -20, -0.1)),
                                            std::exp(testing::uniform(rng, -8, -0.1)));
    EXPECT_EQ(s.m, 1 + static_cast<int>(std::ceil(std::log(1 / s.gamma) / std::log1p(s.delta))))
        << "gamma=" << s.gamma << " delta=" << s.delta;
    for (int k = 1; k <= s.m; ++k) ASSERT_LT(s.breakpoints[k], s.breakpoints[k - 1]);
    EXPECT_EQ(s.breakpoints[s.m], 0.0);
  }
}

TEST(Classify, WorkedExamples) {
  const PartitionSpec s = build_partition(0.5, 1.0);
  using S = IntervalId::Side;
  EXPECT_EQ(classify(1.0, s), (IntervalId{S::I, 0}));
  EXPECT_EQ(classify(0.7, s), (IntervalId{S::I, 1}));
  EXPECT_EQ(classify(0.5, s), (IntervalId{S::I, 1}));
  EXPECT_EQ(classify(0.2, s), (IntervalId{S::I, 2}));
  EXPECT_EQ(classify(0.0, s), (IntervalId{S::I, 2}));
  EXPECT_EQ(classify(1.5, s), (IntervalId{S::J, 1}));
  EXPECT_EQ(classify(2.0, s), (IntervalId{S::J, 1}));
  EXPECT_EQ(classify(3.0, s), (IntervalId{S::J, 2}));
  EXPECT_EQ(classify(std::numeric_limits<double>::infinity(), s), (IntervalId{S::J, 2}));
}

TEST(Classify, RejectsNegativeAndNaN) {
  const PartitionSpec s = build_partition(0.1, 0.1);
  for (double x : {-1e-300, -1.0, std::nan("")}) {
    try {
      classify(x, s);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NegativeValue);
    }
  }
}

TEST(Classify, CanonicalIndexRoundTrips) {
  const PartitionSpec s = build_partition(0.1, 0.1);
  for (int i = 0; i < s.alphabet_size(); ++i) {
    EXPECT_EQ(IntervalId::from_canonical(i, s.m).canonical(s.m), i);
  }
  EXPECT_THROW(IntervalId::from_canonical(s.alphabet_size(), s.m), Error);
}

TEST(Classify, CoverageAndDisjointness) {
  Rng rng(5);
  const PartitionSpec s = build_partition(0.01, 0.05);
  for (int t = 0; t < 100000; ++t) {
    const double x = std::exp(testing::uniform(rng, -12.0, 12.0));
    const IntervalId id = classify(x, s);
    ASSERT_TRUE(interval_bounds(s, id).contains(x)) << x;
    if (t % 100 == 0) {
      int hits = 0;
      for (int i = 0; i < s.alphabet_size(); ++i) {
        hits += interval_bounds(s, IntervalId::from_canonical(i, s.m)).contains(x) ? 1 : 0;
      }
      ASSERT_EQ(hits, 1) << x;
    }
  }
  // Every breakpoint belongs to exactly one interval as well.
  for (int k = 0; k <= s.m; ++k) {
    for (double x : {s.breakpoints[k], s.reciprocals[k]}) {
      if (std::isinf(x)) continue;
      EXPECT_TRUE(interval_bounds(s, classify(x, s)).contains(x));
    }
  }
}

TEST(Partition, WidthBounds) {
  const PartitionSpec s = build_partition(1e-3, 0.02);
  EXPECT_NEAR(s.breakpoints[0] - s.breakpoints[1], s.gamma, 1e-15);
  for (int k = 2; k < s.m; ++k) {
    const double width = s.breakpoints[k - 1] - s.breakpoints[k];
    EXPECT_NEAR(width, (1.0 - s.breakpoints[k - 1]) * s.delta, 1e-12) << k;
  }
}

TEST(TvFunctional, Examples) {
  EXPECT_EQ(tv_functional(AtomicRatio()), 0.0);
  EXPECT_DOUBLE_EQ(tv_functional(make({{0.5, 0.5}, {1.5, 0.5}})), 0.25);
  const AtomicRatio half = make({{0.5, 1.0}});
  EXPECT_DOUBLE_EQ(tv_functional(half), 0.5);
  EXPECT_DOUBLE_EQ(half.singular_mass(), 0.5);
}

TEST(TvFunctional, MatchesAbsoluteForm) {
  Rng rng(21);
  for (int t = 0; t < 500; ++t) {
    const AtomicRatio r = testing::random_ratio(rng, 6);
    double abs_form = 0.0;
    for (const Atom& a : r.atoms()) abs_form += a.prob * std::abs(1.0 - a.value);
    EXPECT_NEAR(tv_functional(r), 0.5 * (abs_form + 1.0 - r.expectation()), 1e-12);
  }
}

TEST(AtomicRatio, ValidatesInvariants) {
  EXPECT_THROW(make({{0.5, 0.6}}), Error);               // mass 0.6
  EXPECT_THROW(make({{2.0, 1.0}}), Error);               // E[R] = 2
  EXPECT_THROW(make({{-1.0, 0.5}, {1.0, 0.5}}), Error);  // negative value
  const AtomicRatio r = make({{0.5, 0.25}, {0.5, 0.25}, {1.0, 0.5}, {3.0, 0.0}});
  expect_atoms(r, {{0.5, 0.5}, {1.0, 0.5}});
}

TEST(Discretize, Examples) {
  const PartitionSpec s = build_partition(0.5, 1.0);
  expect_atoms(discretize(make({{0.6, 0.5}, {0.8, 0.5}}), s), {{0.7, 1.0}});
  expect_atoms(discretize(AtomicRatio(), s), {{1.0, 1.0}});
  expect_atoms(discretize(make({{0.25, 0.25}, {0.75, 0.5}, {2.25, 0.25}}), s),
               {{0.25, 0.25}, {0.75, 0.5}, {2.25, 0.25}});
}

TEST(Discretize, PreservesMassExpectationAndTv) {
  Rng rng(3);
  for (int t = 0; t < 1000; ++t) {
    const AtomicRatio r = testing::random_ratio(rng, 8);
    const PartitionSpec s = build_partition(std::exp(testing::uniform(rng, -6, -0.5)),
                                            std::exp(testing::uniform(rng, -5, -0.2)));
    const AtomicRatio d = discretize(r, s);
    EXPECT_LE(d.size(), static_cast<std::size_t>(s.alphabet_size()));
    EXPECT_NEAR(d.total_probability(), 1.0, 1e-12);
    EXPECT_NEAR(d.expectation(), r.expectation(), 1e-12);
    EXPECT_NEAR(tv_functional(d), tv_functional(r), 1e-12);
  }
}

TEST(Scale, MonotoneTv) {
  Rng rng(4);
  for (int t = 0; t < 1000; ++t) {
    const AtomicRatio r = testing::random_ratio(rng, 6);
    const double c = testing::uniform(rng, 0.0, 1.0);
    EXPECT_GE(tv_functional(scale(r, c)), tv_functional(r) - 1e-12);
  }
  EXPECT_THROW(scale(AtomicRatio(), 1.5), Error);
}

TEST(IndependentProduct, Examples) {
  const AtomicRatio r = make({{0.5, 0.5}, {1.5, 0.5}});
  expect_atoms(independent_product(r, AtomicRatio()), {{0.5, 0.5}, {1.5, 0.5}});
  const AtomicRatio rr = independent_product(r, r);
  expect_atoms(rr, {{0.25, 0.25}, {0.75, 0.5}, {2.25, 0.25}});
  EXPECT_DOUBLE_EQ(tv_functional(rr), 0.3125);
}

TEST(IndependentProduct, ExpectationMultipliesAndTvGrows) {
  Rng rng(8);
  for (int t = 0; t < 1000; ++t) {
    const AtomicRatio a = testing::random_ratio(rng, 5);
    const AtomicRatio b = testing::random_ratio(rng, 5);
    const AtomicRatio ab = independent_product(a, b);
    EXPECT_NEAR(ab.expectation(), a.expectation() * b.expectation(), 1e-12);
    EXPECT_GE(tv_functional(ab), std::max(tv_functional(a), tv_functional(b)) - 1e-12);
  }
}

TEST(ProductDiscretize, MatchesMaterializedProduct) {
  Rng rng(9);
  for (int t = 0; t < 300; ++t) {
    const PartitionSpec s = build_partition(std::exp(testing::uniform(rng, -8, -1)),
                                            std::exp(testing::uniform(rng, -6, -0.5)));
    AtomicRatio y = discretize(testing::random_ratio(rng, 30), s);
    const AtomicRatio r = testing::random_ratio(rng, 30);
    const AtomicRatio fused = product_discretize(y, r, s);
    const AtomicRatio plain = discretize(independent_product(y, r), s);
    ASSERT_EQ(fused.size(), plain.size());
    for (std::size_t i = 0; i < fused.size(); ++i) {
      EXPECT_NEAR(fused.atoms()[i].value, plain.atoms()[i].value,
                  1e-13 * std::max(1.0, plain.atoms()[i].value));
      EXPECT_NEAR(fused.atoms()[i].prob, plain.atoms()[i].prob, 1e-14);
    }
    EXPECT_NEAR(tv_functional(fused), tv_functional(plain), 1e-13);
  }
}

TEST(RatioFromPair, Examples) {
  expect_atoms(ratio_from_discrete_pair(std::vector{0.75, 0.25}, std::vector{0.5, 0.5}),
               {{0.5, 0.5}, {1.5, 0.5}});
  const AtomicRatio b = ratio_from_discrete_pair(std::vector{1.0, 0.0}, std::vector{0.5, 0.5});
  expect_atoms(b, {{0.0, 0.5}, {2.0, 0.5}});
  EXPECT_DOUBLE_EQ(tv_functional(b), 0.5);
  const AtomicRatio c = ratio_from_discrete_pair(std::vector{0.5, 0.5}, std::vector{1.0, 0.0});
  expect_atoms(c, {{0.5, 1.0}});
  EXPECT_DOUBLE_EQ(tv_functional(c), 0.5);
  EXPECT_DOUBLE_EQ(c.singular_mass(), 0.5);
}

TEST(RatioFromPair, RejectsNonDistributions) {
  const std::vector<double> ok{0.5, 0.5};
  for (const std::vector<double>& bad :
       {std::vector{0.5, 0.6}, std::vector{1.5, -0.5}, std::vector<double>{}, std::vector{1.0}}) {
    try {
      ratio_from_discrete_pair(bad, ok);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NotADistribution);
    }
  }
}

TEST(RatioFromPair, TvEqualsHalfL1) {
  Rng rng(12);
  for (int t = 0; t < 500; ++t) {
    const int size = testing::uniform_int(rng, 1, 8);
    const auto pair = testing::random_pair(rng, size);
    double l1 = 0.0;
    for (int x = 0; x < size; ++x) l1 += std::abs(pair.p[x] - pair.q[x]);
    EXPECT_NEAR(tv_functional(ratio_from_discrete_pair(pair.p, pair.q)), 0.5 * l1, 1e-12);
  }
}

}  // namespace
}  // namespace gausstv
