#include <gtest/gtest.h>

#include <chrono>
#include <vector>

#include "gausstv/error.hpp"
#include "gausstv/numeric.hpp"

namespace gausstv {
namespace {

TEST(CompensatedSum, RecoversLostLowOrderBits) {
  std::vector<double> xs = {1.0, 1e-16, 1e-16, 1e-16, 1e-16, -1.0};
  EXPECT_DOUBLE_EQ(compensated_sum(xs), 4e-16);
  CompensatedSum s;
  for (int i = 0; i < 10; ++i) s += 0.1;
  EXPECT_EQ(s.value(), 1.0);
}

TEST(Deadline, DefaultNeverExpires) {
  const Deadline d;
  EXPECT_FALSE(d.expired());
  EXPECT_NO_THROW(d.check("anything"));
}

TEST(Deadline, ExpiredThrowsDeadlineExceeded) {
  const Deadline d = Deadline::after(std::chrono::duration<double>(-1.0));
  EXPECT_TRUE(d.expired());
  try {
    d.check("loop");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DeadlineExceeded);
    EXPECT_TRUE(is_numerical(e.kind()));
  }
}

TEST(Error, StageTagIsInnermost) {
  const Error e = Error(ErrorKind::BudgetTooTight, "zeta too small").with_stage("discretize");
  EXPECT_EQ(e.stage(), "discretize");
  EXPECT_EQ(std::string(e.what()), "discretize: BudgetTooTight: zeta too small");
  EXPECT_EQ(e.with_stage("pipeline").stage(), "discretize");
}

TEST(Error, NumericalKinds) {
  EXPECT_TRUE(is_numerical(ErrorKind::ResidualTooLarge));
  EXPECT_TRUE(is_numerical(ErrorKind::BudgetTooTight));
  EXPECT_FALSE(is_numerical(ErrorKind::InvalidInput));
  EXPECT_FALSE(is_numerical(ErrorKind::NotADistribution));
}

}  // namespace
}  // namespace gausstv
