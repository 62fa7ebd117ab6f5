#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <span>
#include <string_view>

namespace gausstv {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double initial) : sum_(initial) {}

  CompensatedSum& operator+=(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s += x;
  return s.value();
}

/// Optional wall-clock limit checked between long-running steps.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  explicit Deadline(Clock::time_point at) : at_(at) {}

  static Deadline after(std::chrono::duration<double> budget) {
    return Deadline(Clock::now() +
                    std::chrono::duration_cast<Clock::duration>(budget));
  }

  bool expired() const { return at_ && Clock::now() >= *at_; }

  /// Throws Error(DeadlineExceeded) once the limit has passed.
  void check(std::string_view where) const;

 private:
  std::optional<Clock::time_point> at_;
};

}  // namespace gausstv
