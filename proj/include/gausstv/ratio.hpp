#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gausstv/numeric.hpp"

namespace gausstv {

/// The (γ,δ)-partition of [0, ∞):
///   I₀ = {1},  I_k = [a_k, a_{k−1}),  J_k = (1/a_{k−1}, 1/a_k]  (k < m),
///   J_m = (1/a_{m−1}, ∞),
/// with a₀ = 1, a_k = 1 − (1+δ)^{k−1}γ for 1 ≤ k < m, a_m = 0 and
/// m = 1 + ⌈ln(1/γ)/ln(1+δ)⌉.
struct PartitionSpec {
  double gamma = 0.0;
  double delta = 0.0;
  int m = 0;
  std::vector<double> breakpoints;  // a_0 .. a_m
  std::vector<double> complements;  // 1 − a_k, computed without cancellation
  std::vector<double> reciprocals;  // 1/a_k for k < m; +∞ at k = m

  /// Number of intervals, 2m + 1.
  int alphabet_size() const { return 2 * m + 1; }
};

/// I(k) for 0 ≤ k ≤ m or J(k) for 1 ≤ k ≤ m. Canonical alphabet index:
/// I(k) ↦ k, J(k) ↦ m + k.
struct IntervalId {
  enum class Side : std::uint8_t { I, J };

  Side side = Side::I;
  int k = 0;

  int canonical(int m) const { return side == Side::I ? k : m + k; }
  static IntervalId from_canonical(int index, int m);

  friend bool operator==(const IntervalId&, const IntervalId&) = default;
};

struct IntervalBounds {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = false;

  bool contains(double x) const {
    const bool above = lo_closed ? x >= lo : x > lo;
    const bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
  }
};

/// Throws OutOfRange unless 0 < gamma < 1 and 0 < delta ≤ 1.
PartitionSpec build_partition(double gamma, double delta);

IntervalBounds interval_bounds(const PartitionSpec& spec, IntervalId id);

/// The interval containing x ≥ 0 (+∞ maps to J(m)). Throws NegativeValue
/// for negative or NaN input.
IntervalId classify(double x, const PartitionSpec& spec);

struct Atom {
  double value = 0.0;
  double prob = 0.0;
};

/// A finitely supported valid ratio: the law of R under Q, recorded as
/// atoms with strictly increasing values, positive probabilities summing
/// to one, and E[R] ≤ 1. The deficit 1 − E[R] is the singular part.
class AtomicRatio {
 public:
  /// The constant ratio R ≡ 1.
  AtomicRatio();

  /// Sorts by value, merges exactly equal values, drops zero-probability
  /// atoms, then checks the invariants (NotADistribution / InvalidInput).
  static AtomicRatio from_atoms(std::vector<Atom> atoms);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double total_probability() const;
  double expectation() const;
  double singular_mass() const { return 1.0 - expectation(); }

 private:
  struct Trusted {};
  AtomicRatio(Trusted, std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

  friend AtomicRatio discretize(const AtomicRatio&, const PartitionSpec&);
  friend struct ProductKernel;

  std::vector<Atom> atoms_;
};

/// TV(R) = E[(1 − R)₊].
double tv_functional(const AtomicRatio& r);

/// R ↦ cR for c ∈ [0, 1].
AtomicRatio scale(const AtomicRatio& r, double c);

/// Conditional expectation of R given its partition interval: one atom per
/// occupied interval, preserving total probability, E[R] and TV(R).
AtomicRatio discretize(const AtomicRatio& r, const PartitionSpec& spec);

struct ProductStats {
  std::size_t renormalizations = 0;
  std::size_t max_atoms = 0;
};

/// Ratio of the product measures: values and probabilities multiply.
AtomicRatio independent_product(const AtomicRatio& r1, const AtomicRatio& r2,
                                ProductStats* stats = nullptr);

/// discretize(independent_product(y, r), spec) without materializing the
/// product; costs O(|y|·|r| + |y|·(2m+1)).
AtomicRatio product_discretize(const AtomicRatio& y, const AtomicRatio& r,
                               const PartitionSpec& spec,
                               ProductStats* stats = nullptr,
                               const Deadline& deadline = {});

/// Ratio P‖Q of two distributions over the same finite alphabet. Mass of
/// p where q = 0 becomes the singular deficit.
AtomicRatio ratio_from_discrete_pair(std::span<const double> p,
                                     std::span<const double> q);

/// Throws NotADistribution unless p is nonnegative, finite and sums to one
/// within 1e-12.
void require_distribution(std::span<const double> p, const char* what);

}  // namespace gausstv
