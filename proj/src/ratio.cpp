#include "gausstv/ratio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gausstv/error.hpp"
#include "gausstv/numeric.hpp"

namespace gausstv {

namespace {

constexpr double kMassTolerance = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Upper bounds of the 2m+1 intervals listed in increasing order of value:
// I_m, …, I_1, I₀, J_1, …, J_m. Position t holds x iff x < upper[t], or
// x == upper[t] when the bound is closed.
struct AscendingBounds {
  std::vector<double> upper;
  std::vector<char> closed;

  explicit AscendingBounds(const PartitionSpec& spec) {
    const int m = spec.m;
    upper.resize(static_cast<std::size_t>(2 * m + 1));
    closed.resize(upper.size());
    for (int t = 0; t < m; ++t) {  // I_k with k = m − t: [a_k, a_{k−1})
      upper[t] = spec.breakpoints[static_cast<std::size_t>(m - t - 1)];
      closed[t] = 0;
    }
    upper[m] = 1.0;  // I₀ = {1}
    closed[m] = 1;
    for (int k = 1; k <= m; ++k) {  // J_k: (1/a_{k−1}, 1/a_k]
      upper[m + k] = spec.reciprocals[static_cast<std::size_t>(k)];
      closed[m + k] = 1;
    }
  }

  bool fits(double x, std::size_t t) const {
    return x < upper[t] || (closed[t] && x == upper[t]);
  }

  // First position ≥ from that holds x.
  std::size_t locate(double x, std::size_t from) const {
    std::size_t lo = from, hi = upper.size() - 1;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (fits(x, mid)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lo;
  }
};

}  // namespace

IntervalId IntervalId::from_canonical(int index, int m) {
  if (index < 0 || index > 2 * m) {
    throw Error(ErrorKind::OutOfRange,
                "interval index " + std::to_string(index) + " outside [0, " +
                    std::to_string(2 * m) + "]");
  }
  if (index <= m) return IntervalId{Side::I, index};
  return IntervalId{Side::J, index - m};
}

PartitionSpec build_partition(double gamma, double delta) {
  // δ = 1 is admitted: the formulas stay well defined there.
  if (!(gamma > 0.0 && gamma < 1.0) || !(delta > 0.0 && delta <= 1.0)) {
    throw Error(ErrorKind::OutOfRange,
                "need 0 < gamma < 1 and 0 < delta <= 1, got gamma=" +
                    std::to_string(gamma) + " delta=" + std::to_string(delta));
  }
  const double log_step = std::log1p(delta);
  // (1+δ)^{k−1}γ evaluated through the exponential to keep the relative
  // error independent of k.
  auto complement = [&](int k) {
    return std::exp(static_cast<double>(k - 1) * log_step) * gamma;
  };

  const double ratio = -std::log(gamma) / log_step;
  if (!(ratio < 1e9)) {
    throw Error(ErrorKind::OutOfRange, "partition would have more than 1e9 intervals");
  }
  int m = 1 + static_cast<int>(std::ceil(ratio));
  // Rounding in `ratio` may overshoot by one when ln(1/γ)/ln(1+δ) is an
  // integer; a_{m−1} must stay strictly positive.
  while (m > 2 && complement(m - 1) >= 1.0) --m;

  PartitionSpec spec;
  spec.gamma = gamma;
  spec.delta = delta;
  spec.m = m;
  spec.complements.resize(static_cast<std::size_t>(m + 1));
  spec.breakpoints.resize(static_cast<std::size_t>(m + 1));
  spec.reciprocals.resize(static_cast<std::size_t>(m + 1));
  spec.complements[0] = 0.0;
  spec.breakpoints[0] = 1.0;
  for (int k = 1; k < m; ++k) {
    spec.complements[k] = complement(k);
    spec.breakpoints[k] = 1.0 - spec.complements[k];
  }
  spec.complements[m] = 1.0;
  spec.breakpoints[m] = 0.0;
  for (int k = 0; k < m; ++k) spec.reciprocals[k] = 1.0 / spec.breakpoints[k];
  spec.reciprocals[m] = kInf;
  return spec;
}

IntervalBounds interval_bounds(const PartitionSpec& spec, IntervalId id) {
  const auto k = static_cast<std::size_t>(id.k);
  if (id.k < 0 || id.k > spec.m || (id.side == IntervalId::Side::J && id.k == 0)) {
    throw Error(ErrorKind::OutOfRange, "no such interval in this partition");
  }
  if (id.side == IntervalId::Side::I) {
    if (id.k == 0) return IntervalBounds{1.0, 1.0, true, true};
    return IntervalBounds{spec.breakpoints[k], spec.breakpoints[k - 1], true, false};
  }
  return IntervalBounds{spec.reciprocals[k - 1], spec.reciprocals[k], false, true};
}

IntervalId classify(double x, const PartitionSpec& spec) {
  if (!(x >= 0.0)) {
    throw Error(ErrorKind::NegativeValue,
                "cannot classify " + std::to_string(x));
  }
  if (x == 1.0) return IntervalId{IntervalId::Side::I, 0};
  if (x < 1.0) {
    // breakpoints decrease; find the first k ≥ 1 with a_k ≤ x.
    const auto first = spec.breakpoints.begin() + 1;
    const auto it = std::partition_point(first, spec.breakpoints.end(),
                                         [x](double a) { return a > x; });
    return IntervalId{IntervalId::Side::I,
                      static_cast<int>(it - spec.breakpoints.begin())};
  }
  // reciprocals increase; find the first k ≥ 1 with x ≤ 1/a_k.
  const auto first = spec.reciprocals.begin() + 1;
  const auto it = std::partition_point(first, spec.reciprocals.end(),
                                       [x](double r) { return r < x; });
  const int k = std::min(static_cast<int>(it - spec.reciprocals.begin()), spec.m);
  return IntervalId{IntervalId::Side::J, k};
}

AtomicRatio::AtomicRatio() : atoms_{Atom{1.0, 1.0}} {}

AtomicRatio AtomicRatio::from_atoms(std::vector<Atom> atoms) {
  for (const Atom& a : atoms) {
    if (!(a.value >= 0.0) || !std::isfinite(a.value)) {
      throw Error(ErrorKind::InvalidInput,
                  "ratio values must be finite and nonnegative");
    }
    if (!(a.prob >= 0.0) || !std::isfinite(a.prob)) {
      throw Error(ErrorKind::NotADistribution,
                  "atom probabilities must be finite and nonnegative");
    }
  }
  std::erase_if(atoms, [](const Atom& a) { return a.prob == 0.0; });
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.value < b.value; });

  std::vector<Atom> merged;
  merged.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size();) {
    CompensatedSum prob;
    const double v = atoms[i].value;
    for (; i < atoms.size() && atoms[i].value == v; ++i) prob += atoms[i].prob;
    merged.push_back(Atom{v, prob.value()});
  }

  AtomicRatio out(Trusted{}, std::move(merged));
  const double total = out.total_probability();
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw Error(ErrorKind::NotADistribution,
                "atom probabilities sum to " + std::to_string(total));
  }
  if (out.expectation() > 1.0 + kMassTolerance) {
    throw Error(ErrorKind::InvalidInput,
                "not a valid ratio: E[R] = " + std::to_string(out.expectation()));
  }
  return out;
}

double AtomicRatio::total_probability() const {
  CompensatedSum s;
  for (const Atom& a : atoms_) s += a.prob;
  return s.value();
}

double AtomicRatio::expectation() const {
  CompensatedSum s;
  for (const Atom& a : atoms_) s += a.prob * a.value;
  return s.value();
}

double tv_functional(const AtomicRatio& r) {
  CompensatedSum s;
  for (const Atom& a : r.atoms()) {
    if (a.value < 1.0) s += a.prob * (1.0 - a.value);
  }
  return s.value();
}

AtomicRatio scale(const AtomicRatio& r, double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "scale factor must lie in [0, 1]");
  }
  std::vector<Atom> atoms(r.atoms().begin(), r.atoms().end());
  for (Atom& a : atoms) a.value *= c;
  return AtomicRatio::from_atoms(std::move(atoms));
}

AtomicRatio discretize(const AtomicRatio& r, const PartitionSpec& spec) {
  // Atoms are sorted and intervals are contiguous in value, so each
  // interval's atoms form one run.
  const AscendingBounds bounds(spec);
  const auto atoms = r.atoms();
  std::vector<Atom> out;
  std::size_t t = 0;
  for (std::size_t i = 0; i < atoms.size();) {
    t = bounds.locate(atoms[i].value, t);
    CompensatedSum prob, mass;
    for (; i < atoms.size() && bounds.fits(atoms[i].value, t); ++i) {
      prob += atoms[i].prob;
      mass += atoms[i].prob * atoms[i].value;
    }
    const double p = prob.value();
    out.push_back(Atom{mass.value() / p, p});
  }
  return AtomicRatio(AtomicRatio::Trusted{}, std::move(out));
}

struct ProductKernel {
  static AtomicRatio make(std::vector<Atom> atoms, ProductStats* stats) {
    CompensatedSum total;
    for (const Atom& a : atoms) total += a.prob;
    const double sum = total.value();
    if (std::abs(sum - 1.0) > kMassTolerance) {
      for (Atom& a : atoms) a.prob /= sum;
      if (stats) ++stats->renormalizations;
    }
    return AtomicRatio(AtomicRatio::Trusted{}, std::move(atoms));
  }
};

AtomicRatio independent_product(const AtomicRatio& r1, const AtomicRatio& r2,
                                ProductStats* stats) {
  std::vector<Atom> pairs;
  pairs.reserve(r1.size() * r2.size());
  for (const Atom& a : r1.atoms()) {
    for (const Atom& b : r2.atoms()) {
      pairs.push_back(Atom{a.value * b.value, a.prob * b.prob});
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const Atom& a, const Atom& b) { return a.value < b.value; });
  std::vector<Atom> merged;
  merged.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size();) {
    CompensatedSum prob;
    const double v = pairs[i].value;
    for (; i < pairs.size() && pairs[i].value == v; ++i) prob += pairs[i].prob;
    if (prob.value() > 0.0) merged.push_back(Atom{v, prob.value()});
  }
  if (stats) stats->max_atoms = std::max(stats->max_atoms, merged.size());
  return ProductKernel::make(std::move(merged), stats);
}

AtomicRatio product_discretize(const AtomicRatio& y, const AtomicRatio& r,
                               const PartitionSpec& spec, ProductStats* stats,
                               const Deadline& deadline) {
  const AscendingBounds bounds(spec);
  const std::size_t buckets = bounds.upper.size();
  std::vector<CompensatedSum> prob(buckets), mass(buckets);

  // Loop the shorter ratio on the outside; for a fixed outer value the
  // products with the sorted inner atoms increase, so the interval
  // position only moves forward and equal-interval runs can be summed
  // before touching the bucket accumulators.
  const auto outer = y.size() <= r.size() ? y.atoms() : r.atoms();
  const auto inner = y.size() <= r.size() ? r.atoms() : y.atoms();
  std::size_t visited = 0;
  for (const Atom& o : outer) {
    if ((++visited & 255) == 0) deadline.check("disprod");
    std::size_t t = bounds.locate(o.value * inner.front().value, 0);
    CompensatedSum run_prob, run_mass;
    auto flush = [&] {
      prob[t] += o.prob * run_prob.value();
      mass[t] += o.prob * o.value * run_mass.value();
      run_prob = CompensatedSum{};
      run_mass = CompensatedSum{};
    };
    for (const Atom& in : inner) {
      const double x = o.value * in.value;
      if (!bounds.fits(x, t)) {
        flush();
        t = bounds.fits(x, t + 1) ? t + 1 : bounds.locate(x, t + 1);
      }
      run_prob += in.prob;
      run_mass += in.prob * in.value;
    }
    flush();
  }

  std::vector<Atom> out;
  for (std::size_t t = 0; t < buckets; ++t) {
    const double p = prob[t].value();
    if (p > 0.0) out.push_back(Atom{mass[t].value() / p, p});
  }
  if (stats) stats->max_atoms = std::max(stats->max_atoms, y.size() * r.size());
  return ProductKernel::make(std::move(out), stats);
}

void require_distribution(std::span<const double> p, const char* what) {
  if (p.empty()) {
    throw Error(ErrorKind::NotADistribution, std::string(what) + " is empty");
  }
  CompensatedSum s;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw Error(ErrorKind::NotADistribution,
                  std::string(what) + " has a negative or non-finite entry");
    }
    s += x;
  }
  if (std::abs(s.value() - 1.0) > kMassTolerance) {
    throw Error(ErrorKind::NotADistribution,
                std::string(what) + " sums to " + std::to_string(s.value()));
  }
}

AtomicRatio ratio_from_discrete_pair(std::span<const double> p,
                                     std::span<const double> q) {
  require_distribution(p, "p");
  require_distribution(q, "q");
  if (p.size() != q.size()) {
    throw Error(ErrorKind::NotADistribution,
                "p and q have different lengths");
  }
  std::vector<Atom> atoms;
  atoms.reserve(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (q[x] <= 0.0) continue;
    const double v = p[x] / q[x];
    // A finite q below the overflow threshold behaves as singular mass.
    if (!std::isfinite(v)) continue;
    atoms.push_back(Atom{v, q[x]});
  }
  return AtomicRatio::from_atoms(std::move(atoms));
}

}  // namespace gausstv
