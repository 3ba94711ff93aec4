#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace cym {

/// Chart coordinates and tangent vectors share one representation.
using Point = Eigen::VectorXd;
using Vector = Eigen::VectorXd;

/// Thrown when a caller violates an operation's preconditions (dimension mismatch, wrong degree).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A matrix that should lie in the span of the representation does not.
class RepresentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A group element has drifted off the group variety.
class VarietyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Metric is singular at an evaluation point.
class SingularMetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two evaluation routes that must agree did not (sign-convention or implementation bug).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed scenario input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ContractViolation(what);
}

/// Sorted k-subsets of {0..n-1} in lexicographic order, with index lookup.
class MultiIndexSet {
 public:
  static const MultiIndexSet& get(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  int size() const { return static_cast<int>(sets_.size()); }
  const std::vector<int>& operator[](int i) const { return sets_[static_cast<std::size_t>(i)]; }
  /// Position of a sorted index list, or -1 when it contains a repeat or is out of range.
  int index_of(const std::vector<int>& sorted) const;

 private:
  MultiIndexSet(int n, int k);
  int n_;
  int k_;
  std::vector<std::vector<int>> sets_;
  std::vector<int> lookup_;  // bitmask -> position
};

/// Sort `idx` in place and return the permutation sign, or 0 on a repeated index.
int sort_with_sign(std::vector<int>& idx);

int binomial(int n, int k);
double factorial(int n);

/// mt19937_64 with doubles formed from the top 53 bits and Box-Muller normals, so
/// sequences do not depend on the standard library's distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next_u64() { return eng_(); }
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  Eigen::VectorXd uniform_vector(int n, double lo, double hi);

 private:
  std::mt19937_64 eng_;
};

/// Calls fn(i) for i in [0, n) across hardware threads. Each index must write
/// only its own output slot, which keeps results independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace cym
