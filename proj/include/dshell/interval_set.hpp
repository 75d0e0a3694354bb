#pragma once

#include <string>
#include <vector>

namespace dshell {

/// Interval of the extended real line. Infinite endpoints are always open.
struct Interval {
  double lo;
  double hi;
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(double x) const;
  bool empty() const;
};

/// Finite union of intervals, kept sorted and disjoint after normalize().
class IntervalSet {
public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts);

  /// (-inf, -|m|] u [|m|, inf), which is the whole line for m = 0.
  static IntervalSet free_spectrum(double mass);
  static IntervalSet real_line();

  void add(Interval iv);
  /// Sorts, then merges overlapping or touching intervals. Idempotent.
  void normalize();

  const std::vector<Interval>& intervals() const { return parts_; }
  bool contains(double x) const;
  /// Membership in the closure, widened by tol.
  bool closure_contains(double x, double tol) const;
  bool is_real_line() const;

  std::string to_string() const;

private:
  std::vector<Interval> parts_;
};

}  // namespace dshell
